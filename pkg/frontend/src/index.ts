/**
 * msiq-metrics: bindings for the msiq image-fidelity service.
 *
 * The package re-implements no math. Each function validates its
 * arguments, forwards them to the running service, and returns the
 * decoded result, so values are identical to the core library's output
 * by construction. Start the service with `msiq serve` (or point
 * MSIQ_SERVICE_URL at a running instance).
 */

import { postJson, resolveBaseUrl, toImagePayload } from "./client.js";
import type {
  DegradationKind,
  DescriptorEntry,
  DescriptorOptions,
  ImageInput,
  MsiqOptions,
  CommonOptions,
} from "./types.js";

export type {
  CommonOptions,
  DegradationKind,
  DescriptorEntry,
  DescriptorOptions,
  ImageInput,
  MomentScheme,
  MsiqOptions,
  MsiqVariant,
} from "./types.js";

interface DescriptorResponse {
  order: number;
  scheme: string;
  entries: DescriptorEntry[];
}

interface MsiqResponse {
  value: number;
}

interface DegradeResponse {
  data: number[][];
}

/**
 * Moment descriptor of an image: ordered [p, q, value] triples over all
 * p + q <= order except the trivial (0,0), (1,0), (0,1) components.
 */
export async function descriptor(
  image: ImageInput,
  options: DescriptorOptions = {},
): Promise<DescriptorEntry[]> {
  const body = {
    image: toImagePayload(image),
    order: options.order ?? 4,
    scheme: options.scheme ?? "raw_grid",
  };
  const response = await postJson<DescriptorResponse>(
    resolveBaseUrl(options.baseUrl),
    "/descriptor",
    body,
  );
  return response.entries;
}

/**
 * Descriptor distance between a reference and a test image (lower is
 * better, 0 means identical descriptors). The two images may have
 * different sizes; no resizing is ever performed.
 */
export async function msiq(
  gt: ImageInput,
  test: ImageInput,
  options: MsiqOptions = {},
): Promise<number> {
  const body = {
    gt: toImagePayload(gt),
    test: toImagePayload(test),
    variant: options.variant ?? "rmse",
    order: options.order ?? 4,
    scheme: options.scheme ?? "raw_grid",
  };
  const response = await postJson<MsiqResponse>(
    resolveBaseUrl(options.baseUrl),
    "/msiq",
    body,
  );
  return response.value;
}

/**
 * Apply one parameterized degradation (four geometric kinds plus the
 * "jpeg" compression control) and return the degraded intensity grid.
 */
export async function degrade(
  image: ImageInput,
  kind: DegradationKind | string,
  strength: number,
  options: CommonOptions = {},
): Promise<number[][]> {
  if (!Number.isFinite(strength) || strength < 0 || strength >= 1) {
    throw new Error(`strength must lie in [0, 1), got ${strength}`);
  }
  const body = { image: toImagePayload(image), kind, strength };
  const response = await postJson<DegradeResponse>(
    resolveBaseUrl(options.baseUrl),
    "/degrade",
    body,
  );
  return response.data;
}
