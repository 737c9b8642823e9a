import type { ImageInput } from "./types.js";

const DEFAULT_BASE_URL = "http://127.0.0.1:8321";

export function resolveBaseUrl(baseUrl?: string): string {
  return baseUrl ?? process.env.MSIQ_SERVICE_URL ?? DEFAULT_BASE_URL;
}

interface ImagePayload {
  data?: number[][];
  path?: string;
}

/**
 * Convert an image argument to the wire payload, rejecting anything the
 * service would reject anyway so the caller gets an immediate, local error.
 */
export function toImagePayload(image: ImageInput): ImagePayload {
  if (Array.isArray(image)) {
    if (image.length === 0 || !Array.isArray(image[0]) || image[0].length === 0) {
      throw new Error("image must be a nonempty 2D array of intensities");
    }
    const width = image[0].length;
    for (const row of image) {
      if (row.length !== width) {
        throw new Error("image rows must all have the same length");
      }
      for (const value of row) {
        if (!Number.isFinite(value) || value < 0 || value > 1) {
          throw new Error(
            `intensity ${value} is outside [0, 1]; normalize the image first`,
          );
        }
      }
    }
    return { data: image };
  }
  if (image && typeof image.path === "string" && image.path.length > 0) {
    return { path: image.path };
  }
  throw new Error("image must be a 2D array or { path: string }");
}

/** POST a JSON body; non-2xx responses become errors carrying the
 * service detail (which starts with the originating error class name). */
export async function postJson<T>(
  baseUrl: string,
  route: string,
  body: unknown,
): Promise<T> {
  const response = await fetch(`${baseUrl}${route}`, {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify(body),
  });
  if (!response.ok) {
    let detail = `${response.status} ${response.statusText}`;
    try {
      const payload = (await response.json()) as { detail?: unknown };
      if (typeof payload.detail === "string") {
        detail = payload.detail;
      } else if (payload.detail !== undefined) {
        detail = JSON.stringify(payload.detail);
      }
    } catch {
      // keep the status line
    }
    throw new Error(detail);
  }
  return (await response.json()) as T;
}
