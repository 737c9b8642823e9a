/** A 2D row-major intensity grid in [0, 1], or a server-local file path. */
export type ImageInput = number[][] | { path: string };

export type MomentScheme =
  | "raw_grid"
  | "pixel_center_delta"
  | "pixel_integrated_constant";

export type MsiqVariant = "rmse" | "weighted";

export type DegradationKind =
  | "anisotropic_affine"
  | "shear"
  | "rotation"
  | "perspective"
  | "jpeg";

/** One descriptor component: [p, q, value]. */
export type DescriptorEntry = [number, number, number];

export interface CommonOptions {
  /** Service base URL; defaults to MSIQ_SERVICE_URL or http://127.0.0.1:8321. */
  baseUrl?: string;
}

export interface DescriptorOptions extends CommonOptions {
  /** Maximum total moment order (default 4). */
  order?: number;
  /** Mass-model discretization (default "raw_grid"; "raw" is accepted). */
  scheme?: MomentScheme | string;
}

export interface MsiqOptions extends DescriptorOptions {
  /** Distance variant (default "rmse"). */
  variant?: MsiqVariant | string;
}
