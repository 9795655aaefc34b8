/** Request/response plumbing for the three service endpoints. */

import type { CompleteSelection } from "./selection.js";

export interface ImageInfo {
  id: string;
  width: number;
  height: number;
  has_ground_truth: boolean;
}

export interface PointerInfo {
  xl: number;
  xr: number;
  xp: number;
  shape: string;
}

export interface Metrics {
  dsc_original: number;
  dsc_hssi: number;
  pir_original: number;
  pir_ehssi: number;
  pir_washed: number;
}

export interface ProcessResponse {
  pointer: PointerInfo;
  stages: Record<string, string>;
  metrics: Metrics | null;
}

/** Values from the overrides panel; unset fields keep server defaults. */
export interface Overrides {
  rsf?: number;
  lsf?: number;
  cannySigma?: number;
  iterations?: number;
}

export function catalogUrl(): string {
  return "/api/images";
}

export function imagePngUrl(imageId: string): string {
  return `/api/images/${encodeURIComponent(imageId)}/png`;
}

export function processUrl(imageId: string): string {
  return `/api/images/${encodeURIComponent(imageId)}/process`;
}

/** Read the overrides panel; blank or non-numeric entries are left unset. */
export function parseOverrides(raw: Record<string, string>): Overrides {
  const out: Overrides = {};
  const num = (value: string | undefined): number | undefined => {
    if (value === undefined || value.trim() === "") {
      return undefined;
    }
    const parsed = Number(value);
    return Number.isFinite(parsed) ? parsed : undefined;
  };
  const rsf = num(raw["rsf"]);
  const lsf = num(raw["lsf"]);
  const cannySigma = num(raw["cannySigma"]);
  const iterations = num(raw["iterations"]);
  if (rsf !== undefined) out.rsf = rsf;
  if (lsf !== undefined) out.lsf = lsf;
  if (cannySigma !== undefined) out.cannySigma = cannySigma;
  if (iterations !== undefined) out.iterations = Math.trunc(iterations);
  return out;
}

/** Body for POST /api/images/{id}/process. Seed points are already in
 * integer image space; the params block carries only the set overrides. */
export function buildRequestBody(
  sel: CompleteSelection,
  overrides: Overrides = {},
): object {
  const params: Record<string, number> = {};
  if (overrides.rsf !== undefined) params["rsf"] = overrides.rsf;
  if (overrides.lsf !== undefined) params["lsf"] = overrides.lsf;
  if (overrides.cannySigma !== undefined) {
    params["canny_sigma"] = overrides.cannySigma;
  }
  if (overrides.iterations !== undefined) {
    params["iterations"] = overrides.iterations;
  }
  return {
    seed: {
      cx: sel.center.x,
      cy: sel.center.y,
      px: sel.rim.x,
      py: sel.rim.y,
    },
    ...(Object.keys(params).length > 0 ? { params } : {}),
  };
}

/**
 * Wrap a stage payload for direct use as an img src.
 *
 * The base64 string is embedded verbatim: the browser decodes exactly the
 * bytes the service produced, with no client-side re-encoding.
 */
export function payloadToDataUrl(payload: string): string {
  return `data:image/png;base64,${payload}`;
}
