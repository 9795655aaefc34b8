/** Pure view models for the stage gallery and metrics table. */

import type { Metrics, ProcessResponse } from "./api.js";
import { payloadToDataUrl } from "./api.js";

export interface GalleryItem {
  name: string;
  label: string;
  src: string;
}

export const STAGE_ORDER: readonly string[] = [
  "hssi",
  "edge_original",
  "ehssi",
  "washed",
  "eehssi",
  "seg_original",
  "seg_hssi",
];

const STAGE_LABELS: Record<string, string> = {
  hssi: "stretched image",
  edge_original: "edges, original",
  ehssi: "edges, stretched",
  washed: "after wash-up",
  eehssi: "enhanced edges",
  seg_original: "contour on original",
  seg_hssi: "contour on stretched",
};

export function galleryItems(stages: Record<string, string>): GalleryItem[] {
  const items: GalleryItem[] = [];
  for (const name of STAGE_ORDER) {
    const payload = stages[name];
    if (payload === undefined) {
      continue;
    }
    items.push({
      name,
      label: STAGE_LABELS[name] ?? name,
      src: payloadToDataUrl(payload),
    });
  }
  return items;
}

export function pointerSummary(resp: ProcessResponse): string {
  const p = resp.pointer;
  return `${p.shape} histogram, peak ${p.xp}, band [${p.xl}, ${p.xr}]`;
}

const METRIC_ROWS: ReadonlyArray<[keyof Metrics, string]> = [
  ["dsc_original", "DSC, original"],
  ["dsc_hssi", "DSC, stretched"],
  ["pir_original", "interior edge %, original"],
  ["pir_ehssi", "interior edge %, stretched"],
  ["pir_washed", "interior edge %, washed"],
];

/** Five [label, formatted value] rows, or none without ground truth. */
export function metricRows(metrics: Metrics | null): Array<[string, string]> {
  if (metrics === null) {
    return [];
  }
  return METRIC_ROWS.map(([key, label]) => [label, metrics[key].toFixed(4)]);
}

/** Human-readable request failure, preserving the failing stage name the
 * service embeds in its error detail. */
export function describeError(status: number, detail: string | null): string {
  const reason = detail !== null && detail !== "" ? detail : `HTTP ${status}`;
  return `processing failed: ${reason}`;
}
