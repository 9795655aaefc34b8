import { describe, expect, it } from "vitest";

import {
  buildRequestBody,
  imagePngUrl,
  parseOverrides,
  payloadToDataUrl,
  processUrl,
} from "../src/api.js";

const SELECTION = { center: { x: 120, y: 131 }, rim: { x: 147, y: 131 } };

describe("process request body", () => {
  it("sends the seed points as integer image coordinates", () => {
    expect(buildRequestBody(SELECTION)).toEqual({
      seed: { cx: 120, cy: 131, px: 147, py: 131 },
    });
  });

  it("omits the params block when no overrides are set", () => {
    expect("params" in (buildRequestBody(SELECTION) as object)).toBe(false);
  });

  it("carries only the overrides that were set, in wire naming", () => {
    const body = buildRequestBody(SELECTION, { rsf: 2.0, cannySigma: 1.1 });
    expect(body).toEqual({
      seed: { cx: 120, cy: 131, px: 147, py: 131 },
      params: { rsf: 2.0, canny_sigma: 1.1 },
    });
  });
});

describe("overrides panel parsing", () => {
  it("skips blank fields", () => {
    expect(parseOverrides({ rsf: "", lsf: "  ", iterations: "" })).toEqual({});
  });

  it("parses numeric fields and truncates iteration counts", () => {
    expect(
      parseOverrides({ rsf: "1.8", lsf: "0.3", iterations: "250.7" }),
    ).toEqual({ rsf: 1.8, lsf: 0.3, iterations: 250 });
  });

  it("ignores non-numeric junk", () => {
    expect(parseOverrides({ rsf: "fast", cannySigma: "NaN" })).toEqual({});
  });
});

describe("endpoint urls", () => {
  it("targets the per-image routes", () => {
    expect(imagePngUrl("p000")).toBe("/api/images/p000/png");
    expect(processUrl("p000")).toBe("/api/images/p000/process");
  });

  it("escapes unusual image ids", () => {
    expect(processUrl("a b")).toBe("/api/images/a%20b/process");
  });
});

describe("stage payload fidelity", () => {
  it("embeds the base64 payload verbatim in the data url", () => {
    const payload = "iVBORw0KGgoAAAANSUhEUg+A/5x8=";
    const url = payloadToDataUrl(payload);
    expect(url).toBe(`data:image/png;base64,${payload}`);
    // byte-for-byte: the payload substring is exactly what was passed in
    expect(url.slice("data:image/png;base64,".length)).toBe(payload);
  });
});
