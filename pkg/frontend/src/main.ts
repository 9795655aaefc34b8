/** DOM wiring: canvas selection on the chosen image, one in-flight process
 * request at a time, and persistent gallery/metrics rendering. */

import {
  catalogUrl,
  imagePngUrl,
  processUrl,
  buildRequestBody,
  parseOverrides,
  type ImageInfo,
  type ProcessResponse,
} from "./api.js";
import {
  galleryItems,
  metricRows,
  pointerSummary,
  describeError,
} from "./gallery.js";
import {
  EMPTY_SELECTION,
  applyClick,
  canvasToImage,
  isComplete,
  radius,
  type Selection,
} from "./selection.js";

function byId<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (el === null) {
    throw new Error(`missing element #${id}`);
  }
  return el as T;
}

const imageSelect = byId<HTMLSelectElement>("image-select");
const canvas = byId<HTMLCanvasElement>("canvas");
const statusLine = byId<HTMLElement>("status");
const pointerLine = byId<HTMLElement>("pointer");
const galleryEl = byId<HTMLElement>("gallery");
const metricsTable = byId<HTMLTableElement>("metrics");

let baseImage: HTMLImageElement | null = null;
let selection: Selection = EMPTY_SELECTION;
let inflight: AbortController | null = null;
let requestSeq = 0;

function setStatus(text: string, isError = false): void {
  statusLine.textContent = text;
  statusLine.className = isError ? "error" : "";
}

function drawCanvas(): void {
  const ctx = canvas.getContext("2d");
  if (ctx === null || baseImage === null) {
    return;
  }
  ctx.drawImage(baseImage, 0, 0);
  ctx.strokeStyle = "#ff5050";
  ctx.fillStyle = "#ff5050";
  ctx.lineWidth = 1.5;
  if (selection.center !== null) {
    ctx.beginPath();
    ctx.arc(selection.center.x, selection.center.y, 2.5, 0, 2 * Math.PI);
    ctx.fill();
  }
  const r = radius(selection);
  if (selection.center !== null && r !== null) {
    ctx.beginPath();
    ctx.arc(selection.center.x, selection.center.y, r, 0, 2 * Math.PI);
    ctx.stroke();
  }
}

function renderResponse(resp: ProcessResponse): void {
  galleryEl.replaceChildren();
  for (const item of galleryItems(resp.stages)) {
    const figure = document.createElement("figure");
    const img = document.createElement("img");
    img.src = item.src;
    img.alt = item.name;
    const caption = document.createElement("figcaption");
    caption.textContent = item.label;
    figure.append(img, caption);
    galleryEl.append(figure);
  }
  pointerLine.textContent = pointerSummary(resp);
  const body = metricsTable.createTBody();
  metricsTable.replaceChildren(body);
  for (const [label, value] of metricRows(resp.metrics)) {
    const row = body.insertRow();
    row.insertCell().textContent = label;
    row.insertCell().textContent = value;
  }
  if (resp.metrics === null) {
    const row = body.insertRow();
    row.insertCell().textContent = "no ground truth for this image";
  }
}

async function runProcess(): Promise<void> {
  if (!isComplete(selection) || baseImage === null) {
    return;
  }
  const seq = ++requestSeq;
  inflight?.abort();
  const controller = new AbortController();
  inflight = controller;
  const body = buildRequestBody(selection, parseOverrides({
    rsf: byId<HTMLInputElement>("rsf").value,
    lsf: byId<HTMLInputElement>("lsf").value,
    cannySigma: byId<HTMLInputElement>("cannySigma").value,
    iterations: byId<HTMLInputElement>("iterations").value,
  }));
  setStatus("processing…");
  try {
    const resp = await fetch(processUrl(imageSelect.value), {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
      signal: controller.signal,
    });
    if (seq !== requestSeq) {
      return; // a newer selection superseded this render
    }
    if (!resp.ok) {
      let detail: string | null = null;
      try {
        detail = ((await resp.json()) as { detail?: string }).detail ?? null;
      } catch {
        detail = null;
      }
      setStatus(describeError(resp.status, detail), true);
      return;
    }
    renderResponse((await resp.json()) as ProcessResponse);
    setStatus("done; click to start a new selection");
  } catch (err) {
    if (!controller.signal.aborted && seq === requestSeq) {
      setStatus(describeError(0, String(err)), true);
    }
  }
}

function onCanvasClick(event: MouseEvent): void {
  if (baseImage === null) {
    return;
  }
  const rect = canvas.getBoundingClientRect();
  const pt = canvasToImage(
    event.clientX - rect.left,
    event.clientY - rect.top,
    rect.width,
    rect.height,
    baseImage.naturalWidth,
    baseImage.naturalHeight,
  );
  if (pt === null) {
    return;
  }
  selection = applyClick(selection, pt);
  drawCanvas();
  if (isComplete(selection)) {
    void runProcess();
  } else {
    setStatus("now click a point on the region boundary");
  }
}

function loadImage(id: string): void {
  selection = EMPTY_SELECTION;
  const img = new Image();
  img.onload = () => {
    baseImage = img;
    canvas.width = img.naturalWidth;
    canvas.height = img.naturalHeight;
    drawCanvas();
    setStatus("click the region center");
  };
  img.onerror = () => setStatus(`failed to load image ${id}`, true);
  img.src = imagePngUrl(id);
}

async function init(): Promise<void> {
  const resp = await fetch(catalogUrl());
  if (!resp.ok) {
    setStatus(`catalog request failed: HTTP ${resp.status}`, true);
    return;
  }
  const catalog = (await resp.json()) as ImageInfo[];
  if (catalog.length === 0) {
    setStatus("the service has no images", true);
    return;
  }
  imageSelect.replaceChildren();
  for (const info of catalog) {
    const option = document.createElement("option");
    option.value = info.id;
    option.textContent = `${info.id} (${info.width}×${info.height}` +
      `${info.has_ground_truth ? ", gt" : ""})`;
    imageSelect.append(option);
  }
  imageSelect.addEventListener("change", () => loadImage(imageSelect.value));
  canvas.addEventListener("click", onCanvasClick);
  loadImage(catalog[0]!.id);
}

void init();
