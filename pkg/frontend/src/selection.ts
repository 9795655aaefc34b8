/** Two-click circle selection: center first, then rim; a further click
 * starts a fresh selection with the new point as center. */

export interface Point {
  readonly x: number;
  readonly y: number;
}

export interface Selection {
  readonly center: Point | null;
  readonly rim: Point | null;
}

export const EMPTY_SELECTION: Selection = { center: null, rim: null };

export interface CompleteSelection {
  readonly center: Point;
  readonly rim: Point;
}

export function isComplete(sel: Selection): sel is CompleteSelection {
  return sel.center !== null && sel.rim !== null;
}

export function applyClick(sel: Selection, pt: Point): Selection {
  if (sel.center === null) {
    return { center: pt, rim: null };
  }
  if (sel.rim === null) {
    return { center: sel.center, rim: pt };
  }
  return { center: pt, rim: null };
}

/** Radius of the implied circle, or null until both points exist. */
export function radius(sel: Selection): number | null {
  if (!isComplete(sel)) {
    return null;
  }
  return Math.hypot(sel.rim.x - sel.center.x, sel.rim.y - sel.center.y);
}

/**
 * Map a canvas-space click to integer image pixels.
 *
 * The canvas may be CSS-scaled, so coordinates are rescaled by the
 * image/canvas size ratio and floored to the containing pixel. Clicks
 * landing outside the image return null and must be ignored.
 */
export function canvasToImage(
  canvasX: number,
  canvasY: number,
  canvasWidth: number,
  canvasHeight: number,
  imageWidth: number,
  imageHeight: number,
): Point | null {
  if (canvasWidth <= 0 || canvasHeight <= 0) {
    return null;
  }
  const x = Math.floor((canvasX * imageWidth) / canvasWidth);
  const y = Math.floor((canvasY * imageHeight) / canvasHeight);
  if (x < 0 || y < 0 || x >= imageWidth || y >= imageHeight) {
    return null;
  }
  return { x, y };
}
