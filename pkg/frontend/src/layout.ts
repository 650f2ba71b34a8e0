/**
 * Layout presets keyed by the label grids: grid labels "st" for the
 * quadrilateral and bigon charts, star labels "js^i" for star
 * triangulations (the single triangle included), circle fallback
 * otherwise. Coordinates are abstract units; the renderer scales them.
 */

export interface Point {
  x: number;
  y: number;
}

const GRID_RE = /^([0-9])([0-9])$/;
const STAR_RE = /^([0-9])([0-9])\^([0-9]+)$/;

export function layoutPositions(ids: string[]): Record<string, Point> {
  if (ids.every((v) => GRID_RE.test(v))) {
    return gridLayout(ids);
  }
  if (ids.every((v) => STAR_RE.test(v))) {
    return starLayout(ids);
  }
  return circleLayout(ids);
}

/** Quadrilateral chart: s right, t up. */
function gridLayout(ids: string[]): Record<string, Point> {
  const out: Record<string, Point> = {};
  for (const v of ids) {
    const m = GRID_RE.exec(v)!;
    out[v] = { x: Number(m[1]), y: -Number(m[2]) };
  }
  return out;
}

/**
 * Star chart: triangles side by side, row j growing downward, position s
 * rightward inside triangle i; seams j0^(i+1) sit on the shared edge.
 */
function starLayout(ids: string[]): Record<string, Point> {
  const out: Record<string, Point> = {};
  let rowMax = 1;
  for (const v of ids) {
    const m = STAR_RE.exec(v)!;
    rowMax = Math.max(rowMax, Number(m[1]));
  }
  const width = rowMax + 1;
  for (const v of ids) {
    const m = STAR_RE.exec(v)!;
    const j = Number(m[1]);
    const s = Number(m[2]);
    const i = Number(m[3]);
    out[v] = { x: (i - 1) * width + s + (rowMax - j) / 2, y: j };
  }
  return out;
}

function circleLayout(ids: string[]): Record<string, Point> {
  const out: Record<string, Point> = {};
  const n = ids.length || 1;
  ids.forEach((v, idx) => {
    const a = (2 * Math.PI * idx) / n;
    out[v] = { x: Math.cos(a) * n * 0.4, y: Math.sin(a) * n * 0.4 };
  });
  return out;
}
