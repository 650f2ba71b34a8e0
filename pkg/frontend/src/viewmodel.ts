/**
 * The view model is a pure function of the last session response: vertex
 * positions from the label chart, badges for frozen / green / red and the
 * g-vector, plus the history timeline. No mathematics happens here.
 */

import { layoutPositions, Point } from "./layout.js";
import type { SeedState } from "./protocol.js";

export interface VertexView {
  id: string;
  pos: Point;
  frozen: boolean;
  color: "green" | "red" | "frozen";
  gvector: string;
}

export interface ArrowView {
  src: string;
  dst: string;
  label: string;
  half: boolean;
}

export interface ViewModel {
  vertices: VertexView[];
  arrows: ArrowView[];
  history: string[];
  bounds: { minX: number; maxX: number; minY: number; maxY: number };
}

export function gvectorText(g: Record<string, number>): string {
  const parts = Object.keys(g)
    .sort()
    .map((v) => {
      const c = g[v];
      const mag = Math.abs(c) === 1 ? "" : String(Math.abs(c));
      return `${c < 0 ? "-" : "+"}${mag}e[${v}]`;
    });
  return parts.length ? parts.join(" ") : "0";
}

export function buildViewModel(state: SeedState): ViewModel {
  const positions = layoutPositions(state.vertices.map((v) => v.id));
  const vertices: VertexView[] = state.vertices.map((v) => ({
    id: v.id,
    pos: positions[v.id],
    frozen: v.frozen,
    color: v.frozen ? "frozen" : v.green ? "green" : "red",
    gvector: gvectorText(v.gvector),
  }));
  const arrows: ArrowView[] = state.arrows.map((a) => ({
    src: a.src,
    dst: a.dst,
    label: a.weight2 % 2 === 0 ? (a.weight2 === 2 ? "" : String(a.weight2 / 2))
                               : `${a.weight2}/2`,
    half: a.weight2 % 2 !== 0,
  }));
  const xs = vertices.map((v) => v.pos.x);
  const ys = vertices.map((v) => v.pos.y);
  return {
    vertices,
    arrows,
    history: state.history,
    bounds: {
      minX: Math.min(...xs),
      maxX: Math.max(...xs),
      minY: Math.min(...ys),
      maxY: Math.max(...ys),
    },
  };
}
