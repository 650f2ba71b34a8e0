/**
 * SVG rendering of a view model. Returns a plain SVG string so it can be
 * unit tested without a DOM; the app injects it and wires click targets
 * by vertex id.
 */

import type { ViewModel, VertexView } from "./viewmodel.js";

const SCALE = 80;
const RADIUS = 18;
const COLORS = { green: "#2e7d32", red: "#c62828", frozen: "#546e7a" };

function sx(vm: ViewModel, x: number): number {
  return (x - vm.bounds.minX) * SCALE + 60;
}

function sy(vm: ViewModel, y: number): number {
  return (y - vm.bounds.minY) * SCALE + 60;
}

export function renderSvg(vm: ViewModel): string {
  const w = sx(vm, vm.bounds.maxX) + 60;
  const h = sy(vm, vm.bounds.maxY) + 60;
  const pos: Record<string, VertexView> = {};
  for (const v of vm.vertices) pos[v.id] = v;
  const parts: string[] = [];
  parts.push(`<svg xmlns="http://www.w3.org/2000/svg" width="${w}" ` +
             `height="${h}" viewBox="0 0 ${w} ${h}">`);
  parts.push(`<defs><marker id="arrow" markerWidth="8" markerHeight="8" ` +
             `refX="7" refY="3" orient="auto">` +
             `<path d="M0,0 L7,3 L0,6 z" fill="#333"/></marker></defs>`);
  for (const a of vm.arrows) {
    const p = pos[a.src].pos;
    const q = pos[a.dst].pos;
    const x1 = sx(vm, p.x);
    const y1 = sy(vm, p.y);
    const x2 = sx(vm, q.x);
    const y2 = sy(vm, q.y);
    const len = Math.hypot(x2 - x1, y2 - y1) || 1;
    const ux = (x2 - x1) / len;
    const uy = (y2 - y1) / len;
    const ax = x1 + ux * RADIUS;
    const ay = y1 + uy * RADIUS;
    const bx = x2 - ux * (RADIUS + 4);
    const by = y2 - uy * (RADIUS + 4);
    const dash = a.half ? ` stroke-dasharray="6 4"` : "";
    parts.push(`<line x1="${ax}" y1="${ay}" x2="${bx}" y2="${by}" ` +
               `stroke="#333" stroke-width="1.6"${dash} ` +
               `marker-end="url(#arrow)"/>`);
    if (a.label) {
      parts.push(`<text x="${(ax + bx) / 2}" y="${(ay + by) / 2 - 4}" ` +
                 `font-size="11" fill="#555">${a.label}</text>`);
    }
  }
  for (const v of vm.vertices) {
    const x = sx(vm, v.pos.x);
    const y = sy(vm, v.pos.y);
    const shape = v.frozen
      ? `<rect data-vertex="${v.id}" x="${x - RADIUS}" y="${y - RADIUS}" ` +
        `width="${2 * RADIUS}" height="${2 * RADIUS}" rx="4" ` +
        `fill="${COLORS[v.color]}"/>`
      : `<circle data-vertex="${v.id}" cx="${x}" cy="${y}" r="${RADIUS}" ` +
        `fill="${COLORS[v.color]}"/>`;
    parts.push(shape);
    parts.push(`<text x="${x}" y="${y + 4}" text-anchor="middle" ` +
               `font-size="12" fill="#fff" pointer-events="none">` +
               `${v.id}</text>`);
    parts.push(`<title>g = ${v.gvector}</title>`);
  }
  parts.push("</svg>");
  return parts.join("");
}
