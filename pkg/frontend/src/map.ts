// The cross-K topic map: every topic of every trained model as one
// circle, positioned by the server's 2-D embedding. Coordinates are only
// rescaled to the viewport (and optionally nudged apart when collision
// detection is on); neighborhood structure comes from the server alone.

import type { MapPoint } from "./api.js";
import { colorFor, saturationColor } from "./palette.js";

export const VIEW_W = 800;
export const VIEW_H = 600;
const MARGIN = 40;
const SVG_NS = "http://www.w3.org/2000/svg";

export interface MapProps {
  points: MapPoint[];
  /** term weights keyed "k:topic"; null shows cluster colors */
  saturation: Record<string, number> | null;
  showClusters: boolean;
  collision: boolean;
  onTopicClick: (k: number, topic: number) => void;
}

export function radiusFor(size: number): number {
  return 2 + Math.sqrt(size) * 1.8;
}

interface Placed {
  point: MapPoint;
  x: number;
  y: number;
  r: number;
}

function place(points: MapPoint[], collision: boolean): Placed[] {
  const xs = points.map((p) => p.x);
  const ys = points.map((p) => p.y);
  const minX = Math.min(...xs);
  const maxX = Math.max(...xs);
  const minY = Math.min(...ys);
  const maxY = Math.max(...ys);
  const spanX = maxX - minX || 1;
  const spanY = maxY - minY || 1;
  const placed: Placed[] = points.map((p) => ({
    point: p,
    x: MARGIN + ((p.x - minX) / spanX) * (VIEW_W - 2 * MARGIN),
    y: MARGIN + ((p.y - minY) / spanY) * (VIEW_H - 2 * MARGIN),
    r: radiusFor(p.size),
  }));
  if (!collision) return placed;

  // deterministic relaxation: push overlapping pairs apart a little,
  // repeated a fixed number of rounds
  for (let round = 0; round < 30; round++) {
    for (let i = 0; i < placed.length; i++) {
      for (let j = i + 1; j < placed.length; j++) {
        const a = placed[i] as Placed;
        const b = placed[j] as Placed;
        const dx = b.x - a.x;
        const dy = b.y - a.y;
        const dist = Math.hypot(dx, dy);
        const gap = a.r + b.r + 1 - dist;
        if (gap <= 0) continue;
        // coincident circles have no direction to push along; split on x
        const ux = dist === 0 ? 1 : dx / dist;
        const uy = dist === 0 ? 0 : dy / dist;
        a.x -= (ux * gap) / 2;
        a.y -= (uy * gap) / 2;
        b.x += (ux * gap) / 2;
        b.y += (uy * gap) / 2;
      }
    }
  }
  return placed;
}

function fillFor(point: MapPoint, props: MapProps): string {
  if (props.saturation !== null) {
    return saturationColor(props.saturation[`${point.k}:${point.topic}`] ?? 0);
  }
  return props.showClusters ? colorFor(point.cluster) : "#8a8a8a";
}

export function renderMap(container: HTMLElement, props: MapProps): void {
  container.textContent = "";
  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("class", "topic-map");
  svg.setAttribute("viewBox", `0 0 ${VIEW_W} ${VIEW_H}`);

  for (const { point, x, y, r } of place(props.points, props.collision)) {
    const circle = document.createElementNS(SVG_NS, "circle");
    circle.setAttribute("cx", x.toFixed(2));
    circle.setAttribute("cy", y.toFixed(2));
    circle.setAttribute("r", r.toFixed(2));
    circle.setAttribute("fill", fillFor(point, props));
    circle.setAttribute("data-k", String(point.k));
    circle.setAttribute("data-topic", String(point.topic));
    circle.setAttribute("class", "map-point");

    const title = document.createElementNS(SVG_NS, "title");
    title.textContent = `${point.k}:${point.topic} ${point.words.join(" ")}`;
    circle.append(title);

    circle.addEventListener("click", () =>
      props.onTopicClick(point.k, point.topic),
    );
    svg.append(circle);
  }
  container.append(svg);
}
