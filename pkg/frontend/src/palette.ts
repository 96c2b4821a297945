// Topic colors cycle through a fixed palette by topic index. With more
// topics than palette entries, distinct topics share a color; that
// collision is accepted rather than inventing unstable color schemes.

export const PALETTE = [
  "#4e79a7",
  "#f28e2b",
  "#e15759",
  "#76b7b2",
  "#59a14f",
  "#edc948",
  "#b07aa1",
  "#ff9da7",
  "#9c755f",
  "#bab0ac",
  "#3f678e",
  "#c2554f",
] as const;

export function colorFor(topicIndex: number): string {
  const i = ((topicIndex % PALETTE.length) + PALETTE.length) % PALETTE.length;
  return PALETTE[i] as string;
}

/** Gray-to-hot scale for term saturation, weight in [0, 1]. */
export function saturationColor(weight: number): string {
  const w = Math.max(0, Math.min(1, weight));
  const lightness = 88 - 48 * w;
  return `hsl(16, ${Math.round(95 * w)}%, ${Math.round(lightness)}%)`;
}
