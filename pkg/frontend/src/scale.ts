// Linear scales and the sequential color scale used by the heatmap.

export interface LinearScale {
  (value: number): number;
  invert(px: number): number;
}

export function linearScale(
  domain: [number, number],
  range: [number, number],
): LinearScale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 || 1;
  const scale = ((value: number) => r0 + ((value - d0) / span) * (r1 - r0)) as LinearScale;
  scale.invert = (px: number) => d0 + ((px - r0) / (r1 - r0 || 1)) * span;
  return scale;
}

// Fixed sequential scale: light yellow (rank 0) to dark blue-black (rank 1).
const COLOR_STOPS: Array<[number, [number, number, number]]> = [
  [0.0, [255, 255, 204]],
  [0.25, [161, 218, 180]],
  [0.5, [65, 182, 196]],
  [0.75, [34, 94, 168]],
  [1.0, [8, 29, 88]],
];

export function rankColor(rank: number): string {
  const t = Math.min(1, Math.max(0, rank));
  for (let i = 1; i < COLOR_STOPS.length; i++) {
    const [t1, c1] = COLOR_STOPS[i];
    if (t <= t1) {
      const [t0, c0] = COLOR_STOPS[i - 1];
      const f = (t - t0) / (t1 - t0);
      const mix = c0.map((v, k) => Math.round(v + f * (c1[k] - v)));
      return `rgb(${mix[0]}, ${mix[1]}, ${mix[2]})`;
    }
  }
  return "rgb(8, 29, 88)";
}
