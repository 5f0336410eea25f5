/** Distinct, stable colors per variant; golden-angle hue rotation keeps any
 *  reasonable number of curves distinguishable. */

export function variantColor(index: number): string {
  const hue = (index * 137.508) % 360;
  return `hsl(${hue.toFixed(1)} 68% 42%)`;
}

/** Dash pattern distinguishing series of the same variant. */
export function seriesDash(seriesIndex: number): number[] {
  const patterns: number[][] = [[], [6, 4], [2, 3], [8, 3, 2, 3]];
  return patterns[seriesIndex % patterns.length] ?? [];
}
