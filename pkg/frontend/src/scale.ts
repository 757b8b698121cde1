// Font scaling for mind-map panels: size tracks the priority value,
// normalized per panel, so the top-ranked entry is always the largest.

export const MIN_SCALE_EM = 0.8;
export const MAX_SCALE_EM = 2.0;

export function fontScaleEm(
  priority: number,
  panelMin: number,
  panelMax: number,
  minScale: number = MIN_SCALE_EM,
  maxScale: number = MAX_SCALE_EM,
): number {
  if (panelMax === panelMin) {
    // Degenerate range (single entry or all-equal panel): uniform mid scale.
    return (minScale + maxScale) / 2;
  }
  const ratio = (priority - panelMin) / (panelMax - panelMin);
  return minScale + (maxScale - minScale) * ratio;
}

export function panelScales(priorities: readonly number[]): number[] {
  if (priorities.length === 0) return [];
  const panelMin = Math.min(...priorities);
  const panelMax = Math.max(...priorities);
  return priorities.map((p) => fontScaleEm(p, panelMin, panelMax));
}
