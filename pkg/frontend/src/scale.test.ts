import { describe, expect, it } from 'vitest';

import { fontScaleEm, MAX_SCALE_EM, MIN_SCALE_EM, panelScales } from './scale.js';

describe('fontScaleEm', () => {
  it('maps the panel extremes to the scale bounds', () => {
    expect(fontScaleEm(0.1, 0.1, 0.9)).toBe(MIN_SCALE_EM);
    expect(fontScaleEm(0.9, 0.1, 0.9)).toBe(MAX_SCALE_EM);
  });

  it('interpolates linearly between the bounds', () => {
    expect(fontScaleEm(0.5, 0.0, 1.0)).toBeCloseTo((MIN_SCALE_EM + MAX_SCALE_EM) / 2, 12);
    expect(fontScaleEm(0.25, 0.0, 1.0)).toBeCloseTo(0.8 + 1.2 * 0.25, 12);
  });

  it('uses a uniform mid scale for a degenerate range', () => {
    expect(fontScaleEm(0.563, 0.563, 0.563)).toBe((MIN_SCALE_EM + MAX_SCALE_EM) / 2);
  });

  it('respects custom bounds', () => {
    expect(fontScaleEm(1.0, 0.0, 1.0, 1.0, 3.0)).toBe(3.0);
  });
});

describe('panelScales', () => {
  it('gives the largest font to the highest priority', () => {
    const priorities = [0.563, 0.258, 0.016];
    const scales = panelScales(priorities);
    const top = Math.max(...scales);
    expect(scales[0]).toBe(top);
    expect(scales[0]).toBe(MAX_SCALE_EM);
    expect(scales[2]).toBe(MIN_SCALE_EM);
  });

  it('is monotone in priority, so the top-ranked entry is always largest', () => {
    const priorities = [0.9, 0.5, 0.5, 0.1, 0.02];
    const scales = panelScales(priorities);
    for (let i = 1; i < scales.length; i += 1) {
      expect(scales[i - 1]!).toBeGreaterThanOrEqual(scales[i]!);
    }
  });

  it('handles the single-entry panel', () => {
    expect(panelScales([0.42])).toEqual([(MIN_SCALE_EM + MAX_SCALE_EM) / 2]);
  });

  it('handles the empty panel', () => {
    expect(panelScales([])).toEqual([]);
  });
});
