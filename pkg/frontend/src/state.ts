// Workbench state and the pure transitions the controls go through.
// The displayed panels always correspond to exactly one
// (actors, function, c, delta) tuple; snapshot responses carry the
// request key they were fetched for so stale answers can be dropped.

import type { FunctionId, Snapshot } from './api.js';

export interface WorkbenchState {
  readonly actors: readonly string[];
  readonly selected: readonly string[];
  readonly fn: FunctionId;
  readonly c: number | null; // null = follow "now"
  readonly positionCounter: number;
  readonly delta: number | null; // null = server default
  readonly snapshots: Readonly<Record<string, Snapshot>>;
}

export const initialState: WorkbenchState = {
  actors: [],
  selected: [],
  fn: 'f1',
  c: null,
  positionCounter: 0,
  delta: null,
  snapshots: {},
};

export function requestKey(state: WorkbenchState, actor: string): string {
  return [actor, state.fn, state.c ?? 'now', state.delta ?? 'default'].join('|');
}

export function isStale(state: WorkbenchState, actor: string, key: string): boolean {
  return requestKey(state, actor) !== key;
}

export function withActors(state: WorkbenchState, actors: readonly string[]): WorkbenchState {
  // Selection must stay a subset of the server's actor list.
  const selected = state.selected.filter((a) => actors.includes(a));
  return { ...state, actors, selected };
}

export function toggleActor(state: WorkbenchState, actor: string): WorkbenchState {
  if (!state.actors.includes(actor)) return state;
  const selected = state.selected.includes(actor)
    ? state.selected.filter((a) => a !== actor)
    : [...state.selected, actor];
  return { ...state, selected };
}

export function withPosition(state: WorkbenchState, positionCounter: number): WorkbenchState {
  // The time point may never exceed the server's stream position.
  const c = state.c === null ? null : Math.min(state.c, positionCounter);
  return { ...state, positionCounter, c };
}

export function withTimePoint(state: WorkbenchState, c: number | null): WorkbenchState {
  if (c === null) return { ...state, c: null };
  const clamped = Math.max(1, Math.min(c, state.positionCounter));
  return { ...state, c: clamped };
}

export function withFunction(state: WorkbenchState, fn: FunctionId): WorkbenchState {
  return { ...state, fn };
}

export function withDelta(state: WorkbenchState, delta: number | null): WorkbenchState {
  if (delta !== null && (!Number.isFinite(delta) || delta < 0)) return state;
  return { ...state, delta };
}

export function storeSnapshot(
  state: WorkbenchState,
  actor: string,
  key: string,
  snapshot: Snapshot,
): WorkbenchState {
  if (isStale(state, actor, key)) return state; // superseded by a newer request
  return { ...state, snapshots: { ...state.snapshots, [actor]: snapshot } };
}

export function effectiveC(state: WorkbenchState): number {
  return state.c ?? state.positionCounter;
}

export function headerLabel(state: WorkbenchState): string {
  const actors = state.selected.length > 0 ? state.selected.join(', ') : 'no selection';
  const delta = state.delta === null ? 'default' : state.delta.toString();
  return `${actors} · ${state.fn} · c=${effectiveC(state)} · Δ=${delta}`;
}
