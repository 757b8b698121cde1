// Workbench bootstrap: wires the controls to the service and keeps the
// panels in sync with exactly one (actors, fn, c, delta) tuple.

import { ApiClient, ApiError, type FunctionId, type StepDelta } from './api.js';
import {
  effectiveC,
  headerLabel,
  initialState,
  isStale,
  requestKey,
  storeSnapshot,
  toggleActor,
  withActors,
  withDelta,
  withFunction,
  withPosition,
  withTimePoint,
  type WorkbenchState,
} from './state.js';
import {
  renderActorPicker,
  renderBanner,
  renderComparePanels,
  renderPanel,
  renderResolutionModal,
  renderToast,
} from './render.js';

const api = new ApiClient(
  new URLSearchParams(location.search).get('api') ?? 'http://127.0.0.1:8000',
);

let state: WorkbenchState = initialState;
let mutationInFlight = false;

const el = (id: string) => document.getElementById(id) as HTMLElement;

function setState(next: WorkbenchState, refetch: boolean): void {
  state = next;
  el('header-tuple').textContent = headerLabel(state);
  const slider = el('time-slider') as HTMLInputElement;
  slider.max = String(Math.max(1, state.positionCounter));
  slider.value = String(effectiveC(state));
  el('time-label').textContent = `c = ${effectiveC(state)} / ${state.positionCounter}`;
  el('actor-picker').innerHTML = renderActorPicker(state.actors, state.selected);
  for (const box of document.querySelectorAll<HTMLInputElement>('.actor-box')) {
    box.onchange = () => setState(toggleActor(state, box.value), true);
  }
  if (refetch) {
    void refreshSnapshots();
  } else {
    renderPanels();
  }
}

function renderPanels(): void {
  const panels = state.selected
    .map((actor) => state.snapshots[actor])
    .filter((s): s is NonNullable<typeof s> => s !== undefined)
    .map((s) => renderPanel(s));
  el('panels').innerHTML =
    panels.length > 0 ? panels.join('') : '<p class="placeholder">select an actor</p>';
}

async function refreshPosition(): Promise<void> {
  const session = await api.session();
  state = withActors(state, [...session.store.actors]);
  state = withPosition(state, session.store.position_counter);
}

async function refreshSnapshots(): Promise<void> {
  const c = state.c; // null means "now" on the server side too
  for (const actor of state.selected) {
    const key = requestKey(state, actor);
    try {
      const snapshot = await api.snapshot(actor, state.fn, c, state.delta);
      state = storeSnapshot(state, actor, key, snapshot);
    } catch (error) {
      if (!isStale(state, actor, key)) banner(describe(error));
    }
  }
  renderPanels();
}

function describe(error: unknown): string {
  if (error instanceof ApiError) return `${error.code}: ${error.message}`;
  return error instanceof Error ? error.message : String(error);
}

function banner(message: string): void {
  el('banners').insertAdjacentHTML('beforeend', renderBanner(message));
  for (const button of document.querySelectorAll<HTMLButtonElement>('.banner .dismiss')) {
    button.onclick = () => button.parentElement?.remove();
  }
}

function toast(message: string): void {
  el('banners').insertAdjacentHTML('beforeend', renderToast(message));
  window.setTimeout(() => document.querySelector('.toast')?.remove(), 4000);
}

function reportDelta(delta: StepDelta): void {
  for (const fragment of delta.dropped) {
    toast(`dropped: ${fragment.reason.toLowerCase()}`);
  }
  if (delta.pending.length > 0) {
    showResolutionModal(delta.pending[0]!);
  }
}

function showResolutionModal(request: Parameters<typeof renderResolutionModal>[0]): void {
  el('modal-host').innerHTML = renderResolutionModal(request);
  const chosen = () => {
    const typed = (el('resolution-new-actor') as HTMLInputElement).value.trim();
    if (typed.length > 0) return typed;
    return (el('resolution-actor') as HTMLSelectElement).value;
  };
  (el('resolution-submit') as HTMLButtonElement).onclick = () =>
    void settle(api.resolve(request.request_id, chosen()));
  (el('resolution-discard') as HTMLButtonElement).onclick = () =>
    void settle(api.discard(request.request_id));
}

async function settle(call: Promise<StepDelta>): Promise<void> {
  try {
    const delta = await call;
    el('modal-host').innerHTML = '';
    await refreshPosition();
    reportDelta(delta);
    setState(state, true);
  } catch (error) {
    banner(describe(error));
  }
}

async function stepStream(): Promise<void> {
  if (mutationInFlight) return; // at most one in-flight mutation
  const input = el('step-input') as HTMLInputElement;
  const text = input.value.trim();
  if (text.length === 0) return;
  mutationInFlight = true;
  try {
    const delta = await api.step(text);
    input.value = '';
    await refreshPosition();
    reportDelta(delta);
    setState(state, true);
  } catch (error) {
    banner(describe(error));
    try {
      await refreshPosition(); // re-sync the stream position after a failure
      setState(state, false);
    } catch {
      /* service unreachable; the banner already says so */
    }
  } finally {
    mutationInFlight = false;
  }
}

async function compareFunctions(): Promise<void> {
  const actor = state.selected[0];
  if (actor === undefined) {
    banner('select an actor to compare functions');
    return;
  }
  try {
    const c = state.c;
    const snapshots = await Promise.all(
      (['f1', 'f2', 'f3'] as FunctionId[]).map((fn) =>
        api.snapshot(actor, fn, c, state.delta),
      ),
    );
    el('panels').innerHTML = renderComparePanels(snapshots);
  } catch (error) {
    banner(describe(error));
  }
}

async function boot(): Promise<void> {
  try {
    await refreshPosition();
  } catch (error) {
    banner(describe(error));
    return;
  }
  setState(state, false);

  (el('fn-select') as HTMLSelectElement).onchange = (event) =>
    setState(withFunction(state, (event.target as HTMLSelectElement).value as FunctionId), true);
  (el('time-slider') as HTMLInputElement).oninput = (event) =>
    setState(withTimePoint(state, Number((event.target as HTMLInputElement).value)), true);
  (el('time-now') as HTMLButtonElement).onclick = () =>
    setState(withTimePoint(state, null), true);
  (el('delta-input') as HTMLInputElement).onchange = (event) => {
    const raw = (event.target as HTMLInputElement).value.trim();
    setState(withDelta(state, raw === '' ? null : Number(raw)), true);
  };
  (el('step-button') as HTMLButtonElement).onclick = () => void stepStream();
  (el('step-input') as HTMLInputElement).onkeydown = (event) => {
    if (event.key === 'Enter') void stepStream();
  };
  (el('compare-button') as HTMLButtonElement).onclick = () => void compareFunctions();

  const pending = await api.resolutions();
  if (pending.length > 0) showResolutionModal(pending[0]!);
}

void boot();
