// Composition test: the state/api/render pieces driven the way the page
// drives them, against a faked service speaking the real payload shapes.

import { describe, expect, it } from 'vitest';

import { ApiClient, type FetchLike, type Snapshot } from './api.js';
import {
  initialState,
  requestKey,
  storeSnapshot,
  toggleActor,
  withActors,
  withPosition,
  type WorkbenchState,
} from './state.js';
import { renderActorPicker, renderPanel, renderResolutionModal } from './render.js';

const STORY_ACTORS = ['Wolf', 'Jäger', 'Frau', 'Bett'];

function ok(payload: unknown) {
  return { status: 200, json: async () => ({ status: 'ok', payload }) };
}

function storySnapshot(c: number): Snapshot {
  // Jäger's once-only key "gehen vorbei" at position 3 under f2.
  const priority = 0.5 ** (c - 3);
  return {
    actor: 'Jäger',
    function: 'f2',
    c,
    delta: 0.05,
    entries: [
      {
        verb: 'gehen',
        object: 'vorbei',
        priority,
        display: priority < 5e-4 ? '0.0' : priority.toFixed(3),
        occurrences: [3],
      },
    ],
  };
}

describe('workbench flow against the nine-sentence fixture', () => {
  it('populates the picker with the four discovered actors', async () => {
    const fetchImpl: FetchLike = async (url) => {
      expect(url).toBe('http://s/session');
      return ok({ store: { position_counter: 9, actors: STORY_ACTORS } });
    };
    const session = await new ApiClient('http://s', fetchImpl).session();
    let state: WorkbenchState = withActors(initialState, [...session.store.actors]);
    state = withPosition(state, session.store.position_counter);
    const picker = renderActorPicker(state.actors, state.selected);
    for (const actor of STORY_ACTORS) {
      expect(picker).toContain(`value="${actor}"`);
    }
    expect(state.positionCounter).toBe(9);
  });

  it('shows values falling monotonically as c slides for a non-repeated key', async () => {
    const fetchImpl: FetchLike = async (url) => {
      const c = Number(new URL(url).searchParams.get('c'));
      return ok(storySnapshot(c));
    };
    const client = new ApiClient('http://s', fetchImpl);
    const priorities: number[] = [];
    for (let c = 3; c <= 9; c += 1) {
      const snapshot = await client.snapshot('Jäger', 'f2', c, null);
      priorities.push(snapshot.entries[0]!.priority);
    }
    for (let i = 1; i < priorities.length; i += 1) {
      expect(priorities[i]!).toBeLessThan(priorities[i - 1]!);
    }
  });

  it('binds a pronoun via the modal and the resolved collocation is emitted', async () => {
    const pending = {
      request_id: 'r1',
      kind: 'PRONOUN_BINDING' as const,
      sentence: { text: 'Er trat ins Haus ein.', stream_index: 10 },
      candidates: ['Jäger', 'Bett', 'Frau', 'Wolf'],
      proposed: 'Jäger',
    };
    const fetchImpl: FetchLike = async (url, init) => {
      if (url.endsWith('/stream/step')) {
        return ok({ emitted: [], new_actors: [], pending: [pending], dropped: [] });
      }
      expect(url).toBe('http://s/resolutions/r1');
      expect(JSON.parse(String(init?.body))).toEqual({ actor: 'Jäger' });
      return ok({
        emitted: ['Jäger|eintreten|Haus|10'],
        new_actors: [],
        pending: [],
        dropped: [],
      });
    };
    const client = new ApiClient('http://s', fetchImpl);
    const stepDelta = await client.step('Er trat ins Haus ein.');
    const request = stepDelta.pending[0]!;
    const modal = renderResolutionModal(request);
    expect(modal).toContain('value="Jäger" selected');
    const resolved = await client.resolve(request.request_id, request.proposed!);
    expect(resolved.emitted).toEqual(['Jäger|eintreten|Haus|10']);
  });

  it('keeps a snapshot only if it still matches the displayed tuple', () => {
    let state = withPosition(withActors(initialState, STORY_ACTORS), 9);
    state = toggleActor(state, 'Jäger');
    const key = requestKey(state, 'Jäger');
    state = storeSnapshot(state, 'Jäger', key, storySnapshot(9));
    const html = renderPanel(state.snapshots['Jäger']!);
    expect(html).toContain('gehen vorbei');
    expect(html).toContain('(0.016)');
  });
});
