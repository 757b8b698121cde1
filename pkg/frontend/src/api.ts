// Typed client for the engine service. Every endpoint answers with an
// envelope carrying either a payload or a structured error.

export type FunctionId = 'f1' | 'f2' | 'f3';

export interface SnapshotEntry {
  readonly verb: string;
  readonly object: string | null;
  readonly priority: number;
  readonly display: string;
  readonly occurrences: readonly number[];
}

export interface Snapshot {
  readonly actor: string;
  readonly function: FunctionId;
  readonly c: number;
  readonly delta: number;
  readonly entries: readonly SnapshotEntry[];
}

export interface ResolutionRequest {
  readonly request_id: string;
  readonly kind: 'PRONOUN_BINDING' | 'SPLIT_CONFIRM' | 'DISCARD_CONFIRM';
  readonly sentence: { readonly text: string; readonly stream_index: number };
  readonly candidates: readonly string[];
  readonly proposed: string | null;
}

export interface DroppedFragment {
  readonly context: string;
  readonly reason: string;
  readonly text: string;
}

export interface StepDelta {
  readonly emitted: readonly string[];
  readonly new_actors: readonly string[];
  readonly pending: readonly ResolutionRequest[];
  readonly dropped: readonly DroppedFragment[];
}

export interface SessionExport {
  readonly store: { readonly position_counter: number; readonly actors: readonly string[] };
}

interface ErrorInfo {
  readonly code: string;
  readonly message: string;
}

type Envelope<T> =
  | { status: 'ok'; payload: T }
  | { status: 'error'; error: ErrorInfo };

export class ApiError extends Error {
  constructor(
    readonly code: string,
    message: string,
    readonly httpStatus: number,
  ) {
    super(message);
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<{
  status: number;
  json(): Promise<unknown>;
}>;

export class ApiClient {
  constructor(
    private readonly base: string,
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async unwrap<T>(url: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(this.base + url, init);
    const body = (await response.json()) as Envelope<T>;
    if (body.status === 'error') {
      throw new ApiError(body.error.code, body.error.message, response.status);
    }
    return body.payload;
  }

  actors(): Promise<string[]> {
    return this.unwrap('/actors');
  }

  snapshot(actor: string, fn: FunctionId, c: number | null, delta: number | null): Promise<Snapshot> {
    const params = new URLSearchParams({ fn });
    if (c !== null) params.set('c', String(c));
    if (delta !== null) params.set('delta', String(delta));
    return this.unwrap(`/actors/${encodeURIComponent(actor)}/snapshot?${params}`);
  }

  step(input: string): Promise<StepDelta> {
    return this.unwrap('/stream/step', {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify({ input }),
    });
  }

  resolutions(): Promise<ResolutionRequest[]> {
    return this.unwrap('/resolutions');
  }

  resolve(requestId: string, actor: string): Promise<StepDelta> {
    return this.unwrap(`/resolutions/${encodeURIComponent(requestId)}`, {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify({ actor }),
    });
  }

  discard(requestId: string): Promise<StepDelta> {
    return this.unwrap(`/resolutions/${encodeURIComponent(requestId)}`, {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify({ discard: true }),
    });
  }

  session(): Promise<SessionExport> {
    return this.unwrap('/session');
  }
}
