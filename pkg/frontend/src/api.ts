/** Thin fetch wrapper around the session endpoints.
 *
 * The fetch function is injected so tests can substitute a fake network; the
 * client performs no domain computation, it only moves JSON.
 */

import type {
  ApiErrorBody,
  DecisionVerdict,
  MutualModel,
  Proposal,
  Reaction,
  TranscriptEvent,
} from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiRequestError extends Error {
  constructor(
    public readonly status: number,
    public readonly body: ApiErrorBody,
  ) {
    super(`${body.error}: ${body.detail}`);
  }
}

/** 409: the session was finalized; the view must lock and resync. */
export class ConflictError extends ApiRequestError {}

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchImpl: FetchLike = (url, init) => fetch(url, init),
  ) {}

  async createSession(kbId = "default"): Promise<string> {
    const body = await this.request("POST", "/sessions", { kb_id: kbId });
    return (body as { session_id: string }).session_id;
  }

  async submitUtterance(sessionId: string, text: string): Promise<Reaction[]> {
    const body = await this.request("POST", `/sessions/${sessionId}/utterance`, { text });
    return (body as { reactions: Reaction[] }).reactions;
  }

  async listProposals(sessionId: string, limit = 10): Promise<Proposal[]> {
    const body = await this.request("GET", `/sessions/${sessionId}/proposals?limit=${limit}`);
    return (body as { proposals: Proposal[] }).proposals;
  }

  async recordDecision(
    sessionId: string,
    lemma: string,
    verdict: DecisionVerdict,
  ): Promise<Record<string, DecisionVerdict>> {
    const body = await this.request("POST", `/sessions/${sessionId}/decision`, { lemma, verdict });
    return (body as { decisions: Record<string, DecisionVerdict> }).decisions;
  }

  async finalize(sessionId: string): Promise<MutualModel> {
    return (await this.request("POST", `/sessions/${sessionId}/finalize`)) as MutualModel;
  }

  async transcript(sessionId: string): Promise<TranscriptEvent[]> {
    const body = await this.request("GET", `/sessions/${sessionId}/transcript`);
    return (body as { events: TranscriptEvent[] }).events;
  }

  private async request(method: string, path: string, payload?: unknown): Promise<unknown> {
    const init: RequestInit = { method, headers: { "Content-Type": "application/json" } };
    if (payload !== undefined) {
      init.body = JSON.stringify(payload);
    }
    const response = await this.fetchImpl(this.baseUrl + path, init);
    const body = await response.json();
    if (!response.ok) {
      const error = body as ApiErrorBody;
      throw response.status === 409
        ? new ConflictError(response.status, error)
        : new ApiRequestError(response.status, error);
    }
    return body;
  }
}
