import { describe, expect, it } from "vitest";

import { ApiClient, ApiRequestError, ConflictError, type FetchLike } from "../src/api.js";

interface Call {
  url: string;
  method: string | undefined;
  body: unknown;
}

function fakeFetch(status: number, payload: unknown, calls: Call[]): FetchLike {
  return async (url, init) => {
    calls.push({
      url,
      method: init?.method,
      body: init?.body ? JSON.parse(init.body as string) : undefined,
    });
    return new Response(JSON.stringify(payload), {
      status,
      headers: { "Content-Type": "application/json" },
    });
  };
}

describe("ApiClient", () => {
  it("creates sessions via POST /sessions", async () => {
    const calls: Call[] = [];
    const api = new ApiClient("http://x", fakeFetch(201, { session_id: "s1" }, calls));
    expect(await api.createSession("default")).toBe("s1");
    expect(calls).toEqual([
      { url: "http://x/sessions", method: "POST", body: { kb_id: "default" } },
    ]);
  });

  it("submits utterances and returns the reactions verbatim", async () => {
    const calls: Call[] = [];
    const reactions = [{ lemma: "akita", verdict: "KNOWN", nearest: "akita", score: 1.0 }];
    const api = new ApiClient("", fakeFetch(200, { reactions }, calls));
    expect(await api.submitUtterance("s1", "Akita dogs.")).toEqual(reactions);
    expect(calls[0]).toEqual({
      url: "/sessions/s1/utterance",
      method: "POST",
      body: { text: "Akita dogs." },
    });
  });

  it("fetches proposals with the limit in the query string", async () => {
    const calls: Call[] = [];
    const api = new ApiClient("", fakeFetch(200, { proposals: [] }, calls));
    await api.listProposals("s1", 7);
    expect(calls[0]?.url).toBe("/sessions/s1/proposals?limit=7");
    expect(calls[0]?.method).toBe("GET");
  });

  it("records decisions and returns the decision map", async () => {
    const calls: Call[] = [];
    const api = new ApiClient("", fakeFetch(200, { decisions: { breed: "accepted" } }, calls));
    expect(await api.recordDecision("s1", "breed", "accepted")).toEqual({ breed: "accepted" });
    expect(calls[0]?.body).toEqual({ lemma: "breed", verdict: "accepted" });
  });

  it("maps 409 to ConflictError", async () => {
    const api = new ApiClient(
      "",
      fakeFetch(409, { error: "session is finalized", detail: "s1" }, []),
    );
    await expect(api.submitUtterance("s1", "late")).rejects.toBeInstanceOf(ConflictError);
  });

  it("maps other failures to ApiRequestError with the server detail", async () => {
    const api = new ApiClient(
      "",
      fakeFetch(400, { error: "invalid request", detail: "never proposed" }, []),
    );
    const failure = await api.recordDecision("s1", "x", "accepted").catch((e) => e);
    expect(failure).toBeInstanceOf(ApiRequestError);
    expect(failure).not.toBeInstanceOf(ConflictError);
    expect((failure as ApiRequestError).body.detail).toBe("never proposed");
    expect((failure as ApiRequestError).status).toBe(400);
  });
});
