/** DOM wiring: events -> API calls -> state updates -> re-render.
 *
 * No optimistic updates: the view changes only after the server answered.
 * A 409 means the session was finalized elsewhere; the client resyncs from
 * the transcript and locks.
 */

import { ApiClient, ConflictError } from "./api.js";
import { renderApp } from "./render.js";
import {
  applyDecisions,
  applyModel,
  applyProposals,
  applyUtterance,
  fromTranscript,
  initialView,
  withBanner,
  withSession,
  type SessionView,
} from "./state.js";

const PROPOSAL_LIMIT = 12;

export function boot(container: HTMLElement, api: ApiClient): void {
  let view: SessionView = initialView();

  function render(): void {
    const active = document.activeElement as HTMLInputElement | null;
    const pendingText = active?.id === "utterance-input" ? active.value : "";
    container.innerHTML = renderApp(view);
    const input = container.querySelector<HTMLInputElement>("#utterance-input");
    if (input && pendingText) {
      input.value = pendingText;
    }
    input?.focus();
  }

  function update(next: SessionView): void {
    view = next;
    render();
  }

  async function resync(): Promise<void> {
    if (!view.sessionId) {
      return;
    }
    const events = await api.transcript(view.sessionId);
    let next = fromTranscript(view.sessionId, events);
    if (next.status === "open") {
      next = applyProposals(next, await api.listProposals(view.sessionId, PROPOSAL_LIMIT));
    }
    update(withBanner(next, "The session changed elsewhere; the view was reloaded."));
  }

  async function guarded(action: () => Promise<void>): Promise<void> {
    try {
      await action();
    } catch (error) {
      if (error instanceof ConflictError) {
        await resync();
      } else {
        update(withBanner(view, error instanceof Error ? error.message : String(error)));
      }
    }
  }

  async function refreshProposals(): Promise<void> {
    if (view.sessionId && view.status === "open") {
      update(applyProposals(view, await api.listProposals(view.sessionId, PROPOSAL_LIMIT)));
    }
  }

  container.addEventListener("submit", (event) => {
    event.preventDefault();
    const input = container.querySelector<HTMLInputElement>("#utterance-input");
    const text = input?.value.trim();
    if (!text || !view.sessionId || view.status !== "open") {
      return;
    }
    input!.value = "";
    void guarded(async () => {
      const reactions = await api.submitUtterance(view.sessionId!, text);
      update(applyUtterance(view, text, reactions));
      await refreshProposals();
    });
  });

  container.addEventListener("click", (event) => {
    const target = (event.target as HTMLElement).closest<HTMLElement>("[data-action], #finalize");
    if (!target || !view.sessionId || view.status !== "open") {
      return;
    }
    if (target.id === "finalize") {
      void guarded(async () => {
        update(applyModel(view, await api.finalize(view.sessionId!)));
      });
      return;
    }
    const lemma = target.dataset["lemma"];
    const action = target.dataset["action"];
    if (!lemma || (action !== "accept" && action !== "reject")) {
      return;
    }
    void guarded(async () => {
      const verdict = action === "accept" ? "accepted" : "rejected";
      const decisions = await api.recordDecision(view.sessionId!, lemma, verdict);
      update(applyDecisions(view, decisions));
      await refreshProposals();
    });
  });

  void guarded(async () => {
    const resumed = window.location.hash.slice(1);
    if (resumed) {
      update(withSession(view, resumed));
      const events = await api.transcript(resumed);
      let next = fromTranscript(resumed, events);
      if (next.status === "open") {
        next = applyProposals(next, await api.listProposals(resumed, PROPOSAL_LIMIT));
      }
      update(next);
      return;
    }
    const sessionId = await api.createSession();
    window.location.hash = sessionId;
    update(withSession(view, sessionId));
    await refreshProposals();
  });
}

if (typeof document !== "undefined") {
  const container = document.getElementById("app");
  if (container) {
    boot(container, new ApiClient(""));
  }
}
