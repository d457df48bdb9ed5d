/** Session view state: a pure projection of API responses.
 *
 * Every field is either copied verbatim from a payload or is a regrouping of
 * payload values; no verdicts, similarities or cooperation values are ever
 * computed here.  `fromTranscript` rebuilds the identical view from the
 * server's event log, which is what a page reload does.
 */

import type {
  DecisionVerdict,
  MutualModel,
  Proposal,
  Reaction,
  TranscriptEvent,
} from "./types.js";

export interface ChatEntry {
  text: string;
  reactions: Reaction[];
}

export interface SessionView {
  sessionId: string | null;
  status: "idle" | "open" | "finalized";
  chat: ChatEntry[];
  proposals: Proposal[];
  decisions: Record<string, DecisionVerdict>;
  model: MutualModel | null;
  banner: string | null;
}

export function initialView(): SessionView {
  return {
    sessionId: null,
    status: "idle",
    chat: [],
    proposals: [],
    decisions: {},
    model: null,
    banner: null,
  };
}

export function withSession(view: SessionView, sessionId: string): SessionView {
  return { ...initialView(), sessionId, status: "open" };
}

export function applyUtterance(view: SessionView, text: string, reactions: Reaction[]): SessionView {
  return { ...view, banner: null, chat: [...view.chat, { text, reactions }] };
}

export function applyProposals(view: SessionView, proposals: Proposal[]): SessionView {
  return { ...view, proposals };
}

export function applyDecisions(
  view: SessionView,
  decisions: Record<string, DecisionVerdict>,
): SessionView {
  return { ...view, banner: null, decisions };
}

export function applyModel(view: SessionView, model: MutualModel): SessionView {
  return { ...view, status: "finalized", proposals: [], model, banner: null };
}

export function withBanner(view: SessionView, banner: string): SessionView {
  return { ...view, banner };
}

/** Rebuild the view from GET /transcript; proposals must be refetched. */
export function fromTranscript(sessionId: string, events: TranscriptEvent[]): SessionView {
  let view = withSession(initialView(), sessionId);
  for (const event of events) {
    if (event.kind === "utterance") {
      view = applyUtterance(view, event.text ?? "", event.reactions ?? []);
    } else if (event.kind === "decision" && event.lemma && event.verdict) {
      view = applyDecisions(view, { ...view.decisions, [event.lemma]: event.verdict });
    } else if (event.kind === "finalized" && event.model) {
      view = applyModel(view, event.model);
    }
  }
  return view;
}

export interface ChipGroups {
  known: string[];
  similar: Reaction[];
  unknown: string[];
  pending: Proposal[];
  accepted: string[];
  rejected: string[];
}

/** Regroup payload values for display; no new values are derived. */
export function chipGroups(view: SessionView): ChipGroups {
  const known: string[] = [];
  const similar: Reaction[] = [];
  const unknown: string[] = [];
  for (const entry of view.chat) {
    for (const reaction of entry.reactions) {
      if (reaction.verdict === "KNOWN") known.push(reaction.lemma);
      else if (reaction.verdict === "SIMILAR") similar.push(reaction);
      else unknown.push(reaction.lemma);
    }
  }
  const accepted = Object.keys(view.decisions).filter((l) => view.decisions[l] === "accepted");
  const rejected = Object.keys(view.decisions).filter((l) => view.decisions[l] === "rejected");
  const pending = view.proposals.filter((p) => !(p.lemma in view.decisions));
  return { known, similar, unknown, pending, accepted: accepted.sort(), rejected: rejected.sort() };
}
