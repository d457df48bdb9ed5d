/** Pure HTML rendering: view state in, markup string out.
 *
 * Numbers and verdicts appear exactly as the API returned them; raw values
 * ride along in data-value attributes so the projection is literal.
 */

import { chipGroups, type SessionView } from "./state.js";
import type { MutualModel, Proposal, Reaction } from "./types.js";

export const REACTION_LABELS = {
  KNOWN: "I know what you are talking about",
  SIMILAR: "I know something similar to what you are talking about",
  UNKNOWN: "I don't know what you are talking about",
} as const;

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&#39;");
}

export function fmt(value: number): string {
  return value.toFixed(3);
}

export function renderApp(view: SessionView): string {
  if (view.status === "idle") {
    return `<p class="muted">Starting a session…</p>`;
  }
  return `
    ${view.banner ? renderBanner(view.banner) : ""}
    <section class="chat" aria-label="dialogue">
      ${view.chat.map(renderChatEntry).join("")}
    </section>
    ${renderComposer(view)}
    ${renderConcepts(view)}
    ${view.model ? renderModel(view.model) : ""}
  `;
}

function renderBanner(message: string): string {
  return `<div class="banner" role="alert">${escapeHtml(message)}</div>`;
}

function renderChatEntry(entry: { text: string; reactions: Reaction[] }): string {
  return `
    <div class="utterance">
      <p class="customer-text">${escapeHtml(entry.text)}</p>
      <ul class="reactions">
        ${entry.reactions.map(renderReaction).join("")}
      </ul>
    </div>
  `;
}

export function renderReaction(reaction: Reaction): string {
  const label = REACTION_LABELS[reaction.verdict];
  const nearest =
    reaction.verdict === "SIMILAR" && reaction.nearest
      ? ` <em class="nearest">(${escapeHtml(reaction.nearest)})</em>`
      : "";
  return `
    <li class="reaction reaction-${reaction.verdict.toLowerCase()}"
        data-lemma="${escapeHtml(reaction.lemma)}"
        data-verdict="${reaction.verdict}"
        data-value="${reaction.score}">
      <span class="chip">${escapeHtml(reaction.lemma)}</span>
      ${label}${nearest}
      <span class="score">score ${fmt(reaction.score)}</span>
    </li>
  `;
}

function renderComposer(view: SessionView): string {
  const disabled = view.status === "finalized" ? "disabled" : "";
  return `
    <form id="composer" class="composer">
      <label for="utterance-input" class="visually-hidden">Describe your problem</label>
      <input id="utterance-input" name="utterance" type="text" autocomplete="off"
             placeholder="Describe your problem…" ${disabled}>
      <button type="submit" ${disabled}>Send</button>
      <button type="button" id="finalize" ${disabled}>Agree on the model</button>
    </form>
  `;
}

function renderConcepts(view: SessionView): string {
  const groups = chipGroups(view);
  const finalized = view.status === "finalized";
  return `
    <section class="concepts" aria-label="concepts">
      ${renderChipList("Shared concepts", groups.known.map(staticChip))}
      ${renderChipList("Sounds familiar", groups.similar.map(similarChip))}
      ${renderChipList("New to the engineer", groups.unknown.map(staticChip))}
      ${renderChipList("Proposed by the engineer", groups.pending.map((p) => proposalChip(p, finalized)))}
      ${renderChipList("Accepted", groups.accepted.map((l) => decidedChip(l, "accepted", finalized)))}
      ${renderChipList("Rejected", groups.rejected.map((l) => decidedChip(l, "rejected", finalized)))}
    </section>
  `;
}

function renderChipList(title: string, chips: string[]): string {
  if (chips.length === 0) {
    return "";
  }
  return `
    <div class="chip-group">
      <h3>${escapeHtml(title)}</h3>
      <ul class="chips">${chips.join("")}</ul>
    </div>
  `;
}

function staticChip(lemma: string): string {
  return `<li class="chip" data-lemma="${escapeHtml(lemma)}">${escapeHtml(lemma)}</li>`;
}

function similarChip(reaction: Reaction): string {
  return `<li class="chip chip-similar" data-lemma="${escapeHtml(reaction.lemma)}">
    ${escapeHtml(reaction.lemma)} → ${escapeHtml(reaction.nearest ?? "")}
  </li>`;
}

export function proposalChip(proposal: Proposal, finalized: boolean): string {
  const controls = finalized
    ? ""
    : `
      <button type="button" data-action="accept" data-lemma="${escapeHtml(proposal.lemma)}">accept</button>
      <button type="button" data-action="reject" data-lemma="${escapeHtml(proposal.lemma)}">reject</button>
    `;
  return `
    <li class="chip chip-pending" data-lemma="${escapeHtml(proposal.lemma)}" data-value="${proposal.weight}">
      ${escapeHtml(proposal.lemma)} <span class="weight">w=${proposal.weight}</span>
      ${controls}
    </li>
  `;
}

function decidedChip(lemma: string, verdict: "accepted" | "rejected", finalized: boolean): string {
  const toggle = finalized
    ? ""
    : `<button type="button" data-action="${verdict === "accepted" ? "reject" : "accept"}"
               data-lemma="${escapeHtml(lemma)}">switch</button>`;
  return `<li class="chip chip-${verdict}" data-lemma="${escapeHtml(lemma)}">${escapeHtml(lemma)} ${toggle}</li>`;
}

export function renderModel(model: MutualModel): string {
  return `
    <section class="model" aria-label="mutual model">
      <h2>Mutual problem understanding</h2>
      <dl>
        <dt>Mutual concepts</dt><dd>${model.mutual.map(escapeHtml).join(", ") || "–"}</dd>
        <dt>Accepted proposals</dt><dd>${model.accepted.map(escapeHtml).join(", ") || "–"}</dd>
        <dt>Yours alone</dt><dd>${model.customer_unique.map(escapeHtml).join(", ") || "–"}</dd>
      </dl>
      <p class="gauge">
        similarity
        <span class="before" data-value="${model.similarity_before}">${fmt(model.similarity_before)}</span>
        →
        <span class="after" data-value="${model.similarity_after}">${fmt(model.similarity_after)}</span>
      </p>
      <p class="cooperation" data-value="${model.effective_cooperation}">
        effective cooperation ${fmt(model.effective_cooperation)}
      </p>
    </section>
  `;
}
