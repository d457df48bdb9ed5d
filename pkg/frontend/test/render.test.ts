/** Projection property: everything on screen is a value the API returned.
 *
 * The mocked payloads are deliberately inconsistent (the cooperation value
 * does not equal accepted/proposed, similarity moves the "wrong" way), so
 * these tests fail if the client ever recomputes a domain value instead of
 * projecting the payload.
 */

import { describe, expect, it } from "vitest";

import { REACTION_LABELS, escapeHtml, fmt, renderApp, renderModel, renderReaction } from "../src/render.js";
import {
  applyDecisions,
  applyModel,
  applyProposals,
  applyUtterance,
  initialView,
  withSession,
} from "../src/state.js";
import type { MutualModel, Reaction } from "../src/types.js";

const INCONSISTENT_MODEL: MutualModel = {
  mutual: ["akita"],
  accepted: ["breed", "loyalty"],
  customer_unique: ["spaceship"],
  // deliberately NOT |accepted| / anything sensible:
  effective_cooperation: 0.987654,
  // deliberately decreasing:
  similarity_before: 0.913,
  similarity_after: 0.117,
};

describe("rendering is a pure projection", () => {
  it("reaction verdicts map to the three labels with payload scores", () => {
    const reactions: Reaction[] = [
      { lemma: "akita", verdict: "KNOWN", nearest: "akita", score: 1.0 },
      { lemma: "akitas", verdict: "SIMILAR", nearest: "akita", score: 0.8333333 },
      { lemma: "warp", verdict: "UNKNOWN", nearest: null, score: 0.123456 },
    ];
    for (const reaction of reactions) {
      const html = renderReaction(reaction);
      expect(html).toContain(REACTION_LABELS[reaction.verdict]);
      expect(html).toContain(`data-value="${reaction.score}"`);
      expect(html).toContain(`score ${fmt(reaction.score)}`);
      expect(html).toContain(`data-verdict="${reaction.verdict}"`);
    }
    const similar = renderReaction(reactions[1]!);
    expect(similar).toContain("(akita)");
  });

  it("the model panel shows the payload numbers verbatim, even inconsistent ones", () => {
    const html = renderModel(INCONSISTENT_MODEL);
    expect(html).toContain(`data-value="${INCONSISTENT_MODEL.effective_cooperation}"`);
    expect(html).toContain(fmt(0.987654));
    expect(html).toContain(`data-value="${INCONSISTENT_MODEL.similarity_before}"`);
    expect(html).toContain(`data-value="${INCONSISTENT_MODEL.similarity_after}"`);
    expect(html).toContain(fmt(0.913));
    expect(html).toContain(fmt(0.117));
    expect(html).toContain("spaceship");
  });

  it("proposals render in payload order with payload weights", () => {
    let view = withSession(initialView(), "s1");
    // deliberately NOT weight-sorted: the client must not re-rank
    view = applyProposals(view, [
      { lemma: "height", weight: 1 },
      { lemma: "breed", weight: 9 },
    ]);
    const html = renderApp(view);
    expect(html.indexOf("height")).toBeLessThan(html.indexOf("breed"));
    expect(html).toContain('data-value="1"');
    expect(html).toContain('data-value="9"');
    expect(html).toContain("w=1");
    expect(html).toContain("w=9");
  });

  it("full view wires chat, chips, decisions and model together", () => {
    let view = withSession(initialView(), "s1");
    view = applyUtterance(view, "Our <bold> Akita & friends", [
      { lemma: "akita", verdict: "KNOWN", nearest: "akita", score: 1 },
    ]);
    view = applyProposals(view, [
      { lemma: "breed", weight: 3 },
      { lemma: "height", weight: 2 },
    ]);
    view = applyDecisions(view, { height: "accepted" });
    const open = renderApp(view);
    expect(open).toContain(escapeHtml("Our <bold> Akita & friends"));
    expect(open).not.toContain("<bold>");
    expect(open).toContain('data-action="accept" data-lemma="breed"');
    expect(open).toContain("chip-accepted");
    expect(open).toContain('id="finalize"');

    const finalized = renderApp(applyModel(view, INCONSISTENT_MODEL));
    expect(finalized).toContain("disabled");
    expect(finalized).not.toContain('data-action="accept"');
    expect(finalized).toContain("Mutual problem understanding");
  });

  it("banners surface API errors without blocking the view", () => {
    let view = withSession(initialView(), "s1");
    view = { ...view, banner: "invalid request: never proposed" };
    const html = renderApp(view);
    expect(html).toContain('role="alert"');
    expect(html).toContain("never proposed");
  });
});
