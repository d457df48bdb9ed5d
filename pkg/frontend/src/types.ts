/** Payload shapes of the session API. The client renders these verbatim. */

export type Verdict = "KNOWN" | "SIMILAR" | "UNKNOWN";

export interface Reaction {
  lemma: string;
  verdict: Verdict;
  nearest: string | null;
  score: number;
}

export interface Proposal {
  lemma: string;
  weight: number;
}

export type DecisionVerdict = "accepted" | "rejected";

export interface MutualModel {
  mutual: string[];
  accepted: string[];
  customer_unique: string[];
  effective_cooperation: number;
  similarity_before: number;
  similarity_after: number;
}

export interface TranscriptEvent {
  seq: number;
  kind: "created" | "utterance" | "decision" | "finalized";
  kb_id?: string;
  text?: string;
  reactions?: Reaction[];
  lemma?: string;
  verdict?: DecisionVerdict;
  model?: MutualModel;
}

export interface ApiErrorBody {
  error: string;
  detail: string;
}
