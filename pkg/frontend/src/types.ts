/** Payload shapes of the survey HTTP JSON API, mirrored exactly. */

export const CRITERIA = [
  "fluency",
  "usefulness",
  "succinctness",
  "consistency",
  "realisticity",
] as const;

export type Criterion = (typeof CRITERIA)[number];

export type TuringAnswer = "human" | "machine";

export interface SessionPayload {
  token: string;
  item_order: string[];
  total: number;
}

export interface NextItemPayload {
  done: boolean;
  item_id: string | null;
  text: string | null;
  answered: number;
  total: number;
}

export interface AckPayload {
  ok: boolean;
  answered: number;
  total: number;
}

export interface ResponseBody {
  item_id: string;
  turing_answer: TuringAnswer;
  ratings: Record<Criterion, number>;
  submitted_at?: string;
}

export interface ItemAggregate {
  fp_count: number;
  fn_count: number;
  judgments: number;
}

export interface AggregatePayload {
  survey_id: string;
  response_count: number;
  fp_ratio: number;
  fn_ratio: number;
  perfect_score_sessions: number;
  per_item: Record<string, ItemAggregate>;
  rating_histograms: Record<Criterion, number[]>;
}
