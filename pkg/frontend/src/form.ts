import { CRITERIA } from "./types.js";
import type { Criterion, ResponseBody, TuringAnswer } from "./types.js";

/** Judge form: one Turing answer plus five 1-5 ratings, all required. */
export interface FormState {
  turing: TuringAnswer | null;
  ratings: Record<Criterion, number | null>;
}

export function emptyForm(): FormState {
  const ratings = {} as Record<Criterion, number | null>;
  for (const criterion of CRITERIA) {
    ratings[criterion] = null;
  }
  return { turing: null, ratings };
}

export function setTuring(form: FormState, answer: TuringAnswer): void {
  if (answer !== "human" && answer !== "machine") {
    throw new RangeError(`turing answer must be human or machine, got ${answer}`);
  }
  form.turing = answer;
}

export function setRating(form: FormState, criterion: Criterion, value: number): void {
  if (!Number.isInteger(value) || value < 1 || value > 5) {
    throw new RangeError(`rating must be an integer in 1..5, got ${value}`);
  }
  form.ratings[criterion] = value;
}

/** True only when the Turing answer and all five ratings are set. */
export function isComplete(form: FormState): boolean {
  if (form.turing === null) {
    return false;
  }
  return CRITERIA.every((criterion) => form.ratings[criterion] !== null);
}

export function missingInputs(form: FormState): string[] {
  const missing: string[] = [];
  if (form.turing === null) {
    missing.push("turing answer");
  }
  for (const criterion of CRITERIA) {
    if (form.ratings[criterion] === null) {
      missing.push(criterion);
    }
  }
  return missing;
}

export function toResponseBody(form: FormState, itemId: string): ResponseBody {
  if (!isComplete(form)) {
    throw new Error(`form incomplete: ${missingInputs(form).join(", ")}`);
  }
  const ratings = {} as Record<Criterion, number>;
  for (const criterion of CRITERIA) {
    ratings[criterion] = form.ratings[criterion] as number;
  }
  return {
    item_id: itemId,
    turing_answer: form.turing as TuringAnswer,
    ratings,
    submitted_at: new Date().toISOString(),
  };
}
