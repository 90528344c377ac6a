import {
  ConflictError,
  NetworkError,
  ValidationError,
  type SurveyApi,
} from "./api.js";
import {
  emptyForm,
  isComplete,
  missingInputs,
  setRating,
  setTuring,
  toResponseBody,
  type FormState,
} from "./form.js";
import type { Criterion, TuringAnswer } from "./types.js";

export type Phase = "loading" | "item" | "done";

export interface CurrentItem {
  itemId: string;
  text: string;
}

/**
 * One judge's pass through the survey: fetch-next, collect the six inputs,
 * submit, advance. Submits only move forward after a server acknowledgment;
 * network failures keep the form so the judge can retry.
 */
export class SessionController {
  phase: Phase = "loading";
  item: CurrentItem | null = null;
  answered = 0;
  total = 0;
  form: FormState = emptyForm();
  /** Inline validation or connectivity message; null when all is well. */
  error: string | null = null;
  /** Non-blocking notice, e.g. an already-answered item being skipped. */
  notice: string | null = null;

  constructor(
    private readonly api: SurveyApi,
    readonly token: string,
  ) {}

  async start(): Promise<void> {
    await this.loadNext();
  }

  async loadNext(): Promise<void> {
    this.phase = "loading";
    try {
      const next = await this.api.nextItem(this.token);
      this.answered = next.answered;
      this.total = next.total;
      if (next.done || next.item_id === null || next.text === null) {
        this.phase = "done";
        this.item = null;
      } else {
        this.phase = "item";
        this.item = { itemId: next.item_id, text: next.text };
        this.form = emptyForm();
      }
      this.error = null;
    } catch (failure) {
      if (failure instanceof NetworkError) {
        this.error = "network problem while loading; try again";
        this.phase = this.item === null ? "loading" : "item";
      } else {
        throw failure;
      }
    }
  }

  answerTuring(answer: TuringAnswer): void {
    setTuring(this.form, answer);
    this.error = null;
  }

  rate(criterion: Criterion, value: number): void {
    setRating(this.form, criterion, value);
    this.error = null;
  }

  canSubmit(): boolean {
    return this.phase === "item" && isComplete(this.form);
  }

  /**
   * Submit the current form. Returns true when the flow advanced (success
   * or a duplicate being skipped), false when the judge must act again.
   */
  async submit(): Promise<boolean> {
    if (this.phase !== "item" || this.item === null) {
      return false;
    }
    if (!isComplete(this.form)) {
      this.error = `please answer: ${missingInputs(this.form).join(", ")}`;
      return false;
    }
    const body = toResponseBody(this.form, this.item.itemId);
    try {
      await this.api.submitResponse(this.token, body);
    } catch (failure) {
      if (failure instanceof NetworkError) {
        // keep the form so the judge can retry
        this.error = "network problem while submitting; your answers are kept, try again";
        return false;
      }
      if (failure instanceof ValidationError) {
        this.error = failure.message;
        return false;
      }
      if (failure instanceof ConflictError) {
        this.notice = "this summary was already answered; moving to the next one";
        await this.loadNext();
        return true;
      }
      throw failure;
    }
    this.notice = null;
    await this.loadNext();
    return true;
  }
}
