import type { Criterion } from "./types.js";

export const TURING_QUESTION =
  "Was this summary written by a human or a machine?";

export const RATING_LABELS: ReadonlyArray<string> = [
  "1: Bad",
  "2: Below Average",
  "3: Average",
  "4: Good",
  "5: Great",
];

export const CRITERION_QUESTIONS: Record<Criterion, string> = {
  fluency: "Fluency: Does the text have a natural flow and rhythm?",
  usefulness:
    "Usefulness: Does it have enough information to make a user decide " +
    "whether they want to spend time watching the video?",
  succinctness:
    "Succinctness: Does the text look concise or does it have redundancy?",
  consistency:
    "Consistency: Are there any non sequiturs - ambiguous, confusing or " +
    "contradicting statements in the text?",
  realisticity:
    "Realisticity: Is there anything that seems far-fetched and bizarre " +
    'in words combinations and doesn\'t look "normal"?',
};
