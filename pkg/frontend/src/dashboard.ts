import { CRITERIA } from "./types.js";
import type { AggregatePayload, Criterion } from "./types.js";

export interface CriterionHistogram {
  criterion: Criterion;
  counts: number[];
  total: number;
}

export interface ItemAccuracy {
  itemId: string;
  judgments: number;
  /** Correct Turing judgments / judgments; null before any judgment. */
  accuracy: number | null;
}

export interface DashboardModel {
  surveyId: string;
  responseCount: number;
  empty: boolean;
  fpRatio: number;
  fnRatio: number;
  perfectSessions: number;
  histograms: CriterionHistogram[];
  itemAccuracies: ItemAccuracy[];
}

function isHistogram(value: unknown): value is number[] {
  return (
    Array.isArray(value) &&
    value.length === 5 &&
    value.every((n) => typeof n === "number" && Number.isInteger(n) && n >= 0)
  );
}

/** Structural validation; returns null on malformed payloads. */
export function parseAggregate(raw: unknown): AggregatePayload | null {
  if (typeof raw !== "object" || raw === null) {
    return null;
  }
  const data = raw as Record<string, unknown>;
  if (
    typeof data.survey_id !== "string" ||
    typeof data.response_count !== "number" ||
    typeof data.fp_ratio !== "number" ||
    typeof data.fn_ratio !== "number" ||
    typeof data.perfect_score_sessions !== "number" ||
    typeof data.per_item !== "object" ||
    data.per_item === null ||
    typeof data.rating_histograms !== "object" ||
    data.rating_histograms === null
  ) {
    return null;
  }
  const histograms = data.rating_histograms as Record<string, unknown>;
  for (const criterion of CRITERIA) {
    if (!isHistogram(histograms[criterion])) {
      return null;
    }
  }
  for (const entry of Object.values(data.per_item as Record<string, unknown>)) {
    if (typeof entry !== "object" || entry === null) {
      return null;
    }
    const counts = entry as Record<string, unknown>;
    if (
      typeof counts.fp_count !== "number" ||
      typeof counts.fn_count !== "number" ||
      typeof counts.judgments !== "number"
    ) {
      return null;
    }
  }
  return data as unknown as AggregatePayload;
}

export function histogramTotal(counts: number[]): number {
  return counts.reduce((sum, n) => sum + n, 0);
}

export function buildDashboard(aggregate: AggregatePayload): DashboardModel {
  const histograms: CriterionHistogram[] = CRITERIA.map((criterion) => {
    const counts = aggregate.rating_histograms[criterion];
    return { criterion, counts, total: histogramTotal(counts) };
  });
  const itemAccuracies: ItemAccuracy[] = Object.entries(aggregate.per_item)
    .sort(([a], [b]) => a.localeCompare(b))
    .map(([itemId, counts]) => ({
      itemId,
      judgments: counts.judgments,
      accuracy:
        counts.judgments > 0
          ? (counts.judgments - counts.fp_count - counts.fn_count) / counts.judgments
          : null,
    }));
  return {
    surveyId: aggregate.survey_id,
    responseCount: aggregate.response_count,
    empty: aggregate.response_count === 0,
    fpRatio: aggregate.fp_ratio,
    fnRatio: aggregate.fn_ratio,
    perfectSessions: aggregate.perfect_score_sessions,
    histograms,
    itemAccuracies,
  };
}
