import type {
  AckPayload,
  NextItemPayload,
  ResponseBody,
  SessionPayload,
} from "./types.js";

export class NetworkError extends Error {}

export class ConflictError extends Error {}

export class ValidationError extends Error {}

export class UnauthorizedError extends Error {}

export class ApiError extends Error {
  constructor(
    message: string,
    readonly status: number,
  ) {
    super(message);
  }
}

/** The slice of the survey service the judge and admin pages consume. */
export interface SurveyApi {
  newSession(surveyId: string): Promise<SessionPayload>;
  nextItem(token: string): Promise<NextItemPayload>;
  submitResponse(token: string, body: ResponseBody): Promise<AckPayload>;
  aggregate(surveyId: string, adminToken: string): Promise<unknown>;
}

async function request(
  url: string,
  init?: RequestInit,
): Promise<unknown> {
  let response: Response;
  try {
    response = await fetch(url, init);
  } catch (cause) {
    throw new NetworkError(`network failure talking to ${url}`);
  }
  if (response.status === 409) {
    throw new ConflictError(await detail(response));
  }
  if (response.status === 422) {
    throw new ValidationError(await detail(response));
  }
  if (response.status === 401 || response.status === 403) {
    throw new UnauthorizedError(await detail(response));
  }
  if (!response.ok) {
    throw new ApiError(await detail(response), response.status);
  }
  return response.json();
}

async function detail(response: Response): Promise<string> {
  try {
    const body = (await response.json()) as { detail?: string };
    return body.detail ?? `request failed with status ${response.status}`;
  } catch {
    return `request failed with status ${response.status}`;
  }
}

export class HttpSurveyApi implements SurveyApi {
  constructor(private readonly baseUrl: string = "") {}

  newSession(surveyId: string): Promise<SessionPayload> {
    return request(
      `${this.baseUrl}/survey/${encodeURIComponent(surveyId)}/session`,
    ) as Promise<SessionPayload>;
  }

  nextItem(token: string): Promise<NextItemPayload> {
    return request(
      `${this.baseUrl}/session/${encodeURIComponent(token)}/next`,
    ) as Promise<NextItemPayload>;
  }

  submitResponse(token: string, body: ResponseBody): Promise<AckPayload> {
    return request(
      `${this.baseUrl}/session/${encodeURIComponent(token)}/response`,
      {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify(body),
      },
    ) as Promise<AckPayload>;
  }

  aggregate(surveyId: string, adminToken: string): Promise<unknown> {
    return request(
      `${this.baseUrl}/survey/${encodeURIComponent(surveyId)}/aggregate`,
      { headers: { "x-admin-token": adminToken } },
    );
  }
}
