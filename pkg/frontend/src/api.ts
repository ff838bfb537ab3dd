// Thin typed client over the review server. Every non-2xx response is
// surfaced as an ApiRequestError carrying the server's error body.

import type {
  ApiErrorBody,
  Candidate,
  CandidateDetail,
  Decision,
  ItemAnswer,
  SessionDoc,
  SourceSlice,
} from './types.js';

export class ApiRequestError extends Error {
  readonly status: number;
  readonly body: ApiErrorBody;

  constructor(status: number, body: ApiErrorBody) {
    super(`${body.code}: ${body.message}`);
    this.status = status;
    this.body = body;
  }
}

async function request<T>(path: string, init?: RequestInit): Promise<T> {
  const resp = await fetch(path, {
    headers: { 'content-type': 'application/json' },
    ...init,
  });
  if (!resp.ok) {
    let body: ApiErrorBody;
    try {
      body = (await resp.json()) as ApiErrorBody;
    } catch {
      body = { httpStatus: resp.status, code: 'unknown_error', message: resp.statusText };
    }
    throw new ApiRequestError(resp.status, body);
  }
  return (await resp.json()) as T;
}

export class ReviewApi {
  constructor(private readonly base: string = '') {}

  listCandidates(): Promise<{ candidates: Candidate[] }> {
    return request(`${this.base}/api/candidates`);
  }

  candidateDetail(id: string): Promise<CandidateDetail> {
    return request(`${this.base}/api/candidates/${encodeURIComponent(id)}`);
  }

  sourceSlice(path: string, start: number, end: number): Promise<SourceSlice> {
    const q = new URLSearchParams({ path, start: String(start), end: String(end) });
    return request(`${this.base}/api/source?${q.toString()}`);
  }

  createSession(reviewerId: string): Promise<SessionDoc> {
    return request(`${this.base}/api/sessions`, {
      method: 'POST',
      body: JSON.stringify({ reviewerId }),
    });
  }

  postAnswer(
    sessionId: string,
    candidateId: string,
    itemId: string,
    answer: ItemAnswer,
  ): Promise<SessionDoc> {
    return request(`${this.base}/api/sessions/${encodeURIComponent(sessionId)}/answers`, {
      method: 'POST',
      body: JSON.stringify({ candidateId, itemId, answer }),
    });
  }

  postVerdict(
    sessionId: string,
    candidateId: string,
    decision: Decision,
    argumentTexts: string[],
    unjustified: boolean,
    idempotencyKey: string,
  ): Promise<SessionDoc> {
    return request(`${this.base}/api/sessions/${encodeURIComponent(sessionId)}/verdicts`, {
      method: 'POST',
      body: JSON.stringify({
        candidateId,
        decision,
        arguments: argumentTexts,
        unjustified,
        idempotencyKey,
      }),
    });
  }
}
