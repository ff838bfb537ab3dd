// Client-side review state: the candidate queue, local item answers, the
// verdict draft, and the submit gate. Answers stay local until posted; the
// verdict control unlocks only once a decision is chosen and justified
// (at least one argument, or the explicit unjustified flag).

import type { Decision, ItemAnswer } from './types.js';

export interface VerdictDraft {
  decision: Decision | null;
  argumentTexts: string[];
  unjustified: boolean;
}

export interface ReviewViewState {
  queue: string[];
  position: number;
  itemAnswers: Record<string, ItemAnswer>;
  itemsSeen: Set<string>;
  itemsTotal: number;
  draft: VerdictDraft;
  verdictsDone: number;
  submitting: boolean;
}

export function freshState(queue: string[]): ReviewViewState {
  return {
    queue,
    position: 0,
    itemAnswers: {},
    itemsSeen: new Set(),
    itemsTotal: 0,
    draft: { decision: null, argumentTexts: [], unjustified: false },
    verdictsDone: 0,
    submitting: false,
  };
}

export function currentCandidate(state: ReviewViewState): string | null {
  return state.position < state.queue.length ? state.queue[state.position] ?? null : null;
}

export function beginCandidate(state: ReviewViewState, itemsTotal: number): void {
  state.itemAnswers = {};
  state.itemsSeen = new Set();
  state.itemsTotal = itemsTotal;
  state.draft = { decision: null, argumentTexts: [], unjustified: false };
  state.submitting = false;
}

export function answerItem(state: ReviewViewState, itemId: string, answer: ItemAnswer): void {
  state.itemAnswers[itemId] = answer;
  state.itemsSeen.add(itemId);
}

export function skipItem(state: ReviewViewState, itemId: string): void {
  state.itemsSeen.add(itemId);
}

/** Soft gate: every item answered or explicitly skipped unlocks the verdict. */
export function itemsComplete(state: ReviewViewState): boolean {
  return state.itemsSeen.size >= state.itemsTotal;
}

/** Submit is enabled only once every item was answered or skipped (soft
 * gate) and a decision plus justification (or the explicit flag) exists. */
export function canSubmit(state: ReviewViewState): boolean {
  const d = state.draft;
  if (state.submitting || d.decision === null) return false;
  if (!itemsComplete(state)) return false;
  if (d.decision === 'skip') return true;
  return d.argumentTexts.some((t) => t.trim().length > 0) || d.unjustified;
}

export function progressLabel(state: ReviewViewState): string {
  return `${state.verdictsDone} / ${state.queue.length} verdicts`;
}

export function advanceQueue(state: ReviewViewState): void {
  state.verdictsDone += 1;
  state.position += 1;
}

let keyCounter = 0;

/** One idempotency key per (session, candidate) attempt: a double click on
 * the same draft reuses the key, so the server records a single verdict. */
export function idempotencyKeyFor(sessionId: string, candidateId: string): string {
  keyCounter += 1;
  return `${sessionId}:${candidateId}:${keyCounter}`;
}

export interface SubmitPorts {
  post: () => Promise<void>;
  onRolledBack: (message: string) => void;
}

/** Optimistic submit: progress advances immediately and rolls back on any
 * non-2xx or network failure, re-enabling the form. */
export async function submitVerdict(state: ReviewViewState, ports: SubmitPorts): Promise<boolean> {
  if (!canSubmit(state)) return false;
  state.submitting = true;
  advanceQueue(state);
  try {
    await ports.post();
    state.submitting = false;
    return true;
  } catch (err) {
    state.verdictsDone -= 1;
    state.position -= 1;
    state.submitting = false;
    ports.onRolledBack(err instanceof Error ? err.message : String(err));
    return false;
  }
}
