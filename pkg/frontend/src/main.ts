// Bootstrap: load the candidate queue, open a session, and walk the reviewer
// through one candidate at a time.

import { ApiRequestError, ReviewApi } from './api.js';
import {
  answerItem,
  beginCandidate,
  canSubmit,
  currentCandidate,
  freshState,
  idempotencyKeyFor,
  progressLabel,
  submitVerdict,
  type ReviewViewState,
} from './state.js';
import { clearErrorPanels, renderCandidateScreen, renderErrorPanel, renderProgress } from './render.js';

export async function startApp(root: HTMLElement, api: ReviewApi): Promise<void> {
  const screen = document.createElement('div');
  screen.className = 'screen';
  const controls = document.createElement('div');
  controls.className = 'verdict-controls';
  root.replaceChildren(screen, controls);

  let state: ReviewViewState;
  let sessionId: string;
  let refreshGate: () => void = () => {};
  try {
    const listing = await api.listCandidates();
    state = freshState(listing.candidates.map((c) => c.id));
    const reviewer = new URLSearchParams(window.location.search).get('reviewer') ?? 'browser';
    const session = await api.createSession(reviewer);
    sessionId = session.sessionId;
  } catch (err) {
    renderApiError(screen, err);
    return;
  }

  await showCurrent();

  async function showCurrent(): Promise<void> {
    clearErrorPanels(screen);
    const cid = currentCandidate(state);
    renderProgress(controls, progressLabel(state));
    if (cid === null) {
      screen.replaceChildren();
      const done = document.createElement('p');
      done.className = 'all-done';
      done.textContent = 'Review complete. Every candidate has a verdict.';
      screen.appendChild(done);
      renderVerdictForm(null);
      return;
    }
    try {
      const detail = await api.candidateDetail(cid);
      const c = detail.candidate;
      const contextStart = Math.max(1, c.span[0] - 2);
      const source = await api
        .sourceSlice(c.path, contextStart, c.span[1] + 2)
        .catch(() => null);
      beginCandidate(state, detail.items.length);
      renderCandidateScreen(screen, detail, source, {
        onAnswer: (itemId, answer) => {
          answerItem(state, itemId, answer);
          void api.postAnswer(sessionId, cid, itemId, answer).catch((err) => {
            renderApiError(screen, err);
          });
          refreshGate();
        },
      });
      renderVerdictForm(cid);
    } catch (err) {
      renderApiError(screen, err);
    }
  }

  function renderVerdictForm(cid: string | null): void {
    controls.replaceChildren();
    renderProgress(controls, progressLabel(state));
    if (cid === null) return;

    const argBox = document.createElement('textarea');
    argBox.className = 'argument-input';
    argBox.placeholder = 'Arguments, one per line: why accept or reject?';
    argBox.addEventListener('input', () => {
      state.draft.argumentTexts = argBox.value.split('\n').filter((t) => t.trim().length > 0);
      sync();
    });

    const unjustified = document.createElement('label');
    unjustified.className = 'unjustified';
    const flag = document.createElement('input');
    flag.type = 'checkbox';
    flag.addEventListener('change', () => {
      state.draft.unjustified = flag.checked;
      sync();
    });
    unjustified.append(flag, document.createTextNode(' record without justification'));

    const buttons: HTMLButtonElement[] = [];
    for (const decision of ['accept', 'reject', 'skip'] as const) {
      const b = document.createElement('button');
      b.type = 'button';
      b.className = `decision decision-${decision}`;
      b.textContent = decision;
      b.addEventListener('click', () => {
        state.draft.decision = decision;
        buttons.forEach((x) => x.classList.remove('chosen'));
        b.classList.add('chosen');
        sync();
      });
      buttons.push(b);
    }

    const submit = document.createElement('button');
    submit.type = 'button';
    submit.className = 'submit-verdict';
    submit.textContent = 'submit verdict';
    submit.disabled = true;

    let key: string | null = null;
    submit.addEventListener('click', () => {
      if (!canSubmit(state)) return;
      // Reuse the key while this draft is in flight: rapid double clicks
      // land as one verdict on the server.
      key = key ?? idempotencyKeyFor(sessionId, cid);
      const draft = state.draft;
      void submitVerdict(state, {
        post: () =>
          api
            .postVerdict(
              sessionId,
              cid,
              draft.decision ?? 'skip',
              draft.argumentTexts,
              draft.unjustified,
              key as string,
            )
            .then(() => undefined),
        onRolledBack: (message) => {
          key = null;
          renderErrorPanel(screen, 'submit_failed', `${message} (rolled back; retry)`);
          sync();
        },
      }).then((advanced) => {
        if (advanced) void showCurrent();
      });
    });

    controls.append(argBox, unjustified, ...buttons, submit);
    refreshGate = sync;
    sync();

    function sync(): void {
      submit.disabled = !canSubmit(state);
    }
  }
}

function renderApiError(container: HTMLElement, err: unknown): void {
  if (err instanceof ApiRequestError) {
    renderErrorPanel(container, err.body.code, err.body.message);
  } else {
    renderErrorPanel(container, 'network_error', err instanceof Error ? err.message : String(err));
  }
}

declare global {
  interface Window {
    smellvetStart?: () => void;
  }
}

if (typeof document !== 'undefined' && document.getElementById('app')) {
  const root = document.getElementById('app') as HTMLElement;
  void startApp(root, new ReviewApi(''));
}
