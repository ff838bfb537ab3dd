// End to end: serve the fixture corpus with the real Python backend, review
// one candidate through the UI flow (jsdom standing in for the browser), and
// confirm the verdict landed in the session file on disk.

import { spawn, spawnSync, type ChildProcess } from 'node:child_process';
import { mkdtempSync, readdirSync, readFileSync } from 'node:fs';
import { tmpdir } from 'node:os';
import { join, resolve } from 'node:path';
import { afterAll, beforeAll, describe, expect, it } from 'vitest';

import { ReviewApi } from '../src/api.js';
import { startApp } from '../src/main.js';

const REPO_ROOT = resolve(__dirname, '..', '..');
const PORT = 8861;
const BASE = `http://127.0.0.1:${PORT}`;

let server: ChildProcess | null = null;
let sessionDir = '';

async function waitForServer(): Promise<void> {
  for (let i = 0; i < 100; i++) {
    try {
      const resp = await fetch(`${BASE}/api/candidates`);
      if (resp.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((r) => setTimeout(r, 150));
  }
  throw new Error('backend did not come up');
}

beforeAll(async () => {
  const work = mkdtempSync(join(tmpdir(), 'smellvet-e2e-'));
  sessionDir = join(work, 'sessions');
  const candidates = join(work, 'candidates.json');
  const scan = spawnSync(
    'python3',
    ['-m', 'smellvet.cli', 'scan', join(REPO_ROOT, 'fixtures', 'corpus'), '--out', candidates],
    { cwd: REPO_ROOT, encoding: 'utf-8' },
  );
  expect(scan.status).toBe(0);
  server = spawn(
    'python3',
    [
      '-m', 'smellvet.cli', 'serve',
      '--candidates', candidates,
      '--session-dir', sessionDir,
      '--port', String(PORT),
    ],
    { cwd: REPO_ROOT, stdio: 'ignore' },
  );
  await waitForServer();
});

afterAll(() => {
  server?.kill();
});

describe('browser review round trip', () => {
  it('reviews one candidate and persists the verdict to the session file', async () => {
    const api = new ReviewApi(BASE);
    document.body.innerHTML = '<main id="app"></main>';
    const root = document.getElementById('app') as HTMLElement;

    await startApp(root, api);
    // The first candidate screen is up: items rendered, verdict gate closed.
    const rows = root.querySelectorAll('.item-row');
    expect(rows.length).toBeGreaterThanOrEqual(2);
    const submit = root.querySelector('.submit-verdict') as HTMLButtonElement;
    expect(submit.disabled).toBe(true);

    // Work through the items: answer the first, skip the rest (soft gate).
    (rows[0]!.querySelector('.answer-no') as HTMLButtonElement).click();
    for (let i = 1; i < rows.length; i++) {
      (rows[i]!.querySelector('.answer-skip') as HTMLButtonElement).click();
    }

    // Enter a decision plus one argument.
    const argBox = root.querySelector('.argument-input') as HTMLTextAreaElement;
    argBox.value = 'holds data only, no behaviour of its own';
    argBox.dispatchEvent(new Event('input', { bubbles: true }));
    expect(submit.disabled).toBe(true); // decision still missing
    (root.querySelector('.decision-accept') as HTMLButtonElement).click();
    expect(submit.disabled).toBe(false);

    submit.click();
    await new Promise((r) => setTimeout(r, 1500));

    const files = readdirSync(sessionDir).filter((f) => f.endsWith('.json'));
    expect(files.length).toBe(1);
    const session = JSON.parse(readFileSync(join(sessionDir, files[0]!), 'utf-8'));
    const verdicts = Object.values(session.verdicts) as Array<
      Array<{ decision: string; arguments: Array<{ text: string }> }>
    >;
    expect(verdicts.length).toBe(1);
    const verdict = verdicts[0]![verdicts[0]!.length - 1]!;
    expect(verdict.decision).toBe('accept');
    expect(verdict.arguments.map((a) => a.text)).toEqual([
      'holds data only, no behaviour of its own',
    ]);
    // The answered item reached the server too.
    const answers = Object.values(session.answers) as Array<Record<string, string>>;
    expect(answers.length).toBe(1);
    expect(Object.values(answers[0]!)).toContain('no');

    // Progress advanced to the next candidate in the queue.
    const progress = document.querySelector('.progress') as HTMLElement;
    expect(progress.textContent).toContain('1 / 8');
  });

  it('double submit with one draft produces a single verdict history entry', async () => {
    const api = new ReviewApi(BASE);
    const session = await api.createSession('double-clicker');
    const cid = session.candidateSet[0]!;
    const key = `${session.sessionId}:${cid}:manual`;
    await api.postVerdict(session.sessionId, cid, 'accept', ['once'], false, key);
    await api.postVerdict(session.sessionId, cid, 'accept', ['once'], false, key);
    const onDisk = JSON.parse(
      readFileSync(join(sessionDir, `${session.sessionId}.json`), 'utf-8'),
    );
    expect(onDisk.verdicts[cid].length).toBe(1);
  });
});
