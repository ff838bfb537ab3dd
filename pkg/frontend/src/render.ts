// DOM rendering for the review screen. Pure functions from data to elements;
// no framework, no virtual DOM. Auto items show their finding badge plus
// facts, judgment items show assistive facts only, and every API failure
// renders an explicit error panel rather than disappearing silently.

import type { CandidateDetail, Evidence, SourceSlice, ValidationItem } from './types.js';
import { SMELL_LABELS } from './types.js';

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function renderErrorPanel(container: HTMLElement, code: string, message: string): void {
  const panel = el('div', 'error-panel');
  panel.setAttribute('role', 'alert');
  panel.appendChild(el('strong', 'error-code', code));
  panel.appendChild(el('span', 'error-message', ` ${message}`));
  container.prepend(panel);
}

export function clearErrorPanels(container: HTMLElement): void {
  container.querySelectorAll('.error-panel').forEach((n) => n.remove());
}

export function renderSource(slice: SourceSlice, highlight: [number, number]): HTMLElement {
  const pre = el('pre', 'source-view');
  slice.lines.forEach((line, i) => {
    const lineNo = slice.start + i;
    const row = el('div', 'source-line');
    if (lineNo >= highlight[0] && lineNo <= highlight[1]) {
      row.classList.add('highlight');
    }
    row.appendChild(el('span', 'lineno', String(lineNo).padStart(4, ' ')));
    row.appendChild(el('span', 'code', line));
    pre.appendChild(row);
  });
  return pre;
}

function findingBadge(evidence: Evidence): HTMLElement {
  const badge = el('span', `finding finding-${evidence.finding}`, evidence.finding);
  badge.dataset.finding = evidence.finding;
  return badge;
}

export function renderItemRow(
  item: ValidationItem,
  evidence: Evidence | null,
  onAnswer: (itemId: string, answer: 'yes' | 'no' | 'unsure' | 'skip') => void,
): HTMLElement {
  const row = el('li', `item-row mode-${item.mode}`);
  row.dataset.itemId = item.id;
  const head = el('div', 'item-head');
  head.appendChild(el('span', 'item-id', item.id));
  head.appendChild(el('span', 'item-text', item.text));
  if (item.derived) head.appendChild(el('span', 'item-derived', 'derived'));
  row.appendChild(head);

  if (evidence) {
    const evBox = el('div', 'item-evidence');
    // Judgment items are human-only: assistive facts, never a yes/no badge.
    if (item.mode !== 'judgment' && evidence.finding !== 'humanOnly') {
      evBox.appendChild(findingBadge(evidence));
    }
    if (evidence.facts.length > 0) {
      const facts = el('ul', 'facts');
      for (const [label, value] of evidence.facts) {
        facts.appendChild(el('li', 'fact', `${label}: ${value}`));
      }
      evBox.appendChild(facts);
    }
    row.appendChild(evBox);
  }

  const controls = el('div', 'item-controls');
  for (const answer of ['yes', 'no', 'unsure', 'skip'] as const) {
    const button = el('button', `answer answer-${answer}`, answer);
    button.type = 'button';
    button.addEventListener('click', () => {
      controls.querySelectorAll('.answer').forEach((b) => b.classList.remove('chosen'));
      button.classList.add('chosen');
      onAnswer(item.id, answer);
    });
    controls.appendChild(button);
  }
  row.appendChild(controls);
  return row;
}

export interface CandidateScreenHandlers {
  onAnswer: (itemId: string, answer: 'yes' | 'no' | 'unsure' | 'skip') => void;
}

export function renderCandidateScreen(
  container: HTMLElement,
  detail: CandidateDetail,
  source: SourceSlice | null,
  handlers: CandidateScreenHandlers,
): void {
  container.replaceChildren();
  const c = detail.candidate;
  const header = el('header', 'candidate-header');
  header.appendChild(el('h2', 'smell-name', SMELL_LABELS[c.smell]));
  header.appendChild(el('div', 'entity', c.entity));
  header.appendChild(el('div', 'location', `${c.path}:${c.span[0]}-${c.span[1]}`));
  header.appendChild(el('div', 'rationale', c.explain));
  container.appendChild(header);

  if (source) {
    container.appendChild(renderSource(source, c.span));
  }

  const list = el('ul', 'items');
  for (const entry of detail.items) {
    list.appendChild(renderItemRow(entry.item, entry.evidence, handlers.onAnswer));
  }
  container.appendChild(list);
}

export function renderProgress(container: HTMLElement, label: string): void {
  let bar = container.querySelector<HTMLElement>('.progress');
  if (!bar) {
    bar = el('div', 'progress');
    container.appendChild(bar);
  }
  bar.textContent = label;
}
