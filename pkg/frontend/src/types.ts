// Wire types mirroring the review server's JSON schemas.

export type SmellKind =
  | 'data_class'
  | 'feature_envy'
  | 'god_class'
  | 'long_parameter_list'
  | 'middle_man'
  | 'primitive_obsession'
  | 'refused_bequest'
  | 'speculative_generality';

export type ItemMode = 'auto' | 'assistive' | 'judgment';
export type Finding = 'yes' | 'no' | 'indeterminate' | 'humanOnly';
export type Decision = 'accept' | 'reject' | 'skip';
export type ItemAnswer = 'yes' | 'no' | 'unsure' | 'skip';

export interface Trigger {
  metric: string;
  value: number;
  threshold: number;
}

export interface Candidate {
  id: string;
  smell: SmellKind;
  entity: string;
  entityKind: 'type' | 'method';
  path: string;
  span: [number, number];
  triggeredBy: Trigger[];
  explain: string;
}

export interface ValidationItem {
  id: string;
  smell: SmellKind;
  text: string;
  mode: ItemMode;
  polarity: 'yes' | 'no';
  derived: boolean;
}

export interface Evidence {
  item: string;
  finding: Finding;
  facts: [string, string | number][];
  computedFrom: string[];
}

export interface CandidateDetail {
  candidate: Candidate;
  items: { item: ValidationItem; evidence: Evidence | null }[];
}

export interface SourceSlice {
  path: string;
  start: number;
  end: number;
  lines: string[];
}

export interface SessionDoc {
  schemaVersion: number;
  sessionId: string;
  reviewerId: string;
  candidateSet: string[];
  candidateSmells: Record<string, SmellKind>;
  answers: Record<string, Record<string, ItemAnswer>>;
  verdicts: Record<string, VerdictDoc[]>;
  createdAt: string;
  updatedAt: string;
}

export interface VerdictDoc {
  decision: Decision;
  arguments: { text: string; codes: string[]; discarded: boolean }[];
  unjustified: boolean;
  recordedAt: string;
  idempotencyKey?: string;
}

export interface ApiErrorBody {
  httpStatus: number;
  code: string;
  message: string;
}

export const SMELL_LABELS: Record<SmellKind, string> = {
  data_class: 'Data Class',
  feature_envy: 'Feature Envy',
  god_class: 'God Class',
  long_parameter_list: 'Long Parameter List',
  middle_man: 'Middle Man',
  primitive_obsession: 'Primitive Obsession',
  refused_bequest: 'Refused Bequest',
  speculative_generality: 'Speculative Generality',
};
