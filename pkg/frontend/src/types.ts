/**
 * Wire types for the annotation backend's JSON formats.
 *
 * These mirror the server's schemas exactly; the UI never invents fields of
 * its own inside them, so any state the UI writes loads back on the server.
 */

export type HighlightClass = 'VERB' | 'NAMED_ENTITY' | 'NONE';

export interface TokenJson {
  index: number;
  text: string;
  pos: string;
  ner: string;
  highlight: HighlightClass;
}

export interface SentenceJson {
  id: string;
  raw: string;
  language: string;
  tokens: TokenJson[];
}

export interface SlotTokenJson {
  token_index: number;
  optional: boolean;
}

/** A slot is a non-empty list of alternatives, each a token sequence. */
export type SlotJson = SlotTokenJson[][];

export interface TripleJson {
  subject: SlotJson;
  predicate: SlotJson;
  object: SlotJson;
}

export interface SynsetJson {
  id: string;
  triples: TripleJson[];
}

export interface StateJson {
  version: string;
  cursor: string | null;
  meta: Record<string, string>;
  sentences: SentenceJson[];
  synsets: Record<string, SynsetJson[]>;
}

export interface DiagnosticJson {
  severity: string;
  sentence_id: string;
  synset_id: string;
  code: string;
  message: string;
}

export type SlotName = 'subject' | 'predicate' | 'object';

export const SLOT_NAMES: SlotName[] = ['subject', 'predicate', 'object'];
