/**
 * The single data structure driving the interface: the authoritative
 * annotation state as last synced with the server, plus the in-progress
 * triple (three slot drafts), the active slot selector, and sync flags.
 * Views render from this model and never keep annotation state of their
 * own; every persisted change flows through the serialized state.
 */

import type {
  SentenceJson,
  SlotJson,
  SlotName,
  StateJson,
  SynsetJson,
  TripleJson,
} from './types.js';
import { SLOT_NAMES } from './types.js';

export interface DraftToken {
  tokenIndex: number;
  optional: boolean;
}

/** One slot draft: alternatives of selected tokens, kept in sentence order. */
export type SlotDraft = DraftToken[][];

export class UiModel {
  state: StateJson;
  currentSentenceId: string;
  activeSlot: SlotName = 'subject';
  drafts: Record<SlotName, SlotDraft>;
  activeAlternative: Record<SlotName, number>;
  /** Last token clicked in the sentence row; target of the Optional button. */
  lastClicked: { slot: SlotName; tokenIndex: number } | null = null;
  dirty = false;
  stale = false;
  hint: string | null = null;

  constructor(state: StateJson) {
    this.state = state;
    const first = state.sentences[0];
    if (!first) throw new Error('state has no sentences');
    this.currentSentenceId = state.cursor ?? first.id;
    this.drafts = { subject: [[]], predicate: [[]], object: [[]] };
    this.activeAlternative = { subject: 0, predicate: 0, object: 0 };
  }

  currentSentence(): SentenceJson {
    const sentence = this.state.sentences.find((s) => s.id === this.currentSentenceId);
    if (!sentence) throw new Error(`unknown sentence ${this.currentSentenceId}`);
    return sentence;
  }

  currentSynsets(): SynsetJson[] {
    return this.state.synsets[this.currentSentenceId] ?? [];
  }

  selectSlot(slot: SlotName): void {
    this.activeSlot = slot;
    this.hint = null;
  }

  /** Select or deselect a token in the active alternative of a slot. */
  toggleToken(slot: SlotName, tokenIndex: number): void {
    const alternative = this.drafts[slot][this.activeAlternative[slot]];
    if (!alternative) return;
    const at = alternative.findIndex((t) => t.tokenIndex === tokenIndex);
    if (at >= 0) {
      alternative.splice(at, 1);
      if (this.lastClicked?.slot === slot && this.lastClicked.tokenIndex === tokenIndex) {
        this.lastClicked = null;
      }
    } else {
      alternative.push({ tokenIndex, optional: false });
      alternative.sort((a, b) => a.tokenIndex - b.tokenIndex);
      this.lastClicked = { slot, tokenIndex };
    }
    this.hint = null;
  }

  /**
   * Flip the optional flag of a selected token. Returns false (and leaves a
   * visual hint) when the token is not part of that slot's active draft.
   */
  toggleOptional(slot: SlotName, tokenIndex: number): boolean {
    const alternative = this.drafts[slot][this.activeAlternative[slot]];
    const entry = alternative?.find((t) => t.tokenIndex === tokenIndex);
    if (!entry) {
      this.hint = 'Select a token before marking it optional.';
      return false;
    }
    entry.optional = !entry.optional;
    this.hint = null;
    return true;
  }

  /** Toggle optional on the most recently selected token. */
  toggleOptionalOnLastClicked(): boolean {
    if (!this.lastClicked) {
      this.hint = 'Select a token before marking it optional.';
      return false;
    }
    return this.toggleOptional(this.lastClicked.slot, this.lastClicked.tokenIndex);
  }

  /** Start a new alternative (e.g. a coreferent variant) in a slot. */
  addAlternative(slot: SlotName): void {
    const draft = this.drafts[slot];
    const active = draft[this.activeAlternative[slot]];
    if (active && active.length === 0) return; // the empty one is ready to use
    draft.push([]);
    this.activeAlternative[slot] = draft.length - 1;
    this.selectSlot(slot);
  }

  selectAlternative(slot: SlotName, index: number): void {
    if (index >= 0 && index < this.drafts[slot].length) {
      this.activeAlternative[slot] = index;
      this.selectSlot(slot);
    }
  }

  /** Why the draft cannot be committed yet, or null when it can. */
  commitBlocker(): string | null {
    for (const slot of SLOT_NAMES) {
      const alternatives = this.drafts[slot].filter((alt) => alt.length > 0);
      if (alternatives.length === 0) return `The ${slot} slot is empty.`;
      for (const alternative of alternatives) {
        if (alternative.every((t) => t.optional)) {
          return `A ${slot} alternative has only optional tokens.`;
        }
      }
    }
    return null;
  }

  private draftToSlot(slot: SlotName): SlotJson {
    return this.drafts[slot]
      .filter((alt) => alt.length > 0)
      .map((alt) => alt.map((t) => ({ token_index: t.tokenIndex, optional: t.optional })));
  }

  private nextSynsetId(): string {
    const used = new Set(this.currentSynsets().map((g) => g.id));
    for (let n = 1; ; n += 1) {
      const candidate = `f${n}`;
      if (!used.has(candidate)) return candidate;
    }
  }

  /**
   * Append the drafted triple to an existing synset (by id) or to a new
   * one (target null). Clears the drafts and marks the state dirty.
   * Returns the synset id the triple landed in.
   */
  commitTriple(target: string | null): string {
    const blocker = this.commitBlocker();
    if (blocker) throw new Error(blocker);
    const triple: TripleJson = {
      subject: this.draftToSlot('subject'),
      predicate: this.draftToSlot('predicate'),
      object: this.draftToSlot('object'),
    };
    const synsets = this.state.synsets[this.currentSentenceId] ?? [];
    this.state.synsets[this.currentSentenceId] = synsets;
    let synsetId: string;
    if (target === null) {
      synsetId = this.nextSynsetId();
      synsets.push({ id: synsetId, triples: [triple] });
    } else {
      const synset = synsets.find((g) => g.id === target);
      if (!synset) throw new Error(`unknown synset ${target}`);
      synset.triples.push(triple);
      synsetId = target;
    }
    this.clearDrafts();
    this.dirty = true;
    return synsetId;
  }

  clearDrafts(): void {
    this.drafts = { subject: [[]], predicate: [[]], object: [[]] };
    this.activeAlternative = { subject: 0, predicate: 0, object: 0 };
    this.lastClicked = null;
    this.hint = null;
  }

  /** Move to another sentence; the cursor is part of the saved state. */
  setCursor(sentenceId: string): void {
    if (!this.state.sentences.some((s) => s.id === sentenceId)) return;
    this.currentSentenceId = sentenceId;
    this.state.cursor = sentenceId;
    this.clearDrafts();
    this.dirty = true;
  }

  moveCursor(offset: number): void {
    const ids = this.state.sentences.map((s) => s.id);
    const at = ids.indexOf(this.currentSentenceId);
    const next = ids[at + offset];
    if (next !== undefined) this.setCursor(next);
  }

  /** Slot the token is drafted into, for button coloring (subject wins). */
  slotOfToken(tokenIndex: number): SlotName | null {
    for (const slot of SLOT_NAMES) {
      for (const alternative of this.drafts[slot]) {
        if (alternative.some((t) => t.tokenIndex === tokenIndex)) return slot;
      }
    }
    return null;
  }
}
