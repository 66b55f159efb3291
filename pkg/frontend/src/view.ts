/**
 * DOM rendering. The view is a pure function of the model (plus the latest
 * lint diagnostics): every change re-renders the annotation area. Slot
 * colors follow the annotation convention: subject green, predicate
 * yellow, object blue; tokens of interest keep their tagger highlight
 * until they are placed into a slot.
 */

import type { DiagnosticJson, SlotName } from './types.js';
import { SLOT_NAMES } from './types.js';
import type { UiModel } from './model.js';
import { formatSlotShorthand } from './shorthand.js';

function el(
  tag: string,
  attrs: Record<string, string> = {},
  children: (Node | string)[] = []
): HTMLElement {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value);
  for (const child of children) node.append(child);
  return node;
}

export interface ViewContext {
  exportTsvUrl: string;
  exportJsonUrl: string;
  diagnostics: DiagnosticJson[];
  error: string | null;
  saving: boolean;
}

export function render(model: UiModel, context: ViewContext, container: HTMLElement): void {
  container.textContent = '';
  container.append(
    renderBanner(model, context),
    renderToolbar(model, context),
    renderNavigation(model),
    renderTokenRow(model),
    renderSlotPanel(model),
    renderCommitBar(model),
    renderSynsetPanel(model, context)
  );
}

function renderBanner(model: UiModel, context: ViewContext): HTMLElement {
  const banner = el('div', { class: 'banners' });
  if (context.error) {
    banner.append(
      el('div', { class: 'banner banner-error', role: 'alert' }, [
        context.error + ' ',
        el('button', { 'data-retry': '1' }, ['Retry']),
        el('button', { 'data-dismiss-error': '1' }, ['Dismiss']),
      ])
    );
  }
  if (model.stale) {
    banner.append(
      el('div', { class: 'banner banner-stale' }, [
        'Another window changed this session; the last save wins.',
      ])
    );
  }
  if (model.hint) {
    banner.append(el('div', { class: 'banner banner-hint' }, [model.hint]));
  }
  return banner;
}

function renderToolbar(model: UiModel, context: ViewContext): HTMLElement {
  const status = context.saving
    ? 'saving…'
    : model.dirty
      ? 'unsaved changes'
      : 'saved';
  return el('div', { class: 'toolbar' }, [
    el('span', { class: `status status-${model.dirty ? 'dirty' : 'clean'}` }, [status]),
    el('button', { 'data-save': '1' }, ['Save now']),
    el('a', { href: context.exportTsvUrl, download: '', 'data-export': 'tsv' }, [
      'Export TSV',
    ]),
    el('a', { href: context.exportJsonUrl, download: '', 'data-export': 'json' }, [
      'Export JSON',
    ]),
  ]);
}

function renderNavigation(model: UiModel): HTMLElement {
  const ids = model.state.sentences.map((s) => s.id);
  const at = ids.indexOf(model.currentSentenceId);
  return el('div', { class: 'nav' }, [
    el('button', { 'data-nav': 'prev', ...(at <= 0 ? { disabled: '' } : {}) }, ['◀']),
    el('span', { class: 'nav-position' }, [
      `${model.currentSentenceId} (${at + 1}/${ids.length})`,
    ]),
    el('button', {
      'data-nav': 'next',
      ...(at >= ids.length - 1 ? { disabled: '' } : {}),
    }, ['▶']),
  ]);
}

function renderTokenRow(model: UiModel): HTMLElement {
  const sentence = model.currentSentence();
  const row = el('div', { class: 'token-row' });
  for (const token of sentence.tokens) {
    const classes = ['token'];
    const slot = model.slotOfToken(token.index);
    if (slot) classes.push(`slot-${slot}`);
    else if (token.highlight === 'VERB') classes.push('hl-verb');
    else if (token.highlight === 'NAMED_ENTITY') classes.push('hl-ne');
    row.append(
      el(
        'button',
        { class: classes.join(' '), 'data-token-index': String(token.index) },
        [token.text]
      )
    );
  }
  return row;
}

function renderSlotPanel(model: UiModel): HTMLElement {
  const sentence = model.currentSentence();
  const panel = el('div', { class: 'slot-panel' });
  for (const slot of SLOT_NAMES) {
    const active = model.activeSlot === slot;
    const box = el('div', {
      class: `slot-box slot-box-${slot}${active ? ' active' : ''}`,
    });
    box.append(
      el(
        'button',
        { class: 'slot-select', 'data-slot': slot, 'aria-pressed': String(active) },
        [slot]
      )
    );
    model.drafts[slot].forEach((alternative, altIndex) => {
      const altActive = model.activeAlternative[slot] === altIndex;
      const altBox = el('span', {
        class: `alt${altActive ? ' alt-active' : ''}`,
        'data-alt': `${slot}:${altIndex}`,
      });
      if (altIndex > 0) altBox.append(el('span', { class: 'alt-sep' }, ['|']));
      for (const t of alternative) {
        const token = sentence.tokens[t.tokenIndex];
        const text = token ? token.text : `#${t.tokenIndex}`;
        altBox.append(
          el(
            'button',
            {
              class: `chip${t.optional ? ' chip-optional' : ''}`,
              'data-chip': `${slot}:${t.tokenIndex}`,
              title: 'Toggle optional',
            },
            [t.optional ? `[${text}]` : text]
          )
        );
      }
      box.append(altBox);
    });
    box.append(
      el('button', { class: 'add-alt', 'data-add-alt': slot, title: 'Add alternative' }, [
        '+ alt',
      ])
    );
    panel.append(box);
  }
  panel.append(
    el('button', { 'data-optional': '1', class: 'optional-button' }, ['Optional'])
  );
  return panel;
}

function renderCommitBar(model: UiModel): HTMLElement {
  const blocker = model.commitBlocker();
  return el('div', { class: 'commit-bar' }, [
    el(
      'button',
      { 'data-commit-new': '1', ...(blocker ? { disabled: '' } : {}) },
      ['Commit as new fact synset']
    ),
    el('span', { class: 'commit-blocker' }, blocker ? [blocker] : []),
  ]);
}

function renderSynsetPanel(model: UiModel, context: ViewContext): HTMLElement {
  const sentence = model.currentSentence();
  const byId = new Map<string, DiagnosticJson[]>();
  for (const d of context.diagnostics) {
    if (d.sentence_id !== sentence.id) continue;
    const bucket = byId.get(d.synset_id) ?? [];
    bucket.push(d);
    byId.set(d.synset_id, bucket);
  }
  const blocker = model.commitBlocker();
  const panel = el('div', { class: 'synset-panel' });
  for (const synset of model.currentSynsets()) {
    const head = el('div', { class: 'synset-head' }, [
      el('span', { class: 'synset-id' }, [synset.id]),
    ]);
    for (const diagnostic of byId.get(synset.id) ?? []) {
      head.append(
        el(
          'span',
          {
            class: `lint-badge lint-${diagnostic.severity}`,
            title: diagnostic.message,
            'data-lint': `${synset.id}:${diagnostic.code}`,
          },
          [diagnostic.code]
        )
      );
    }
    head.append(
      el(
        'button',
        { 'data-commit-to': synset.id, ...(blocker ? { disabled: '' } : {}) },
        ['Add variant here']
      )
    );
    const body = el('ul', { class: 'synset-triples' });
    for (const triple of synset.triples) {
      body.append(
        el('li', { class: 'triple' }, [
          `(${formatSlotShorthand(triple.subject, sentence.tokens)} ; ` +
            `${formatSlotShorthand(triple.predicate, sentence.tokens)} ; ` +
            `${formatSlotShorthand(triple.object, sentence.tokens)})`,
        ])
      );
    }
    panel.append(el('div', { class: 'synset', 'data-synset': synset.id }, [head, body]));
  }
  if (!model.currentSynsets().length) {
    panel.append(el('p', { class: 'synset-empty' }, ['No fact synsets yet.']));
  }
  return panel;
}
