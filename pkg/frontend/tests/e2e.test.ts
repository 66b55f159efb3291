/**
 * Scripted end-to-end drive of the annotation interface: token clicks,
 * optional toggles, alternatives, synset commits, save, export. The DOM is
 * real (jsdom); the backend is an in-memory double of the REST contract.
 */

import { beforeEach, describe, expect, it } from 'vitest';

import { ApiClient } from '../src/api.js';
import { AnnotationController } from '../src/controller.js';
import type { SlotTokenJson, SynsetJson } from '../src/types.js';
import { FakeServer, senateSentence } from './fakeServer.js';

function required(...indices: number[]): SlotTokenJson[] {
  return indices.map((i) => ({ token_index: i, optional: false }));
}

function slotTokens(entries: (number | [number])[]): SlotTokenJson[] {
  return entries.map((e) =>
    typeof e === 'number'
      ? { token_index: e, optional: false }
      : { token_index: e[0], optional: true }
  );
}

/**
 * Hand-written expected synsets for the reference sentence, token indices:
 * 0 Sen. 1 Mitchell 2 is 3 confident 4 he 5 has 6 sufficient 7 votes 8 to
 * 9 block 10 such 11 a 12 measure 13 with 14 procedural 15 actions 16 .
 */
const SUBJECT = [required(0, 1), required(4)];
const EXPECTED_SYNSETS: Record<string, SynsetJson[]> = {
  sent1: [
    {
      id: 'f1',
      triples: [
        {
          subject: SUBJECT,
          predicate: [required(2)],
          object: [
            slotTokens([3, [4], [5], [6], [7], [8], [9], [10], [11], [12], [13], [14], [15]]),
          ],
        },
      ],
    },
    {
      id: 'f2',
      triples: [
        {
          subject: SUBJECT,
          predicate: [required(2, 3, 4, 5)],
          object: [required(6, 7)],
        },
        {
          subject: SUBJECT,
          predicate: [required(2, 3, 4, 5)],
          object: [slotTokens([6, 7, 8, 9, [10], [11], 12])],
        },
      ],
    },
    {
      id: 'f3',
      triples: [
        {
          subject: SUBJECT,
          predicate: [required(2, 3, 4, 5, 6, 7, 8, 9)],
          object: [slotTokens([[10], [11], 12])],
        },
        {
          subject: SUBJECT,
          predicate: [slotTokens([2, 3, 4, 5, 6, 7, 8, 9, [10]])],
          object: [slotTokens([[11], 12])],
        },
        {
          subject: SUBJECT,
          predicate: [slotTokens([2, 3, 4, 5, 6, 7, 8, 9, [10], [11]])],
          object: [required(12)],
        },
      ],
    },
    {
      id: 'f4',
      triples: [
        {
          subject: SUBJECT,
          predicate: [slotTokens([2, 3, 4, 5, 6, 7, 8, 9, [10], [11], 12, 13])],
          object: [required(14, 15)],
        },
        {
          subject: SUBJECT,
          predicate: [slotTokens([2, 3, 4, 5, 6, 7, 8, 9, [10], [11], 12])],
          object: [required(13, 14, 15)],
        },
      ],
    },
  ],
};

type SlotSpec = (number | [number])[][];

describe('scripted annotation session', () => {
  let server: FakeServer;
  let container: HTMLElement;
  let controller: AnnotationController;

  function query<T extends Element>(selector: string): T {
    const node = container.querySelector<T>(selector);
    if (!node) throw new Error(`no element matches ${selector}`);
    return node;
  }

  function click(selector: string): void {
    query<HTMLElement>(selector).dispatchEvent(
      new MouseEvent('click', { bubbles: true })
    );
  }

  /** Drive one slot of the in-progress triple through real clicks. */
  function fillSlot(slot: string, alternatives: SlotSpec): void {
    click(`[data-slot="${slot}"]`);
    alternatives.forEach((alternative, altIndex) => {
      if (altIndex > 0) click(`[data-add-alt="${slot}"]`);
      for (const entry of alternative) {
        const index = typeof entry === 'number' ? entry : entry[0];
        click(`[data-token-index="${index}"]`);
        if (typeof entry !== 'number') click(`[data-chip="${slot}:${index}"]`);
      }
    });
  }

  function commitTriple(
    spec: { subject: SlotSpec; predicate: SlotSpec; object: SlotSpec },
    target: string | null
  ): void {
    fillSlot('subject', spec.subject);
    fillSlot('predicate', spec.predicate);
    fillSlot('object', spec.object);
    if (target === null) click('[data-commit-new]');
    else click(`[data-commit-to="${target}"]`);
  }

  beforeEach(async () => {
    server = new FakeServer([senateSentence()]);
    container = document.createElement('main');
    document.body.replaceChildren(container);
    const api = new ApiClient(server.fetch);
    controller = await AnnotationController.boot(api, server.sessionId, container, {
      autosaveMs: 60_000, // explicit saves only; no timer races in tests
    });
  });

  it('renders token buttons with highlight colors from the tagger', () => {
    const buttons = container.querySelectorAll('[data-token-index]');
    expect(buttons).toHaveLength(17);
    expect(query('[data-token-index="2"]').className).toContain('hl-verb');
    expect(query('[data-token-index="5"]').className).toContain('hl-verb');
    expect(query('[data-token-index="0"]').className).toContain('hl-ne');
    expect(query('[data-token-index="6"]').className).not.toContain('hl-');
  });

  it('colors assigned tokens by slot: subject green, predicate yellow, object blue', () => {
    click('[data-slot="subject"]');
    click('[data-token-index="0"]');
    click('[data-slot="predicate"]');
    click('[data-token-index="2"]');
    click('[data-slot="object"]');
    click('[data-token-index="3"]');
    expect(query('[data-token-index="0"]').className).toContain('slot-subject');
    expect(query('[data-token-index="2"]').className).toContain('slot-predicate');
    expect(query('[data-token-index="3"]').className).toContain('slot-object');
  });

  it('shows a bracket badge after toggling optional via the Optional button', () => {
    click('[data-slot="object"]');
    click('[data-token-index="11"]'); // "a" — the classic optional determiner
    click('[data-optional]');
    expect(query('[data-chip="object:11"]').textContent).toBe('[a]');
    expect(query('[data-chip="object:11"]').className).toContain('chip-optional');
  });

  it('optional on nothing selected shows a hint instead of acting', () => {
    click('[data-optional]');
    expect(container.querySelector('.banner-hint')?.textContent).toMatch(
      /Select a token/
    );
  });

  it('blocks committing while a slot is empty', () => {
    click('[data-slot="subject"]');
    click('[data-token-index="0"]');
    expect(
      query<HTMLButtonElement>('[data-commit-new]').hasAttribute('disabled')
    ).toBe(true);
    expect(container.textContent).toContain('predicate slot is empty');
  });

  it('constructs the four reference synsets; exported JSON equals the fixture', async () => {
    commitTriple(
      {
        subject: [[0, 1], [4]],
        predicate: [[2]],
        object: [[3, [4], [5], [6], [7], [8], [9], [10], [11], [12], [13], [14], [15]]],
      },
      null
    );
    commitTriple(
      { subject: [[0, 1], [4]], predicate: [[2, 3, 4, 5]], object: [[6, 7]] },
      null
    );
    commitTriple(
      {
        subject: [[0, 1], [4]],
        predicate: [[2, 3, 4, 5]],
        object: [[6, 7, 8, 9, [10], [11], 12]],
      },
      'f2'
    );
    commitTriple(
      {
        subject: [[0, 1], [4]],
        predicate: [[2, 3, 4, 5, 6, 7, 8, 9]],
        object: [[[10], [11], 12]],
      },
      null
    );
    commitTriple(
      {
        subject: [[0, 1], [4]],
        predicate: [[2, 3, 4, 5, 6, 7, 8, 9, [10]]],
        object: [[[11], 12]],
      },
      'f3'
    );
    commitTriple(
      {
        subject: [[0, 1], [4]],
        predicate: [[2, 3, 4, 5, 6, 7, 8, 9, [10], [11]]],
        object: [[12]],
      },
      'f3'
    );
    commitTriple(
      {
        subject: [[0, 1], [4]],
        predicate: [[2, 3, 4, 5, 6, 7, 8, 9, [10], [11], 12, 13]],
        object: [[14, 15]],
      },
      null
    );
    commitTriple(
      {
        subject: [[0, 1], [4]],
        predicate: [[2, 3, 4, 5, 6, 7, 8, 9, [10], [11], 12]],
        object: [[13, 14, 15]],
      },
      'f4'
    );

    // the synset panel lists every template in shorthand
    expect(container.textContent).toContain(
      '(Sen. Mitchell | he ; is confident he has ; sufficient votes)'
    );
    expect(container.textContent).toContain(
      '(Sen. Mitchell | he ; is confident he has ; sufficient votes to block [such] [a] measure)'
    );

    await controller.saveNow();
    expect(server.putBodies.length).toBeGreaterThan(0);

    const exported = await (
      await server.fetch(
        `/api/sessions/${server.sessionId}/export?format=json`,
        { method: 'GET' }
      )
    ).json();
    expect(exported.synsets).toEqual(EXPECTED_SYNSETS);
    expect(exported.version).toBe('1');
    expect(exported.cursor).toBe('sent1');
    expect(container.querySelector('.status-clean')).not.toBeNull();
  });

  it('keeps the dirty flag and offers retry when saving fails', async () => {
    commitTriple(
      { subject: [[0, 1]], predicate: [[2]], object: [[3]] },
      null
    );
    server.failNextPut = true;
    await controller.saveNow();
    expect(controller.model.dirty).toBe(true);
    expect(container.querySelector('.banner-error')?.textContent).toContain(
      'Saving failed'
    );
    expect(container.querySelector('[data-retry]')).not.toBeNull();

    await controller.saveNow(); // retry succeeds
    expect(controller.model.dirty).toBe(false);
    expect(container.querySelector('.banner-error')).toBeNull();
    expect(server.putBodies).toHaveLength(1);
  });

  it('warns when another writer changed the session (last write still wins)', async () => {
    server.state = {
      ...server.state,
      meta: { ...server.state.meta, intruder: 'other tab' },
    };
    commitTriple({ subject: [[0]], predicate: [[2]], object: [[3]] }, null);
    await controller.saveNow();
    expect(controller.model.stale).toBe(true);
    expect(container.querySelector('.banner-stale')).not.toBeNull();
    expect(server.state.meta['intruder']).toBeUndefined(); // overwritten
  });

  it('shows lint badges on the synsets they concern', async () => {
    commitTriple({ subject: [[0]], predicate: [[2]], object: [[3]] }, null);
    server.diagnostics = [
      {
        severity: 'warning',
        sentence_id: 'sent1',
        synset_id: 'f1',
        code: 'GOLD_OVERLAP',
        message: 'shares expanded triples with f2',
      },
    ];
    await controller.saveNow();
    const badge = query('[data-lint="f1:GOLD_OVERLAP"]');
    expect(badge.textContent).toBe('GOLD_OVERLAP');
    expect(badge.className).toContain('lint-warning');
  });

  it('autosaves after the debounce period without an explicit save', async () => {
    server = new FakeServer([senateSentence()]);
    container = document.createElement('main');
    document.body.replaceChildren(container);
    const api = new ApiClient(server.fetch);
    controller = await AnnotationController.boot(api, server.sessionId, container, {
      autosaveMs: 5,
    });
    commitTriple({ subject: [[0]], predicate: [[2]], object: [[3]] }, null);
    await new Promise((resolve) => setTimeout(resolve, 50));
    expect(server.putBodies.length).toBeGreaterThan(0);
    expect(server.state.synsets['sent1']).toHaveLength(1);
  });
});
