/**
 * Controller: wires DOM events to model updates and re-renders, and owns
 * the save lifecycle. Every persisted change goes through PUT state, so
 * the server's copy is always reproducible from the click sequence. Saves
 * are debounced (default 2 s after the last change) with an explicit
 * "Save now" button; a failed save keeps the dirty flag and offers retry.
 */

import { ApiClient } from './api.js';
import { UiModel } from './model.js';
import { render, type ViewContext } from './view.js';
import type { DiagnosticJson, SlotName } from './types.js';

export interface ControllerOptions {
  /** Quiet period after the last change before an automatic save. */
  autosaveMs?: number;
}

export class AnnotationController {
  readonly model: UiModel;
  private diagnostics: DiagnosticJson[] = [];
  private error: string | null = null;
  private saving = false;
  private lastSyncedRaw: string;
  private autosaveHandle: ReturnType<typeof setTimeout> | null = null;
  private readonly autosaveMs: number;

  constructor(
    private readonly api: ApiClient,
    private readonly sessionId: string,
    initialState: { state: UiModel['state']; raw: string },
    private readonly container: HTMLElement,
    options: ControllerOptions = {}
  ) {
    this.model = new UiModel(initialState.state);
    this.lastSyncedRaw = initialState.raw;
    this.autosaveMs = options.autosaveMs ?? 2000;
    container.addEventListener('click', (event) => this.onClick(event));
    this.render();
  }

  static async boot(
    api: ApiClient,
    sessionId: string,
    container: HTMLElement,
    options: ControllerOptions = {}
  ): Promise<AnnotationController> {
    const initial = await api.getState(sessionId);
    return new AnnotationController(api, sessionId, initial, container, options);
  }

  render(): void {
    const context: ViewContext = {
      exportTsvUrl: this.api.exportUrl(this.sessionId, 'tsv'),
      exportJsonUrl: this.api.exportUrl(this.sessionId, 'json'),
      diagnostics: this.diagnostics,
      error: this.error,
      saving: this.saving,
    };
    render(this.model, context, this.container);
  }

  private onClick(event: Event): void {
    const target = (event.target as HTMLElement).closest('[data-token-index], [data-slot], [data-chip], [data-add-alt], [data-alt], [data-optional], [data-commit-new], [data-commit-to], [data-nav], [data-save], [data-retry], [data-dismiss-error]');
    if (!(target instanceof HTMLElement)) return;
    const data = target.dataset;

    if (data.tokenIndex !== undefined) {
      this.model.toggleToken(this.model.activeSlot, Number(data.tokenIndex));
    } else if (data.slot) {
      this.model.selectSlot(data.slot as SlotName);
    } else if (data.chip) {
      const [slot, index] = data.chip.split(':');
      this.model.toggleOptional(slot as SlotName, Number(index));
    } else if (data.addAlt) {
      this.model.addAlternative(data.addAlt as SlotName);
    } else if (data.alt) {
      const [slot, index] = data.alt.split(':');
      this.model.selectAlternative(slot as SlotName, Number(index));
    } else if (data.optional) {
      this.model.toggleOptionalOnLastClicked();
    } else if (data.commitNew !== undefined || data.commitTo !== undefined) {
      try {
        this.model.commitTriple(data.commitTo ?? null);
        this.scheduleSave();
      } catch (exc) {
        this.model.hint = (exc as Error).message;
      }
    } else if (data.nav) {
      this.model.moveCursor(data.nav === 'next' ? 1 : -1);
      this.scheduleSave();
    } else if (data.save !== undefined || data.retry !== undefined) {
      void this.saveNow();
    } else if (data.dismissError !== undefined) {
      this.error = null;
    }
    this.render();
  }

  private scheduleSave(): void {
    if (this.autosaveHandle !== null) clearTimeout(this.autosaveHandle);
    this.autosaveHandle = setTimeout(() => void this.saveNow(), this.autosaveMs);
  }

  /** Persist the current state; detect concurrent writers along the way. */
  async saveNow(): Promise<void> {
    if (this.autosaveHandle !== null) {
      clearTimeout(this.autosaveHandle);
      this.autosaveHandle = null;
    }
    this.saving = true;
    this.render();
    try {
      // another tab may have written since we last synced (last-write-wins)
      const current = await this.api.getState(this.sessionId);
      this.model.stale = current.raw !== this.lastSyncedRaw;

      await this.api.putState(this.sessionId, this.model.state);
      const synced = await this.api.getState(this.sessionId);
      this.lastSyncedRaw = synced.raw;
      this.model.state = synced.state;
      this.model.dirty = false;
      this.error = null;
      this.diagnostics = await this.api.lint(this.sessionId);
    } catch (exc) {
      this.error = `Saving failed: ${(exc as Error).message}`;
    } finally {
      this.saving = false;
      this.render();
    }
  }
}
