/**
 * Entry point: create or resume a session, then hand off to the controller.
 * With no session in the URL, shows the sentence-file upload form.
 */

import { ApiClient } from './api.js';
import { AnnotationController } from './controller.js';

function uploadForm(api: ApiClient, root: HTMLElement): void {
  root.innerHTML = `
    <div class="upload">
      <h1>Fact-synset annotation</h1>
      <p>Upload sentences to annotate: plain text (one sentence per line)
         or a JSON array of <code>{"id", "text"}</code> objects.</p>
      <input type="file" id="sentence-file">
      <button id="upload-button">Start session</button>
      <p class="upload-error" role="alert" hidden></p>
    </div>`;
  const input = root.querySelector<HTMLInputElement>('#sentence-file')!;
  const button = root.querySelector<HTMLButtonElement>('#upload-button')!;
  const errorBox = root.querySelector<HTMLElement>('.upload-error')!;
  button.addEventListener('click', async () => {
    const file = input.files?.[0];
    if (!file) {
      errorBox.textContent = 'Choose a file first.';
      errorBox.hidden = false;
      return;
    }
    try {
      const created = await api.createSession(file);
      const url = new URL(window.location.href);
      url.searchParams.set('session', created.session_id);
      window.location.assign(url.toString());
    } catch (exc) {
      errorBox.textContent = (exc as Error).message;
      errorBox.hidden = false;
    }
  });
}

export async function start(root: HTMLElement): Promise<void> {
  const api = new ApiClient();
  const sessionId = new URL(window.location.href).searchParams.get('session');
  if (!sessionId) {
    uploadForm(api, root);
    return;
  }
  try {
    await AnnotationController.boot(api, sessionId, root);
  } catch (exc) {
    root.innerHTML = `<div class="banner banner-error">Could not load session: ${
      (exc as Error).message
    }</div>`;
  }
}

const root = document.getElementById('app');
if (root) void start(root);
