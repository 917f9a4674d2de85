/**
 * DOM rendering helpers shared by main.ts and the tests.
 *
 * Khmer text renders with whatever Khmer-capable font the browser has
 * (e.g. Khmer OS, Noto Sans Khmer); no client-side glyph shaping is done.
 */

import { EntryRef } from './api.js';
import { EditorState } from './editor.js';

function localName(el: Element): string {
  return el.localName ?? el.tagName.replace(/^.*:/, '');
}

export function renderHeadwordList(
  container: HTMLElement,
  entries: readonly EntryRef[],
  onSelect: (entry: EntryRef) => void,
): void {
  container.textContent = '';
  for (const entry of entries) {
    const li = container.ownerDocument.createElement('li');
    li.textContent = entry.headword;
    li.dataset.entryId = entry.id;
    li.addEventListener('click', () => onSelect(entry));
    container.appendChild(li);
  }
}

export function renderEntry(container: HTMLElement, entry: EntryRef): void {
  const doc = new DOMParser().parseFromString(entry.xml, 'application/xml');
  container.textContent = '';
  const dl = container.ownerDocument.createElement('dl');
  const add = (label: string, value: string) => {
    const dt = container.ownerDocument.createElement('dt');
    dt.textContent = label;
    const dd = container.ownerDocument.createElement('dd');
    dd.textContent = value;
    dl.append(dt, dd);
  };
  const walk = (el: Element, prefix: string) => {
    for (const child of Array.from(el.children)) {
      const name = localName(child);
      if (child.children.length > 0 && name !== 'refaxie') {
        walk(child, name === 'sense' ? `${name} ${child.getAttribute('id') ?? ''}` : name);
      } else if (name === 'refaxie') {
        add(`${prefix} link`, child.getAttribute('idrefaxie') ?? '');
      } else if (child.textContent) {
        add(prefix ? `${prefix} ${name}` : name, child.textContent);
      }
    }
  };
  walk(doc.documentElement, '');
  container.appendChild(dl);
}

/** editor form built from the schema-derived editor state */
export function renderEditorForm(
  container: HTMLElement,
  state: EditorState,
  visibleSenseFields: string[],
): void {
  container.textContent = '';
  const doc = container.ownerDocument;
  for (const [field, value] of Object.entries(state.head)) {
    const input = doc.createElement('input');
    input.name = `head.${field}`;
    input.value = value;
    container.appendChild(input);
  }
  for (const sense of state.senses) {
    const fieldset = doc.createElement('fieldset');
    fieldset.dataset.senseId = sense.senseId;
    for (const field of visibleSenseFields) {
      if (field === 'refaxie') {
        for (const id of sense.refaxies) {
          const ref = doc.createElement('output');
          ref.className = 'refaxie';
          ref.textContent = id;
          fieldset.appendChild(ref);
        }
        continue;
      }
      if (field === 'gloss' || field === 'formula') {
        const input = doc.createElement('input');
        input.name = `sense.${sense.senseId}.${field}`;
        input.value = field === 'gloss' ? sense.gloss : sense.formula;
        fieldset.appendChild(input);
      }
    }
    const linkButton = doc.createElement('button');
    linkButton.type = 'button';
    linkButton.className = 'link-button';
    linkButton.textContent = 'link translation…';
    fieldset.appendChild(linkButton);
    container.appendChild(fieldset);
  }
  if (state.conflict !== null) {
    const prompt = doc.createElement('div');
    prompt.className = 'conflict-prompt';
    prompt.textContent =
      'This entry was changed by someone else while you edited it. ' +
      'Reload to pick up their revision, then re-apply your change.';
    const reload = doc.createElement('button');
    reload.type = 'button';
    reload.className = 'conflict-reload';
    reload.textContent = 'Reload entry';
    prompt.appendChild(reload);
    container.appendChild(prompt);
  }
}
