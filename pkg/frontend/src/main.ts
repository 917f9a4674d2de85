/**
 * Application entry point: wires the lookup panes, the advanced query
 * builder and the editor to the page in index.html.
 *
 * Configuration comes from query parameters:
 *   ?server=http://127.0.0.1:8000&dict=motamot&lang=fra&token=...
 */

import { LexiconClient } from './api.js';
import { EntryEditor } from './editor.js';
import { hashToQuery, runAdvancedQuery, VolumeLookup } from './lookup.js';
import { renderEditorForm, renderEntry, renderHeadwordList } from './render.js';

function required(id: string): HTMLElement {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing #${id} in index.html`);
  return el;
}

export async function start(): Promise<void> {
  const params = new URLSearchParams(window.location.search);
  const client = new LexiconClient({
    baseUrl: params.get('server') ?? '',
    token: params.get('token') ?? undefined,
  });
  const dict = params.get('dict') ?? 'motamot';
  const lang = params.get('lang') ?? 'fra';
  const skill = parseInt(params.get('skill') ?? '1', 10);

  const list = required('headword-list');
  const detail = required('entry-detail');
  const editorPane = required('entry-editor');
  const banner = required('banner');
  const searchBox = required('search') as HTMLInputElement;

  const lookup = new VolumeLookup(client, dict, lang);
  const schema = await client.schema(dict, lang);
  const editor = new EntryEditor(client, schema, skill);

  const showEditor = () =>
    renderEditorForm(editorPane, editor.state, editor.visibleSenseFields());

  const refresh = async () => {
    banner.textContent = '';
    const scroller = lookup.search(searchBox.value);
    try {
      await scroller.loadMore();
    } catch {
      banner.textContent = 'Server unreachable — check the connection and retry.';
      return;
    }
    renderHeadwordList(list, scroller.loaded, async (entry) => {
      lookup.select(entry);
      renderEntry(detail, entry);
      await editor.load(dict, lang, entry.id, 1);
      showEditor();
    });
  };

  searchBox.addEventListener('input', () => void refresh());
  list.addEventListener('scroll', () => {
    if (list.scrollTop + list.clientHeight >= list.scrollHeight - 16) {
      void lookup.scroller
        ?.loadMore()
        .then(() => renderHeadwordList(list, lookup.scroller!.loaded, () => undefined));
    }
  });

  const advanced = hashToQuery(window.location.hash);
  if (advanced) {
    const results = await runAdvancedQuery(client, advanced);
    renderHeadwordList(list, results, (entry) => renderEntry(detail, entry));
  } else {
    await refresh();
  }
}

if (typeof document !== 'undefined' && document.getElementById('headword-list')) {
  void start();
}
