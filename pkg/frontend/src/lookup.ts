/**
 * Two-pane lookup views (headword list on the left, entry on the right)
 * and the advanced multi-criteria query builder.
 *
 * Advanced queries round-trip through the URL hash so a result list can
 * be bookmarked and reproduced exactly.
 */

import { EntryRef, LexiconClient } from './api.js';
import { InfiniteScroller } from './scroll.js';

export interface Criterion {
  criteria: string;
  value: string;
  strategy: 'exact' | 'prefix';
}

export interface AdvancedQuery {
  dict: string;
  lang: string;
  criteria: Criterion[];
}

export function queryToHash(q: AdvancedQuery): string {
  const params = new URLSearchParams();
  params.set('dict', q.dict);
  params.set('lang', q.lang);
  for (const c of q.criteria) {
    params.append('q', `${c.criteria}:${c.strategy}:${c.value}`);
  }
  return `#lookup?${params}`;
}

export function hashToQuery(hash: string): AdvancedQuery | null {
  const m = /^#lookup\?(.*)$/.exec(hash);
  if (!m) return null;
  const params = new URLSearchParams(m[1]);
  const dict = params.get('dict');
  const lang = params.get('lang');
  if (!dict || !lang) return null;
  const criteria: Criterion[] = [];
  for (const spec of params.getAll('q')) {
    const parts = spec.split(':');
    if (parts.length < 3) return null;
    const [criteriaName, strategy, ...rest] = parts;
    if (strategy !== 'exact' && strategy !== 'prefix') return null;
    criteria.push({ criteria: criteriaName, strategy, value: rest.join(':') });
  }
  return { dict, lang, criteria };
}

/**
 * Run a conjunction of criteria: each criterion is one indexed lookup and
 * the result is the intersection, in the order of the first criterion.
 */
export async function runAdvancedQuery(
  client: LexiconClient,
  query: AdvancedQuery,
): Promise<EntryRef[]> {
  if (query.criteria.length === 0) return [];
  const pages = await Promise.all(
    query.criteria.map((c) =>
      new InfiniteScroller(client, {
        dict: query.dict,
        lang: query.lang,
        criteria: c.criteria,
        value: c.value,
        strategy: c.strategy,
      }).loadAll(),
    ),
  );
  const [first, ...rest] = pages;
  const keep = rest.map((page) => new Set(page.map((e) => e.id)));
  return first.filter((e) => keep.every((ids) => ids.has(e.id)));
}

/** left pane state for the plain volume-lookup view */
export class VolumeLookup {
  scroller: InfiniteScroller | null = null;
  selected: EntryRef | null = null;

  constructor(
    private readonly client: LexiconClient,
    readonly dict: string,
    readonly lang: string,
    private readonly pageSize = 20,
  ) {}

  /** empty prefix = first pages of the whole volume */
  search(prefix: string, criteria = 'cdm-headword'): InfiniteScroller {
    this.scroller = new InfiniteScroller(
      this.client,
      { dict: this.dict, lang: this.lang, criteria, value: prefix, strategy: 'prefix' },
      this.pageSize,
    );
    this.selected = null;
    return this.scroller;
  }

  select(entry: EntryRef): void {
    this.selected = entry;
  }
}
