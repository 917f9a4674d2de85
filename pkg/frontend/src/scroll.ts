/**
 * Infinite-scroll pagination over one lookup query.
 *
 * Pages are requested with count/startIndex; over a fixed volume snapshot
 * the scroller yields every matching id exactly once, in server order,
 * no matter how often loadMore() is triggered by scroll events.
 */

import { EntryRef, LexiconClient } from './api.js';

export interface ScrollQuery {
  dict: string;
  lang: string;
  criteria: string;
  value: string;
  strategy?: 'exact' | 'prefix';
}

export class InfiniteScroller {
  private items: EntryRef[] = [];
  private seen = new Set<string>();
  private total: number | null = null;
  private inFlight: Promise<EntryRef[]> | null = null;

  constructor(
    private readonly client: LexiconClient,
    private readonly query: ScrollQuery,
    private readonly pageSize = 20,
  ) {}

  get loaded(): readonly EntryRef[] {
    return this.items;
  }

  get exhausted(): boolean {
    return this.total !== null && this.items.length >= this.total;
  }

  /**
   * Fetch the next page. Concurrent calls (a flurry of scroll events)
   * share one request instead of fetching the same window twice.
   */
  async loadMore(): Promise<EntryRef[]> {
    if (this.exhausted) return [];
    if (this.inFlight) return this.inFlight;
    this.inFlight = this.fetchPage().finally(() => {
      this.inFlight = null;
    });
    return this.inFlight;
  }

  async loadAll(): Promise<readonly EntryRef[]> {
    while (!this.exhausted) {
      const page = await this.loadMore();
      if (page.length === 0 && !this.exhausted) break; // server shrank mid-scroll
    }
    return this.items;
  }

  private async fetchPage(): Promise<EntryRef[]> {
    const page = await this.client.lookup(
      this.query.dict,
      this.query.lang,
      this.query.criteria,
      this.query.value,
      {
        strategy: this.query.strategy ?? 'prefix',
        count: this.pageSize,
        startIndex: this.items.length,
      },
    );
    this.total = page.total;
    const fresh: EntryRef[] = [];
    for (const entry of page.entries) {
      if (this.seen.has(entry.id)) continue;
      this.seen.add(entry.id);
      this.items.push(entry);
      fresh.push(entry);
    }
    return fresh;
  }
}
