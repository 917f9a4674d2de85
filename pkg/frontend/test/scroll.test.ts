import { beforeEach, describe, expect, it } from 'vitest';

import { LexiconClient } from '../src/api.js';
import { InfiniteScroller } from '../src/scroll.js';
import { FakeServer } from './fakeServer.js';
import headwords from './sample-headwords.json';

describe('infinite scroll', () => {
  let server: FakeServer;
  let client: LexiconClient;

  beforeEach(() => {
    server = new FakeServer();
    server.seed(headwords);
    client = new LexiconClient({ baseUrl: '', fetchFn: server.fetch });
  });

  const volumeQuery = {
    dict: 'motamot',
    lang: 'fra',
    criteria: 'cdm-headword',
    value: '',
    strategy: 'prefix' as const,
  };

  it('fetches every sample headword exactly once', async () => {
    const scroller = new InfiniteScroller(client, volumeQuery, 7);
    await scroller.loadAll();
    const ids = scroller.loaded.map((e) => e.id);
    expect(ids.length).toBe(headwords.length);
    expect(new Set(ids).size).toBe(ids.length);
    expect(new Set(ids)).toEqual(new Set(headwords.map((h) => h.id)));
    // and the server was asked for each window once: ceil(50/7) pages
    const pages = server.log.filter((r) => r.path.includes('cdm-headword'));
    expect(pages.length).toBe(Math.ceil(headwords.length / 7));
  });

  it('keeps server order (alphabetical)', async () => {
    const scroller = new InfiniteScroller(client, volumeQuery, 20);
    await scroller.loadAll();
    const words = scroller.loaded.map((e) => e.headword);
    expect(words).toEqual([...words].sort());
  });

  it('shares one request among concurrent scroll events', async () => {
    const scroller = new InfiniteScroller(client, volumeQuery, 10);
    await Promise.all([scroller.loadMore(), scroller.loadMore(), scroller.loadMore()]);
    expect(scroller.loaded.length).toBe(10);
    expect(server.log.length).toBe(1);
  });

  it('prefix with no match yields an empty, exhausted list', async () => {
    const scroller = new InfiniteScroller(client, { ...volumeQuery, value: 'zzz' });
    await scroller.loadAll();
    expect(scroller.loaded).toEqual([]);
    expect(scroller.exhausted).toBe(true);
  });

  it('loadMore after exhaustion is a no-op', async () => {
    const scroller = new InfiniteScroller(client, volumeQuery, 50);
    await scroller.loadAll();
    const requests = server.log.length;
    await scroller.loadMore();
    expect(server.log.length).toBe(requests);
  });

  it('only talks to documented GET lookup routes', async () => {
    const scroller = new InfiniteScroller(client, volumeQuery, 9);
    await scroller.loadAll();
    for (const req of server.log) {
      expect(req.method).toBe('GET');
      expect(req.path).toMatch(/^\/api\/motamot\/fra\/cdm-headword\//);
    }
  });
});
