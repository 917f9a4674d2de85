/**
 * In-memory stand-in for the lexical REST API, implementing just the
 * documented routes with the documented semantics (count/startIndex
 * windows, 404 on no match, If-Match revision checks, background axie
 * generation). Every request is logged so tests can assert the UI never
 * talks to anything else.
 */

export interface FakeEntry {
  id: string;
  headword: string;
  revision: number;
  xml: string;
}

export interface LoggedRequest {
  method: string;
  path: string;
}

const NS = 'urn:motamot:lexicon';

export function entryXml(id: string, headword: string, gloss = 'g'): string {
  const senses = `<m:sense id="s1" level=""><m:gloss>${gloss}</m:gloss></m:sense>`;
  return (
    `<m:entry xmlns:m="${NS}" id="${id}" level="">` +
    `<m:head><m:headword>${headword}</m:headword><m:pos>adj.</m:pos></m:head>` +
    senses +
    `</m:entry>`
  );
}

export class FakeServer {
  readonly log: LoggedRequest[] = [];
  private entries = new Map<string, FakeEntry>();
  private axieCounter = 0;

  seed(rows: { id: string; headword: string }[]): void {
    for (const row of rows) {
      this.entries.set(row.id, {
        id: row.id,
        headword: row.headword,
        revision: 1,
        xml: entryXml(row.id, row.headword),
      });
    }
  }

  get(id: string): FakeEntry | undefined {
    return this.entries.get(id);
  }

  /** bind as the client's fetchFn */
  fetch = async (input: RequestInfo | URL, init?: RequestInit): Promise<Response> => {
    const url = new URL(String(input), 'http://fake');
    const method = init?.method ?? 'GET';
    this.log.push({ method, path: url.pathname });

    const put = /^\/api\/([^/]+)\/([^/]+)\/entry\/(.+)$/.exec(url.pathname);
    if (put && method === 'PUT') {
      return this.handlePut(put[3], init);
    }
    if (/\/schema$/.test(url.pathname)) {
      return Response.json({
        volume: 'fra',
        language: 'fra',
        criteria: ['cdm-headword', 'cdm-pos'],
        entry: {
          head: ['headword', 'pronunciation', 'pos'],
          sense: ['gloss', 'formula', 'refaxie'],
        },
      });
    }
    const lookup = /^\/api\/([^/]+)\/([^/]+)\/([^/]+)\/([^/]+)$/.exec(url.pathname);
    if (lookup && method === 'GET') {
      return this.handleLookup(lookup[3], decodeURIComponent(lookup[4]), url.searchParams);
    }
    return new Response('<error>not found</error>', { status: 404 });
  };

  private sorted(): FakeEntry[] {
    return [...this.entries.values()].sort((a, b) =>
      a.headword < b.headword ? -1 : a.headword > b.headword ? 1 : 0,
    );
  }

  private handleLookup(criteria: string, value: string, params: URLSearchParams): Response {
    let matches: FakeEntry[];
    if (criteria === 'handle') {
      const hit = this.entries.get(value);
      matches = hit ? [hit] : [];
    } else if (criteria === 'cdm-headword') {
      const prefix = params.get('strategy') === 'prefix';
      const wanted = prefix && value === '*' ? '' : value;
      matches = this.sorted().filter((e) =>
        prefix ? e.headword.startsWith(wanted) : e.headword === wanted,
      );
    } else {
      return new Response('<error>unknown criteria</error>', { status: 400 });
    }
    if (matches.length === 0) {
      return new Response('<error>no match</error>', { status: 404 });
    }
    const start = parseInt(params.get('startIndex') ?? '0', 10);
    const count = parseInt(params.get('count') ?? '10', 10);
    const window = matches.slice(start, start + count);
    const body =
      `<entry-list total="${matches.length}" start="${start}" count="${window.length}">` +
      window.map((e) => e.xml).join('') +
      `</entry-list>`;
    return new Response(body, {
      status: 200,
      headers: { 'Content-Type': 'application/xml' },
    });
  }

  private handlePut(id: string, init?: RequestInit): Response {
    const headers = new Headers(init?.headers);
    if (!headers.get('X-Auth-Token')) {
      return new Response('<error>authentication required</error>', { status: 401 });
    }
    const entry = this.entries.get(id);
    if (!entry) return new Response('<error>no entry</error>', { status: 404 });
    const expected = parseInt(headers.get('If-Match') ?? '-1', 10);
    if (expected !== entry.revision) {
      return new Response(
        `<error>revision mismatch on ${id}: expected ${expected}, at ${entry.revision}</error>`,
        { status: 409 },
      );
    }
    let body = String(init?.body ?? '');
    // resolve link requests exactly like the real server: replace each
    // m:link with a refaxie pointing at a freshly minted axie
    const axieIds: string[] = [];
    body = body.replace(/<m:link\b[^>]*\/>/g, () => {
      this.axieCounter += 1;
      const head = this.entries.get(id)!.headword;
      const axieId = `axi.[fra:${head},khm:sambō].${this.axieCounter}.1.e`;
      axieIds.push(axieId);
      return `<m:refaxie idrefaxie="${axieId}" />`;
    });
    entry.revision += 1;
    entry.xml = body;
    const axies = axieIds.map((a) => `<axie id="${a}" />`).join('');
    return new Response(
      `<updated id="${id}" revision="${entry.revision}">${axies}</updated>`,
      { status: 200, headers: { 'Content-Type': 'application/xml' } },
    );
  }
}
