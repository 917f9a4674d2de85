/**
 * Thin fetch-based client for the lexical REST API.
 *
 * Endpoints (the UI never writes anywhere else):
 *   GET /api/{dict}/{lang}/{criteria}/{value}[/{key}]?strategy&count&startIndex
 *   GET /api/{dict}/{lang}/schema
 *   GET /api/{dict}/export?lang=...
 *   PUT /api/{dict}/{lang}/entry/{id}   (X-Auth-Token + If-Match)
 */

export interface ClientConfig {
  baseUrl: string;
  token?: string;
  /** injectable for testing; defaults to globalThis.fetch */
  fetchFn?: typeof fetch;
}

export interface EntryPage {
  total: number;
  start: number;
  /** raw <m:entry> elements serialized as strings, in server order */
  entries: EntryRef[];
}

export interface EntryRef {
  id: string;
  xml: string;
  headword: string;
}

export interface VolumeSchema {
  volume: string;
  language: string;
  criteria: string[];
  entry: { head: string[]; sense: string[] };
}

export interface UpdateResult {
  id: string;
  revision: number;
  axieIds: string[];
}

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    message: string,
  ) {
    super(message);
    this.name = 'ApiError';
  }
}

/** 409: someone saved the entry since we loaded it. */
export class RevisionConflictError extends ApiError {
  constructor(message: string) {
    super(409, message);
    this.name = 'RevisionConflictError';
  }
}

function parseXml(text: string): Document {
  const doc = new DOMParser().parseFromString(text, 'application/xml');
  if (doc.querySelector('parsererror')) {
    throw new ApiError(0, 'server returned malformed XML');
  }
  return doc;
}

function headwordOf(entry: Element): string {
  for (const el of entry.getElementsByTagName('*')) {
    const name = el.localName ?? el.tagName;
    if (name === 'headword') return el.textContent ?? '';
  }
  return '';
}

export class LexiconClient {
  private readonly fetchFn: typeof fetch;

  constructor(private readonly config: ClientConfig) {
    this.fetchFn = config.fetchFn ?? fetch.bind(globalThis);
  }

  private async get(path: string): Promise<Response> {
    return this.fetchFn(`${this.config.baseUrl}${path}`);
  }

  async lookup(
    dict: string,
    lang: string,
    criteria: string,
    value: string,
    opts: { strategy?: 'exact' | 'prefix'; count?: number; startIndex?: number } = {},
  ): Promise<EntryPage> {
    const params = new URLSearchParams();
    if (opts.strategy) params.set('strategy', opts.strategy);
    if (opts.count !== undefined) params.set('count', String(opts.count));
    if (opts.startIndex !== undefined) params.set('startIndex', String(opts.startIndex));
    const query = params.toString() ? `?${params}` : '';
    // an empty prefix is not expressible as a URL path segment;
    // the server reads "*" as "match everything" under the prefix strategy
    const segment = value === '' ? '*' : encodeURIComponent(value);
    const res = await this.get(`/api/${dict}/${lang}/${criteria}/${segment}${query}`);
    if (res.status === 404) {
      return { total: 0, start: opts.startIndex ?? 0, entries: [] };
    }
    if (!res.ok) throw new ApiError(res.status, await res.text());
    const doc = parseXml(await res.text());
    const list = doc.documentElement;
    const entries: EntryRef[] = [];
    for (const child of Array.from(list.children)) {
      entries.push({
        id: child.getAttribute('id') ?? '',
        xml: new XMLSerializer().serializeToString(child),
        headword: headwordOf(child),
      });
    }
    return {
      total: parseInt(list.getAttribute('total') ?? '0', 10),
      start: parseInt(list.getAttribute('start') ?? '0', 10),
      entries,
    };
  }

  async getEntry(dict: string, lang: string, id: string): Promise<EntryRef | null> {
    const page = await this.lookup(dict, lang, 'handle', id);
    return page.entries[0] ?? null;
  }

  async schema(dict: string, lang: string): Promise<VolumeSchema> {
    const res = await this.get(`/api/${dict}/${lang}/schema`);
    if (!res.ok) throw new ApiError(res.status, await res.text());
    return (await res.json()) as VolumeSchema;
  }

  async exportVolume(dict: string, lang: string): Promise<string> {
    const res = await this.get(`/api/${dict}/export?lang=${encodeURIComponent(lang)}`);
    if (!res.ok) throw new ApiError(res.status, await res.text());
    return res.text();
  }

  async putEntry(
    dict: string,
    lang: string,
    id: string,
    xml: string,
    revision: number,
  ): Promise<UpdateResult> {
    const res = await this.fetchFn(`${this.config.baseUrl}/api/${dict}/${lang}/entry/${id}`, {
      method: 'PUT',
      headers: {
        'Content-Type': 'application/xml',
        'If-Match': String(revision),
        ...(this.config.token ? { 'X-Auth-Token': this.config.token } : {}),
      },
      body: xml,
    });
    if (res.status === 409) {
      throw new RevisionConflictError(await res.text());
    }
    if (!res.ok) throw new ApiError(res.status, await res.text());
    const doc = parseXml(await res.text());
    const root = doc.documentElement;
    return {
      id: root.getAttribute('id') ?? id,
      revision: parseInt(root.getAttribute('revision') ?? '0', 10),
      axieIds: Array.from(root.children).map((a) => a.getAttribute('id') ?? ''),
    };
  }
}
