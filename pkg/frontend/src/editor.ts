/**
 * Schema-driven entry editor.
 *
 * The form is generated from the JSON schema served by the API, not from
 * hard-coded field lists, so it works for any volume. The editor holds the
 * entry XML as its source of truth and writes field edits back into it;
 * saving issues a PUT with the loaded revision and surfaces a 409 as a
 * reload-and-merge prompt.
 */

import { LexiconClient, RevisionConflictError, UpdateResult, VolumeSchema } from './api.js';
import { isAxieId } from './ids.js';

/** head fields below this skill are hidden; formula needs an expert */
export const FORMULA_SKILL_THRESHOLD = 3;

export interface SenseForm {
  senseId: string;
  gloss: string;
  formula: string;
  refaxies: string[];
}

export interface EditorState {
  dict: string;
  lang: string;
  entryId: string;
  revision: number;
  head: Record<string, string>;
  senses: SenseForm[];
  /** set when a save hit a 409; cleared by reload() */
  conflict: string | null;
  lastAxieIds: string[];
}

function localName(el: Element): string {
  return el.localName ?? el.tagName.replace(/^.*:/, '');
}

function childText(parent: Element, name: string): string {
  for (const el of Array.from(parent.children)) {
    if (localName(el) === name) return el.textContent ?? '';
  }
  return '';
}

export class EntryEditor {
  private doc!: Document;
  state: EditorState;

  constructor(
    private readonly client: LexiconClient,
    private readonly schema: VolumeSchema,
    private readonly contributorSkill: number,
  ) {
    this.state = {
      dict: '',
      lang: '',
      entryId: '',
      revision: 0,
      head: {},
      senses: [],
      conflict: null,
      lastAxieIds: [],
    };
  }

  /** fields the current contributor may see, per the schema */
  visibleSenseFields(): string[] {
    return this.schema.entry.sense.filter(
      (f) => f !== 'formula' || this.contributorSkill >= FORMULA_SKILL_THRESHOLD,
    );
  }

  async load(dict: string, lang: string, entryId: string, revision: number): Promise<void> {
    const entry = await this.client.getEntry(dict, lang, entryId);
    if (!entry) throw new Error(`entry ${entryId} not found`);
    this.doc = new DOMParser().parseFromString(entry.xml, 'application/xml');
    this.state = {
      dict,
      lang,
      entryId,
      revision,
      head: this.readHead(),
      senses: this.readSenses(),
      conflict: null,
      lastAxieIds: [],
    };
  }

  private headElement(): Element | null {
    for (const el of Array.from(this.doc.documentElement.children)) {
      if (localName(el) === 'head') return el;
    }
    return null;
  }

  private senseElements(): Element[] {
    return Array.from(this.doc.documentElement.children).filter(
      (el) => localName(el) === 'sense',
    );
  }

  private readHead(): Record<string, string> {
    const head = this.headElement();
    const out: Record<string, string> = {};
    for (const field of this.schema.entry.head) {
      out[field] = head ? childText(head, field) : '';
    }
    return out;
  }

  private readSenses(): SenseForm[] {
    return this.senseElements().map((sense) => ({
      senseId: sense.getAttribute('id') ?? '',
      gloss: childText(sense, 'gloss'),
      formula: childText(sense, 'formula'),
      refaxies: Array.from(sense.children)
        .filter((el) => localName(el) === 'refaxie')
        .map((el) => el.getAttribute('idrefaxie') ?? ''),
    }));
  }

  setGloss(senseId: string, gloss: string): void {
    const sense = this.senseElements().find((s) => s.getAttribute('id') === senseId);
    if (!sense) throw new Error(`no sense ${senseId}`);
    let el = Array.from(sense.children).find((c) => localName(c) === 'gloss');
    if (!el) {
      el = this.doc.createElementNS(this.doc.documentElement.namespaceURI, 'm:gloss');
      sense.insertBefore(el, sense.firstChild);
    }
    el.textContent = gloss;
    this.state.senses = this.readSenses();
  }

  /**
   * Link one sense of this entry to a target entry (optionally a specific
   * target sense). The server generates the axie in the background; the
   * returned id lands in the sense's refaxie field after reload.
   */
  requestLink(senseId: string, targetEntry: string, targetSense?: string): void {
    const sense = this.senseElements().find((s) => s.getAttribute('id') === senseId);
    if (!sense) throw new Error(`no sense ${senseId}`);
    const link = this.doc.createElementNS(this.doc.documentElement.namespaceURI, 'm:link');
    link.setAttribute('target-entry', targetEntry);
    if (targetSense) link.setAttribute('target-sense', targetSense);
    sense.appendChild(link);
  }

  serialized(): string {
    return new XMLSerializer().serializeToString(this.doc.documentElement);
  }

  async save(): Promise<UpdateResult> {
    const { dict, lang, entryId, revision } = this.state;
    try {
      const result = await this.client.putEntry(dict, lang, entryId, this.serialized(), revision);
      for (const id of result.axieIds) {
        if (!isAxieId(id)) {
          throw new Error(`server returned a malformed axie id: ${id}`);
        }
      }
      this.state.lastAxieIds = result.axieIds;
      await this.load(dict, lang, entryId, result.revision);
      this.state.lastAxieIds = result.axieIds;
      return result;
    } catch (err) {
      if (err instanceof RevisionConflictError) {
        this.state.conflict = err.message;
      }
      throw err;
    }
  }

  /** after a conflict: drop local edits and pick up the latest revision */
  async reload(latestRevision: number): Promise<void> {
    const { dict, lang, entryId } = this.state;
    await this.load(dict, lang, entryId, latestRevision);
  }
}
