/** Editor session state machine.
 *
 * Holds the document and the inspect/preview/accept lifecycle. The
 * rules it enforces:
 *   - a manual edit clears any pending plan (no stale previews),
 *   - reject is a strict identity on the document,
 *   - accept swaps in the service's applied spec and re-inspects,
 *   - a failed apply leaves the editor untouched,
 *   - stale responses (superseded by a newer request of the same
 *     kind) are dropped by sequence number.
 */

import {
  ApiClient,
  DataRows,
  FixResponse,
  LintReport,
  ServiceError,
  SpecObject,
} from "./api.js";

export type RequestKind = "lint" | "fix" | "apply";

/** An operation was invoked outside its precondition. */
export class StateError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "StateError";
  }
}

export interface AppliedPlan {
  plan: FixResponse["plan"];
  acceptedAt: number;
}

export type Listener = () => void;

export function formatSpec(spec: SpecObject): string {
  return JSON.stringify(spec, null, 2);
}

export class EditorSession {
  currentSpecText: string;
  readonly originalSpecText: string;
  lastReport: LintReport | null = null;
  pendingPlan: FixResponse | null = null;
  acceptedHistory: AppliedPlan[] = [];

  /** Inline JSON parse error for the current text, if inspect hit one. */
  parseError: string | null = null;
  /** Non-blocking service banner (unreachable host, HTTP failures). */
  banner: string | null = null;

  datasetRows: DataRows | null = null;

  private prePreviewText: string | null = null;
  private seq: Record<RequestKind, number> = { lint: 0, fix: 0, apply: 0 };
  private listeners: Listener[] = [];

  constructor(
    initialText: string,
    readonly api: ApiClient = new ApiClient(),
  ) {
    this.currentSpecText = initialText;
    this.originalSpecText = initialText;
  }

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private notify(): void {
    for (const l of this.listeners) l();
  }

  /** Manual edit: replaces the text and invalidates any preview. */
  setText(text: string): void {
    if (text === this.currentSpecText) return;
    this.currentSpecText = text;
    this.pendingPlan = null;
    this.prePreviewText = null;
    this.parseError = null;
    this.notify();
  }

  setDataset(rows: DataRows | null): void {
    this.datasetRows = rows;
    this.notify();
  }

  private parseCurrent(): SpecObject | null {
    try {
      const value = JSON.parse(this.currentSpecText) as unknown;
      if (value === null || typeof value !== "object" || Array.isArray(value)) {
        this.parseError = "spec must be a JSON object";
        return null;
      }
      this.parseError = null;
      return value as SpecObject;
    } catch (err) {
      this.parseError = err instanceof Error ? err.message : String(err);
      return null;
    }
  }

  private nextSeq(kind: RequestKind): number {
    this.seq[kind] += 1;
    return this.seq[kind];
  }

  private isCurrent(kind: RequestKind, ticket: number): boolean {
    return this.seq[kind] === ticket;
  }

  private reportFailure(err: unknown): void {
    if (err instanceof ServiceError) {
      this.banner = `service error ${err.status}: ${err.message}`;
    } else {
      this.banner = "service unreachable";
    }
  }

  /** POST /lint for the current text. No request is sent when the text
   * does not parse; the parse error is surfaced inline instead. */
  async inspect(): Promise<LintReport | null> {
    const spec = this.parseCurrent();
    if (spec === null) {
      this.notify();
      return null;
    }
    const ticket = this.nextSeq("lint");
    try {
      const report = await this.api.lint(spec, this.datasetRows);
      if (!this.isCurrent("lint", ticket)) return null; // superseded
      this.lastReport = report;
      this.banner = null;
      this.notify();
      return report;
    } catch (err) {
      if (!this.isCurrent("lint", ticket)) return null;
      this.reportFailure(err);
      this.notify();
      return null;
    }
  }

  /** POST /fix. Requires a lint report with at least one violation. */
  async suggestAndPreview(): Promise<FixResponse | null> {
    if (!this.lastReport || this.lastReport.violations.length === 0) {
      throw new StateError("nothing to fix: inspect first and find violations");
    }
    const spec = this.parseCurrent();
    if (spec === null) {
      this.notify();
      return null;
    }
    const ticket = this.nextSeq("fix");
    try {
      const response = await this.api.fix(spec, this.datasetRows);
      if (!this.isCurrent("fix", ticket)) return null;
      this.pendingPlan = response;
      this.prePreviewText = this.currentSpecText;
      this.banner = null;
      this.notify();
      return response;
    } catch (err) {
      if (!this.isCurrent("fix", ticket)) return null;
      this.reportFailure(err);
      this.notify();
      return null;
    }
  }

  /** POST /apply with the pending plan's actions, then re-inspect.
   * Any failure leaves the document and history untouched. */
  async accept(): Promise<boolean> {
    const pending = this.pendingPlan;
    if (!pending) throw new StateError("no pending plan to accept");
    const spec = this.parseCurrent();
    if (spec === null) {
      this.notify();
      return false;
    }
    const ticket = this.nextSeq("apply");
    try {
      const actions = pending.plan.selected.map((a) => ({
        name: a.name,
        channel: a.channel,
        value: a.value,
      }));
      const revised = await this.api.apply(spec, actions);
      if (!this.isCurrent("apply", ticket)) return false;
      this.currentSpecText = formatSpec(revised);
      this.acceptedHistory.push({ plan: pending.plan, acceptedAt: Date.now() });
      this.pendingPlan = null;
      this.prePreviewText = null;
      this.banner = null;
      this.notify();
      await this.inspect();
      return true;
    } catch (err) {
      if (!this.isCurrent("apply", ticket)) return false;
      this.reportFailure(err);
      this.notify();
      return false;
    }
  }

  /** Discard the pending plan. The document is restored byte for byte
   * to what it was when the preview was requested. */
  reject(): void {
    if (!this.pendingPlan) throw new StateError("no pending plan to reject");
    if (this.prePreviewText !== null) {
      this.currentSpecText = this.prePreviewText;
    }
    this.pendingPlan = null;
    this.prePreviewText = null;
    this.notify();
  }

  /** Document text as it was when the preview was requested. */
  prePreviewSpecText(): string | null {
    return this.prePreviewText;
  }

  /** Pretty-printed revision from the pending plan, for the preview pane. */
  revisedText(): string | null {
    if (!this.pendingPlan) return null;
    return formatSpec(this.pendingPlan.revised_spec);
  }
}
