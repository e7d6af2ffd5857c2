/** Typed client for the vizlint HTTP service. All engine logic lives
 * server-side; this module only moves JSON. */

export interface Violation {
  rule_id: string;
  category: string;
  bindings: Record<string, string | number>;
  message: string;
  spec_path: string;
}

export interface LintReport {
  spec_hash: string;
  violations: Violation[];
  timing_ms: number;
}

export interface ActionJson {
  name: string;
  channel: string | null;
  value: unknown;
}

export interface ScoredActionJson extends ActionJson {
  reward: number;
  cost: number;
  score: number;
}

export type DiffKind = "added" | "removed" | "changed";

export interface DiffEntryJson {
  path: string;
  kind: DiffKind;
  before: unknown;
  after: unknown;
}

export type SpecObject = Record<string, unknown>;

export interface PlanJson {
  selected: ScoredActionJson[];
  objective: number;
  per_rule: Record<string, string>;
  revised_spec: SpecObject;
  residuals: Violation[];
  unfixable: Violation[];
  alternatives: Record<string, ScoredActionJson[]>;
  diff: DiffEntryJson[];
  skipped: ActionJson[];
}

export interface FixResponse {
  plan: PlanJson;
  revised_spec: SpecObject;
  diff: DiffEntryJson[];
  alternatives: Record<string, ScoredActionJson[]>;
}

export interface RuleInfo {
  id: string;
  category: string;
  description: string;
  actions: string[];
}

export type DataRows = Record<string, unknown>[];

/** Non-2xx response from the service, carrying its detail message. */
export class ServiceError extends Error {
  constructor(
    readonly status: number,
    detail: string,
  ) {
    super(detail);
    this.name = "ServiceError";
  }
}

export type FetchLike = (
  url: string,
  init?: RequestInit,
) => Promise<Response>;

export class ApiClient {
  constructor(
    public baseUrl: string = "http://127.0.0.1:8710",
    private fetchImpl: FetchLike = (...args) => fetch(...args),
  ) {}

  private async post<T>(path: string, body: unknown): Promise<T> {
    const res = await this.fetchImpl(this.baseUrl + path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
    return this.decode<T>(res);
  }

  private async decode<T>(res: Response): Promise<T> {
    if (!res.ok) {
      let detail = res.statusText || `HTTP ${res.status}`;
      try {
        const payload = (await res.json()) as { detail?: unknown };
        if (typeof payload.detail === "string") detail = payload.detail;
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ServiceError(res.status, detail);
    }
    return (await res.json()) as T;
  }

  lint(spec: SpecObject, data?: DataRows | null): Promise<LintReport> {
    const body: Record<string, unknown> = { spec };
    if (data != null) body.data = data;
    return this.post<LintReport>("/lint", body);
  }

  fix(
    spec: SpecObject,
    data?: DataRows | null,
    config?: Record<string, unknown>,
  ): Promise<FixResponse> {
    const body: Record<string, unknown> = { spec };
    if (data != null) body.data = data;
    if (config != null) body.config = config;
    return this.post<FixResponse>("/fix", body);
  }

  async apply(spec: SpecObject, actions: ActionJson[]): Promise<SpecObject> {
    const out = await this.post<{ spec: SpecObject }>("/apply", {
      spec,
      actions,
    });
    return out.spec;
  }

  async rules(): Promise<{ version: string; rules: RuleInfo[] }> {
    const res = await this.fetchImpl(this.baseUrl + "/rules");
    return this.decode(res);
  }
}
