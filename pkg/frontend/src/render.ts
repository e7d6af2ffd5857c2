/** Client-side chart rendering.
 *
 * The page loads the vega, vega-lite, and vega-embed bundles with
 * plain script tags, so the embed entry point arrives as a global.
 * When it is missing (tests run under node, or the bundles failed to
 * load) we fall back to a textual summary instead of a blank pane,
 * and the caller still gets a truthful detail string. Render
 * failures are returned, never swallowed.
 */

export interface RenderResult {
  ok: boolean;
  detail: string;
}

type EmbedFn = (
  el: HTMLElement,
  spec: unknown,
  options: Record<string, unknown>,
) => Promise<unknown>;

function embedGlobal(): EmbedFn | null {
  const candidate = (globalThis as Record<string, unknown>)["vegaEmbed"];
  return typeof candidate === "function" ? (candidate as EmbedFn) : null;
}

/** Stable fingerprint of the rendered source text (djb2). Stamped on
 * the container so tests can observe that the chart updated. */
export function specFingerprint(text: string): string {
  let hash = 5381;
  for (let i = 0; i < text.length; i += 1) {
    hash = ((hash << 5) + hash + text.charCodeAt(i)) >>> 0;
  }
  return hash.toString(16);
}

function summarize(spec: Record<string, unknown>): string {
  const mark =
    typeof spec["mark"] === "string"
      ? (spec["mark"] as string)
      : JSON.stringify(spec["mark"] ?? null);
  const encoding = spec["encoding"];
  const channels =
    encoding && typeof encoding === "object"
      ? Object.keys(encoding as Record<string, unknown>)
      : [];
  return `mark ${mark}; channels: ${channels.join(", ") || "(none)"}`;
}

export async function renderChart(
  container: HTMLElement,
  specText: string,
  datasetRows: Record<string, unknown>[] | null,
): Promise<RenderResult> {
  let spec: Record<string, unknown>;
  try {
    const parsed: unknown = JSON.parse(specText);
    if (parsed === null || typeof parsed !== "object" || Array.isArray(parsed)) {
      throw new Error("spec must be a JSON object");
    }
    spec = { ...(parsed as Record<string, unknown>) };
  } catch (err) {
    container.textContent = `cannot render: ${String(err instanceof Error ? err.message : err)}`;
    container.dataset["specHash"] = "";
    return { ok: false, detail: "spec is not a JSON object" };
  }

  if (!("data" in spec) && datasetRows && datasetRows.length > 0) {
    spec["data"] = { values: datasetRows };
  }

  container.dataset["specHash"] = specFingerprint(JSON.stringify(spec));

  const embed = embedGlobal();
  if (!embed) {
    container.textContent = summarize(spec);
    return {
      ok: false,
      detail: "chart renderer not loaded; showing text summary",
    };
  }

  try {
    await embed(container, spec, { actions: false });
    return { ok: true, detail: "rendered" };
  } catch (err) {
    const message = err instanceof Error ? err.message : String(err);
    container.textContent = `render failed: ${message}`;
    return { ok: false, detail: `render failed: ${message}` };
  }
}
