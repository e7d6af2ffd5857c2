/** DOM wiring for the editor page.
 *
 * All engine logic lives on the service; this file only reflects
 * EditorSession state into the page and forwards user gestures back
 * into it. The session is the single source of truth, so every
 * handler ends by letting the subscription repaint.
 */

import { ApiClient, ScoredActionJson, Violation } from "./api.js";
import { parseCsv } from "./csv.js";
import { buildDiffView, LineHighlights, pointerRange, printWithLineMap } from "./diff.js";
import { renderChart } from "./render.js";
import { EditorSession, formatSpec, StateError } from "./session.js";

const STARTER_SPEC = {
  mark: "point",
  encoding: {
    x: { field: "Horsepower", type: "quantitative" },
    y: { field: "Miles_per_Gallon", type: "quantitative" },
    size: { field: "Origin", type: "nominal" },
  },
};

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function byId<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

/** Paint pre-formatted JSON with per-line highlight classes. */
function paintLines(
  target: HTMLElement,
  text: string,
  highlights: LineHighlights,
): void {
  target.textContent = "";
  text.split("\n").forEach((line, i) => {
    const kind = highlights.get(i + 1);
    const row = el("div", kind ? `line line-${kind}` : "line");
    row.textContent = line === "" ? " " : line;
    target.appendChild(row);
  });
}

function describeAction(action: ScoredActionJson): string {
  const args = [action.channel, action.value].filter((a) => a !== null);
  return `${action.name}(${args.join(", ")}) score ${action.score.toFixed(2)} (reward ${action.reward.toFixed(2)}, cost ${action.cost.toFixed(2)})`;
}

function violationLabel(v: Violation): string {
  const args = Object.entries(v.bindings)
    .map(([k, val]) => `${k}=${val}`)
    .join(", ");
  return args ? `${v.rule_id}(${args})` : v.rule_id;
}

function main(): void {
  const editor = byId<HTMLTextAreaElement>("editor");
  const banner = byId<HTMLDivElement>("banner");
  const violationsPane = byId<HTMLDivElement>("violations");
  const previewPane = byId<HTMLDivElement>("preview");
  const originalView = byId<HTMLDivElement>("original-view");
  const revisedView = byId<HTMLDivElement>("revised-view");
  const originalChart = byId<HTMLDivElement>("original-chart");
  const revisedChart = byId<HTMLDivElement>("revised-chart");
  const renderNote = byId<HTMLDivElement>("render-note");
  const baseUrlInput = byId<HTMLInputElement>("base-url");
  const datasetInput = byId<HTMLInputElement>("dataset");
  const datasetNote = byId<HTMLSpanElement>("dataset-note");
  const inspectBtn = byId<HTMLButtonElement>("inspect");
  const suggestBtn = byId<HTMLButtonElement>("suggest");
  const acceptBtn = byId<HTMLButtonElement>("accept");
  const rejectBtn = byId<HTMLButtonElement>("reject");

  let session = new EditorSession(
    formatSpec(STARTER_SPEC),
    new ApiClient(baseUrlInput.value || undefined),
  );

  let renderTicket = 0;

  const repaint = (): void => {
    editor.value = session.currentSpecText;

    banner.textContent = session.banner ?? "";
    banner.hidden = session.banner === null;

    violationsPane.textContent = "";
    if (session.parseError) {
      violationsPane.appendChild(
        el("div", "parse-error", `parse error: ${session.parseError}`),
      );
    } else if (session.lastReport) {
      const report = session.lastReport;
      if (report.violations.length === 0) {
        violationsPane.appendChild(el("div", "all-clear", "No violations."));
      } else {
        const map = (() => {
          try {
            return printWithLineMap(JSON.parse(session.currentSpecText));
          } catch {
            return null;
          }
        })();
        for (const v of report.violations) {
          const range = map ? pointerRange(map, v.spec_path) : null;
          const where = range ? ` (lines ${range[0]}-${range[1]})` : "";
          const item = el("div", "violation");
          item.appendChild(el("strong", undefined, violationLabel(v)));
          item.appendChild(el("span", undefined, ` ${v.message}${where}`));
          violationsPane.appendChild(item);
        }
      }
    } else {
      violationsPane.appendChild(
        el("div", "hint", "Inspect the spec to see findings."),
      );
    }

    const pending = session.pendingPlan;
    previewPane.hidden = pending === null;
    acceptBtn.disabled = pending === null;
    rejectBtn.disabled = pending === null;
    suggestBtn.disabled =
      session.lastReport === null || session.lastReport.violations.length === 0;

    if (pending) {
      const planList = byId<HTMLDivElement>("plan-list");
      planList.textContent = "";
      if (pending.plan.selected.length === 0) {
        planList.appendChild(el("div", "hint", "No actions selected."));
      }
      for (const action of pending.plan.selected) {
        planList.appendChild(el("div", "plan-action", describeAction(action)));
      }

      const perRule = byId<HTMLDivElement>("per-rule");
      perRule.textContent = "";
      for (const [key, ranked] of Object.entries(pending.alternatives)) {
        const block = el("div", "alternative-block");
        const chosen = pending.plan.per_rule[key];
        block.appendChild(el("strong", undefined, key));
        ranked.forEach((sa) => {
          const label = describeAction(sa);
          const isChosen = chosen !== undefined && label.startsWith(chosen.split(" score")[0] ?? chosen);
          block.appendChild(
            el("div", isChosen ? "alt chosen" : "alt", (isChosen ? "✓ " : "") + label),
          );
        });
        perRule.appendChild(block);
      }

      const unfixable = byId<HTMLDivElement>("unfixable");
      unfixable.textContent = "";
      if (pending.plan.unfixable.length > 0) {
        unfixable.appendChild(el("strong", undefined, "No available fix:"));
        for (const v of pending.plan.unfixable) {
          unfixable.appendChild(el("div", "unfixable-item", violationLabel(v)));
        }
      }
      const residuals = byId<HTMLDivElement>("residuals");
      residuals.textContent = "";
      if (pending.plan.residuals.length > 0) {
        residuals.appendChild(el("strong", undefined, "Still present after fix:"));
        for (const v of pending.plan.residuals) {
          residuals.appendChild(el("div", "residual-item", violationLabel(v)));
        }
      }

      try {
        const view = buildDiffView(
          JSON.parse(session.prePreviewSpecText() ?? session.currentSpecText),
          pending.plan.revised_spec,
          pending.diff,
        );
        paintLines(originalView, view.original.text, view.originalLines);
        paintLines(revisedView, view.revised.text, view.revisedLines);
      } catch {
        originalView.textContent = session.currentSpecText;
        revisedView.textContent = session.revisedText() ?? "";
      }
    }

    void renderCharts();
  };

  const renderCharts = async (): Promise<void> => {
    const ticket = ++renderTicket;
    const rows = session.datasetRows;
    const orig = await renderChart(originalChart, session.currentSpecText, rows);
    if (ticket !== renderTicket) return;
    let note = orig.ok ? "" : `current: ${orig.detail}`;
    if (session.pendingPlan) {
      const revised = await renderChart(
        revisedChart,
        session.revisedText() ?? "",
        rows,
      );
      if (ticket !== renderTicket) return;
      revisedChart.hidden = false;
      if (!revised.ok) note += `${note ? "; " : ""}revised: ${revised.detail}`;
    } else {
      revisedChart.hidden = true;
      revisedChart.textContent = "";
    }
    renderNote.textContent = note;
    renderNote.hidden = note === "";
  };

  session.subscribe(repaint);

  editor.addEventListener("input", () => {
    session.setText(editor.value);
  });

  baseUrlInput.addEventListener("change", () => {
    const text = session.currentSpecText;
    const rows = session.datasetRows;
    session = new EditorSession(text, new ApiClient(baseUrlInput.value));
    session.setDataset(rows);
    session.subscribe(repaint);
    repaint();
  });

  datasetInput.addEventListener("change", async () => {
    const file = datasetInput.files?.[0];
    if (!file) return;
    const text = await file.text();
    let rows: Record<string, unknown>[];
    try {
      rows = file.name.endsWith(".json")
        ? (JSON.parse(text) as Record<string, unknown>[])
        : parseCsv(text);
    } catch (err) {
      datasetNote.textContent = `could not read ${file.name}: ${String(err)}`;
      return;
    }
    session.setDataset(rows);
    datasetNote.textContent = `${file.name}: ${rows.length} rows`;
    repaint();
  });

  inspectBtn.addEventListener("click", () => {
    void session.inspect();
  });
  suggestBtn.addEventListener("click", () => {
    void session.suggestAndPreview().catch((err) => {
      if (!(err instanceof StateError)) throw err;
    });
  });
  acceptBtn.addEventListener("click", () => {
    void session.accept();
  });
  rejectBtn.addEventListener("click", () => {
    try {
      session.reject();
    } catch (err) {
      if (!(err instanceof StateError)) throw err;
    }
  });

  repaint();
}

main();
