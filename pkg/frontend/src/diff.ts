/** Line-level diff highlighting.
 *
 * The service reports changes as JSON-Pointer paths. To turn those
 * into red/green line highlights we pretty-print each spec with a
 * printer that records the line range of every pointer. The printed
 * text is byte-identical to JSON.stringify(value, null, 2), so the
 * highlighted view always matches the editor's own formatting.
 */

import { DiffEntryJson } from "./api.js";

export interface LineMap {
  text: string;
  /** pointer -> [firstLine, lastLine], 1-indexed, inclusive */
  ranges: Map<string, [number, number]>;
}

function escapeSegment(segment: string): string {
  return segment.replace(/~/g, "~0").replace(/\//g, "~1");
}

export function printWithLineMap(value: unknown): LineMap {
  const lines: string[] = [];
  const ranges = new Map<string, [number, number]>();

  const pad = (level: number) => "  ".repeat(level);
  const appendComma = () => {
    lines[lines.length - 1] += ",";
  };

  const render = (
    node: unknown,
    pointer: string,
    level: number,
    prefix: string,
  ): void => {
    const start = lines.length + 1;
    if (node === null || typeof node !== "object") {
      lines.push(prefix + JSON.stringify(node));
    } else if (Array.isArray(node)) {
      if (node.length === 0) {
        lines.push(prefix + "[]");
      } else {
        lines.push(prefix + "[");
        node.forEach((item, i) => {
          render(item, `${pointer}/${i}`, level + 1, pad(level + 1));
          if (i < node.length - 1) appendComma();
        });
        lines.push(pad(level) + "]");
      }
    } else {
      const entries = Object.entries(node as Record<string, unknown>);
      if (entries.length === 0) {
        lines.push(prefix + "{}");
      } else {
        lines.push(prefix + "{");
        entries.forEach(([key, item], i) => {
          render(
            item,
            `${pointer}/${escapeSegment(key)}`,
            level + 1,
            `${pad(level + 1)}${JSON.stringify(key)}: `,
          );
          if (i < entries.length - 1) appendComma();
        });
        lines.push(pad(level) + "}");
      }
    }
    ranges.set(pointer, [start, lines.length]);
  };

  render(value, "", 0, "");
  return { text: lines.join("\n"), ranges };
}

/** Line range for a pointer, falling back to the nearest ancestor that
 * exists in the printed document. */
export function pointerRange(
  map: LineMap,
  pointer: string,
): [number, number] | null {
  let p = pointer;
  for (;;) {
    const range = map.ranges.get(p);
    if (range) return range;
    if (p === "") return null;
    const cut = p.lastIndexOf("/");
    p = cut <= 0 ? "" : p.slice(0, cut);
  }
}

export type HighlightKind = "removed" | "added" | "changed";
export type LineHighlights = Map<number, HighlightKind>;

export interface DiffView {
  original: LineMap;
  revised: LineMap;
  originalLines: LineHighlights;
  revisedLines: LineHighlights;
}

function markRange(
  target: LineHighlights,
  range: [number, number] | null,
  kind: HighlightKind,
): void {
  if (!range) return;
  for (let line = range[0]; line <= range[1]; line += 1) {
    if (!target.has(line)) target.set(line, kind);
  }
}

function parentOf(pointer: string): string {
  const cut = pointer.lastIndexOf("/");
  return cut <= 0 ? "" : pointer.slice(0, cut);
}

/** Pointer for an entry on the revised side. A changed entry whose
 * path no longer exists covers channel renames: the new location is
 * the same parent keyed by the entry's after value. */
function revisedPointer(map: LineMap, entry: DiffEntryJson): string {
  if (map.ranges.has(entry.path)) return entry.path;
  if (entry.kind === "changed" && typeof entry.after === "string") {
    const renamed = `${parentOf(entry.path)}/${escapeSegment(entry.after)}`;
    if (map.ranges.has(renamed)) return renamed;
  }
  return entry.path;
}

export function buildDiffView(
  originalSpec: unknown,
  revisedSpec: unknown,
  diff: DiffEntryJson[],
): DiffView {
  const original = printWithLineMap(originalSpec);
  const revised = printWithLineMap(revisedSpec);
  const originalLines: LineHighlights = new Map();
  const revisedLines: LineHighlights = new Map();
  for (const entry of diff) {
    if (entry.kind === "removed" || entry.kind === "changed") {
      markRange(originalLines, pointerRange(original, entry.path), entry.kind);
    }
    if (entry.kind === "added" || entry.kind === "changed") {
      const pointer = revisedPointer(revised, entry);
      markRange(revisedLines, pointerRange(revised, pointer), entry.kind);
    }
  }
  return { original, revised, originalLines, revisedLines };
}
