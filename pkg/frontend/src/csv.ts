/** Minimal CSV reader for loading sample datasets in the editor.
 *
 * Handles the unquoted comma-separated files shipped with the
 * service. Numeric-looking cells are coerced so column types match
 * what the service's own profiler infers; empty cells become null.
 */

const NUMERIC = /^-?\d+(\.\d+)?$/;

export function parseCsv(text: string): Record<string, unknown>[] {
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines.length === 0) return [];
  const header = (lines[0] ?? "").split(",");
  const rows: Record<string, unknown>[] = [];
  for (const line of lines.slice(1)) {
    const cells = line.split(",");
    const row: Record<string, unknown> = {};
    header.forEach((name, i) => {
      const cell = cells[i] ?? "";
      if (cell === "") {
        row[name] = null;
      } else if (NUMERIC.test(cell)) {
        row[name] = Number(cell);
      } else {
        row[name] = cell;
      }
    });
    rows.push(row);
  }
  return rows;
}
