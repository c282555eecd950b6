/**
 * Readers for the two CSV layouts the cspoisson CLI writes.
 *
 * Run tables:     t,y1,...,yn,energy_err[,casimir_<name>_err...],global_err,iters
 * Convergence:    h,global_err,observed_order
 *
 * Empty cells (global_err without a reference solution, observed_order on
 * the first row) parse to NaN.  Nothing here recomputes dynamics; we only
 * read what the integrator wrote.
 */

export class CsvError extends Error {}

export interface RunTable {
  file: string;
  columns: string[];
  /** Row-major cells; empty cells are NaN. */
  rows: number[][];
}

export interface ConvergenceTable {
  file: string;
  h: number[];
  globalErr: number[];
  observedOrder: number[];
}

// ---------------------------------------------------------------------------
// Low-level parsing
// ---------------------------------------------------------------------------

function dataLines(text: string): string[] {
  return text
    .split("\n")
    .map((line) => line.trim())
    .filter((line) => line.length > 0);
}

function parseCell(file: string, lineNo: number, cell: string): number {
  if (cell === "") return NaN;
  const v = Number(cell);
  if (Number.isNaN(v)) {
    throw new CsvError(`${file}: line ${lineNo}: non-numeric cell '${cell}'`);
  }
  return v;
}

function parseRows(file: string, lines: string[], width: number): number[][] {
  return lines.map((line, i) => {
    const cells = line.split(",");
    if (cells.length !== width) {
      throw new CsvError(
        `${file}: line ${i + 2}: expected ${width} cells, found ${cells.length}`,
      );
    }
    return cells.map((cell) => parseCell(file, i + 2, cell));
  });
}

// ---------------------------------------------------------------------------
// Run tables
// ---------------------------------------------------------------------------

export function parseRunCsv(file: string, text: string): RunTable {
  const lines = dataLines(text);
  if (lines.length === 0) throw new CsvError(`${file}: empty file`);
  const columns = lines[0]!.split(",");
  if (columns[0] !== "t" || columns[1] !== "y1" || !columns.includes("energy_err")) {
    throw new CsvError(`${file}: not a run table (header '${lines[0]}')`);
  }
  if (lines.length === 1) throw new CsvError(`${file}: no data rows`);
  return { file, columns, rows: parseRows(file, lines.slice(1), columns.length) };
}

export function column(table: RunTable, name: string): number[] {
  const idx = table.columns.indexOf(name);
  if (idx < 0) throw new CsvError(`${table.file}: missing column ${name}`);
  return table.rows.map((row) => row[idx]!);
}

/** Names of the contiguous y1..yn state columns. */
export function stateColumns(table: RunTable): string[] {
  const names: string[] = [];
  for (let i = 1; table.columns[i] === `y${i}`; i++) names.push(table.columns[i]!);
  return names;
}

/**
 * Resolve an error-column selector to a concrete column name.
 * Accepts "energy", "casimir" (the unique casimir_*_err column), or an
 * explicit column name.
 */
export function resolveErrorColumn(table: RunTable, selector: string): string {
  if (selector === "energy") return "energy_err";
  if (selector === "casimir") {
    const matches = table.columns.filter(
      (name) => name.startsWith("casimir_") && name.endsWith("_err"),
    );
    if (matches.length === 0) {
      throw new CsvError(`${table.file}: missing column casimir_*_err`);
    }
    if (matches.length > 1) {
      throw new CsvError(
        `${table.file}: ambiguous casimir selector, have ${matches.join(", ")}`,
      );
    }
    return matches[0]!;
  }
  if (!table.columns.includes(selector)) {
    throw new CsvError(`${table.file}: missing column ${selector}`);
  }
  return selector;
}

// ---------------------------------------------------------------------------
// Convergence tables
// ---------------------------------------------------------------------------

export function parseConvergenceCsv(file: string, text: string): ConvergenceTable {
  const lines = dataLines(text);
  if (lines.length === 0) throw new CsvError(`${file}: empty file`);
  if (lines[0] !== "h,global_err,observed_order") {
    throw new CsvError(`${file}: not a convergence table (header '${lines[0]}')`);
  }
  if (lines.length < 3) {
    throw new CsvError(`${file}: needs at least 2 rows, found ${lines.length - 1}`);
  }
  const rows = parseRows(file, lines.slice(1), 3);
  return {
    file,
    h: rows.map((row) => row[0]!),
    globalErr: rows.map((row) => row[1]!),
    observedOrder: rows.map((row) => row[2]!),
  };
}
