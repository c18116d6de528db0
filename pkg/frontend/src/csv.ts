/**
 * CSV loading with strict header validation against a recipe's schema.
 */

import * as fs from "fs";
import Papa from "papaparse";

export class SchemaError extends Error {}

export interface Table {
  header: string[];
  rows: Record<string, string>[];
}

/** Parse a CSV file and check its header matches the expected columns. */
export function loadCsv(path: string, expected: string[]): Table {
  if (!fs.existsSync(path)) {
    throw new SchemaError(`input CSV not found: ${path}`);
  }
  const text = fs.readFileSync(path, "utf-8");
  const parsed = Papa.parse<Record<string, string>>(text.trim(), {
    header: true,
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    throw new SchemaError(`CSV parse error in ${path}: ${parsed.errors[0].message}`);
  }
  const header = parsed.meta.fields ?? [];
  if (header.length !== expected.length || expected.some((c, i) => header[i] !== c)) {
    throw new SchemaError(
      `header mismatch in ${path}: expected [${expected.join(",")}], got [${header.join(",")}]`
    );
  }
  if (parsed.data.length === 0) {
    throw new SchemaError(`no data rows in ${path}`);
  }
  return { header, rows: parsed.data };
}

export function num(row: Record<string, string>, key: string): number {
  const v = Number(row[key]);
  if (!Number.isFinite(v)) {
    throw new SchemaError(`non-numeric value '${row[key]}' in column ${key}`);
  }
  return v;
}

/** Optional numeric column: empty cells come back as null. */
export function numOrNull(row: Record<string, string>, key: string): number | null {
  const raw = row[key];
  if (raw === undefined || raw === "") return null;
  return num(row, key);
}
