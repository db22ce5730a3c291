/**
 * Reader for the versioned sweep CSV written by the ctxharvest CLI.
 *
 * The first line carries the schema tag (`# ctxharvest-sweep-csv-v2`); any
 * other version, or a header that is missing required columns, is a hard
 * error that reports the exact column diff.
 */

export const SUPPORTED_SCHEMA = "ctxharvest-sweep-csv-v2";

export const REQUIRED_COLUMNS = [
  "index",
  "axis",
  "axis_value",
  "dynamics",
  "parametrization",
  "lam",
  "omega",
  "rtilde",
  "dtilde",
  "spacelike",
  "cf_joint",
  "cf_reduced_tensor_reduced",
  "cf_reduced_tensor_ground",
  "negativity",
  "error",
] as const;

export interface SweepRow {
  index: number;
  axisValue: number;
  dynamics: string;
  parametrization: string;
  lam: number;
  rtilde: number;
  dtilde: number;
  cfJoint: number | null;
  cfReducedTensorReduced: number | null;
  cfReducedTensorGround: number | null;
  negativity: number | null;
  error: string;
}

export class SchemaError extends Error {}

function parseOptional(value: string): number | null {
  if (value === "") return null;
  const x = Number(value);
  if (!Number.isFinite(x)) throw new SchemaError(`not a number: ${value}`);
  return x;
}

export function parseSweepCsv(text: string): SweepRow[] {
  const lines = text.split(/\r?\n/).filter((ln) => ln.length > 0);
  if (lines.length === 0) throw new SchemaError("empty CSV");
  if (!lines[0].startsWith("#")) {
    throw new SchemaError(`missing schema comment; expected "# ${SUPPORTED_SCHEMA}"`);
  }
  const version = lines[0].replace(/^#\s*/, "").trim();
  if (version !== SUPPORTED_SCHEMA) {
    throw new SchemaError(`unsupported schema "${version}"; this renderer reads "${SUPPORTED_SCHEMA}"`);
  }
  let headerIdx = 1;
  while (headerIdx < lines.length && lines[headerIdx].startsWith("#")) headerIdx += 1;
  if (headerIdx >= lines.length) throw new SchemaError("CSV has no header row");
  const header = lines[headerIdx].split(",");
  const missing = REQUIRED_COLUMNS.filter((c) => !header.includes(c));
  if (missing.length > 0) {
    throw new SchemaError(
      `column mismatch: missing [${missing.join(", ")}]; found [${header.join(", ")}]`,
    );
  }
  const col = new Map(header.map((name, i) => [name, i]));
  const at = (cells: string[], name: string) => cells[col.get(name)!] ?? "";

  const rows: SweepRow[] = [];
  for (const line of lines.slice(headerIdx + 1)) {
    const cells = line.split(",");
    if (cells.length !== header.length) {
      throw new SchemaError(`row has ${cells.length} cells, header has ${header.length}`);
    }
    rows.push({
      index: Number(at(cells, "index")),
      axisValue: Number(at(cells, "axis_value")),
      dynamics: at(cells, "dynamics"),
      parametrization: at(cells, "parametrization"),
      lam: Number(at(cells, "lam")),
      rtilde: Number(at(cells, "rtilde")),
      dtilde: Number(at(cells, "dtilde")),
      cfJoint: parseOptional(at(cells, "cf_joint")),
      cfReducedTensorReduced: parseOptional(at(cells, "cf_reduced_tensor_reduced")),
      cfReducedTensorGround: parseOptional(at(cells, "cf_reduced_tensor_ground")),
      negativity: parseOptional(at(cells, "negativity")),
      error: at(cells, "error"),
    });
  }
  if (rows.length === 0) throw new SchemaError("CSV contains no data rows");
  return rows;
}
