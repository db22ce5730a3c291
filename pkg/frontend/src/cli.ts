#!/usr/bin/env node
/**
 * ctxharvest-render --family fig1 --input sweep.csv [--input more.csv ...]
 *                   --out fig1.svg [--quantity cf|negativity] [--title ...]
 *
 * Exit codes: 0 rendered, 2 bad input (schema mismatch, empty CSV, unknown
 * family), 1 usage error.
 */

import { SchemaError, render } from "./index.js";
import { ValidationError } from "./chart.js";

function usage(): never {
  process.stderr.write(
    "usage: ctxharvest-render --family fig1|fig4|fig5 --input sweep.csv " +
      "[--input more.csv] --out figure.svg [--quantity cf|negativity] [--title text]\n",
  );
  process.exit(1);
}

function parseArgs(argv: string[]) {
  const inputs: string[] = [];
  let family: string | null = null;
  let out: string | null = null;
  let quantity: string | undefined;
  let title: string | undefined;
  for (let i = 0; i < argv.length; i += 1) {
    const arg = argv[i];
    const next = () => {
      i += 1;
      if (i >= argv.length) usage();
      return argv[i];
    };
    if (arg === "--family") family = next();
    else if (arg === "--input") inputs.push(next());
    else if (arg === "--out") out = next();
    else if (arg === "--quantity") quantity = next();
    else if (arg === "--title") title = next();
    else if (arg === "--help" || arg === "-h") usage();
    else usage();
  }
  if (family === null || out === null || inputs.length === 0) usage();
  if (family !== "fig1" && family !== "fig4" && family !== "fig5") usage();
  if (quantity !== undefined && quantity !== "cf" && quantity !== "negativity") usage();
  return { family, inputs, out, quantity, title } as const;
}

const args = parseArgs(process.argv.slice(2));
try {
  render({
    family: args.family,
    inputPaths: args.inputs,
    outPath: args.out,
    quantity: args.quantity,
    title: args.title,
  });
  process.stdout.write(`wrote ${args.out}\n`);
} catch (err) {
  if (err instanceof SchemaError || err instanceof ValidationError) {
    process.stderr.write(`error: ${err.message}\n`);
    process.exit(2);
  }
  throw err;
}
