#!/usr/bin/env node
/**
 * render <recipe> [--out dir] [--data dir]
 *
 * Renders one figure recipe (or "all") from the simulator CSVs to SVG.
 * Exit codes: 0 ok, 1 render/schema failure, 2 bad usage.
 */

import * as fs from "fs";
import * as path from "path";
import { render, RECIPES, SchemaError } from "./render";

function usage(): void {
  console.error("usage: render <recipe|all> [--out dir] [--data dir]");
  console.error(`recipes: ${Object.keys(RECIPES).sort().join(", ")}`);
}

export function main(argv: string[]): number {
  const args = [...argv];
  let out = "figures_out";
  let data = path.join(__dirname, "..", "..", "data", "figures");
  const positional: string[] = [];
  while (args.length > 0) {
    const arg = args.shift()!;
    if (arg === "--out") {
      const v = args.shift();
      if (!v) return usageError();
      out = v;
    } else if (arg === "--data") {
      const v = args.shift();
      if (!v) return usageError();
      data = v;
    } else if (arg === "--help" || arg === "-h") {
      usage();
      return 0;
    } else {
      positional.push(arg);
    }
  }
  if (positional.length !== 1) return usageError();
  const names = positional[0] === "all" ? Object.keys(RECIPES).sort() : [positional[0]];
  fs.mkdirSync(out, { recursive: true });
  for (const name of names) {
    try {
      const svg = render(name, data);
      const target = path.join(out, `${name}.svg`);
      fs.writeFileSync(target, svg);
      console.log(target);
    } catch (err) {
      if (err instanceof SchemaError) {
        console.error(`error rendering ${name}: ${err.message}`);
        return 1;
      }
      throw err;
    }
  }
  return 0;
}

function usageError(): number {
  usage();
  return 2;
}

if (require.main === module) {
  process.exit(main(process.argv.slice(2)));
}
