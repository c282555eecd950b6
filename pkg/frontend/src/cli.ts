#!/usr/bin/env node
/**
 * plots: render SVG figures from cspoisson CSV output.
 *
 * usage: plots <kind> --in <csv>... --out <img.svg> [--labels <name>...]
 * kinds: drift | trajectory3d | global-error | convergence
 *
 * Exit codes: 0 ok, 1 usage, 2 bad input data.
 */

import { realpathSync } from "node:fs";
import { pathToFileURL } from "node:url";
import { parseArgs } from "node:util";

import { plotConvergence, plotDrift, plotGlobalError, plotTrajectory3d, type PlotInfo } from "./plots.js";

export class UsageError extends Error {}

const KINDS = ["drift", "trajectory3d", "global-error", "convergence"] as const;
type Kind = (typeof KINDS)[number];

const USAGE = `usage: plots <kind> --in <csv>... --out <img.svg> [--labels <name>...]
kinds: ${KINDS.join(" | ")}
drift only: --column energy|casimir|<column_name>   --linear`;

export function main(argv: string[]): number {
  try {
    const info = run(argv);
    for (const s of info.series) {
      const slope = s.slope === undefined ? "" : `  slope=${s.slope.toExponential(2)}`;
      console.log(`${s.label}: ${s.points} points${s.column ? ` (${s.column})` : ""}${slope}`);
    }
    console.log(`wrote ${info.out}`);
    return 0;
  } catch (err) {
    const msg = err instanceof Error ? err.message : String(err);
    if (err instanceof UsageError) {
      console.error(`plots: ${msg}\n${USAGE}`);
      return 1;
    }
    console.error(`plots: ${msg}`);
    return 2;
  }
}

function run(argv: string[]): PlotInfo {
  let positionals: string[];
  let values: {
    in?: string[];
    out?: string;
    labels?: string[];
    column?: string;
    linear?: boolean;
  };
  try {
    ({ positionals, values } = parseArgs({
      args: argv,
      allowPositionals: true,
      options: {
        in: { type: "string", multiple: true },
        out: { type: "string" },
        labels: { type: "string", multiple: true },
        column: { type: "string" },
        linear: { type: "boolean" },
      },
    }));
  } catch (err) {
    throw new UsageError(err instanceof Error ? err.message : String(err));
  }

  if (positionals.length !== 1) {
    throw new UsageError("expected exactly one plot kind");
  }
  const kind = positionals[0]!;
  if (!(KINDS as readonly string[]).includes(kind)) {
    throw new UsageError(`unknown kind '${kind}'`);
  }
  const files = values.in ?? [];
  if (files.length === 0) throw new UsageError("--in requires at least one csv");
  const out = values.out;
  if (!out) throw new UsageError("--out is required");
  if (values.labels && values.labels.length !== files.length) {
    throw new UsageError(`got ${values.labels.length} labels for ${files.length} inputs`);
  }
  if ((values.column !== undefined || values.linear) && kind !== "drift") {
    throw new UsageError("--column and --linear only apply to drift");
  }

  const opts = { out, labels: values.labels };
  switch (kind as Kind) {
    case "drift":
      return plotDrift(files, { ...opts, column: values.column, linearY: values.linear });
    case "trajectory3d":
      return plotTrajectory3d(files, opts);
    case "global-error":
      return plotGlobalError(files, opts);
    case "convergence":
      return plotConvergence(files, opts);
  }
}

const entry = process.argv[1];
if (entry && import.meta.url === pathToFileURL(realpathSync(entry)).href) {
  process.exit(main(process.argv.slice(2)));
}
