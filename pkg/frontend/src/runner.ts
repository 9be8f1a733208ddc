import { spawnSync } from "node:child_process";
import path from "node:path";

/** How to reach the backing Python CLI. */
export interface RunnerOptions {
  /** Python interpreter, default "python3". */
  pythonBin?: string;
  /** Extra PYTHONPATH entry, for running against an uninstalled checkout. */
  pythonPath?: string;
}

const EXIT_KINDS: Record<number, string> = {
  1: "config",
  2: "input",
  3: "io",
  4: "verify",
};

/** A nonzero exit from the backing CLI, carrying its exit-code taxonomy. */
export class CliError extends Error {
  readonly exitCode: number;
  readonly kind: string;
  readonly stderr: string;

  constructor(exitCode: number, stderr: string) {
    const kind = EXIT_KINDS[exitCode] ?? "unknown";
    super(`hashembed CLI failed (${kind}, exit ${exitCode}): ${stderr.trim()}`);
    this.name = "CliError";
    this.exitCode = exitCode;
    this.kind = kind;
    this.stderr = stderr;
  }
}

/** Run one CLI subcommand; stdout comes back as raw bytes. */
export function runCli(args: string[], options: RunnerOptions = {},
                       input?: string): Buffer {
  const env = { ...process.env };
  if (options.pythonPath) {
    env.PYTHONPATH = options.pythonPath +
      (env.PYTHONPATH ? path.delimiter + env.PYTHONPATH : "");
  }
  const result = spawnSync(options.pythonBin ?? "python3", ["-m", "hashembed", ...args], {
    input,
    env,
    maxBuffer: 1 << 28,
  });
  if (result.error) throw result.error;
  if (result.status !== 0) {
    throw new CliError(result.status ?? -1, result.stderr.toString("utf-8"));
  }
  return result.stdout;
}
