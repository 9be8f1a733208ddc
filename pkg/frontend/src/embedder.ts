import fs from "node:fs";
import os from "node:os";
import path from "node:path";

import { HashOptions, ResolvedHashOptions, resolveOptions, toCliFlags } from "./config.js";
import { RunnerOptions, runCli } from "./runner.js";
import { Table, readTable } from "./tablefile.js";

export interface ExportSummary {
  V: number;
  d: number;
  parameter_count: number;
  path: string;
}

export interface VerifyReport {
  rows_checked: number;
  mismatches: number[];
}

/** Row-major matrix handed over as one contiguous typed array. */
export interface EmbeddingMatrix {
  data: Float32Array;
  rows: number;
  cols: number;
}

function assertSingleLine(token: string): void {
  if (/[\r\n]/.test(token)) {
    throw new RangeError(`token must not contain line breaks: ${JSON.stringify(token)}`);
  }
}

/**
 * Embedder and exporter bound to the hashembed CLI.
 *
 * Every value comes from the backing implementation over its public
 * interfaces (the CLI's TSV output and the binary table format), so outputs
 * here are bit-identical to direct CLI use with the same configuration.
 */
export class BoundEmbedder {
  readonly config: ResolvedHashOptions;
  private readonly runner: RunnerOptions;
  private readonly flags: string[];

  constructor(options: HashOptions = {}, runner: RunnerOptions = {}) {
    this.config = resolveOptions(options);
    this.runner = runner;
    this.flags = toCliFlags(this.config);
  }

  /** Embedding of one token as parsed float64 values, length dim. */
  embed(token: string): Float64Array {
    return this.embedLines([token])[0];
  }

  /** One embedding per token, computed in a single CLI invocation. */
  embedLines(tokens: string[]): Float64Array[] {
    if (tokens.length === 0) return [];
    for (const tok of tokens) assertSingleLine(tok);
    const stdout = runCli(["embed", ...this.flags], this.runner,
                          tokens.map((t) => t + "\n").join(""));
    const lines = stdout.toString("utf-8").split("\n").filter((ln) => ln.length > 0);
    if (lines.length !== tokens.length) {
      throw new Error(`expected ${tokens.length} embedding lines, got ${lines.length}`);
    }
    return lines.map((line) => {
      // The token itself may contain tabs; the final dim fields are the floats.
      const fields = line.split("\t");
      const values = fields.slice(fields.length - this.config.dim).map(Number);
      return Float64Array.from(values);
    });
  }

  /**
   * Contiguous float32 matrix for a token batch, row t = embed(tokens[t]).
   *
   * Routed through the binary table format, so the values are exactly the
   * float32 payload the exporter writes, ready for zero-copy handoff.
   */
  embedBatch(tokens: string[]): EmbeddingMatrix {
    if (tokens.length === 0) {
      return { data: new Float32Array(0), rows: 0, cols: this.config.dim };
    }
    for (const tok of tokens) assertSingleLine(tok);
    const dir = fs.mkdtempSync(path.join(os.tmpdir(), "hashembed-"));
    try {
      const vocabPath = path.join(dir, "vocab.txt");
      const tablePath = path.join(dir, "table.bin");
      fs.writeFileSync(vocabPath, tokens.map((t) => t + "\n").join(""));
      this.exportTable(vocabPath, tablePath);
      const table = readTable(tablePath);
      // Detach from the temp file's buffer before the directory goes away.
      return { data: table.data.slice(), rows: table.header.V, cols: table.header.d };
    } finally {
      fs.rmSync(dir, { recursive: true, force: true });
    }
  }

  /** Export the binary table for a vocabulary file. */
  exportTable(vocabPath: string, outPath: string): ExportSummary {
    const stdout = runCli(["export", vocabPath, outPath, "--json", ...this.flags],
                          this.runner);
    return JSON.parse(stdout.toString("utf-8")) as ExportSummary;
  }

  /** Export the TSV table (token, then dim floats per line). */
  exportText(vocabPath: string, outPath: string): ExportSummary {
    const stdout = runCli(["export", vocabPath, outPath, "--text", "--json", ...this.flags],
                          this.runner);
    return JSON.parse(stdout.toString("utf-8")) as ExportSummary;
  }

  /** Bit-exact re-verification of a previously exported binary table. */
  verifyTable(tablePath: string, vocabPath: string): VerifyReport {
    const stdout = runCli(["verify", tablePath, vocabPath, "--json"], this.runner);
    return JSON.parse(stdout.toString("utf-8")) as VerifyReport;
  }

  /** Load a binary table from disk. */
  readTable(tablePath: string): Table {
    return readTable(tablePath);
  }
}
