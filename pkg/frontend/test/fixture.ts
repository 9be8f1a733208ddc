import fs from "node:fs";
import os from "node:os";
import path from "node:path";

import type { RunnerOptions } from "../src/runner.js";

/** Runner pointed at the repo checkout so tests need no installed package. */
export const RUNNER: RunnerOptions = {
  pythonBin: process.env.HASHEMBED_PYTHON ?? "python3",
  pythonPath: path.resolve(__dirname, "..", "..", "..", "src"),
};

const STEMS = ["run", "walk", "jump", "read", "write", "code", "test", "hash",
               "seed", "gram", "pool", "bound", "token", "vocab", "table",
               "cache", "mask", "bench", "embed", "layer"];
const SUFFIXES = ["", "##ing", "##er", "##ed", "##s"];

/** 100 distinct WordPiece-style tokens, deterministic by construction. */
export function fixtureVocabulary(): string[] {
  const tokens: string[] = [];
  for (const stem of STEMS) {
    for (const suffix of SUFFIXES) {
      tokens.push(suffix === "" ? stem : suffix.replace("##", "##" + stem.slice(0, 2)));
    }
  }
  // suffix piece names collide across stems; disambiguate and keep 100 entries
  const seen = new Set<string>();
  const unique: string[] = [];
  for (const [i, tok] of tokens.entries()) {
    const candidate = seen.has(tok) ? `${tok}${i}` : tok;
    seen.add(candidate);
    unique.push(candidate);
  }
  if (unique.length !== 100 || new Set(unique).size !== 100) {
    throw new Error("fixture vocabulary must hold 100 distinct tokens");
  }
  return unique;
}

export function makeTempDir(): string {
  return fs.mkdtempSync(path.join(os.tmpdir(), "hashembed-test-"));
}

export function writeVocab(dir: string, tokens: string[]): string {
  const vocabPath = path.join(dir, "vocab.txt");
  fs.writeFileSync(vocabPath, tokens.map((t) => t + "\n").join(""));
  return vocabPath;
}
