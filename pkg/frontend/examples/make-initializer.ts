// Produce embedding-layer initializer tables (binary + TSV) for a
// WordPiece vocabulary file.
//
//   node dist/examples/make-initializer.js vocab.txt outdir [dim]

import fs from "node:fs";
import path from "node:path";

import { BoundEmbedder } from "../src/index.js";

function main(): number {
  const [vocabPath, outDir, dimArg] = process.argv.slice(2);
  if (!vocabPath || !outDir) {
    console.error("usage: make-initializer <vocab.txt> <outdir> [dim]");
    return 1;
  }
  fs.mkdirSync(outDir, { recursive: true });
  const embedder = new BoundEmbedder({ dim: dimArg ? Number(dimArg) : 128 });

  const binPath = path.join(outDir, "embeddings.bin");
  const tsvPath = path.join(outDir, "embeddings.tsv");
  const summary = embedder.exportTable(vocabPath, binPath);
  embedder.exportText(vocabPath, tsvPath);

  const report = embedder.verifyTable(binPath, vocabPath);
  const { header, data } = embedder.readTable(binPath);
  console.log(`wrote ${binPath} and ${tsvPath}`);
  console.log(`V=${summary.V} d=${summary.d} parameters=${summary.parameter_count}`);
  console.log(`verify: ${report.rows_checked} rows, ${report.mismatches.length} mismatches`);
  console.log(`first row starts: ${Array.from(data.subarray(0, 4)).join(", ")} ` +
              `(seed ${header.randomState}, B ${header.B})`);
  return report.mismatches.length === 0 ? 0 : 4;
}

process.exitCode = main();
