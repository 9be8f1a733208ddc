export { BoundEmbedder } from "./embedder.js";
export type { EmbeddingMatrix, ExportSummary, VerifyReport } from "./embedder.js";
export { DEFAULTS, resolveOptions, toCliFlags } from "./config.js";
export type { HashOptions, ResolvedHashOptions } from "./config.js";
export { CliError, runCli } from "./runner.js";
export type { RunnerOptions } from "./runner.js";
export { HEADER_SIZE, TableFormatError, readTable } from "./tablefile.js";
export type { Table, TableHeader } from "./tablefile.js";
