/** Hash parameters mirrored from the backing CLI's flags. */
export interface HashOptions {
  dim?: number;
  maxNgram?: number;
  bucket?: number | bigint;
  seed?: number | bigint;
  base?: number;
  padTokenZero?: boolean;
  padToken?: string;
  stripWordpiecePrefix?: boolean;
}

export interface ResolvedHashOptions {
  dim: number;
  maxNgram: number;
  bucket: bigint;
  seed: bigint;
  base: number;
  padTokenZero: boolean;
  padToken: string;
  stripWordpiecePrefix: boolean;
}

export const DEFAULTS: ResolvedHashOptions = {
  dim: 768,
  maxNgram: 3,
  bucket: 1_000_000_007n,
  seed: 0n,
  base: 257,
  padTokenZero: false,
  padToken: "[PAD]",
  stripWordpiecePrefix: false,
};

export function resolveOptions(options: HashOptions = {}): ResolvedHashOptions {
  return {
    dim: options.dim ?? DEFAULTS.dim,
    maxNgram: options.maxNgram ?? DEFAULTS.maxNgram,
    bucket: BigInt(options.bucket ?? DEFAULTS.bucket),
    seed: BigInt(options.seed ?? DEFAULTS.seed),
    base: options.base ?? DEFAULTS.base,
    padTokenZero: options.padTokenZero ?? DEFAULTS.padTokenZero,
    padToken: options.padToken ?? DEFAULTS.padToken,
    stripWordpiecePrefix: options.stripWordpiecePrefix ?? DEFAULTS.stripWordpiecePrefix,
  };
}

/** Flag list understood by every CLI subcommand. */
export function toCliFlags(config: ResolvedHashOptions): string[] {
  const flags = [
    "--dim", String(config.dim),
    "--max-ngram", String(config.maxNgram),
    "--bucket", config.bucket.toString(),
    "--seed", config.seed.toString(),
    "--base", String(config.base),
    "--pad-token", config.padToken,
  ];
  if (config.padTokenZero) flags.push("--pad-token-zero");
  if (config.stripWordpiecePrefix) flags.push("--strip-wordpiece-prefix");
  return flags;
}
