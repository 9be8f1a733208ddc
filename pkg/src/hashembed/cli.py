"""Command-line front end: embed, export, verify, bench, selfcheck.

Exit codes are stable: 0 success, 1 configuration error, 2 input error,
3 I/O error, 4 verification mismatch or corrupt table.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import bench as benchmod
from . import hashcore, tablefile
from .embedder import Embedder
from .errors import (CacheDisabled, EmptyVocab, FormatError, InvalidConfig,
                     InvalidToken, MaskOverflow, VocabMismatch)
from .hashcore import HashConfig
from .vocab import load_vocab

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_INPUT = 2
EXIT_IO = 3
EXIT_VERIFY = 4


def _config_parent() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("hash configuration")
    g.add_argument("--dim", type=int, default=hashcore.DEFAULT_DIM,
                   help="embedding size d (default %(default)s)")
    g.add_argument("--max-ngram", type=int, default=hashcore.DEFAULT_MAX_NGRAM,
                   help="largest n-gram size N (default %(default)s)")
    g.add_argument("--bucket", type=int, default=hashcore.DEFAULT_BUCKET,
                   help="bucket size B (default %(default)s)")
    g.add_argument("--seed", type=int, default=0,
                   help="random state for seed generation (default %(default)s)")
    g.add_argument("--base", type=int, default=hashcore.DEFAULT_ROLLING_BASE,
                   help="rolling-hash base (default %(default)s)")
    g.add_argument("--pad-token-zero", action="store_true",
                   help="map the pad token to the all-zero vector")
    g.add_argument("--pad-token", default="[PAD]", help="pad token text")
    g.add_argument("--strip-wordpiece-prefix", action="store_true",
                   help="strip a leading '##' before hashing")
    return p


def _config_from_args(args) -> HashConfig:
    return HashConfig(d=args.dim, N=args.max_ngram, B=args.bucket,
                      random_state=args.seed, rolling_base=args.base,
                      pad_token_zero=args.pad_token_zero, pad_token=args.pad_token,
                      strip_wordpiece_prefix=args.strip_wordpiece_prefix)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hashembed",
        description="Deterministic dynamic token embeddings via n-gram pooling hashing.")
    sub = parser.add_subparsers(dest="command", required=True)
    cfg = _config_parent()

    p = sub.add_parser("embed", parents=[cfg],
                       help="embed tokens from arguments or stdin (one per line)")
    p.add_argument("tokens", nargs="*", help="tokens; stdin is read when omitted")
    p.add_argument("--cache-capacity", type=int, default=None,
                   help="enable the n-gram row cache with this entry count")
    p.add_argument("--sparse-s", type=int, default=None,
                   help="use the sparse path with s ones per mask row")
    p.add_argument("--k-max", type=int, default=64,
                   help="sparse mask window slots per n-gram size (default %(default)s)")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("export", parents=[cfg],
                       help="materialize the vocabulary's embedding table")
    p.add_argument("vocab", help="vocabulary file, one token per line")
    p.add_argument("out", help="output table path")
    p.add_argument("--text", action="store_true", help="write TSV text instead of binary")
    p.add_argument("--workers", type=int, default=None, help="row computation threads")
    p.add_argument("--json", action="store_true", help="print the summary as JSON")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("verify", parents=[cfg],
                       help="recompute a binary table and compare bit-exactly")
    p.add_argument("table", help="binary table path")
    p.add_argument("vocab", help="vocabulary the table was exported from")
    p.add_argument("--json", action="store_true", help="print the report as JSON")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", parents=[cfg], help="latency / cache-effectiveness harness")
    p.add_argument("--corpus", default=None, help="corpus file of whitespace-separated tokens")
    p.add_argument("--synthetic", choices=("zipf", "uniform"), default=None,
                   help="generate a synthetic corpus with this token distribution")
    p.add_argument("--tokens", type=int, default=10_000, help="synthetic corpus size")
    p.add_argument("--vocab-size", type=int, default=benchmod.DEFAULT_VOCAB_SIZE,
                   help="synthetic vocabulary size (default %(default)s)")
    p.add_argument("--corpus-seed", type=int, default=0, help="synthetic corpus seed")
    p.add_argument("--mode", action="append", choices=benchmod.MODES, default=None,
                   help="benchmark mode; repeat for several rows (default: dynamic)")
    p.add_argument("--warmup", type=int, default=1, help="untimed warmup passes")
    p.add_argument("--iters", type=int, default=3, help="timed measurement passes")
    p.add_argument("--cache-capacity", type=int, default=4096,
                   help="cache entries for dynamic+cache (default %(default)s)")
    p.add_argument("--sparse-s", type=int, default=16,
                   help="mask ones per row for dynamic+sparse (default %(default)s)")
    p.add_argument("--workers", type=int, default=None,
                   help="time embed_batch with this many threads instead")
    p.add_argument("--format", choices=("json", "table"), default="table",
                   help="report format (default %(default)s)")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("selfcheck", help="run the embedded invariant suite")
    p.set_defaults(func=cmd_selfcheck)
    return parser


def cmd_embed(args) -> int:
    config = _config_from_args(args)
    tokens = args.tokens if args.tokens else [line.rstrip("\r\n") for line in sys.stdin]
    if not tokens:
        raise InvalidToken("no tokens given")
    embedder = Embedder(config, cache_capacity=args.cache_capacity,
                        sparse_s=args.sparse_s, k_max=args.k_max)
    embed = embedder.embed_token_sparse if args.sparse_s is not None else embedder.embed_token
    for tok in tokens:
        row = embed(tok).astype(np.float32)
        sys.stdout.write(tok + "\t" + tablefile.format_row(row) + "\n")
    return EXIT_OK


def cmd_export(args) -> int:
    config = _config_from_args(args)
    vocab = load_vocab(args.vocab)
    if args.text:
        summary = tablefile.export_text(vocab, config, args.out)
    else:
        summary = tablefile.export_table(vocab, config, args.out, n_workers=args.workers)
    if args.json:
        print(json.dumps(summary))
    else:
        print(f"exported V={summary['V']} d={summary['d']} "
              f"parameter_count={summary['parameter_count']} -> {summary['path']}")
    return EXIT_OK


def cmd_verify(args) -> int:
    vocab = load_vocab(args.vocab)
    report = tablefile.verify_table(args.table, vocab)
    if args.json:
        print(json.dumps(report))
    else:
        print(f"rows_checked={report['rows_checked']} "
              f"mismatches={len(report['mismatches'])}")
    return EXIT_OK if not report["mismatches"] else EXIT_VERIFY


def cmd_bench(args) -> int:
    config = _config_from_args(args)
    if args.corpus is not None:
        spec = benchmod.CorpusSpec(source="file", path=args.corpus)
    else:
        spec = benchmod.CorpusSpec(source="synthetic",
                                   distribution=args.synthetic or "zipf",
                                   token_count=args.tokens, vocab_size=args.vocab_size,
                                   seed=args.corpus_seed)
    modes = args.mode or ["dynamic"]
    reports = [benchmod.run_bench(spec, config, mode=m, warmup_iters=args.warmup,
                                  measure_iters=args.iters,
                                  cache_capacity=args.cache_capacity,
                                  sparse_s=args.sparse_s, workers=args.workers)
               for m in modes]
    print(benchmod.emit_report(reports[0] if len(reports) == 1 else reports, args.format))
    return EXIT_OK


def _random_tokens(count: int, seed: int, max_bytes: int = 32) -> list[str]:
    """Deterministic UTF-8-safe tokens with byte lengths in [1, max_bytes]."""
    ascii_pool = ("abcdefghijklmnopqrstuvwxyz"
                  "ABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_##-.!?")
    wide_pool = "éñüßæ中日한🙂"
    rng = np.random.default_rng(seed)
    tokens = []
    for _ in range(count):
        target = int(rng.integers(1, max_bytes + 1))
        parts: list[str] = []
        size = 0
        while size < target:
            if rng.random() < 0.15:
                ch = wide_pool[int(rng.integers(0, len(wide_pool)))]
                if size + len(ch.encode("utf-8")) > target:
                    ch = ascii_pool[int(rng.integers(0, len(ascii_pool)))]
            else:
                ch = ascii_pool[int(rng.integers(0, len(ascii_pool)))]
            parts.append(ch)
            size += len(ch.encode("utf-8"))
        tokens.append("".join(parts))
    return tokens


def _check_partition_sums() -> str | None:
    for N in (1, 2, 3, 4, 8):
        for d in range(N, 4097 if N == 3 else 513):
            dims = hashcore.partition_dims(d, N)
            if sum(dims) != d:
                return f"sum(partition_dims({d},{N})) = {sum(dims)}"
            if any(a > b for a, b in zip(dims, dims[1:])):
                return f"partition_dims({d},{N}) not non-decreasing: {dims}"
    return None


def _check_boundedness() -> str | None:
    embedder = Embedder(HashConfig(d=768))
    for tok in _random_tokens(10_000, seed=7):
        vec = embedder.embed_token(tok)
        if not (np.all(vec > -1.0) and np.all(vec <= 1.0)):
            return f"components outside (-1, 1] for token {tok!r}"
    return None


def _check_multiset_invariance() -> str | None:
    embedder = Embedder(HashConfig(d=768))
    d1 = embedder.dims[0]
    ab, ba = embedder.embed_token("ab"), embedder.embed_token("ba")
    if ab[:d1].tobytes() != ba[:d1].tobytes():
        return "1-gram partitions of 'ab' and 'ba' differ"
    if ab.tobytes() == ba.tobytes():
        return "full vectors of 'ab' and 'ba' collide"
    return None


def _check_cache_transparency() -> str | None:
    config = HashConfig(d=256)
    plain = Embedder(config)
    cached = Embedder(config, cache_capacity=512)
    for tok in _random_tokens(500, seed=11):
        if plain.embed_token(tok).tobytes() != cached.embed_token(tok).tobytes():
            return f"cache changed output for token {tok!r}"
    return None


def _check_sparse_full_mask() -> str | None:
    config = HashConfig(d=768)
    dense = Embedder(config)
    sparse = Embedder(config, sparse_s=max(dense.dims), k_max=64)
    for tok in _random_tokens(200, seed=13):
        if dense.embed_token(tok).tobytes() != sparse.embed_token_sparse(tok).tobytes():
            return f"full-mask sparse output differs for token {tok!r}"
    return None


def cmd_selfcheck(args) -> int:
    checks = [
        ("partition-sums", _check_partition_sums),
        ("boundedness", _check_boundedness),
        ("multiset-invariance", _check_multiset_invariance),
        ("cache-transparency", _check_cache_transparency),
        ("sparse-full-mask", _check_sparse_full_mask),
    ]
    failed = 0
    for name, check in checks:
        detail = check()
        if detail is None:
            print(f"ok   {name}")
        else:
            failed += 1
            print(f"FAIL {name}: {detail}")
    return EXIT_OK if failed == 0 else 1


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InvalidConfig as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except (InvalidToken, EmptyVocab, MaskOverflow, CacheDisabled) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO
    except (FormatError, VocabMismatch) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
