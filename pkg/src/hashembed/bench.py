"""Embedding-stage latency and cache-effectiveness harness.

Times only the token -> vector computation; tokenization (and anything a
downstream model would do) stays outside the timed region. The table_lookup
mode pre-materializes the corpus vocabulary as a table and times indexed
reads, the O(1) baseline the dynamic path is compared against.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass

import numpy as np

from .embedder import Embedder
from .errors import InvalidConfig
from .hashcore import HashConfig

MODES = ("dynamic", "dynamic+cache", "dynamic+sparse", "table_lookup")

DEFAULT_VOCAB_SIZE = 10_000
DEFAULT_MEAN_TOKEN_LEN = 4.79
DEFAULT_ZIPF_EXPONENT = 1.0
_MAX_TOKEN_LEN = 16
_TOKENS_PER_LINE = 12

_ALPHABET = "abcdefghijklmnopqrstuvwxyz"


@dataclass(frozen=True)
class CorpusSpec:
    """Where benchmark tokens come from.

    source "file" reads whitespace-separated tokens (one sentence per line);
    source "synthetic" draws token_count tokens from a generated vocabulary
    under the given rank-frequency distribution.
    """

    source: str = "synthetic"
    path: str | None = None
    distribution: str = "zipf"
    token_count: int = 10_000
    mean_token_length: float = DEFAULT_MEAN_TOKEN_LEN
    vocab_size: int = DEFAULT_VOCAB_SIZE
    zipf_exponent: float = DEFAULT_ZIPF_EXPONENT
    seed: int = 0

    def __post_init__(self) -> None:
        if self.source not in ("file", "synthetic"):
            raise InvalidConfig(f"unknown corpus source {self.source!r}")
        if self.source == "file" and not self.path:
            raise InvalidConfig("corpus source 'file' needs a path")
        if self.distribution not in ("zipf", "uniform"):
            raise InvalidConfig(f"unknown distribution {self.distribution!r}")
        if self.token_count < 1:
            raise InvalidConfig("token_count must be >= 1")


def synthetic_vocabulary(size: int, mean_token_length: float = DEFAULT_MEAN_TOKEN_LEN,
                         seed: int = 0) -> list[str]:
    """Distinct lowercase tokens with roughly Poisson lengths around the mean."""
    rng = np.random.default_rng(seed)
    seen = set()
    vocab = []
    while len(vocab) < size:
        length = int(min(1 + rng.poisson(max(mean_token_length - 1.0, 0.0)), _MAX_TOKEN_LEN))
        tok = "".join(_ALPHABET[c] for c in rng.integers(0, len(_ALPHABET), size=length))
        if tok not in seen:
            seen.add(tok)
            vocab.append(tok)
    return vocab


def make_corpus(spec: CorpusSpec) -> list[list[str]]:
    """Sentences (lists of tokens) for a corpus spec."""
    if spec.source == "file":
        with open(spec.path, encoding="utf-8") as f:
            sentences = [line.split() for line in f]
        sentences = [s for s in sentences if s]
        if not sentences:
            raise InvalidConfig(f"{spec.path}: corpus has no tokens")
        return sentences
    vocab = synthetic_vocabulary(spec.vocab_size, spec.mean_token_length, spec.seed)
    rng = np.random.default_rng(spec.seed + 1)
    if spec.distribution == "zipf":
        weights = 1.0 / np.arange(1, spec.vocab_size + 1) ** spec.zipf_exponent
        weights /= weights.sum()
        draws = rng.choice(spec.vocab_size, size=spec.token_count, p=weights)
    else:
        draws = rng.integers(0, spec.vocab_size, size=spec.token_count)
    tokens = [vocab[i] for i in draws]
    return [tokens[i:i + _TOKENS_PER_LINE] for i in range(0, len(tokens), _TOKENS_PER_LINE)]


def write_corpus(sentences, path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        for sent in sentences:
            f.write(" ".join(sent) + "\n")


@dataclass(frozen=True)
class BenchReport:
    mode: str
    tokens_measured: int
    per_token_ns: dict
    per_sentence_ns_mean: float
    hit_rate: float | None
    config: dict
    corpus: dict
    warmup_iters: int
    measure_iters: int
    workers: int | None
    notes: str

    def to_dict(self) -> dict:
        out = {
            "mode": self.mode,
            "tokens_measured": self.tokens_measured,
            "per_token_ns": self.per_token_ns,
            "per_sentence_ns_mean": self.per_sentence_ns_mean,
            "config": self.config,
            "corpus": self.corpus,
            "warmup_iters": self.warmup_iters,
            "measure_iters": self.measure_iters,
            "notes": self.notes,
        }
        # Absent is meaningful: a report without a cache has no hit_rate at all.
        if self.hit_rate is not None:
            out["hit_rate"] = self.hit_rate
        if self.workers is not None:
            out["workers"] = self.workers
        return out


def _config_echo(config: HashConfig) -> dict:
    return {"d": config.d, "N": config.N, "B": config.B,
            "random_state": config.random_state, "rolling_base": config.rolling_base}


def _corpus_echo(spec: CorpusSpec) -> dict:
    out = {"source": spec.source, "token_count": spec.token_count}
    if spec.source == "file":
        out["path"] = spec.path
    else:
        out.update({"distribution": spec.distribution, "vocab_size": spec.vocab_size,
                    "mean_token_length": spec.mean_token_length,
                    "zipf_exponent": spec.zipf_exponent, "seed": spec.seed})
    return out


def _table_lookup_fn(tokens, config):
    vocab = sorted(set(tokens))
    embedder = Embedder(config)
    table = embedder.embed_batch(vocab).astype(np.float32)
    index = {tok: i for i, tok in enumerate(vocab)}
    return lambda tok: table[index[tok]]


def run_bench(corpus: CorpusSpec, config: HashConfig, mode: str = "dynamic",
              warmup_iters: int = 1, measure_iters: int = 3,
              cache_capacity: int = 4096, sparse_s: int = 16,
              k_max: int = 64, workers: int | None = None) -> BenchReport:
    """Embed the corpus warmup_iters times untimed, then measure_iters timed.

    Timed loops run on one thread unless workers is given, in which case each
    sentence is timed through embed_batch with that worker count.
    """
    if mode not in MODES:
        raise InvalidConfig(f"unknown mode {mode!r}, expected one of {MODES}")
    if measure_iters < 1:
        raise InvalidConfig("measure_iters must be >= 1")
    sentences = make_corpus(corpus)
    tokens = [tok for sent in sentences for tok in sent]

    embedder = None
    if mode == "dynamic":
        embedder = Embedder(config)
        fn = embedder.embed_token
    elif mode == "dynamic+cache":
        embedder = Embedder(config, cache_capacity=cache_capacity)
        fn = embedder.embed_token
    elif mode == "dynamic+sparse":
        embedder = Embedder(config, sparse_s=sparse_s, k_max=k_max)
        fn = embedder.embed_token_sparse
    else:
        fn = _table_lookup_fn(tokens, config)

    for _ in range(warmup_iters):
        for tok in tokens:
            fn(tok)

    per_token = []
    per_sentence = []
    for _ in range(measure_iters):
        for sent in sentences:
            if workers is not None and mode != "table_lookup":
                t0 = time.perf_counter_ns()
                embedder.embed_batch(sent, n_workers=workers)
                dt = time.perf_counter_ns() - t0
                per_token.extend([dt / len(sent)] * len(sent))
                per_sentence.append(dt)
            else:
                total = 0
                for tok in sent:
                    t0 = time.perf_counter_ns()
                    fn(tok)
                    dt = time.perf_counter_ns() - t0
                    per_token.append(dt)
                    total += dt
                per_sentence.append(total)

    samples = np.asarray(per_token, dtype=np.float64)
    hit_rate = embedder.cache_stats().hit_rate if mode == "dynamic+cache" else None
    notes = ("embedding-stage latency only; tokenization excluded; "
             "synthetic corpora use a generated vocabulary with rank-frequency "
             "sampling as echoed under 'corpus'")
    return BenchReport(
        mode=mode,
        tokens_measured=len(samples),
        per_token_ns={"mean": float(samples.mean()),
                      "median": float(np.median(samples)),
                      "p99": float(np.percentile(samples, 99))},
        per_sentence_ns_mean=float(np.mean(per_sentence)),
        hit_rate=hit_rate,
        config=_config_echo(config),
        corpus=_corpus_echo(corpus),
        warmup_iters=warmup_iters,
        measure_iters=measure_iters,
        workers=workers,
        notes=notes,
    )


def emit_report(reports, fmt: str = "json") -> str:
    """Render one report or a list of them as JSON or a fixed-width table."""
    single = isinstance(reports, BenchReport)
    items = [reports] if single else list(reports)
    if fmt == "json":
        payload = items[0].to_dict() if single else [r.to_dict() for r in items]
        return json.dumps(payload)
    if fmt != "table":
        raise InvalidConfig(f"unknown report format {fmt!r}")
    header = f"{'mode':<16} {'tokens':>8} {'mean_ns':>12} {'median_ns':>12} " \
             f"{'p99_ns':>12} {'sent_mean_ns':>14} {'hit_rate':>9}"
    lines = [header]
    for r in items:
        hr = f"{r.hit_rate:.4f}" if r.hit_rate is not None else "-"
        lines.append(f"{r.mode:<16} {r.tokens_measured:>8} "
                     f"{r.per_token_ns['mean']:>12.1f} {r.per_token_ns['median']:>12.1f} "
                     f"{r.per_token_ns['p99']:>12.1f} {r.per_sentence_ns_mean:>14.1f} {hr:>9}")
    return "\n".join(lines)
