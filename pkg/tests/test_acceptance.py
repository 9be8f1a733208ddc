"""Acceptance criteria, one test per criterion, exact tolerances pinned.

Each test prints a PASS line on success so the suite doubles as a checklist
when run with `pytest -v -s tests/test_acceptance.py`.
"""

import hashlib
import math

import numpy as np
import pytest

from hashembed import bench
from hashembed.bench import CorpusSpec, make_corpus, run_bench, synthetic_vocabulary
from hashembed.embedder import Embedder
from hashembed.hashcore import HashConfig, ngram_signatures
from hashembed.tablefile import export_table
from hashembed.vocab import VocabFile, save_vocab

from conftest import random_byte_strings, random_tokens, ref_signatures, run_cli

VOCAB_30522 = 30_522

# Trainable-parameter gaps between the baseline and embeddingless variants
# at vocabulary size 30,522: exactly V*d for each width.
EXPECTED_PARAMS = {768: 23_440_896, 256: 7_813_632, 128: 3_906_816}

# Regression fixture, frozen from the first computation (fsum-based cosine).
COS_RUNNING_RUNNER = 0.5609219187516433
COS_RUNNING_XQZWV = -0.016108848714899184


def _ok(name: str) -> None:
    print(f"PASS {name}")


@pytest.fixture(scope="module")
def full_vocab():
    return synthetic_vocabulary(VOCAB_30522, seed=42)


def test_parameter_count_identity(tmp_path, full_vocab):
    """Export of a 30,522-line vocab yields exactly V*d values per width."""
    vocab = VocabFile("mem", tuple(full_vocab))
    for d, expected in EXPECTED_PARAMS.items():
        out = tmp_path / f"table_{d}.bin"
        summary = export_table(vocab, HashConfig(d=d), out)
        assert summary["parameter_count"] == expected
        assert summary["V"] == VOCAB_30522 and summary["d"] == d
        assert out.stat().st_size == 40 + expected * 4
    _ok("parameter-count identity (d=768/256/128)")


def test_boundedness_suite():
    """10,000 random tokens at d in {128, 768}: every component in (-1, 1]."""
    tokens = random_tokens(10_000, seed=2024, max_bytes=32)
    for d in (128, 768):
        embedder = Embedder(HashConfig(d=d))
        for tok in tokens:
            vec = embedder.embed_token(tok)
            assert np.all(vec > -1.0) and np.all(vec <= 1.0), f"d={d} token={tok!r}"
    _ok("boundedness over 10,000 random tokens at d=128 and d=768")


def test_export_determinism_across_processes(tmp_path):
    """Two separate CLI invocations produce byte-identical table files."""
    vocab_path = tmp_path / "vocab.txt"
    save_vocab(synthetic_vocabulary(1000, seed=7), vocab_path)
    digests = []
    for name in ("a.bin", "b.bin"):
        out = tmp_path / name
        result = run_cli("export", str(vocab_path), str(out), "--dim", "256",
                         "--seed", "0")
        assert result.returncode == 0, result.stderr
        digests.append(hashlib.sha256(out.read_bytes()).hexdigest())
    assert digests[0] == digests[1]
    _ok("export determinism across processes (sha256 equal)")


def test_oracle_equivalence_rolling_vs_direct():
    """Rolling signatures equal direct polynomial evaluation, 1,000 strings."""
    for token in random_byte_strings(1000, seed=77, max_len=32):
        for i in (1, 2, 3):
            got = [int(s) for s in ngram_signatures(token, i)]
            assert got == ref_signatures(token, i, 257, 1_000_000_007)
    _ok("oracle equivalence: rolling == direct polynomial (1,000 x i in {1,2,3})")


def test_multiset_invariance():
    """Unigram partitions of 'ab' and 'ba' agree bit-exactly; full vectors differ."""
    embedder = Embedder(HashConfig(d=768))
    d1 = embedder.dims[0]
    ab, ba = embedder.embed_token("ab"), embedder.embed_token("ba")
    assert ab[:d1].tobytes() == ba[:d1].tobytes()
    assert ab.tobytes() != ba.tobytes()
    _ok("multiset invariance: e_1('ab') == e_1('ba'), full vectors differ")


def test_cache_transparency_and_zipf_advantage():
    """Cache never changes bits; Zipf traffic out-hits uniform at equal capacity."""
    config = HashConfig(d=128)
    zipf_tokens = [t for s in make_corpus(CorpusSpec(distribution="zipf",
                                                     token_count=10_000, seed=11)) for t in s]
    uniform_tokens = [t for s in make_corpus(CorpusSpec(distribution="uniform",
                                                        token_count=10_000, seed=11)) for t in s]
    plain = Embedder(config)
    cached = Embedder(config, cache_capacity=1024)
    base = plain.embed_batch(zipf_tokens)
    with_cache = cached.embed_batch(zipf_tokens)
    assert base.tobytes() == with_cache.tobytes()
    zipf_rate = cached.cache_stats().hit_rate

    uniform_cached = Embedder(config, cache_capacity=1024)
    uniform_cached.embed_batch(uniform_tokens)
    uniform_rate = uniform_cached.cache_stats().hit_rate
    assert zipf_rate > uniform_rate
    _ok(f"cache transparency + Zipf hit rate {zipf_rate:.3f} > uniform {uniform_rate:.3f}")


def test_sparse_full_mask_agreement():
    """Full mask (s = d_i for every partition) matches dense bit-exactly."""
    config = HashConfig(d=768)
    dense = Embedder(config)
    sparse = Embedder(config, sparse_s=max(dense.dims), k_max=64)
    for tok in random_tokens(1000, seed=31, max_bytes=32):
        assert (dense.embed_token(tok).tobytes()
                == sparse.embed_token_sparse(tok).tobytes()), repr(tok)
    _ok("sparse full-mask agreement on 1,000 tokens")


def test_latency_ordering():
    """Median per-token latency: d=768 > d=128, and dynamic > table lookup."""
    spec = CorpusSpec(distribution="zipf", token_count=2000, vocab_size=2000, seed=13)
    medians = {}
    for d in (128, 768):
        runs = sorted(run_bench(spec, HashConfig(d=d), mode="dynamic",
                                warmup_iters=1, measure_iters=1).per_token_ns["median"]
                      for _ in range(5))
        medians[d] = runs[2]
    lut_runs = sorted(run_bench(spec, HashConfig(d=128), mode="table_lookup",
                                warmup_iters=1, measure_iters=1).per_token_ns["median"]
                      for _ in range(5))
    assert medians[768] > medians[128]
    assert medians[128] > lut_runs[2]
    _ok(f"latency ordering: {medians[768]:.0f}ns (d=768) > {medians[128]:.0f}ns "
        f"(d=128) > {lut_runs[2]:.0f}ns (lookup)")


def test_morphology_fixture():
    """Shared-window tokens stay closer than unrelated ones; values frozen."""
    embedder = Embedder(HashConfig(d=768))

    def cosine(x, y):
        dot = math.fsum(a * b for a, b in zip(x, y))
        nx = math.sqrt(math.fsum(a * a for a in x))
        ny = math.sqrt(math.fsum(b * b for b in y))
        return dot / (nx * ny)

    running = embedder.embed_token("running")
    close = cosine(running, embedder.embed_token("runner"))
    far = cosine(running, embedder.embed_token("xqzwv"))
    assert close > far
    assert abs(close - COS_RUNNING_RUNNER) < 1e-12
    assert abs(far - COS_RUNNING_XQZWV) < 1e-12
    _ok(f"morphology fixture: cos(running,runner)={close:.6f} > cos(running,xqzwv)={far:.6f}")
