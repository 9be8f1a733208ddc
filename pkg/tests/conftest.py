"""Shared test helpers: independent reference oracles and token generators.

The oracles here are deliberately written from scratch (direct polynomial
evaluation, a standalone SplitMix64) so they stay independent of the code
paths they check.
"""

import os
import random
import subprocess
import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[1]
SRC = ROOT / "src"

MASK64 = (1 << 64) - 1

_ASCII = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789-_.!#?"
_WIDE = ["é", "ñ", "ß", "中", "日", "🙂"]


def ref_splitmix64(x: int) -> int:
    """Reference SplitMix64 finalizer, kept separate from the implementation."""
    z = (x + 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def ref_polynomial(window: bytes, base: int, mod: int) -> int:
    """Direct polynomial evaluation: sum of byte_j * base^(i-j), no rolling."""
    i = len(window)
    return sum(c * pow(base, i - 1 - j, mod) for j, c in enumerate(window)) % mod


def ref_signatures(token: bytes, i: int, base: int, mod: int) -> list[int]:
    k = len(token) - i + 1
    return [ref_polynomial(token[j:j + i], base, mod) for j in range(max(k, 0))]


def random_tokens(count: int, seed: int, max_bytes: int = 32) -> list[str]:
    """UTF-8-safe tokens with byte lengths in [1, max_bytes], deterministic."""
    rnd = random.Random(seed)
    tokens = []
    for _ in range(count):
        target = rnd.randint(1, max_bytes)
        parts, size = [], 0
        while size < target:
            ch = rnd.choice(_WIDE) if rnd.random() < 0.2 else rnd.choice(_ASCII)
            nbytes = len(ch.encode("utf-8"))
            if size + nbytes > target:
                ch = rnd.choice(_ASCII)
                nbytes = 1
            parts.append(ch)
            size += nbytes
        tokens.append("".join(parts))
    return tokens


def random_byte_strings(count: int, seed: int, max_len: int = 32) -> list[bytes]:
    rnd = random.Random(seed)
    return [bytes(rnd.randrange(256) for _ in range(rnd.randint(1, max_len)))
            for _ in range(count)]


def run_cli(*argv: str, input_text: str | None = None) -> subprocess.CompletedProcess:
    """Run the CLI in a fresh interpreter, capturing raw stdout/stderr bytes."""
    env = dict(os.environ)
    env["PYTHONPATH"] = str(SRC) + os.pathsep + env.get("PYTHONPATH", "")
    return subprocess.run(
        [sys.executable, "-m", "hashembed", *argv],
        input=input_text.encode("utf-8") if input_text is not None else None,
        capture_output=True, env=env, cwd=ROOT)


@pytest.fixture
def tiny_vocab(tmp_path):
    path = tmp_path / "vocab.txt"
    path.write_text("run\n##ing\nrunner\n[PAD]\nxqzwv\n", encoding="utf-8")
    return path
