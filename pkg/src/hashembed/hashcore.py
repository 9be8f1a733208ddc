"""Core n-gram pooling hash: seeds, signatures, partitioning, projection, pooling.

Every function here is a pure function of its arguments; the module holds no
state. Integer work is exact (int64 where products cannot overflow, Python
ints otherwise). Floating point enters only at the final bound division and
the row pooling, both in double precision with a fixed evaluation order, so
equal inputs give bit-identical outputs on every platform.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import InvalidConfig, InvalidToken

_MASK64 = (1 << 64) - 1

# Largest modulus whose pairwise products of residues still fit in int64.
# Above this, signature/seed products fall back to exact Python integers.
INT64_SAFE_BUCKET = 3_037_000_499

DEFAULT_DIM = 768
DEFAULT_MAX_NGRAM = 3
DEFAULT_BUCKET = 1_000_000_007
DEFAULT_ROLLING_BASE = 257


class ShortTokenPolicy(Enum):
    """What to emit for n-gram size i when a token has no i-byte windows."""

    ZERO_FILL = "zero_fill"


@dataclass(frozen=True)
class HashConfig:
    """All hyperparameters of the embedding hash.

    Two configs with equal fields produce bit-identical embeddings for every
    token; everything downstream (seeds, signatures, masks) derives from
    these fields alone.
    """

    d: int = DEFAULT_DIM
    N: int = DEFAULT_MAX_NGRAM
    B: int = DEFAULT_BUCKET
    random_state: int = 0
    rolling_base: int = DEFAULT_ROLLING_BASE
    short_token_policy: ShortTokenPolicy = ShortTokenPolicy.ZERO_FILL
    pad_token_zero: bool = False
    pad_token: str = "[PAD]"
    strip_wordpiece_prefix: bool = False

    def __post_init__(self) -> None:
        if self.d < 1:
            raise InvalidConfig(f"d must be >= 1, got {self.d}")
        if self.N < 1:
            raise InvalidConfig(f"N must be >= 1, got {self.N}")
        if self.d < self.N:
            raise InvalidConfig(f"d must be >= N, got d={self.d}, N={self.N}")
        if self.B < 2:
            raise InvalidConfig(f"B must be >= 2, got {self.B}")
        if self.rolling_base < 2:
            raise InvalidConfig(f"rolling_base must be >= 2, got {self.rolling_base}")
        if not 0 <= self.random_state <= _MASK64:
            raise InvalidConfig("random_state must fit in 64 unsigned bits")


def splitmix64(x: int) -> int:
    """SplitMix64 finalizer of a 64-bit value (wrapping arithmetic)."""
    z = (x + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def generate_hash_seeds(random_state: int, d: int, B: int) -> np.ndarray:
    """Derive the d hash seeds, each in [0, B).

    Seed j is splitmix64(random_state + j) mod B: counter-based, stateless,
    and reproducible from the single random_state integer.
    """
    if d < 1:
        raise InvalidConfig(f"d must be >= 1, got {d}")
    if B < 2:
        raise InvalidConfig(f"B must be >= 2, got {B}")
    if B <= INT64_SAFE_BUCKET:
        ctr = (np.uint64(random_state & _MASK64) + np.arange(d, dtype=np.uint64)
               + np.uint64(0x9E3779B97F4A7C15))
        z = (ctr ^ (ctr >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
        z = z ^ (z >> np.uint64(31))
        return (z % np.uint64(B)).astype(np.int64)
    seeds = [splitmix64((random_state + j) & _MASK64) % B for j in range(d)]
    return np.array(seeds, dtype=object)


def window_signature(window: bytes, rolling_base: int, B: int) -> int:
    """Polynomial hash of one window: sum of byte_j * base^(i-j) mod B."""
    sig = 0
    for c in window:
        sig = (sig * rolling_base + c) % B
    return sig


def ngram_signatures(token_bytes: bytes, i: int, rolling_base: int = DEFAULT_ROLLING_BASE,
                     B: int = DEFAULT_BUCKET) -> np.ndarray:
    """Rolling-hash signatures of all i-byte windows, left to right.

    Returns k = max(len - i + 1, 0) values in [0, B). The first window is
    evaluated directly; each following window rolls the leading byte out and
    the next byte in, which is exactly equivalent to direct evaluation
    because every step stays reduced mod B.
    """
    if not token_bytes:
        raise InvalidToken("cannot hash an empty token")
    if i < 1:
        raise InvalidConfig(f"n-gram size must be >= 1, got {i}")
    k = len(token_bytes) - i + 1
    dtype = np.int64 if B <= INT64_SAFE_BUCKET else object
    if k <= 0:
        return np.empty(0, dtype=dtype)
    top = pow(rolling_base, i - 1, B)
    sig = window_signature(token_bytes[:i], rolling_base, B)
    out = [sig]
    for j in range(1, k):
        sig = ((sig - token_bytes[j - 1] * top) * rolling_base + token_bytes[j + i - 1]) % B
        out.append(sig)
    return np.array(out, dtype=dtype)


def partition_dims(d: int, N: int) -> list[int]:
    """Split d into N non-decreasing widths, proportional to the n-gram size.

    With T = N(N+1)/2, width i is floor(d*i/T) for i < N and the remainder
    goes to the last slice, so larger n-gram sizes get at least their share.
    """
    if N < 1:
        raise InvalidConfig(f"N must be >= 1, got {N}")
    if d < N:
        raise InvalidConfig(f"d must be >= N, got d={d}, N={N}")
    total = N * (N + 1) // 2
    dims = [d * i // total for i in range(1, N)]
    dims.append(d - sum(dims))
    return dims


def bound_projection(products: np.ndarray, B: int) -> np.ndarray:
    """Map exact integer products into (-1, 1].

    Reduce mod B, recenter residues above B/2 by subtracting B, then scale
    by the real value B/2. The comparison uses 2p > B so odd B needs no
    rounding decision.
    """
    p = products % B
    p = np.where(2 * p > B, p - B, p)
    out = p / (B / 2.0)
    return out.astype(np.float64, copy=False)


def project_and_bound(signatures: np.ndarray, seed_slice: np.ndarray, B: int) -> np.ndarray:
    """Outer product of signatures and a seed slice, bounded into (-1, 1].

    Rows follow window order; row r is bound(signatures[r] * seed_slice).
    """
    return bound_projection(np.outer(signatures, seed_slice), B)


def pool_mean(bounded: np.ndarray) -> np.ndarray:
    """Column-wise mean of a bounded projection.

    Rows are accumulated one at a time in ascending window order so the
    result is reproducible bit for bit, whichever path produced the rows.
    """
    k = bounded.shape[0]
    if k < 1:
        raise InvalidConfig("cannot pool an empty projection")
    total = np.zeros(bounded.shape[1], dtype=np.float64)
    for r in range(k):
        total += bounded[r]
    return total / k
