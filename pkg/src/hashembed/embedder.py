"""Token- and batch-level embedding API over the hash core.

An Embedder is immutable after construction and safe for concurrent use.
The optional n-gram row cache is pure memoization: it can change timing,
never output bits. The optional sparse mask restricts each window's outer
product to a fixed set of seed columns.
"""

from __future__ import annotations

import threading
from collections import OrderedDict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import hashcore
from .errors import CacheDisabled, InvalidConfig, InvalidToken, MaskOverflow
from .hashcore import HashConfig

DEFAULT_K_MAX = 64


@dataclass(frozen=True)
class CacheStats:
    hits: int
    misses: int
    hit_rate: float


class NGramCache:
    """Thread-safe LRU cache of bounded projection rows.

    Keyed by (ngram size, window bytes); the value is the bounded row for
    that window against the matching seed slice. Lookup and store are
    serialized so eviction order and counters stay consistent under
    concurrent embedding.
    """

    def __init__(self, capacity: int):
        if capacity < 1:
            raise InvalidConfig(f"cache capacity must be >= 1, got {capacity}")
        self.capacity = capacity
        self._rows: OrderedDict[tuple[int, bytes], np.ndarray] = OrderedDict()
        self._lock = threading.Lock()
        self._hits = 0
        self._misses = 0

    def lookup(self, key: tuple[int, bytes]) -> np.ndarray | None:
        with self._lock:
            row = self._rows.get(key)
            if row is None:
                self._misses += 1
                return None
            self._rows.move_to_end(key)
            self._hits += 1
            return row

    def store(self, key: tuple[int, bytes], row: np.ndarray) -> None:
        row.flags.writeable = False
        with self._lock:
            if key not in self._rows and len(self._rows) >= self.capacity:
                self._rows.popitem(last=False)
            self._rows[key] = row
            self._rows.move_to_end(key)

    def stats(self) -> CacheStats:
        with self._lock:
            hits, misses = self._hits, self._misses
        total = hits + misses
        return CacheStats(hits, misses, hits / total if total else 0.0)


class SparseMask:
    """Fixed column selections per window slot, derived from the random state.

    For partition i, window slot j keeps min(s, d_i) distinct columns; all
    other columns of that row stay zero. Equal configs produce equal masks,
    so the sparse path is as deterministic as the dense one.
    """

    _STREAM_TAG = 0x53504152_53454D4B

    def __init__(self, s: int, k_max: int, columns: list[list[np.ndarray]]):
        self.s = s
        self.k_max = k_max
        self.columns = columns

    @classmethod
    def generate(cls, config: HashConfig, dims: list[int], s: int,
                 k_max: int = DEFAULT_K_MAX) -> "SparseMask":
        if s < 1:
            raise InvalidConfig(f"sparse mask needs s >= 1, got {s}")
        if k_max < 1:
            raise InvalidConfig(f"k_max must be >= 1, got {k_max}")
        base = hashcore.splitmix64((config.random_state + cls._STREAM_TAG) & 0xFFFFFFFFFFFFFFFF)
        columns: list[list[np.ndarray]] = []
        for pi, d_i in enumerate(dims):
            per_slot = []
            for j in range(k_max):
                slot_seed = hashcore.splitmix64(base ^ ((pi << 32) | j))
                per_slot.append(cls._sample_columns(slot_seed, d_i, min(s, d_i)))
            columns.append(per_slot)
        return cls(s, k_max, columns)

    @staticmethod
    def _sample_columns(slot_seed: int, d_i: int, m: int) -> np.ndarray:
        # Partial Fisher-Yates over [0, d_i) driven by a splitmix64 counter.
        cols = list(range(d_i))
        for t in range(m):
            r = t + hashcore.splitmix64(slot_seed + t) % (d_i - t)
            cols[t], cols[r] = cols[r], cols[t]
        return np.array(sorted(cols[:m]), dtype=np.intp)


class Embedder:
    """Deterministic embedding engine for one fixed HashConfig.

    Embeddings are a pure function of (token, config, sparse mask); there is
    no write path and no training. Instances may be shared freely across
    threads.
    """

    def __init__(self, config: HashConfig, cache_capacity: int | None = None,
                 sparse_s: int | None = None, k_max: int = DEFAULT_K_MAX):
        self.config = config
        self.seeds = hashcore.generate_hash_seeds(config.random_state, config.d, config.B)
        self.dims = hashcore.partition_dims(config.d, config.N)
        self._slices = []
        start = 0
        for d_i in self.dims:
            self._slices.append(self.seeds[start:start + d_i])
            start += d_i
        self.cache = NGramCache(cache_capacity) if cache_capacity is not None else None
        self.sparse = (SparseMask.generate(config, self.dims, sparse_s, k_max)
                       if sparse_s is not None else None)

    def _token_bytes(self, token: str) -> bytes | None:
        """UTF-8 bytes to hash, or None when the token maps to all zeros."""
        if self.config.pad_token_zero and token == self.config.pad_token:
            return None
        if self.config.strip_wordpiece_prefix and token.startswith("##"):
            token = token[2:]
        if not token:
            raise InvalidToken("cannot embed an empty token")
        return token.encode("utf-8")

    def embed_token(self, token: str) -> np.ndarray:
        """The d-dimensional embedding of one token, components in (-1, 1]."""
        cfg = self.config
        out = np.zeros(cfg.d, dtype=np.float64)
        data = self._token_bytes(token)
        if data is None:
            return out
        pos = 0
        for pi, d_i in enumerate(self.dims):
            i = pi + 1
            k = len(data) - i + 1
            if d_i > 0 and k > 0:
                # ShortTokenPolicy.ZERO_FILL leaves missing partitions at zero.
                out[pos:pos + d_i] = self._pooled_partition(data, i, self._slices[pi], k)
            pos += d_i
        return out

    def _pooled_partition(self, data: bytes, i: int, seed_slice: np.ndarray,
                          k: int) -> np.ndarray:
        cfg = self.config
        if self.cache is None:
            sigs = hashcore.ngram_signatures(data, i, cfg.rolling_base, cfg.B)
            rows = hashcore.project_and_bound(sigs, seed_slice, cfg.B)
            return hashcore.pool_mean(rows)
        total = np.zeros(len(seed_slice), dtype=np.float64)
        for j in range(k):
            window = data[j:j + i]
            row = self.cache.lookup((i, window))
            if row is None:
                sig = hashcore.window_signature(window, cfg.rolling_base, cfg.B)
                row = hashcore.bound_projection(sig * seed_slice, cfg.B)
                self.cache.store((i, window), row)
            total += row
        return total / k

    def embed_batch(self, tokens, n_workers: int | None = None) -> np.ndarray:
        """Embeddings for a token sequence, one row per token.

        Row t is bit-identical to embed_token(tokens[t]) whether rows are
        computed sequentially or by n_workers threads.
        """
        toks = list(tokens)
        for t, tok in enumerate(toks):
            if self._is_empty(tok):
                raise InvalidToken(f"empty token at index {t}")
        out = np.empty((len(toks), self.config.d), dtype=np.float64)
        if not toks:
            return out
        if n_workers is not None and n_workers > 1:
            with ThreadPoolExecutor(max_workers=n_workers) as pool:
                for t, row in enumerate(pool.map(self.embed_token, toks)):
                    out[t] = row
        else:
            for t, tok in enumerate(toks):
                out[t] = self.embed_token(tok)
        return out

    def _is_empty(self, token: str) -> bool:
        if self.config.pad_token_zero and token == self.config.pad_token:
            return False
        if self.config.strip_wordpiece_prefix and token.startswith("##"):
            token = token[2:]
        return not token

    def embed_token_sparse(self, token: str) -> np.ndarray:
        """Sparse-path embedding: each window fills only its masked columns.

        Unmasked columns contribute zero to the mean, so cost per window is
        O(s) instead of O(d_i). With a full mask this equals embed_token bit
        for bit.
        """
        if self.sparse is None:
            raise InvalidConfig("embedder was built without a sparse mask")
        cfg = self.config
        out = np.zeros(cfg.d, dtype=np.float64)
        data = self._token_bytes(token)
        if data is None:
            return out
        pos = 0
        for pi, d_i in enumerate(self.dims):
            i = pi + 1
            k = len(data) - i + 1
            if k > self.sparse.k_max:
                raise MaskOverflow(
                    f"token yields {k} {i}-gram windows, mask covers {self.sparse.k_max}")
            if d_i > 0 and k > 0:
                seed_slice = self._slices[pi]
                total = np.zeros(d_i, dtype=np.float64)
                row = np.zeros(d_i, dtype=np.float64)
                for j in range(k):
                    sig = hashcore.window_signature(data[j:j + i], cfg.rolling_base, cfg.B)
                    cols = self.sparse.columns[pi][j]
                    row[:] = 0.0
                    row[cols] = hashcore.bound_projection(sig * seed_slice[cols], cfg.B)
                    total += row
                out[pos:pos + d_i] = total / k
            pos += d_i
        return out

    def cache_stats(self) -> CacheStats:
        """Hit/miss counters since construction; hit_rate 0.0 before any lookup."""
        if self.cache is None:
            raise CacheDisabled("embedder was built without a cache")
        return self.cache.stats()
