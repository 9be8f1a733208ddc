"""Deterministic dynamic token embeddings via n-gram pooling hashing.

Embeddings are computed at call time from the token string and a small
configuration, replacing a stored vocabulary-by-dimension table. The table
can still be materialized on demand, e.g. as an initializer for a trainable
embedding layer.
"""

from .bench import BenchReport, CorpusSpec, emit_report, run_bench, synthetic_vocabulary
from .embedder import CacheStats, Embedder, NGramCache, SparseMask
from .errors import (CacheDisabled, EmptyVocab, FormatError, HashEmbedError,
                     InvalidConfig, InvalidToken, MaskOverflow, VocabMismatch)
from .hashcore import (HashConfig, ShortTokenPolicy, generate_hash_seeds,
                       ngram_signatures, partition_dims, pool_mean,
                       project_and_bound, splitmix64)
from .tablefile import (TableHeader, export_table, export_text, read_table,
                        verify_table)
from .vocab import VocabFile, load_vocab, save_vocab

__version__ = "0.1.0"

__all__ = [
    "BenchReport", "CacheDisabled", "CacheStats", "CorpusSpec", "Embedder",
    "EmptyVocab", "FormatError", "HashConfig", "HashEmbedError", "InvalidConfig",
    "InvalidToken", "MaskOverflow", "NGramCache", "ShortTokenPolicy", "SparseMask",
    "TableHeader", "VocabFile", "VocabMismatch", "emit_report", "export_table",
    "export_text", "generate_hash_seeds", "load_vocab", "ngram_signatures",
    "partition_dims", "pool_mean", "project_and_bound", "read_table", "run_bench",
    "save_vocab", "splitmix64", "synthetic_vocabulary", "verify_table",
]
