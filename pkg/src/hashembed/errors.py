"""Exception taxonomy shared by all hashembed modules."""


class HashEmbedError(Exception):
    """Base class for all hashembed errors."""


class InvalidConfig(HashEmbedError):
    """A configuration value violates its documented constraints."""


class InvalidToken(HashEmbedError):
    """A token is empty or otherwise unusable for hashing."""


class CacheDisabled(HashEmbedError):
    """Cache statistics were requested from an embedder built without a cache."""


class MaskOverflow(HashEmbedError):
    """A token produced more n-gram windows than the sparse mask covers."""


class EmptyVocab(HashEmbedError):
    """A vocabulary file contained no tokens."""


class FormatError(HashEmbedError):
    """An embedding table file is corrupt or not in the expected format."""


class VocabMismatch(HashEmbedError):
    """An embedding table does not correspond to the given vocabulary."""
