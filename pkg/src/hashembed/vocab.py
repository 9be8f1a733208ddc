"""WordPiece-style vocabulary files: one token per line, index = line number."""

from __future__ import annotations

import logging
from dataclasses import dataclass

from .errors import EmptyVocab, InvalidToken

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class VocabFile:
    path: str
    tokens: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.tokens)


def load_vocab(path) -> VocabFile:
    """Read a vocabulary file; duplicates are allowed but warned about."""
    with open(path, encoding="utf-8") as f:
        text = f.read()
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()  # trailing newline, not an empty token
    tokens = []
    for lineno, line in enumerate(lines, start=1):
        tok = line.rstrip("\r")
        if not tok:
            raise InvalidToken(f"{path}: empty token at line {lineno}")
        tokens.append(tok)
    if not tokens:
        raise EmptyVocab(f"{path}: vocabulary is empty")
    dupes = len(tokens) - len(set(tokens))
    if dupes:
        logger.warning("%s: %d duplicate tokens (indices stay distinct)", path, dupes)
    return VocabFile(str(path), tuple(tokens))


def save_vocab(tokens, path) -> None:
    """Write tokens one per line, the layout load_vocab reads back."""
    with open(path, "w", encoding="utf-8") as f:
        for tok in tokens:
            f.write(tok + "\n")
