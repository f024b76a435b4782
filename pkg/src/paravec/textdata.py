"""Tokenization, vocabulary and embedding-table management, and dataset parsing.

File formats (all UTF-8, LF line endings):

* embedding file — one entry per line: ``token v1 v2 ... vD``, single-space
  separated, constant D across lines;
* pair file — TSV ``s1 TAB s2``;
* scored pair file — TSV ``s1 TAB s2 TAB score``;
* labeled file — TSV ``sentence TAB label``;
* labeled pair file — TSV ``s1 TAB s2 TAB label``.

Parsing is total: a stream either yields a dataset or a positioned error;
nothing is dropped silently.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import IO

import numpy as np

from .errors import ContractError, DataError, FormatError

UNK_TOKEN = "<unk>"


def tokenize(text: str, lowercase: bool = True) -> list[str]:
    """Split on runs of Unicode whitespace, optionally lowercasing first."""
    if lowercase:
        text = text.lower()
    return text.split()


@dataclass
class Vocab:
    """Dense token -> id map with a dedicated unknown-token slot."""

    tokens: list[str]
    index: dict[str, int]
    unk_id: int

    @classmethod
    def from_tokens(cls, tokens: list[str], unk_token: str = UNK_TOKEN) -> "Vocab":
        index = {}
        for i, tok in enumerate(tokens):
            if tok in index:
                raise FormatError(f"duplicate token {tok!r}")
            index[tok] = i
        if unk_token not in index:
            raise ContractError(f"unknown-token slot {unk_token!r} missing from vocabulary")
        return cls(tokens=tokens, index=index, unk_id=index[unk_token])

    def __len__(self) -> int:
        return len(self.tokens)

    def id(self, token: str) -> int:
        """Id of `token`, falling back to the unknown-token slot."""
        return self.index.get(token, self.unk_id)


class EmbeddingTable:
    """Vocabulary plus two V x dim float64 matrices: the trainable `current`
    rows and the frozen `initial` rows they are regularized toward."""

    def __init__(
        self,
        vocab: Vocab,
        current: np.ndarray,
        initial: np.ndarray | None = None,
        unk_synthetic: bool = False,
    ):
        current = np.ascontiguousarray(current, dtype=np.float64)
        if current.ndim != 2 or current.shape[0] != len(vocab):
            raise ContractError("embedding matrix shape inconsistent with vocabulary")
        if current.shape[1] < 1:
            raise ContractError("embedding dimension must be positive")
        if initial is None:
            initial = current.copy()
        else:
            initial = np.ascontiguousarray(initial, dtype=np.float64)
            if initial.shape != current.shape:
                raise ContractError("current and initial matrices must have identical shape")
        initial.setflags(write=False)
        self.vocab = vocab
        self.current = current
        self.initial = initial
        self.unk_synthetic = unk_synthetic

    @property
    def dim(self) -> int:
        return self.current.shape[1]

    @property
    def unk_token(self) -> str:
        return self.vocab.tokens[self.vocab.unk_id]

    def lookup(self, token: str) -> np.ndarray:
        """Current row for `token`, or the unknown-token row if absent."""
        return self.current[self.vocab.id(token)].copy()

    def ids(self, tokens: list[str]) -> np.ndarray:
        if not tokens:
            raise DataError("empty token sequence")
        return np.array([self.vocab.id(t) for t in tokens], dtype=np.intp)

    def rows(self, tokens: list[str]) -> tuple[np.ndarray, np.ndarray]:
        """(ids, X) where X is the (n, dim) matrix of current rows (a copy)."""
        ids = self.ids(tokens)
        return ids, self.current[ids]

    def copy(self) -> "EmbeddingTable":
        return EmbeddingTable(
            self.vocab, self.current.copy(), self.initial.copy(), self.unk_synthetic
        )

    def reset_to_initial(self) -> None:
        self.current[...] = self.initial


def load_embeddings(
    reader: IO[str], unk_token: str = UNK_TOKEN, unk_fill: str = "mean"
) -> EmbeddingTable:
    """Parse an embedding text file.

    If `unk_token` does not occur in the file, a synthetic row is appended for
    it: the mean of all loaded rows (`unk_fill="mean"`, default) or zeros
    (`unk_fill="zero"`).
    """
    if unk_fill not in ("mean", "zero"):
        raise ContractError(f"unk_fill must be 'mean' or 'zero', got {unk_fill!r}")
    tokens: list[str] = []
    seen: set[str] = set()
    rows: list[np.ndarray] = []
    dim = -1
    for lineno, line in enumerate(reader, start=1):
        parts = line.split()
        if not parts:
            continue
        token, values = parts[0], parts[1:]
        if not values:
            raise FormatError(f"token {token!r} has no vector components", line=lineno)
        if dim < 0:
            dim = len(values)
        elif len(values) != dim:
            raise FormatError(
                f"expected {dim} vector components, found {len(values)}", line=lineno
            )
        if token in seen:
            raise FormatError(f"duplicate token {token!r}", line=lineno)
        seen.add(token)
        tokens.append(token)
        try:
            rows.append(np.array([float(v) for v in values], dtype=np.float64))
        except ValueError as exc:
            raise FormatError(f"bad float: {exc}", line=lineno) from None
    if not rows:
        raise DataError("embedding stream contains no entries")
    matrix = np.vstack(rows)
    synthetic = unk_token not in seen
    if synthetic:
        unk_row = matrix.mean(axis=0) if unk_fill == "mean" else np.zeros(dim)
        tokens.append(unk_token)
        matrix = np.vstack([matrix, unk_row])
    vocab = Vocab.from_tokens(tokens, unk_token=unk_token)
    return EmbeddingTable(vocab, matrix, unk_synthetic=synthetic)


def save_embeddings(table: EmbeddingTable, writer: IO[str], include_unk: bool = True) -> None:
    """Write the current rows in vocabulary order at full round-trip precision.

    `include_unk=False` omits a synthetic unknown-token row, reproducing the
    structure of the file the table was loaded from; a row loaded from the
    file is always written.
    """
    skip = table.vocab.unk_id if (table.unk_synthetic and not include_unk) else -1
    for i, token in enumerate(table.vocab.tokens):
        if i == skip:
            continue
        values = " ".join(repr(float(v)) for v in table.current[i])
        writer.write(f"{token} {values}\n")


@dataclass
class PairDataset:
    """Paraphrase pairs: (token-sequence, token-sequence)."""

    pairs: list[tuple[list[str], list[str]]]

    def __len__(self) -> int:
        return len(self.pairs)


@dataclass
class ScoredPairDataset:
    """Sentence pairs with a real-valued gold similarity score."""

    items: list[tuple[list[str], list[str], float]]

    def __len__(self) -> int:
        return len(self.items)


@dataclass
class LabeledDataset:
    """Single sentences with integer class labels in 0..num_classes-1."""

    items: list[tuple[list[str], int]]
    num_classes: int = 2

    def __len__(self) -> int:
        return len(self.items)


@dataclass
class LabeledPairDataset:
    """Sentence pairs with integer class labels (entailment-style tasks)."""

    items: list[tuple[list[str], list[str], int]]
    num_classes: int = 3

    def __len__(self) -> int:
        return len(self.items)


def _fields(line: str, expected: int, lineno: int) -> list[str]:
    parts = line.rstrip("\n").split("\t")
    if len(parts) != expected:
        raise FormatError(
            f"expected {expected} tab-separated fields, found {len(parts)}", line=lineno
        )
    return parts


def _sentence(text: str, lowercase: bool, lineno: int) -> list[str]:
    toks = tokenize(text, lowercase)
    if not toks:
        raise DataError(f"line {lineno}: empty sentence")
    return toks


def load_pairs(reader: IO[str], lowercase: bool = True) -> PairDataset:
    pairs = []
    for lineno, line in enumerate(reader, start=1):
        if not line.strip():
            continue
        s1, s2 = _fields(line, 2, lineno)
        pairs.append((_sentence(s1, lowercase, lineno), _sentence(s2, lowercase, lineno)))
    return PairDataset(pairs)


def load_scored_pairs(reader: IO[str], lowercase: bool = True) -> ScoredPairDataset:
    items = []
    for lineno, line in enumerate(reader, start=1):
        if not line.strip():
            continue
        s1, s2, score = _fields(line, 3, lineno)
        try:
            gold = float(score)
        except ValueError:
            raise FormatError(f"bad score {score!r}", line=lineno) from None
        if not np.isfinite(gold):
            raise FormatError(f"non-finite score {score!r}", line=lineno)
        items.append(
            (_sentence(s1, lowercase, lineno), _sentence(s2, lowercase, lineno), gold)
        )
    return ScoredPairDataset(items)


def load_labeled(
    reader: IO[str], lowercase: bool = True, num_classes: int | None = None
) -> LabeledDataset:
    items = []
    top = -1
    for lineno, line in enumerate(reader, start=1):
        if not line.strip():
            continue
        sent, label = _fields(line, 2, lineno)
        try:
            cls = int(label)
        except ValueError:
            raise FormatError(f"bad label {label!r}", line=lineno) from None
        if cls < 0 or (num_classes is not None and cls >= num_classes):
            raise FormatError(f"label {cls} out of range", line=lineno)
        top = max(top, cls)
        items.append((_sentence(sent, lowercase, lineno), cls))
    n = num_classes if num_classes is not None else max(top + 1, 2)
    return LabeledDataset(items, num_classes=n)


def load_labeled_pairs(
    reader: IO[str], lowercase: bool = True, num_classes: int | None = None
) -> LabeledPairDataset:
    items = []
    top = -1
    for lineno, line in enumerate(reader, start=1):
        if not line.strip():
            continue
        s1, s2, label = _fields(line, 3, lineno)
        try:
            cls = int(label)
        except ValueError:
            raise FormatError(f"bad label {label!r}", line=lineno) from None
        if cls < 0 or (num_classes is not None and cls >= num_classes):
            raise FormatError(f"label {cls} out of range", line=lineno)
        top = max(top, cls)
        items.append(
            (_sentence(s1, lowercase, lineno), _sentence(s2, lowercase, lineno), cls)
        )
    n = num_classes if num_classes is not None else max(top + 1, 2)
    return LabeledPairDataset(items, num_classes=n)
