"""Deterministic in-memory search engine over a local document corpus.

Provides tokenization, index construction, and the two event-space queries
the rest of the library is built on: the set of documents matching one
term (singleton) and the set matching two distinct terms (doubleton).
Hit counts are exact by default; an optional bias configuration injects a
seeded, reproducible perturbation to mimic the unreliable counts reported
by real search engines.
"""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

BIAS_MODES = ("none", "additive", "multiplicative")


def tokenize(text: str) -> list[str]:
    """Lowercase ``text`` and split it on runs of non-alphanumeric characters.

    Empty tokens are dropped and order is preserved. The empty string
    yields an empty list.
    """
    tokens: list[str] = []
    current: list[str] = []
    for ch in text.lower():
        if ch.isalnum():
            current.append(ch)
        elif current:
            tokens.append("".join(current))
            current = []
    if current:
        tokens.append("".join(current))
    return tokens


@dataclass(frozen=True)
class Term:
    """An ordered word pattern used as a query.

    ``tokens`` is the word sequence; ``size`` is the declared parameter
    count and defaults to the token count. Matching is positional: a
    document matches when the tokens appear as a contiguous subsequence.
    """

    tokens: tuple[str, ...]
    size: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "tokens", tuple(self.tokens))
        if not self.tokens:
            raise ValueError("a term needs at least one token")
        for tok in self.tokens:
            if not tok or any(ch.isspace() for ch in tok):
                raise ValueError(f"invalid term token: {tok!r}")
            if tok != tok.lower():
                raise ValueError(f"term tokens must be lowercase: {tok!r}")
        if self.size is None:
            object.__setattr__(self, "size", len(self.tokens))
        elif self.size < len(self.tokens):
            raise ValueError(
                f"term size {self.size} is smaller than its {len(self.tokens)} tokens"
            )

    @classmethod
    def parse(cls, text: str, size: int | None = None) -> "Term":
        """Build a term by tokenizing ``text``."""
        return cls(tuple(tokenize(text)), size)

    @property
    def text(self) -> str:
        return " ".join(self.tokens)


@dataclass(frozen=True)
class Document:
    """One indexed page: a unique id and its token sequence (may be empty)."""

    id: str
    tokens: tuple[str, ...]


@dataclass(frozen=True)
class Index:
    """Immutable inverted index: the document universe plus positional postings.

    ``postings`` maps each token to the documents containing it and the
    positions at which it occurs. Built once by :func:`build_index`; all
    queries are read-only, so an index is safe to share across threads.
    """

    documents: Mapping[str, Document]
    postings: Mapping[str, Mapping[str, tuple[int, ...]]]

    @property
    def universe_size(self) -> int:
        return len(self.documents)

    @property
    def total_tokens(self) -> int:
        return sum(len(doc.tokens) for doc in self.documents.values())


@dataclass(frozen=True)
class EventSet:
    """A query result: a subset of the indexed document ids."""

    doc_ids: frozenset[str]

    @property
    def cardinality(self) -> int:
        return len(self.doc_ids)


@dataclass(frozen=True)
class BiasConfig:
    """Optional perturbation applied to hit counts.

    ``none`` passes counts through unchanged. ``additive`` adds
    ``round(magnitude * u)`` with ``u`` uniform in [0, 1]; ``multiplicative``
    scales by ``1 + magnitude * u`` with ``u`` uniform in [-1, 1], floored
    at zero. The draw is a pure function of (seed, mode, magnitude, event),
    so identical inputs always produce identical outputs.
    """

    mode: str = "none"
    magnitude: float = 0.0
    seed: int = 0

    def __post_init__(self) -> None:
        if self.mode not in BIAS_MODES:
            raise ValueError(f"bias mode must be one of {BIAS_MODES}, got {self.mode!r}")
        if self.magnitude < 0:
            raise ValueError("bias magnitude must be non-negative")


def build_index(corpus: Iterable[tuple[str, str]]) -> Index:
    """Index a corpus of ``(id, raw text)`` pairs.

    Ids must be unique; a duplicate is rejected by name. Documents are
    tokenized with :func:`tokenize` and postings record every occurrence
    position.
    """
    documents: dict[str, Document] = {}
    postings: dict[str, dict[str, list[int]]] = {}
    for doc_id, text in corpus:
        if doc_id in documents:
            raise ValueError(f"duplicate document id: {doc_id!r}")
        tokens = tuple(tokenize(text))
        documents[doc_id] = Document(doc_id, tokens)
        for pos, tok in enumerate(tokens):
            postings.setdefault(tok, {}).setdefault(doc_id, []).append(pos)
    frozen = {
        tok: {doc_id: tuple(positions) for doc_id, positions in docs.items()}
        for tok, docs in postings.items()
    }
    return Index(documents=documents, postings=frozen)


def occurrence_positions(haystack: Sequence[str], needle: Sequence[str]) -> list[int]:
    """Start positions of ``needle`` as a contiguous subsequence of ``haystack``."""
    n, m = len(haystack), len(needle)
    if m == 0 or m > n:
        return []
    target = tuple(needle)
    return [i for i in range(n - m + 1) if tuple(haystack[i : i + m]) == target]


def contains_phrase(haystack: Sequence[str], needle: Sequence[str]) -> bool:
    """True when ``needle`` occurs contiguously inside ``haystack``."""
    n, m = len(haystack), len(needle)
    if m == 0 or m > n:
        return False
    target = tuple(needle)
    return any(tuple(haystack[i : i + m]) == target for i in range(n - m + 1))


def _coerce_term(term: Term | str) -> Term:
    return term if isinstance(term, Term) else Term.parse(term)


def _doc_matches(index: Index, doc_id: str, tokens: tuple[str, ...]) -> bool:
    # Positional check for multi-token terms using the postings only.
    first = index.postings[tokens[0]][doc_id]
    rest: list[set[int]] = []
    for tok in tokens[1:]:
        positions = index.postings.get(tok, {}).get(doc_id)
        if positions is None:
            return False
        rest.append(set(positions))
    return any(
        all(p + offset in s for offset, s in enumerate(rest, start=1)) for p in first
    )


def singleton(index: Index, term: Term | str) -> EventSet:
    """Documents containing ``term`` as a contiguous phrase.

    A term absent everywhere yields an empty event set.
    """
    t = _coerce_term(term)
    first = index.postings.get(t.tokens[0])
    if first is None:
        return EventSet(frozenset())
    if len(t.tokens) == 1:
        return EventSet(frozenset(first))
    hits = {doc_id for doc_id in first if _doc_matches(index, doc_id, t.tokens)}
    return EventSet(frozenset(hits))


def doubleton(index: Index, tx: Term | str, ty: Term | str) -> EventSet:
    """Documents containing both of two distinct terms.

    The terms must differ as token sequences; an identical pair is rejected.
    """
    a, b = _coerce_term(tx), _coerce_term(ty)
    if a.tokens == b.tokens:
        raise ValueError(f"doubleton requires two distinct terms, got {a.text!r} twice")
    return EventSet(singleton(index, a).doc_ids & singleton(index, b).doc_ids)


def _seeded_uniform(bias: BiasConfig, doc_ids: Iterable[str], lo: float, hi: float) -> float:
    # Stable digest over the full input so repeated calls agree across runs
    # and platforms regardless of hash randomization.
    payload = json.dumps(
        {
            "mode": bias.mode,
            "magnitude": bias.magnitude,
            "seed": bias.seed,
            "docs": sorted(doc_ids),
        },
        sort_keys=True,
    )
    digest = hashlib.sha256(payload.encode("utf-8")).digest()
    rng = random.Random(int.from_bytes(digest[:8], "big"))
    return lo + (hi - lo) * rng.random()


def hit_count(event: EventSet, bias: BiasConfig | None = None) -> int | float:
    """Report the size of an event, optionally perturbed per ``bias``."""
    count = event.cardinality
    if bias is None or bias.mode == "none":
        return count
    if bias.mode == "additive":
        return count + round(bias.magnitude * _seeded_uniform(bias, event.doc_ids, 0.0, 1.0))
    noisy = count * (1.0 + bias.magnitude * _seeded_uniform(bias, event.doc_ids, -1.0, 1.0))
    return max(0.0, noisy)


def load_corpus_dir(path: str | Path) -> list[tuple[str, str]]:
    """Read a corpus from a directory of UTF-8 ``.txt`` files.

    The file stem becomes the document id. Files are taken in sorted name
    order so the resulting index is a pure function of the directory
    contents.
    """
    p = Path(path)
    if not p.is_dir():
        raise ValueError(f"corpus directory not found: {p}")
    return [(f.stem, f.read_text(encoding="utf-8")) for f in sorted(p.glob("*.txt"))]


def load_corpus_jsonl(path: str | Path) -> list[tuple[str, str]]:
    """Read a corpus from a JSON-lines file of ``{"id": ..., "text": ...}`` objects.

    Blank lines are skipped. A malformed line is rejected with its line
    number.
    """
    p = Path(path)
    if not p.is_file():
        raise ValueError(f"corpus file not found: {p}")
    pairs: list[tuple[str, str]] = []
    with p.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ValueError(f"{p}:{lineno}: invalid JSON: {exc.msg}") from exc
            if not isinstance(obj, dict) or "id" not in obj or "text" not in obj:
                raise ValueError(f'{p}:{lineno}: expected an object with "id" and "text"')
            pairs.append((str(obj["id"]), str(obj["text"])))
    return pairs


def load_corpus(path: str | Path, corpus_format: str) -> list[tuple[str, str]]:
    """Dispatch to the txt-directory or JSON-lines loader."""
    if corpus_format == "txt_dir":
        return load_corpus_dir(path)
    if corpus_format == "jsonl":
        return load_corpus_jsonl(path)
    raise ValueError(f"unknown corpus format: {corpus_format!r}")
