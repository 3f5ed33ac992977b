"""Images, associative pairs and ANF terms.

An ANF term is a union of directed ``head\\dependent`` pairs.  Terms form a
commutative semigroup under :func:`oplus`; equality ignores both the order
in which pairs were derived and how often a pair occurs.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Mapping


class IcError(Exception):
    """Base class for every error raised by this package."""


class InvalidPairError(IcError, ValueError):
    pass


class EncodingError(IcError, ValueError):
    """An encoded syntagma violates its invariants.

    ``position`` is the 1-based word position at fault, when known.
    """

    def __init__(self, message: str, position: int | None = None):
        super().__init__(message)
        self.position = position


class NotFoundError(IcError, LookupError):
    pass


class Placeholder(enum.Enum):
    NONE = "none"
    UNKNOWN_SUBJECT = "unknown-subject"
    UNKNOWN_PREDICATE = "unknown-predicate"


# Reserved lexemes for artificial images; never produced from real words.
PLACEHOLDER_LEXEMES = {
    Placeholder.UNKNOWN_SUBJECT: "[Y]",
    Placeholder.UNKNOWN_PREDICATE: "[Z]",
}
RESERVED_LEXEMES = {lex: kind for kind, lex in PLACEHOLDER_LEXEMES.items()}


@dataclass(frozen=True, slots=True)
class Image:
    index: int
    lexeme: str
    placeholder: Placeholder = Placeholder.NONE

    def __post_init__(self):
        if self.index < 1:
            raise EncodingError(f"image index must be >= 1, got {self.index}", self.index)
        if not self.lexeme:
            raise EncodingError(f"empty lexeme at position {self.index}", self.index)

    @classmethod
    def placeholder_for(cls, kind: Placeholder, index: int) -> Image:
        return cls(index, PLACEHOLDER_LEXEMES[kind], kind)


@dataclass(frozen=True, order=True, slots=True)
class AssociativePair:
    """Elementary term ``head\\dependent``: head is principal to dependent."""

    head: int
    dependent: int

    def __post_init__(self):
        if self.head < 1 or self.dependent < 1:
            raise InvalidPairError(f"non-positive index in pair {self.head}\\{self.dependent}")
        if self.head == self.dependent:
            raise InvalidPairError(f"self-loop pair {self.head}\\{self.dependent}")

    @property
    def reverse(self) -> AssociativePair:
        return AssociativePair(self.dependent, self.head)

    def __str__(self):
        return render_pair(self)


def make_pair(head: int, dependent: int) -> AssociativePair:
    return AssociativePair(head, dependent)


@dataclass(frozen=True, eq=False)
class AnfTerm:
    """A ⊕-combination of associative pairs.

    ``pairs`` keeps derivation order (duplicates allowed); ``canonical`` is
    the duplicate-free set that defines equality and hashing.
    """

    pairs: tuple[AssociativePair, ...] = ()
    canonical: frozenset[AssociativePair] = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple(self.pairs))
        object.__setattr__(self, "canonical", frozenset(self.pairs))

    @classmethod
    def of(cls, *pairs: tuple[int, int] | AssociativePair) -> AnfTerm:
        """Build a term from pairs or ``(head, dependent)`` tuples."""
        return cls(tuple(p if isinstance(p, AssociativePair) else AssociativePair(*p) for p in pairs))

    def __eq__(self, other):
        if not isinstance(other, AnfTerm):
            return NotImplemented
        return self.canonical == other.canonical

    def __hash__(self):
        return hash(self.canonical)

    def __add__(self, other: AnfTerm) -> AnfTerm:
        return oplus(self, other)

    def __len__(self):
        return len(self.canonical)

    def __iter__(self):
        return iter(self.pairs)

    def __contains__(self, pair):
        return pair in self.canonical

    def __bool__(self):
        return bool(self.pairs)

    def indices(self) -> list[int]:
        """Distinct image indices mentioned by the term, ascending."""
        return sorted({i for p in self.canonical for i in (p.head, p.dependent)})


EMPTY = AnfTerm()


def oplus(a: AnfTerm, b: AnfTerm) -> AnfTerm:
    return AnfTerm(a.pairs + b.pairs)


def reduce(a: AnfTerm) -> AnfTerm:
    """Drop repeated pairs, keeping the first occurrence of each."""
    return AnfTerm(tuple(dict.fromkeys(a.pairs)))


def canonical_eq(a: AnfTerm, b: AnfTerm) -> bool:
    return a.canonical == b.canonical


def cross(i: int, j: int) -> AnfTerm:
    """Subject-predicate relation: the two-pair cycle ``i\\j (+) j\\i``."""
    if i == j:
        raise InvalidPairError(f"cross of an image with itself ({i})")
    return AnfTerm((AssociativePair(i, j), AssociativePair(j, i)))


def _name(index: int, lexemes: Mapping[int, str] | None) -> str:
    if lexemes is None:
        return f"x{index}"
    return lexemes.get(index, f"x{index}")


def render_pair(pair: AssociativePair, lexemes: Mapping[int, str] | None = None) -> str:
    return f"{_name(pair.head, lexemes)}\\{_name(pair.dependent, lexemes)}"


def render_term(term: AnfTerm, lexemes: Mapping[int, str] | None = None) -> str:
    return " (+) ".join(render_pair(p, lexemes) for p in reduce(term).pairs)


def pairs_from(edges: Iterable[tuple[int, int]]) -> AnfTerm:
    return AnfTerm(tuple(AssociativePair(h, d) for h, d in edges))
