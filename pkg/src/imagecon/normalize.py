"""Encoding of syntagmas as head-index strings and their rewrite into ANF.

A syntagma of ``k`` meaningful words is written as ``x1 h1 x2 h2 ... xk hk``
where ``hi`` is the position of the word that ``xi`` is subordinate to.
Every entry ``xi hi`` rewrites to the pair ``hi\\xi``.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable, Sequence

from .core import (
    EMPTY,
    RESERVED_LEXEMES,
    AnfTerm,
    AssociativePair,
    EncodingError,
    Image,
    Placeholder,
    reduce,
    render_pair,
    render_term,
)

# Head value of an image that is not yet subordinate to anything.  Only valid
# before subject/predicate completion; to_anf rejects it.
UNATTACHED = 0


@dataclass(frozen=True)
class CoordinationGroup:
    """Homogeneous parts ``(m1 & m2 & ...)`` sharing one principal image."""

    members: tuple[int, ...]
    shared_head: int

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))


@dataclass(frozen=True)
class Entry:
    image: Image
    head: int


@dataclass(frozen=True)
class EncodedSyntagma:
    entries: tuple[Entry, ...]
    groups: tuple[CoordinationGroup, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        object.__setattr__(self, "groups", tuple(self.groups))
        k = len(self.entries)
        for pos, entry in enumerate(self.entries, start=1):
            if entry.image.index != pos:
                raise EncodingError(
                    f"position {pos}: expected image index {pos}, got {entry.image.index}", pos
                )
            if entry.head == pos:
                raise EncodingError(f"position {pos}: word is its own head", pos)
            if not UNATTACHED <= entry.head <= k:
                raise EncodingError(f"position {pos}: head {entry.head} out of range 1..{k}", pos)
        grouped: set[int] = set()
        for group in self.groups:
            if not 1 <= group.shared_head <= k:
                raise EncodingError(f"group shared head {group.shared_head} out of range 1..{k}")
            if len(group.members) < 2 or len(set(group.members)) != len(group.members):
                raise EncodingError(f"group {group.members} needs at least two distinct members")
            for m in group.members:
                if not 1 <= m <= k:
                    raise EncodingError(f"group member {m} out of range 1..{k}", m)
                if m == group.shared_head:
                    raise EncodingError(f"group member {m} equals its shared head", m)
                if m in grouped:
                    raise EncodingError(f"image {m} belongs to more than one group", m)
                grouped.add(m)

    def __len__(self):
        return len(self.entries)

    @property
    def images(self) -> tuple[Image, ...]:
        return tuple(e.image for e in self.entries)

    @property
    def heads(self) -> tuple[int, ...]:
        return tuple(e.head for e in self.entries)

    @property
    def lexemes(self) -> dict[int, str]:
        return {e.image.index: e.image.lexeme for e in self.entries}

    def string(self, start: int = 1) -> str:
        """The head-index string from position ``start`` on, e.g. ``x1 3 x2 3``."""
        return " ".join(f"x{e.image.index} {e.head}" for e in self.entries[start - 1 :])


def encode(
    words: Sequence[tuple[str, int]],
    groups: Iterable[tuple[Sequence[int], int]] | None = None,
) -> EncodedSyntagma:
    """Validate ``(lexeme, head)`` pairs into an encoded syntagma.

    Reserved lexemes ``[Y]``/``[Z]`` become placeholder images.  A head of 0
    marks an image still waiting for its subject/predicate partner.
    """
    entries = []
    for pos, (lexeme, head) in enumerate(words, start=1):
        kind = RESERVED_LEXEMES.get(lexeme, Placeholder.NONE)
        entries.append(Entry(Image(pos, lexeme, kind), int(head)))
    cgroups = tuple(CoordinationGroup(tuple(m), h) for m, h in (groups or ()))
    return EncodedSyntagma(tuple(entries), cgroups)


def ensure_subject_predicate(
    s: EncodedSyntagma, subject: int | None = None, predicate: int | None = None
) -> EncodedSyntagma:
    """Add placeholder images for a missing subject and/or predicate.

    Pass the position of each role that is present, ``None`` for a missing
    one.  The present role must be unattached (head 0); it is tied to the new
    placeholder by a subject-predicate cycle.  With both roles missing, a
    ``[Y]``/``[Z]`` cycle is added and any unattached image hangs off ``[Z]``.
    """
    if subject is not None and predicate is not None:
        return s
    k = len(s)
    entries = list(s.entries)

    def attach(pos: int, head: int) -> None:
        if entries[pos - 1].head != UNATTACHED:
            raise EncodingError(
                f"position {pos}: already subordinate to {entries[pos - 1].head}", pos
            )
        entries[pos - 1] = replace(entries[pos - 1], head=head)

    for role in (subject, predicate):
        if role is not None and not 1 <= role <= k:
            raise EncodingError(f"role position {role} out of range 1..{k}", role)

    if subject is None and predicate is None:
        y, z = k + 1, k + 2
        for pos, e in enumerate(s.entries, start=1):
            if e.head == UNATTACHED:
                attach(pos, z)
        entries.append(Entry(Image.placeholder_for(Placeholder.UNKNOWN_SUBJECT, y), z))
        entries.append(Entry(Image.placeholder_for(Placeholder.UNKNOWN_PREDICATE, z), y))
    elif subject is None:
        y = k + 1
        attach(predicate, y)
        entries.append(Entry(Image.placeholder_for(Placeholder.UNKNOWN_SUBJECT, y), predicate))
    else:
        z = k + 1
        attach(subject, z)
        entries.append(Entry(Image.placeholder_for(Placeholder.UNKNOWN_PREDICATE, z), subject))
    return EncodedSyntagma(tuple(entries), s.groups)


def expand_homogeneous(s: EncodedSyntagma) -> EncodedSyntagma:
    """Give every coordination member its group's shared head."""
    if not s.groups:
        return s
    new_head = {m: g.shared_head for g in s.groups for m in g.members}
    entries = tuple(
        replace(e, head=new_head[e.image.index]) if e.image.index in new_head else e
        for e in s.entries
    )
    return EncodedSyntagma(entries, s.groups)


def coordination_extras(s: EncodedSyntagma) -> list[AssociativePair]:
    """Pairs ``m2\\xj`` owed because a fellow member ``m1`` heads ``xj``.

    Expects an already expanded syntagma.  Fires once per (member, headed
    image) combination, in group, image and member order.
    """
    extras = []
    for group in s.groups:
        members = set(group.members)
        for e in s.entries:
            if e.head in members:
                for m in group.members:
                    if m != e.head:
                        extras.append(AssociativePair(m, e.image.index))
    return extras


@dataclass(frozen=True)
class Step:
    """One product application while rewriting a string into ANF."""

    rule: str  # "3.12", "3.13", "17" or "3.14"
    source: str  # string (or pair) the product applies to
    term: AnfTerm  # pairs emitted so far


def derive(s: EncodedSyntagma) -> list[Step]:
    """Replay the string-to-ANF rewrite one product at a time."""
    s = expand_homogeneous(s)
    for e in s.entries:
        if e.head == UNATTACHED:
            pos = e.image.index
            raise EncodingError(f"position {pos}: image has no head; complete subject/predicate first", pos)
    steps = []
    pairs: list[AssociativePair] = []
    k = len(s)
    for pos, e in enumerate(s.entries, start=1):
        pairs.append(AssociativePair(e.head, pos))
        # 3.12 keeps a tail string to rewrite; 3.13 consumes the last entry.
        rule = "3.13" if pos == k else "3.12"
        steps.append(Step(rule, s.string(pos), AnfTerm(tuple(pairs))))
    for extra in coordination_extras(s):
        pairs.append(extra)
        steps.append(Step("17", render_pair(extra), AnfTerm(tuple(pairs))))
    steps.append(Step("3.14", "", reduce(AnfTerm(tuple(pairs)))))
    return steps


def to_anf(s: EncodedSyntagma) -> AnfTerm:
    if not s.entries:
        return EMPTY
    return derive(s)[-1].term


def format_trace(steps: Sequence[Step]) -> str:
    lines = []
    for step in steps:
        if step.rule == "3.14":
            lines.append(f"3.14: {render_term(step.term)}")
        else:
            lines.append(f"{step.rule}: {step.source} => {render_term_raw(step.term)}")
    return "\n".join(lines)


def render_term_raw(term: AnfTerm) -> str:
    """Render every pair in derivation order, repeats included."""
    return " (+) ".join(render_pair(p) for p in term.pairs)
