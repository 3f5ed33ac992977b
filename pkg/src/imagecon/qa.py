"""Question/answer partition of an ANF term and its linear rendering.

Selecting one pair ``i\\j`` of a term splits the remaining pairs in two: the
answer is everything reachable from ``j`` without crossing back to ``i``,
the question is the rest.  Each part is then read out as a word sequence by
a depth-first walk.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Union

from .core import AnfTerm, AssociativePair, NotFoundError, reduce

DEFAULT_LABEL = "which?"

Labels = Union[str, Mapping[AssociativePair, str], Callable[[AssociativePair], str], None]


@dataclass(frozen=True)
class QaPartition:
    selected: AssociativePair
    answer: AnfTerm
    question: AnfTerm
    source: AnfTerm


@dataclass(frozen=True)
class LinearQA:
    pronoun_label: str
    tq: tuple[int, ...]
    ta: tuple[int, ...]

    def render(self, lexemes: Mapping[int, str] | None = None) -> str:
        return render_question(self, lexemes)


def _children(pairs: Iterable[AssociativePair]) -> dict[int, list[int]]:
    """Dependents per head: cycle partners first, then by ascending index."""
    pairs = set(pairs)
    out: dict[int, list[int]] = defaultdict(list)
    for p in pairs:
        out[p.head].append(p.dependent)
    for head, deps in out.items():
        deps.sort(key=lambda d: (AssociativePair(d, head) not in pairs, d))
    return out


def _walk(children: Mapping[int, list[int]], start: int, seen: set[int]) -> list[int]:
    """Preorder from ``start``; appends newly visited nodes to ``seen``."""
    order = []
    stack = [start]
    while stack:
        node = stack.pop()
        if node in seen:
            continue
        seen.add(node)
        order.append(node)
        stack.extend(d for d in reversed(children.get(node, ())) if d not in seen)
    return order


def partition(source: AnfTerm, selected: AssociativePair) -> QaPartition:
    if selected not in source:
        raise NotFoundError(f"pair {selected} is not part of the term")
    blocked = {selected, selected.reverse}
    usable = [p for p in reduce(source).pairs if p not in blocked]
    children = _children(usable)

    answer = []
    for node in _walk(children, selected.dependent, set()):
        answer.extend(AssociativePair(node, d) for d in children.get(node, ()))
    taken = set(answer) | {selected}
    question = tuple(p for p in reduce(source).pairs if p not in taken)
    return QaPartition(selected, AnfTerm(tuple(answer)), AnfTerm(question), source)


def _read_out(term: AnfTerm, start: int) -> tuple[int, ...]:
    children = _children(term.canonical)
    seen: set[int] = set()
    order = _walk(children, start, seen)
    # Pairs not reachable from the start are read from their lowest head on.
    while True:
        rest = [p.head for p in term.canonical if p.head not in seen]
        if not rest:
            break
        order += _walk(children, min(rest), seen)
    return tuple(order)


def linearize(p: QaPartition, pronoun_label: str = DEFAULT_LABEL) -> LinearQA:
    tq = _read_out(p.question, p.selected.head)
    ta = _read_out(p.answer, p.selected.dependent)
    return LinearQA(pronoun_label, tq, ta)


def _label_for(labels: Labels, pair: AssociativePair) -> str:
    if labels is None:
        return DEFAULT_LABEL
    if isinstance(labels, str):
        return labels
    if callable(labels):
        return labels(pair)
    return labels.get(pair, DEFAULT_LABEL)


def enumerate_questions(
    source: AnfTerm, labels: Labels = None
) -> list[tuple[AssociativePair, LinearQA]]:
    """Partition and linearize around every pair, in derivation order."""
    result = []
    for pair in reduce(source).pairs:
        result.append((pair, linearize(partition(source, pair), _label_for(labels, pair))))
    return result


def render_question(lq: LinearQA, lexemes: Mapping[int, str] | None = None) -> str:
    def words(seq):
        return [lexemes.get(i, f"x{i}") if lexemes is not None else f"x{i}" for i in seq]

    return " ".join([lq.pronoun_label, *words(lq.tq), "?", *words(lq.ta)])


def question_record(
    pair: AssociativePair, lq: LinearQA, lexemes: Mapping[int, str] | None = None
) -> dict:
    """JSON-ready form of one generated question."""
    lexemes = lexemes or {}
    return {
        "selected": {"head": pair.head, "dependent": pair.dependent},
        "label": lq.pronoun_label,
        "tq": list(lq.tq),
        "ta": list(lq.ta),
        "tq_lexemes": [lexemes.get(i, f"x{i}") for i in lq.tq],
        "ta_lexemes": [lexemes.get(i, f"x{i}") for i in lq.ta],
    }
