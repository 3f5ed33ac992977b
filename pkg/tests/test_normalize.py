import pytest
from hypothesis import given, strategies as st

from imagecon.core import AnfTerm, AssociativePair, EncodingError, Placeholder, cross
from imagecon.normalize import (
    CoordinationGroup,
    EncodedSyntagma,
    coordination_extras,
    derive,
    encode,
    ensure_subject_predicate,
    expand_homogeneous,
    format_trace,
    to_anf,
)

from strategies import syntagmas

P = AssociativePair

EXAMPLE1 = [("once", 3), ("I", 3), ("saw", 2), ("little", 5), ("bird", 3)]
EXAMPLE2 = [
    ("Забытую", 2),
    ("песню", 3),
    ("несет", 4),
    ("ветерок", 3),
    ("задумчивых", 6),
    ("травах", 7),
    ("звеня", 3),
]


def test_encode_example1_string():
    s = encode(EXAMPLE1)
    assert s.string() == "x1 3 x2 3 x3 2 x4 5 x5 3"
    assert s.heads == (3, 3, 2, 5, 3)


def test_encode_example2_string():
    assert encode(EXAMPLE2).string() == "x1 2 x2 3 x3 4 x4 3 x5 6 x6 7 x7 3"


@pytest.mark.parametrize(
    "words,position",
    [([("w1", 1)], 1), ([("a", 2), ("b", 3)], 2), ([("a", 2), ("", 1)], 2), ([("a", 2), ("b", -1)], 2)],
)
def test_encode_errors_name_position(words, position):
    with pytest.raises(EncodingError) as err:
        encode(words)
    assert err.value.position == position


def test_to_anf_example1():
    assert to_anf(encode(EXAMPLE1)).pairs == (P(3, 1), P(3, 2), P(2, 3), P(5, 4), P(3, 5))


def test_to_anf_example2():
    assert to_anf(encode(EXAMPLE2)).pairs == (
        P(2, 1), P(3, 2), P(4, 3), P(3, 4), P(6, 5), P(7, 6), P(3, 7),
    )


def test_to_anf_minimal_cycle():
    assert to_anf(encode([("A", 2), ("B", 1)])).pairs == (P(2, 1), P(1, 2))


def test_to_anf_rejects_unattached():
    with pytest.raises(EncodingError) as err:
        to_anf(encode([("run", 0)]))
    assert err.value.position == 1


def test_trace_example1_lines():
    lines = format_trace(derive(encode(EXAMPLE1))).splitlines()
    assert [line.split(":")[0] for line in lines] == ["3.12"] * 4 + ["3.13", "3.14"]
    assert lines[0] == "3.12: x1 3 x2 3 x3 2 x4 5 x5 3 => x3\\x1"
    assert lines[4] == "3.13: x5 3 => x3\\x1 (+) x3\\x2 (+) x2\\x3 (+) x5\\x4 (+) x3\\x5"
    assert lines[5] == "3.14: x3\\x1 (+) x3\\x2 (+) x2\\x3 (+) x5\\x4 (+) x3\\x5"


def _placeholder_pairs(term, index):
    return {p for p in term.canonical if index in (p.head, p.dependent)}


def test_ensure_identity_when_complete():
    s = encode(EXAMPLE1)
    assert ensure_subject_predicate(s, subject=2, predicate=3) is s


def test_ensure_imperative_adds_subject():
    s = ensure_subject_predicate(encode([("run", 0)]), subject=None, predicate=1)
    assert len(s) == 2
    assert s.images[1].placeholder is Placeholder.UNKNOWN_SUBJECT
    term = to_anf(s)
    assert _placeholder_pairs(term, 2) == cross(2, 1).canonical
    assert term.canonical == {P(2, 1), P(1, 2)}


def test_ensure_noun_phrase_adds_predicate():
    s = ensure_subject_predicate(encode([("little", 2), ("bird", 0)]), subject=2, predicate=None)
    assert s.images[2].placeholder is Placeholder.UNKNOWN_PREDICATE
    term = to_anf(s)
    assert _placeholder_pairs(term, 3) == cross(2, 3).canonical
    assert term.canonical == {P(2, 1), P(3, 2), P(2, 3)}


def test_ensure_both_missing():
    s = ensure_subject_predicate(encode([("hello", 0)]))
    assert [im.placeholder for im in s.images[1:]] == [
        Placeholder.UNKNOWN_SUBJECT,
        Placeholder.UNKNOWN_PREDICATE,
    ]
    term = to_anf(s)
    assert cross(2, 3).canonical <= term.canonical
    assert P(3, 1) in term


def test_ensure_refuses_attached_role():
    with pytest.raises(EncodingError):
        ensure_subject_predicate(encode(EXAMPLE1), subject=None, predicate=3)


def test_homogeneous_shared_head_only():
    # red and green apples: both adjectives depend on "apples"
    s = encode([("red", 3), ("green", 1), ("apples", 4), ("fall", 3)], [((1, 2), 3)])
    expanded = expand_homogeneous(s)
    assert expanded.heads == (3, 3, 4, 3)
    assert coordination_extras(expanded) == []
    assert to_anf(s).pairs == (P(3, 1), P(3, 2), P(4, 3), P(3, 4))


def test_homogeneous_member_heads_shared_head():
    # cats and dogs run: "cats" is in a subject cycle with "run"
    s = encode([("cats", 3), ("dogs", 1), ("run", 1)], [((1, 2), 3)])
    term = to_anf(s)
    assert term.canonical == {P(3, 1), P(3, 2), P(1, 3), P(2, 3)}
    assert term.pairs[-1] == P(2, 3)
    trace = format_trace(derive(s)).splitlines()
    assert trace[-2] == "17: x2\\x3 => x3\\x1 (+) x3\\x2 (+) x1\\x3 (+) x2\\x3"


def test_homogeneous_identity_without_groups():
    s = encode(EXAMPLE1)
    assert expand_homogeneous(s) is s


def test_group_member_equal_to_shared_head():
    with pytest.raises(EncodingError):
        encode([("a", 2), ("b", 1)], [((1, 2), 2)])


def test_syntagma_rejects_out_of_order_images():
    s = encode(EXAMPLE1)
    with pytest.raises(EncodingError):
        EncodedSyntagma(tuple(reversed(s.entries)))


@st.composite
def grouped_syntagmas(draw):
    s = draw(syntagmas(min_k=3))
    k = len(s)
    shared = draw(st.integers(1, k))
    members = draw(
        st.lists(st.integers(1, k).filter(lambda m: m != shared), min_size=2, max_size=3, unique=True)
    )
    return EncodedSyntagma(s.entries, (CoordinationGroup(tuple(members), shared),))


@given(syntagmas())
def test_per_entry_soundness_and_order(s):
    term = to_anf(s)
    expected = [P(e.head, e.image.index) for e in s.entries]
    assert term.canonical == set(expected)
    assert list(term.pairs) == list(dict.fromkeys(expected))
    assert len(term.pairs) <= len(s)


@given(grouped_syntagmas())
def test_grouped_soundness(s):
    expanded = expand_homogeneous(s)
    extras = coordination_extras(expanded)
    term = to_anf(s)
    expected = [P(e.head, e.image.index) for e in expanded.entries] + extras
    assert term.canonical == set(expected)
    assert len(term.pairs) <= len(s) + len(extras)
    group = s.groups[0]
    for m in group.members:
        assert P(group.shared_head, m) in term


@given(syntagmas(), st.sampled_from(["subject", "predicate", "both"]))
def test_ensure_adds_placeholder_cycle(s, missing):
    # Detach one image so there is a role to complete.
    entries = list(s.entries)
    entries[0] = type(entries[0])(entries[0].image, 0)
    s = EncodedSyntagma(tuple(entries))
    k = len(s)
    if missing == "subject":
        out = ensure_subject_predicate(s, subject=None, predicate=1)
        added, cycle = 1, cross(1, k + 1)
    elif missing == "predicate":
        out = ensure_subject_predicate(s, subject=1, predicate=None)
        added, cycle = 1, cross(1, k + 1)
    else:
        out = ensure_subject_predicate(s)
        added, cycle = 2, cross(k + 1, k + 2)
    assert len(out) == k + added
    term = to_anf(out)
    assert cycle.canonical <= term.canonical
    assert out.entries[:k][1:] == s.entries[1:]
