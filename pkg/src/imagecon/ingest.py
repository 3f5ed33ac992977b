"""Input adapters: native head-index files, treebank blocks, pronoun lexicons."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

from .core import AssociativePair, EncodingError
from .normalize import UNATTACHED, EncodedSyntagma, encode, ensure_subject_predicate


class ParseError(EncodingError):
    """Malformed input text; ``line`` is 1-based within the parsed block."""

    def __init__(self, message: str, line: int | None = None, position: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message, position)
        self.line = line


_GROUP_RE = re.compile(r"^#\s*group:\s*([\d\s,]+?)\s*->\s*(\d+)\s*$")


def split_blocks(text: str) -> list[str]:
    """Split text into blank-line separated blocks."""
    blocks, current = [], []
    for line in text.splitlines():
        if line.strip():
            current.append(line)
        elif current:
            blocks.append("\n".join(current))
            current = []
    if current:
        blocks.append("\n".join(current))
    return blocks


def parse_native(text: str) -> EncodedSyntagma:
    """Parse ``index<TAB>lexeme<TAB>head`` lines plus ``#group: i,j -> h`` lines.

    Other lines starting with ``#`` are comments.  A head of 0 leaves the word
    unattached until a subject or predicate is supplied.
    """
    rows: dict[int, tuple[str, int, int]] = {}
    groups = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\r\n")
        if not line.strip():
            continue
        if line.startswith("#"):
            m = _GROUP_RE.match(line)
            if m:
                try:
                    members = tuple(int(x) for x in m.group(1).split(","))
                except ValueError:
                    raise ParseError(f"bad group member list {m.group(1)!r}", lineno) from None
                groups.append((members, int(m.group(2)), lineno))
            elif line.lstrip("# ").startswith("group"):
                raise ParseError(f"malformed group line {line!r}", lineno)
            continue
        cols = line.split("\t")
        if len(cols) != 3:
            raise ParseError(f"expected 3 tab-separated fields, got {len(cols)}", lineno)
        idx, lexeme, head = cols
        try:
            idx_i, head_i = int(idx), int(head)
        except ValueError:
            raise ParseError(f"non-integer index or head in {line!r}", lineno) from None
        if not lexeme:
            raise ParseError("empty lexeme", lineno, idx_i)
        if idx_i in rows:
            raise ParseError(f"duplicate index {idx_i}", lineno, idx_i)
        rows[idx_i] = (lexeme, head_i, lineno)

    k = len(rows)
    for expected, idx in enumerate(sorted(rows), start=1):
        if idx != expected:
            raise ParseError(f"index {idx} breaks numbering, expected {expected}", rows[idx][2], idx)
    if sorted(rows) != list(rows):
        first = next(i for a, i in zip(sorted(rows), rows) if a != i)
        raise ParseError("indices not in ascending order", rows[first][2], first)
    for idx, (_, head, lineno) in rows.items():
        if head == idx:
            raise ParseError(f"word {idx} is its own head", lineno, idx)
        if not UNATTACHED <= head <= k:
            raise ParseError(f"head {head} out of range 1..{k}", lineno, idx)
    for members, shared, lineno in groups:
        if shared in members:
            raise ParseError(f"group member equals shared head {shared}", lineno, shared)
        for m in (*members, shared):
            if not 1 <= m <= k:
                raise ParseError(f"group index {m} out of range 1..{k}", lineno, m)
    try:
        return encode([(lex, head) for lex, head, _ in rows.values()], [(m, h) for m, h, _ in groups])
    except EncodingError as exc:
        raise ParseError(str(exc), None, exc.position) from exc


def render_native(s: EncodedSyntagma) -> str:
    lines = [f"{e.image.index}\t{e.image.lexeme}\t{e.head}" for e in s.entries]
    lines += [f"#group: {','.join(map(str, g.members))} -> {g.shared_head}" for g in s.groups]
    return "\n".join(lines) + "\n"


# Universal POS tags treated as syncategorematic by default.
DEFAULT_FUNCTION_TAGS = frozenset({"PUNCT", "ADP", "PART", "DET", "AUX"})
PREDICATE_TAGS = frozenset({"VERB", "AUX"})

ID, FORM, LEMMA, UPOS, XPOS, FEATS, HEAD, DEPREL, DEPS, MISC = range(10)


@dataclass
class _Token:
    id: int
    form: str
    upos: str
    head: int
    deprel: str
    line: int


def _read_tokens(text: str) -> list[_Token]:
    tokens = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != 10:
            raise ParseError(f"expected 10 tab-separated columns, got {len(cols)}", lineno)
        # Multiword ranges and empty nodes carry no head of their own.
        if "-" in cols[ID] or "." in cols[ID]:
            continue
        try:
            tok = _Token(int(cols[ID]), cols[FORM], cols[UPOS], int(cols[HEAD]), cols[DEPREL], lineno)
        except ValueError:
            raise ParseError(f"non-integer ID or HEAD in {line!r}", lineno) from None
        tokens.append(tok)
    for expected, tok in enumerate(tokens, start=1):
        if tok.id != expected:
            raise ParseError(f"token id {tok.id} breaks numbering, expected {expected}", tok.line)
    for tok in tokens:
        if not 0 <= tok.head <= len(tokens) or tok.head == tok.id:
            raise ParseError(f"bad head {tok.head} for token {tok.id}", tok.line)
    return tokens


def parse_treebank_subset(
    text: str,
    function_tags: Iterable[str] = DEFAULT_FUNCTION_TAGS,
    lowercase_initial: bool = True,
) -> EncodedSyntagma:
    """Turn one 10-column dependency block into an encoded syntagma.

    Function-word tokens are dropped and survivors renumbered; a survivor
    whose head was dropped climbs to its nearest surviving ancestor.  The
    root takes its nominal subject as head, giving the subject-predicate
    cycle; a missing subject or predicate is filled with a placeholder.
    With ``lowercase_initial`` the sentence-initial capital is undone
    (``Once`` -> ``once``) unless the word is a proper noun or all caps.
    """
    tokens = _read_tokens(text)
    if not tokens:
        raise ParseError("empty sentence block")
    function_tags = frozenset(function_tags)
    by_id = {t.id: t for t in tokens}
    roots = [t for t in tokens if t.head == 0]
    if len(roots) != 1:
        raise ParseError(f"expected exactly one root, found {len(roots)}")
    root = roots[0]
    if all(t.upos in function_tags for t in tokens):
        raise ParseError("sentence has no content words")
    if root.upos in function_tags:
        raise ParseError(f"root token {root.form!r} is a function word", root.line)

    kept = [t for t in tokens if t.upos not in function_tags]
    new_id = {t.id: n for n, t in enumerate(kept, start=1)}

    def surviving_head(tok: _Token) -> int:
        seen = {tok.id}
        head = tok.head
        while head != 0 and head not in new_id:
            if head in seen:
                raise ParseError(f"cyclic head chain through token {head}", tok.line)
            seen.add(head)
            head = by_id[head].head
        return 0 if head == 0 else new_id[head]

    heads = {new_id[t.id]: surviving_head(t) for t in kept}
    _check_acyclic(heads, kept, new_id)

    subject = next(
        (
            new_id[t.id]
            for t in kept
            if t.deprel.split(":")[0] == "nsubj" and heads[new_id[t.id]] == new_id[root.id]
        ),
        None,
    )
    root_pos = new_id[root.id]
    words = [(t.form, heads[new_id[t.id]]) for t in kept]
    first = tokens[0]
    if lowercase_initial and first in kept and first.upos != "PROPN" and first.form != first.form.upper():
        words[0] = (first.form.lower(), words[0][1])
    try:
        if subject is not None:
            words[root_pos - 1] = (words[root_pos - 1][0], subject)
            return encode(words)
        s = encode(words)
    except EncodingError as exc:
        raise ParseError(str(exc), None, exc.position) from exc
    if root.upos in PREDICATE_TAGS:
        return ensure_subject_predicate(s, subject=None, predicate=root_pos)
    return ensure_subject_predicate(s, subject=root_pos, predicate=None)


def _check_acyclic(heads: Mapping[int, int], kept: list[_Token], new_id: Mapping[int, int]) -> None:
    for start in heads:
        seen = set()
        node = start
        while node != 0:
            if node in seen:
                tok = kept[start - 1]
                raise ParseError(f"head cycle involving token {tok.id}", tok.line)
            seen.add(node)
            node = heads[node]


def iter_treebank(text: str, **options) -> Iterator[EncodedSyntagma]:
    for block in split_blocks(text):
        if all(line.startswith("#") for line in block.splitlines()):
            continue
        yield parse_treebank_subset(block, **options)


@dataclass
class PronounLexicon:
    """Interrogative labels keyed by ``(head, dependent)`` or by dependent lexeme."""

    pair_labels: dict[tuple[int, int], str] = field(default_factory=dict)
    lexeme_labels: dict[str, str] = field(default_factory=dict)
    default_label: str = "which?"


_PAIR_KEY_RE = re.compile(r"^\s*(\d+)\s*[,\\]\s*(\d+)\s*$")


def parse_lexicon(text: str) -> PronounLexicon:
    """Read ``key<TAB>label`` lines; ``@default<TAB>label`` sets the fallback."""
    lex = PronounLexicon()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2 or not parts[0] or not parts[1]:
            raise ParseError("expected key<TAB>label", lineno)
        key, label = parts
        if key == "@default":
            lex.default_label = label
            continue
        m = _PAIR_KEY_RE.match(key)
        if m:
            pk = (int(m.group(1)), int(m.group(2)))
            if pk in lex.pair_labels:
                raise ParseError(f"duplicate key {key!r}", lineno)
            lex.pair_labels[pk] = label
        else:
            if key in lex.lexeme_labels:
                raise ParseError(f"duplicate key {key!r}", lineno)
            lex.lexeme_labels[key] = label
    return lex


def lookup_label(lex: PronounLexicon, pair: AssociativePair, syntagma: EncodedSyntagma | None = None) -> str:
    label = lex.pair_labels.get((pair.head, pair.dependent))
    if label is not None:
        return label
    if syntagma is not None:
        lexeme = syntagma.lexemes.get(pair.dependent)
        if lexeme in lex.lexeme_labels:
            return lex.lexeme_labels[lexeme]
    return lex.default_label
