"""Line-oriented relation file format.

::

    # comment
    universe 4            # elements named 1..4
    universe a b c        # or explicit labels
    1 3                   # one pair x R y per line, by label
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .approximation import ApproximationSpace
from .errors import RelationParseError
from .relation import BinaryRelation
from .sets import Universe


@dataclass
class RelationDocument:
    labels: tuple[str, ...]
    edges: list[tuple[str, str]] = field(default_factory=list)
    universe_line: int = 0
    edge_lines: list[int] = field(default_factory=list)
    source: str | None = None

    def to_relation(self) -> BinaryRelation:
        u = Universe.of_labels(self.labels)
        return BinaryRelation.from_pairs(u, [(u.index(x), u.index(y)) for x, y in self.edges])


def _significant_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def parse_relation_document(text: str, source: str | None = None) -> RelationDocument:
    doc = None
    index: dict[str, int] = {}
    for lineno, tokens in _significant_lines(text):
        if tokens[0] == "universe":
            if doc is not None:
                raise RelationParseError("duplicate universe declaration", lineno, "universe")
            args = tokens[1:]
            if not args:
                raise RelationParseError("empty universe", lineno)
            if len(args) == 1 and args[0].isdigit():
                n = int(args[0])
                if n < 1:
                    raise RelationParseError("empty universe", lineno, args[0])
                labels = tuple(str(i + 1) for i in range(n))
            else:
                seen = set()
                for lbl in args:
                    if lbl in seen:
                        raise RelationParseError("duplicate element label", lineno, lbl)
                    seen.add(lbl)
                labels = tuple(args)
            doc = RelationDocument(labels, universe_line=lineno, source=source)
            index = {lbl: i for i, lbl in enumerate(labels)}
            continue
        if doc is None:
            raise RelationParseError("expected 'universe' declaration before pairs", lineno, tokens[0])
        if len(tokens) != 2:
            raise RelationParseError(f"expected a pair '<x> <y>', got {len(tokens)} tokens", lineno)
        for tok in tokens:
            if tok not in index:
                raise RelationParseError("unknown element label", lineno, tok)
        doc.edges.append((tokens[0], tokens[1]))
        doc.edge_lines.append(lineno)
    if doc is None:
        raise RelationParseError("empty universe: no 'universe' declaration found")
    return doc


def parse_relation(text: str, source: str | None = None) -> ApproximationSpace:
    return ApproximationSpace(parse_relation_document(text, source).to_relation())


def format_relation(relation: BinaryRelation) -> str:
    u = relation.universe
    for lbl in u.labels:
        if not lbl or "#" in lbl or any(ch.isspace() for ch in lbl) or lbl == "universe":
            raise ValueError(f"label {lbl!r} cannot be written in the relation format")
    if u.size == 1 and u.labels[0].isdigit() and u.labels[0] != "1":
        raise ValueError(f"single numeric label {u.labels[0]!r} would read back as a universe size")
    if u.labels == Universe(u.size).labels:
        head = f"universe {u.size}"
    else:
        head = "universe " + " ".join(u.labels)
    lines = [head] + [f"{u.labels[x]} {u.labels[y]}" for x, y in relation.pairs()]
    return "\n".join(lines) + "\n"
