"""Text formats: quiver and representation documents, class tokens, vectors and filtrations."""

from __future__ import annotations

import json
import re
from pathlib import Path
from typing import Any, Mapping

from . import fixtures
from .dynkin import IsoClass, positive_roots
from .quiver import Filtration, FiltrationError, Quiver, QuiverError
from .representation import Representation


class ParseError(ValueError):
    pass


def _load_json(source: str) -> Any:
    path = Path(source)
    text = path.read_text() if path.exists() else source
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"cannot read {source!r}: {exc}") from exc


def quiver_from_doc(doc: Mapping) -> Quiver:
    """{"vertices": [ids], "arrows": [[id, src, tgt], ...]}."""
    if not isinstance(doc, Mapping) or "vertices" not in doc:
        raise ParseError("quiver document needs a 'vertices' list")
    arrows = doc.get("arrows", [])
    if not isinstance(doc["vertices"], list) or not isinstance(arrows, list):
        raise ParseError("'vertices' and 'arrows' must be lists")
    for a in arrows:
        if not isinstance(a, list) or len(a) != 3:
            raise ParseError(f"arrow entry {a!r} is not [id, source, target]")
    try:
        return Quiver.from_edges(doc["vertices"], arrows)
    except (QuiverError, TypeError) as exc:
        raise ParseError(str(exc)) from exc


def quiver_to_doc(q: Quiver) -> dict:
    return {"vertices": list(q.vertices), "arrows": [[a.name, a.source, a.target] for a in q.arrows]}


def load_quiver(source: str) -> Quiver:
    if source in fixtures.QUIVERS:
        return fixtures.QUIVERS[source]()
    return quiver_from_doc(_load_json(source))


def load_representation(q: Quiver, source: str, p: int) -> Representation:
    """A named fixture, a representation document, or a class token (built over GF(p))."""
    if source in fixtures.REPRESENTATIONS:
        rep = fixtures.REPRESENTATIONS[source](p)
        if rep.quiver != q:
            raise ParseError(f"fixture {source!r} lives on A2")
        return rep
    stripped = source.strip()
    if stripped.startswith("{") or Path(source).exists():
        doc = _load_json(source)
        try:
            return Representation.from_dict(q, doc)
        except ValueError as exc:
            raise ParseError(str(exc)) from exc
    from .dynkin import rep_of_class

    return rep_of_class(parse_class(q, source), p)


def parse_vector(text: str) -> tuple[int, ...]:
    """'2,2', '(2,2)' or '[2,2]'."""
    body = text.strip().strip("()[]")
    if not body:
        return ()
    try:
        return tuple(int(x) for x in body.split(","))
    except ValueError as exc:
        raise ParseError(f"not an integer vector: {text!r}") from exc


def parse_word(q: Quiver, text: str) -> tuple:
    """Comma separated vertex ids, matched against the quiver's vertices by their text."""
    names = {str(v): v for v in q.vertices}
    body = text.strip().strip("()[]")
    letters = [x.strip() for x in body.split(",") if x.strip()]
    if not letters:
        raise ParseError("empty word")
    try:
        return tuple(names[x] for x in letters)
    except KeyError as exc:
        raise ParseError(f"unknown vertex {exc.args[0]!r} in word {text!r}") from exc


def parse_filtration(text: str) -> Filtration:
    """'G', a JSON list of dimension vectors, or levels separated by ';'."""
    if text in fixtures.FILTRATIONS:
        return fixtures.FILTRATIONS[text]()
    if text.strip().startswith("[["):
        raw = _load_json(text)
        levels = tuple(tuple(int(x) for x in lvl) for lvl in raw)
    else:
        levels = tuple(parse_vector(part) for part in text.split(";"))
    try:
        return Filtration(levels)
    except FiltrationError as exc:
        raise ParseError(str(exc)) from exc


_TERM = re.compile(r"^([A-Za-z]*)([0-9(),\[\]]*)(?:[.^](\d+))?$")


def _paths_from(q: Quiver, v) -> tuple[int, ...]:
    counts = [0] * q.n
    stack = [v]
    while stack:
        x = stack.pop()
        counts[q.index(x)] += 1
        stack.extend(a.target for a in q.arrows_out_of(x))
    return tuple(counts)


def _paths_to(q: Quiver, v) -> tuple[int, ...]:
    counts = [0] * q.n
    stack = [v]
    while stack:
        x = stack.pop()
        counts[q.index(x)] += 1
        stack.extend(a.source for a in q.arrows_into(x))
    return tuple(counts)


def _vertex(q: Quiver, name: str):
    for v in q.vertices:
        if str(v) == name:
            return v
    raise ParseError(f"unknown vertex {name!r}")


def _root_of(q: Quiver, head: str, tail: str) -> tuple[int, ...]:
    if head == "S":
        if not tail:
            if q.n != 1:
                raise ParseError("'S' without a vertex is only allowed on a one-vertex quiver")
            return q.simple_dim(q.vertices[0])
        return q.simple_dim(_vertex(q, tail))
    if head in ("P", "I"):
        if not tail:
            ends = q.sources() if head == "P" else q.sinks()
            if len(ends) != 1:
                raise ParseError(f"'{head}' needs a vertex when the quiver has {len(ends)} candidates")
            tail = str(ends[0])
        v = _vertex(q, tail)
        return _paths_from(q, v) if head == "P" else _paths_to(q, v)
    if head:
        raise ParseError(f"unknown indecomposable name {head!r}")
    if "," in tail or tail.startswith(("(", "[")):
        return parse_vector(tail)
    if len(tail) == q.n:
        return tuple(int(c) for c in tail)
    raise ParseError(f"cannot read root {tail!r}")


def parse_class(q: Quiver, text: str) -> IsoClass:
    """Sum of terms NAME[.m]; NAME is S, S<v>, P, P<v>, I, I<v> or a root such as 110 or (1,1,0).

    A JSON list of [root, multiplicity] pairs is accepted as well.
    """
    text = text.strip()
    roots = positive_roots(q)
    counts: dict = {}
    if text.startswith("[["):
        try:
            for root, m in json.loads(text):
                counts[tuple(root)] = counts.get(tuple(root), 0) + int(m)
        except (ValueError, TypeError) as exc:
            raise ParseError(f"cannot read class list {text!r}") from exc
    else:
        for term in text.split("+"):
            match = _TERM.match(term.strip())
            if not match:
                raise ParseError(f"cannot read class term {term!r}")
            head, tail, mult = match.groups()
            root = _root_of(q, head, tail)
            counts[root] = counts.get(root, 0) + (int(mult) if mult else 1)
    for root in counts:
        if root not in roots:
            raise ParseError(f"{root} is not a positive root")
    return IsoClass.from_roots(q, counts)
