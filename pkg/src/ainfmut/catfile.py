"""
Text format for directed A-infinity categories.

    ainfcat 1
    field GF2
    objects X1 X2 X3
    hom 1 2 a:0
    hom 2 3 b:0
    hom 1 3 c:0
    mu 1 2 3 : a b -> c

Object indices are 1-based.  ``hom i k`` lists the basis of hom(X^i, X^k)
as label:degree tokens in order.  ``mu`` lines give one output basis element
of mu^d along a chain, inputs in storage order (first-applied morphism
first); repeating a line cancels it.  ``#`` starts a comment.  Labels and
object names are whitespace-free tokens; "->" and ":" are reserved as whole
tokens.

Canonical form (what :func:`serialize` writes): the header, ``field``,
``objects``, non-empty hom lines ordered by (i, k), then mu lines ordered by
arity, chain and input position, one per output basis element.
"""

from __future__ import annotations

import re
from pathlib import Path

from .ainf import AInfCategory, MuEntry, validate_directed
from .gf2 import GradedSpace

HEADER = "ainfcat 1"
_TOKEN = re.compile(r"\S+")


class ParseError(ValueError):
    def __init__(self, line: int, col: int, message: str):
        self.line, self.col, self.message = line, col, message
        super().__init__(f"line {line}, column {col}: {message}")


def _tokens(text: str):
    cut = text.find("#")
    if cut >= 0:
        text = text[:cut]
    return [(mt.group(0), mt.start() + 1) for mt in _TOKEN.finditer(text)]


def _int(tok, lineno):
    s, col = tok
    try:
        return int(s)
    except ValueError:
        raise ParseError(lineno, col, f"expected an integer, got {s!r}") from None


def parse_category(text: str) -> AInfCategory:
    names = None
    homs: dict = {}
    mu: list = []
    mu_lines: list = []
    seen_header = seen_field = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        toks = _tokens(raw)
        if not toks:
            continue
        key, col = toks[0]
        if not seen_header:
            if " ".join(t for t, _ in toks) != HEADER:
                raise ParseError(lineno, col, f"expected header {HEADER!r}")
            seen_header = True
            continue
        if key == "field":
            if len(toks) != 2 or toks[1][0] != "GF2":
                raise ParseError(lineno, col, "only 'field GF2' is supported")
            seen_field = True
        elif key == "objects":
            if names is not None:
                raise ParseError(lineno, col, "duplicate objects line")
            names = [t for t, _ in toks[1:]]
        elif key == "hom":
            if names is None:
                raise ParseError(lineno, col, "hom line before objects")
            if len(toks) < 3:
                raise ParseError(lineno, col, "expected 'hom i k label:deg ...'")
            i, k = _int(toks[1], lineno), _int(toks[2], lineno)
            if not (1 <= i < k <= len(names)):
                raise ParseError(lineno, toks[1][1], f"need 1 <= i < k <= {len(names)}, got {i} {k}")
            if (i - 1, k - 1) in homs:
                raise ParseError(lineno, col, f"duplicate hom line for {i} {k}")
            basis = []
            labels = set()
            for s, c in toks[3:]:
                lab, sep, deg = s.rpartition(":")
                if not sep or not lab:
                    raise ParseError(lineno, c, f"expected label:degree, got {s!r}")
                if lab in labels:
                    raise ParseError(lineno, c, f"duplicate label {lab!r}")
                labels.add(lab)
                basis.append((lab, _int((deg, c + len(lab) + 1), lineno)))
            homs[(i - 1, k - 1)] = GradedSpace(tuple(basis))
        elif key == "mu":
            if names is None:
                raise ParseError(lineno, col, "mu line before objects")
            words = [t for t, _ in toks]
            if ":" not in words or "->" not in words:
                raise ParseError(lineno, col, "expected 'mu i1 ... : a1 ... -> out'")
            colon, arrow = words.index(":"), words.index("->")
            chain = [_int(t, lineno) - 1 for t in toks[1:colon]]
            inputs = words[colon + 1:arrow]
            if arrow != len(words) - 2:
                raise ParseError(lineno, toks[min(arrow + 1, len(toks) - 1)][1],
                                 "expected exactly one output after '->'")
            if not inputs or len(chain) != len(inputs) + 1:
                raise ParseError(lineno, col, f"chain of {len(chain)} objects does not fit "
                                              f"{len(inputs)} inputs")
            mu.append(MuEntry(tuple(chain), tuple(inputs), words[-1]))
            mu_lines.append((lineno, col))
        else:
            raise ParseError(lineno, col, f"unknown field {key!r}")
    if not seen_header:
        raise ParseError(1, 1, f"missing header {HEADER!r}")
    if not seen_field:
        raise ParseError(1, 1, "missing 'field GF2' line")
    if names is None:
        raise ParseError(1, 1, "missing objects line")
    cat = AInfCategory(names, homs, mu)
    rep = validate_directed(cat)
    if not rep.ok:
        v = rep.violations[0]
        where = v.where
        if where.startswith("mu entry #"):
            n = int(where.split("#")[1].split()[0])
            raise ParseError(*mu_lines[n], f"{v.message} ({where})")
        raise ParseError(1, 1, str(v))
    return cat


def _bad_token(s: str) -> bool:
    return not s or s in ("->", ":") or "#" in s or any(ch.isspace() for ch in s)


def serialize(a: AInfCategory) -> str:
    for name in a.names:
        if _bad_token(name):
            raise ValueError(f"object name {name!r} cannot be written")
    for space in a.homs.values():
        for lab in space.labels:
            if _bad_token(lab):
                raise ValueError(f"basis label {lab!r} cannot be written")
    lines = [HEADER, "field GF2", " ".join(["objects", *a.names]).rstrip()]
    for (i, k) in sorted(a.homs):
        space = a.homs[(i, k)]
        if space.dim:
            lines.append(f"hom {i + 1} {k + 1} " + " ".join(f"{lab}:{d}" for lab, d in space.basis))
    for e in a.entries():
        chain = " ".join(str(c + 1) for c in e.chain)
        lines.append(f"mu {chain} : {' '.join(e.inputs)} -> {e.output}")
    return "\n".join(lines) + "\n"


def load(path) -> AInfCategory:
    return parse_category(Path(path).read_text(encoding="utf-8"))


def dump(a: AInfCategory, path) -> None:
    Path(path).write_text(serialize(a), encoding="utf-8")
