"""
Mutations of directed A-infinity categories: shift, c, c^-1, r, r^-1, and
words in them.

Indices are 0-based here.  With m objects, c moves the first object to the
end, r swaps the last two; the inverse moves undo them.  Objects are
renamed after the corresponding Hurwitz moves, e.g. c turns
(L1, ..., Lm) into (tau_{L1}(L2), ..., tau_{L1}(Lm), L1).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

from .ainf import AInfCategory, ValidationReport, gram_matrix, hom_dims_table, validate_ainf
from .gf2 import GradedSpace, dual, dual_label, unique_labels
from .twist import (Summand, component_label, cone, evaluation, coevaluation,
                    extract_directed_subcategory, object_tw)


class MutationError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Hurwitz names

_SUP = str.maketrans("0123456789-", "⁰¹²³⁴⁵⁶⁷⁸⁹⁻")
_UNSUP = str.maketrans("⁰¹²³⁴⁵⁶⁷⁸⁹⁻", "0123456789-")
_LETTER = re.compile(r"τ([⁻⁰¹²³⁴⁵⁶⁷⁸⁹]*)_\{([^{}()]+)\}")


def _reduce(word):
    out = []
    for base, e in word:
        if out and out[-1][0] == base:
            e += out.pop()[1]
        if e:
            out.append((base, e))
    return tuple(out)


@dataclass(frozen=True)
class HurwitzName:
    """An object named as tau-word applied to a base object: w(L)."""

    base: str
    word: tuple[tuple[str, int], ...] = ()

    @classmethod
    def parse(cls, text: str) -> "HurwitzName":
        pos, word = 0, []
        while True:
            mt = _LETTER.match(text, pos)
            if not mt:
                break
            exp = mt.group(1).translate(_UNSUP)
            word.append((mt.group(2), int(exp) if exp else 1))
            pos = mt.end()
        if not word:
            return cls(text)
        rest = text[pos:]
        if not (rest.startswith("(") and rest.endswith(")")) or len(rest) < 3:
            return cls(text)
        return cls(rest[1:-1], _reduce(word))

    def __str__(self):
        if not self.word:
            return self.base
        parts = []
        for base, e in self.word:
            exp = "" if e == 1 else str(e).translate(_SUP)
            parts.append(f"τ{exp}_{{{base}}}")
        return "".join(parts) + f"({self.base})"

    def twisted_by(self, other: "HurwitzName", eps: int) -> "HurwitzName":
        """tau_{other}^eps applied to self; tau_{g(L)} = g tau_L g^-1."""
        g = other.word
        ginv = tuple((b, -e) for b, e in reversed(g))
        word = list(_reduce(g + ((other.base, eps),) + ginv + self.word))
        while word and word[-1][0] == self.base:
            word.pop()  # tau_M fixes M
        return HurwitzName(self.base, tuple(word))


def names_of(a: AInfCategory) -> list[HurwitzName]:
    return [HurwitzName.parse(n) for n in a.names]


def names_c(names):
    return [n.twisted_by(names[0], 1) for n in names[1:]] + list(names[:1])


def names_c_inv(names):
    return list(names[-1:]) + [n.twisted_by(names[-1], -1) for n in names[:-1]]


def names_r(names):
    if len(names) < 2:
        return list(names)
    return list(names[:-2]) + [names[-1].twisted_by(names[-2], 1), names[-2]]


def names_r_inv(names):
    if len(names) < 2:
        return list(names)
    return list(names[:-2]) + [names[-1], names[-2].twisted_by(names[-1], -1)]


def _rendered(names):
    return [str(n) for n in names]


# ---------------------------------------------------------------------------
# moves

def apply_shift(a: AInfCategory, sigma) -> AInfCategory:
    """Shift X^i by sigma_i: hom(X^i, X^k) is regraded by sigma_i - sigma_k."""
    sigma = [int(s) for s in sigma]
    if len(sigma) != a.m:
        raise MutationError(f"shift vector has length {len(sigma)}, expected {a.m}")
    homs = {(i, k): GradedSpace(tuple((lab, d + sigma[i] - sigma[k]) for lab, d in s.basis))
            for (i, k), s in a.homs.items()}
    return AInfCategory.from_table(a.names, homs, a.table)


def _dual_shift(space: GradedSpace) -> GradedSpace:
    # V^v[-1]: a basis vector b of degree |b| becomes b^v of degree 1 - |b|
    return GradedSpace(tuple((lab, d + 1) for lab, d in dual(space).basis))


def _bits(v):
    j = 0
    while v:
        if v & 1:
            yield j
        v >>= 1
        j += 1


def apply_c(a: AInfCategory) -> AInfCategory:
    """(X^1, ..., X^m) -> (X^2, ..., X^m, X^1) with hom(Y^i, Y^m) = hom(X^1, X^{i+1})^v[-1].

    Along a chain ending at the last object,
        mu(a^1, ..., a^{d-1}, x^v) = sum of b^v with x in mu_A(b, a^1, ..., a^{d-1}).
    """
    m = a.m
    if m <= 1:
        return AInfCategory.from_table(a.names, a.homs, a.table)
    homs = {}
    for i in range(m - 1):
        for k in range(i + 1, m - 1):
            homs[(i, k)] = a.hom(i + 1, k + 1)
        homs[(i, m - 1)] = _dual_shift(a.hom(0, i + 1))
    table: dict = {}
    for (chain, ins), out in a.table.items():
        if chain[0] > 0:
            key = (tuple(c - 1 for c in chain), ins)
            table[key] = table.get(key, 0) ^ out
            continue
        ychain = tuple(c - 1 for c in chain[1:]) + (m - 1,)
        for x in _bits(out):
            key = (ychain, ins[1:] + (x,))
            table[key] = table.get(key, 0) ^ (1 << ins[0])
    return AInfCategory.from_table(_rendered(names_c(names_of(a))), homs, table)


def apply_c_inv(a: AInfCategory) -> AInfCategory:
    """(X^1, ..., X^m) -> (X^m, X^1, ..., X^{m-1}) with hom(Z^1, Z^k) = hom(X^{k-1}, X^m)^v[-1].

    Along a chain starting at the first object,
        mu(y^v, a^1, ..., a^{d-1}) = sum of x^v with y in mu_A(a^1, ..., a^{d-1}, x).
    """
    m = a.m
    if m <= 1:
        return AInfCategory.from_table(a.names, a.homs, a.table)
    homs = {}
    for k in range(1, m):
        homs[(0, k)] = _dual_shift(a.hom(k - 1, m - 1))
        for i in range(1, k):
            homs[(i, k)] = a.hom(i - 1, k - 1)
    table: dict = {}
    for (chain, ins), out in a.table.items():
        if chain[-1] < m - 1:
            key = (tuple(c + 1 for c in chain), ins)
            table[key] = table.get(key, 0) ^ out
            continue
        zchain = (0,) + tuple(c + 1 for c in chain[:-1])
        for y in _bits(out):
            key = (zchain, (y,) + ins[:-1])
            table[key] = table.get(key, 0) ^ (1 << ins[-1])
    return AInfCategory.from_table(_rendered(names_c_inv(names_of(a))), homs, table)


def _twist(a: AInfCategory, x: int, y: int, cone_log=None):
    vx, ev = evaluation(x, object_tw(a, y))
    t = cone(ev, vx, object_tw(a, y))
    if cone_log is not None:
        cone_log.append((ev, vx, object_tw(a, y)))
    return t


def _dual_twist(a: AInfCategory, x: int, y: int, cone_log=None):
    w, coev = coevaluation(x, object_tw(a, y))
    t = cone(coev, object_tw(a, y), w)
    if cone_log is not None:
        cone_log.append((coev, object_tw(a, y), w))
    return t.shifted(-1)


def r_objects(a: AInfCategory, cone_log=None):
    """(X^1, ..., X^{m-2}, T_{X^{m-1}}(X^m), X^{m-1}) as twisted complexes."""
    m = a.m
    return ([object_tw(a, i) for i in range(m - 2)]
            + [_twist(a, m - 2, m - 1, cone_log), object_tw(a, m - 2)])


def r_inv_objects(a: AInfCategory, cone_log=None):
    """(X^1, ..., X^{m-2}, X^m, T'_{X^m}(X^{m-1}))."""
    m = a.m
    return ([object_tw(a, i) for i in range(m - 2)]
            + [object_tw(a, m - 1), _dual_twist(a, m - 1, m - 2, cone_log)])


def apply_r(a: AInfCategory, cone_log=None, crosscheck: bool = True) -> AInfCategory:
    """r-mutation by extraction from Tw A, checked against :func:`r_formula`."""
    if a.m < 2:
        raise MutationError("r needs at least two objects")
    names = _rendered(names_r(names_of(a)))
    out = extract_directed_subcategory(r_objects(a, cone_log), names)
    if crosscheck:
        ref = r_formula(a)
        if not out.same_data(ref, names=False):
            raise MutationError("internal consistency failure: extracted r-mutation "
                                "differs from the explicit formulas")
    return out


def apply_r_inv(a: AInfCategory, cone_log=None) -> AInfCategory:
    """Inverse r-mutation by extraction on (..., X^m, T'_{X^m}(X^{m-1}))."""
    if a.m < 2:
        raise MutationError("r^-1 needs at least two objects")
    names = _rendered(names_r_inv(names_of(a)))
    return extract_directed_subcategory(r_inv_objects(a, cone_log), names)


# ---------------------------------------------------------------------------
# explicit r formulas

def r_formula(a: AInfCategory) -> AInfCategory:
    """rA written out directly from the block formulas (no twisted complexes).

    With p = m-2, q = m-1 (0-based) and new objects Z:
      hom(Z^i, Z^k)   = hom(X^i, X^k)                        k < p
      hom(Z^i, Z^q)   = hom(X^i, X^p)
      hom(Z^i, Z^p)   = (hom(X^p, X^q) (x) hom(X^i, X^p))[1] + hom(X^i, X^q)
      hom(Z^p, Z^q)   = hom(X^p, X^q)^v[-1]
    """
    m = a.m
    if m < 2:
        raise MutationError("r needs at least two objects")
    p, q = m - 2, m - 1
    hb = a.hom(p, q)
    nb = hb.dim
    homs = {}
    off_c = {}
    for i in range(p):
        for k in range(i + 1, p):
            homs[(i, k)] = a.hom(i, k)
        homs[(i, q)] = a.hom(i, p)
        hx, hc = a.hom(i, p), a.hom(i, q)
        labels, degs = [], []
        for blab, bdeg in hb.basis:
            tgt = Summand(p, 1 - bdeg, blab)
            for xlab, xdeg in hx.basis:
                labels.append(component_label(Summand(i), tgt, xlab))
                degs.append(xdeg + bdeg - 1)
        off_c[i] = len(labels)
        for clab, cdeg in hc.basis:
            labels.append(clab)
            degs.append(cdeg)
        homs[(i, p)] = GradedSpace(tuple(zip(unique_labels(labels), degs)))
    homs[(p, q)] = _dual_shift(hb)

    def bx(i, b, x):
        return b * a.hom(i, p).dim + x

    table: dict = {}

    def put(key, val):
        table[key] = table.get(key, 0) ^ val

    for (chain, ins), out in a.table.items():
        last = chain[-1]
        if last < p:
            put((chain, ins), out)
        elif last == p:
            put((chain[:-1] + (q,), ins), out)
            i0, i1 = chain[0], chain[-2]
            for b in range(nb):
                val = 0
                for x in _bits(out):
                    val |= 1 << bx(i0, b, x)
                put((chain[:-1] + (p,), ins[:-1] + (bx(i1, b, ins[-1]),)), val)
        elif chain[-2] == p:
            if len(chain) == 2:
                # mu^1 on hom(X^p, X^q): acts on the tensor factor and, dually, on hom(Z^p, Z^q)
                for i in range(p):
                    for x in range(a.hom(i, p).dim):
                        val = 0
                        for b2 in _bits(out):
                            val |= 1 << bx(i, b2, x)
                        put(((i, p), (bx(i, ins[0], x),)), val)
                for b2 in _bits(out):
                    put(((p, q), (b2,)), 1 << ins[0])
            else:
                i0, i1 = chain[0], chain[-3]
                put((chain[:-2] + (p,), ins[:-2] + (bx(i1, ins[-1], ins[-2]),)),
                    out << off_c[i0])
        else:
            i0, i1 = chain[0], chain[-2]
            put((chain[:-1] + (p,), ins[:-1] + (off_c[i1] + ins[-1],)), out << off_c[i0])
    # mu^2(b (x) x, beta^v) = <beta, b> x
    for i in range(p):
        for b in range(nb):
            for x in range(a.hom(i, p).dim):
                put(((i, p, q), (bx(i, b, x), b)), 1 << x)
    return AInfCategory.from_table(_rendered(names_r(names_of(a))), homs, table)


# ---------------------------------------------------------------------------
# cross-checks and predictions

def c_objects(a: AInfCategory, cone_log=None):
    """(T_{X^1}(X^2), ..., T_{X^1}(X^m), X^1)."""
    return [_twist(a, 0, k, cone_log) for k in range(1, a.m)] + [object_tw(a, 0)]


def subcategory_crosscheck_c(a: AInfCategory, cone_log=None) -> ValidationReport:
    """Compare H(hom) dims of apply_c(a) with the subcategory of Tw A it models."""
    rep = ValidationReport("c-crosscheck")
    if a.m <= 1:
        return rep
    mine = hom_dims_table(apply_c(a))
    ext = hom_dims_table(extract_directed_subcategory(c_objects(a, cone_log)))
    for pair in sorted(mine):
        rep.checked += 1
        if mine[pair] != ext[pair]:
            rep.add("dims", f"pair {pair}", f"formula {mine[pair]} != extraction {ext[pair]}")
    return rep


def predicted_gram(g, move) -> np.ndarray:
    """Gram matrix after a move, from the hom-space definitions alone.

    Duals and the shift [-1] each negate Euler characteristics; so does a
    shift by an odd amount.  ``move`` is "c", "c-", "r", "r-" or
    ("shift", sigma).
    """
    g = np.asarray(g, dtype=np.int64)
    m = g.shape[0]
    out = np.eye(m, dtype=np.int64)
    if isinstance(move, tuple) and move[0] == "shift":
        sig = np.asarray(move[1], dtype=np.int64)
        sign = np.where((sig[:, None] - sig[None, :]) % 2 == 0, 1, -1)
        return g * sign
    if m <= 1:
        return g.copy()
    if move == "c":
        for i in range(m - 1):
            for k in range(i + 1, m - 1):
                out[i, k] = g[i + 1, k + 1]
            out[i, m - 1] = -g[0, i + 1]
    elif move == "c-":
        for k in range(1, m):
            out[0, k] = -g[k - 1, m - 1]
            for i in range(1, k):
                out[i, k] = g[i - 1, k - 1]
    elif move in ("r", "r-"):
        p, q = m - 2, m - 1
        for i in range(p):
            for k in range(i + 1, p):
                out[i, k] = g[i, k]
        out[p, q] = -g[p, q]
        for i in range(p):
            if move == "r":
                out[i, q] = g[i, p]
                out[i, p] = g[i, q] - g[p, q] * g[i, p]
            else:
                out[i, p] = g[i, q]
                out[i, q] = g[i, p] - g[p, q] * g[i, q]
    else:
        raise MutationError(f"unknown move {move!r}")
    return out


# ---------------------------------------------------------------------------
# words

_TOKEN = re.compile(r"\s*(shift\s*\([^)]*\)|\S+)")
_ALIASES = {"c": "c", "c-": "c-", "c⁻¹": "c-", "r": "r", "r-": "r-", "r⁻¹": "r-"}


@dataclass(frozen=True)
class MutationWord:
    """A word in the moves; as written, the rightmost move is applied first."""

    moves: tuple = ()

    def __str__(self):
        return " ".join(_move_str(mv) for mv in self.moves)

    def __len__(self):
        return len(self.moves)

    def application_order(self, left_to_right: bool = False) -> list[tuple[int, object]]:
        """(position in the word, move) in the order the moves are applied."""
        idx = list(enumerate(self.moves))
        return idx if left_to_right else idx[::-1]


def _move_str(mv):
    if isinstance(mv, tuple):
        return "shift(" + ",".join(str(s) for s in mv[1]) + ")"
    return mv


def parse_word(text: str) -> MutationWord:
    moves = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        tok = mt.group(1)
        pos = mt.end()
        if tok.startswith("shift"):
            inner = tok[tok.index("(") + 1:-1]
            try:
                sigma = tuple(int(s) for s in inner.split(",")) if inner.strip() else ()
            except ValueError:
                raise MutationError(f"bad shift vector in {tok!r}") from None
            moves.append(("shift", sigma))
        elif tok in _ALIASES:
            moves.append(_ALIASES[tok])
        else:
            raise MutationError(f"unknown move {tok!r} (expected c, c-, r, r-, shift(...))")
    return MutationWord(tuple(moves))


@dataclass
class MoveResult:
    category: AInfCategory
    provenance: list = field(default_factory=list)
    names: list = field(default_factory=list)


def apply_move(a: AInfCategory, move, cone_log=None) -> AInfCategory:
    if isinstance(move, tuple) and move[0] == "shift":
        return apply_shift(a, move[1])
    if move == "c":
        return apply_c(a)
    if move == "c-":
        return apply_c_inv(a)
    if move == "r":
        return apply_r(a, cone_log)
    if move == "r-":
        return apply_r_inv(a, cone_log)
    raise MutationError(f"unknown move {move!r}")


def apply_word(a: AInfCategory, word, left_to_right: bool = False, validate: bool = True,
               cone_log=None) -> MoveResult:
    """Apply a word move by move, logging gram matrices and names.

    Raises MutationError naming the position (0-based, in the written word)
    of the first move that fails or produces an invalid category.
    """
    if isinstance(word, str):
        word = parse_word(word)
    cur = a
    log = [{"step": 0, "move": None, "position": None, "names": list(cur.names),
            "gram": gram_matrix(cur).tolist()}]
    for step, (pos, mv) in enumerate(word.application_order(left_to_right), start=1):
        try:
            cur = apply_move(cur, mv, cone_log)
        except ValueError as exc:
            raise MutationError(f"move {_move_str(mv)!r} at position {pos} failed: {exc}") from exc
        if validate:
            rep = validate_ainf(cur)
            if not rep.ok:
                raise MutationError(f"move {_move_str(mv)!r} at position {pos} produced an "
                                    f"invalid category: {rep.violations[0]}")
        log.append({"step": step, "move": _move_str(mv), "position": pos,
                    "names": list(cur.names), "gram": gram_matrix(cur).tolist()})
    return MoveResult(cur, log, names_of(cur))
