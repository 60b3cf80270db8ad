"""
Directed A-infinity categories over GF(2).

Objects are numbered 0..m-1.  hom(i, k) is stored for i < k only; hom(i, i)
is the line spanned by a strict identity and is never stored; hom(i, k) = 0
for i > k.  Compositions are sparse: an entry says that
mu^d(a^1, ..., a^d) contains the basis element ``output`` (coefficients are
always 1 over GF(2); repeated entries cancel).

Input order is *storage order*: a^1 is the first morphism applied, so the
entry for the usual notation mu^2(b, a) (first a, then b) has inputs (a, b).
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping, Sequence

import numpy as np

from .gf2 import GradedMap, GradedSpace, differential_cohomology, euler

ID_LABEL = "id"
IDENTITY_LINE = GradedSpace(((ID_LABEL, 0),))


@dataclass(frozen=True)
class MuEntry:
    chain: tuple[int, ...]
    inputs: tuple[str, ...]
    output: str

    def __post_init__(self):
        object.__setattr__(self, "chain", tuple(int(c) for c in self.chain))
        object.__setattr__(self, "inputs", tuple(self.inputs))

    @property
    def d(self) -> int:
        return len(self.inputs)


@dataclass(frozen=True)
class Violation:
    kind: str
    where: str
    message: str

    def __str__(self):
        return f"[{self.kind}] {self.where}: {self.message}"


@dataclass
class ValidationReport:
    name: str
    violations: list[Violation] = field(default_factory=list)
    checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def add(self, kind, where, message):
        self.violations.append(Violation(kind, where, message))

    def as_dict(self) -> dict:
        return {
            "check": self.name,
            "ok": self.ok,
            "checked": self.checked,
            "violations": [vars(v) for v in self.violations],
        }


class AInfCategory:
    """A finite directed A-infinity category over GF(2).

    Construction is deliberately lenient so that :func:`validate_directed`
    can report malformed data; anything that evaluates compositions first
    checks the shape and raises ``ValueError`` if it is broken.
    """

    def __init__(self, names: Sequence[str], homs: Mapping[tuple[int, int], GradedSpace],
                 mu: Iterable[MuEntry] = ()):
        self.names = tuple(str(n) for n in names)
        self.homs = {}
        for (i, k), space in homs.items():
            if not isinstance(space, GradedSpace):
                space = GradedSpace(tuple(space))
            self.homs[(int(i), int(k))] = space
        self._raw = tuple(e if isinstance(e, MuEntry) else MuEntry(*e) for e in mu)
        self._table = None

    @classmethod
    def from_table(cls, names, homs, table: Mapping[tuple[tuple[int, ...], tuple[int, ...]], int]):
        """Build directly from ``{(chain, input indices): output mask}``; trusted input."""
        cat = cls(names, homs)
        cat._table = {key: v for key, v in table.items() if v}
        return cat

    # -- basic shape ---------------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.names)

    def hom(self, i: int, k: int) -> GradedSpace:
        if not (0 <= i < self.m and 0 <= k < self.m):
            raise IndexError(f"object index out of range: ({i}, {k}) with m = {self.m}")
        if i == k:
            return IDENTITY_LINE
        if i > k:
            return GradedSpace()
        return self.homs.get((i, k), GradedSpace())

    def pairs(self):
        return list(combinations(range(self.m), 2))

    # -- composition table -------------------------------------------------------

    @property
    def table(self) -> dict[tuple[tuple[int, ...], tuple[int, ...]], int]:
        """``{(chain, input basis indices): output mask}`` with zero entries dropped."""
        if self._table is None:
            report = validate_directed(self)
            if not report.ok:
                raise ValueError("not a valid directed category:\n  "
                                 + "\n  ".join(map(str, report.violations[:10])))
            table: dict = {}
            for e in self._raw:
                ins = tuple(self.hom(e.chain[v], e.chain[v + 1]).index(lab)
                            for v, lab in enumerate(e.inputs))
                out = self.hom(e.chain[0], e.chain[-1]).index(e.output)
                key = (e.chain, ins)
                table[key] = table.get(key, 0) ^ (1 << out)
            self._table = {k: v for k, v in table.items() if v}
        return self._table

    @cached_property
    def by_chain(self) -> dict[tuple[int, ...], list[tuple[tuple[int, ...], int]]]:
        out = defaultdict(list)
        for (chain, ins), v in sorted(self.table.items(), key=lambda kv: (len(kv[0][0]), kv[0])):
            out[chain].append((ins, v))
        return dict(out)

    @cached_property
    def chain_prefixes(self) -> frozenset:
        pre = set()
        for chain in self.by_chain:
            for j in range(1, len(chain) + 1):
                pre.add(chain[:j])
        return frozenset(pre)

    def entries(self) -> list[MuEntry]:
        """Canonical entry list: sorted by arity, chain, input indices; one per output bit."""
        out = []
        for (chain, ins), v in sorted(self.table.items(), key=lambda kv: (len(kv[0][0]), kv[0])):
            labels = tuple(self.hom(chain[n], chain[n + 1]).basis[j][0] for n, j in enumerate(ins))
            target = self.hom(chain[0], chain[-1])
            for lab in target.support(v):
                out.append(MuEntry(chain, labels, lab))
        return out

    def mu(self, chain: Sequence[int], vectors: Sequence[int]) -> int:
        """Evaluate mu^d on vectors (bitmasks) along a non-decreasing chain.

        Repeated indices carry the identity line (mask 1 = id).  Strict
        unitality: only mu^2 sees identities.
        """
        chain = tuple(chain)
        d = len(vectors)
        if any(v == 0 for v in vectors):
            return 0
        if any(chain[n] == chain[n + 1] for n in range(d)):
            if d != 2:
                return 0
            if chain[0] == chain[1]:
                return vectors[1] if vectors[0] & 1 else 0
            return vectors[0] if vectors[1] & 1 else 0
        out = 0
        for ins, v in self.by_chain.get(chain, ()):
            for x, j in zip(vectors, ins):
                if not (x >> j) & 1:
                    break
            else:
                out ^= v
        return out

    def mu_labels(self, chain, labels) -> list[str]:
        """Convenience: evaluate on single basis labels, return output labels."""
        vecs = [self.hom(chain[n], chain[n + 1]).vector([lab]) for n, lab in enumerate(labels)]
        return self.hom(chain[0], chain[-1]).support(self.mu(chain, vecs))

    def mu1(self, i: int, k: int) -> GradedMap:
        space = self.hom(i, k)
        if i >= k:
            return GradedMap.zero(space, space, 1)
        return GradedMap(space, space, 1, tuple(self.mu((i, k), [1 << j]) for j in range(space.dim)))

    # -- comparison / display ------------------------------------------------------

    def canonical(self):
        homs = tuple((p, self.homs[p].basis) for p in sorted(self.homs) if self.homs[p].dim)
        return (self.names, homs, tuple(self.entries()))

    def same_data(self, other: "AInfCategory", names: bool = True) -> bool:
        a, b = self.canonical(), other.canonical()
        if not names:
            a, b = a[1:], b[1:]
        return a == b

    def __eq__(self, other):
        if not isinstance(other, AInfCategory):
            return NotImplemented
        return self.same_data(other)

    __hash__ = None

    def __repr__(self):
        n = len(self.table) if self._table is not None else len(self._raw)
        return f"AInfCategory(m={self.m}, names={list(self.names)}, mu-entries={n})"

    def with_names(self, names) -> "AInfCategory":
        cat = AInfCategory(names, self.homs, self._raw)
        cat._table = self._table
        return cat


# ---------------------------------------------------------------------------
# validators

def _one_based(chain):
    # report locations use 1-based object positions, like the file format
    return [c + 1 for c in chain]


def validate_directed(a: AInfCategory) -> ValidationReport:
    """Shape check: hom placement, chains, labels and the degree 2 - d rule.

    Locations in the report are 1-based object positions.
    """
    rep = ValidationReport("directed")
    m = a.m
    for (i, k), space in a.homs.items():
        rep.checked += 1
        if not (0 <= i < m and 0 <= k < m):
            rep.add("hom", f"hom({i + 1},{k + 1})", "object index out of range")
        elif i >= k and space.dim:
            rep.add("hom", f"hom({i + 1},{k + 1})", "stored hom space must have i < k")
    raw = a._raw if (a._raw or a._table is None) else a.entries()
    for n, e in enumerate(raw):
        rep.checked += 1
        where = f"mu entry #{n} chain={_one_based(e.chain)} inputs={list(e.inputs)}"
        if e.d < 1:
            rep.add("mu", where, "arity must be at least 1")
            continue
        if len(e.chain) != e.d + 1:
            rep.add("mu", where, f"chain has {len(e.chain)} objects, expected {e.d + 1}")
            continue
        if any(not (0 <= c < m) for c in e.chain):
            rep.add("mu", where, "object index out of range")
            continue
        if any(e.chain[j] >= e.chain[j + 1] for j in range(e.d)):
            rep.add("mu", where, "chain not strictly increasing")
            continue
        deg = 0
        bad = False
        for v, lab in enumerate(e.inputs):
            space = a.hom(e.chain[v], e.chain[v + 1])
            if lab not in space:
                rep.add("mu", where, f"input {lab!r} not in hom({e.chain[v] + 1},{e.chain[v + 1] + 1})")
                bad = True
            else:
                deg += space.degree(lab)
        target = a.hom(e.chain[0], e.chain[-1])
        if e.output not in target:
            rep.add("mu", where, f"output {e.output!r} not in hom({e.chain[0] + 1},{e.chain[-1] + 1})")
            bad = True
        if bad:
            continue
        want = deg + 2 - e.d
        got = target.degree(e.output)
        if got != want:
            rep.add("degree", where + f" -> {e.output}",
                    f"output has degree {got}, mu^{e.d} requires {want}")
    return rep


def _extended_entries(a: AInfCategory):
    """Stored entries plus the implicit unit entries mu^2(id, x) = mu^2(x, id) = x."""
    out = list(a.table.items())
    for i in range(a.m):
        out.append((((i, i, i), (0, 0)), 1))
    for (i, k) in a.pairs():
        for j in range(a.hom(i, k).dim):
            out.append((((i, i, k), (0, j)), 1 << j))
            out.append((((i, k, k), (j, 0)), 1 << j))
    return out


def ainf_residuals(a: AInfCategory) -> dict:
    """Nonzero values of the A-infinity relations, keyed by (chain, input indices).

    Over GF(2) the relation for a^1..a^d (storage order) is
        sum over p, q of mu(a^1..a^p, mu^q(a^{p+1}..a^{p+q}), a^{p+q+1}..a^d) = 0.
    Every nonzero term is a composite of two nonzero entries, so it is enough
    to pair up entries; identity inputs enter through the unit entries.
    """
    ext = _extended_entries(a)
    inner = defaultdict(list)  # (src, tgt, output bit) -> [(chain, inputs)]
    for (chain, ins), v in ext:
        j = 0
        while v:
            if v & 1:
                inner[(chain[0], chain[-1], j)].append((chain, ins))
            v >>= 1
            j += 1
    acc: dict = {}
    for (ochain, oins), ov in ext:
        for p, u in enumerate(oins):
            for ichain, iins in inner.get((ochain[p], ochain[p + 1], u), ()):
                chain = ochain[:p + 1] + ichain[1:-1] + ochain[p + 1:]
                ins = oins[:p] + iins + oins[p + 1:]
                key = (chain, ins)
                acc[key] = acc.get(key, 0) ^ ov
    return {k: v for k, v in acc.items() if v}


def validate_ainf(a: AInfCategory) -> ValidationReport:
    """Check every A-infinity relation, including those with identity inputs."""
    rep = validate_directed(a)
    rep.name = "ainf"
    if not rep.ok:
        return rep
    res = ainf_residuals(a)
    rep.checked += len(a.table)
    for (chain, ins), v in sorted(res.items()):
        labels = [a.hom(chain[n], chain[n + 1]).basis[j][0] for n, j in enumerate(ins)]
        out = a.hom(chain[0], chain[-1]).support(v)
        rep.add("relation", f"d={len(ins)} chain={_one_based(chain)} inputs={labels}",
                f"nonzero residual {out}")
    return rep


# ---------------------------------------------------------------------------
# cohomology-level reports

def hom_cohomology(a: AInfCategory, i: int, k: int) -> dict[int, int]:
    """Graded dims of H(hom(X^i, X^k), mu^1)."""
    if not (0 <= i < a.m and 0 <= k < a.m):
        raise IndexError(f"object index out of range: ({i}, {k}) with m = {a.m}")
    if i == k:
        return {0: 1}
    if i > k:
        return {}
    return differential_cohomology(a.mu1(i, k))


def gram_matrix(a: AInfCategory) -> np.ndarray:
    g = np.eye(a.m, dtype=np.int64)
    for i, k in a.pairs():
        g[i, k] = euler(hom_cohomology(a, i, k))
    return g


def hom_dims_table(a: AInfCategory) -> dict[tuple[int, int], dict[int, int]]:
    return {(i, k): hom_cohomology(a, i, k) for i, k in a.pairs()}
