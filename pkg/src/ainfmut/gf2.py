"""
Graded linear algebra over GF(2).

Vectors in a GradedSpace are python ints used as bitmasks over the basis
(bit j <-> basis element j).  Matrix rows are packed the same way, so row
reduction XORs whole rows at once.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

DUAL_MARK = "∨"  # the "v" in a^v


def dual_label(label: str) -> str:
    """a -> a∨ and a∨ -> a, so that double duals give back the original label."""
    if label.endswith(DUAL_MARK):
        return label[: -len(DUAL_MARK)]
    return label + DUAL_MARK


def unique_labels(labels: Sequence[str]) -> list[str]:
    # deterministic fallback for colliding decorated labels
    counts = Counter(labels)
    if all(c == 1 for c in counts.values()):
        return list(labels)
    seen: Counter = Counter()
    out = []
    for lab in labels:
        if counts[lab] > 1:
            out.append(f"{lab}~{seen[lab]}")
            seen[lab] += 1
        else:
            out.append(lab)
    if len(set(out)) != len(out):
        out = [f"{lab}~{j}" for j, lab in enumerate(labels)]
    return out


# ---------------------------------------------------------------------------
# bit-packed row reduction

def pack_rows(matrix) -> list[int]:
    arr = np.asarray(matrix, dtype=np.uint8) % 2
    if arr.ndim != 2:
        raise ValueError("expected a 2d array")
    rows = []
    for row in arr:
        v = 0
        for j in np.flatnonzero(row):
            v |= 1 << int(j)
        rows.append(v)
    return rows


def unpack_rows(rows: Sequence[int], ncols: int) -> np.ndarray:
    out = np.zeros((len(rows), ncols), dtype=np.uint8)
    for i, v in enumerate(rows):
        j = 0
        while v:
            if v & 1:
                out[i, j] = 1
            v >>= 1
            j += 1
    return out


def rank_packed(rows: Iterable[int]) -> int:
    """Rank of a GF(2) matrix given as packed rows.

    Rows are consumed in order; each new row is reduced against the pivots
    found so far, so the earliest row wins a pivot (lowest row index first).
    """
    pivots: dict[int, int] = {}  # leading bit -> reduced row
    rank = 0
    for v in rows:
        while v:
            lead = v.bit_length() - 1
            p = pivots.get(lead)
            if p is None:
                pivots[lead] = v
                rank += 1
                break
            v ^= p
    return rank


def transpose_packed(rows: Sequence[int], ncols: int) -> list[int]:
    cols = [0] * ncols
    for i, v in enumerate(rows):
        j = 0
        while v:
            if v & 1:
                cols[j] |= 1 << i
            v >>= 1
            j += 1
    return cols


# ---------------------------------------------------------------------------
# spaces

@dataclass(frozen=True)
class GradedSpace:
    """Finite-dimensional Z-graded vector space over GF(2) with a labelled basis.

    ``basis`` is an ordered tuple of ``(label, degree)`` pairs.  The order
    matters: it fixes the bit positions used for vectors and matrices.
    """

    basis: tuple[tuple[str, int], ...] = ()
    _index: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        basis = tuple((str(lab), int(deg)) for lab, deg in self.basis)
        object.__setattr__(self, "basis", basis)
        index = {}
        for j, (lab, _) in enumerate(basis):
            if lab in index:
                raise ValueError(f"duplicate basis label {lab!r}")
            index[lab] = j
        object.__setattr__(self, "_index", index)

    @classmethod
    def from_dims(cls, dims: Mapping[int, int], prefix: str = "e") -> "GradedSpace":
        basis = []
        for deg in sorted(dims):
            for j in range(dims[deg]):
                basis.append((f"{prefix}{deg}_{j}", deg))
        return cls(tuple(basis))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    @property
    def labels(self) -> list[str]:
        return [lab for lab, _ in self.basis]

    @property
    def degrees(self) -> list[int]:
        return [deg for _, deg in self.basis]

    @property
    def dims(self) -> dict[int, int]:
        return dict(sorted(Counter(self.degrees).items()))

    def index(self, label: str) -> int:
        return self._index[label]

    def degree(self, label: str) -> int:
        return self.basis[self._index[label]][1]

    def __contains__(self, label) -> bool:
        return label in self._index

    def indices_in_degree(self, deg: int) -> list[int]:
        return [j for j, (_, d) in enumerate(self.basis) if d == deg]

    def vector(self, labels: Iterable[str]) -> int:
        v = 0
        for lab in labels:
            v ^= 1 << self._index[lab]
        return v

    def support(self, v: int) -> list[str]:
        out = []
        j = 0
        while v:
            if v & 1:
                out.append(self.basis[j][0])
            v >>= 1
            j += 1
        return out

    def relabel(self, labels: Sequence[str]) -> "GradedSpace":
        return GradedSpace(tuple(zip(labels, self.degrees)))


def direct_sum(*spaces: GradedSpace) -> GradedSpace:
    basis = []
    for s in spaces:
        basis.extend(s.basis)
    return GradedSpace(tuple(basis))


# ---------------------------------------------------------------------------
# maps

@dataclass(frozen=True)
class GradedMap:
    """Degree-homogeneous linear map, stored as one column-image per source basis vector.

    ``images[j]`` is the image of source basis vector j as a bitmask over the
    target basis.  ``blocks`` gives the same data as per-degree 0/1 matrices
    (rows: target degree k+degree, columns: source degree k).
    """

    source: GradedSpace
    target: GradedSpace
    degree: int
    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(v) for v in self.images)
        object.__setattr__(self, "images", images)
        if len(images) != self.source.dim:
            raise ValueError(
                f"shape mismatch: {len(images)} images for a source of dimension {self.source.dim}")
        for j, v in enumerate(images):
            if v >> self.target.dim:
                raise ValueError(f"image of basis vector {j} has bits outside the target")
            want = self.source.basis[j][1] + self.degree
            for lab in self.target.support(v):
                if self.target.degree(lab) != want:
                    raise ValueError(
                        f"image of {self.source.basis[j][0]!r} has a component in degree "
                        f"{self.target.degree(lab)}, expected {want}")

    @classmethod
    def from_blocks(cls, source, target, degree, blocks: Mapping[int, np.ndarray]) -> "GradedMap":
        images = [0] * source.dim
        for k, block in blocks.items():
            src = source.indices_in_degree(k)
            tgt = target.indices_in_degree(k + degree)
            block = np.asarray(block, dtype=np.uint8) % 2
            if block.shape != (len(tgt), len(src)):
                raise ValueError(
                    f"block for degree {k} has shape {block.shape}, expected {(len(tgt), len(src))}")
            for c, j in enumerate(src):
                v = 0
                for r in np.flatnonzero(block[:, c]):
                    v |= 1 << tgt[int(r)]
                images[j] = v
        return cls(source, target, degree, tuple(images))

    @classmethod
    def zero(cls, source, target, degree=0) -> "GradedMap":
        return cls(source, target, degree, (0,) * source.dim)

    @classmethod
    def identity(cls, space) -> "GradedMap":
        return cls(space, space, 0, tuple(1 << j for j in range(space.dim)))

    def block(self, k: int) -> np.ndarray:
        src = self.source.indices_in_degree(k)
        tgt = self.target.indices_in_degree(k + self.degree)
        out = np.zeros((len(tgt), len(src)), dtype=np.uint8)
        pos = {t: r for r, t in enumerate(tgt)}
        for c, j in enumerate(src):
            for lab in self.target.support(self.images[j]):
                out[pos[self.target.index(lab)], c] = 1
        return out

    @property
    def blocks(self) -> dict[int, np.ndarray]:
        return {k: self.block(k) for k in self.source.dims}

    def __call__(self, v: int) -> int:
        out = 0
        j = 0
        while v:
            if v & 1:
                out ^= self.images[j]
            v >>= 1
            j += 1
        return out

    def __matmul__(self, other: "GradedMap") -> "GradedMap":
        if other.target != self.source:
            raise ValueError("cannot compose: spaces do not match")
        return GradedMap(other.source, self.target, self.degree + other.degree,
                         tuple(self(v) for v in other.images))

    def is_zero(self) -> bool:
        return not any(self.images)


def rank(m: GradedMap) -> dict[int, int]:
    """Per-degree rank, keyed by source degree."""
    out = {}
    for k in m.source.dims:
        out[k] = rank_packed(m.images[j] for j in m.source.indices_in_degree(k))
    return out


def nullity(m: GradedMap) -> dict[int, int]:
    r = rank(m)
    return {k: n - r[k] for k, n in m.source.dims.items()}


# ---------------------------------------------------------------------------
# dual, shift, tensor

def dual(x):
    """Dual of a GradedSpace or GradedMap.

    (V^∨)^d = (V^{-d})^∨, basis order kept, labels decorated with ∨.
    The dual of f: V -> W of degree d is W^∨ -> V^∨, again of degree d,
    with transposed blocks.
    """
    if isinstance(x, GradedSpace):
        return GradedSpace(tuple((dual_label(lab), -deg) for lab, deg in x.basis))
    if isinstance(x, GradedMap):
        src, tgt = dual(x.target), dual(x.source)
        return GradedMap(src, tgt, x.degree, tuple(transpose_packed(x.images, x.target.dim)))
    raise TypeError(f"cannot dualize {type(x).__name__}")


def shift(v: GradedSpace, s: int) -> GradedSpace:
    # (V[s])^d = V^{d+s}; labels are left alone so shifts compose strictly
    return GradedSpace(tuple((lab, deg - s) for lab, deg in v.basis))


def tensor(v: GradedSpace, w: GradedSpace) -> GradedSpace:
    return GradedSpace(tuple((f"({a},{b})", da + db) for a, da in v.basis for b, db in w.basis))


# ---------------------------------------------------------------------------
# complexes

@dataclass(frozen=True)
class CochainComplex:
    """Finite cochain complex T_0 -> T_1 -> ... of graded spaces.

    Every differential must have the declared internal ``degree``; the
    composite of consecutive differentials is checked to vanish.
    """

    terms: tuple[GradedSpace, ...]
    differentials: tuple[GradedMap, ...]
    degree: int = 1

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        object.__setattr__(self, "differentials", tuple(self.differentials))
        if len(self.differentials) != max(len(self.terms) - 1, 0):
            raise ValueError("need exactly one differential between consecutive terms")
        for p, d in enumerate(self.differentials):
            if d.source != self.terms[p] or d.target != self.terms[p + 1]:
                raise ValueError(f"differential {p} does not go from term {p} to term {p + 1}")
            if d.degree != self.degree:
                raise ValueError(f"differential {p} has degree {d.degree}, expected {self.degree}")
        for p in range(len(self.differentials) - 1):
            if not (self.differentials[p + 1] @ self.differentials[p]).is_zero():
                raise ValueError(f"d∘d != 0 at position {p} -> {p + 2}")


def cohomology(c: CochainComplex) -> list[dict[int, int]]:
    """Per-position cohomology dims ``{degree: dim}`` (zero entries dropped)."""
    ranks = [rank(d) for d in c.differentials]
    out = []
    for p, term in enumerate(c.terms):
        dims = {}
        for k, n in term.dims.items():
            h = n
            if p < len(ranks):
                h -= ranks[p].get(k, 0)
            if p > 0:
                h -= ranks[p - 1].get(k - c.degree, 0)
            if h:
                dims[k] = h
        out.append(dims)
    return out


def differential_cohomology(d: GradedMap) -> dict[int, int]:
    """Cohomology dims of a space with a square-zero endomorphism ``d``."""
    if d.source != d.target:
        raise ValueError("differential must be an endomorphism")
    if not (d @ d).is_zero():
        raise ValueError("d∘d != 0")
    r = rank(d)
    out = {}
    for k, n in d.source.dims.items():
        h = n - r.get(k, 0) - r.get(k - d.degree, 0)
        if h:
            out[k] = h
    return out


def total(dims: Mapping[int, int] | Iterable[Mapping[int, int]]) -> int:
    if isinstance(dims, Mapping):
        return sum(dims.values())
    return sum(sum(d.values()) for d in dims)


def euler(dims: Mapping[int, int]) -> int:
    return sum((-1) ** (k % 2) * n for k, n in dims.items())
