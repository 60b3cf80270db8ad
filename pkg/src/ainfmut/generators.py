"""
Built-in categories: the A3 path category, the knotted-spheres family and a
random corpus of formal directed categories for property tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .ainf import AInfCategory, MuEntry
from .gf2 import GradedSpace, pack_rows, rank_packed


def a3_path() -> AInfCategory:
    """Three objects, one degree-0 morphism in each hom, mu^2(b, a) = c."""
    homs = {
        (0, 1): GradedSpace((("a", 0),)),
        (1, 2): GradedSpace((("b", 0),)),
        (0, 2): GradedSpace((("c", 0),)),
    }
    return AInfCategory(["X1", "X2", "X3"], homs, [MuEntry((0, 1, 2), ("a", "b"), "c")])


# ---------------------------------------------------------------------------
# knotted spheres

@dataclass
class KnottedSpec:
    """R = HF(L1, L2) with the two degree-n endomorphisms q1, q2.

    ``q1``/``q2`` are r x r 0/1 matrices (column j = image of basis vector j)
    or None for zero.  ``degrees`` gives the degree of each basis vector of
    R; by default every vector hit by q1 or q2 sits in degree rdeg + n and
    the rest in degree rdeg.
    """

    r: int
    rdeg: int = 1
    n: int = 2
    q1: np.ndarray | None = None
    q2: np.ndarray | None = None
    degrees: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.r < 0:
            raise ValueError("r must be nonnegative")
        self.q1 = self._mat(self.q1)
        self.q2 = self._mat(self.q2)
        if self.degrees is None:
            hit = (self.q1.any(axis=1) | self.q2.any(axis=1)) if self.r else np.zeros(0, bool)
            self.degrees = tuple(self.rdeg + self.n if h else self.rdeg for h in hit)
        self.degrees = tuple(int(d) for d in self.degrees)
        if len(self.degrees) != self.r:
            raise ValueError(f"need {self.r} degrees, got {len(self.degrees)}")
        for name, q in (("q1", self.q1), ("q2", self.q2)):
            for i, j in zip(*np.nonzero(q)):
                if self.degrees[i] != self.degrees[j] + self.n:
                    raise ValueError(f"{name} is not homogeneous of degree {self.n} "
                                     f"(entry {i},{j})")

    def _mat(self, q):
        if q is None:
            return np.zeros((self.r, self.r), dtype=np.uint8)
        q = np.asarray(q, dtype=np.uint8) % 2
        if q.shape != (self.r, self.r):
            raise ValueError(f"q must be {self.r} x {self.r}, got {q.shape}")
        return q

    def problems(self) -> list[str]:
        out = []
        q1, q2 = self.q1.astype(int), self.q2.astype(int)
        if ((q1 @ q2 - q2 @ q1) % 2).any():
            out.append("q1 q2 != q2 q1")
        if ((q1 @ q1) % 2).any():
            out.append("q1^2 != 0")
        if ((q2 @ q2) % 2).any():
            out.append("q2^2 != 0")
        return out


def gen_knotted(spec: KnottedSpec, check: bool = True) -> AInfCategory:
    """Formal model of the directed category of (L1, L1, L2, L2).

    hom(X1, X2) and hom(X3, X4) are H*(S^n) = span{e, p}; the four mixed
    homs are copies of R; e acts as the identity and p acts by q1 (through
    the L1 pair) or q2 (through the L2 pair).  mu^1 = 0 and mu^3 = 0, so the
    A-infinity relations reduce to q1 q2 = q2 q1.
    """
    if check:
        bad = spec.problems()
        if bad:
            raise ValueError("invalid knotted spec: " + ", ".join(bad))
    r, n = spec.r, spec.n

    def rspace(i, k):
        return GradedSpace(tuple((f"r{i + 1}{k + 1}_{j}", spec.degrees[j]) for j in range(r)))

    homs = {
        (0, 1): GradedSpace((("e1", 0), ("p1", n))),
        (2, 3): GradedSpace((("e2", 0), ("p2", n))),
    }
    for i in (0, 1):
        for k in (2, 3):
            homs[(i, k)] = rspace(i, k)
    mu = []
    for k in (2, 3):
        for j in range(r):
            mu.append(MuEntry((0, 1, k), ("e1", f"r2{k + 1}_{j}"), f"r1{k + 1}_{j}"))
            for t in np.flatnonzero(spec.q1[:, j]):
                mu.append(MuEntry((0, 1, k), ("p1", f"r2{k + 1}_{j}"), f"r1{k + 1}_{t}"))
    for i in (0, 1):
        for j in range(r):
            mu.append(MuEntry((i, 2, 3), (f"r{i + 1}3_{j}", "e2"), f"r{i + 1}4_{j}"))
            for t in np.flatnonzero(spec.q2[:, j]):
                mu.append(MuEntry((i, 2, 3), (f"r{i + 1}3_{j}", "p2"), f"r{i + 1}4_{t}"))
    return AInfCategory(["L1", "L1", "L2", "L2"], homs, mu)


def random_square_zero_pair(rng: np.random.Generator, r: int, n: int = 2, rdeg: int = 0):
    """Random (q1, q2) supported on R^rdeg -> R^{rdeg+n}, R split over two degrees."""
    if r < 2:
        raise ValueError("need r >= 2 to spread R over two degrees")
    low = int(rng.integers(1, r))
    degrees = tuple([rdeg] * low + [rdeg + n] * (r - low))
    qs = []
    for _ in range(2):
        q = np.zeros((r, r), dtype=np.uint8)
        q[low:, :low] = rng.integers(0, 2, size=(r - low, low))
        qs.append(q)
    return KnottedSpec(r=r, rdeg=rdeg, n=n, q1=qs[0], q2=qs[1], degrees=degrees)


# ---------------------------------------------------------------------------
# random formal categories

def _random_invertible(rng, n):
    while True:
        mat = rng.integers(0, 2, size=(n, n))
        if rank_packed(pack_rows(mat)) == n:
            return mat.astype(np.uint8)


def _inverse_gf2(mat):
    n = mat.shape[0]
    aug = np.concatenate([mat.copy() % 2, np.eye(n, dtype=np.uint8)], axis=1)
    row = 0
    for col in range(n):
        piv = next(r for r in range(row, n) if aug[r, col])
        aug[[row, piv]] = aug[[piv, row]]
        for r in range(n):
            if r != row and aug[r, col]:
                aug[r] ^= aug[row]
        row += 1
    return aug[:, n:]


def random_category(rng: np.random.Generator, m: int, max_dim: int = 3,
                    deg_range: tuple[int, int] = (-2, 4), p_arrow: float = 0.6,
                    p_path: float = 0.7, p_diff: float = 0.5, p_mu3: float = 0.0,
                    scramble: bool = True) -> AInfCategory:
    """A random formal directed category with a random compatible mu^1.

    Built from a quiver: the basis of hom(i, k) is a factor-closed set of
    paths from i to k, composition is concatenation (zero if the result is
    not kept), which is associative.  A differential sends some arrows alpha
    to parallel arrows beta of one degree higher; the kept set is made
    closed under beta -> alpha replacement so that it descends to the
    quotient.  Finally each hom gets a random degree-preserving change of
    basis, so structure constants are no longer monomial.

    With ``p_mu3 > 0`` and m = 4 the differential is dropped and random
    mu^3 entries are added on the chain (0, 1, 2, 3); with mu^1 = 0 and no
    chains of length five every A-infinity relation still holds.
    """
    if p_mu3 > 0:
        p_diff = 0.0
    lo, hi = deg_range
    arrows = []  # (src, tgt, degree)
    for i in range(m):
        for k in range(i + 1, m):
            for _ in range(2):
                if rng.random() < p_arrow:
                    arrows.append((i, k, int(rng.integers(lo, hi + 1))))
    # differential pairs on parallel arrows
    pairs = {}
    used = set()
    for a, (i, k, dg) in enumerate(arrows):
        if a in used or rng.random() > p_diff:
            continue
        for b, (i2, k2, dg2) in enumerate(arrows):
            if b != a and b not in used and (i2, k2) == (i, k) and dg2 == dg + 1:
                pairs[a] = b
                used.update((a, b))
                break
    beta_to_alpha = {b: a for a, b in pairs.items()}

    def deg(path):
        return sum(arrows[a][2] for a in path)

    def ends(path):
        return arrows[path[0]][0], arrows[path[-1]][1]

    kept = []
    count = {}
    for a, (i, k, dg) in enumerate(arrows):
        if count.get((i, k), 0) < max_dim:
            kept.append((a,))
            count[(i, k)] = count.get((i, k), 0) + 1
    layer = list(kept)
    while layer:
        nxt = []
        keptset = set(kept)
        for path in layer:
            for a, (i, k, dg) in enumerate(arrows):
                if i != ends(path)[1]:
                    continue
                new = path + (a,)
                if new[1:] not in keptset:
                    continue
                key = (ends(new)[0], k)
                if not (lo <= deg(new) <= hi) or count.get(key, 0) >= max_dim:
                    continue
                if rng.random() < p_path:
                    nxt.append(new)
                    count[key] = count.get(key, 0) + 1
        kept.extend(nxt)
        layer = nxt
    # close under beta -> alpha replacement, then restore factor closure
    changed = True
    while changed:
        changed = False
        keptset = set(kept)
        for path in list(kept):
            for pos, a in enumerate(path):
                if a in beta_to_alpha:
                    alt = path[:pos] + (beta_to_alpha[a],) + path[pos + 1:]
                    if alt not in keptset:
                        kept.remove(path)
                        changed = True
                        break
            if changed:
                break
        if not changed:
            keptset = set(kept)
            for path in list(kept):
                subs = [path[s:e] for s in range(len(path)) for e in range(s + 1, len(path) + 1)]
                if any(sub not in keptset for sub in subs):
                    kept.remove(path)
                    changed = True
                    break

    names = [f"X{i + 1}" for i in range(m)]
    label = {}
    basis = {}
    for path in kept:
        i, k = ends(path)
        lab = "a" + ".".join(str(a) for a in path)
        lab = f"{lab}_{i + 1}{k + 1}"
        label[path] = lab
        basis.setdefault((i, k), []).append((lab, deg(path)))
    homs = {p: GradedSpace(tuple(b)) for p, b in basis.items()}
    keptset = set(kept)
    mu = []
    for path in kept:
        i, k = ends(path)
        for pos, a in enumerate(path):
            if a in pairs:
                alt = path[:pos] + (pairs[a],) + path[pos + 1:]
                if alt in keptset:
                    mu.append(MuEntry((i, k), (label[path],), label[alt]))
    for p1 in kept:
        for p2 in kept:
            if ends(p1)[1] == ends(p2)[0] and (p1 + p2) in keptset:
                i, j = ends(p1)
                k = ends(p2)[1]
                mu.append(MuEntry((i, j, k), (label[p1], label[p2]), label[p1 + p2]))
    if p_mu3 > 0 and m == 4:
        h = [homs.get(pr, GradedSpace()) for pr in ((0, 1), (1, 2), (2, 3))]
        out = homs.get((0, 3), GradedSpace())
        for x, y, z in product(*(s.basis for s in h)):
            for lab, dg in out.basis:
                if dg == x[1] + y[1] + z[1] - 1 and rng.random() < p_mu3:
                    mu.append(MuEntry((0, 1, 2, 3), (x[0], y[0], z[0]), lab))
    cat = AInfCategory(names, homs, mu)
    if scramble:
        cat = scramble_basis(cat, rng)
    return cat


def scramble_basis(cat: AInfCategory, rng: np.random.Generator) -> AInfCategory:
    """Strictly isomorphic copy under a random degree-preserving change of basis."""
    to_old = {}   # pair -> list of old-coordinate masks of the new basis vectors
    to_new = {}   # pair -> list of new-coordinate masks of the old basis vectors
    for p, space in cat.homs.items():
        fwd = [0] * space.dim
        bwd = [0] * space.dim
        for dg in space.dims:
            idx = space.indices_in_degree(dg)
            g = _random_invertible(rng, len(idx))
            gi = _inverse_gf2(g)
            for c, j in enumerate(idx):
                for r, t in enumerate(idx):
                    if g[r, c]:
                        fwd[j] |= 1 << t
                    if gi[r, c]:
                        bwd[j] |= 1 << t
        to_old[p] = fwd
        to_new[p] = bwd

    def convert(p, mask):
        out = 0
        j = 0
        while mask:
            if mask & 1:
                out ^= to_new[p][j]
            mask >>= 1
            j += 1
        return out

    table = {}
    chains = {chain for chain, _ in cat.table}
    for chain in chains:
        d = len(chain) - 1
        dims = [cat.hom(chain[n], chain[n + 1]).dim for n in range(d)]
        for ins in product(*(range(x) for x in dims)):
            vecs = [to_old[(chain[n], chain[n + 1])][j] for n, j in enumerate(ins)]
            out = cat.mu(chain, vecs)
            if out:
                table[(chain, ins)] = convert((chain[0], chain[-1]), out)
    homs = {p: s.relabel([f"{lab}'" for lab in s.labels]) for p, s in cat.homs.items()}
    return AInfCategory.from_table(cat.names, homs, table)


def random_corpus(seed: int = 0, count: int = 200, max_m: int = 4, **kw) -> list[AInfCategory]:
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        m = int(rng.integers(2, max_m + 1))
        out.append(random_category(rng, m, **kw))
    return out
