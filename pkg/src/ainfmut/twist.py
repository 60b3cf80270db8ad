"""
Twisted complexes over a directed A-infinity category.

A twisted complex is a formal sum of shifted objects X_e[s_e] with a
differential delta whose components delta_{e->f} lie in hom(X_e, X_f).
Degree convention: a component of internal degree d between summands
X_e[s_e] -> X_f[s_f] has total degree d + s_e - s_f (so hom(X[1], Y)
is hom(X, Y)[-1]).  Components between summands of the same object are
multiples of the identity.

Morphisms are dicts ``{(e, f): mask}`` where the mask is over the basis of
hom_A(obj_e, obj_f), or over the identity line (mask 1) when the objects agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .ainf import AInfCategory, ValidationReport
from .gf2 import (GradedMap, GradedSpace, differential_cohomology, dual_label, euler, total,
                  unique_labels)


@dataclass(frozen=True)
class Summand:
    obj: int
    shift: int = 0
    tag: str | None = None


def _arity_bound(cat: AInfCategory) -> int:
    # mu^n of a directed category vanishes for n > max(m - 1, 2)
    return max(cat.m - 1, 2)


def _component_degrees(cat, se: Summand, sf: Summand, mask: int):
    space = cat.hom(se.obj, sf.obj)
    out = set()
    j = 0
    while mask:
        if mask & 1:
            out.add(space.basis[j][1] + se.shift - sf.shift)
        mask >>= 1
        j += 1
    return out


class TwObject:
    """A twisted complex: summands plus a Maurer-Cartan differential.

    Raises ``ValueError`` at construction if delta has the wrong shape or
    degree, or (with ``check=True``) if the Maurer-Cartan equation fails.
    """

    def __init__(self, cat: AInfCategory, summands, delta=None, check: bool = True):
        self.cat = cat
        self.summands = tuple(s if isinstance(s, Summand) else Summand(*s) for s in summands)
        self.delta = {(int(e), int(f)): int(v) for (e, f), v in (delta or {}).items() if v}
        n = len(self.summands)
        for (e, f), v in self.delta.items():
            if not (0 <= e < n and 0 <= f < n):
                raise ValueError(f"delta component ({e}, {f}) refers to a missing summand")
            se, sf = self.summands[e], self.summands[f]
            if se.obj > sf.obj:
                raise ValueError(f"delta component ({e}, {f}) goes backwards: "
                                 f"object {se.obj} -> {sf.obj}")
            if v >> cat.hom(se.obj, sf.obj).dim:
                raise ValueError(f"delta component ({e}, {f}) has bits outside the hom space")
            if _component_degrees(cat, se, sf, v) != {1}:
                raise ValueError(f"delta component ({e}, {f}) does not have total degree 1")
        if check:
            rep = mc_check(self)
            if not rep.ok:
                raise ValueError("Maurer-Cartan equation fails:\n  "
                                 + "\n  ".join(map(str, rep.violations)))

    def __repr__(self):
        parts = []
        for s in self.summands:
            name = self.cat.names[s.obj]
            parts.append(f"{name}[{s.shift}]" + (f"<{s.tag}>" if s.tag else ""))
        return f"TwObject({' + '.join(parts) or '0'}, delta={len(self.delta)} comps)"

    def shifted(self, s: int) -> "TwObject":
        return TwObject(self.cat, [Summand(x.obj, x.shift + s, x.tag) for x in self.summands],
                        self.delta, check=False)


def object_tw(cat: AInfCategory, i: int, shift: int = 0) -> TwObject:
    """X^i as a one-summand twisted complex."""
    if not 0 <= i < cat.m:
        raise IndexError(f"object index {i} out of range")
    return TwObject(cat, [Summand(i, shift)], check=False)


# ---------------------------------------------------------------------------
# mu of A-plus and of Tw A, evaluated directly on vectors

def aplus_mu(cat: AInfCategory, objs, mats) -> dict:
    """mu^n of the additive enlargement on matrix-valued morphisms.

    ``objs`` is the list of n + 1 TwObjects (only their summands are used),
    ``mats[l]`` goes from objs[l] to objs[l + 1].  Sums mu^n_A over all paths
    of summands.
    """
    n = len(mats)
    by_src = []
    for mat in mats:
        d = {}
        for (e, f), v in mat.items():
            if v:
                d.setdefault(e, []).append((f, v))
        by_src.append(d)
    out: dict = {}

    def walk(step, start, cur, chain, vecs):
        if step == n:
            val = cat.mu(chain, vecs)
            if val:
                key = (start, cur)
                out[key] = out.get(key, 0) ^ val
            return
        for f, v in by_src[step].get(cur, ()):
            obj = objs[step + 1].summands[f].obj
            if chain[-1] == obj and n != 2:
                continue  # identities only survive in mu^2
            walk(step + 1, start, f, chain + (obj,), vecs + [v])

    for s0, summ in enumerate(objs[0].summands):
        walk(0, s0, s0, (summ.obj,), [])
    return {k: v for k, v in out.items() if v}


def _add_into(acc: dict, other: dict):
    for k, v in other.items():
        acc[k] = acc.get(k, 0) ^ v


def tw_mu(objs, inputs) -> dict:
    """mu^d of Tw A: sum of mu_{A+} with deltas inserted in every gap."""
    cat = objs[0].cat
    d = len(inputs)
    bound = _arity_bound(cat)
    out: dict = {}
    if d > bound:
        return out
    for ks in product(range(bound - d + 1), repeat=d + 1):
        if sum(ks) + d > bound:
            continue
        seq_objs = []
        mats = []
        for pos in range(d + 1):
            y = objs[pos]
            seq_objs.append(y)
            for _ in range(ks[pos]):
                mats.append(y.delta)
                seq_objs.append(y)
            if pos < d:
                mats.append(inputs[pos])
        if any(not m for m in mats):
            continue
        _add_into(out, aplus_mu(cat, seq_objs, mats))
    return {k: v for k, v in out.items() if v}


def mc_check(c: TwObject) -> ValidationReport:
    """Evaluate sum_d mu^d(delta, ..., delta) componentwise."""
    rep = ValidationReport("maurer-cartan")
    acc: dict = {}
    if c.delta:
        for n in range(1, _arity_bound(c.cat) + 1):
            _add_into(acc, aplus_mu(c.cat, [c] * (n + 1), [c.delta] * n))
    for (e, f), v in sorted(acc.items()):
        rep.checked += 1
        if v:
            rep.add("mc", f"summands {e} -> {f}", f"nonzero component (mask {v:#x})")
    return rep


# ---------------------------------------------------------------------------
# hom complexes

def component_label(se: Summand, sf: Summand, x: str, ident: bool = False) -> str:
    """Readable label for a component se -> sf carrying x (``ident`` for identities).

    Untagged summands are plain objects; a tagged summand t.X reads as
    t (x) X on the target side and X (x) t^v on the source side.
    """
    if se.tag is None and sf.tag is None:
        return x
    if se.tag is None:
        return sf.tag if ident else f"({sf.tag},{x})"
    if sf.tag is None:
        return dual_label(se.tag) if ident else f"({x},{dual_label(se.tag)})"
    if ident:
        return f"({sf.tag},{dual_label(se.tag)})"
    return f"({sf.tag},{x},{dual_label(se.tag)})"


@dataclass(frozen=True)
class HomBasis:
    space: GradedSpace
    keys: tuple  # (e, f, j)
    offsets: dict  # (e, f) -> position of the first basis element of that block

    def to_mask(self, mor: dict) -> int:
        out = 0
        for (e, f), v in mor.items():
            out |= v << self.offsets[(e, f)]
        return out

    def to_morphism(self, mask: int) -> dict:
        out: dict = {}
        j = 0
        while mask:
            if mask & 1:
                e, f, x = self.keys[j]
                out[(e, f)] = out.get((e, f), 0) | (1 << x)
            mask >>= 1
            j += 1
        return out


def hom_basis(c: TwObject, d: TwObject) -> HomBasis:
    cat = c.cat
    labels, degs, keys, offsets = [], [], [], {}
    for e, se in enumerate(c.summands):
        for f, sf in enumerate(d.summands):
            if se.obj > sf.obj:
                continue
            space = cat.hom(se.obj, sf.obj)
            if not space.dim:
                continue
            offsets[(e, f)] = len(keys)
            for j, (lab, deg) in enumerate(space.basis):
                keys.append((e, f, j))
                labels.append(component_label(se, sf, lab, se.obj == sf.obj))
                degs.append(deg + se.shift - sf.shift)
    space = GradedSpace(tuple(zip(unique_labels(labels), degs)))
    return HomBasis(space, tuple(keys), offsets)


@dataclass(frozen=True)
class TwHomComplex:
    source: TwObject
    target: TwObject
    basis: HomBasis
    d1: GradedMap

    @property
    def space(self) -> GradedSpace:
        return self.basis.space

    def cohomology(self) -> dict[int, int]:
        return differential_cohomology(self.d1)


def hom_complex(c: TwObject, d: TwObject) -> TwHomComplex:
    """hom_{Tw}(C, D) with its induced differential."""
    hb = hom_basis(c, d)
    images = []
    for (e, f, j) in hb.keys:
        images.append(hb.to_mask(tw_mu([c, d], [{(e, f): 1 << j}])))
    return TwHomComplex(c, d, hb, GradedMap(hb.space, hb.space, 1, tuple(images)))


def morphism_degree(c: TwObject, d: TwObject, mor: dict) -> set[int]:
    out = set()
    for (e, f), v in mor.items():
        if v:
            out |= _component_degrees(c.cat, c.summands[e], d.summands[f], v)
    return out


# ---------------------------------------------------------------------------
# cones and twists

def cone(a: dict, c: TwObject, d: TwObject) -> TwObject:
    """Cone of a closed degree-0 morphism a: C -> D, as C[1] + D.

    delta = [[delta_C, 0], [a, delta_D]] (source summands first).
    """
    a = {k: v for k, v in a.items() if v}
    degs = morphism_degree(c, d, a)
    if degs - {0}:
        raise ValueError(f"cone needs a degree 0 morphism, got degrees {sorted(degs)}")
    if tw_mu([c, d], [a]):
        raise ValueError("cone needs a closed morphism (mu^1 a != 0)")
    n = len(c.summands)
    summands = [Summand(s.obj, s.shift + 1, s.tag) for s in c.summands] + list(d.summands)
    delta = dict(c.delta)
    for (e, f), v in d.delta.items():
        delta[(n + e, n + f)] = v
    for (e, f), v in a.items():
        delta[(e, n + f)] = v
    return TwObject(c.cat, summands, delta)


def evaluation(x: int, y: TwObject):
    """hom(X, Y) (x) X with its differential, and ev: hom(X, Y) (x) X -> Y."""
    cat = y.cat
    xo = object_tw(cat, x)
    h = hom_complex(xo, y)
    summands = [Summand(x, -deg, lab) for lab, deg in h.space.basis]
    delta = {}
    for b, img in enumerate(h.d1.images):
        for b2 in range(h.space.dim):
            if (img >> b2) & 1:
                delta[(b, b2)] = 1
    vx = TwObject(cat, summands, delta)
    ev = {}
    for b, (_, f, j) in enumerate(h.basis.keys):
        ev[(b, f)] = ev.get((b, f), 0) | (1 << j)
    return vx, ev


def twist_object(x: int, y) -> TwObject:
    """T_X(Y) = Cone(ev: hom(X, Y) (x) X -> Y)."""
    vx, ev = evaluation(x, y)
    return cone(ev, vx, y)


def coevaluation(x: int, y: TwObject):
    """hom(Y, X)^v (x) X with its differential, and coev: Y -> hom(Y, X)^v (x) X."""
    cat = y.cat
    xo = object_tw(cat, x)
    h = hom_complex(y, xo)
    summands = [Summand(x, deg, dual_label(lab)) for lab, deg in h.space.basis]
    delta = {}
    for b2, img in enumerate(h.d1.images):
        for b in range(h.space.dim):
            if (img >> b) & 1:
                delta[(b, b2)] = 1
    w = TwObject(cat, summands, delta)
    coev = {}
    for b, (e, _, j) in enumerate(h.basis.keys):
        coev[(e, b)] = coev.get((e, b), 0) | (1 << j)
    return w, coev


def dual_twist_object(x: int, y: TwObject) -> TwObject:
    """Cone(coev: Y -> hom(Y, X)^v (x) X)[-1], summands Y first."""
    w, coev = coevaluation(x, y)
    return cone(coev, y, w).shifted(-1)


# ---------------------------------------------------------------------------
# directed subcategories of Tw A

def extract_directed_subcategory(objs, names=None) -> AInfCategory:
    """The directed A-infinity category generated by an ordered list of twisted complexes.

    hom(Y^i, Y^k) = hom_Tw(Y^i, Y^k) for i < k and all compositions are those
    of Tw A restricted to increasing chains.  Compositions are enumerated
    sparsely, path by path, from the composition table of A.
    """
    objs = list(objs)
    M = len(objs)
    if names is None:
        names = [f"Y{j}" for j in range(M)]
    if not objs:
        return AInfCategory([], {})
    cat = objs[0].cat
    bases = {(j, k): hom_basis(objs[j], objs[k]) for j in range(M) for k in range(j + 1, M)}
    homs = {p: hb.space for p, hb in bases.items()}
    table = _tw_table(cat, objs, bases)
    return AInfCategory.from_table(names, homs, table)


def _tw_table(cat: AInfCategory, objs, bases) -> dict:
    M = len(objs)
    prefixes = cat.chain_prefixes
    by_chain = cat.by_chain
    table: dict = {}

    def put(bchain, ins, val):
        key = (tuple(bchain), tuple(ins))
        table[key] = table.get(key, 0) ^ val

    dsrc = []
    for y in objs:
        strict, ident = {}, {}
        for (e, f), v in y.delta.items():
            if y.summands[e].obj == y.summands[f].obj:
                ident.setdefault(e, []).append(f)
            else:
                strict.setdefault(e, []).append((f, v))
        dsrc.append((strict, ident))

    # paths of strictly increasing objects: the generic mu^n_A terms
    def walk(j0, s0, j, s, chain, steps, bchain):
        if any(st[0] == "t" for st in steps):
            entries = by_chain.get(chain)
            if entries:
                off_out = bases[(j0, j)].offsets[(s0, s)]
                for ins, val in entries:
                    bins = []
                    for st, u in zip(steps, ins):
                        if st[0] == "d":
                            if not (st[1] >> u) & 1:
                                break
                        else:
                            _, jp, jn, e, f = st
                            bins.append(bases[(jp, jn)].offsets[(e, f)] + u)
                    else:
                        put(bchain, bins, val << off_out)
        obj = objs[j].summands[s].obj
        for f, v in dsrc[j][0].get(s, ()):
            nxt = chain + (objs[j].summands[f].obj,)
            if nxt in prefixes:
                walk(j0, s0, j, f, nxt, steps + [("d", v)], bchain)
        for jn in range(j + 1, M):
            for f, sf in enumerate(objs[jn].summands):
                if sf.obj <= obj:
                    continue
                nxt = chain + (sf.obj,)
                if nxt in prefixes:
                    walk(j0, s0, jn, f, nxt, steps + [("t", j, jn, s, f)], bchain + [jn])

    for j0 in range(M):
        for s0, summ in enumerate(objs[j0].summands):
            walk(j0, s0, j0, s0, (summ.obj,), [], [j0])

    # mu^2_A with an identity input
    for j0 in range(M):
        for j1 in range(j0 + 1, M):
            for j2 in range(j1 + 1, M):
                b01, b12, b02 = bases[(j0, j1)], bases[(j1, j2)], bases[(j0, j2)]
                for (e, f), off1 in b01.offsets.items():
                    oe, of = objs[j0].summands[e].obj, objs[j1].summands[f].obj
                    for (f2, g), off2 in b12.offsets.items():
                        if f2 != f:
                            continue
                        og = objs[j2].summands[g].obj
                        if oe == of:
                            out_off = b02.offsets[(e, g)]
                            for u in range(cat.hom(of, og).dim):
                                put((j0, j1, j2), (off1, off2 + u), 1 << (out_off + u))
                        elif of == og:
                            out_off = b02.offsets[(e, g)]
                            for u in range(cat.hom(oe, of).dim):
                                put((j0, j1, j2), (off1 + u, off2), 1 << (out_off + u))

    # mu^1 terms mu^2_A(delta, t), mu^2_A(t, delta) with an identity among them
    for j in range(M):
        for k in range(j + 1, M):
            hb = bases[(j, k)]
            src, tgt = objs[j], objs[k]
            for (e, f), off in hb.offsets.items():
                oe, of = src.summands[e].obj, tgt.summands[f].obj
                dim = cat.hom(oe, of).dim
                for (e0, e1), v in src.delta.items():  # delta of the source acts first
                    if e1 != e:
                        continue
                    o0 = src.summands[e0].obj
                    if o0 == oe:
                        for u in range(dim):
                            put((j, k), (off + u,), 1 << (hb.offsets[(e0, f)] + u))
                    elif oe == of:
                        put((j, k), (off,), v << hb.offsets[(e0, f)])
                for (f0, f1), v in tgt.delta.items():
                    if f0 != f:
                        continue
                    o1 = tgt.summands[f1].obj
                    if o1 == of:
                        for u in range(dim):
                            put((j, k), (off + u,), 1 << (hb.offsets[(e, f1)] + u))
                    elif oe == of:
                        put((j, k), (off,), v << hb.offsets[(e, f1)])
    return {k: v for k, v in table.items() if v}


# ---------------------------------------------------------------------------
# exact triangles

def triangle_euler_check(a: dict, c: TwObject, d: TwObject, probe: TwObject) -> dict:
    """Compare hom(probe, -) on C, D and Cone(a) for a closed degree-0 a: C -> D.

    chi(Cone) = chi(D) - chi(C) and dim H(Cone) <= dim H(C) + dim H(D).
    """
    co = cone(a, c, d)
    hc = hom_complex(probe, c).cohomology()
    hd = hom_complex(probe, d).cohomology()
    hk = hom_complex(probe, co).cohomology()
    chi_c, chi_d, chi_k = euler(hc), euler(hd), euler(hk)
    euler_ok = chi_k == chi_d - chi_c
    bound_ok = total(hk) <= total(hc) + total(hd)
    return {
        "ok": euler_ok and bound_ok,
        "euler_ok": euler_ok,
        "bound_ok": bound_ok,
        "chi": {"source": chi_c, "target": chi_d, "cone": chi_k},
        "dims": {"source": hc, "target": hd, "cone": hk},
    }
