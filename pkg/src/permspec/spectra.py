"""Finite skeletons of the spectrum, stratum by stratum, and their gluing.

For an elementary abelian p-group E the spectrum is partitioned into strata
indexed by the subgroups S <= E; the S-stratum is homeomorphic to the
homogeneous spectrum of the cohomology of E/S.  A skeleton records the named
points of every stratum:

  * M(S)   -- the very closed point (irrelevant maximal ideal), one per stratum;
  * eta(S) -- the stratum-generic point (zero ideal), when E/S is nontrivial;
  * rational points of strata of rank >= 2, one per order-p subgroup of E/S
    (the ideal cut out by the linear coordinate forms vanishing on the line);
  * one GenericFamily token per stratum of rank >= 2, a stand-in for the
    infinite family of non-rational closed subvarieties, carried by the
    principal ideal of an irreducible binary quadric.

The specialization order between named points is decided by closure_ideal
containment tests, with analytic shortcuts for the kinds whose closures are
known in closed form.  For a general finite group G the skeleton is glued from
the skeletons of the maximal elementary abelian p-sections, identifying the
images of every maximal span of the section category (union-find on points).
"""

import itertools
import json

from .groups import (
    GroupError,
    ResourceError,
    is_elementary_abelian,
    quotient,
    subgroup_as_group,
    subgroups,
)
from .gradedrings import (
    GradedRingHom,
    HomogeneousIdeal,
    contract,
    pscale,
)
from .twisted import (
    Coordinate,
    canonical_functional,
    leading_scalar,
    local_ring,
    closure_ideal,
)
from .sections import SectionCategory

DEFAULT_RANK_CAP = 3

KIND_VERY_CLOSED = "VeryClosed"
KIND_STRATUM_GENERIC = "StratumGeneric"
KIND_RATIONAL = "Rational"
KIND_FAMILY = "GenericFamily"
KIND_CUSTOM = "Custom"

_KIND_COLOR = {
    KIND_VERY_CLOSED: "black",
    KIND_STRATUM_GENERIC: "brown",
    KIND_RATIONAL: "green",
    KIND_FAMILY: "red",
    KIND_CUSTOM: "gray",
}


class GlueError(RuntimeError):
    """A transported point could not be matched with a named point."""


def _sub_label(S):
    G = S.parent
    if S.order == 1:
        return "1"
    if S.order == G.order:
        return "full"
    return "{" + ",".join(G.name_of(x) for x in S.elements if x != 0) + "}"


class SpectrumPoint:
    """A named point of a skeleton: a stratum plus a homogeneous ideal."""

    def __init__(self, stratum, ideal, kind, label):
        self.stratum = stratum  # Subgroup of the ambient platform group
        self.ideal = ideal  # HomogeneousIdeal in the stratum's cohomology ring
        self.kind = kind
        self.label = label

    def same_point(self, other):
        return (
            self.stratum.elements == other.stratum.elements
            and self.ideal == other.ideal
        )

    def __repr__(self):
        return f"SpectrumPoint({self.kind}, {self.label})"


class SpectrumSkeleton:
    """Named points with their specialization partial order.

    `order` holds the strict pairs (i, j) meaning point j lies in the closure
    of point i; covering edges and closures are derived views.
    """

    def __init__(self, points, order, provenance=None, sections=None):
        self.points = list(points)
        n = len(self.points)
        rel = set(order)
        # transitive closure, then sanity: antisymmetry
        changed = True
        while changed:
            changed = False
            for (a, b), (c, d) in itertools.product(list(rel), list(rel)):
                if b == c and a != d and (a, d) not in rel:
                    rel.add((a, d))
                    changed = True
        for (a, b) in rel:
            assert (b, a) not in rel, "specialization order is not antisymmetric"
        self.order = frozenset(rel)
        self.provenance = provenance or {
            i: [(0, pt.label)] for i, pt in enumerate(self.points)
        }
        self.sections = sections  # list of (SectionObject, component index) or None
        self.ambient = None  # set by skeleton() for elementary abelian skeletons
        self.p = None
        self.level = None

    def closure(self, i):
        return {j for (a, j) in self.order if a == i} | {i}

    def edges(self):
        """Covering specializations (from more generic to more special)."""
        out = []
        for (a, b) in self.order:
            if any(
                (a, c) in self.order and (c, b) in self.order
                for c in range(len(self.points))
                if c not in (a, b)
            ):
                continue
            out.append((a, b))
        return sorted(out)

    def very_closed(self):
        return [i for i, pt in enumerate(self.points) if pt.kind == KIND_VERY_CLOSED]

    def generic_points(self):
        """Points whose closure is the entire skeleton."""
        n = len(self.points)
        return [i for i in range(n) if len(self.closure(i)) == n]

    def height(self):
        """Length of the longest specialization chain (number of steps)."""
        memo = {}

        def down(i):
            if i not in memo:
                memo[i] = max(
                    (1 + down(j) for (a, j) in self.order if a == i), default=0
                )
            return memo[i]

        return max((down(i) for i in range(len(self.points))), default=0)

    def to_json(self):
        pts = []
        for i, pt in enumerate(self.points):
            if self.sections:
                comp = self.provenance[i][0][0]
                sec = self.sections[comp][0]
                section = {
                    "H": [int(x) for x in sec.H.elements],
                    "K": [int(x) for x in sec.K.elements],
                }
            else:
                section = {
                    "H": [int(x) for x in pt.stratum.elements],
                    "K": [0],
                }
            pres = pt.ideal.ambient
            pts.append(
                {
                    "id": i,
                    "section": section,
                    "ideal": sorted(pres.format(dict(g)) for g in pt.ideal.generators),
                    "kind": pt.kind,
                    "label": pt.label,
                }
            )
        return {
            "points": pts,
            "edges": [[a, b] for (a, b) in self.edges()],
            "provenance": {
                str(i): [[c, lbl] for (c, lbl) in self.provenance[i]]
                for i in sorted(self.provenance)
            },
        }

    def to_dot(self):
        lines = ["digraph skeleton {", "  rankdir=BT;"]
        for i, pt in enumerate(self.points):
            color = _KIND_COLOR[pt.kind]
            if pt.kind == KIND_STRATUM_GENERIC and pt.stratum.order == 1:
                color = "black"
            lines.append(
                f'  p{i} [label="{pt.label}", color={color}, fontcolor={color}];'
            )
        for (a, b) in self.edges():
            lines.append(f"  p{a} -> p{b};")
        lines.append("}")
        return "\n".join(lines)

    def __repr__(self):
        return (
            f"SpectrumSkeleton({len(self.points)} points, "
            f"{len(self.order)} specializations)"
        )


# -- stratum plumbing ---------------------------------------------------------------

_STRATUM_CACHE = {}


def stratum_data(E, S, p):
    """(quotient group, projection, cohomology ring spec) of the S-stratum."""
    key = (E.digest(), tuple(S.elements), p)
    hit = _STRATUM_CACHE.get(key)
    if hit is None:
        Q, proj = quotient(E, S)
        spec = local_ring(Q, Q.trivial_subgroup(), p)
        hit = (Q, proj, spec)
        _STRATUM_CACHE[key] = hit
    return hit


def _lines(spec):
    """(vector-label, generator element) per order-p subgroup of spec's group."""
    ea = spec.ea
    out = []
    for vec in itertools.product(range(ea.p), repeat=ea.rank):
        if all(c == 0 for c in vec):
            continue
        if vec != canonical_functional(vec, ea.p):
            continue
        out.append(("".join(str(c) for c in vec), ea.elem_of[vec]))
    return out


def _line_ideal(spec, gen_elem):
    """Ideal of the rational point at the line through gen_elem."""
    pres = spec.presentation
    gens = []
    for lbl in sorted(spec.plus_of):
        c = spec.coordinate[lbl]
        if spec.ea.functional_on(c.f, gen_elem) == 0:
            gens.append(pres.var(spec.plus_of[lbl]))
    return HomogeneousIdeal(pres, gens)


def _token_ideal(spec):
    """Principal ideal of an irreducible binary quadric in the first two
    independent coordinates: x^2+xy+y^2 for p=2, x^2 - c*y^2 (c a non-square)
    for odd p."""
    pres = spec.presentation
    p = spec.p
    i1, i2 = 0, 1  # lex-first coordinates (0..01, 0..10) are independent

    def mono(e1, e2):
        m = [0] * pres.nvars
        m[i1], m[i2] = e1, e2
        return tuple(m)

    if p == 2:
        poly = {mono(2, 0): 1, mono(1, 1): 1, mono(0, 2): 1}
    else:
        nonsq = next(c for c in range(2, p) if pow(c, (p - 1) // 2, p) == p - 1)
        poly = {mono(2, 0): 1, mono(0, 2): (p - nonsq) % p}
    return HomogeneousIdeal(pres, [poly])


def _max_ideal(spec):
    pres = spec.presentation
    return HomogeneousIdeal(pres, [pres.var(v) for v in pres.varnames])


def _induced_hom(src_spec, tgt_spec, iota):
    """Ring map R(A) -> R(B) induced by an injective group hom iota: B -> A.

    Both specs must be localized at the trivial subgroup (zp generators only).
    Coordinates pull back along iota: zp_N -> 0 when iota(B) <= N, otherwise
    lam * zp_{canonical pullback}.
    """
    p = src_spec.p
    images = []
    for name in src_spec.presentation.varnames:
        assert name.startswith("zp_"), "induced maps need fully localized specs"
        c = src_spec.coordinate[name[3:]]
        fpull = tuple(
            src_spec.ea.functional_on(c.f, int(iota[b])) for b in tgt_spec.ea.basis
        )
        if not any(fpull):
            images.append(tgt_spec.presentation.zero())
            continue
        lam = leading_scalar(fpull, p)
        cbar = Coordinate(tgt_spec.ea, canonical_functional(fpull, p))
        images.append(
            pscale(tgt_spec.presentation.var(tgt_spec.varname(cbar)), lam, p)
        )
    hom = GradedRingHom(src_spec.presentation, tgt_spec.presentation, images)
    hom.source_spec, hom.target_spec = src_spec, tgt_spec
    return hom


def _stratum_shift(E, S_P, S_Q, p, ideal):
    """closure_ideal from the S_P-stratum into the S_Q-stratum (S_P <= S_Q),
    expressed in the canonical S_Q-stratum ring."""
    Qp, projp, specp = stratum_data(E, S_P, p)
    Hbar = Qp.subgroup(sorted({int(projp.map[x]) for x in S_Q.elements}))
    cl = closure_ideal(Qp, Hbar, ideal, p)
    # move cl from the ring of (E/S_P)/(S_Q/S_P) to the ring of E/S_Q
    Q2, proj2 = quotient(Qp, Hbar)
    A_spec = local_ring(Q2, Q2.trivial_subgroup(), p)
    Qq, projq, specq = stratum_data(E, S_Q, p)
    theta = []
    for b in range(Qq.order):
        x = next(x for x in range(E.order) if int(projq.map[x]) == b)
        theta.append(int(proj2.map[int(projp.map[x])]))
    assert len(set(theta)) == Qq.order
    hom = _induced_hom(A_spec, specq, theta)
    out = HomogeneousIdeal(A_spec.presentation, [dict(g) for g in cl.generators],
                           check=False)
    return hom.apply_ideal(out)


# -- skeleton construction ------------------------------------------------------------


def skeleton(E, p, level="rational", cap_rank=DEFAULT_RANK_CAP, custom_points=()):
    """The named-point skeleton of the spectrum over an elementary abelian E.

    level "strata" keeps only the very closed points M(S) and the stratum
    generics eta(S); "rational" adds the prime-field rational points and one
    family token per stratum of rank >= 2; "custom" additionally appends
    user-supplied (stratum, ideal generators) pairs.
    """
    if level not in ("strata", "rational", "custom"):
        raise ValueError(f"unknown skeleton level {level!r}")
    if not is_elementary_abelian(E, p):
        raise GroupError("skeleton needs an elementary abelian group")
    full_spec = local_ring(E, E.trivial_subgroup(), p)
    if full_spec.ea.rank > cap_rank:
        raise ResourceError(
            f"rank {full_spec.ea.rank} exceeds the configured cap {cap_rank}"
        )
    points = []
    for S in sorted(subgroups(E), key=lambda s: (s.order, s.elements)):
        Q, proj, spec = stratum_data(E, S, p)
        slbl = _sub_label(S)
        points.append(
            SpectrumPoint(S, _max_ideal(spec), KIND_VERY_CLOSED, f"M({slbl})")
        )
        qrank = spec.ea.rank
        if qrank >= 1:
            points.append(
                SpectrumPoint(
                    S,
                    HomogeneousIdeal(spec.presentation, []),
                    KIND_STRATUM_GENERIC,
                    f"eta({slbl})",
                )
            )
        if qrank >= 2 and level in ("rational", "custom"):
            for vec_lbl, gen in _lines(spec):
                points.append(
                    SpectrumPoint(
                        S,
                        _line_ideal(spec, gen),
                        KIND_RATIONAL,
                        f"pt[{vec_lbl}]({slbl})",
                    )
                )
            points.append(
                SpectrumPoint(S, _token_ideal(spec), KIND_FAMILY, f"token({slbl})")
            )
    if level == "custom":
        for k, (S, gens) in enumerate(custom_points):
            _, _, spec = stratum_data(E, S, p)
            gens = [
                spec.presentation.poly(g) if isinstance(g, str) else g for g in gens
            ]
            points.append(
                SpectrumPoint(
                    S,
                    HomogeneousIdeal(spec.presentation, gens),
                    KIND_CUSTOM,
                    f"custom{k}({_sub_label(S)})",
                )
            )
    order = _specialization_order(E, p, points)
    skel = SpectrumSkeleton(points, order)
    skel.ambient, skel.p, skel.level = E, p, level
    return skel


def _specialization_order(E, p, points):
    """Strict pairs (i, j): point j lies in the closure of point i.

    Very closed points are closed; stratum generics specialize to everything
    in the strata above; a rational point's closure is exactly itself, the
    very closed point of its own stratum and the very closed point of the
    preimage of its line.  Family tokens and custom points go through the
    general closure_ideal transport.
    """
    by_stratum = {}
    for j, q in enumerate(points):
        by_stratum.setdefault(tuple(q.stratum.elements), []).append(j)
    strata = {tuple(q.stratum.elements): q.stratum for q in points}
    order = set()
    for i, P in enumerate(points):
        if P.kind == KIND_VERY_CLOSED:
            continue
        if P.kind == KIND_STRATUM_GENERIC:
            for j, Q in enumerate(points):
                if j != i and Q.stratum.contains_subgroup(P.stratum):
                    order.add((i, j))
            continue
        if P.kind == KIND_RATIONAL:
            _, projP, specP = stratum_data(E, P.stratum, p)
            # recover the line generator from the ideal's vanishing pattern
            gen = next(
                g
                for (_, g) in _lines(specP)
                if _line_ideal(specP, g) == P.ideal
            )
            pre = E.subgroup(
                [
                    x
                    for x in range(E.order)
                    if int(projP.map[x])
                    in {
                        specP.ea.elem_of[
                            tuple(
                                (k * c) % p for c in specP.ea.vec_of[gen]
                            )
                        ]
                        for k in range(p)
                    }
                ]
            )
            for j, Q in enumerate(points):
                if Q.kind != KIND_VERY_CLOSED:
                    continue
                if Q.stratum.elements in (P.stratum.elements, pre.elements):
                    order.add((i, j))
            continue
        # general path: family tokens and custom points
        for skey, S_Q in sorted(strata.items()):
            if not S_Q.contains_subgroup(P.stratum):
                continue
            if skey == tuple(P.stratum.elements):
                for j in by_stratum[skey]:
                    if j != i and points[j].ideal.contains_ideal(P.ideal):
                        order.add((i, j))
                continue
            moved = _stratum_shift(E, P.stratum, S_Q, p, P.ideal)
            if moved.is_unit():
                continue
            for j in by_stratum[skey]:
                if points[j].ideal.contains_ideal(moved):
                    order.add((i, j))
    return order


# -- transport along section morphisms -------------------------------------------------


class SectionPlatform:
    """A section (H, K) realized as an elementary abelian quotient group."""

    def __init__(self, sec, p, level="rational", cap_rank=DEFAULT_RANK_CAP):
        self.sec = sec
        self.p = p
        self.level = level
        self.cap_rank = cap_rank
        Hgrp, embed = subgroup_as_group(sec.H)
        self.Hgrp = Hgrp
        self.embed = [int(x) for x in embed]
        self.index = {x: i for i, x in enumerate(self.embed)}
        Kin = Hgrp.subgroup(sorted(self.index[int(k)] for k in sec.K.elements))
        self.Q, self.proj = quotient(Hgrp, Kin)
        self._skel = None

    def to_Q(self, x):
        """Platform image of a group element of H."""
        return int(self.proj.map[self.index[int(x)]])

    @property
    def skel(self):
        if self._skel is None:
            self._skel = skeleton(self.Q, self.p, self.level, self.cap_rank)
        return self._skel


def _classify(spec, ideal):
    pres = spec.presentation
    if all(ideal.member(pres.var(v)) for v in pres.varnames):
        return KIND_VERY_CLOSED
    if ideal.is_zero():
        return KIND_STRATUM_GENERIC
    for _, gen in _lines(spec):
        if _line_ideal(spec, gen) == ideal:
            return KIND_RATIONAL
    return KIND_CUSTOM


def transport_point(m, src_plat, tgt_plat, point):
    """Image of a skeleton point under the spectrum map of a section morphism.

    The morphism witness g conjugates the source section into the target one;
    the stratum maps to the image of its preimage, and the ideal moves through
    the ring map induced by the injection of stratum quotients (an isomorphism
    when the ranks agree, a contraction otherwise).
    """
    G = m.source.group
    g = m.g
    Sbar = set(point.stratum.elements)
    S_G = [
        src_plat.embed[a]
        for a in range(src_plat.Hgrp.order)
        if int(src_plat.proj.map[a]) in Sbar
    ]
    T_G = [G.conj(int(x), g) for x in S_G]
    Tbar = tgt_plat.Q.subgroup(sorted({tgt_plat.to_Q(x) for x in T_G}))
    Q1, proj1, spec1 = stratum_data(src_plat.Q, point.stratum, src_plat.p)
    Q2, proj2, spec2 = stratum_data(tgt_plat.Q, Tbar, tgt_plat.p)
    iota = []
    for q1 in range(Q1.order):
        a = next(
            a
            for a in range(src_plat.Hgrp.order)
            if int(proj1.map[int(src_plat.proj.map[a])]) == q1
        )
        x = G.conj(int(src_plat.embed[a]), g)
        iota.append(int(proj2.map[tgt_plat.to_Q(x)]))
    assert len(set(iota)) == Q1.order, "stratum comparison is not injective"
    if Q1.order == Q2.order:
        inv = [0] * Q2.order
        for q1, q2 in enumerate(iota):
            inv[q2] = q1
        hom = _induced_hom(spec1, spec2, inv)
        ideal_t = hom.apply_ideal(point.ideal)
    else:
        hom = _induced_hom(spec2, spec1, iota)
        ideal_t = contract(hom, point.ideal)
    kind = _classify(spec2, ideal_t)
    if point.kind == KIND_FAMILY and Q1.order == Q2.order and kind == KIND_CUSTOM:
        # an isomorphic transport carries the non-rational family to the
        # non-rational family of the image stratum
        kind = KIND_FAMILY
    return SpectrumPoint(Tbar, ideal_t, kind, f"{point.label}^[{g}]")


def skeleton_map(m, p, level="rational", cap_rank=DEFAULT_RANK_CAP):
    """The point-transport function of a section morphism, with its platforms
    attached as .source_platform / .target_platform."""
    src = SectionPlatform(m.source, p, level, cap_rank)
    tgt = SectionPlatform(m.target, p, level, cap_rank)

    def f(point):
        return transport_point(m, src, tgt, point)

    f.source_platform = src
    f.target_platform = tgt
    return f


def _locate(skel, pt, required=True):
    """Index of the named point equal to pt (family tokens match as families)."""
    for j, q in enumerate(skel.points):
        if q.same_point(pt):
            return j
    if pt.kind == KIND_FAMILY:
        for j, q in enumerate(skel.points):
            if (
                q.kind == KIND_FAMILY
                and q.stratum.elements == pt.stratum.elements
            ):
                return j
    if not required:
        return None
    raise GlueError(f"transported point {pt.label} is not a named point")


# -- gluing over the section category ---------------------------------------------------


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, a):
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def glue(G, p, level="rational", reduction="full", cap_rank=DEFAULT_RANK_CAP):
    """Skeleton of the spectrum for a general finite group.

    Takes one skeleton per maximal elementary abelian p-section and quotients
    the disjoint union by the identifications coming from every maximal span
    of the section category; the specialization order descends to the classes.
    """
    cat = SectionCategory(G, p)
    reps = cat.maxel()
    rels = cat.maximal_relations(reduction=reduction)
    plats = {x.key(): SectionPlatform(x, p, level, cap_rank) for x in reps}
    rep_index = {x.key(): i for i, x in enumerate(reps)}
    offsets, total = [], 0
    for x in reps:
        offsets.append(total)
        total += len(plats[x.key()].skel.points)
    uf = _UnionFind(total)
    apex_plats = {}
    for rel in rels:
        akey = rel.apex.key()
        if akey not in apex_plats:
            apex_plats[akey] = SectionPlatform(rel.apex, p, level, cap_rank)
        ap = apex_plats[akey]
        located = []
        for leg in (rel.f1, rel.f2):
            foot = rep_index[leg.target.key()]
            fp = plats[leg.target.key()]
            ids = []
            for pt in ap.skel.points:
                img = transport_point(leg, ap, fp, pt)
                # at coarser levels an image can fall between the named
                # points (e.g. a generic landing on an unnamed rational
                # point); the identification is then below the resolution
                # of the skeleton and is dropped -- except for very closed
                # points, which are always named
                j = _locate(fp.skel, img, required=(level != "strata"))
                assert j is not None or img.kind != KIND_VERY_CLOSED
                ids.append(None if j is None else offsets[foot] + j)
            located.append(ids)
        for a, b in zip(*located):
            if a is not None and b is not None:
                uf.union(a, b)
    # collapse to classes
    classes = {}
    for gid in range(total):
        classes.setdefault(uf.find(gid), []).append(gid)
    roots = sorted(classes)
    cls_of = {gid: roots.index(uf.find(gid)) for gid in range(total)}

    def local_of(gid):
        ci = max(i for i, off in enumerate(offsets) if off <= gid)
        return ci, gid - offsets[ci]

    points, provenance = [], {}
    for c, root in enumerate(roots):
        members = classes[root]
        kinds = set()
        prov = []
        for gid in sorted(members):
            ci, li = local_of(gid)
            lp = plats[reps[ci].key()].skel.points[li]
            kinds.add(lp.kind)
            prov.append((ci, lp.label))
        ci, li = local_of(min(members))
        rp = plats[reps[ci].key()].skel.points[li]
        kind = KIND_VERY_CLOSED if KIND_VERY_CLOSED in kinds else rp.kind
        points.append(
            SpectrumPoint(rp.stratum, rp.ideal, kind, f"c{ci}:{rp.label}")
        )
        provenance[c] = prov
    order = set()
    for ci, x in enumerate(reps):
        skel = plats[x.key()].skel
        for (a, b) in skel.order:
            ca, cb = cls_of[offsets[ci] + a], cls_of[offsets[ci] + b]
            if ca != cb:
                order.add((ca, cb))
    glued = SpectrumSkeleton(
        points, order, provenance, sections=[(x, i) for i, x in enumerate(reps)]
    )
    glued.p = p
    glued.level = level
    return glued


def components(G, p, cap_rank=DEFAULT_RANK_CAP):
    """One (maximal section, generic-point class) per irreducible component."""
    glued = glue(G, p, level="strata", cap_rank=cap_rank)
    out = []
    for c, prov in sorted(glued.provenance.items()):
        if any(lbl == "eta(1)" for (_, lbl) in prov):
            ci = prov[0][0]
            out.append((glued.sections[ci][0], c))
    assert len(out) == len(glued.sections), "components must match maximal sections"
    return out


def dimension(G, p, cap_rank=DEFAULT_RANK_CAP, cross_check=True):
    """Krull dimension of the spectrum: the sectional p-rank of G."""
    cat = SectionCategory(G, p)
    dim = max(x.rank() for x in cat.maxel())
    if cross_check:
        glued = glue(G, p, level="strata", cap_rank=cap_rank)
        assert glued.height() == dim, "longest chain disagrees with sectional rank"
    return dim


def p_rank(G, p):
    """Maximal rank of an elementary abelian subgroup (kernel-free section)."""
    cat = SectionCategory(G, p)
    return max(x.rank() for x in cat.objects() if x.K.order == 1)


def fold(skel, matrix):
    """Quotient a skeleton of an elementary abelian group by an automorphism.

    The automorphism is a square matrix over F_p acting on the chosen basis;
    points are identified with their images (strata relabel, ideals transform
    by the induced linear substitution)."""
    E, p = skel.ambient, skel.p
    assert E is not None, "fold needs a skeleton built by skeleton()"
    ea = local_ring(E, E.trivial_subgroup(), p).ea
    r = ea.rank
    assert len(matrix) == r and all(len(row) == r for row in matrix)
    theta = {}
    for x in range(E.order):
        v = ea.vec_of[x]
        w = tuple(sum(matrix[i][k] * v[k] for k in range(r)) % p for i in range(r))
        theta[x] = ea.elem_of[w]
    assert len(set(theta.values())) == E.order, "matrix is not invertible mod p"
    theta_inv = {v: k for k, v in theta.items()}
    uf = _UnionFind(len(skel.points))
    for i, pt in enumerate(skel.points):
        S2 = E.subgroup(sorted(theta[x] for x in pt.stratum.elements))
        _, proj1, spec1 = stratum_data(E, pt.stratum, p)
        Q2, proj2, spec2 = stratum_data(E, S2, p)
        # group iso E/S -> E/S2 induced by theta; the ring map goes backwards
        iota = []
        for b in range(Q2.order):
            x = next(x for x in range(E.order) if int(proj2.map[x]) == b)
            iota.append(int(proj1.map[theta_inv[x]]))
        hom = _induced_hom(spec1, spec2, iota)
        moved = SpectrumPoint(
            S2, hom.apply_ideal(pt.ideal), pt.kind, pt.label + "'"
        )
        if pt.kind == KIND_CUSTOM:
            moved.kind = KIND_CUSTOM
        uf.union(i, _locate(skel, moved))
    classes = {}
    for i in range(len(skel.points)):
        classes.setdefault(uf.find(i), []).append(i)
    roots = sorted(classes)
    cls_of = {i: roots.index(uf.find(i)) for i in range(len(skel.points))}
    points, provenance = [], {}
    for c, root in enumerate(roots):
        members = sorted(classes[root])
        rp = skel.points[members[0]]
        points.append(rp)
        provenance[c] = [(0, skel.points[i].label) for i in members]
    order = set()
    for (a, b) in skel.order:
        if cls_of[a] != cls_of[b]:
            order.add((cls_of[a], cls_of[b]))
    out = SpectrumSkeleton(points, order, provenance)
    out.ambient, out.p, out.level = E, p, skel.level
    return out


def frattini_cover_check(E, p, family=None, max_family=4):
    """Membership in every U(b_N) of an intersection-trivial family of index-p
    subgroups forces membership in all of them, checked on every named point.

    A named point lies in U(b_N) exactly when its stratum is contained in N;
    for a family with trivial intersection this must pin the stratum to the
    trivial subgroup.  With family=None every intersection-trivial family of
    at most max_family index-p subgroups is checked."""
    skel = skeleton(E, p, level="rational")
    spec = local_ring(E, E.trivial_subgroup(), p)
    kernels = [spec.coordinate[lbl].kernel for lbl in sorted(spec.plus_of)]
    if family is not None:
        families = [list(family)]
    else:
        families = []
        for size in range(1, max_family + 1):
            for combo in itertools.combinations(kernels, size):
                inter = combo[0]
                for N in combo[1:]:
                    inter = inter.intersection(N)
                if inter.order == 1:
                    families.append(list(combo))
    if not families:
        return True
    for fam in families:
        inter = fam[0]
        for N in fam[1:]:
            inter = inter.intersection(N)
        if inter.order != 1:
            raise GroupError("family does not intersect trivially")
        for pt in skel.points:
            if all(N.contains_subgroup(pt.stratum) for N in fam):
                if pt.stratum.order != 1:
                    return False
    return True
