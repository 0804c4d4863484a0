"""Twisted cohomology rings of elementary abelian p-groups.

For an elementary abelian group E of rank r over F_p, coordinates are the
surjections pi: E -> C_p, i.e. nonzero linear functionals up to scalar; each
index-p subgroup N = ker(pi) gets one canonical coordinate (first nonzero
entry 1).  For a subgroup H <= E we present the localized ring R'_E(H) on
generators

    zp_N  (degree +2', for N >= H)      "a_N / b_N"
    zm_N  (degree -2', for N not >= H)  "b_N / a_N"

with 2' = 2 for odd p and 1 for p = 2.  Relations come from the single master
relation a1*b2*b3 + b1*a2*b3 + lam*b1*b2*a3 = 0 attached to each dependent
triple of kernels, divided by the invertible generators; the scalar lam
accounts for recanonicalizing the third coordinate.

The closure transport (closure_ideal) moves an ideal of the rank-r cohomology
into the stratum of H: push into the common localization where both the
H-localization and the 1-localization embed, contract back to R'_E(H), then
collapse along the quotient map to the cohomology of E/H.
"""

import itertools

import numpy as np

from . import modp
from .groups import (
    GroupError,
    index_p_normals,
    is_elementary_abelian,
    quotient,
    subgroup_as_group,
)
from .gradedrings import (
    GradedPresentation,
    GradedRingHom,
    HomogeneousIdeal,
    contract,
    pmul,
    pscale,
)


def two_prime(p):
    return 2 if p != 2 else 1


class EAStructure:
    """An elementary abelian group with a chosen F_p-basis and dlog tables."""

    def __init__(self, group, p):
        if not is_elementary_abelian(group, p):
            raise GroupError("group is not elementary abelian for this prime")
        self.group = group
        self.p = p
        # greedy basis: extend the span one independent element at a time
        basis = []
        span = {0: ()}  # element -> exponent vector over current basis
        for x in range(group.order):
            if x in span:
                continue
            basis.append(x)
            new_span = dict(span)
            for e, vec in span.items():
                y = e
                for k in range(1, p):
                    y = group.mul(y, x)
                    new_span[y] = vec + (k,)
            span = {e: vec + (0,) * (len(basis) - len(vec)) for e, vec in new_span.items()}
        self.basis = basis
        self.rank = len(basis)
        self.vec_of = {e: tuple(v) for e, v in span.items()}
        self.elem_of = {v: e for e, v in self.vec_of.items()}
        assert len(self.vec_of) == group.order

    def functional_on(self, f, element):
        v = self.vec_of[element]
        return sum(a * b for a, b in zip(f, v)) % self.p

    def kernel_of_functional(self, f):
        elems = [e for e in range(self.group.order) if self.functional_on(f, e) == 0]
        return self.group.subgroup(elems)

    def functional_of_kernel(self, N):
        """Canonical nonzero functional vanishing on the index-p subgroup N."""
        rows = np.array([self.vec_of[e] for e in N.elements], dtype=np.int64)
        if rows.size == 0:
            rows = np.zeros((1, self.rank), dtype=np.int64)
        ker = modp.nullspace(rows, self.p)  # functionals vanishing on N
        assert len(ker) == 1, "kernel is not of index p"
        return canonical_functional(tuple(int(c) for c in ker[0]), self.p)


def canonical_functional(f, p):
    """Scale a nonzero functional so its first nonzero entry is 1."""
    lead = next(c for c in f if c % p)
    inv = pow(lead % p, p - 2, p)
    return tuple((c * inv) % p for c in f)


def leading_scalar(f, p):
    """The lam with f = lam * canonical(f)."""
    return next(c % p for c in f if c % p)


class Coordinate:
    """A canonical surjection E -> C_p, stored as its functional."""

    def __init__(self, ea, f):
        self.ea = ea
        self.f = tuple(c % ea.p for c in f)
        assert self.f == canonical_functional(self.f, ea.p)
        self.label = "".join(str(c) for c in self.f)

    @property
    def kernel(self):
        return self.ea.kernel_of_functional(self.f)

    def __eq__(self, other):
        return isinstance(other, Coordinate) and self.f == other.f

    def __hash__(self):
        return hash(self.f)

    def __repr__(self):
        return f"Coordinate({self.label})"


def coordinates(ea):
    """One canonical coordinate per index-p subgroup, in lex order."""
    out = []
    seen = set()
    for f in itertools.product(range(ea.p), repeat=ea.rank):
        if all(c == 0 for c in f):
            continue
        cf = canonical_functional(f, ea.p)
        if cf not in seen:
            seen.add(cf)
            out.append(Coordinate(ea, cf))
    out.sort(key=lambda c: c.f)
    return out


def scalar_of(pi, pi2):
    """The unique lam with pi2 = pi^lam, or None for distinct kernels."""
    p = pi.ea.p
    for lam in range(1, p):
        if tuple((lam * c) % p for c in pi.f) == pi2.f:
            return lam
    return None


class LocalRingSpec:
    """R'_E(H): presentation plus the generator <-> kernel dictionary."""

    def __init__(self, ea, H, presentation, plus_of, minus_of):
        self.ea = ea
        self.H = H
        self.presentation = presentation
        self.plus_of = plus_of  # kernel label -> varname (N >= H)
        self.minus_of = minus_of  # kernel label -> varname (N not >= H)
        self.coordinate = {c.label: c for c in coordinates(ea)}

    @property
    def p(self):
        return self.ea.p

    def varname(self, coord):
        lbl = coord.label if isinstance(coord, Coordinate) else coord
        return self.plus_of.get(lbl) or self.minus_of[lbl]

    def __repr__(self):
        return (
            f"LocalRingSpec(rank {self.ea.rank}, |H|={len(self.H.elements)}, "
            f"{self.presentation!r})"
        )


_RING_CACHE = {}


def local_ring(E, H, p):
    """The presented localized twisted cohomology ring R'_E(H)."""
    key = (E.digest(), tuple(H.elements), p)
    hit = _RING_CACHE.get(key)
    if hit is not None:
        return hit
    ea = EAStructure(E, p)
    spec = _build_local_ring(ea, H)
    _RING_CACHE[key] = spec
    return spec


def _build_local_ring(ea, H):
    p = ea.p
    d = two_prime(p)
    coords = coordinates(ea)
    plus_of, minus_of, variables = {}, {}, []
    for c in coords:
        if c.kernel.contains_subgroup(H):
            plus_of[c.label] = f"zp_{c.label}"
        else:
            minus_of[c.label] = f"zm_{c.label}"
    for lbl in sorted(plus_of):
        variables.append((plus_of[lbl], d))
    for lbl in sorted(minus_of):
        variables.append((minus_of[lbl], -d))
    pres = GradedPresentation(p, variables)
    rels = []
    seen_triples = set()
    for c1, c2 in itertools.combinations(coords, 2):
        f3p = tuple((-(a + b)) % p for a, b in zip(c1.f, c2.f))
        if all(x == 0 for x in f3p):
            continue  # c2 = -c1: same kernel, no triple
        lam3 = leading_scalar(f3p, p)
        c3 = Coordinate(ea, canonical_functional(f3p, p))
        tkey = frozenset((c1.label, c2.label, c3.label))
        if tkey in seen_triples or len(tkey) < 3:
            continue
        seen_triples.add(tkey)
        rels.append(_master_instance(pres, plus_of, (c1, 1), (c2, 1), (c3, lam3)))
    rels = [r for r in rels if r]
    # discard duplicate relations by normal form of the polynomials
    uniq, seen = [], set()
    for r in rels:
        key = tuple(sorted(r.items()))
        if key not in seen:
            seen.add(key)
            uniq.append(r)
    pres2 = GradedPresentation(p, variables, relations=uniq)
    return LocalRingSpec(ea, H, pres2, plus_of, minus_of)


def _master_instance(pres, plus_of, *slots):
    """a1*b2*b3 + b1*a2*b3 + lam3*b1*b2*a3, divided by the invertible factors.

    Each slot is (coordinate, lam); for N >= H substitute a := lam*zp_N, b := 1
    and otherwise a := 1, b := zm_N / lam.
    """
    p = pres.p
    abs_ = []
    for coord, lam in slots:
        lbl = coord.label
        if lbl in plus_of:
            a = pscale(pres.var(f"zp_{lbl}"), lam, p)
            b = pres.one()
        else:
            a = pres.one()
            b = pscale(pres.var(f"zm_{lbl}"), pow(lam, p - 2, p), p)
        abs_.append((a, b))
    (a1, b1), (a2, b2), (a3, b3) = abs_
    t1 = pmul(a1, pmul(b2, b3, p), p)
    t2 = pmul(b1, pmul(a2, b3, p), p)
    t3 = pmul(b1, pmul(b2, a3, p), p)
    out = {}
    for t in (t1, t2, t3):
        for m, c in t.items():
            c2 = (out.get(m, 0) + c) % p
            if c2:
                out[m] = c2
            else:
                out.pop(m, None)
    return out


def present_Rloc(E, H, p):
    """Presentation of R'_E(H) (generators zp_N / zm_N, relations (b)-(d))."""
    return local_ring(E, H, p)


def present_Rtotal(E, p):
    """The full twist-graded ring on a_N, b_N with one master relation per triple.

    Variables carry twist tuples (one slot per kernel) so graded pieces can be
    counted against the homotopy-theoretic hom dimensions.
    """
    ea = EAStructure(E, p)
    d = two_prime(p)
    coords = coordinates(ea)
    nt = len(coords)
    slot = {c.label: i for i, c in enumerate(coords)}

    def twist(lbl):
        t = [0] * nt
        t[slot[lbl]] = 1
        return tuple(t)

    variables = [(f"a_{c.label}", 0, twist(c.label)) for c in coords]
    variables += [(f"b_{c.label}", -d, twist(c.label)) for c in coords]
    pres = GradedPresentation(p, variables, twist_len=nt)
    rels = []
    seen = set()
    for c1, c2 in itertools.combinations(coords, 2):
        f3p = tuple((-(a + b)) % p for a, b in zip(c1.f, c2.f))
        if all(x == 0 for x in f3p):
            continue
        lam3 = leading_scalar(f3p, p)
        c3 = Coordinate(ea, canonical_functional(f3p, p))
        tkey = frozenset((c1.label, c2.label, c3.label))
        if tkey in seen or len(tkey) < 3:
            continue
        seen.add(tkey)
        a = lambda c: pres.var(f"a_{c.label}")
        b = lambda c: pres.var(f"b_{c.label}")
        t1 = pmul(a(c1), pmul(b(c2), b(c3), p), p)
        t2 = pmul(b(c1), pmul(a(c2), b(c3), p), p)
        t3 = pscale(pmul(b(c1), pmul(b(c2), a(c3), p), p), lam3, p)
        rel = {}
        for t in (t1, t2, t3):
            for m, c in t.items():
                c2_ = (rel.get(m, 0) + c) % p
                if c2_:
                    rel[m] = c2_
                else:
                    rel.pop(m, None)
        rels.append(rel)
    return GradedPresentation(p, variables, relations=rels, twist_len=nt)


# -- induced homomorphisms ----------------------------------------------------------


def _quotient_coordinate(src_ea, tgt_ea, proj, N):
    """Canonical coordinate of N/K in E/K and the recanonicalization scalar.

    N must contain K = ker(proj).  Returns (Coordinate, lam) where the induced
    functional pibar (pibar o proj = pi_N) equals lam * canonical.
    """
    p = src_ea.p
    f = src_ea.functional_of_kernel(N)
    fbar = []
    pm = np.asarray(proj.map)
    for b in tgt_ea.basis:
        x = int(np.nonzero(pm == b)[0][0])  # any preimage of the basis element
        fbar.append(src_ea.functional_on(f, x))
    fbar = tuple(fbar)
    lam = leading_scalar(fbar, p)
    return Coordinate(tgt_ea, canonical_functional(fbar, p)), lam


def psi_hom(E, H, K, p):
    """The quotient-collapse map Psi^K: R'_E(H) -> R'_{E/K}(H/K) for K <= H.

    zp_N -> lam * zp_{N/K}; zm_M -> lam^{-1} * zm_{M/K} when K <= M, else 0.
    The returned hom carries .source_spec / .target_spec attributes.
    """
    if not H.contains_subgroup(K):
        raise GroupError("psi_hom needs K <= H")
    src = local_ring(E, H, p)
    Q, proj = quotient(E, E.subgroup(list(K.elements)))
    Hbar = Q.subgroup(sorted({int(proj.map[x]) for x in H.elements}))
    tgt = local_ring(Q, Hbar, p)
    tgt_ea = tgt.ea
    images = []
    for name in src.presentation.varnames:
        sign, lbl = name.split("_", 1)
        N = src.coordinate[lbl].kernel
        if not N.contains_subgroup(K):
            assert sign == "zm"
            images.append(tgt.presentation.zero())
            continue
        cbar, lam = _quotient_coordinate(src.ea, tgt_ea, proj, N)
        tname = tgt.varname(cbar)
        scale = lam if sign == "zp" else pow(lam, p - 2, p)
        images.append(pscale(tgt.presentation.var(tname), scale, p))
    hom = GradedRingHom(src.presentation, tgt.presentation, images)
    hom.source_spec, hom.target_spec = src, tgt
    return hom


def res_hom(Esub, E, H, p):
    """Restriction R'_E(H) -> R'_{E'}(H) along a subgroup E' <= E with H <= E'.

    zp_N -> 0 when E' <= N, else lam * zp_{N cap E'}; zm_M -> lam^{-1} * zm_{M cap E'}.
    Esub is a Subgroup of E; the target lives on the abstract group of Esub.
    """
    if not Esub.contains_subgroup(H):
        raise GroupError("res_hom needs H <= E'")
    src = local_ring(E, H, p)
    Esub_grp, embed = subgroup_as_group(Esub)
    Hsub = Esub_grp.subgroup(
        [i for i, x in enumerate(embed) if int(x) in set(H.elements)]
    )
    tgt = local_ring(Esub_grp, Hsub, p)
    images = []
    esub_set = set(Esub.elements)
    for name in src.presentation.varnames:
        sign, lbl = name.split("_", 1)
        N = src.coordinate[lbl].kernel
        if esub_set <= set(N.elements):
            assert sign == "zp", "zm kernel cannot contain E' when H <= E'"
            images.append(tgt.presentation.zero())
            continue
        f = src.ea.functional_of_kernel(N)
        fsub = tuple(
            src.ea.functional_on(f, int(embed[b])) for b in tgt.ea.basis
        )
        lam = leading_scalar(fsub, p)
        csub = Coordinate(tgt.ea, canonical_functional(fsub, p))
        tname = tgt.varname(csub)
        scale = lam if sign == "zp" else pow(lam, p - 2, p)
        images.append(pscale(tgt.presentation.var(tname), scale, p))
    hom = GradedRingHom(src.presentation, tgt.presentation, images)
    hom.source_spec, hom.target_spec = src, tgt
    return hom


class GlueIso:
    """Mutually inverse dictionaries between localizations of R'_E(H), R'_E(K)."""

    def __init__(self, loc_H, loc_K, to_K, to_H):
        self.loc_H = loc_H
        self.loc_K = loc_K
        self.to_K = to_K
        self.to_H = to_H


def _localized_presentation(spec, invert_labels):
    """Extend a local ring by inverses of the generators at the given kernels."""
    pres = spec.presentation
    variables = list(zip(pres.varnames, pres.degrees))
    inv_of = {}
    for lbl in sorted(invert_labels):
        name = spec.varname(lbl)
        deg = pres.degrees[pres.index[name]]
        inv = f"inv_{name}"
        variables.append((inv, -deg))
        inv_of[lbl] = inv
    extra = len(inv_of)
    rels = [{m + (0,) * extra: c for m, c in r.items()} for r in pres.relations]
    allnames = [v for v, _ in variables]
    for lbl, inv in inv_of.items():
        name = spec.varname(lbl)
        rels.append(
            {
                tuple((1 if v in (name, inv) else 0) for v in allnames): 1,
                (0,) * len(allnames): spec.p - 1,
            }
        )
    final = GradedPresentation(spec.p, variables, relations=rels, check=False)
    return final, inv_of


def glue_iso(E, H, K, p):
    """The canonical identification between localizations of R'_E(H) and R'_E(K).

    Kernels where H and K disagree get their generator inverted on both sides;
    the dictionary is zp_N <-> inv_zm_N (and zm_N <-> inv_zp_N) there, identity
    elsewhere.
    """
    sH = local_ring(E, H, p)
    sK = local_ring(E, K, p)
    disagree = [
        lbl
        for lbl in sH.coordinate
        if (lbl in sH.plus_of) != (lbl in sK.plus_of)
    ]
    locH, invH = _localized_presentation(sH, disagree)
    locK, invK = _localized_presentation(sK, disagree)

    def dictionary(src_spec, src_inv, tgt_spec, tgt_inv, src_loc, tgt_loc):
        images = []
        for name in src_loc.varnames:
            inverted = name.startswith("inv_")
            base = name[4:] if inverted else name
            lbl = base.split("_", 1)[1]
            same_side = (lbl in src_spec.plus_of) == (lbl in tgt_spec.plus_of)
            if same_side:
                tgt_name = tgt_spec.varname(lbl)
                images.append(
                    tgt_loc.var(f"inv_{tgt_name}" if inverted else tgt_name)
                )
            else:
                # zp <-> inverse of zm across the localization
                tgt_name = tgt_spec.varname(lbl)
                images.append(
                    tgt_loc.var(tgt_name if inverted else f"inv_{tgt_name}")
                )
        return GradedRingHom(src_loc, tgt_loc, images)

    to_K = dictionary(sH, invH, sK, invK, locH, locK)
    to_H = dictionary(sK, invK, sH, invH, locK, locH)
    return GlueIso(locH, locK, to_K, to_H)


# -- closure transport ---------------------------------------------------------------


_CLOSURE_CACHE = {}


def closure_ideal(E, H, I, p):
    """Transport an ideal of the cohomology of E into the stratum of H.

    I lives in present_Rloc(E, 1); the result lives in present_Rloc(E/H, 1)
    and cuts out the intersection of the closure of V(I) with the H-stratum.
    """
    spec1 = local_ring(E, E.trivial_subgroup(), p)
    if not isinstance(I, HomogeneousIdeal):
        I = HomogeneousIdeal(spec1.presentation, list(I))
    assert I.ambient.digest() == spec1.presentation.digest()
    key = (E.digest(), tuple(H.elements), p, tuple(sorted(
        tuple(sorted(g.items())) for g in I.generators
    )))
    hit = _CLOSURE_CACHE.get(key)
    if hit is not None:
        return hit
    specH = local_ring(E, H, p)
    # common localization T: all zp_N, plus zm_M = zp_M^{-1} for M not >= H
    variables = list(zip(spec1.presentation.varnames, spec1.presentation.degrees))
    d = two_prime(p)
    minus_labels = sorted(specH.minus_of)
    variables += [(f"zm_{lbl}", -d) for lbl in minus_labels]
    extra = len(minus_labels)
    t_rels = [
        {m + (0,) * extra: c for m, c in r.items()}
        for r in spec1.presentation.relations
    ]
    T = GradedPresentation(p, variables, check=False)
    for lbl in minus_labels:
        t_rels.append(
            {
                tuple(
                    (1 if v in (f"zp_{lbl}", f"zm_{lbl}") else 0)
                    for v in T.varnames
                ): 1,
                (0,) * T.nvars: p - 1,
            }
        )
    T = GradedPresentation(p, variables, relations=t_rels, check=False)
    into_T = GradedRingHom(
        spec1.presentation, T, [T.var(v) for v in spec1.presentation.varnames],
        check=False,
    )
    J_T = into_T.apply_ideal(I)
    Q = GradedRingHom(
        specH.presentation,
        T,
        [T.var(v) for v in specH.presentation.varnames],
    )
    pulled = contract(Q, J_T)
    # reinterpret the pulled generators inside R'_E(H), then collapse the zm's
    psiH = psi_hom(E, H, H, p)
    out = psiH.apply_ideal(
        HomogeneousIdeal(specH.presentation,
                         [dict(g) for g in pulled.generators], check=False)
    )
    _CLOSURE_CACHE[key] = out
    return out
