"""The category of elementary abelian p-sections of a finite group.

Objects are pairs (H, K) of p-subgroups with K normal in H and H/K elementary
abelian.  A morphism (H, K) -> (H', K') is a group element g with

    K' <= g^{-1} K g   and   g^{-1} H g <= H',

composed by multiplication (g then g' is g g').  Requiring the target kernel
to sit inside the conjugated source kernel (rather than merely intersecting
it into place) is what makes the induced assignment on module categories
compatible with composition; with only the weaker intersection condition the
diagrams induced by inclusion-after-inflation fail to commute.  Every morphism factors as a
kernel-shrink (type c), an inclusion (type b) and a conjugation
(type a); the factorization is what the spectrum engine transports points
along.  Hom-sets can be reduced: `raw` keeps every witness element, `center_target`
identifies g ~ g s for s in Z(G) H' (these act trivially on the induced
functor), `full` keeps one witness per induced map H -> H'/K'.
"""

import itertools

from .groups import (
    GroupError,
    center,
    p_subgroups,
    is_elementary_abelian,
)


class SectionObject:
    """A p-section (H, K): K normal in H with H/K elementary abelian."""

    def __init__(self, H, K, p, check=True):
        self.H = H
        self.K = K
        self.p = p
        if check:
            if not H.contains_subgroup(K):
                raise GroupError("K must be contained in H")
            if not all(
                H.parent.conj(k, h) in set(K.elements)
                for k in K.elements
                for h in H.elements
            ):
                raise GroupError("K must be normal in H")
            if not H.is_p_group(p) or not K.is_p_group(p):
                raise GroupError("section subgroups must be p-groups")
            if not _section_elementary_abelian(H, K, p):
                raise GroupError("H/K must be elementary abelian")

    @property
    def group(self):
        return self.H.parent

    def key(self):
        return (tuple(self.H.elements), tuple(self.K.elements))

    def rank(self):
        n, r = self.H.order // self.K.order, 0
        while n > 1:
            n //= self.p
            r += 1
        return r

    def __eq__(self, other):
        return isinstance(other, SectionObject) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"({self.H.order}|{self.K.order})@{self.H.elements}"


def _section_elementary_abelian(H, K, p):
    G = H.parent
    ks = set(K.elements)
    for a in H.elements:
        if G.power(a, p) not in ks:
            return False
        for b in H.elements:
            # commutator in K
            comm = G.mul(G.inv(G.mul(b, a)), G.mul(a, b))
            if comm not in ks:
                return False
    return True


class SectionMorphism:
    """A morphism of sections witnessed by a group element."""

    def __init__(self, source, target, g, check=True):
        self.source = source
        self.target = target
        self.g = int(g)
        if check and not morphism_condition(source, target, g):
            raise GroupError("element does not define a section morphism")

    def compose(self, then):
        """self followed by `then`; witness is the product of witnesses."""
        assert self.target == then.source
        G = self.source.group
        return SectionMorphism(
            self.source, then.target, G.mul(self.g, then.g), check=False
        )

    def is_iso(self):
        G = self.source.group
        Hg = self.source.H.conjugate(self.g)
        Kg = self.source.K.conjugate(self.g)
        return (
            Hg.elements == self.target.H.elements
            and Kg.elements == self.target.K.elements
        )

    def induced_map_key(self):
        """The map H -> H'/K' induced by conjugation, as a tuple over H."""
        G = self.source.group
        Kp = set(self.target.K.elements)
        cosets = {}
        key = []
        for h in self.source.H.elements:
            x = G.conj(h, self.g)
            cs = frozenset(G.mul(x, k) for k in Kp) if Kp else frozenset([x])
            key.append(min(cs))
        return tuple(key)

    def __repr__(self):
        return f"{self.source}--[{self.g}]-->{self.target}"


def morphism_condition(x, y, g):
    """K' <= g^{-1} K g and g^{-1} H g <= H'."""
    G = x.group
    Hg = {G.conj(h, g) for h in x.H.elements}
    if not Hg <= set(y.H.elements):
        return False
    Kg = {G.conj(k, g) for k in x.K.elements}
    return set(y.K.elements) <= Kg


class SectionCategory:
    """EA_p(G): finite category of elementary abelian p-sections."""

    def __init__(self, G, p):
        self.G = G
        self.p = p
        self._objects = None
        self._z_center = None
        self._hom_cache = {}

    def objects(self):
        if self._objects is None:
            out = []
            for H in p_subgroups(self.G, self.p):
                for K in p_subgroups(self.G, self.p):
                    if not H.contains_subgroup(K):
                        continue
                    if not all(
                        self.G.conj(k, h) in set(K.elements)
                        for k in K.elements
                        for h in H.elements
                    ):
                        continue
                    if _section_elementary_abelian(H, K, self.p):
                        out.append(SectionObject(H, K, self.p, check=False))
            self._objects = out
        return self._objects

    def homs(self, x, y, reduction="raw"):
        """Morphisms x -> y under the requested reduction."""
        ck = (x.key(), y.key(), reduction)
        hit = self._hom_cache.get(ck)
        if hit is not None:
            return hit
        raw = [
            SectionMorphism(x, y, g, check=False)
            for g in range(self.G.order)
            if morphism_condition(x, y, g)
        ]
        if reduction == "raw":
            self._hom_cache[ck] = raw
            return raw
        if reduction == "center_target":
            if self._z_center is None:
                self._z_center = center(self.G)
            zh = set()
            frontier = set(self._z_center.elements) | set(y.H.elements)
            # subgroup generated by Z(G) and H'
            gen = self.G.generated_subgroup(sorted(frontier))
            gen_set = set(gen.elements)
            seen, out = set(), []
            for m in raw:
                coset = frozenset(self.G.mul(m.g, s) for s in gen_set)
                if coset not in seen:
                    seen.add(coset)
                    out.append(m)
            self._hom_cache[ck] = out
            return out
        if reduction == "full":
            seen, out = set(), []
            for m in raw:
                k = m.induced_map_key()
                if k not in seen:
                    seen.add(k)
                    out.append(m)
            self._hom_cache[ck] = out
            return out
        raise ValueError(f"unknown reduction {reduction!r}")

    def factorize(self, m):
        """Write m as a (conjugation) o b (inclusion) o c (kernel-shrink).

        c: (H,K) -> (H, gK'g^{-1}) by 1 (gK'g^{-1} <= K, same H);
        b: (H, gK'g^{-1}) -> (gH'g^{-1}, gK'g^{-1}) by 1 (same kernel);
        a: conjugation by g onto (H', K').
        """
        G = self.G
        g = m.g
        gi = G.inv(g)
        gHp = m.target.H.conjugate(gi)  # g H' g^{-1}
        gKp = m.target.K.conjugate(gi)
        c_obj = SectionObject(m.source.H, gKp, self.p)
        b_obj = SectionObject(gHp, gKp, self.p)
        c = SectionMorphism(m.source, c_obj, 0)
        b = SectionMorphism(c_obj, b_obj, 0)
        a = SectionMorphism(b_obj, m.target, g)
        composite = c.compose(b).compose(a)
        assert composite.g == m.g
        return a, b, c

    # -- maximal objects and relations -------------------------------------------

    def has_hom(self, x, y):
        return any(morphism_condition(x, y, g) for g in range(self.G.order))

    def maxel(self):
        """Conjugacy-class representatives of the maximal sections."""
        objs = self.objects()
        maximal = []
        for x in objs:
            ok = True
            for y in objs:
                if self.has_hom(x, y) and not self.has_hom(y, x):
                    ok = False
                    break
            if ok:
                maximal.append(x)
        # one representative per isomorphism class
        reps = []
        for x in maximal:
            if not any(self.has_hom(x, r) and self.has_hom(r, x) for r in reps):
                reps.append(x)
        return reps

    def is_EI(self, limit=None):
        """Every endomorphism is an isomorphism."""
        for x in self.objects()[:limit]:
            for m in self.homs(x, x):
                if not m.is_iso():
                    return False
        return True

    def maximal_relations(self, reduction="full"):
        """Maximal nondegenerate spans between maximal sections.

        Legs are identified when they induce the same map into the target
        section (morphisms with the same induced functor give the same
        relation).  A span x1 <-f1- y -f2-> x2 dominates another when some
        h: y' -> y satisfies f_i o h == f_i' up to that identification; only
        the dominant spans survive, one per mutual-domination class, minus the
        class of the identity span on each maximal section.
        """
        maxel = self.maxel()
        spans = []
        for i, x1 in enumerate(maxel):
            for x2 in maxel[i:]:
                spans.extend(self._maximal_spans(x1, x2, reduction))
        return spans

    def _maximal_spans(self, x1, x2, reduction="full"):
        cands = []
        for y in self.objects():
            f1s = self.homs(y, x1, reduction)
            if not f1s:
                continue
            f2s = self.homs(y, x2, reduction)
            for f1, f2 in itertools.product(f1s, f2s):
                cands.append((y, f1, f2))

        def dominates(big, small):
            """small factors through big via some h: y_small -> y_big."""
            (yb, f1b, f2b), (ys, f1s_, f2s_) = big, small
            for h in self.homs(ys, yb, "raw"):
                if (
                    h.compose(f1b).induced_map_key() == f1s_.induced_map_key()
                    and h.compose(f2b).induced_map_key()
                    == f2s_.induced_map_key()
                ):
                    return True
            return False

        maximal = []
        for c in cands:
            if any(
                d is not c and dominates(d, c) and not dominates(c, d)
                for d in cands
            ):
                continue
            maximal.append(c)
        # one representative per mutual-domination class, allowing the swap
        # symmetry when both feet agree
        same_feet = x1 == x2
        reps = []
        for c in maximal:
            dup = False
            for r in reps:
                if dominates(r, c) and dominates(c, r):
                    dup = True
                    break
                if same_feet:
                    cs = (c[0], c[2], c[1])
                    if dominates(r, cs) and dominates(cs, r):
                        dup = True
                        break
            if not dup:
                reps.append(c)
        out = []
        if same_feet:
            ident = (x1, self.identity(x1), self.identity(x1))
        for (y, f1, f2) in reps:
            span = (y, f1, f2)
            if same_feet and dominates(ident, span) and dominates(span, ident):
                continue
            out.append(SpanRelation(y, f1, f2))
        return out

    def identity(self, x):
        return SectionMorphism(x, x, 0, check=False)

    def to_dot(self, reduction="center_target"):
        objs = self.objects()
        lines = ["digraph sections {"]
        names = {}
        for i, x in enumerate(objs):
            names[x.key()] = f"s{i}"
            lines.append(
                f'  s{i} [label="({x.H.order},{x.K.order})"];'
            )
        for x in objs:
            for y in objs:
                if x is y:
                    continue
                n = len(self.homs(x, y, reduction))
                if n:
                    lines.append(
                        f"  {names[x.key()]} -> {names[y.key()]} "
                        f'[label="{n}"];'
                    )
        lines.append("}")
        return "\n".join(lines)


class SpanRelation:
    """A span x1 <-f1- y -f2-> x2 between maximal sections."""

    def __init__(self, apex, f1, f2):
        self.apex = apex
        self.f1 = f1
        self.f2 = f2

    @property
    def feet(self):
        return (self.f1.target, self.f2.target)

    def __repr__(self):
        return f"Span[{self.f1.target} <- {self.apex} -> {self.f2.target}]"
