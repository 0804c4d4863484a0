"""Finitely presented graded-commutative algebras over F_p.

Polynomials are sparse dicts {exponent tuple: coefficient mod p}.  The engine
is a plain Buchberger implementation with degree-reverse-lexicographic and
block-elimination orders; everything downstream (ideal membership, equality,
saturation, elimination, contraction along ring homomorphisms) reduces to
normal forms against reduced Groebner bases.

Variables carry an integer shift degree (and optionally a twist tuple); in
odd characteristic only even shift degrees are supported, which keeps the
ring honestly commutative.  For p = 2 signs are invisible, so odd degrees
are allowed there.
"""

import functools
import itertools
import re


class RingError(ValueError):
    pass


class UnsupportedRegimeError(RingError):
    """Odd-shift variables in odd characteristic: not a commutative regime."""


# -- monomial orders -----------------------------------------------------------


def _grevlex_cmp(e1, e2):
    d1, d2 = sum(e1), sum(e2)
    if d1 != d2:
        return 1 if d1 > d2 else -1
    for i in reversed(range(len(e1))):
        if e1[i] != e2[i]:
            # smaller exponent in the last differing position wins
            return 1 if e1[i] < e2[i] else -1
    return 0


class MonomialOrder:
    """grevlex, or a block order eliminating the first `block` variables."""

    def __init__(self, nvars, block=0):
        self.nvars = nvars
        self.block = block
        self.key = functools.cmp_to_key(self.cmp)

    def cmp(self, e1, e2):
        if self.block:
            b = self.block
            c = _grevlex_cmp(e1[:b], e2[:b])
            if c:
                return c
            return _grevlex_cmp(e1[b:], e2[b:])
        return _grevlex_cmp(e1, e2)


# -- raw polynomial arithmetic --------------------------------------------------


def pnormal(f, p):
    return {m: c % p for m, c in f.items() if c % p}


def padd(f, g, p):
    out = dict(f)
    for m, c in g.items():
        c2 = (out.get(m, 0) + c) % p
        if c2:
            out[m] = c2
        else:
            out.pop(m, None)
    return out


def pscale(f, c, p):
    c %= p
    if c == 0:
        return {}
    return {m: (cc * c) % p for m, cc in f.items()}


def _mono_mul(m1, m2):
    return tuple(a + b for a, b in zip(m1, m2))


def pmul(f, g, p):
    out = {}
    for m1, c1 in f.items():
        for m2, c2 in g.items():
            m = _mono_mul(m1, m2)
            c = (out.get(m, 0) + c1 * c2) % p
            if c:
                out[m] = c
            else:
                out.pop(m, None)
    return out


def pconst(c, nvars, p):
    c %= p
    return {(0,) * nvars: c} if c else {}


def pvar(i, nvars):
    e = [0] * nvars
    e[i] = 1
    return {tuple(e): 1}


def leading(f, order):
    m = max(f, key=order.key)
    return m, f[m]


def _divides(m1, m2):
    return all(a <= b for a, b in zip(m1, m2))


def _mono_div(m1, m2):
    return tuple(a - b for a, b in zip(m1, m2))


def normal_form(f, basis, order, p):
    """Full normal form of f against a list of polynomials."""
    f = pnormal(f, p)
    lead = [leading(g, order) for g in basis]
    out = {}
    work = dict(f)
    while work:
        m, c = leading(work, order)
        reduced = False
        for g, (lm, lc) in zip(basis, lead):
            if _divides(lm, m):
                factor = {_mono_div(m, lm): (c * pow(lc, p - 2, p)) % p}
                work = padd(work, pscale(pmul(factor, g, p), p - 1, p), p)
                reduced = True
                break
        if not reduced:
            out[m] = c
            del work[m]
    return out


def s_polynomial(f, g, order, p):
    (mf, cf), (mg, cg) = leading(f, order), leading(g, order)
    lcm = tuple(max(a, b) for a, b in zip(mf, mg))
    tf = {_mono_div(lcm, mf): pow(cf, p - 2, p)}
    tg = {_mono_div(lcm, mg): pow(cg, p - 2, p)}
    return padd(pmul(tf, f, p), pscale(pmul(tg, g, p), p - 1, p), p)


def buchberger(gens, order, p):
    """Reduced Groebner basis (sorted by leading monomial, monic)."""
    basis = [pnormal(g, p) for g in gens]
    basis = [g for g in basis if g]
    pairs = list(itertools.combinations(range(len(basis)), 2))
    while pairs:
        # normal selection: smallest lcm first
        def lcm_of(pair):
            mi, _ = leading(basis[pair[0]], order)
            mj, _ = leading(basis[pair[1]], order)
            return tuple(max(a, b) for a, b in zip(mi, mj))

        pairs.sort(key=lambda pr: order.key(lcm_of(pr)), reverse=True)
        i, j = pairs.pop()
        mi, _ = leading(basis[i], order)
        mj, _ = leading(basis[j], order)
        lcm = tuple(max(a, b) for a, b in zip(mi, mj))
        if lcm == _mono_mul(mi, mj):  # coprime leading terms
            continue
        s = s_polynomial(basis[i], basis[j], order, p)
        r = normal_form(s, basis, order, p)
        if r:
            basis.append(r)
            pairs.extend((k, len(basis) - 1) for k in range(len(basis) - 1))
    # minimalize
    keep = []
    for i, g in enumerate(basis):
        lm, _ = leading(g, order)
        if any(
            _divides(leading(h, order)[0], lm)
            for k, h in enumerate(basis)
            if k != i and (k in keep or k > i)
        ):
            continue
        keep.append(i)
    minimal = [basis[i] for i in keep]
    # inter-reduce and normalize
    reduced = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        r = normal_form(g, others, order, p) if others else g
        if r:
            _, lc = leading(r, order)
            reduced.append(pscale(r, pow(lc, p - 2, p), p))
    reduced.sort(key=lambda g: order.key(leading(g, order)[0]))
    return tuple(canonical(g) for g in reduced)


def canonical(f):
    return tuple(sorted(f.items()))


def from_canonical(t):
    return dict(t)


# -- presentations ---------------------------------------------------------------


class GradedPresentation:
    """A graded-commutative F_p-algebra: named variables with degrees, relations.

    degrees: integer shift degrees; twists: optional tuples (one slot per
    twist coordinate), used only for multigraded bookkeeping.
    """

    def __init__(self, p, variables, relations=(), twist_len=0, check=True):
        self.p = p
        self.varnames = tuple(name for name, _deg in _norm_vars(variables))
        self.degrees = tuple(deg for _name, deg in _norm_vars(variables))
        self.twists = {}
        self.twist_len = twist_len
        for entry in variables:
            if len(entry) > 2 and entry[2] is not None:
                self.twists[entry[0]] = tuple(entry[2])
        if len(set(self.varnames)) != len(self.varnames):
            raise RingError("duplicate variable names")
        self.index = {n: i for i, n in enumerate(self.varnames)}
        self.order = MonomialOrder(len(self.varnames))
        self.relations = tuple(
            self.poly(r) if not isinstance(r, dict) else pnormal(r, p)
            for r in relations
        )
        self._gb_cache = {}
        if check:
            for r in self.relations:
                if not self.is_homogeneous(r):
                    raise RingError(f"relation not homogeneous: {self.format(r)}")

    @property
    def nvars(self):
        return len(self.varnames)

    def check_regime(self):
        if self.p != 2 and any(d % 2 for d in self.degrees):
            raise UnsupportedRegimeError(
                "odd-shift variables in odd characteristic are not supported"
            )

    # polynomial construction

    def zero(self):
        return {}

    def one(self):
        return pconst(1, self.nvars, self.p)

    def const(self, c):
        return pconst(c, self.nvars, self.p)

    def var(self, name):
        return pvar(self.index[name], self.nvars)

    def poly(self, expr):
        if isinstance(expr, dict):
            return pnormal(expr, self.p)
        return parse_poly(expr, self)

    def shift_degree(self, mono):
        return sum(e * d for e, d in zip(mono, self.degrees))

    def twist_degree(self, mono):
        tw = [0] * self.twist_len
        for i, e in enumerate(mono):
            t = self.twists.get(self.varnames[i])
            if t:
                for k in range(self.twist_len):
                    tw[k] += e * t[k]
        return tuple(tw)

    def is_homogeneous(self, f):
        if not f:
            return True
        degs = {self.shift_degree(m) for m in f}
        if len(degs) > 1:
            return False
        if self.twist_len:
            tws = {self.twist_degree(m) for m in f}
            if len(tws) > 1:
                return False
        return True

    def degree_of(self, f):
        if not f:
            return None
        return self.shift_degree(next(iter(f)))

    def format(self, f):
        return format_poly(f, self)

    def digest(self):
        return hash(
            (
                self.p,
                self.varnames,
                self.degrees,
                tuple(sorted((k, v) for k, v in self.twists.items())),
                tuple(canonical(r) for r in self.relations),
            )
        )

    def groebner_of(self, gens, block=0):
        """Reduced GB of <gens + relations> under grevlex / block elimination."""
        self.check_regime()
        key = (tuple(sorted(canonical(g) for g in gens)), block)
        hit = self._gb_cache.get(key)
        if hit is not None:
            return hit
        order = MonomialOrder(self.nvars, block=block)
        gb = buchberger(list(gens) + list(self.relations), order, self.p)
        self._gb_cache[key] = gb
        return gb

    def __repr__(self):
        vs = ", ".join(
            f"{n}({d:+d})" for n, d in zip(self.varnames, self.degrees)
        )
        return f"GradedPresentation(F_{self.p}[{vs}] / {len(self.relations)} relations)"


def _norm_vars(variables):
    out = []
    for entry in variables:
        name, deg = entry[0], entry[1]
        out.append((name, int(deg)))
    return out


class HomogeneousIdeal:
    """An ideal of a GradedPresentation, given by homogeneous generators."""

    def __init__(self, ambient, generators, check=True):
        self.ambient = ambient
        gens = []
        for g in generators:
            f = ambient.poly(g)
            if f:
                gens.append(f)
        self.generators = tuple(gens)
        if check:
            for g in self.generators:
                if not ambient.is_homogeneous(g):
                    raise RingError(
                        f"ideal generator not homogeneous: {ambient.format(g)}"
                    )

    def groebner(self):
        return self.ambient.groebner_of(self.generators)

    def member(self, f):
        f = self.ambient.poly(f)
        gb = self.groebner()
        if not gb:
            return not f
        order = self.ambient.order
        return not normal_form(f, [dict(g) for g in gb], order, self.ambient.p)

    def normal_form(self, f):
        f = self.ambient.poly(f)
        gb = [dict(g) for g in self.groebner()]
        if not gb:
            return f
        return normal_form(f, gb, self.ambient.order, self.ambient.p)

    def is_zero(self):
        """True iff the ideal equals the ideal of ambient relations alone."""
        return self == HomogeneousIdeal(self.ambient, [])

    def is_unit(self):
        return self.member(self.ambient.one())

    def __eq__(self, other):
        if not isinstance(other, HomogeneousIdeal):
            return NotImplemented
        if self.ambient.digest() != other.ambient.digest():
            return False
        return self.groebner() == other.groebner()

    def __hash__(self):
        return hash(self.groebner())

    def contains_ideal(self, other):
        return all(self.member(dict(g)) for g in other.generators)

    def __repr__(self):
        gs = ", ".join(self.ambient.format(dict(g)) for g in self.generators)
        return f"<{gs}>"


def ideal_eq(I, J):
    return I == J


def member(f, I):
    return I.member(f)


def groebner(I):
    return I.groebner()


# -- elimination / saturation / contraction --------------------------------------


def eliminate(I, varnames):
    """Generators of I ∩ (subring without the named variables)."""
    amb = I.ambient
    block_idx = sorted(amb.index[v] for v in varnames)
    rest_idx = [i for i in range(amb.nvars) if i not in block_idx]
    perm = block_idx + rest_idx  # new position -> old index
    inv = {old: new for new, old in enumerate(perm)}

    def reindex(f):
        return {
            tuple(m[perm[k]] for k in range(len(perm))): c for m, c in f.items()
        }

    gens = [reindex(g) for g in I.generators] + [reindex(r) for r in amb.relations]
    order = MonomialOrder(amb.nvars, block=len(block_idx))
    amb.check_regime()
    gb = buchberger(gens, order, amb.p)
    kept = []
    for g in gb:
        gd = dict(g)
        if all(all(m[k] == 0 for k in range(len(block_idx))) for m in gd):
            kept.append({
                tuple(m[inv[i]] for i in range(amb.nvars)): c for m, c in gd.items()
            })
    return HomogeneousIdeal(amb, kept, check=False)


def _poly_div_exact(f, g, order, p):
    """Quotient of an exact division f = q*g (raises if remainder nonzero)."""
    q = {}
    work = dict(f)
    lm, lc = leading(g, order)
    while work:
        m, c = leading(work, order)
        if not _divides(lm, m):
            raise RingError("inexact polynomial division")
        t = {_mono_div(m, lm): (c * pow(lc, p - 2, p)) % p}
        q = padd(q, t, p)
        work = padd(work, pscale(pmul(t, g, p), p - 1, p), p)
    return q


def intersect(I, J):
    """I ∩ J via the single-tag-variable trick."""
    amb = I.ambient
    ext = GradedPresentation(
        amb.p,
        [("t@", 0)] + list(zip(amb.varnames, amb.degrees)),
        check=False,
    )

    def up(f):
        return {(0,) + m: c for m, c in f.items()}

    t = ext.var("t@")
    one_minus_t = padd(ext.one(), pscale(t, amb.p - 1, amb.p), amb.p)
    gens = [pmul(t, up(g), amb.p) for g in I.generators]
    gens += [pmul(one_minus_t, up(g), amb.p) for g in J.generators]
    gens += [up(r) for r in amb.relations]
    ext_ideal = HomogeneousIdeal(ext, gens, check=False)
    elim = eliminate(ext_ideal, ["t@"])
    down = [
        {m[1:]: c for m, c in g.items()} for g in elim.generators
    ]
    return HomogeneousIdeal(amb, down, check=False)


def quotient_by(I, f):
    """Ideal quotient (I : f) computed in the ambient polynomial ring."""
    amb = I.ambient
    f = amb.poly(f)
    if not f:
        raise RingError("quotient by zero")
    J = intersect(
        HomogeneousIdeal(
            amb, list(I.generators) + list(amb.relations), check=False
        ),
        HomogeneousIdeal(amb, [f], check=False),
    )
    out = [_poly_div_exact(dict(g), f, amb.order, amb.p) for g in J.generators]
    return HomogeneousIdeal(amb, out, check=False)


def saturate(I, f):
    """I : f^infinity, by iterating the ideal quotient until stable."""
    cur = I
    while True:
        nxt = quotient_by(cur, f)
        if nxt == cur:
            return cur
        cur = nxt


class GradedRingHom:
    """Ring homomorphism between presentations, one image per source variable.

    gamma maps source shift degrees to target shift degrees (default:
    identity).  Construction verifies that relations die and that images are
    homogeneous of the expected degree.
    """

    def __init__(self, source, target, images, gamma=None, check=True):
        self.source = source
        self.target = target
        self.images = [target.poly(im) for im in images]
        self.gamma = gamma if gamma is not None else (lambda d: d)
        if len(self.images) != source.nvars:
            raise RingError("need one image per source variable")
        if check:
            self._validate()

    def _validate(self):
        tgt_rel = HomogeneousIdeal(self.target, [], check=False)
        for i, im in enumerate(self.images):
            if not self.target.is_homogeneous(im):
                raise RingError("image not homogeneous")
            if im:
                want = self.gamma(self.source.degrees[i])
                if self.target.degree_of(im) != want:
                    raise RingError(
                        f"image of {self.source.varnames[i]} has degree "
                        f"{self.target.degree_of(im)}, expected {want}"
                    )
        for r in self.source.relations:
            if not tgt_rel.member(self.apply(r)):
                raise RingError(
                    f"relation {self.source.format(r)} does not map to zero"
                )

    def apply(self, f):
        f = self.source.poly(f)
        p = self.target.p
        out = {}
        for m, c in f.items():
            term = pconst(c, self.target.nvars, p)
            for i, e in enumerate(m):
                for _ in range(e):
                    term = pmul(term, self.images[i], p)
            out = padd(out, term, p)
        return out

    def apply_ideal(self, I):
        return HomogeneousIdeal(
            self.target, [self.apply(dict(g)) for g in I.generators], check=False
        )

    def compose(self, earlier):
        images = [self.apply(im) for im in earlier.images]
        return GradedRingHom(
            earlier.source,
            self.target,
            images,
            gamma=lambda d: self.gamma(earlier.gamma(d)),
            check=False,
        )


def contract(phi, J):
    """Preimage phi^{-1}(J + target relations) as an ideal of the source.

    Classic graph-ideal elimination: in k[target vars, source vars], take J,
    the target relations and x_i - phi(x_i), then eliminate the target block.
    """
    src, tgt = phi.source, phi.target
    if src.p != tgt.p:
        raise RingError("characteristic mismatch")
    p = src.p
    tnames = [f"y{i}@" for i in range(tgt.nvars)]
    combined = GradedPresentation(
        p,
        list(zip(tnames, tgt.degrees)) + list(zip(src.varnames, src.degrees)),
        check=False,
    )
    tn = tgt.nvars

    def up_t(f):  # target poly into combined
        return {m + (0,) * src.nvars: c for m, c in f.items()}

    def up_s(f):  # source poly into combined
        return {(0,) * tn + m: c for m, c in f.items()}

    gens = [up_t(dict(g)) for g in J.generators]
    gens += [up_t(r) for r in tgt.relations]
    for i in range(src.nvars):
        graph = padd(
            up_s(pvar(i, src.nvars)), pscale(up_t(phi.images[i]), p - 1, p), p
        )
        gens.append(graph)
    big = HomogeneousIdeal(combined, gens, check=False)
    elim = eliminate(big, tnames)
    down = [{m[tn:]: c for m, c in g.items()} for g in elim.generators]
    out = HomogeneousIdeal(src, down, check=False)
    # drop generators already implied by the source relations
    zero = HomogeneousIdeal(src, [], check=False)
    gens = [dict(g) for g in out.generators if not zero.member(dict(g))]
    return HomogeneousIdeal(src, gens, check=False)


def count_standard_monomials(pres, shift, twist=None, max_total=60):
    """Dimension of the graded piece (shift, twist) of the presented algebra.

    Counts monomials of the given multidegree avoiding all leading terms of
    the relation Groebner basis.  Requires a twist grading that bounds the
    exponents (every variable must carry a nonzero twist when twist is given).
    """
    gb = pres.groebner_of([])
    lead = [leading(dict(g), pres.order)[0] for g in gb]
    n = pres.nvars
    if twist is not None:
        bounds = []
        for i, name in enumerate(pres.varnames):
            t = pres.twists.get(name)
            if not t or all(x == 0 for x in t):
                raise RingError("twist counting needs twist-positive variables")
            bounds.append(
                min(
                    (twist[k] // t[k]) if t[k] else max_total
                    for k in range(len(twist))
                    if t[k] or twist[k] < max_total
                )
            )
    else:
        bounds = [max_total] * n
    count = 0
    for expo in itertools.product(*[range(b + 1) for b in bounds]):
        if twist is not None and pres.twist_degree(expo) != tuple(twist):
            continue
        if pres.shift_degree(expo) != shift:
            continue
        if any(_divides(lm, expo) for lm in lead):
            continue
        count += 1
    return count


# -- ASCII grammar ----------------------------------------------------------------

_TOKEN = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_]*|\d+|\^|\*|\+|\-|\(|\))")


def parse_poly(text, pres):
    """Parse `c*zp_a^2*zm_b + ...` into a polynomial of the presentation."""
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise RingError(f"parse error at position {pos}: {text[pos:]!r}")
            break
        tokens.append(m.group(1))
        pos = m.end()
    p = pres.p
    total = pres.zero()
    i = 0
    sign = 1
    if tokens and tokens[0] in "+-":
        sign = -1 if tokens[0] == "-" else 1
        i = 1
    while i < len(tokens):
        term = pres.one()
        expect_factor = True
        while i < len(tokens) and tokens[i] not in "+-":
            tok = tokens[i]
            if tok == "*":
                i += 1
                continue
            if tok.isdigit():
                term = pscale(term, int(tok), p)
                i += 1
            else:
                if tok not in pres.index:
                    raise RingError(f"unknown variable {tok!r}")
                e = 1
                if i + 2 < len(tokens) + 1 and i + 1 < len(tokens) and tokens[i + 1] == "^":
                    e = int(tokens[i + 2])
                    i += 2
                v = pres.var(tok)
                for _ in range(e):
                    term = pmul(term, v, p)
                i += 1
            expect_factor = False
        if expect_factor:
            raise RingError("empty term")
        total = padd(total, pscale(term, sign % p, p), p)
        if i < len(tokens):
            sign = -1 if tokens[i] == "-" else 1
            i += 1
    return total


def format_poly(f, pres):
    if not f:
        return "0"
    order = pres.order
    monos = sorted(f, key=order.key, reverse=True)
    parts = []
    for m in monos:
        c = f[m]
        factors = []
        for i, e in enumerate(m):
            if e == 1:
                factors.append(pres.varnames[i])
            elif e > 1:
                factors.append(f"{pres.varnames[i]}^{e}")
        if not factors:
            parts.append(str(c))
        elif c == 1:
            parts.append("*".join(factors))
        else:
            parts.append(f"{c}*" + "*".join(factors))
    return " + ".join(parts)
