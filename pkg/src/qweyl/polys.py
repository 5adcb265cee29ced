"""Univariate polynomials over any field context, with finite-field factorization.

Factorization runs squarefree decomposition, then distinct-degree splitting,
then Cantor-Zassenhaus equal-degree splitting (with the trace variant in
characteristic 2).  An exhaustive trial-division oracle is provided for small
instances so the fast path can be validated independently.
"""

from dataclasses import dataclass

from . import _pol
from .errors import MixedFields, ParseError, UnsupportedField, ZeroInput
from .fields import divisors, mth_power_test


@dataclass(frozen=True)
class Polynomial:
    field: object
    coeffs: tuple

    def __init__(self, field, coeffs):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", tuple(_pol.trim(field, list(coeffs))))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def is_monic(self):
        return bool(self.coeffs) and self.field.eq(self.coeffs[-1], self.field.one())

    def _same(self, other):
        if self.field != other.field:
            raise MixedFields("polynomials over different fields")

    def __add__(self, other):
        self._same(other)
        return Polynomial(self.field, _pol.padd(self.field, list(self.coeffs), list(other.coeffs)))

    def __sub__(self, other):
        self._same(other)
        return Polynomial(self.field, _pol.psub(self.field, list(self.coeffs), list(other.coeffs)))

    def __neg__(self):
        return Polynomial(self.field, _pol.pneg(self.field, list(self.coeffs)))

    def __mul__(self, other):
        self._same(other)
        return Polynomial(self.field, _pol.pmul(self.field, list(self.coeffs), list(other.coeffs)))

    def scale(self, c):
        return Polynomial(self.field, _pol.pscale(self.field, list(self.coeffs), c))

    def divmod(self, other):
        self._same(other)
        q, r = _pol.pdivmod(self.field, list(self.coeffs), list(other.coeffs))
        return Polynomial(self.field, q), Polynomial(self.field, r)

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def gcd(self, other):
        self._same(other)
        return Polynomial(self.field, _pol.pgcd(self.field, list(self.coeffs), list(other.coeffs)))

    def eval(self, x):
        return _pol.peval(self.field, list(self.coeffs), x)

    def compose(self, other):
        self._same(other)
        return Polynomial(self.field, _pol.pcompose(self.field, list(self.coeffs), list(other.coeffs)))

    def monic(self):
        return Polynomial(self.field, _pol.pmonic(self.field, list(self.coeffs)))

    def deriv(self):
        return Polynomial(self.field, _pol.pderiv(self.field, list(self.coeffs)))

    def pow_mod(self, e, modulus):
        return Polynomial(self.field, _pol.ppow_mod(self.field, list(self.coeffs), e, list(modulus.coeffs)))

    def shift_pow(self, k):
        """Multiply by x^k."""
        if self.is_zero():
            return self
        return Polynomial(self.field, [self.field.zero()] * k + list(self.coeffs))

    def __str__(self):
        return poly_to_text(self)

    @staticmethod
    def x(field):
        return Polynomial(field, [field.zero(), field.one()])

    @staticmethod
    def constant(field, c):
        return Polynomial(field, [c])

    @staticmethod
    def binomial(field, n, s):
        """x^n - s."""
        coeffs = [field.neg(s)] + [field.zero()] * (n - 1) + [field.one()]
        return Polynomial(field, coeffs)


def poly_arith(f, g, op):
    """Dispatch polynomial operations by name; `eval` takes a field value."""
    ops = {
        "add": lambda: f + g,
        "mul": lambda: f * g,
        "divrem": lambda: f.divmod(g),
        "gcd": lambda: f.gcd(g),
        "compose": lambda: f.compose(g),
        "eval": lambda: f.eval(g),
    }
    if op in ops:
        return ops[op]()
    raise ParseError(f"unknown polynomial operation {op!r}")


def poly_to_text(f):
    if f.is_zero():
        return "0"
    F = f.field
    parts = []
    for i, c in enumerate(f.coeffs):
        if F.is_zero(c):
            continue
        cs = F.to_str(c)
        if i == 0:
            parts.append(cs)
        elif i == 1:
            parts.append(f"{cs}*x")
        else:
            parts.append(f"{cs}*x^{i}")
    return "+".join(parts)


def poly_from_text(field, text):
    """Parse either `c0,c1,...` or `c0+c1*x+c2*x^2` form."""
    text = text.strip()
    if "x" not in text:
        if "," in text:
            return Polynomial(field, [field.parse_element(t) for t in text.split(",")])
        return Polynomial(field, [field.parse_element(text)])
    coeffs = {}
    for term in text.replace("-", "+-").split("+"):
        term = term.strip()
        if not term:
            continue
        if "x" in term:
            head, _, tail = term.partition("x")
            head = head.rstrip("*").strip()
            neg = head.startswith("-")
            if neg:
                head = head[1:].strip()
            c = field.parse_element(head) if head else field.one()
            if neg:
                c = field.neg(c)
            e = int(tail.lstrip("^") or 1) if tail else 1
        else:
            c = field.parse_element(term)
            e = 0
        coeffs[e] = field.add(coeffs.get(e, field.zero()), c)
    out = [field.zero()] * (max(coeffs) + 1)
    for e, c in coeffs.items():
        out[e] = c
    return Polynomial(field, out)


# --- factorization over finite fields ----------------------------------------


def factor_over_finite_field(f):
    """Monic irreducible factors with multiplicity: list of (Polynomial, e).

    The leading constant is dropped (the product of factors equals f up to
    it); constants factor into the empty list.
    """
    F = f.field
    if not F.is_finite():
        raise UnsupportedField("factorization needs a finite coefficient field")
    if f.is_zero():
        raise ZeroInput("cannot factor the zero polynomial")
    f = f.monic()
    if f.degree == 0:
        return []
    out = []
    for g, mult in _squarefree_parts(f):
        for d, h in _distinct_degree(g):
            for irred in _equal_degree(h, d):
                out.append((irred, mult))
    out.sort(key=lambda pair: (pair[0].degree, _rank_key(pair[0])))
    return out


def _rank_key(f):
    F = f.field
    return tuple(F.rank(c) for c in f.coeffs)


def _squarefree_parts(f):
    """Yield (squarefree monic factor, multiplicity) pairs."""
    F = f.field
    p = F.char
    out = {}

    def accumulate(g, scale):
        if g.degree == 0:
            return
        d = g.deriv()
        if d.is_zero():
            # g = h(x^p); take the p-th root of the coefficients
            root = _pth_root_poly(g)
            accumulate(root, scale * p)
            return
        c = g.gcd(d)
        w = (g // c).monic()
        mult = 1
        while w.degree > 0:
            y = w.gcd(c)
            z = (w // y).monic()
            if z.degree > 0:
                out[z] = out.get(z, 0) + mult * scale
            w = y
            c = (c // y).monic()
            mult += 1
        if c.degree > 0:
            accumulate(c, scale)

    accumulate(f.monic(), 1)
    return sorted(out.items(), key=lambda kv: (kv[0].degree, _rank_key(kv[0])))


def _pth_root_poly(f):
    F = f.field
    p = F.char
    size = F.order()
    # c -> c^(size/p) is the inverse of Frobenius on F
    e = size // p
    coeffs = []
    for i in range(0, len(f.coeffs), p):
        coeffs.append(F.pow(f.coeffs[i], e))
    return Polynomial(F, coeffs)


def _distinct_degree(f):
    """Split squarefree monic f into products of same-degree irreducibles."""
    F = f.field
    size = F.order()
    out = []
    x = Polynomial.x(F)
    frob = x
    rest = f
    d = 0
    while rest.degree > 2 * (d + 1) - 1 and rest.degree > 0:
        d += 1
        frob = frob.pow_mod(size, rest)
        g = (frob - x % rest).gcd(rest)
        if g.degree > 0:
            out.append((d, g.monic()))
            rest = (rest // g).monic()
            frob = frob % rest
    if rest.degree > 0:
        out.append((rest.degree, rest))
    return out


def _equal_degree(f, d):
    """Cantor-Zassenhaus: factor monic squarefree f into irreducibles of degree d."""
    F = f.field
    if f.degree == d:
        return [f]
    size = F.order()
    # deterministic candidate stream keeps runs reproducible
    state = 1
    pieces = [f]
    done = []
    while pieces:
        g = pieces.pop()
        if g.degree == d:
            done.append(g)
            continue
        while True:
            state += 1
            cand = _candidate_poly(F, g.degree, state)
            if cand.degree < 1:
                continue
            if F.char == 2:
                t = cand
                acc = cand
                for _ in range(d * _ext_power(F) - 1):
                    t = t.pow_mod(2, g)
                    acc = (acc + t) % g
                h = acc
            else:
                h = cand.pow_mod((size**d - 1) // 2, g) - Polynomial.constant(F, F.one())
            w = h.gcd(g)
            if 0 < w.degree < g.degree:
                pieces.append(w.monic())
                pieces.append((g // w).monic())
                break
    return done


def _ext_power(F):
    return getattr(F, "degree", 1)


def _candidate_poly(F, below_degree, state):
    """state-th polynomial of degree < below_degree in base-|F| counting."""
    size = F.order()
    coeffs, t = [], state
    for _ in range(below_degree):
        coeffs.append(F.unrank(t % size))
        t //= size
    return Polynomial(F, coeffs)


def trial_factor(f):
    """Exhaustive trial-division factorization; the built-in oracle.

    Only sensible for |F| <= 31 and degree <= 6; raises otherwise.
    """
    F = f.field
    if not F.is_finite() or F.order() > 31 or f.degree > 6:
        raise UnsupportedField("trial factorization bound exceeded")
    if f.is_zero():
        raise ZeroInput("cannot factor the zero polynomial")
    f = f.monic()
    out = []
    d = 1
    while f.degree > 0:
        found = False
        if d > f.degree // 2:
            out.append((f, 1))
            break
        for r in range(F.order() ** d):
            coeffs, t = [], r
            for _ in range(d):
                coeffs.append(F.unrank(t % F.order()))
                t //= F.order()
            coeffs.append(F.one())
            cand = Polynomial(F, coeffs)
            q, rem = f.divmod(cand)
            if rem.is_zero():
                e = 1
                f = q
                while True:
                    q, rem = f.divmod(cand)
                    if not rem.is_zero():
                        break
                    f = q
                    e += 1
                out.append((cand, e))
                found = True
                break
        if not found:
            d += 1
    merged = {}
    for g, e in out:
        merged[g] = merged.get(g, 0) + e
    return sorted(merged.items(), key=lambda kv: (kv[0].degree, _rank_key(kv[0])))


def roots_over_field(f):
    """All roots in the (finite) coefficient field, with multiplicity."""
    out = []
    for g, e in factor_over_finite_field(f):
        if g.degree == 1:
            out.append((f.field.neg(g.coeffs[0]), e))
    return out


def binomial_irreducible(n, s, field):
    """Whether x^n - s is irreducible over the field.

    Routed through the m-th power criterion over the divisors of n, never
    through general factorization.  Requires the field's designated root
    order to be a multiple of n.
    """
    if field.n % n != 0:
        raise ParseError(f"field carries no primitive {n}-th root of unity")
    if n == 1:
        return True
    if field.is_zero(s):
        return False
    for m in divisors(n):
        if m == 1:
            continue
        if mth_power_test(field, s, m) is not None:
            return False
    return True
