"""Binomial quotient rings F[h]/(h^deg - s) with the root-of-unity twist.

The ring carries an automorphism h -> twist*h whose order equals the ring
degree; the norm is the product of all twist conjugates.  Rings of this shape
cover both the primary extension E(s) (degree n, twist q) and every reduced
ring appearing in the two-stage matrix reduction, so the twist is an explicit
parameter rather than always the field's designated root.

Elements are coefficient tuples over the base field, like polynomials but of
fixed length.  Prime-field rings route products, norms, and enumeration
through the kernel core.
"""

from . import _pol, kernels
from .errors import (
    DivisionByZero,
    MixedFields,
    NormNotScalar,
    NotAUnit,
    TooLarge,
    ZeroInput,
)
from .fields import PrimeField, divisors, mth_power_test

NORM_IMAGE_BOUND = 10**4


class ExtensionRing:
    """F[h]/(h^deg - s) with sigma: h -> twist*h."""

    def __init__(self, field, s, degree=None, twist=None):
        self.field = field
        self.degree = field.n if degree is None else degree
        self.s = s
        self.twist = field.q if twist is None else twist
        if self.degree > 1 and not field.eq(
            field.pow(self.twist, self.degree), field.one()
        ):
            raise ZeroInput("twist is not a root of unity of the ring degree")
        self._is_field = None
        self._fast = isinstance(field, PrimeField)

    def key(self):
        return ("extring", self.field.key(), self.degree, self._fr(self.s), self._fr(self.twist))

    def _fr(self, v):
        return v if self._fast else self.field.to_str(v)

    def __repr__(self):
        return f"E({self.field.to_str(self.s)}) deg {self.degree} over {self.field.spec()}"

    def __eq__(self, other):
        return isinstance(other, ExtensionRing) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    @property
    def is_field(self):
        if self._is_field is None:
            from .polys import binomial_irreducible

            self._is_field = self.degree == 1 or binomial_irreducible(
                self.degree, self.s, self.field
            )
        return self._is_field

    # --- element construction

    def zero(self):
        return tuple([self.field.zero()] * self.degree)

    def one(self):
        return self.scalar(self.field.one())

    def scalar(self, c):
        return tuple([c] + [self.field.zero()] * (self.degree - 1))

    def gen(self):
        """The class of h."""
        if self.degree == 1:
            return (self.s,)
        v = [self.field.zero()] * self.degree
        v[1] = self.field.one()
        return tuple(v)

    def from_coeffs(self, coeffs):
        c = list(coeffs)[: self.degree]
        c += [self.field.zero()] * (self.degree - len(c))
        return tuple(c)

    def require_same(self, other):
        if self != other:
            raise MixedFields("elements of different extension rings mixed")

    # --- arithmetic

    def add(self, a, b):
        F = self.field
        return tuple(F.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        F = self.field
        return tuple(F.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        return tuple(self.field.neg(x) for x in a)

    def smul(self, c, a):
        return tuple(self.field.mul(c, x) for x in a)

    def mul(self, a, b):
        if self._fast:
            return tuple(kernels.ext_mul(list(a), list(b), self.degree, self.field.p, self.s))
        F = self.field
        n = self.degree
        out = [F.zero()] * n
        for i in range(n):
            if F.is_zero(a[i]):
                continue
            for j in range(n):
                if F.is_zero(b[j]):
                    continue
                prod = F.mul(a[i], b[j])
                k = i + j
                if k >= n:
                    k -= n
                    prod = F.mul(prod, self.s)
                out[k] = F.add(out[k], prod)
        return tuple(out)

    def pow(self, a, e):
        if e < 0:
            return self.pow(self.inv(a), -e)
        acc, base = self.one(), a
        while e > 0:
            if e & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            e >>= 1
        return acc

    def eq(self, a, b):
        F = self.field
        return all(F.eq(x, y) for x, y in zip(a, b))

    def is_zero(self, a):
        return all(self.field.is_zero(x) for x in a)

    def is_scalar(self, a):
        return all(self.field.is_zero(x) for x in a[1:])

    def sigma_power(self, a, k):
        """Apply sigma^k: sum c_i h^i -> sum c_i twist^(ik) h^i."""
        F = self.field
        k %= self.degree
        if k == 0:
            return tuple(a)
        if self._fast:
            qk = F.pow(self.twist, k)
            return tuple(kernels.ext_sigma(list(a), self.degree, F.p, qk))
        step = F.pow(self.twist, k)
        out, t = [], F.one()
        for c in a:
            out.append(F.mul(c, t))
            t = F.mul(t, step)
        return tuple(out)

    def inv(self, a):
        """Inverse, via the extended gcd against h^deg - s.

        An element is a unit exactly when it is coprime to the modulus, also
        in the non-field case.
        """
        if self.is_zero(a):
            raise NotAUnit("zero is not a unit")
        F = self.field
        if self.is_scalar(a):
            return self.scalar(F.inv(a[0]))
        modulus = [F.neg(self.s)] + [F.zero()] * (self.degree - 1) + [F.one()]
        g, u, _ = _pol.pxgcd(F, _pol.trim(F, list(a)), modulus)
        if _pol.deg(g) != 0:
            raise NotAUnit("element is a zero divisor")
        return self.from_coeffs(_pol.pscale(F, u, F.inv(g[0])))

    # --- norms

    def norm_full(self, a):
        """prod_k sigma^k(a) without the scalar check."""
        if self._fast:
            qv = self.twist
            return tuple(
                kernels.ext_norm(list(a), self.degree, self.field.p, self.s, qv)
            )
        acc = tuple(a)
        cur = tuple(a)
        for _ in range(self.degree - 1):
            cur = self.sigma_power(cur, 1)
            acc = self.mul(acc, cur)
        return acc

    def norm(self, a):
        full = self.norm_full(a)
        if not self.is_scalar(full):
            raise NormNotScalar("norm left the scalar line")
        return full[0]

    # --- enumeration

    def size(self):
        o = self.field.order()
        return None if o is None else o**self.degree

    def elements(self):
        size = self.size()
        if size is None:
            raise TooLarge("cannot enumerate over an infinite base field")
        F = self.field
        o = F.order()
        for r in range(size):
            c, t = [], r
            for _ in range(self.degree):
                c.append(F.unrank(t % o))
                t //= o
            yield tuple(c)

    def rank(self, a):
        F = self.field
        r = 0
        for c in reversed(a):
            r = r * F.order() + F.rank(c)
        return r

    def random(self, rng):
        return tuple(self.field.random(rng) for _ in range(self.degree))

    def to_str(self, a):
        return ";".join(self.field.to_str(c) for c in a)


def ext_arith(ring, a, b, op, k=None):
    """Dispatch add/mul/inv/sigma_power by name (CLI surface)."""
    if op == "add":
        return ring.add(a, b)
    if op == "mul":
        return ring.mul(a, b)
    if op == "inv":
        return ring.inv(a)
    if op == "sigma_power":
        return ring.sigma_power(a, k)
    raise ValueError(f"unknown operation {op!r}")


def norm_image(ring, bound=NORM_IMAGE_BOUND):
    """The exact set {norm(e) : e in E}; finite base fields only."""
    size = ring.size()
    if size is None or size > bound:
        raise TooLarge(f"|E| exceeds the enumeration bound {bound}")
    if ring._fast:
        return set(
            kernels.ext_norm_image(ring.degree, ring.field.p, ring.s, ring.twist, bound)
        )
    out = set()
    for e in ring.elements():
        out.add(ring.norm(e))
    return out


def reduction_size(field, s, n):
    """m(s): the largest divisor m of n with s an m-th power in the field."""
    if field.is_zero(s):
        raise ZeroInput("m(s) needs s != 0")
    best = 1
    for m in divisors(n):
        if m == 1:
            continue
        if mth_power_test(field, s, m) is not None:
            best = m
    return best


def m_of(field, s, n):
    """(m(s), witness root s^(1/m(s)))."""
    m = reduction_size(field, s, n)
    root = mth_power_test(field, s, m)
    # cross-check: m(s) is the lcm of all admissible divisors
    admissible = [
        d for d in divisors(n) if d == 1 or mth_power_test(field, s, d) is not None
    ]
    acc = 1
    for d in admissible:
        acc = acc * d // _gcd(acc, d)
    assert acc == m, "lcm characterization of m(s) failed"
    return m, root


def m_of2(field, s, a, n):
    """(m(s,a), witness root a^(1/m(s,a))): the a-stage over divisors of n/m(s)."""
    if field.is_zero(a):
        raise ZeroInput("m(s,a) needs a != 0")
    ms, _ = m_of(field, s, n)
    return m_rel(field, a, n // ms)


def m_rel(field, a, n1):
    """Largest divisor m of n1 with a an m-th power, plus its witness."""
    if field.is_zero(a):
        raise ZeroInput("m(-) needs a nonzero input")
    best, root = 1, a
    for m in divisors(n1):
        if m == 1:
            continue
        w = mth_power_test(field, a, m)
        if w is not None:
            best, root = m, w
    return best, root


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def lagrange_idempotents(field, points):
    """Coefficient lists of the Lagrange idempotents at distinct points.

    Entry i is the coefficient list (degree < len(points)) of
    prod_{j != i} (W - p_j) / (p_i - p_j).
    """
    m = len(points)
    out = []
    for i in range(m):
        num = [field.one()]
        den = field.one()
        for j in range(m):
            if j == i:
                continue
            num = _pol.pmul(field, num, [field.neg(points[j]), field.one()])
            den = field.mul(den, field.sub(points[i], points[j]))
        coeffs = _pol.pscale(field, num, field.inv(den))
        coeffs += [field.zero()] * (m - len(coeffs))
        out.append(coeffs)
    return out


def reduction_idempotents(ring, which="e_family", a=None):
    """The orthogonal idempotent family of the power subring.

    `e_family`: the m(s) idempotents of F[h^(n/m(s))] inside E(s); sigma
    permutes them downward (sigma(e_i) = e_{i-1}).

    `e_tilde_family`: the family living in F[X]/(X^(n/m(s)) - a); the ring
    passed in must be that ring (degree n/m(s), parameter a, twist
    q^(-m(s))) and the cycle runs upward.
    """
    field = ring.field
    if field.is_zero(ring.s):
        raise ZeroInput("idempotent families need a nonzero ring parameter")
    if which == "e_family":
        m, root = m_of(field, ring.s, ring.degree)
    elif which == "e_tilde_family":
        if a is None:
            a = ring.s
        if field.is_zero(a):
            raise ZeroInput("tilde family needs a nonzero value")
        m, root = m_rel(field, a, ring.degree)
    else:
        raise ValueError(f"unknown family {which!r}")
    step = ring.degree // m
    zeta = field.pow(field.q, field.n // m)
    points = [field.mul(field.pow(zeta, i), root) for i in range(m)]
    coeff_lists = lagrange_idempotents(field, points)
    out = []
    for coeffs in coeff_lists:
        v = [field.zero()] * ring.degree
        for k, c in enumerate(coeffs):
            v[(k * step) % ring.degree] = field.add(v[(k * step) % ring.degree], c)
        out.append(tuple(v))
    return out
