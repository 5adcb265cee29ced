"""Exact base fields carrying a designated primitive root of unity.

Three kinds are supported: prime fields F_p, finite extensions F_p[z]/(g),
and rational function fields F_q(t) over either of those.  A field object is
an arithmetic context; element values are unboxed (int for prime fields, a
coefficient tuple for extensions, a reduced (numerator, denominator) pair of
coefficient tuples for function fields) and all operations go through the
context, which is what makes exact desk-scale enumeration affordable.

The designated root `q` of order `n` is part of the descriptor because every
construction downstream (extension rings, monomial algebras, spectra) twists
by it.

Specification grammar accepted by :func:`make_field`:

    Fp:<p>;n=<n>;q=<int>
    Fq:<p>^<k>;mod=<c0,c1,...>;n=<n>;q=<c0,c1,...>
    Frat:<inner spec>

with polynomial coefficients listed low to high, e.g. mod=2,0,1 for z^2+2.
"""

import math

from . import _pol
from .errors import (
    CharacteristicDividesN,
    DivisionByZero,
    MixedFields,
    NotPrimitiveRoot,
    ParseError,
    ZeroInput,
)


def is_prime(m):
    if m < 2:
        return False
    for d in range(2, int(math.isqrt(m)) + 1):
        if m % d == 0:
            return False
    return True


def factorize(m):
    """Prime factorization by trial division, as a dict prime -> exponent."""
    out = {}
    d = 2
    while d * d <= m:
        while m % d == 0:
            out[d] = out.get(d, 0) + 1
            m //= d
        d += 1
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def divisors(m):
    """All positive divisors of m, ascending."""
    out = [1]
    for prime, e in factorize(m).items():
        out = [d * prime**k for d in out for k in range(e + 1)]
    return sorted(out)


class Field:
    """Common interface of the three field kinds."""

    kind = None

    # subclasses define: char, add, sub, mul, neg, inv, eq, zero, one,
    # from_int, order (None if infinite), elements(), rank(), to_str(),
    # parse_element()

    def require_same(self, other):
        if self is not other and self.key() != other.key():
            raise MixedFields(f"elements of {self} and {other} mixed")

    def div(self, a, b):
        return self.mul(a, self.inv(b))

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

    def is_zero(self, a):
        return self.eq(a, self.zero())

    def is_finite(self):
        return self.order() is not None

    def sum(self, values):
        acc = self.zero()
        for v in values:
            acc = self.add(acc, v)
        return acc

    def prod(self, values):
        acc = self.one()
        for v in values:
            acc = self.mul(acc, v)
        return acc

    def multiplicative_order(self, a):
        if self.is_zero(a):
            raise ZeroInput("order of zero")
        m = self.order() - 1
        order = m
        for prime in factorize(m):
            while order % prime == 0 and self.eq(self.pow(a, order // prime), self.one()):
                order //= prime
        return order

    def validate_root(self):
        if self.char and self.n % self.char == 0:
            raise CharacteristicDividesN(
                f"characteristic {self.char} divides root order {self.n}"
            )
        if not self.eq(self.pow(self.q, self.n), self.one()):
            raise NotPrimitiveRoot(f"q^{self.n} != 1")
        for prime in factorize(self.n):
            k = self.n // prime
            if self.eq(self.pow(self.q, k), self.one()):
                raise NotPrimitiveRoot(f"q^{k} = 1 with {k} < {self.n}")

    def q_pow(self, k):
        return self.pow(self.q, k % self.n)

    def random(self, rng):
        o = self.order()
        if o is None:
            raise NotImplementedError
        return self.unrank(rng.randrange(o))

    def random_nonzero(self, rng):
        while True:
            v = self.random(rng)
            if not self.is_zero(v):
                return v

    def __repr__(self):
        return self.spec()

    def __eq__(self, other):
        return isinstance(other, Field) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


class PrimeField(Field):
    kind = "prime"

    def __init__(self, p, n, q):
        if not is_prime(p):
            raise ParseError(f"{p} is not prime")
        self.p = p
        self.char = p
        self.n = n
        self.q = q % p
        self.validate_root()

    def key(self):
        return ("prime", self.p, self.n, self.q)

    def spec(self):
        return f"Fp:{self.p};n={self.n};q={self.q}"

    def with_root(self, q, n):
        return PrimeField(self.p, n, q)

    def order(self):
        return self.p

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, k):
        return k % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise DivisionByZero("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def eq(self, a, b):
        return (a - b) % self.p == 0

    def elements(self):
        return range(self.p)

    def rank(self, a):
        return a % self.p

    def unrank(self, r):
        return r % self.p

    def to_str(self, a):
        return str(a % self.p)

    def parse_element(self, text):
        try:
            return int(text, 10) % self.p
        except ValueError as exc:
            raise ParseError(f"bad element {text!r} for {self}") from exc


class ExtensionField(Field):
    """F_p[z]/(g) with g monic irreducible; values are coefficient tuples."""

    kind = "extension"

    def __init__(self, p, modulus, n, q):
        self.base = PrimeField(p, 1, 1)
        self.p = p
        self.char = p
        mod = _pol.trim(self.base, [c % p for c in modulus])
        if len(mod) < 2:
            raise ParseError("extension modulus must have degree >= 1")
        if mod[-1] != 1:
            raise ParseError("extension modulus must be monic")
        if not _modulus_irreducible(self.base, mod):
            raise ParseError("extension modulus is reducible")
        self.modulus = tuple(mod)
        self.degree = len(mod) - 1
        self.n = n
        self.q = self._tuple(q)
        self.validate_root()

    def _tuple(self, coeffs):
        c = [v % self.p for v in coeffs][: self.degree]
        c += [0] * (self.degree - len(c))
        return tuple(c)

    def key(self):
        return ("ext", self.p, self.modulus, self.n, self.q)

    def spec(self):
        mod = ",".join(str(c) for c in self.modulus)
        qs = ",".join(str(c) for c in self.q)
        return f"Fq:{self.p}^{self.degree};mod={mod};n={self.n};q={qs}"

    def with_root(self, q, n):
        return ExtensionField(self.p, self.modulus, n, q)

    def order(self):
        return self.p**self.degree

    def zero(self):
        return (0,) * self.degree

    def one(self):
        return self._tuple([1])

    def from_int(self, k):
        return self._tuple([k % self.p])

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def neg(self, a):
        return tuple((-x) % self.p for x in a)

    def mul(self, a, b):
        prod = _pol.pmul(self.base, list(a), list(b))
        return self._tuple(_pol.pmod(self.base, prod, list(self.modulus)))

    def inv(self, a):
        av = _pol.trim(self.base, list(a))
        if not av:
            raise DivisionByZero("inverse of zero")
        g, u, _ = _pol.pxgcd(self.base, av, list(self.modulus))
        if _pol.deg(g) != 0:
            raise DivisionByZero("element not invertible")  # cannot happen: modulus irreducible
        return self._tuple(_pol.pscale(self.base, u, self.base.inv(g[0])))

    def eq(self, a, b):
        return a == b

    def elements(self):
        for r in range(self.order()):
            yield self.unrank(r)

    def rank(self, a):
        r = 0
        for c in reversed(a):
            r = r * self.p + c
        return r

    def unrank(self, r):
        c = []
        for _ in range(self.degree):
            c.append(r % self.p)
            r //= self.p
        return tuple(c)

    def generator_value(self):
        """The class of z itself."""
        return self._tuple([0, 1])

    def frobenius(self, a, k=1):
        return self.pow(a, self.p**k)

    def subfield_degree(self, a):
        """Degree of F_p(a) over F_p: least d with a^(p^d) = a."""
        for d in divisors(self.degree):
            if self.eq(self.frobenius(a, d), a):
                return d
        return self.degree

    def min_poly(self, a):
        """Minimal polynomial of a over F_p, as an int coefficient list."""
        d = self.subfield_degree(a)
        conj = [a]
        for _ in range(d - 1):
            conj.append(self.frobenius(conj[-1]))
        poly = [self.one()]
        for c in conj:
            poly = _ext_poly_mul_linear(self, poly, c)
        out = []
        for coeff in poly:
            if any(coeff[1:]):
                raise ArithmeticError("minimal polynomial left the prime field")
            out.append(coeff[0])
        return out

    def to_str(self, a):
        return ",".join(str(c) for c in a)

    def parse_element(self, text):
        try:
            return self._tuple([int(t, 10) for t in text.split(",")])
        except ValueError as exc:
            raise ParseError(f"bad element {text!r} for {self}") from exc


def _ext_poly_mul_linear(F, poly, root):
    """Multiply a poly over F (list of F-values) by (Z - root)."""
    out = [F.zero()] * (len(poly) + 1)
    for i, c in enumerate(poly):
        out[i + 1] = F.add(out[i + 1], c)
        out[i] = F.sub(out[i], F.mul(root, c))
    return out


def _modulus_irreducible(base, mod):
    """Exhaustive trial division; moduli at desk scale are tiny."""
    d = len(mod) - 1
    if d == 1:
        return True
    p = base.p
    for fdeg in range(1, d // 2 + 1):
        for r in range(p**fdeg):
            coeffs, t = [], r
            for _ in range(fdeg):
                coeffs.append(t % p)
                t //= p
            coeffs.append(1)
            if not _pol.pmod(base, list(mod), coeffs):
                return False
    return True


class RationalFunctionField(Field):
    """F_q(t); values are reduced (num, den) coefficient-tuple pairs, den monic."""

    kind = "rational"

    def __init__(self, inner):
        if not isinstance(inner, (PrimeField, ExtensionField)):
            raise ParseError("rational function field needs a finite inner field")
        self.inner = inner
        self.char = inner.char
        self.n = inner.n
        self.q = self.from_inner(inner.q)

    def key(self):
        return ("rat", self.inner.key())

    def spec(self):
        return f"Frat:{self.inner.spec()}"

    def with_root(self, q, n):
        # q must be a constant; delegate validation to the inner field
        num, den = q
        if len(num) > 1 or len(den) > 1:
            raise NotPrimitiveRoot("designated root must be a constant")
        return RationalFunctionField(self.inner.with_root(num[0], n))

    def order(self):
        return None

    def from_inner(self, c):
        if self.inner.is_zero(c):
            return ((), (self.inner.one(),))
        return ((c,), (self.inner.one(),))

    def t(self):
        """The generator t."""
        return ((self.inner.zero(), self.inner.one()), (self.inner.one(),))

    def from_polys(self, num, den):
        return self._reduce(list(num), list(den))

    def _reduce(self, num, den):
        F = self.inner
        num = _pol.trim(F, num)
        den = _pol.trim(F, den)
        if not den:
            raise DivisionByZero("zero denominator")
        if not num:
            return ((), (F.one(),))
        g = _pol.pgcd(F, num, den)
        if _pol.deg(g) > 0:
            num = _pol.pdivmod(F, num, g)[0]
            den = _pol.pdivmod(F, den, g)[0]
        lead = F.inv(den[-1])
        num = _pol.pscale(F, num, lead)
        den = _pol.pscale(F, den, lead)
        return (tuple(num), tuple(den))

    def zero(self):
        return ((), (self.inner.one(),))

    def one(self):
        return ((self.inner.one(),), (self.inner.one(),))

    def from_int(self, k):
        return self.from_inner(self.inner.from_int(k))

    def add(self, a, b):
        F = self.inner
        n1, d1 = a
        n2, d2 = b
        num = _pol.padd(F, _pol.pmul(F, list(n1), list(d2)), _pol.pmul(F, list(n2), list(d1)))
        return self._reduce(num, _pol.pmul(F, list(d1), list(d2)))

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def neg(self, a):
        num, den = a
        return (tuple(_pol.pneg(self.inner, list(num))), den)

    def mul(self, a, b):
        F = self.inner
        n1, d1 = a
        n2, d2 = b
        return self._reduce(_pol.pmul(F, list(n1), list(n2)), _pol.pmul(F, list(d1), list(d2)))

    def inv(self, a):
        num, den = a
        if not num:
            raise DivisionByZero("inverse of zero")
        return self._reduce(list(den), list(num))

    def eq(self, a, b):
        return a == b

    def elements(self):
        raise NotImplementedError("infinite field")

    def rank(self, a):
        raise NotImplementedError("infinite field")

    def height(self, a):
        """max(deg num, deg den); the search-bound measure."""
        num, den = a
        return max(len(num) - 1, len(den) - 1)

    def polynomials_up_to(self, degree):
        """All inner-coefficient tuples of degree <= degree (including 0)."""
        F = self.inner
        o = F.order()
        for total in range(o ** (degree + 1)):
            t, coeffs = total, []
            for _ in range(degree + 1):
                coeffs.append(F.unrank(t % o))
                t //= o
            yield tuple(_pol.trim(F, coeffs))

    def to_str(self, a):
        # extension-field inner coefficients already use commas, so join
        # those with semicolons to keep the representation parseable
        sep = "," if isinstance(self.inner, PrimeField) else ";"
        num, den = a
        ns = sep.join(self.inner.to_str(c) for c in num) if num else "0"
        if len(den) == 1 and self.inner.eq(den[0], self.inner.one()):
            return ns
        ds = sep.join(self.inner.to_str(c) for c in den)
        return f"{ns}/{ds}"

    def parse_element(self, text):
        parts = text.split("/")
        if len(parts) == 1:
            num, den = parts[0], None
        elif len(parts) == 2:
            num, den = parts
        else:
            raise ParseError(f"bad element {text!r} for {self}")

        def poly(chunk):
            if chunk.strip() == "0":
                return []
            if isinstance(self.inner, PrimeField):
                return [self.inner.parse_element(t) for t in chunk.split(",")]
            return [self.inner.parse_element(t) for t in chunk.split(";")]

        dv = poly(den) if den is not None else [self.inner.one()]
        return self._reduce(poly(num), dv)


def make_field(spec):
    """Parse a field-specification string; see the module docstring grammar."""
    spec = spec.strip()
    if spec.startswith("Frat:"):
        return RationalFunctionField(make_field(spec[len("Frat:"):]))
    if spec.startswith("Fp:"):
        body = spec[len("Fp:"):]
        parts = dict(_kv(body, head="p"))
        try:
            return PrimeField(int(parts["p"]), int(parts["n"]), int(parts["q"]))
        except KeyError as exc:
            raise ParseError(f"missing key in {spec!r}") from exc
        except ValueError as exc:
            raise ParseError(f"bad integer in {spec!r}") from exc
    if spec.startswith("Fq:"):
        body = spec[len("Fq:"):]
        parts = dict(_kv(body, head="pk"))
        try:
            p_txt, k_txt = parts["pk"].split("^")
            p, k = int(p_txt), int(k_txt)
            mod = [int(c) for c in parts["mod"].split(",")]
            q = [int(c) for c in parts["q"].split(",")]
        except (KeyError, ValueError) as exc:
            raise ParseError(f"cannot parse {spec!r}") from exc
        if len(mod) - 1 != k:
            raise ParseError(f"modulus degree {len(mod)-1} != {k}")
        return ExtensionField(p, mod, int(parts["n"]), q)
    raise ParseError(f"unknown field kind in {spec!r}")


def _kv(body, head):
    parts = body.split(";")
    yield head, parts[0]
    for part in parts[1:]:
        if "=" not in part:
            raise ParseError(f"expected key=value, got {part!r}")
        k, v = part.split("=", 1)
        yield k.strip(), v.strip()


def field_arith(field, a, b, op):
    """Dispatch a binary/unary field operation by name (CLI surface)."""
    ops = {
        "add": field.add,
        "sub": field.sub,
        "mul": field.mul,
        "div": field.div,
        "pow": field.pow,
    }
    if op in ops:
        return ops[op](a, b)
    if op == "inv":
        return field.inv(a)
    raise ParseError(f"unknown operation {op!r}")


# --- m-th power testing -----------------------------------------------------

#: fields with at most this many elements are searched exhaustively
EXHAUSTIVE_ROOT_BOUND = 10**4


def mth_power_test(field, s, m):
    """Return some b with b^m = s, or None if s is not an m-th power in field.

    Finite fields use exhaustive search up to EXHAUSTIVE_ROOT_BOUND elements
    and order arithmetic beyond; rational function fields factor numerator
    and denominator.  The witness is the smallest element in canonical rank
    order (finite case), which fixes the root branch used downstream.
    """
    if m < 1:
        raise ZeroInput("m must be >= 1")
    if m == 1:
        return s
    if field.is_zero(s):
        return field.zero()
    if field.is_finite():
        size = field.order()
        if size <= EXHAUSTIVE_ROOT_BOUND:
            for b in field.elements():
                if field.eq(field.pow(b, m), s):
                    return b
            return None
        return _mth_root_by_order(field, s, m)
    return _mth_power_rational(field, s, m)


def _mth_root_by_order(field, s, m):
    """Order-arithmetic path for fields too large to scan exhaustively.

    Deterministic (fixed generator scan plus baby-step giant-step), though the
    witness is the congruence solution rather than the rank-minimal root; the
    canonical-minimal promise is kept on the exhaustive path where it matters.
    """
    mult = field.order() - 1
    g = math.gcd(m, mult)
    if not field.eq(field.pow(s, mult // g), field.one()):
        return None
    gen = _find_generator(field)
    d = _bsgs_dlog(field, s, gen, mult)
    if d % g != 0:
        return None  # unreachable given the power test above
    e = (d // g) * pow(m // g, -1, mult // g) % (mult // g)
    root = field.pow(gen, e)
    assert field.eq(field.pow(root, m), s)
    return root


def _find_generator(field):
    mult = field.order() - 1
    checks = [mult // prime for prime in factorize(mult)]
    for cand in field.elements():
        if field.is_zero(cand):
            continue
        if all(not field.eq(field.pow(cand, c), field.one()) for c in checks):
            return cand
    raise ArithmeticError("no generator found")


def _bsgs_dlog(field, target, gen, mult):
    step = int(math.isqrt(mult)) + 1
    table = {}
    cur = field.one()
    for j in range(step):
        table.setdefault(cur, j)
        cur = field.mul(cur, gen)
    giant = field.inv(field.pow(gen, step))
    cur = target
    for i in range(step + 1):
        j = table.get(cur)
        if j is not None:
            return (i * step + j) % mult
        cur = field.mul(cur, giant)
    raise ArithmeticError("discrete log not found")


def _mth_power_rational(field, s, m):
    from . import polys  # deferred: polys builds on fields

    F = field.inner
    num, den = s

    def split(coeffs):
        poly = polys.Polynomial(field_inner_as_field(field), list(coeffs))
        return polys.factor_over_finite_field(poly)

    lead = F.mul(num[-1], F.inv(den[-1]))
    factors = {}
    for base, e in split(num):
        factors[tuple(base.coeffs)] = factors.get(tuple(base.coeffs), 0) + e
    for base, e in split(den):
        factors[tuple(base.coeffs)] = factors.get(tuple(base.coeffs), 0) - e
    for e in factors.values():
        if e % m != 0:
            return None
    c = mth_power_test(F, lead, m)
    if c is None:
        return None
    wnum, wden = [F.one()], [F.one()]
    for coeffs, e in factors.items():
        powed = [F.one()]
        for _ in range(abs(e) // m):
            powed = _pol.pmul(F, powed, list(coeffs))
        if e > 0:
            wnum = _pol.pmul(F, wnum, powed)
        elif e < 0:
            wden = _pol.pmul(F, wden, powed)
    wnum = _pol.pscale(F, wnum, c)
    witness = field.from_polys(wnum, wden)
    assert field.eq(field.pow(witness, m), s)
    return witness


def field_inner_as_field(field):
    """The inner finite field of a rational function field, as a Field."""
    return field.inner
