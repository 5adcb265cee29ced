"""Dense univariate polynomial arithmetic over a field context.

Polynomials are lists of field values, low degree first, with no trailing
zeros ([] is the zero polynomial).  Every function takes the field context
as its first argument; this keeps the representation unboxed and lets the
prime-field path use the compiled kernels.
"""

from . import kernels
from .errors import DivisionByZero


def trim(F, c):
    i = len(c)
    while i > 0 and F.eq(c[i - 1], F.zero()):
        i -= 1
    return list(c[:i])


def deg(c):
    """Degree, with the zero polynomial mapped to -1."""
    return len(c) - 1


def padd(F, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, v in enumerate(b):
        out[i] = F.add(out[i], v)
    return trim(F, out)


def pneg(F, a):
    return [F.neg(v) for v in a]


def psub(F, a, b):
    return padd(F, a, pneg(F, b))


def pscale(F, a, c):
    if F.eq(c, F.zero()):
        return []
    return trim(F, [F.mul(v, c) for v in a])


def pmul(F, a, b):
    if not a or not b:
        return []
    if F.kind == "prime":
        return trim(F, kernels.poly_mul(a, b, F.p))
    out = [F.zero()] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if F.eq(ai, F.zero()):
            continue
        for j, bj in enumerate(b):
            out[i + j] = F.add(out[i + j], F.mul(ai, bj))
    return trim(F, out)


def pdivmod(F, a, b):
    if not b:
        raise DivisionByZero("polynomial division by zero")
    a = list(a)
    q = [F.zero()] * max(0, len(a) - len(b) + 1)
    inv_lead = F.inv(b[-1])
    while len(a) >= len(b):
        c = F.mul(a[-1], inv_lead)
        k = len(a) - len(b)
        if not F.eq(c, F.zero()):
            q[k] = c
            for i, bv in enumerate(b):
                a[k + i] = F.sub(a[k + i], F.mul(c, bv))
        a.pop()
    return trim(F, q), trim(F, a)


def pmod(F, a, b):
    return pdivmod(F, a, b)[1]


def pmonic(F, a):
    if not a:
        return []
    return pscale(F, a, F.inv(a[-1]))


def pgcd(F, a, b):
    a, b = trim(F, a), trim(F, b)
    while b:
        a, b = b, pmod(F, a, b)
    return pmonic(F, a)


def peval(F, a, x):
    acc = F.zero()
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


def pcompose(F, a, b):
    """a(b(x))."""
    acc = []
    for c in reversed(a):
        acc = padd(F, pmul(F, acc, b), [c] if not F.eq(c, F.zero()) else [])
    return acc


def ppow_mod(F, a, e, m):
    """a^e mod m by square and multiply."""
    result = [F.one()]
    base = pmod(F, a, m)
    while e > 0:
        if e & 1:
            result = pmod(F, pmul(F, result, base), m)
        base = pmod(F, pmul(F, base, base), m)
        e >>= 1
    return result


def pderiv(F, a):
    out = []
    for i in range(1, len(a)):
        out.append(F.mul(a[i], F.from_int(i)))
    return trim(F, out)


def pxgcd(F, a, b):
    """Extended gcd: returns (g, u, v) monic with u*a + v*b = g."""
    r0, r1 = trim(F, a), trim(F, b)
    u0, u1 = [F.one()], []
    v0, v1 = [], [F.one()]
    while r1:
        q, r = pdivmod(F, r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, psub(F, u0, pmul(F, q, u1))
        v0, v1 = v1, psub(F, v0, pmul(F, q, v1))
    if not r0:
        return [], u0, v0
    c = F.inv(r0[-1])
    return pscale(F, r0, c), pscale(F, u0, c), pscale(F, v0, c)
