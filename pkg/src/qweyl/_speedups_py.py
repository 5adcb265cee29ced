"""Pure-Python reference kernels for the mod-p hot loops.

The compiled extension qweyl._speedups implements the same functions with C
integer arithmetic; qweyl.kernels picks whichever is importable.  Everything
here works on plain lists of ints reduced mod p.

Conventions:
  * an element of F_p[h]/(h^n - s) is a list of n ints (coefficient of h^i
    at index i);
  * an element of the n^2-dimensional monomial algebra with basis h^i x^j
    is a flat list of n*n ints, index i*n + j;
  * the canonical rank of an extension element is sum(c_i * p^i), so
    enumeration in rank order lists the scalars first.
"""

IMPLEMENTATION = "python"


def poly_mul(a, b, p):
    """Dense product of two coefficient lists mod p (no modulus reduction)."""
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] = (out[i + j] + ai * bj) % p
    return out


def ext_mul(a, b, n, p, s):
    """Product in F_p[h]/(h^n - s); a, b are length-n lists."""
    out = [0] * n
    for i in range(n):
        ai = a[i]
        if not ai:
            continue
        for j in range(n):
            bj = b[j]
            if not bj:
                continue
            k = i + j
            if k < n:
                out[k] = (out[k] + ai * bj) % p
            else:
                out[k - n] = (out[k - n] + ai * bj * s) % p
    return out


def ext_sigma(a, n, p, qk):
    """Apply h -> qk*h, i.e. multiply coefficient i by qk^i."""
    out = [0] * n
    t = 1
    for i in range(n):
        out[i] = (a[i] * t) % p
        t = (t * qk) % p
    return out


def ext_norm(a, n, p, s, q):
    """prod_{k=0}^{n-1} sigma^k(a); returns the full coefficient list."""
    acc = list(a)
    cur = list(a)
    for _ in range(n - 1):
        cur = ext_sigma(cur, n, p, q)
        acc = ext_mul(acc, cur, n, p, s)
    return acc


def ext_norm_witness(n, p, s, q, target, limit):
    """First element b (in canonical rank order) with N(b) == target, else None.

    Scans ranks 1 .. limit (rank 0 is the zero element).
    """
    size = p ** n
    stop = min(limit, size - 1)
    b = [0] * n
    for _ in range(stop):
        # increment little-endian counter
        i = 0
        while True:
            b[i] += 1
            if b[i] < p:
                break
            b[i] = 0
            i += 1
        nb = ext_norm(b, n, p, s, q)
        if nb[0] == target and not any(nb[1:]):
            return list(b)
    return None


def ext_norm_image(n, p, s, q, cap):
    """Set of all norm values over the ring, which must have at most cap elements."""
    size = p ** n
    if size > cap:
        raise ValueError("ring too large for norm-image enumeration")
    b = [0] * n
    image = {0}  # norm(0) = 0
    for _ in range(size - 1):
        i = 0
        while True:
            b[i] += 1
            if b[i] < p:
                break
            b[i] = 0
            i += 1
        nb = ext_norm(b, n, p, s, q)
        if any(nb[1:]):
            raise ArithmeticError("norm left the scalar line")
        image.add(nb[0])
    return image


def ce_mul(u, v, n, p, s, a, qpows):
    """Product in the n^2-dim algebra <h, x | xh = q hx, h^n = s, x^n = a>.

    u, v are flat lists of n*n ints (index i*n + j for h^i x^j); qpows is a
    precomputed table of q^k mod p for k in range(n).
    """
    out = [0] * (n * n)
    for i1 in range(n):
        base1 = i1 * n
        for j1 in range(n):
            c1 = u[base1 + j1]
            if not c1:
                continue
            for i2 in range(n):
                tw = (c1 * qpows[(j1 * i2) % n]) % p
                if not tw:
                    continue
                base2 = i2 * n
                ii = i1 + i2
                if ii >= n:
                    ii -= n
                    tw = (tw * s) % p
                    if not tw:
                        continue
                obase = ii * n
                for j2 in range(n):
                    c2 = v[base2 + j2]
                    if not c2:
                        continue
                    jj = j1 + j2
                    w = tw * c2
                    if jj >= n:
                        jj -= n
                        w *= a
                    out[obase + jj] = (out[obase + jj] + w) % p
    return out
