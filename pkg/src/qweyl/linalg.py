"""Exact linear algebra over field contexts.

Prime fields go through vectorized numpy int64 elimination (all reductions
mod p, exact).  Rational function fields clear denominators row by row and
eliminate fraction-free so intermediate degree growth stays bounded.  Other
fields use plain exact Gaussian elimination.
"""

import numpy as np

from . import _pol
from .errors import Singular
from .fields import PrimeField, RationalFunctionField


def _np_rref(arr, p):
    """Reduced row echelon form mod p; returns (array, pivot column list)."""
    a = arr % p
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            a[[r, pr]] = a[[pr, r]]
        a[r] = (a[r] * pow(int(a[r, c]), -1, p)) % p
        other = np.nonzero(a[:, c])[0]
        other = other[other != r]
        if other.size:
            a[other] = (a[other] - np.outer(a[other, c], a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rref(field, rows):
    """(rref rows, pivot columns).  rows is a list of lists of field values."""
    if not rows:
        return [], []
    if isinstance(field, PrimeField):
        arr = np.array(rows, dtype=np.int64)
        out, pivots = _np_rref(arr, field.p)
        return [[int(v) for v in row] for row in out], pivots
    if isinstance(field, RationalFunctionField):
        return _rref_fraction_free(field, rows)
    return _rref_generic(field, rows)


def _rref_generic(field, rows):
    a = [list(r) for r in rows]
    nrows, ncols = len(a), len(a[0])
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pr = None
        for i in range(r, nrows):
            if not field.is_zero(a[i][c]):
                pr = i
                break
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        inv = field.inv(a[r][c])
        a[r] = [field.mul(inv, v) for v in a[r]]
        for i in range(nrows):
            if i != r and not field.is_zero(a[i][c]):
                f = a[i][c]
                a[i] = [field.sub(a[i][j], field.mul(f, a[r][j])) for j in range(ncols)]
        pivots.append(c)
        r += 1
    return a, pivots


def _rref_fraction_free(field, rows):
    """Clear denominators, eliminate by cross-multiplication, normalize last."""
    inner = field.inner
    a = []
    for row in rows:
        den = [inner.one()]
        for num_c, den_c in row:
            den = _pol.pmul(inner, den, list(den_c))
        cleared = [field.mul(v, (tuple(den), (inner.one(),))) for v in row]
        a.append(cleared)
    nrows, ncols = len(a), len(a[0])
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pr = None
        for i in range(r, nrows):
            if not field.is_zero(a[i][c]):
                pr = i
                break
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        piv = a[r][c]
        for i in range(nrows):
            if i != r and not field.is_zero(a[i][c]):
                f = a[i][c]
                a[i] = [
                    field.sub(field.mul(piv, a[i][j]), field.mul(f, a[r][j]))
                    for j in range(ncols)
                ]
        pivots.append(c)
        r += 1
    # normalize pivot rows to 1 at the end (single division per row)
    for r, c in enumerate(pivots):
        inv = field.inv(a[r][c])
        a[r] = [field.mul(inv, v) for v in a[r]]
    return a, pivots


def rank(field, rows):
    if not rows:
        return 0
    return len(rref(field, rows)[1])


def nullspace(field, rows):
    """Basis of {v : A v = 0} for the matrix with the given rows."""
    if not rows:
        return []
    ncols = len(rows[0])
    red, pivots = rref(field, rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [field.zero()] * ncols
        v[fc] = field.one()
        for r, pc in enumerate(pivots):
            v[pc] = field.neg(red[r][fc])
        basis.append(v)
    return basis


def solve(field, rows, rhs):
    """One solution of A x = b, or None."""
    ncols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(field, aug)
    if ncols in pivots:
        return None
    x = [field.zero()] * ncols
    for r, c in enumerate(pivots):
        x[c] = red[r][ncols]
    return x


def invert(field, rows):
    n = len(rows)
    aug = [list(r) + [field.one() if i == j else field.zero() for j in range(n)] for i, r in enumerate(rows)]
    red, pivots = rref(field, aug)
    if pivots[:n] != list(range(n)):
        raise Singular("matrix not invertible")
    return [row[n:] for row in red[:n]]


def in_span(field, basis_rows, vec):
    """Whether vec lies in the row span of basis_rows."""
    if not basis_rows:
        return all(field.is_zero(v) for v in vec)
    r0 = rank(field, basis_rows)
    return rank(field, basis_rows + [list(vec)]) == r0
