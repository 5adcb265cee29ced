"""Square matrices over a field or an extension ring.

The ring argument is any context providing add/sub/mul/neg/inv/eq/zero/one;
that covers Field instances and ExtensionRing.  Matrices over extension rings
additionally support the entrywise twist, the twisted norm product, and
twisted conjugation.
"""

from .errors import DimensionMismatch, Singular
from .extension import ExtensionRing
from . import linalg


class Matrix:
    __slots__ = ("ring", "d", "rows")

    def __init__(self, ring, rows):
        self.ring = ring
        self.rows = [list(r) for r in rows]
        self.d = len(self.rows)
        for r in self.rows:
            if len(r) != self.d:
                raise DimensionMismatch("matrices here are square")

    @staticmethod
    def identity(ring, d):
        return Matrix(
            ring,
            [[ring.one() if i == j else ring.zero() for j in range(d)] for i in range(d)],
        )

    @staticmethod
    def zeros(ring, d):
        return Matrix(ring, [[ring.zero()] * d for _ in range(d)])

    @staticmethod
    def scalar(ring, d, c):
        m = Matrix.zeros(ring, d)
        for i in range(d):
            m.rows[i][i] = c
        return m

    def copy(self):
        return Matrix(self.ring, self.rows)

    def _same(self, other):
        if self.ring != other.ring or self.d != other.d:
            raise DimensionMismatch("incompatible matrices")

    def __add__(self, other):
        self._same(other)
        R = self.ring
        return Matrix(
            R,
            [
                [R.add(a, b) for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.rows, other.rows)
            ],
        )

    def __sub__(self, other):
        self._same(other)
        R = self.ring
        return Matrix(
            R,
            [
                [R.sub(a, b) for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.rows, other.rows)
            ],
        )

    def __mul__(self, other):
        self._same(other)
        R = self.ring
        d = self.d
        out = [[R.zero()] * d for _ in range(d)]
        for i in range(d):
            for k in range(d):
                a = self.rows[i][k]
                if R.is_zero(a):
                    continue
                for j in range(d):
                    out[i][j] = R.add(out[i][j], R.mul(a, other.rows[k][j]))
        return Matrix(R, out)

    def smul(self, c):
        R = self.ring
        return Matrix(R, [[R.mul(c, v) for v in r] for r in self.rows])

    def __eq__(self, other):
        if not isinstance(other, Matrix) or self.d != other.d:
            return False
        R = self.ring
        return all(
            R.eq(a, b) for r1, r2 in zip(self.rows, other.rows) for a, b in zip(r1, r2)
        )

    def __hash__(self):
        raise TypeError("matrices are not hashable")

    def is_zero(self):
        R = self.ring
        return all(R.eq(v, R.zero()) for r in self.rows for v in r)

    def pow(self, e):
        acc = Matrix.identity(self.ring, self.d)
        base = self
        while e > 0:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    def det(self):
        """Determinant; Laplace expansion (rings stay small here)."""
        R = self.ring
        d = self.d
        if d == 1:
            return self.rows[0][0]

        def expand(rows, cols):
            if len(cols) == 1:
                return self.rows[rows[0]][cols[0]]
            acc = R.zero()
            r0 = rows[0]
            sign = True
            for idx, c in enumerate(cols):
                a = self.rows[r0][c]
                if not R.eq(a, R.zero()):
                    sub = expand(rows[1:], cols[:idx] + cols[idx + 1 :])
                    term = R.mul(a, sub)
                    acc = R.add(acc, term) if sign else R.sub(acc, term)
                sign = not sign
            return acc

        return expand(tuple(range(d)), tuple(range(d)))

    def inv(self):
        R = self.ring
        if isinstance(R, ExtensionRing):
            return self._inv_adjugate()
        try:
            return Matrix(R, linalg.invert(R, self.rows))
        except Singular:
            raise Singular("matrix not invertible") from None

    def _inv_adjugate(self):
        R = self.ring
        d = self.d
        det = self.det()
        try:
            det_inv = R.inv(det)
        except Exception as exc:
            raise Singular("matrix not invertible over the ring") from exc
        if d == 1:
            return Matrix(R, [[det_inv]])
        cof = [[R.zero()] * d for _ in range(d)]
        idx = list(range(d))
        for i in range(d):
            for j in range(d):
                rows = idx[:i] + idx[i + 1 :]
                cols = idx[:j] + idx[j + 1 :]
                sub = Matrix(R, [[self.rows[r][c] for c in cols] for r in rows])
                m = sub.det()
                if (i + j) % 2:
                    m = R.neg(m)
                cof[j][i] = R.mul(m, det_inv)
        return Matrix(R, cof)

    def sigma(self, k=1):
        """Entrywise twist (extension-ring matrices only)."""
        R = self.ring
        return Matrix(R, [[R.sigma_power(v, k) for v in r] for r in self.rows])

    def kron(self, other):
        R = self.ring
        d1, d2 = self.d, other.d
        out = [[R.zero()] * (d1 * d2) for _ in range(d1 * d2)]
        for i in range(d1):
            for j in range(d1):
                for k in range(d2):
                    for l in range(d2):
                        out[i * d2 + k][j * d2 + l] = R.mul(
                            self.rows[i][j], other.rows[k][l]
                        )
        return Matrix(R, out)


def matrix_sigma_norm(Y, i):
    """The twisted i-fold product Y^(sigma^(i-1)) ... Y^sigma Y."""
    acc = Y
    for k in range(1, i):
        acc = Y.sigma(k) * acc
    return acc


def sigma_conjugate(lam, Y):
    """Lambda^sigma Y Lambda^(-1)."""
    return lam.sigma(1) * Y * lam.inv()


def mat_arith(A, B, op):
    """Dispatch the spec operation set (CLI/test surface)."""
    if op == "add":
        return A + B
    if op == "mul":
        return A * B
    if op == "det":
        return A.det()
    if op == "inv":
        return A.inv()
    if op == "kron":
        return A.kron(B)
    if op == "solve_linear":
        return linalg.nullspace(A.ring, A.rows)
    raise ValueError(f"unknown matrix operation {op!r}")
