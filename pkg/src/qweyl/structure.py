"""Finite-dimensional associative algebras by structure constants.

Elements are dense coefficient lists over the base field.  The table is kept
sparse per basis pair, which keeps monomial algebras (the common case here)
cheap.  Construction verifies the unit axioms on every basis element and
associativity on all basis triples up to dimension 64, sampled above.

Also hosts the two matrix-algebra recognition procedures: matrix units from a
full set of orthogonal idempotents (via one-dimensional corners), and the
nilpotent-of-maximal-index criterion (via the unipotent reading when it
applies, else the minimal left ideal generated by the top power).
"""

import random

from . import linalg
from .errors import (
    CornerNotOneDimensional,
    DimensionMismatch,
    HypothesisFailed,
    NotOrthogonal,
)

ASSOC_FULL_CHECK_BOUND = 64


class StructureAlgebra:
    def __init__(self, field, labels, table, unit, check=True, seed=0):
        self.field = field
        self.labels = list(labels)
        self.dim = len(self.labels)
        self.table = table  # dict (i, j) -> list of (k, coeff)
        self.unit = list(unit)
        if check:
            self._check_unit()
            self._check_associativity(seed)

    # --- element helpers

    def zero_vec(self):
        return [self.field.zero()] * self.dim

    def basis_vector(self, i):
        v = self.zero_vec()
        v[i] = self.field.one()
        return v

    def basis_vectors(self):
        for i in range(self.dim):
            yield self.basis_vector(i)

    def is_zero(self, u):
        return all(self.field.is_zero(c) for c in u)

    def eq(self, u, v):
        return all(self.field.eq(a, b) for a, b in zip(u, v))

    def add(self, u, v):
        F = self.field
        return [F.add(a, b) for a, b in zip(u, v)]

    def sub(self, u, v):
        F = self.field
        return [F.sub(a, b) for a, b in zip(u, v)]

    def smul(self, c, u):
        F = self.field
        return [F.mul(c, a) for a in u]

    def mul(self, u, v):
        F = self.field
        out = self.zero_vec()
        for i, ci in enumerate(u):
            if F.is_zero(ci):
                continue
            for j, cj in enumerate(v):
                if F.is_zero(cj):
                    continue
                c = F.mul(ci, cj)
                for k, w in self.table.get((i, j), ()):
                    out[k] = F.add(out[k], F.mul(c, w))
        return out

    def pow(self, u, e):
        acc = list(self.unit)
        for _ in range(e):
            acc = self.mul(acc, u)
        return acc

    # --- construction checks

    def _pair(self, i, j):
        out = self.zero_vec()
        for k, w in self.table.get((i, j), ()):
            out[k] = self.field.add(out[k], w)
        return out

    def _check_unit(self):
        for i in range(self.dim):
            b = self.basis_vector(i)
            if not self.eq(self.mul(self.unit, b), b) or not self.eq(
                self.mul(b, self.unit), b
            ):
                raise DimensionMismatch("unit axiom fails on a basis element")

    def _check_associativity(self, seed):
        n = self.dim
        if n <= ASSOC_FULL_CHECK_BOUND:
            triples = (
                (i, j, k) for i in range(n) for j in range(n) for k in range(n)
            )
        else:
            rng = random.Random(seed)
            triples = (
                (rng.randrange(n), rng.randrange(n), rng.randrange(n))
                for _ in range(4 * n)
            )
        for i, j, k in triples:
            lhs = self.mul(self._pair(i, j), self.basis_vector(k))
            rhs = self.mul(self.basis_vector(i), self._pair(j, k))
            if not self.eq(lhs, rhs):
                raise DimensionMismatch(
                    f"structure constants not associative at triple {(i, j, k)}"
                )

    # --- linear structure

    def left_mul_matrix(self, u):
        """Matrix of v -> u*v in the basis, rows indexed by output coordinate."""
        cols = [self.mul(u, b) for b in self.basis_vectors()]
        return [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]

    def left_ideal_dim(self, u):
        rows = [self.mul(b, u) for b in self.basis_vectors()]
        return linalg.rank(self.field, rows)

    def centre(self):
        """Basis of the centre, by solving the centralizer system."""
        rows = []
        for b in self.basis_vectors():
            # commutator with b as a linear map of the unknown element
            cols = []
            for c in self.basis_vectors():
                cols.append(self.sub(self.mul(c, b), self.mul(b, c)))
            for i in range(self.dim):
                rows.append([cols[j][i] for j in range(self.dim)])
        return linalg.nullspace(self.field, rows)

    def to_text(self, u):
        F = self.field
        parts = []
        for i, c in enumerate(u):
            if not F.is_zero(c):
                parts.append(f"{F.to_str(c)}*{self.labels[i]}")
        return " + ".join(parts) if parts else "0"


def matrix_units_from_idempotents(alg, idempotents):
    """Matrix units E_ij from n orthogonal idempotents summing to 1.

    Follows the corner construction: each corner e_i A e_j is one-dimensional,
    E_0i and E_i0 are chosen in the (0,i) and (i,0) corners normalized by
    E_0i E_i0 = e_0, and E_ij = E_i0 E_0j.  Returns the n x n table (list of
    lists of algebra elements).
    """
    n = len(idempotents)
    F = alg.field
    total = idempotents[0]
    for e in idempotents[1:]:
        total = alg.add(total, e)
    if not alg.eq(total, alg.unit):
        raise NotOrthogonal("idempotents do not sum to 1")
    for i, ei in enumerate(idempotents):
        if alg.is_zero(ei):
            raise NotOrthogonal("zero idempotent in the family")
        for j, ej in enumerate(idempotents):
            prod = alg.mul(ei, ej)
            want = ei if i == j else None
            if i == j:
                if not alg.eq(prod, ei):
                    raise NotOrthogonal(f"e_{i} is not idempotent")
            elif not alg.is_zero(prod):
                raise NotOrthogonal(f"e_{i} e_{j} != 0")
    if alg.dim != n * n:
        raise DimensionMismatch(
            f"algebra dimension {alg.dim} is not {n}^2; degree hypothesis fails"
        )

    e0 = idempotents[0]

    def corner_element(i, j):
        # first nonzero e_i b e_j over basis candidates, in canonical order
        for b in alg.basis_vectors():
            cand = alg.mul(idempotents[i], alg.mul(b, idempotents[j]))
            if not alg.is_zero(cand):
                return cand
        raise CornerNotOneDimensional(f"corner ({i},{j}) is zero")

    def scalar_of(u, v):
        # u = c*v with v != 0; returns c or raises
        idx = next(k for k, val in enumerate(v) if not F.is_zero(val))
        c = F.div(u[idx], v[idx])
        if not alg.eq(u, alg.smul(c, v)):
            raise CornerNotOneDimensional("corner product not collinear with e_0")
        return c

    row0 = [e0]
    col0 = [e0]
    for i in range(1, n):
        u = corner_element(0, i)
        v = corner_element(i, 0)
        c = scalar_of(alg.mul(u, v), e0)
        if F.is_zero(c):
            raise CornerNotOneDimensional(f"corner pair ({i}) multiplies to 0")
        row0.append(u)
        col0.append(alg.smul(F.inv(c), v))
    units = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == 0:
                units[0][j] = row0[j]
            elif j == 0:
                units[i][0] = col0[i]
            else:
                units[i][j] = alg.mul(col0[i], row0[j])
    units[0][0] = e0
    return units


def verify_matrix_units(alg, units, sample=None, seed=0):
    """Check E_ij E_kl = delta_jk E_il; full table or a seeded sample.

    Returns the number of relations checked.
    """
    n = len(units)
    quads = [
        (i, j, k, l)
        for i in range(n)
        for j in range(n)
        for k in range(n)
        for l in range(n)
    ]
    if sample is not None and sample < len(quads):
        rng = random.Random(seed)
        quads = rng.sample(quads, sample)
    for i, j, k, l in quads:
        prod = alg.mul(units[i][j], units[k][l])
        if j == k:
            ok = alg.eq(prod, units[i][l])
        else:
            ok = alg.is_zero(prod)
        if not ok:
            raise CornerNotOneDimensional(
                f"matrix-unit relation failed at {(i, j, k, l)}"
            )
    return len(quads)


def idempotents_from_unit_of_order_n(alg, u, n, zeta):
    """Fourier idempotents (1/n) sum_j zeta^(-kj) u^j of a unit with u^n = 1."""
    F = alg.field
    ninv = F.inv(F.from_int(n))
    powers = [alg.unit]
    for _ in range(n - 1):
        powers.append(alg.mul(powers[-1], u))
    out = []
    for k in range(n):
        acc = alg.zero_vec()
        for j in range(n):
            c = F.pow(zeta, (-k * j) % n)
            acc = alg.add(acc, alg.smul(c, powers[j]))
        out.append(alg.smul(ninv, acc))
    return out


def nilpotent_matrix_criterion(alg, a, n, zeta=None):
    """Matrix units for alg ~ M_n(F) from a nilpotent a with a^n = 0 != a^(n-1).

    Tries the unipotent reading first: if u = 1 + a has u^n = 1, its Fourier
    idempotents feed the corner construction.  Otherwise the minimal left
    ideal A*a^(n-1) (dimension n) carries a faithful representation and the
    standard units pull back through it.
    """
    F = alg.field
    powers = [list(a)]
    for _ in range(n - 1):
        powers.append(alg.mul(powers[-1], a))
    if not alg.is_zero(powers[n - 1]):
        raise HypothesisFailed("a^n != 0")
    if alg.is_zero(powers[n - 2]) if n >= 2 else alg.is_zero(a):
        raise HypothesisFailed("a^(n-1) = 0")

    u = alg.add(alg.unit, a)
    un = alg.unit
    for _ in range(n):
        un = alg.mul(un, u)
    if alg.eq(un, alg.unit) and zeta is not None:
        idems = idempotents_from_unit_of_order_n(alg, u, n, zeta)
        if all(not alg.is_zero(e) for e in idems):
            return matrix_units_from_idempotents(alg, idems)

    top = powers[n - 2]  # a^(n-1)
    return units_from_left_ideal(alg, top, n)


def units_from_left_ideal(alg, gen, n):
    """Pull standard matrix units back through the representation on A*gen.

    A*gen must be n-dimensional (a minimal left ideal of a split algebra of
    degree n); the left action of A on it yields an isomorphism onto M_n(F)
    whose inverse carries the standard units.
    """
    F = alg.field
    rows = [alg.mul(b, gen) for b in alg.basis_vectors()]
    red, pivots = linalg.rref(F, rows)
    if len(pivots) != n:
        raise HypothesisFailed(
            f"left ideal has dimension {len(pivots)}, expected {n}"
        )
    basis = [red[r] for r in range(n)]

    def coords(vec):
        # express vec in the rref basis of the ideal
        out = [vec[c] for c in pivots]
        # verify membership
        probe = list(vec)
        for c_val, brow in zip(out, basis):
            probe = [F.sub(pv, F.mul(c_val, bv)) for pv, bv in zip(probe, brow)]
        if any(not F.is_zero(v) for v in probe):
            raise HypothesisFailed("left ideal is not invariant")
        return out

    # representation matrices of all basis elements of the algebra
    rep_cols = []
    for b in alg.basis_vectors():
        mats = [coords(alg.mul(b, v)) for v in basis]
        # column-major flatten of the operator matrix (action on the right
        # coordinates: row index = input basis vector, col = output coord)
        flat = [mats[i][j] for j in range(n) for i in range(n)]
        rep_cols.append(flat)
    # invert the coordinate map: solve rep(x) = E_ij for each standard unit
    big = [[rep_cols[b][e] for b in range(alg.dim)] for e in range(n * n)]
    units = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            target = [F.zero()] * (n * n)
            # E_ij maps ideal basis vector j to vector i: operator entry
            # (out=i, in=j), flat position i*n + j in the row-major flatten
            target[i * n + j] = F.one()
            sol = linalg.solve(F, big, target)
            if sol is None:
                raise HypothesisFailed("representation is not surjective")
            units[i][j] = sol
    return units
