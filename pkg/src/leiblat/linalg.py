"""Exact matrices and canonical subspaces.

Row-vector convention throughout: elements of F^n are rows and operators act
on the right (v -> v.T), so kernels are left kernels {v : v.M = 0}.  A
Subspace is stored as the unique reduced row-echelon basis, which makes
structural equality of subspaces exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations, product

from .exactfield import Field, Polynomial

DEFAULT_SUBSPACE_BUDGET = 100_000


class BudgetExceededError(Exception):
    """An enumeration would exceed the configured budget."""


class InfiniteFieldError(Exception):
    """An exhaustive enumeration was requested over an infinite field."""


def _rref_rows(field: Field, rows):
    """Reduced row echelon form of a list of rows.

    Returns (nonzero rows as tuples, pivot column list).
    """
    work = [list(r) for r in rows]
    nrows = len(work)
    ncols = len(work[0]) if work else 0
    pivots = []
    r = 0
    p = field.p
    if p is not None:
        for col in range(ncols):
            piv = None
            for k in range(r, nrows):
                if work[k][col]:
                    piv = k
                    break
            if piv is None:
                continue
            work[r], work[piv] = work[piv], work[r]
            inv = pow(work[r][col], -1, p)
            if inv != 1:
                work[r] = [(a * inv) % p for a in work[r]]
            rowr = work[r]
            for k in range(nrows):
                if k != r and work[k][col]:
                    c = work[k][col]
                    work[k] = [(a - c * b) % p for a, b in zip(work[k], rowr)]
            pivots.append(col)
            r += 1
            if r == nrows:
                break
    else:
        for col in range(ncols):
            piv = None
            for k in range(r, nrows):
                if work[k][col] != 0:
                    piv = k
                    break
            if piv is None:
                continue
            work[r], work[piv] = work[piv], work[r]
            inv = field.inv(work[r][col])
            if inv != 1:
                work[r] = [a * inv for a in work[r]]
            rowr = work[r]
            for k in range(nrows):
                if k != r and work[k][col] != 0:
                    c = work[k][col]
                    work[k] = [a - c * b for a, b in zip(work[k], rowr)]
            pivots.append(col)
            r += 1
            if r == nrows:
                break
    return [tuple(row) for row in work[:r]], pivots


@dataclass(frozen=True)
class Matrix:
    field: Field
    entries: tuple  # tuple of row tuples

    @staticmethod
    def from_rows(field: Field, rows) -> "Matrix":
        ent = tuple(tuple(field.scalar(a) for a in row) for row in rows)
        if ent and any(len(r) != len(ent[0]) for r in ent):
            raise ValueError("ragged matrix")
        return Matrix(field, ent)

    @staticmethod
    def identity(field: Field, n: int) -> "Matrix":
        one, zero = field.one, field.zero
        return Matrix(field, tuple(
            tuple(one if i == j else zero for j in range(n)) for i in range(n)))

    @staticmethod
    def zeros(field: Field, rows: int, cols: int) -> "Matrix":
        z = field.zero
        return Matrix(field, tuple((z,) * cols for _ in range(rows)))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def _check(self, other: "Matrix"):
        if self.field != other.field:
            raise ValueError("matrices over different fields")

    def add(self, other: "Matrix") -> "Matrix":
        self._check(other)
        f = self.field
        return Matrix(f, tuple(
            tuple(f.add(a, b) for a, b in zip(ra, rb))
            for ra, rb in zip(self.entries, other.entries)))

    def sub(self, other: "Matrix") -> "Matrix":
        self._check(other)
        f = self.field
        return Matrix(f, tuple(
            tuple(f.sub(a, b) for a, b in zip(ra, rb))
            for ra, rb in zip(self.entries, other.entries)))

    def scale(self, c) -> "Matrix":
        f = self.field
        c = f.scalar(c)
        return Matrix(f, tuple(tuple(f.mul(c, a) for a in row) for row in self.entries))

    def mul(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in matrix product")
        f = self.field
        ocols = other.cols
        out = []
        for row in self.entries:
            acc = [f.zero] * ocols
            for a, orow in zip(row, other.entries):
                if a == 0:
                    continue
                for j, b in enumerate(orow):
                    if b != 0:
                        acc[j] = f.add(acc[j], f.mul(a, b))
            out.append(tuple(acc))
        return Matrix(f, tuple(out))

    def transpose(self) -> "Matrix":
        return Matrix(self.field, tuple(zip(*self.entries)) if self.entries else ())

    def row_apply(self, vec):
        """Row vector times matrix: returns vec . self."""
        f = self.field
        out = [f.zero] * self.cols
        for a, row in zip(vec, self.entries):
            if a == 0:
                continue
            for j, b in enumerate(row):
                if b != 0:
                    out[j] = f.add(out[j], f.mul(a, b))
        return tuple(out)


def rref(m: Matrix) -> Matrix:
    """Unique reduced row-echelon form, zero rows retained."""
    rows, _ = _rref_rows(m.field, m.entries)
    pad = [tuple([m.field.zero] * m.cols)] * (m.rows - len(rows))
    return Matrix(m.field, tuple(rows) + tuple(pad))


def matrix_poly(poly: Polynomial, m: Matrix) -> Matrix:
    """Evaluate a polynomial at a square matrix (Horner)."""
    if m.rows != m.cols:
        raise ValueError("polynomial of a non-square matrix")
    n = m.rows
    acc = Matrix.zeros(m.field, n, n)
    ident = Matrix.identity(m.field, n)
    for c in reversed(poly.coeffs):
        acc = acc.mul(m)
        if c != 0:
            acc = acc.add(ident.scale(c))
    return acc


def char_poly(m: Matrix) -> Polynomial:
    """Characteristic polynomial det(xI - M), by Hessenberg reduction.

    Uses only field divisions, so it is valid in any characteristic.
    """
    if m.rows != m.cols:
        raise ValueError("characteristic polynomial of a non-square matrix")
    f = m.field
    n = m.rows
    h = [list(row) for row in m.entries]
    for col in range(n - 2):
        piv = None
        for k in range(col + 1, n):
            if h[k][col] != 0:
                piv = k
                break
        if piv is None:
            continue
        if piv != col + 1:
            h[col + 1], h[piv] = h[piv], h[col + 1]
            for row in h:
                row[col + 1], row[piv] = row[piv], row[col + 1]
        base = h[col + 1][col]
        for r in range(col + 2, n):
            if h[r][col] == 0:
                continue
            c = f.div(h[r][col], base)
            h[r] = [f.sub(a, f.mul(c, b)) for a, b in zip(h[r], h[col + 1])]
            for row in h:
                row[col + 1] = f.add(row[col + 1], f.mul(c, row[r]))
    x = Polynomial.x(f)
    polys = [Polynomial.one(f)]
    for mm in range(1, n + 1):
        term = (x - Polynomial.constant(f, h[mm - 1][mm - 1])) * polys[mm - 1]
        prod = f.one
        for i in range(mm - 1, 0, -1):
            prod = f.mul(prod, h[i][i - 1])
            coeff = f.mul(h[i - 1][mm - 1], prod)
            if coeff != 0:
                term = term - polys[i - 1].scale(coeff)
        polys.append(term)
    return polys[n]


# ---------------------------------------------------------------------------
# subspaces
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Subspace:
    """A subspace of F^n held as its unique reduced-echelon basis."""

    field: Field
    ambient: int
    rows: tuple = ()
    pivots: tuple = ()

    @staticmethod
    def from_vectors(field: Field, ambient: int, vectors) -> "Subspace":
        vecs = [tuple(field.scalar(a) for a in v) for v in vectors]
        for v in vecs:
            if len(v) != ambient:
                raise ValueError("vector length does not match ambient dimension")
        rows, pivots = _rref_rows(field, vecs)
        return Subspace(field, ambient, tuple(rows), tuple(pivots))

    @staticmethod
    def zero(field: Field, ambient: int) -> "Subspace":
        return Subspace(field, ambient)

    @staticmethod
    def full(field: Field, ambient: int) -> "Subspace":
        one, z = field.one, field.zero
        rows = tuple(tuple(one if i == j else z for j in range(ambient))
                     for i in range(ambient))
        return Subspace(field, ambient, rows, tuple(range(ambient)))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def _check(self, other: "Subspace"):
        if self.field != other.field or self.ambient != other.ambient:
            raise ValueError("subspaces with mismatched ambient space")

    def reduce(self, vec):
        """Residue of a vector after elimination against the basis."""
        p = self.field.p
        v = list(vec)
        if p is not None:
            for row, pc in zip(self.rows, self.pivots):
                c = v[pc]
                if c:
                    v = [(a - c * b) % p for a, b in zip(v, row)]
        else:
            f = self.field
            for row, pc in zip(self.rows, self.pivots):
                c = v[pc]
                if c != 0:
                    v = [f.sub(a, f.mul(c, b)) for a, b in zip(v, row)]
        return tuple(v)

    def contains_vector(self, vec) -> bool:
        return all(a == 0 for a in self.reduce(vec))

    def contains(self, other: "Subspace") -> bool:
        self._check(other)
        if other.dim > self.dim:
            return False
        return all(self.contains_vector(r) for r in other.rows)

    def sum(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.from_vectors(self.field, self.ambient,
                                     list(self.rows) + list(other.rows))

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if not self.rows or not other.rows:
            return Subspace.zero(self.field, self.ambient)
        stacked = Matrix(self.field, self.rows + other.rows)
        rel = kernel(stacked)
        f = self.field
        k = self.dim
        vecs = []
        for w in rel.rows:
            acc = [f.zero] * self.ambient
            for c, row in zip(w[:k], self.rows):
                if c != 0:
                    for j, b in enumerate(row):
                        if b != 0:
                            acc[j] = f.add(acc[j], f.mul(c, b))
            vecs.append(acc)
        return Subspace.from_vectors(f, self.ambient, vecs)

    def vectors(self):
        """All vectors of the subspace (finite fields only)."""
        if not self.field.is_finite:
            raise InfiniteFieldError("cannot enumerate vectors over an infinite field")
        f = self.field
        if not self.rows:
            yield tuple([f.zero] * self.ambient)
            return
        for coeffs in product(f.elements(), repeat=self.dim):
            acc = [f.zero] * self.ambient
            for c, row in zip(coeffs, self.rows):
                if c:
                    for j, b in enumerate(row):
                        if b:
                            acc[j] = (acc[j] + c * b) % f.p
            yield tuple(acc)

    def __str__(self) -> str:
        return "span{" + "; ".join(",".join(map(str, r)) for r in self.rows) + "}"


def kernel(m: Matrix) -> Subspace:
    """Left kernel {v : v.M = 0}, as a canonical subspace of F^rows."""
    f = m.field
    nv = m.rows
    mt = [[m.entries[r][c] for r in range(nv)] for c in range(m.cols)]
    rrows, pivots = _rref_rows(f, mt)
    pivset = set(pivots)
    basis = []
    for fc in range(nv):
        if fc in pivset:
            continue
        v = [f.zero] * nv
        v[fc] = f.one
        for i, pc in enumerate(pivots):
            if rrows[i][fc] != 0:
                v[pc] = f.neg(rrows[i][fc])
        basis.append(v)
    return Subspace.from_vectors(f, nv, basis)


# ---------------------------------------------------------------------------
# exhaustive enumeration
# ---------------------------------------------------------------------------

def gaussian_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def subspace_count(n: int, q: int) -> int:
    return sum(gaussian_binomial(n, k, q) for k in range(n + 1))


def enumerate_subspaces(field: Field, ambient: int,
                        budget: int = DEFAULT_SUBSPACE_BUDGET):
    """Yield every subspace of F^ambient exactly once, in canonical form.

    Subspaces are generated directly as reduced-echelon patterns (pivot
    column subsets times free entries), ordered by dimension then pattern.
    """
    if not field.is_finite:
        raise InfiniteFieldError("subspace enumeration requires a finite field")
    total = subspace_count(ambient, field.p)
    if total > budget:
        raise BudgetExceededError(
            f"{total} subspaces of GF({field.p})^{ambient} exceed budget {budget}")
    yield Subspace.zero(field, ambient)
    elems = list(field.elements())
    one, z = field.one, field.zero
    for k in range(1, ambient + 1):
        for pivots in combinations(range(ambient), k):
            pivset = set(pivots)
            free = [(i, j) for i in range(k)
                    for j in range(pivots[i] + 1, ambient) if j not in pivset]
            for assignment in product(elems, repeat=len(free)):
                rows = [[z] * ambient for _ in range(k)]
                for i, pc in enumerate(pivots):
                    rows[i][pc] = one
                for (i, j), val in zip(free, assignment):
                    rows[i][j] = val
                yield Subspace(field, ambient, tuple(tuple(r) for r in rows),
                               tuple(pivots))


def all_vectors(field: Field, ambient: int, budget: int = DEFAULT_SUBSPACE_BUDGET):
    """All of F^ambient in lexicographic coordinate order."""
    if not field.is_finite:
        raise InfiniteFieldError("vector enumeration requires a finite field")
    if field.p ** ambient > budget:
        raise BudgetExceededError(
            f"{field.p ** ambient} vectors exceed budget {budget}")
    return product(field.elements(), repeat=ambient)


def normalized_vectors(field: Field, ambient: int,
                       budget: int = DEFAULT_SUBSPACE_BUDGET):
    """One representative per line of F^ambient: first nonzero entry is 1."""
    for v in all_vectors(field, ambient, budget):
        lead = next((a for a in v if a), None)
        if lead == 1:
            yield v
