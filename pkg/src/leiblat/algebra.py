"""Leibniz algebras given by structure constants.

The defining identity used everywhere is the right version: every right
multiplication x -> [x, a] is a derivation, equivalently
[x, [y, z]] = [[x, y], z] - [[x, z], y] on all triples.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .exactfield import Field, rational_roots
from .linalg import (
    Matrix,
    Subspace,
    char_poly,
    kernel,
    normalized_vectors,
)


class InvalidAlgebraError(Exception):
    """Operation requires a table satisfying the Leibniz identity."""

    def __init__(self, violation):
        self.violation = violation
        super().__init__(f"table violates the Leibniz identity: {violation}")


class NotAnIdealError(Exception):
    """Quotient requested by a subspace that is not an ideal."""

    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"not an ideal: product escapes the subspace ({witness})")


@dataclass(frozen=True)
class IdentityViolation:
    """Basis triple where [x,[y,z]] != [[x,y],z] - [[x,z],y]."""

    i: int
    j: int
    k: int
    lhs: tuple
    rhs: tuple

    def __str__(self):
        return (f"triple (e{self.i + 1}, e{self.j + 1}, e{self.k + 1}): "
                f"lhs={list(self.lhs)} rhs={list(self.rhs)}")


@dataclass
class InvariantsReport:
    leibniz_kernel: Subspace
    center: Subspace
    lower_central: tuple
    derived: tuple
    nilpotent: bool
    nilpotency_class: int | None
    solvable: bool
    is_lie: bool
    supersolvable: str  # "true" | "false" | "unknown"
    flag: tuple | None


@dataclass(frozen=True)
class LeibnizAlgebra:
    field: Field
    dim: int
    table: tuple  # table[i][j] = coordinate tuple of [e_i, e_j]
    basis_names: tuple

    # -- construction ---------------------------------------------------

    @staticmethod
    def from_table(field: Field, table, basis_names=None) -> "LeibnizAlgebra":
        tab = tuple(
            tuple(tuple(field.scalar(c) for c in row) for row in trow)
            for trow in table
        )
        n = len(tab)
        for trow in tab:
            if len(trow) != n or any(len(row) != n for row in trow):
                raise ValueError("structure tensor must be n x n x n")
        if basis_names is None:
            basis_names = tuple(f"e{i + 1}" for i in range(n))
        return LeibnizAlgebra(field, n, tab, tuple(basis_names))

    @staticmethod
    def from_products(field: Field, dim: int, products, basis_names=None
                      ) -> "LeibnizAlgebra":
        """Build from a sparse {(i, j): {k: coeff}} product map."""
        z = field.zero
        table = [[[z] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j), out in products.items():
            for k, c in out.items():
                table[i][j][k] = field.scalar(c)
        return LeibnizAlgebra.from_table(field, table, basis_names)

    @staticmethod
    def abelian(field: Field, dim: int) -> "LeibnizAlgebra":
        return LeibnizAlgebra.from_products(field, dim, {})

    # -- products ---------------------------------------------------------

    @cached_property
    def _sparse(self):
        return tuple(
            tuple(tuple((k, c) for k, c in enumerate(row) if c != 0) for row in trow)
            for trow in self.table
        )

    def bracket(self, x, y):
        """[x, y] by bilinear expansion over the table."""
        f = self.field
        n = self.dim
        out = [f.zero] * n
        sparse = self._sparse
        p = f.p
        if p is not None:
            for i, xi in enumerate(x):
                if xi:
                    srow = sparse[i]
                    for j, yj in enumerate(y):
                        if yj and srow[j]:
                            c = xi * yj
                            for k, ck in srow[j]:
                                out[k] = (out[k] + c * ck) % p
        else:
            for i, xi in enumerate(x):
                if xi != 0:
                    srow = sparse[i]
                    for j, yj in enumerate(y):
                        if yj != 0 and srow[j]:
                            c = xi * yj
                            for k, ck in srow[j]:
                                out[k] = out[k] + c * ck
        return tuple(out)

    def _bracket_basis_vec(self, i: int, y):
        """[e_i, y]."""
        f = self.field
        out = [f.zero] * self.dim
        for j, yj in enumerate(y):
            if yj != 0:
                for k, ck in self._sparse[i][j]:
                    out[k] = f.add(out[k], f.mul(yj, ck))
        return tuple(out)

    def _bracket_vec_basis(self, x, j: int):
        """[x, e_j]."""
        f = self.field
        out = [f.zero] * self.dim
        for i, xi in enumerate(x):
            if xi != 0:
                for k, ck in self._sparse[i][j]:
                    out[k] = f.add(out[k], f.mul(xi, ck))
        return tuple(out)

    def basis_vector(self, i: int):
        f = self.field
        return tuple(f.one if j == i else f.zero for j in range(self.dim))

    def square(self, x):
        return self.bracket(x, x)

    def right_mult(self, x) -> Matrix:
        """Matrix of y -> [y, x] in the row convention."""
        return Matrix(self.field, tuple(
            self._bracket_basis_vec(i, x) for i in range(self.dim)))

    def left_mult(self, x) -> Matrix:
        return Matrix(self.field, tuple(
            self._bracket_vec_basis(x, j) for j in range(self.dim)))

    # -- validation -------------------------------------------------------

    @cached_property
    def identity_violation(self):
        """First basis triple violating the Leibniz identity, if any."""
        f = self.field
        n = self.dim
        tab = self.table
        for i in range(n):
            for j in range(n):
                tij = tab[i][j]
                for k in range(n):
                    lhs = self._bracket_basis_vec(i, tab[j][k])
                    a = self._bracket_vec_basis(tij, k)
                    b = self._bracket_vec_basis(tab[i][k], j)
                    rhs = tuple(f.sub(x, y) for x, y in zip(a, b))
                    if lhs != rhs:
                        return IdentityViolation(i, j, k, lhs, rhs)
        return None

    @property
    def is_valid(self) -> bool:
        return self.identity_violation is None

    def validate(self):
        """None when the identity holds on all basis triples, else a witness."""
        viol = self.identity_violation
        if viol is None:
            # the identity forces [L, Leib(L)] = 0; keep the safety net
            for row in self.leibniz_kernel.rows:
                for i in range(self.dim):
                    if any(c != 0 for c in self._bracket_basis_vec(i, row)):
                        raise AssertionError("[L, Leib(L)] != 0 on a valid table")
        return viol

    def require_valid(self):
        viol = self.identity_violation
        if viol is not None:
            raise InvalidAlgebraError(viol)

    # -- subspace machinery -------------------------------------------------

    def subspace(self, vectors) -> Subspace:
        return Subspace.from_vectors(self.field, self.dim, vectors)

    def zero_subspace(self) -> Subspace:
        return Subspace.zero(self.field, self.dim)

    def full_subspace(self) -> Subspace:
        return Subspace.full(self.field, self.dim)

    def product_space(self, u: Subspace, v: Subspace) -> Subspace:
        """Span of [U, V]."""
        vecs = [self.bracket(a, b) for a in u.rows for b in v.rows]
        return self.subspace(vecs)

    def closure(self, generators) -> Subspace:
        """Smallest bracket-closed subspace containing the generators."""
        self.require_valid()
        cur = (generators if isinstance(generators, Subspace)
               else self.subspace(list(generators)))
        while True:
            fresh = []
            for a in cur.rows:
                for b in cur.rows:
                    w = self.bracket(a, b)
                    if not cur.contains_vector(w):
                        fresh.append(w)
            if not fresh:
                return cur
            cur = self.subspace(list(cur.rows) + fresh)

    def is_subalgebra(self, u: Subspace) -> bool:
        return all(u.contains_vector(self.bracket(a, b))
                   for a in u.rows for b in u.rows)

    def ideal_violation(self, u: Subspace):
        """None if [U,L] + [L,U] lies in U, else a witness product."""
        for a in u.rows:
            for j in range(self.dim):
                w = self._bracket_vec_basis(a, j)
                if not u.contains_vector(w):
                    return {"side": "right", "element": a, "basis_index": j,
                            "product": w}
                w = self._bracket_basis_vec(j, a)
                if not u.contains_vector(w):
                    return {"side": "left", "element": a, "basis_index": j,
                            "product": w}
        return None

    def is_ideal(self, u: Subspace) -> bool:
        return self.ideal_violation(u) is None

    def right_centralizer(self, u: Subspace) -> Subspace:
        """{x : [U, x] = 0}."""
        if u.dim == 0:
            return self.full_subspace()
        rows = []
        for j in range(self.dim):
            entry = []
            for a in u.rows:
                entry.extend(self.bracket(a, self.basis_vector(j)))
            rows.append(tuple(entry))
        return kernel(Matrix(self.field, tuple(rows)))

    # -- derived algebras -----------------------------------------------------

    def opposite(self) -> "LeibnizAlgebra":
        table = tuple(
            tuple(self.table[j][i] for j in range(self.dim)) for i in range(self.dim))
        return LeibnizAlgebra(self.field, self.dim, table, self.basis_names)

    def direct_sum(self, other: "LeibnizAlgebra") -> "LeibnizAlgebra":
        if self.field != other.field:
            raise ValueError("direct sum over mismatched fields")
        n, m = self.dim, other.dim
        z = self.field.zero
        dim = n + m
        table = [[[z] * dim for _ in range(dim)] for _ in range(dim)]
        for i in range(n):
            for j in range(n):
                for k, c in enumerate(self.table[i][j]):
                    table[i][j][k] = c
        for i in range(m):
            for j in range(m):
                for k, c in enumerate(other.table[i][j]):
                    table[n + i][n + j][n + k] = c
        names = tuple(self.basis_names) + tuple(f"{s}'" for s in other.basis_names)
        return LeibnizAlgebra.from_table(self.field, table, names)

    def quotient(self, ideal: Subspace) -> "QuotientMap":
        self.require_valid()
        witness = self.ideal_violation(ideal)
        if witness is not None:
            raise NotAnIdealError(witness)
        pivset = set(ideal.pivots)
        reps = tuple(i for i in range(self.dim) if i not in pivset)
        m = len(reps)
        z = self.field.zero
        table = [[[z] * m for _ in range(m)] for _ in range(m)]
        for a, ia in enumerate(reps):
            for b, ib in enumerate(reps):
                w = ideal.reduce(self.table[ia][ib])
                table[a][b] = [w[r] for r in reps]
        names = tuple(self.basis_names[i] + "~" for i in reps)
        quot = LeibnizAlgebra.from_table(self.field, table, names)
        return QuotientMap(self, ideal, reps, quot)

    # -- invariants ------------------------------------------------------------

    @cached_property
    def leibniz_kernel(self) -> Subspace:
        """Span of all squares, via polarization of x -> [x, x]."""
        f = self.field
        vecs = [self.table[i][i] for i in range(self.dim)]
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                vecs.append(tuple(f.add(a, b)
                                  for a, b in zip(self.table[i][j], self.table[j][i])))
        return self.subspace(vecs)

    @cached_property
    def center(self) -> Subspace:
        """{x : [x, L] = [L, x] = 0}."""
        if self.dim == 0:
            return self.zero_subspace()
        rows = []
        for i in range(self.dim):
            entry = []
            for j in range(self.dim):
                entry.extend(self.table[i][j])
            for j in range(self.dim):
                entry.extend(self.table[j][i])
            rows.append(tuple(entry))
        return kernel(Matrix(self.field, tuple(rows)))

    @cached_property
    def lower_central_series(self) -> tuple:
        full = self.full_subspace()
        series = [full]
        while series[-1].dim > 0:
            nxt = self.product_space(series[-1], full)
            if nxt.dim == series[-1].dim:
                break
            series.append(nxt)
        return tuple(series)

    @cached_property
    def derived_series(self) -> tuple:
        series = [self.full_subspace()]
        while series[-1].dim > 0:
            cur = series[-1]
            nxt = self.product_space(cur, cur)
            if nxt.dim == cur.dim:
                break
            series.append(nxt)
        return tuple(series)

    @property
    def is_nilpotent(self) -> bool:
        return self.lower_central_series[-1].dim == 0

    @property
    def nilpotency_class(self) -> int | None:
        if not self.is_nilpotent:
            return None
        return len(self.lower_central_series) - 1

    @property
    def is_solvable(self) -> bool:
        return self.derived_series[-1].dim == 0

    @property
    def is_lie(self) -> bool:
        return self.leibniz_kernel.dim == 0

    def _ideal_lines(self):
        """Candidate one-dimensional two-sided ideals.

        Returns (list of spanning vectors, exhaustive flag).  Over a finite
        field the scan is exhaustive.  Over the rationals candidates are the
        common eigenlines of all left/right multiplications; any invariant
        line automatically has rational eigenvalues, so an empty candidate
        set certainly means "no one-dimensional ideal", while unresolved
        higher-dimensional common eigenspaces make the search inexhaustive.
        """
        if self.field.is_finite:
            lines = []
            for v in normalized_vectors(self.field, self.dim):
                span = self.subspace([v])
                if self.ideal_violation(span) is None:
                    lines.append(v)
            return lines, True
        spaces = [self.full_subspace()]
        operators = [self.right_mult(self.basis_vector(i)) for i in range(self.dim)]
        operators += [self.left_mult(self.basis_vector(i)) for i in range(self.dim)]
        ident = Matrix.identity(self.field, self.dim)
        for op in operators:
            evs = rational_roots(char_poly(op))
            new = []
            for w in spaces:
                for lam in evs:
                    eig = kernel(op.sub(ident.scale(lam)))
                    cut = w.intersect(eig)
                    if cut.dim:
                        new.append(cut)
            spaces = new
            if not spaces:
                return [], True
        lines, exhaustive = [], True
        for w in spaces:
            if w.dim == 1:
                lines.append(w.rows[0])
            else:
                exhaustive = False
                lines.extend(w.rows)
        return lines, exhaustive

    def supersolvable(self):
        """Complete flag of ideals of L, 1 dimension per step.

        Returns (status, flag) with status in {"true","false","unknown"};
        the flag is the ideal chain from 0 to L when status is "true".
        Exact over finite fields; three-valued over the rationals.
        """
        self.require_valid()
        key = (self.field, self.table)
        memo = _SUPERSOLVABLE_MEMO
        if key in memo:
            return memo[key]
        if self.dim == 0:
            result = ("true", (self.zero_subspace(),))
            memo[key] = result
            return result
        lines, exhaustive = self._ideal_lines()
        certain = exhaustive
        result = None
        for v in lines:
            span = self.subspace([v])
            qm = self.quotient(span)
            status, subflag = qm.algebra.supersolvable()
            if status == "true":
                flag = (self.zero_subspace(),) + tuple(
                    qm.lift_subspace(s) for s in subflag)
                result = ("true", flag)
                break
            if status == "unknown":
                certain = False
        if result is None:
            result = ("false", None) if certain else ("unknown", None)
        memo[key] = result
        return result

    def invariants(self) -> InvariantsReport:
        self.require_valid()
        status, flag = self.supersolvable()
        return InvariantsReport(
            leibniz_kernel=self.leibniz_kernel,
            center=self.center,
            lower_central=self.lower_central_series,
            derived=self.derived_series,
            nilpotent=self.is_nilpotent,
            nilpotency_class=self.nilpotency_class,
            solvable=self.is_solvable,
            is_lie=self.is_lie,
            supersolvable=status,
            flag=flag,
        )

    def __str__(self):
        return f"LeibnizAlgebra(dim={self.dim}, {self.field})"


_SUPERSOLVABLE_MEMO: dict = {}


@dataclass(frozen=True)
class QuotientMap:
    """L -> L/I with deterministic coset representatives.

    Representatives are the non-pivot coordinates of the ideal's echelon
    basis, so quotient tables are reproducible.
    """

    parent: LeibnizAlgebra
    ideal: Subspace
    reps: tuple
    algebra: LeibnizAlgebra

    def project(self, vec):
        w = self.ideal.reduce(vec)
        return tuple(w[r] for r in self.reps)

    def lift(self, vec):
        z = self.parent.field.zero
        out = [z] * self.parent.dim
        for c, r in zip(vec, self.reps):
            out[r] = c
        return tuple(out)

    def project_subspace(self, u: Subspace) -> Subspace:
        return Subspace.from_vectors(self.parent.field, self.algebra.dim,
                                     [self.project(r) for r in u.rows])

    def lift_subspace(self, s: Subspace) -> Subspace:
        vecs = list(self.ideal.rows) + [self.lift(r) for r in s.rows]
        return Subspace.from_vectors(self.parent.field, self.parent.dim, vecs)
