"""Named algebra families, the square-zero set, and test corpora.

Orientation policy: a handful of catalog tables are stated for the left
identity in the literature; constructors here validate against the right
identity and ingest the opposite table when the printed one fails, so every
constructor returns a valid algebra (the printed variants stay available
for the validator itself).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .algebra import LeibnizAlgebra
from .cyclic import CyclicPresentation
from .exactfield import Field
from .linalg import (
    DEFAULT_SUBSPACE_BUDGET,
    BudgetExceededError,
    Matrix,
    Subspace,
    all_vectors,
    kernel,
)


def orientation_fix(algebra: LeibnizAlgebra) -> LeibnizAlgebra:
    """The algebra itself if right-valid, else its (validated) opposite."""
    if algebra.is_valid:
        return algebra
    opp = algebra.opposite()
    if opp.is_valid:
        return opp
    raise ValueError(
        f"table is not Leibniz in either orientation: {algebra.identity_violation}")


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def abelian(field: Field, n: int) -> LeibnizAlgebra:
    return LeibnizAlgebra.abelian(field, n)


def heisenberg(field: Field) -> LeibnizAlgebra:
    """[x, y] = z = -[y, x], everything else zero."""
    return LeibnizAlgebra.from_products(
        field, 3, {(0, 1): {2: 1}, (1, 0): {2: -1}}, ("x", "y", "z"))


def almost_abelian(field: Field, m: int) -> LeibnizAlgebra:
    """Split extension of an m-dimensional abelian ideal A by a line Fx with
    [a, x] = a = -[x, a]: a Lie algebra in which every subspace is a
    subalgebra."""
    products = {}
    for i in range(m):
        products[(i, m)] = {i: 1}
        products[(m, i)] = {i: -1}
    names = tuple(f"a{i + 1}" for i in range(m)) + ("x",)
    return LeibnizAlgebra.from_products(field, m + 1, products, names)


def identity_action_family(field: Field, r: int) -> LeibnizAlgebra:
    """Abelian r-dimensional squares-span extended by a line acting as the
    identity from the right: basis e_1..e_r, v with [e_i, v] = e_i, v^2 = 0
    and all other products zero."""
    products = {(i, r): {i: 1} for i in range(r)}
    names = tuple(f"e{i + 1}" for i in range(r)) + ("v",)
    return LeibnizAlgebra.from_products(field, r + 1, products, names)


_FOUR_DIM_TABLES = {
    14: lambda field, alpha: {(0, 0): {2: 1}, (0, 1): {3: 1}},
    15: lambda field, alpha: {(0, 0): {2: 1}, (1, 0): {3: 1}},
    16: lambda field, alpha: {(0, 1): {3: 1}, (1, 0): {2: 1}, (1, 1): {2: -1}},
    17: lambda field, alpha: {(0, 0): {2: 1}, (0, 1): {3: 1}, (1, 0): {3: alpha}},
    18: lambda field, alpha: {(0, 0): {2: 1}, (1, 0): {3: 1}, (0, 1): {2: alpha},
                              (1, 1): {3: -1}},
    19: lambda field, alpha: {(0, 0): {2: 1}, (0, 1): {2: 1}, (1, 0): {2: 1, 3: 1},
                              (1, 1): {3: 1}},
    25: lambda field, alpha: {(0, 0): {2: 1}, (1, 1): {3: 1}, (0, 2): {3: 1}},
}


def four_dim_nilpotent_printed(field: Field, idx: int, alpha=None) -> LeibnizAlgebra:
    """Catalog tables A14..A19 and A25 of nonsplit 4-dimensional nilpotent
    algebras, exactly as printed (possibly left-oriented; not validated)."""
    if idx not in _FOUR_DIM_TABLES:
        raise ValueError(f"unknown catalog index {idx}")
    if idx == 17:
        if alpha is None:
            raise ValueError("index 17 needs a parameter alpha outside {-1, 0}")
        alpha = field.scalar(alpha)
        if alpha in (field.zero, field.neg(field.one)):
            raise ValueError("index 17 requires alpha outside {-1, 0}")
    elif idx == 18:
        if alpha is None:
            raise ValueError("index 18 needs a parameter alpha != -1")
        alpha = field.scalar(alpha)
        if alpha == field.neg(field.one):
            raise ValueError("index 18 requires alpha != -1")
    elif alpha is not None:
        raise ValueError(f"index {idx} takes no parameter")
    names = ("x1", "x2", "x3", "x4")
    return LeibnizAlgebra.from_products(field, 4, _FOUR_DIM_TABLES[idx](field, alpha),
                                        names)


def four_dim_nilpotent(field: Field, idx: int, alpha=None) -> LeibnizAlgebra:
    """Catalog table, orientation-fixed to satisfy the right identity."""
    return orientation_fix(four_dim_nilpotent_printed(field, idx, alpha))


def a25_printed(field: Field) -> LeibnizAlgebra:
    return four_dim_nilpotent_printed(field, 25)


def a25(field: Field) -> LeibnizAlgebra:
    return four_dim_nilpotent(field, 25)


def extraspecial_from_form(field: Field, form) -> LeibnizAlgebra:
    """Central extension of an abelian space by the bilinear form beta:
    basis e_1..e_m, z with [e_i, e_j] = beta(i, j) z and z annihilating on
    both sides.  All triple products land in the annihilator, so any form
    yields a valid algebra."""
    rows = [list(r) for r in form]
    m = len(rows)
    if any(len(r) != m for r in rows):
        raise ValueError("form matrix must be square")
    products = {}
    for i in range(m):
        for j in range(m):
            c = field.scalar(rows[i][j])
            if c != 0:
                products[(i, j)] = {m: c}
    names = tuple(f"e{i + 1}" for i in range(m)) + ("z",)
    out = LeibnizAlgebra.from_products(field, m + 1, products, names)
    assert out.is_valid
    return out


def extraspecial_unit_form(field: Field) -> LeibnizAlgebra:
    """x^2 = y^2 = z with [x, y] = z = -[y, x]: the central extension whose
    square map is the sum-of-two-squares form."""
    return extraspecial_from_form(field, [[1, 1], [-1, 1]])


def add_center(algebra: LeibnizAlgebra, k: int) -> LeibnizAlgebra:
    """Direct sum with a k-dimensional abelian (central) ideal."""
    return algebra.direct_sum(LeibnizAlgebra.abelian(algebra.field, k))


def is_extraspecial(algebra: LeibnizAlgebra) -> bool:
    """dim Z(L) = 1 and L/Z(L) abelian (i.e. all products central)."""
    algebra.require_valid()
    center = algebra.center
    if center.dim != 1:
        return False
    derived = algebra.product_space(algebra.full_subspace(), algebra.full_subspace())
    return center.contains(derived)


def recognize_central_line_quotient(algebra: LeibnizAlgebra) -> bool:
    """Structural recognizer for extraspecial-plus-center sums:
    dim L^2 <= 1 and L^2 central."""
    algebra.require_valid()
    full = algebra.full_subspace()
    derived = algebra.product_space(full, full)
    return derived.dim <= 1 and algebra.center.contains(derived)


# ---------------------------------------------------------------------------
# the square-zero set J = {x : x^2 = 0}
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SquareZeroResult:
    status: str  # "subspace" | "not_subspace" | "unknown"
    subspace: Subspace | None = None
    abelian_ideal: bool | None = None
    witness: dict | None = None
    note: str | None = None


def square_zero_set(algebra: LeibnizAlgebra,
                    budget: int = DEFAULT_SUBSPACE_BUDGET) -> SquareZeroResult:
    """The exact set {x : [x, x] = 0}, with subspace/abelian-ideal analysis.

    Finite fields are enumerated exhaustively.  Over the rationals the set is
    resolved only in certified cases: the Lie case (the square map vanishes
    identically) and the case where the square map is definite transverse to
    the radical of its polarization; anything else is reported unknown.
    """
    algebra.require_valid()
    field = algebra.field
    n = algebra.dim
    if field.is_finite:
        members = [v for v in all_vectors(field, n, budget)
                   if not any(algebra.square(v))]
        span = algebra.subspace(members)
        if field.p ** span.dim == len(members):
            ab = (algebra.is_ideal(span)
                  and algebra.product_space(span, span).dim == 0)
            return SquareZeroResult("subspace", span, ab)
        member_set = set(members)
        for x in members:
            if not any(x):
                continue
            for y in members:
                s = tuple(field.add(a, b) for a, b in zip(x, y))
                if s not in member_set:
                    return SquareZeroResult("not_subspace", None, None, {
                        "kind": "square_zero",
                        "x": x,
                        "y": y,
                        "sum": s,
                        "sum_square": algebra.square(s),
                    })
        raise AssertionError("span mismatch without a violating pair")
    return _square_zero_rational(algebra)


def _square_zero_rational(algebra: LeibnizAlgebra) -> SquareZeroResult:
    field = algebra.field
    n = algebra.dim
    full = algebra.full_subspace()
    if algebra.is_lie:
        ab = algebra.product_space(full, full).dim == 0
        return SquareZeroResult("subspace", full, ab)
    # radical of the polarized square map: {v : [v, y] + [y, v] = 0 for all y}
    rows = []
    for i in range(n):
        entry = []
        for j in range(n):
            entry.extend(field.add(a, b)
                         for a, b in zip(algebra.table[i][j], algebra.table[j][i]))
        rows.append(tuple(entry))
    radical = kernel(Matrix(field, tuple(rows)))
    complement = [i for i in range(n) if i not in set(radical.pivots)]
    for k in range(n):
        gram = [[(algebra.table[i][j][k] + algebra.table[j][i][k]) / 2
                 for j in complement] for i in complement]
        if _definite(gram):
            ab = (algebra.is_ideal(radical)
                  and algebra.product_space(radical, radical).dim == 0)
            return SquareZeroResult("subspace", radical, ab)
    return SquareZeroResult(
        "unknown", None, None, None,
        "square map over an infinite field is neither identically zero nor "
        "certified definite transverse to its radical")


def _definite(gram) -> bool:
    """Sylvester test: gram or -gram has all leading principal minors > 0."""
    m = len(gram)
    if m == 0:
        return False
    for sign in (1, -1):
        ok = True
        for k in range(1, m + 1):
            minor = [[sign * gram[i][j] for j in range(k)] for i in range(k)]
            if _det(minor) <= 0:
                ok = False
                break
        if ok:
            return True
    return False


def _det(rows) -> Fraction:
    m = [list(map(Fraction, r)) for r in rows]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            if m[r][col] != 0:
                c = m[r][col] * inv
                m[r] = [a - c * b for a, b in zip(m[r], m[col])]
    return det


# ---------------------------------------------------------------------------
# corpora
# ---------------------------------------------------------------------------

def all_dim2_algebras(field: Field) -> tuple:
    """Every valid 2-dimensional table over a (small) finite field."""
    if not field.is_finite:
        raise ValueError("exhaustive table corpus needs a finite field")
    out = []
    elems = list(field.elements())
    from itertools import product as iproduct
    for entries in iproduct(elems, repeat=8):
        table = (
            ((entries[0], entries[1]), (entries[2], entries[3])),
            ((entries[4], entries[5]), (entries[6], entries[7])),
        )
        alg = LeibnizAlgebra(field, 2, table, ("e1", "e2"))
        if alg.is_valid:
            out.append(alg)
    return tuple(out)


def all_form_algebras(field: Field, m: int = 2) -> tuple:
    """Central extensions of F^m by every possible m x m form."""
    if not field.is_finite:
        raise ValueError("form corpus needs a finite field")
    from itertools import product as iproduct
    elems = list(field.elements())
    out = []
    for entries in iproduct(elems, repeat=m * m):
        form = [entries[i * m:(i + 1) * m] for i in range(m)]
        out.append(extraspecial_from_form(field, form))
    return tuple(out)


def random_dim3_algebras(field: Field, count: int, seed: int = 0) -> tuple:
    """Seeded corpus of valid 3-dimensional algebras.

    Raw random tables essentially never satisfy the identity, so draws are
    seeded from central extensions, direct sums and cyclic presentations,
    plus single-entry perturbations of those kept only when still valid.
    """
    rng = random.Random(seed)
    elems = list(field.elements()) if field.is_finite else list(range(-2, 3))
    dim2 = all_dim2_algebras(field) if field.is_finite else ()
    out = []
    seen = set()
    attempts = 0
    while len(out) < count and attempts < 200 * max(count, 1):
        attempts += 1
        kind = rng.randrange(4)
        if kind == 0:
            form = [[rng.choice(elems) for _ in range(2)] for _ in range(2)]
            cand = extraspecial_from_form(field, form)
        elif kind == 1 and dim2:
            cand = rng.choice(dim2).direct_sum(LeibnizAlgebra.abelian(field, 1))
        elif kind == 2:
            alphas = [rng.choice(elems) for _ in range(2)]
            cand = CyclicPresentation.make(field, alphas).algebra
        else:
            form = [[rng.choice(elems) for _ in range(2)] for _ in range(2)]
            base = extraspecial_from_form(field, form)
            table = [[[c for c in row] for row in trow] for trow in base.table]
            i, j, k = (rng.randrange(3) for _ in range(3))
            table[i][j][k] = field.scalar(rng.choice(elems))
            cand = LeibnizAlgebra.from_table(field, table)
            if not cand.is_valid:
                continue
        if cand.table not in seen:
            seen.add(cand.table)
            out.append(cand)
    if len(out) < count:
        raise RuntimeError(f"could not assemble {count} valid tables "
                           f"(got {len(out)})")
    return tuple(out)


def structural_fingerprint(algebra: LeibnizAlgebra, lattice=None) -> tuple:
    """Isomorphism-invariant fingerprint usable at small dimensions: series
    dimensions plus the lattice node profile."""
    inv_dims = (
        algebra.dim,
        algebra.leibniz_kernel.dim,
        algebra.center.dim,
        tuple(s.dim for s in algebra.lower_central_series),
        tuple(s.dim for s in algebra.derived_series),
    )
    if lattice is None:
        from .lattice import build_lattice
        lattice = build_lattice(algebra)
    profile = {}
    for node in lattice.nodes:
        profile[node.dim] = profile.get(node.dim, 0) + 1
    return inv_dims + (tuple(sorted(profile.items())),
                       len(lattice.maximal_indices))
