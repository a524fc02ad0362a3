"""Single-generator Leibniz algebras.

A presentation is the coefficient list of [a^n, a] = alpha_2 a^2 + ... +
alpha_n a^n on the basis a, a^2, ..., a^n.  The right multiplication by the
generator is then the companion matrix of
p(x) = x^n - alpha_n x^(n-1) - ... - alpha_2 x, and maximal subalgebras,
primary decomposition and the modularity classification are all read off
its factorization.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from itertools import product as iproduct

from .algebra import LeibnizAlgebra
from .exactfield import Factorization, Field, Polynomial, factor
from .linalg import Matrix, Subspace, kernel, matrix_poly, normalized_vectors


@dataclass(frozen=True)
class CyclicPresentation:
    field: Field
    n: int
    alphas: tuple  # coefficients of a^2 .. a^n in [a^n, a]

    @staticmethod
    def make(field: Field, alphas) -> "CyclicPresentation":
        al = tuple(field.scalar(a) for a in alphas)
        n = len(al) + 1
        if n < 2:
            raise ValueError("cyclic presentations need dimension >= 2")
        return CyclicPresentation(field, n, al)

    @cached_property
    def algebra(self) -> LeibnizAlgebra:
        """[a^i, a] = a^(i+1) for i < n, [a^n, a] from the alphas, and every
        right factor a^j with j >= 2 annihilates."""
        n = self.n
        products = {(i, 0): {i + 1: self.field.one} for i in range(n - 1)}
        products[(n - 1, 0)] = {i + 1: c for i, c in enumerate(self.alphas) if c != 0}
        names = tuple("a" if i == 0 else f"a^{i + 1}" for i in range(n))
        return LeibnizAlgebra.from_products(self.field, n, products, names)

    @cached_property
    def generator_matrix(self) -> Matrix:
        """Companion matrix of p(x): the right multiplication by a."""
        return self.algebra.right_mult(self.algebra.basis_vector(0))

    @cached_property
    def char_poly(self) -> Polynomial:
        """p(x) = x^n - alpha_n x^(n-1) - ... - alpha_2 x."""
        f = self.field
        coeffs = [f.zero] + [f.neg(a) for a in self.alphas] + [f.one]
        return Polynomial.make(f, coeffs)

    @cached_property
    def factorization(self) -> Factorization:
        return factor(self.char_poly)

    @cached_property
    def ordered_factors(self) -> tuple:
        """Distinct irreducible factors with the factor x first.

        x always divides p(x) (the identity forces a zero constant term), and
        putting its primary component first matches the product rules used by
        the modularity classification.
        """
        x = Polynomial.x(self.field)
        items = list(self.factorization.factors)
        head = [it for it in items if it[0] == x]
        tail = [it for it in items if it[0] != x]
        return tuple(head + tail)

    def maximal_subalgebras(self) -> tuple:
        """Null spaces of p/p_j evaluated at the generator matrix, one per
        distinct irreducible factor."""
        t = self.generator_matrix
        p = self.char_poly
        out = []
        for poly, _mult in self.ordered_factors:
            r = p // poly
            out.append(kernel(matrix_poly(r, t)))
        return tuple(out)

    def primary_decomposition(self) -> "PrimaryDecomposition":
        t = self.generator_matrix
        comps = []
        for poly, mult in self.ordered_factors:
            power = Polynomial.one(self.field)
            for _ in range(mult):
                power = power * poly
            comps.append(PrimaryComponent(poly, mult, kernel(matrix_poly(power, t))))
        decomp = PrimaryDecomposition(tuple(comps))
        if sum(c.space.dim for c in comps) != self.n:
            raise AssertionError("primary components do not fill the algebra")
        return decomp

    def classify_modular(self) -> str:
        """"modular_nilpotent" when p(x) = x^n; "modular_solvable" when
        p(x) = x^(n-1) (x - c) for some c != 0, which rescaling the generator
        normalizes to c = 1; else "not_modular"."""
        fac = self.ordered_factors
        x = Polynomial.x(self.field)
        if len(fac) == 1 and fac[0][0] == x and fac[0][1] == self.n:
            return "modular_nilpotent"
        if (len(fac) == 2 and fac[0][0] == x and fac[0][1] == self.n - 1
                and fac[1][0].degree() == 1):
            return "modular_solvable"
        return "not_modular"

    def __str__(self):
        return (f"cyclic(n={self.n}, alphas=("
                + ",".join(str(a) for a in self.alphas) + f") over {self.field})")


@dataclass(frozen=True)
class PrimaryComponent:
    factor: Polynomial
    multiplicity: int
    space: Subspace


@dataclass(frozen=True)
class PrimaryDecomposition:
    components: tuple

    def product_rule_violations(self, algebra: LeibnizAlgebra) -> list:
        """Check the component product rules: [W_j, W_k] = 0 for j, k >= 2,
        [W_1, W_j] = 0 for j >= 2, and [W_j, W_1] inside W_j."""
        bad = []
        spaces = [c.space for c in self.components]
        for j, wj in enumerate(spaces):
            for k, wk in enumerate(spaces):
                prod = algebra.product_space(wj, wk)
                if j >= 1 and k >= 1 and prod.dim:
                    bad.append(("zero", j, k))
                elif j == 0 and k >= 1 and prod.dim:
                    bad.append(("zero", j, k))
                elif k == 0 and not wj.contains(prod):
                    bad.append(("inside", j, k))
        return bad


def all_presentations(field: Field, n: int):
    """Every cyclic presentation of dimension n over a finite field."""
    for alphas in iproduct(field.elements(), repeat=n - 1):
        yield CyclicPresentation.make(field, alphas)


def find_generator(algebra: LeibnizAlgebra, seed: int = 0,
                   rational_tries: int = 500):
    """Look for a single generator of the whole algebra.

    Returns (status, vector) with status "found", "none" or "unknown".
    Exhaustive over finite fields (closures are scaling-invariant, so one
    representative per line suffices); over the rationals basis vectors and
    seeded small random combinations are tried, never concluding "none".
    """
    algebra.require_valid()
    full = algebra.full_subspace()
    if algebra.dim == 0:
        return "found", ()
    if algebra.field.is_finite:
        for v in normalized_vectors(algebra.field, algebra.dim):
            if algebra.closure([v]) == full:
                return "found", v
        return "none", None
    f = algebra.field
    candidates = [algebra.basis_vector(i) for i in range(algebra.dim)]
    rng = random.Random(seed)
    for _ in range(rational_tries):
        candidates.append(tuple(f.scalar(rng.randint(-3, 3))
                                for _ in range(algebra.dim)))
    for v in candidates:
        if any(v) and algebra.closure([v]) == full:
            return "found", v
    return "unknown", None
