"""Exact scalar and polynomial arithmetic over GF(p) and the rationals.

Scalars are plain ``int`` residues 0..p-1 over a finite field and
``fractions.Fraction`` over the rationals, so equality is structural and
everything is immutable and hashable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import product
from math import gcd as int_gcd
from math import isqrt


class ExactFieldError(Exception):
    """Request outside the supported exact domains."""


class UnsupportedDegreeError(ExactFieldError):
    """Degree exceeds the bound of the exact rational factor search."""


_MAX_PRIME = 2**31
# Berlekamp splitting scans all field elements; keep that honest.
_MAX_FACTOR_PRIME = 100_000

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:  # deterministic for n < 3.3e24
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Field:
    """GF(p) for a prime p, or the field of rationals when p is None."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None:
            if not (2 <= self.p <= _MAX_PRIME):
                raise ExactFieldError(f"characteristic out of range: {self.p}")
            if not _is_prime(self.p):
                raise ExactFieldError(f"not a prime: {self.p}")

    @property
    def is_finite(self) -> bool:
        return self.p is not None

    @property
    def characteristic(self) -> int:
        return self.p or 0

    @property
    def order(self) -> int:
        if self.p is None:
            raise ExactFieldError("infinite field has no order")
        return self.p

    @property
    def zero(self):
        return 0 if self.p is not None else Fraction(0)

    @property
    def one(self):
        return 1 if self.p is not None else Fraction(1)

    def scalar(self, value):
        """Canonical scalar from an int, Fraction or string."""
        if isinstance(value, str):
            return self.parse(value)
        if self.p is not None:
            if isinstance(value, Fraction):
                if value.denominator % self.p == 0:
                    raise ZeroDivisionError(f"denominator not invertible in {self}")
                return value.numerator * pow(value.denominator, -1, self.p) % self.p
            return int(value) % self.p
        return Fraction(value)

    def add(self, a, b):
        return (a + b) % self.p if self.p is not None else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.p is not None else a - b

    def mul(self, a, b):
        return (a * b) % self.p if self.p is not None else a * b

    def neg(self, a):
        return (-a) % self.p if self.p is not None else -a

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError(f"division by zero in {self}")
        if self.p is not None:
            return a * pow(b, -1, self.p) % self.p
        return a / b

    def inv(self, a):
        return self.div(self.one, a)

    def elements(self):
        """All field elements, in canonical order (finite fields only)."""
        if self.p is None:
            raise ExactFieldError("cannot enumerate an infinite field")
        return range(self.p)

    def format(self, a) -> str:
        return str(a)

    def parse(self, text: str):
        text = text.strip()
        if self.p is not None:
            if "/" in text:
                num, den = text.split("/", 1)
                return self.div(self.scalar(int(num)), self.scalar(int(den)))
            return int(text, 10) % self.p
        return Fraction(text)

    def __str__(self) -> str:
        return f"GF({self.p})" if self.p is not None else "QQ"

    __repr__ = __str__


def GF(p: int) -> Field:
    return Field(p)


QQ = Field(None)


def arith(field: Field, a, b, op: str):
    """Single-op scalar arithmetic dispatch: add, sub, mul or div."""
    try:
        fn = {"add": field.add, "sub": field.sub, "mul": field.mul, "div": field.div}[op]
    except KeyError:
        raise ExactFieldError(f"unknown operation {op!r}") from None
    return fn(a, b)


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Polynomial:
    """Univariate polynomial with ascending coefficients, no trailing zeros."""

    field: Field
    coeffs: tuple = ()

    @staticmethod
    def make(field: Field, coeffs) -> "Polynomial":
        cs = [field.scalar(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        return Polynomial(field, tuple(cs))

    @staticmethod
    def zero(field: Field) -> "Polynomial":
        return Polynomial(field, ())

    @staticmethod
    def one(field: Field) -> "Polynomial":
        return Polynomial.make(field, [1])

    @staticmethod
    def x(field: Field) -> "Polynomial":
        return Polynomial.make(field, [0, 1])

    @staticmethod
    def constant(field: Field, c) -> "Polynomial":
        return Polynomial.make(field, [c])

    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_one(self) -> bool:
        return self.coeffs == (self.field.one,)

    @property
    def leading(self):
        if self.is_zero:
            raise ExactFieldError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coefficient(self, k: int):
        return self.coeffs[k] if k < len(self.coeffs) else self.field.zero

    def _check(self, other: "Polynomial"):
        if self.field != other.field:
            raise ExactFieldError("polynomials over different fields")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        f = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial.make(
            f, [f.add(self.coefficient(k), other.coefficient(k)) for k in range(n)]
        )

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        f = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial.make(
            f, [f.sub(self.coefficient(k), other.coefficient(k)) for k in range(n)]
        )

    def __neg__(self) -> "Polynomial":
        f = self.field
        return Polynomial(f, tuple(f.neg(c) for c in self.coeffs))

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        if self.is_zero or other.is_zero:
            return Polynomial.zero(self.field)
        f = self.field
        out = [f.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b == 0:
                    continue
                out[i + j] = f.add(out[i + j], f.mul(a, b))
        return Polynomial.make(f, out)

    def scale(self, c) -> "Polynomial":
        f = self.field
        c = f.scalar(c)
        return Polynomial.make(f, [f.mul(a, c) for a in self.coeffs])

    def shift(self, k: int) -> "Polynomial":
        """Multiply by x**k."""
        if self.is_zero:
            return self
        return Polynomial(self.field, (self.field.zero,) * k + self.coeffs)

    def __divmod__(self, other: "Polynomial"):
        self._check(other)
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        f = self.field
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Polynomial.zero(f), self
        quo = [f.zero] * (dq + 1)
        lead_inv = f.inv(other.leading)
        for k in range(dq, -1, -1):
            top = rem[k + other.degree()]
            if top == 0:
                continue
            c = f.mul(top, lead_inv)
            quo[k] = c
            for j, b in enumerate(other.coeffs):
                rem[k + j] = f.sub(rem[k + j], f.mul(c, b))
        return Polynomial.make(f, quo), Polynomial.make(f, rem)

    def __floordiv__(self, other: "Polynomial") -> "Polynomial":
        return divmod(self, other)[0]

    def __mod__(self, other: "Polynomial") -> "Polynomial":
        return divmod(self, other)[1]

    def monic(self) -> "Polynomial":
        if self.is_zero or self.leading == self.field.one:
            return self
        return self.scale(self.field.inv(self.leading))

    def derivative(self) -> "Polynomial":
        f = self.field
        return Polynomial.make(
            f, [f.mul(f.scalar(k), c) for k, c in enumerate(self.coeffs)][1:]
        )

    def evaluate(self, a):
        f = self.field
        acc = f.zero
        for c in reversed(self.coeffs):
            acc = f.add(f.mul(acc, a), c)
        return acc

    def pow_mod(self, e: int, modulus: "Polynomial") -> "Polynomial":
        result = Polynomial.one(self.field)
        base = self % modulus
        while e:
            if e & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            e >>= 1
        return result

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for k in range(self.degree(), -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            if k == 0:
                term = str(c)
            else:
                xk = "x" if k == 1 else f"x^{k}"
                if c == self.field.one:
                    term = xk
                elif c == self.field.neg(self.field.one) and not self.field.is_finite:
                    term = f"-{xk}"
                else:
                    term = f"{c}*{xk}"
            parts.append(term)
        out = parts[0]
        for term in parts[1:]:
            out += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
        return out


def poly_gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    """Monic greatest common divisor; gcd(0, 0) is rejected."""
    if f.is_zero and g.is_zero:
        raise ExactFieldError("gcd(0, 0) is undefined")
    while not g.is_zero:
        f, g = g, f % g
    return f.monic()


def squarefree_part(f: Polynomial) -> Polynomial:
    """f divided by gcd(f, f')."""
    if f.is_zero:
        raise ExactFieldError("squarefree part of the zero polynomial")
    if f.degree() == 0:
        return f
    return f // poly_gcd(f, f.derivative())


# ---------------------------------------------------------------------------
# factorization
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Factorization:
    """Monic irreducible factors with multiplicities, plus the leading unit."""

    field: Field
    unit: object
    factors: tuple  # ((Polynomial, multiplicity), ...)

    @property
    def distinct_count(self) -> int:
        return len(self.factors)

    def expand(self) -> Polynomial:
        out = Polynomial.constant(self.field, self.unit)
        for poly, mult in self.factors:
            for _ in range(mult):
                out = out * poly
        return out

    def __str__(self) -> str:
        inner = " * ".join(
            f"({poly})" + (f"^{mult}" if mult > 1 else "") for poly, mult in self.factors
        )
        if self.unit == self.field.one:
            return inner or "1"
        return f"{self.unit} * {inner}" if inner else str(self.unit)


def _poly_sort_key(poly: Polynomial):
    return (poly.degree(), tuple(Fraction(c) if not poly.field.is_finite else c
                                 for c in poly.coeffs))


def factor(f: Polynomial, q_degree_bound: int = 12) -> Factorization:
    """Factor into monic irreducibles over GF(p) or the rationals.

    Over GF(p) this runs square-free decomposition followed by Berlekamp
    splitting (deterministic: the splitting scan ranges over all of GF(p)).
    Over the rationals it uses Yun's square-free decomposition and a
    Kronecker divisor-interpolation search, which is exact but exponential,
    so the degree is capped at ``q_degree_bound``.
    """
    if f.is_zero:
        raise ExactFieldError("cannot factor the zero polynomial")
    field = f.field
    if f.degree() == 0:
        return Factorization(field, f.leading, ())
    if field.is_finite:
        if field.p > _MAX_FACTOR_PRIME:
            raise ExactFieldError(
                f"factorization over GF(p) supported for p <= {_MAX_FACTOR_PRIME}"
            )
        found = _factor_finite(f)
    else:
        if f.degree() > q_degree_bound:
            raise UnsupportedDegreeError(
                f"unsupported degree {f.degree()} > {q_degree_bound} over QQ"
            )
        found = _factor_rational(f)
    items = sorted(found.items(), key=lambda kv: _poly_sort_key(kv[0]))
    return Factorization(field, f.leading, tuple(items))


# -- GF(p) ------------------------------------------------------------------

def _pth_root(f: Polynomial) -> Polynomial:
    # valid over GF(p): derivative zero means f(x) = g(x^p) with g = same coeffs
    p = f.field.p
    return Polynomial.make(f.field, list(f.coeffs[::p]))


def _squarefree_decomposition(f: Polynomial) -> dict:
    """Monic square-free parts with multiplicities; works in characteristic p."""
    p = f.field.p
    out: dict[Polynomial, int] = {}
    d = f.derivative()
    if d.is_zero:
        for g, m in _squarefree_decomposition(_pth_root(f)).items():
            out[g] = out.get(g, 0) + m * p
        return out
    c = poly_gcd(f, d)
    w = f // c
    i = 1
    while not w.is_one:
        y = poly_gcd(w, c)
        z = w // y
        if z.degree() >= 1:
            out[z.monic()] = i
        w = y
        c = c // y
        i += 1
    if not c.is_one:
        for g, m in _squarefree_decomposition(_pth_root(c)).items():
            out[g] = out.get(g, 0) + m * p
    return out


def _frobenius_kernel(g: Polynomial) -> list:
    """Basis of {v : v(x)^p = v(x) mod g}, as coefficient tuples."""
    p = g.field.p
    n = g.degree()
    xp = Polynomial.x(g.field).pow_mod(p, g)
    rows = []
    power = Polynomial.one(g.field)
    for i in range(n):
        row = [power.coefficient(k) for k in range(n)]
        row[i] = (row[i] - 1) % p  # subtract identity
        rows.append(row)
        power = (power * xp) % g
    # left null space of rows (v . M = 0) by eliminating the transpose
    m = [[rows[r][c] for r in range(n)] for c in range(n)]
    pivots = []
    r = 0
    for col in range(n):
        piv = next((k for k in range(r, n) if m[k][col]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][col], -1, p)
        m[r] = [(a * inv) % p for a in m[r]]
        for k in range(n):
            if k != r and m[k][col]:
                c0 = m[k][col]
                m[k] = [(a - c0 * b) % p for a, b in zip(m[k], m[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * n
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-m[i][fc]) % p
        basis.append(tuple(v))
    return basis


def _berlekamp(g: Polynomial) -> list:
    """Irreducible monic factors of a square-free monic g over GF(p)."""
    if g.degree() <= 1:
        return [g]
    field = g.field
    basis = _frobenius_kernel(g)
    r = len(basis)
    if r == 1:
        return [g]
    factors = [g]
    for vec in basis:
        if len(factors) == r:
            break
        v = Polynomial.make(field, vec)
        if v.degree() < 1:
            continue
        next_factors = []
        for h in factors:
            if h.degree() <= 1:
                next_factors.append(h)
                continue
            rest = h
            pieces = []
            for c in field.elements():
                if rest.degree() <= 0:
                    break
                d = poly_gcd(rest, v - Polynomial.constant(field, c))
                if d.degree() >= 1:
                    pieces.append(d)
                    rest = rest // d
            if rest.degree() >= 1:
                pieces.append(rest.monic())
            next_factors.extend(pieces if pieces else [h])
        factors = next_factors
    return [h.monic() for h in factors]


def _factor_finite(f: Polynomial) -> dict:
    out: dict[Polynomial, int] = {}
    for part, mult in _squarefree_decomposition(f.monic()).items():
        for irr in _berlekamp(part):
            out[irr] = out.get(irr, 0) + mult
    return out


# -- rationals ---------------------------------------------------------------

def _yun_squarefree(f: Polynomial) -> dict:
    """Yun's square-free decomposition of a monic rational polynomial."""
    out: dict[Polynomial, int] = {}
    g = poly_gcd(f, f.derivative())
    if g.is_one:
        return {f: 1}
    b = f // g
    c = f.derivative() // g
    d = c - b.derivative()
    i = 1
    while b.degree() > 0:
        a = poly_gcd(b, d)
        if a.degree() >= 1:
            out[a] = i
        b = b // a
        c = d // a
        d = c - b.derivative()
        i += 1
    return out


def _to_primitive_int(f: Polynomial) -> list:
    den = reduce(lambda acc, c: acc * c.denominator // int_gcd(acc, c.denominator),
                 f.coeffs, 1)
    ints = [int(c * den) for c in f.coeffs]
    content = reduce(int_gcd, ints)
    ints = [c // content for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def _signed_divisors(v: int, positive_only: bool = False):
    v = abs(v)
    small = []
    big = []
    for d in range(1, isqrt(v) + 1):
        if v % d == 0:
            small.append(d)
            if d != v // d:
                big.append(v // d)
    divs = small + big[::-1]
    if positive_only:
        return divs
    return [s * d for d in divs for s in (1, -1)]


def _rational_roots(ints: list) -> list:
    """All rational roots of an integer-coefficient polynomial."""
    if not ints or ints[0] == 0:
        raise ExactFieldError("expected nonzero constant term")
    roots = []
    for num in _signed_divisors(ints[0]):
        for den in _signed_divisors(ints[-1], positive_only=True):
            if int_gcd(abs(num), den) != 1:
                continue
            r = Fraction(num, den)
            acc = Fraction(0)
            for c in reversed(ints):
                acc = acc * r + c
            if acc == 0:
                roots.append(r)
    return sorted(set(roots))


def _lagrange(points: list, values: list) -> Polynomial:
    total = Polynomial.zero(QQ)
    for i, (xi, yi) in enumerate(zip(points, values)):
        if yi == 0:
            continue
        num = Polynomial.constant(QQ, yi)
        den = Fraction(1)
        for j, xj in enumerate(points):
            if j == i:
                continue
            num = num * Polynomial.make(QQ, [-xj, 1])
            den *= xi - xj
        total = total + num.scale(Fraction(1) / den)
    return total


def _kronecker_split(ints: list):
    """One nontrivial integer factor of a primitive square-free integer
    polynomial with no rational roots, or None if irreducible."""
    deg = len(ints) - 1
    poly = Polynomial.make(QQ, ints)
    pts_pool = [0, 1, -1, 2, -2, 3, -3, 4, -4, 5, -5, 6, -6]
    for d in range(2, deg // 2 + 1):
        pts = pts_pool[: d + 1]
        vals = [poly.evaluate(Fraction(a)) for a in pts]
        choice_sets = [_signed_divisors(int(v), positive_only=(i == 0))
                       for i, v in enumerate(vals)]
        for combo in product(*choice_sets):
            cand = _lagrange([Fraction(a) for a in pts], [Fraction(c) for c in combo])
            if cand.degree() < 1:
                continue
            if any(c.denominator != 1 for c in cand.coeffs):
                continue
            quo, rem = divmod(poly, cand)
            if rem.is_zero and quo.degree() >= 1:
                return cand
    return None


def _factor_squarefree_rational(f: Polynomial) -> list:
    """Monic irreducible factors of a monic square-free rational polynomial."""
    factors = []
    ints = _to_primitive_int(f)
    # strip powers of x, then all rational roots (linear factors)
    while ints[0] == 0:
        factors.append(Polynomial.x(QQ))
        ints = ints[1:]
    if len(ints) > 1:
        for r in _rational_roots(ints):
            factors.append(Polynomial.make(QQ, [-r, 1]))
            quo, rem = divmod(Polynomial.make(QQ, ints), Polynomial.make(QQ, [-r, 1]))
            assert rem.is_zero
            ints = _to_primitive_int(quo)
    work = [ints]
    while work:
        cur = work.pop()
        if len(cur) <= 1:
            continue
        if len(cur) == 2:
            factors.append(Polynomial.make(QQ, cur).monic())
            continue
        split = _kronecker_split(cur)
        if split is None:
            factors.append(Polynomial.make(QQ, cur).monic())
        else:
            quo = Polynomial.make(QQ, cur) // split
            work.append(_to_primitive_int(split))
            work.append(_to_primitive_int(quo))
    return factors


def _factor_rational(f: Polynomial) -> dict:
    out: dict[Polynomial, int] = {}
    for part, mult in _yun_squarefree(f.monic()).items():
        for irr in _factor_squarefree_rational(part):
            out[irr] = out.get(irr, 0) + mult
    return out


def rational_roots(f: Polynomial) -> list:
    """All roots of f in its base field, exactly.

    Finite fields are scanned; over the rationals this uses the rational
    root theorem on the primitive integer form.
    """
    if f.is_zero:
        raise ExactFieldError("every scalar is a root of the zero polynomial")
    field = f.field
    if field.is_finite:
        return [a for a in field.elements() if f.evaluate(a) == 0]
    roots = []
    coeffs = list(f.coeffs)
    if coeffs[0] == 0:
        roots.append(Fraction(0))
        while coeffs[0] == 0:
            coeffs = coeffs[1:]
    if len(coeffs) > 1:
        roots.extend(_rational_roots(_to_primitive_int(Polynomial.make(QQ, coeffs))))
    return sorted(set(roots))
