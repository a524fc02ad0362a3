"""Subalgebra lattices over finite fields, with property checks and witnesses.

The lattice of all subalgebras is materialized by filtering the exhaustive
canonical-subspace enumeration, so joins are closures of sums and meets are
intersections.  Every "false" verdict carries a self-contained witness
(coordinates and node bases) that re-checks independently of the lattice.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

from .algebra import LeibnizAlgebra
from .linalg import (
    DEFAULT_SUBSPACE_BUDGET,
    BudgetExceededError,
    InfiniteFieldError,
    Subspace,
    enumerate_subspaces,
    normalized_vectors,
)

DEFAULT_TRIPLE_NODE_BUDGET = 2_000


@dataclass(frozen=True)
class Verdict:
    """Three-valued outcome with an optional re-checkable witness."""

    status: str  # "true" | "false" | "unknown"
    witness: dict | None = None
    note: str | None = None

    @property
    def is_true(self) -> bool:
        return self.status == "true"

    @property
    def is_false(self) -> bool:
        return self.status == "false"

    @property
    def is_unknown(self) -> bool:
        return self.status == "unknown"

    @staticmethod
    def yes() -> "Verdict":
        return Verdict("true")

    @staticmethod
    def no(witness: dict, note: str | None = None) -> "Verdict":
        return Verdict("false", witness, note)

    @staticmethod
    def undecided(note: str) -> "Verdict":
        return Verdict("unknown", None, note)


@dataclass
class PropertyReport:
    distributive: Verdict
    modular_algebra: Verdict
    modular_lattice: Verdict
    upper_semimodular: Verdict
    lower_semimodular: Verdict
    dually_atomistic: Verdict
    jordan_dedekind: Verdict
    frattini_ideal: Subspace
    chain_length: int | None  # height of the graded lattice, when graded

    def as_dict(self) -> dict:
        return {
            "distributive": self.distributive,
            "modular_algebra": self.modular_algebra,
            "modular_lattice": self.modular_lattice,
            "upper_semimodular": self.upper_semimodular,
            "lower_semimodular": self.lower_semimodular,
            "dually_atomistic": self.dually_atomistic,
            "jordan_dedekind": self.jordan_dedekind,
        }


@lru_cache(maxsize=None)
def _all_subspaces(field, ambient, budget):
    return tuple(enumerate_subspaces(field, ambient, budget))


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class SubalgebraLattice:
    """All subalgebras of a finite-field Leibniz algebra, plus relations."""

    def __init__(self, algebra: LeibnizAlgebra, nodes):
        self.algebra = algebra
        self.nodes = tuple(nodes)
        self._by_rows = {s.rows: i for i, s in enumerate(self.nodes)}
        n = len(self.nodes)
        below = [0] * n  # below[i]: bitmask of j with nodes[j] <= nodes[i]
        for i, big in enumerate(self.nodes):
            mask = 0
            for j, small in enumerate(self.nodes):
                if small.dim <= big.dim and big.contains(small):
                    mask |= 1 << j
            below[i] = mask
        above = [0] * n
        for i in range(n):
            for j in _bits(below[i]):
                above[j] |= 1 << i
        self._below = below
        self._above = above
        covers = [0] * n  # covers[i]: bitmask of j covered by nodes[i]
        for i in range(n):
            strict = below[i] & ~(1 << i)
            for j in _bits(strict):
                between = strict & above[j] & ~(1 << j)
                if between == 0:
                    covers[i] |= 1 << j
        self._cover_lower = covers
        self.bottom = self._by_rows[()]
        self.top = next(i for i, s in enumerate(self.nodes) if s.dim == algebra.dim)
        self._meet_cache: dict = {}
        self._join_cache: dict = {}

    # -- basic structure ---------------------------------------------------

    def __len__(self) -> int:
        return len(self.nodes)

    def node_index(self, s: Subspace) -> int:
        return self._by_rows[s.rows]

    def leq(self, i: int, j: int) -> bool:
        """nodes[i] <= nodes[j]."""
        return bool(self._below[j] >> i & 1)

    def is_cover(self, upper: int, lower: int) -> bool:
        """nodes[lower] is a maximal proper subalgebra of nodes[upper]."""
        return bool(self._cover_lower[upper] >> lower & 1)

    def meet(self, i: int, j: int) -> int:
        if i == j:
            return i
        key = (i, j) if i < j else (j, i)
        out = self._meet_cache.get(key)
        if out is None:
            out = self._by_rows[self.nodes[i].intersect(self.nodes[j]).rows]
            self._meet_cache[key] = out
        return out

    def join(self, i: int, j: int) -> int:
        if i == j:
            return i
        key = (i, j) if i < j else (j, i)
        out = self._join_cache.get(key)
        if out is None:
            joined = self.algebra.closure(self.nodes[i].sum(self.nodes[j]))
            out = self._by_rows[joined.rows]
            self._join_cache[key] = out
        return out

    @cached_property
    def maximal_indices(self) -> tuple:
        return tuple(sorted(_bits(self._cover_lower[self.top])))

    def maximal_subalgebras(self) -> tuple:
        return tuple(self.nodes[i] for i in self.maximal_indices)

    def frattini_ideal(self) -> Subspace:
        """Sum of all ideals inside the intersection of the co-atoms."""
        inter = self.top
        for m in self.maximal_indices:
            inter = self.meet(inter, m)
        target = self.nodes[inter]
        acc = self.algebra.zero_subspace()
        for i in _bits(self._below[inter]):
            node = self.nodes[i]
            if node.dim and self.algebra.is_ideal(node):
                acc = acc.sum(node)
        assert target.contains(acc)
        return acc

    def _node_rows(self, i: int):
        return [list(r) for r in self.nodes[i].rows]

    # -- modularity --------------------------------------------------------

    def check_modular_algebra(self) -> Verdict:
        """Both join/meet modular identities over all admissible triples.

        Identity one: <U,V> meet W = <V, U meet W> for V <= W; identity two:
        <U,V> meet W = <V meet W, U> for U <= W.  Scanned in lexicographic
        (U, V, W) order, identity one first, so witnesses are deterministic.
        """
        n = len(self.nodes)
        sups = [sorted(_bits(self._above[v])) for v in range(n)]
        for u in range(n):
            for v in range(n):
                for w in sups[v]:
                    lhs = self.meet(self.join(u, v), w)
                    rhs = self.join(v, self.meet(u, w))
                    if lhs != rhs:
                        return Verdict.no(self._modular_witness(1, u, v, w, lhs, rhs))
        for u in range(n):
            for v in range(n):
                for w in sups[u]:
                    lhs = self.meet(self.join(u, v), w)
                    rhs = self.join(self.meet(v, w), u)
                    if lhs != rhs:
                        return Verdict.no(self._modular_witness(2, u, v, w, lhs, rhs))
        return Verdict.yes()

    def _modular_witness(self, identity, u, v, w, lhs, rhs) -> dict:
        return {
            "kind": "modular_identity",
            "identity": identity,
            "U": self.nodes[u].rows,
            "V": self.nodes[v].rows,
            "W": self.nodes[w].rows,
            "lhs": self.nodes[lhs].rows,
            "rhs": self.nodes[rhs].rows,
        }

    def check_modular_lattice(self, triple_budget: int = DEFAULT_TRIPLE_NODE_BUDGET
                              ) -> Verdict:
        """The lattice modular law a∨(b∧c) = (a∨b)∧c for all a <= c."""
        n = len(self.nodes)
        if n > triple_budget:
            return Verdict.undecided(
                f"{n} nodes exceed the triple-sweep budget {triple_budget}")
        sups = [sorted(_bits(self._above[v])) for v in range(n)]
        for a in range(n):
            for b in range(n):
                for c in sups[a]:
                    lhs = self.join(a, self.meet(b, c))
                    rhs = self.meet(self.join(a, b), c)
                    if lhs != rhs:
                        return Verdict.no({
                            "kind": "modular_law",
                            "a": self.nodes[a].rows,
                            "b": self.nodes[b].rows,
                            "c": self.nodes[c].rows,
                            "lhs": self.nodes[lhs].rows,
                            "rhs": self.nodes[rhs].rows,
                        })
        return Verdict.yes()

    def check_distributive(self, triple_budget: int = DEFAULT_TRIPLE_NODE_BUDGET
                           ) -> Verdict:
        """Both distributive laws on all node triples."""
        n = len(self.nodes)
        if n > triple_budget:
            return Verdict.undecided(
                f"{n} nodes exceed the triple-sweep budget {triple_budget}")
        for x in range(n):
            for y in range(n):
                for z in range(n):
                    lhs = self.meet(x, self.join(y, z))
                    rhs = self.join(self.meet(x, y), self.meet(x, z))
                    if lhs != rhs:
                        return Verdict.no(self._distributive_witness(
                            "meet_over_join", x, y, z, lhs, rhs))
                    lhs = self.join(x, self.meet(y, z))
                    rhs = self.meet(self.join(x, y), self.join(x, z))
                    if lhs != rhs:
                        return Verdict.no(self._distributive_witness(
                            "join_over_meet", x, y, z, lhs, rhs))
        return Verdict.yes()

    def _distributive_witness(self, law, x, y, z, lhs, rhs) -> dict:
        return {
            "kind": "distributive_law",
            "law": law,
            "x": self.nodes[x].rows,
            "y": self.nodes[y].rows,
            "z": self.nodes[z].rows,
            "lhs": self.nodes[lhs].rows,
            "rhs": self.nodes[rhs].rows,
        }

    # -- semimodularity ------------------------------------------------------

    def _usm_violation(self, u: int, b: int):
        m = self.meet(u, b)
        if not self.is_cover(b, m):
            return None
        j = self.join(u, b)
        if self.is_cover(j, u):
            return None
        return {
            "kind": "semimodular",
            "direction": "upper",
            "U": self.nodes[u].rows,
            "B": self.nodes[b].rows,
            "meet": self.nodes[m].rows,
            "join": self.nodes[j].rows,
        }

    def _lsm_violation(self, u: int, b: int):
        j = self.join(u, b)
        if not self.is_cover(j, u):
            return None
        m = self.meet(u, b)
        if self.is_cover(b, m):
            return None
        return {
            "kind": "semimodular",
            "direction": "lower",
            "U": self.nodes[u].rows,
            "B": self.nodes[b].rows,
            "meet": self.nodes[m].rows,
            "join": self.nodes[j].rows,
        }

    def check_upper_semimodular(self) -> Verdict:
        n = len(self.nodes)
        for u in range(n):
            for b in range(n):
                witness = self._usm_violation(u, b)
                if witness is not None:
                    return Verdict.no(witness)
        return Verdict.yes()

    def check_lower_semimodular(self) -> Verdict:
        n = len(self.nodes)
        for u in range(n):
            for b in range(n):
                witness = self._lsm_violation(u, b)
                if witness is not None:
                    return Verdict.no(witness)
        return Verdict.yes()

    def subalgebra_is_upper_semimodular(self, u: int) -> bool:
        return all(self._usm_violation(u, b) is None for b in range(len(self.nodes)))

    def subalgebra_is_lower_semimodular(self, u: int) -> bool:
        return all(self._lsm_violation(u, b) is None for b in range(len(self.nodes)))

    # -- dual atomisticity -----------------------------------------------------

    def check_dually_atomistic(self) -> Verdict:
        """Every node is an intersection of maximal subalgebras.

        The whole algebra is the empty intersection by convention.
        """
        for i in range(len(self.nodes)):
            if i == self.top:
                continue
            inter = self.top
            for m in self.maximal_indices:
                if self.leq(i, m):
                    inter = self.meet(inter, m)
            if inter != i:
                return Verdict.no({
                    "kind": "dually_atomistic",
                    "node": self.nodes[i].rows,
                    "maximals_above": [self.nodes[m].rows
                                       for m in self.maximal_indices
                                       if self.leq(i, m)],
                    "intersection": self.nodes[inter].rows,
                })
        return Verdict.yes()

    # -- graded intervals ------------------------------------------------------

    def _interval_grading_violation(self, u: int):
        """First v >= u whose interval [u, v] has maximal chains of two
        different lengths; returns (v, short chain, long chain)."""
        n = len(self.nodes)
        mins = {u: 0}
        maxs = {u: 0}
        above_u = self._above[u]
        for v in range(u + 1, n):
            if not (above_u >> v & 1):
                continue
            lo = hi = None
            for w in _bits(self._cover_lower[v] & above_u):
                if w in mins:
                    step_lo = mins[w] + 1
                    step_hi = maxs[w] + 1
                    lo = step_lo if lo is None or step_lo < lo else lo
                    hi = step_hi if hi is None or step_hi > hi else hi
            mins[v] = lo
            maxs[v] = hi
            if lo != hi:
                return v, self._chain(u, v, mins, shortest=True), \
                    self._chain(u, v, maxs, shortest=False)
        return None

    def _chain(self, u: int, v: int, dist: dict, shortest: bool):
        """Maximal chain from u to v realizing the recorded lengths."""
        chain = [v]
        cur = v
        while cur != u:
            for w in _bits(self._cover_lower[cur] & self._above[u]):
                if w in dist and dist[w] == dist[cur] - 1:
                    chain.append(w)
                    cur = w
                    break
            else:  # may happen while lengths disagree part-way; take any step
                step = next(iter(_bits(self._cover_lower[cur] & self._above[u])))
                chain.append(step)
                cur = step
        chain.reverse()
        return [self.nodes[i].rows for i in chain]

    def check_jordan_dedekind(self) -> Verdict:
        """Every interval graded: all maximal chains of equal length."""
        for u in range(len(self.nodes)):
            bad = self._interval_grading_violation(u)
            if bad is not None:
                v, short_chain, long_chain = bad
                return Verdict.no({
                    "kind": "graded_interval",
                    "lower": self.nodes[u].rows,
                    "upper": self.nodes[v].rows,
                    "short_chain": short_chain,
                    "long_chain": long_chain,
                })
        return Verdict.yes()

    def height(self) -> int | None:
        """Common length of maximal chains from 0 to L, if graded."""
        bad = self._interval_grading_violation(self.bottom)
        if bad is not None:
            return None
        mins = {self.bottom: 0}
        for v in range(len(self.nodes)):
            if v == self.bottom or not self.leq(self.bottom, v):
                continue
            mins[v] = min(mins[w] + 1 for w in _bits(self._cover_lower[v])
                          if w in mins)
        return mins[self.top]

    # -- weak quasi-ideals -------------------------------------------------------

    def check_weak_quasi_ideal(self) -> Verdict:
        """[U,V] + [V,U] inside U + V for every pair of subalgebras."""
        n = len(self.nodes)
        algebra = self.algebra
        for i in range(n):
            for j in range(i, n):
                if self.leq(i, j) or self.leq(j, i):
                    continue  # products stay inside the larger node
                u, v = self.nodes[i], self.nodes[j]
                s = u.sum(v)
                for a in u.rows:
                    for b in v.rows:
                        for w in (algebra.bracket(a, b), algebra.bracket(b, a)):
                            if not s.contains_vector(w):
                                return Verdict.no({
                                    "kind": "weak_quasi_ideal",
                                    "U": u.rows,
                                    "V": v.rows,
                                    "x": a,
                                    "y": b,
                                    "product": w,
                                    "sum_basis": s.rows,
                                })
        return Verdict.yes()

    # -- reporting ----------------------------------------------------------------

    def full_report(self, triple_budget: int = DEFAULT_TRIPLE_NODE_BUDGET
                    ) -> PropertyReport:
        jd = self.check_jordan_dedekind()
        return PropertyReport(
            distributive=self.check_distributive(triple_budget),
            modular_algebra=self.check_modular_algebra(),
            modular_lattice=self.check_modular_lattice(triple_budget),
            upper_semimodular=self.check_upper_semimodular(),
            lower_semimodular=self.check_lower_semimodular(),
            dually_atomistic=self.check_dually_atomistic(),
            jordan_dedekind=jd,
            frattini_ideal=self.frattini_ideal(),
            chain_length=self.height() if jd.is_true else None,
        )

    def to_dot(self) -> str:
        """Hasse diagram in DOT; co-atoms doubled, Frattini ideal filled."""
        phi = self.frattini_ideal()
        phi_idx = self._by_rows[phi.rows]
        maximal = set(self.maximal_indices)
        out = ["digraph subalgebra_lattice {", "  rankdir=BT;",
               '  node [shape=box, fontname="monospace"];']
        for i, node in enumerate(self.nodes):
            basis = " / ".join(",".join(str(c) for c in row) for row in node.rows)
            label = f"dim {node.dim}" + (f"\\n{basis}" if basis else "")
            attrs = [f'label="{label}"']
            if i in maximal:
                attrs.append("peripheries=2")
            if i == phi_idx:
                attrs.append("style=filled")
                attrs.append("fillcolor=lightgray")
            out.append(f"  n{i} [{', '.join(attrs)}];")
        for upper in range(len(self.nodes)):
            for lower in sorted(_bits(self._cover_lower[upper])):
                out.append(f"  n{lower} -> n{upper};")
        out.append("}")
        return "\n".join(out) + "\n"


def build(algebra: LeibnizAlgebra,
          budget: int = DEFAULT_SUBSPACE_BUDGET) -> SubalgebraLattice:
    """Enumerate all bracket-closed subspaces and assemble the lattice."""
    algebra.require_valid()
    if not algebra.field.is_finite:
        raise InfiniteFieldError("lattice enumeration requires a finite field")
    subs = _all_subspaces(algebra.field, algebra.dim, budget)
    bracket = algebra.bracket
    bcache: dict = {}
    nodes = []
    for s in subs:
        rows = s.rows
        ok = True
        for a in rows:
            for b in rows:
                key = (a, b)
                w = bcache.get(key)
                if w is None:
                    w = bracket(a, b)
                    bcache[key] = w
                if any(w) and not s.contains_vector(w):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            nodes.append(s)
    nodes.sort(key=lambda s: (s.dim, s.rows))
    return SubalgebraLattice(algebra, nodes)


@lru_cache(maxsize=None)
def build_lattice(algebra: LeibnizAlgebra,
                  budget: int = DEFAULT_SUBSPACE_BUDGET) -> SubalgebraLattice:
    """Cached lattice construction; algebras are immutable, so this is safe."""
    return build(algebra, budget)


# ---------------------------------------------------------------------------
# element-level modularity conditions
# ---------------------------------------------------------------------------

def check_bracket_condition(algebra: LeibnizAlgebra,
                            vector_budget: int = DEFAULT_SUBSPACE_BUDGET,
                            rational_span: int = 2) -> Verdict:
    """[x, y] inside <x> + <y> for all elements x, y.

    Exhaustive (up to scaling, which the condition is invariant under) over
    finite fields.  Over infinite fields, small integer combinations of basis
    vectors can refute the condition; otherwise the verdict is unknown.
    """
    algebra.require_valid()
    if algebra.field.is_finite:
        hulls = {}
        reps = list(normalized_vectors(algebra.field, algebra.dim, vector_budget))
        for x in reps:
            hulls[x] = algebra.closure([x])
        for x in reps:
            hx = hulls[x]
            for y in reps:
                w = algebra.bracket(x, y)
                if any(w) and not hx.sum(hulls[y]).contains_vector(w):
                    return Verdict.no(_bracket_witness(algebra, x, y, w, hulls))
        return Verdict.yes()
    candidates = _small_rational_vectors(algebra, rational_span)
    hulls = {v: algebra.closure([v]) for v in candidates}
    for x in candidates:
        for y in candidates:
            w = algebra.bracket(x, y)
            if any(w) and not hulls[x].sum(hulls[y]).contains_vector(w):
                return Verdict.no(_bracket_witness(algebra, x, y, w, hulls))
    return Verdict.undecided(
        "element condition over an infinite field: no refuting pair found "
        f"among integer combinations with coefficients up to {rational_span}")


def _bracket_witness(algebra, x, y, w, hulls) -> dict:
    return {
        "kind": "bracket_condition",
        "x": x,
        "y": y,
        "product": w,
        "hull_x": hulls[x].rows,
        "hull_y": hulls[y].rows,
    }


def _small_rational_vectors(algebra, span: int):
    from itertools import product as iproduct
    f = algebra.field
    out = []
    coeffs = [f.scalar(c) for c in range(-span, span + 1)]
    for v in iproduct(coeffs, repeat=algebra.dim):
        if any(v):
            lead = next(c for c in v if c != 0)
            if lead > 0:
                out.append(tuple(v))
    return out


def check_weak_quasi_ideal(algebra: LeibnizAlgebra,
                           budget: int = DEFAULT_SUBSPACE_BUDGET,
                           rational_span: int = 2) -> Verdict:
    """[U,V] + [V,U] inside U + V for all subalgebra pairs.

    Over a finite field this sweeps the built lattice.  Over infinite fields
    a violating element pair refutes it (with U, V the generated hulls);
    otherwise unknown.
    """
    algebra.require_valid()
    if algebra.field.is_finite:
        return build_lattice(algebra, budget).check_weak_quasi_ideal()
    probe = check_bracket_condition(algebra, budget, rational_span)
    if probe.is_false:
        w = dict(probe.witness)
        return Verdict.no({
            "kind": "weak_quasi_ideal",
            "U": w["hull_x"],
            "V": w["hull_y"],
            "x": w["x"],
            "y": w["y"],
            "product": w["product"],
            "sum_basis": Subspace.from_vectors(
                algebra.field, algebra.dim,
                list(w["hull_x"]) + list(w["hull_y"])).rows,
        })
    return Verdict.undecided(
        "weak quasi-ideal condition over an infinite field: no refutation found")
