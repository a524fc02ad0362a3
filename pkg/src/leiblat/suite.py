"""End-to-end verification suite.

Each check runs one classification claim at desk scale: constructions on one
side, exhaustive lattice enumeration on the other, and equality or
equivalence asserted exactly.  The runner memoizes per-algebra property
verdicts so overlapping sweeps pay once, and it records every false verdict
so the replay check can re-validate all stored witnesses at the end.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field as dc_field

from . import families
from .algebra import LeibnizAlgebra
from .cyclic import CyclicPresentation, all_presentations
from .docio import replay_witness
from .exactfield import GF, Polynomial, factor
from .lattice import (
    Verdict,
    build_lattice,
    check_bracket_condition,
)
from .linalg import enumerate_subspaces, gaussian_binomial, subspace_count


@dataclass
class CheckOutcome:
    key: str
    title: str
    passed: bool
    detail: str
    seconds: float
    failures: list = dc_field(default_factory=list)
    warnings: list = dc_field(default_factory=list)

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.key}: {self.title} -- {self.detail}"


@dataclass
class SuiteResult:
    scope: str
    seed: int
    outcomes: list

    @property
    def passed(self) -> bool:
        return all(o.passed for o in self.outcomes)

    @property
    def warnings(self) -> list:
        out = []
        for o in self.outcomes:
            out.extend(o.warnings)
        return out


class SuiteRunner:
    def __init__(self, scope: str = "full", seed: int = 0, progress=None):
        if scope not in ("quick", "full"):
            raise ValueError(f"unknown scope {scope!r}")
        self.scope = scope
        self.seed = seed
        self._progress = progress
        self._props: dict = {}
        self._corpora: dict = {}
        self.false_verdicts: list = []  # (label, algebra, check name, witness)

    def _note(self, msg: str):
        if self._progress:
            self._progress(msg)

    # -- per-algebra property cache -------------------------------------

    def prop(self, algebra: LeibnizAlgebra, key: str):
        cache = self._props.setdefault(algebra, {})
        if key not in cache:
            lat = build_lattice(algebra)
            if key == "modular":
                verdict = lat.check_modular_algebra()
            elif key == "modular_lattice":
                verdict = lat.check_modular_lattice()
            elif key == "weak_quasi_ideal":
                verdict = lat.check_weak_quasi_ideal()
            elif key == "bracket_condition":
                verdict = check_bracket_condition(algebra)
            elif key == "upper_semimodular":
                verdict = lat.check_upper_semimodular()
            elif key == "lower_semimodular":
                verdict = lat.check_lower_semimodular()
            elif key == "jordan_dedekind":
                verdict = lat.check_jordan_dedekind()
            elif key == "dually_atomistic":
                verdict = lat.check_dually_atomistic()
            else:
                raise KeyError(key)
            if verdict.is_false:
                self.false_verdicts.append((str(algebra), algebra, key,
                                            verdict.witness))
            cache[key] = verdict
        return cache[key]

    # -- corpora ---------------------------------------------------------

    def corpus(self, name: str):
        if name in self._corpora:
            return self._corpora[name]
        g2, g3, g5 = GF(2), GF(3), GF(5)
        if name == "dim2_gf2":
            out = families.all_dim2_algebras(g2)
        elif name == "forms_gf3":
            out = families.all_form_algebras(g3)
        elif name == "forms_gf5":
            out = (families.all_form_algebras(g5) if self.scope == "full"
                   else families.all_form_algebras(g5)[:125])
        elif name == "cyclic_gf3_small":
            out = tuple(p for n in (2, 3) for p in all_presentations(g3, n))
        elif name == "cyclic_gf5":
            ns = (2, 3, 4) if self.scope == "full" else (2, 3)
            out = tuple(p for n in ns for p in all_presentations(g5, n))
        elif name == "random_dim3":
            count = 50 if self.scope == "full" else 10
            out = (families.random_dim3_algebras(g2, count, self.seed)
                   + families.random_dim3_algebras(g3, count, self.seed + 1))
        elif name == "named_gf3":
            out = (
                families.abelian(g3, 1),
                families.abelian(g3, 2),
                families.abelian(g3, 3),
                families.heisenberg(g3),
                families.almost_abelian(g3, 1),
                families.almost_abelian(g3, 2),
                families.identity_action_family(g3, 1),
                families.identity_action_family(g3, 2),
                families.identity_action_family(g3, 3),
                families.four_dim_nilpotent(g3, 14),
                families.four_dim_nilpotent(g3, 15),
                families.four_dim_nilpotent(g3, 16),
                families.four_dim_nilpotent(g3, 17, alpha=1),
                families.four_dim_nilpotent(g3, 18, alpha=1),
                families.four_dim_nilpotent(g3, 19),
                families.a25(g3),
                families.extraspecial_unit_form(g3),
                families.add_center(families.extraspecial_unit_form(g3), 1),
            )
        elif name == "main":
            # the GF(3)/GF(5), dim <= 4 sweep corpus behind the solvable
            # equivalences and the semimodularity implications
            out = (tuple(self.corpus("named_gf3"))
                   + tuple(self.corpus("forms_gf3"))
                   + tuple(p.algebra for p in self.corpus("cyclic_gf3_small"))
                   + tuple(self.corpus("forms_gf5"))
                   + tuple(p.algebra for p in self.corpus("cyclic_gf5"))
                   + tuple(a for a in self.corpus("random_dim3")
                           if a.field == GF(3)))
        else:
            raise KeyError(name)
        self._corpora[name] = out
        return out

    # -- criteria -----------------------------------------------------------

    def check_validator_orientation(self) -> CheckOutcome:
        """Right-identity validator on the printed catalog tables."""
        t0 = time.time()
        g3 = GF(3)
        fails = []
        printed = families.a25_printed(g3)
        viol = printed.validate()
        if viol is None or (viol.i, viol.j, viol.k) != (0, 0, 0):
            fails.append(f"printed a25 witness wrong: {viol}")
        elif viol.lhs != (0, 0, 0, 1) or any(viol.rhs):
            fails.append(f"printed a25 lhs/rhs wrong: {viol}")
        else:
            self.false_verdicts.append(
                ("a25 printed", printed, "leibniz_identity",
                 {"kind": "leibniz_identity", "triple": [viol.i, viol.j, viol.k],
                  "lhs": viol.lhs, "rhs": viol.rhs}))
        if printed.opposite().validate() is not None:
            fails.append("a25 opposite fails the identity")
        for idx, alpha in ((14, None), (15, None), (16, None), (17, 1),
                           (18, 1), (19, None)):
            try:
                families.four_dim_nilpotent(g3, idx, alpha)
            except ValueError as exc:
                fails.append(f"catalog {idx} invalid in both orientations: {exc}")
        return CheckOutcome(
            "validator", "identity validator and catalog orientations",
            not fails, "printed a25 fails at (x1,x1,x1); opposite and "
            "catalog 14-19 validate", time.time() - t0, fails)

    def check_cyclic_maximals(self) -> CheckOutcome:
        """Null-space maximal subalgebras against lattice co-atoms, GF(5)."""
        t0 = time.time()
        fails = []
        checked = 0
        for pres in self.corpus("cyclic_gf5"):
            theo = {m.rows for m in pres.maximal_subalgebras()}
            lat = build_lattice(pres.algebra)
            coatoms = {m.rows for m in lat.maximal_subalgebras()}
            s = pres.factorization.distinct_count
            if theo != coatoms:
                fails.append(f"{pres}: null spaces != co-atoms")
            if len(theo) != s:
                fails.append(f"{pres}: {len(theo)} maximals but s={s}")
            checked += 1
        return CheckOutcome(
            "cyclic_maximals", "cyclic maximal subalgebras match lattice co-atoms",
            not fails, f"{checked} presentations, exact set equality",
            time.time() - t0, fails)

    def check_distributive_two_dim(self) -> CheckOutcome:
        """The two 2-dim cyclic algebras are distributive; 2-dim abelian over
        GF(2) is not (diamond of three lines)."""
        t0 = time.time()
        fails = []
        for p in (2, 3, 5):
            for alphas in ((0,), (1,)):
                pres = CyclicPresentation.make(GF(p), alphas)
                lat = build_lattice(pres.algebra)
                if not lat.check_distributive().is_true:
                    fails.append(f"cyclic {alphas} over GF({p}) not distributive")
        ab = families.abelian(GF(2), 2)
        lat = build_lattice(ab)
        verdict = lat.check_distributive()
        if not verdict.is_false:
            fails.append("2-dim abelian over GF(2) reported distributive")
        else:
            if len(lat) != 5:
                fails.append(f"2-dim abelian lattice has {len(lat)} nodes, not 5")
            self.false_verdicts.append(("abelian dim2 gf2", ab, "distributive",
                                        verdict.witness))
        return CheckOutcome(
            "distributive", "distributive two-dimensional classification",
            not fails, "both cyclics distributive over GF(2,3,5); abelian "
            "plane is the 5-node diamond", time.time() - t0, fails)

    def check_nilpotent_cyclic_usm(self) -> CheckOutcome:
        """Nilpotent cyclic algebras are upper semi-modular (n = 2,3,4)."""
        t0 = time.time()
        fails = []
        for p in (3, 5):
            for n in (2, 3, 4):
                pres = CyclicPresentation.make(GF(p), (0,) * (n - 1))
                if not self.prop(pres.algebra, "upper_semimodular").is_true:
                    fails.append(f"nilpotent cyclic n={n} over GF({p}) not USM")
        return CheckOutcome(
            "nilcyclic_usm", "nilpotent cyclic algebras are upper semi-modular",
            not fails, "n = 2,3,4 over GF(3) and GF(5)", time.time() - t0, fails)

    def check_cyclic_modularity_classification(self) -> CheckOutcome:
        """Shape classification agrees with the lattice modularity verdict on
        every GF(5) presentation of dimension <= 4."""
        t0 = time.time()
        fails = []
        checked = 0
        for pres in self.corpus("cyclic_gf5"):
            expected = pres.classify_modular() != "not_modular"
            actual = self.prop(pres.algebra, "modular").is_true
            if expected != actual:
                fails.append(f"{pres}: classified "
                             f"{pres.classify_modular()} but lattice says {actual}")
            checked += 1
        g5 = GF(5)
        spot = {
            (0, 0): "modular_nilpotent",
            (0, 1): "modular_solvable",
            (1, 0): "not_modular",
        }
        for alphas, want in spot.items():
            got = CyclicPresentation.make(g5, alphas).classify_modular()
            if got != want:
                fails.append(f"alphas {alphas}: classified {got}, expected {want}")
        return CheckOutcome(
            "cyclic_modularity", "cyclic modularity classification vs lattice",
            not fails, f"{checked} presentations in agreement",
            time.time() - t0, fails)

    def _four_way(self, label: str, algebra: LeibnizAlgebra, fails, warnings):
        verdicts = {
            "modular": self.prop(algebra, "modular"),
            "weak_quasi_ideal": self.prop(algebra, "weak_quasi_ideal"),
            "bracket_condition": self.prop(algebra, "bracket_condition"),
            "modular_lattice": self.prop(algebra, "modular_lattice"),
        }
        statuses = {k: v.status for k, v in verdicts.items()}
        if len(set(statuses.values())) == 1:
            return
        others = {k: v for k, v in statuses.items() if k != "modular"}
        if len(set(others.values())) == 1:
            ss, _ = algebra.supersolvable()
            if ss != "true":
                warnings.append(f"{label}: modular identities diverge from the "
                                f"other three on a non-supersolvable algebra: "
                                f"{statuses}")
                return
        fails.append(f"{label}: four-way divergence {statuses}")

    def check_modularity_equivalence(self) -> CheckOutcome:
        """Modular identities == weak quasi-ideal == element bracket
        condition == lattice modular law, across the equivalence corpus."""
        t0 = time.time()
        fails: list = []
        warnings: list = []
        count = 0
        for label, algebras in (
            ("dim2 gf2", self.corpus("dim2_gf2")),
            ("form gf3", self.corpus("forms_gf3")),
            ("form gf5", self.corpus("forms_gf5")),
            ("cyclic gf3", tuple(p.algebra for p in self.corpus("cyclic_gf3_small"))),
            ("random dim3", self.corpus("random_dim3")),
        ):
            for i, algebra in enumerate(algebras):
                self._four_way(f"{label}[{i}]", algebra, fails, warnings)
                count += 1
            self._note(f"four-way equivalence: swept {label}")
        return CheckOutcome(
            "modularity_equivalence",
            "four-way modularity equivalence", not fails,
            f"{count} algebras swept, {len(warnings)} logged divergences",
            time.time() - t0, fails, warnings)

    def check_extraspecial_criterion(self) -> CheckOutcome:
        """On central-extension algebras with one-dimensional center:
        USM == modular == (square-zero set is an abelian ideal)."""
        t0 = time.time()
        fails = []
        count = 0
        for label, algebras in (("form gf3", self.corpus("forms_gf3")),
                                ("form gf5", self.corpus("forms_gf5"))):
            for i, algebra in enumerate(algebras):
                if not families.is_extraspecial(algebra):
                    continue
                count += 1
                usm = self.prop(algebra, "upper_semimodular").is_true
                mod = self.prop(algebra, "modular").is_true
                jres = families.square_zero_set(algebra)
                j_ok = jres.status == "subspace" and bool(jres.abelian_ideal)
                if jres.status == "not_subspace":
                    self.false_verdicts.append((f"{label}[{i}]", algebra,
                                                "square_zero", jres.witness))
                if not (usm == mod == j_ok):
                    fails.append(f"{label}[{i}]: usm={usm} modular={mod} "
                                 f"square_zero_abelian_ideal={j_ok}")
        g3, g5 = GF(3), GF(5)
        unit3 = families.extraspecial_unit_form(g3)
        if not self.prop(unit3, "modular").is_true:
            fails.append("unit-form algebra over GF(3) not modular")
        j3 = families.square_zero_set(unit3)
        if not (j3.status == "subspace" and j3.subspace.rows == ((0, 0, 1),)
                and j3.abelian_ideal):
            fails.append(f"unit-form GF(3) square-zero set wrong: {j3}")
        unit5 = families.extraspecial_unit_form(g5)
        if not self.prop(unit5, "modular").is_false:
            fails.append("unit-form algebra over GF(5) reported modular")
        j5 = families.square_zero_set(unit5)
        if j5.status != "not_subspace" or j5.witness["sum_square"] != (0, 0, 4):
            fails.append(f"unit-form GF(5) square-zero witness wrong: {j5}")
        return CheckOutcome(
            "extraspecial", "extraspecial USM/modular/square-zero criterion",
            not fails, f"{count} extraspecial algebras; unit-form checks at "
            "GF(3) and GF(5)", time.time() - t0, fails)

    def check_solvable_equivalence(self) -> CheckOutcome:
        """Solvable, dim <= 4, GF(3)/GF(5): lower semi-modular ==
        Jordan-Dedekind == supersolvable."""
        t0 = time.time()
        fails = []
        count = 0
        for i, algebra in enumerate(self.corpus("main")):
            if not algebra.is_solvable:
                continue
            count += 1
            lsm = self.prop(algebra, "lower_semimodular").is_true
            jd = self.prop(algebra, "jordan_dedekind").is_true
            ss = algebra.supersolvable()[0] == "true"
            if not (lsm == jd == ss):
                fails.append(f"main[{i}]: lsm={lsm} jordan_dedekind={jd} "
                             f"supersolvable={ss}")
        return CheckOutcome(
            "solvable_equivalence",
            "solvable LSM / graded-chains / supersolvable equivalence",
            not fails, f"{count} solvable corpus algebras", time.time() - t0,
            fails)

    def check_dually_atomistic_families(self) -> CheckOutcome:
        """Identity-action families are dually atomistic; Heisenberg is not
        and has nonzero Frattini ideal; dually atomistic implies
        Frattini-free across the corpus."""
        t0 = time.time()
        g3 = GF(3)
        fails = []
        for r in (1, 2, 3):
            fam = families.identity_action_family(g3, r)
            if not self.prop(fam, "dually_atomistic").is_true:
                fails.append(f"identity-action family r={r} not dually atomistic")
        heis = families.heisenberg(g3)
        if not self.prop(heis, "dually_atomistic").is_false:
            fails.append("Heisenberg reported dually atomistic")
        phi = build_lattice(heis).frattini_ideal()
        if phi.rows != ((0, 0, 1),):
            fails.append(f"Heisenberg Frattini ideal wrong: {phi.rows}")
        count = 0
        for i, algebra in enumerate(self.corpus("main")):
            if self.prop(algebra, "dually_atomistic").is_true:
                count += 1
                if build_lattice(algebra).frattini_ideal().dim != 0:
                    fails.append(f"main[{i}]: dually atomistic but not "
                                 f"Frattini-free")
        return CheckOutcome(
            "dually_atomistic", "dually atomistic families and Frattini-free",
            not fails, f"families verified; {count} dually atomistic corpus "
            "algebras all Frattini-free", time.time() - t0, fails)

    def check_modular_families(self) -> CheckOutcome:
        """Central sums and the catalog: unit-form + center and a25 are
        modular over GF(3); a14 is not, with the element witness (x1, x2)."""
        t0 = time.time()
        g3 = GF(3)
        fails = []
        plus = families.add_center(families.extraspecial_unit_form(g3), 1)
        if not self.prop(plus, "modular").is_true:
            fails.append("unit-form + central line not modular over GF(3)")
        if not self.prop(families.a25(g3), "modular").is_true:
            fails.append("a25 (opposite orientation) not modular over GF(3)")
        a14 = families.four_dim_nilpotent(g3, 14)
        if not self.prop(a14, "modular").is_false:
            fails.append("a14 reported modular over GF(3)")
        bc = self.prop(a14, "bracket_condition")
        if not bc.is_false:
            fails.append("a14 element bracket condition reported true")
        x1, x2 = a14.basis_vector(0), a14.basis_vector(1)
        hull = a14.closure([x1]).sum(a14.closure([x2]))
        prod = a14.bracket(x1, x2)
        if hull.rows != ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0)):
            fails.append(f"<x1> + <x2> basis wrong: {hull.rows}")
        if prod != (0, 0, 0, 1) or hull.contains_vector(prod):
            fails.append("the (x1, x2) witness does not re-check")
        return CheckOutcome(
            "modular_families", "modular families and the a14 witness",
            not fails, "central sums modular; a14 refuted by [x1,x2] = x4 "
            "outside span{x1,x2,x3}", time.time() - t0, fails)

    def check_usm_implies_supersolvable(self) -> CheckOutcome:
        """Upper semi-modular corpus algebras are supersolvable."""
        t0 = time.time()
        fails = []
        count = 0
        for i, algebra in enumerate(self.corpus("main")):
            if self.prop(algebra, "upper_semimodular").is_true:
                count += 1
                if algebra.supersolvable()[0] != "true":
                    fails.append(f"main[{i}]: USM but not supersolvable")
        return CheckOutcome(
            "usm_supersolvable", "upper semi-modular implies supersolvable",
            not fails, f"{count} USM corpus algebras", time.time() - t0, fails)

    def check_infrastructure(self) -> CheckOutcome:
        """Subspace counts, factorization round-trips, witness replay."""
        t0 = time.time()
        fails = []
        for q in (2, 3, 5):
            for n in range(5):
                want = sum(gaussian_binomial(n, k, q) for k in range(n + 1))
                got = sum(1 for _ in enumerate_subspaces(GF(q), n))
                if got != want or want != subspace_count(n, q):
                    fails.append(f"subspace count mismatch n={n} q={q}")
        rng = random.Random(self.seed)
        trips = 0
        for _ in range(200):
            q = rng.choice((2, 3, 5))
            field = GF(q)
            deg = rng.randint(1, 6)
            coeffs = [rng.randrange(q) for _ in range(deg)] + [
                rng.randrange(1, q)]
            poly = Polynomial.make(field, coeffs)
            fac = factor(poly)
            if fac.expand() != poly:
                fails.append(f"factor round-trip failed: {poly} over GF({q})")
                continue
            for irr, _mult in fac.factors:
                if irr.degree() in (2, 3):
                    if any(irr.evaluate(a) == 0 for a in field.elements()):
                        fails.append(f"reducible factor reported: {irr}")
            trips += 1
        replayed = 0
        for label, algebra, name, witness in self.false_verdicts:
            if witness is None:
                fails.append(f"{label}: false {name} verdict without witness")
                continue
            if not replay_witness(algebra, witness):
                fails.append(f"{label}: {name} witness does not replay")
            replayed += 1
        return CheckOutcome(
            "infrastructure", "counts, factorization round-trip, replay",
            not fails, f"{trips} factorizations reconstructed; "
            f"{replayed} stored witnesses replayed", time.time() - t0, fails)

    # -- driver -------------------------------------------------------------

    CRITERIA = (
        ("validator", "check_validator_orientation"),
        ("cyclic_maximals", "check_cyclic_maximals"),
        ("distributive", "check_distributive_two_dim"),
        ("nilcyclic_usm", "check_nilpotent_cyclic_usm"),
        ("cyclic_modularity", "check_cyclic_modularity_classification"),
        ("modularity_equivalence", "check_modularity_equivalence"),
        ("extraspecial", "check_extraspecial_criterion"),
        ("solvable_equivalence", "check_solvable_equivalence"),
        ("dually_atomistic", "check_dually_atomistic_families"),
        ("modular_families", "check_modular_families"),
        ("usm_supersolvable", "check_usm_implies_supersolvable"),
        ("infrastructure", "check_infrastructure"),
    )

    def run(self, keys=None) -> SuiteResult:
        outcomes = []
        for key, method in self.CRITERIA:
            if keys is not None and key not in keys:
                continue
            self._note(f"running {key}")
            outcomes.append(getattr(self, method)())
        return SuiteResult(self.scope, self.seed, outcomes)


def run_suite(scope: str = "full", seed: int = 0, keys=None,
              progress=None) -> SuiteResult:
    return SuiteRunner(scope=scope, seed=seed, progress=progress).run(keys)
