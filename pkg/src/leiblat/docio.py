"""JSON algebra documents, machine-readable reports, and witness replay.

Scalars travel as strings ("3" for GF(p) residues, "num/den" or "int" over
the rationals), so documents contain no floats anywhere.  Every "false"
verdict's witness is self-contained (coordinates and node bases) and the
replay functions re-check it directly against the algebra, without
re-running the sweep that found it.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field as dc_field

from .algebra import InvalidAlgebraError, LeibnizAlgebra
from .exactfield import Field, GF, QQ
from .linalg import Subspace, enumerate_subspaces

TOOL_NAME = "leiblat"
TOOL_VERSION = "0.1.0"


class DocumentError(Exception):
    """Malformed algebra document or report."""


# ---------------------------------------------------------------------------
# fields and documents
# ---------------------------------------------------------------------------

def field_to_json(field: Field) -> dict:
    if field.is_finite:
        return {"kind": "gf", "p": field.p}
    return {"kind": "rational"}


def field_from_json(obj) -> Field:
    try:
        kind = obj["kind"]
    except (TypeError, KeyError):
        raise DocumentError(f"bad field descriptor: {obj!r}") from None
    if kind == "gf":
        try:
            return GF(int(obj["p"]))
        except Exception as exc:
            raise DocumentError(f"bad finite field descriptor: {obj!r}") from exc
    if kind == "rational":
        return QQ
    raise DocumentError(f"unknown field kind: {kind!r}")


def parse_field_tag(tag: str) -> Field:
    """CLI field tags: gf2, gf(7), q, qq, rational."""
    t = tag.strip().lower()
    if t in ("q", "qq", "rational"):
        return QQ
    if t.startswith("gf"):
        digits = t[2:].strip("()")
        try:
            return GF(int(digits))
        except Exception as exc:
            raise DocumentError(f"bad field tag: {tag!r}") from exc
    raise DocumentError(f"bad field tag: {tag!r}")


def algebra_to_document(algebra: LeibnizAlgebra) -> dict:
    f = algebra.field
    return {
        "field": field_to_json(f),
        "dim": algebra.dim,
        "basis": list(algebra.basis_names),
        "table": [[[f.format(c) for c in row] for row in trow]
                  for trow in algebra.table],
    }


def document_to_algebra(doc, require_valid: bool = True) -> LeibnizAlgebra:
    try:
        field = field_from_json(doc["field"])
        dim = int(doc["dim"])
        table = doc["table"]
        names = doc.get("basis") or [f"e{i + 1}" for i in range(dim)]
    except (TypeError, KeyError, ValueError) as exc:
        raise DocumentError(f"malformed algebra document: {exc}") from exc
    if len(names) != dim:
        raise DocumentError("basis name count does not match dim")
    if len(table) != dim:
        raise DocumentError("table is not dim x dim x dim")
    try:
        parsed = [[[field.parse(str(c)) for c in row] for row in trow]
                  for trow in table]
        algebra = LeibnizAlgebra.from_table(field, parsed, tuple(names))
    except DocumentError:
        raise
    except Exception as exc:
        raise DocumentError(f"malformed algebra document: {exc}") from exc
    if require_valid:
        viol = algebra.identity_violation
        if viol is not None:
            raise InvalidAlgebraError(viol)
    return algebra


def document_digest(doc) -> str:
    canon = json.dumps(doc, sort_keys=True, separators=(",", ":"))
    return "sha256:" + hashlib.sha256(canon.encode()).hexdigest()


# ---------------------------------------------------------------------------
# witness (de)serialization
# ---------------------------------------------------------------------------

_VEC_KEYS = {"x", "y", "sum", "product", "lhs", "rhs", "element", "sum_square"}
_ROWS_KEYS = {"U", "V", "W", "B", "a", "b", "c", "meet", "join", "hull_x",
              "hull_y", "sum_basis", "node", "intersection", "lower", "upper"}
_ROWSLIST_KEYS = {"maximals_above", "short_chain", "long_chain"}


def witness_to_json(field: Field, witness: dict) -> dict:
    out = {}
    for key, val in witness.items():
        if key in _VEC_KEYS:
            out[key] = [field.format(c) for c in val]
        elif key in _ROWS_KEYS:
            out[key] = [[field.format(c) for c in row] for row in val]
        elif key in _ROWSLIST_KEYS:
            out[key] = [[[field.format(c) for c in row] for row in rows]
                        for rows in val]
        else:
            out[key] = val
    return out


def witness_from_json(field: Field, obj: dict) -> dict:
    out = {}
    for key, val in obj.items():
        if key in _VEC_KEYS:
            out[key] = tuple(field.parse(str(c)) for c in val)
        elif key in _ROWS_KEYS:
            out[key] = tuple(tuple(field.parse(str(c)) for c in row) for row in val)
        elif key in _ROWSLIST_KEYS:
            out[key] = [tuple(tuple(field.parse(str(c)) for c in row) for row in rows)
                        for rows in val]
        else:
            out[key] = val
    return out


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

@dataclass
class CheckEntry:
    name: str
    status: str  # "true" | "false" | "unknown"
    witness: dict | None = None
    note: str | None = None
    seconds: float = 0.0


@dataclass
class Report:
    document: dict
    checks: list = dc_field(default_factory=list)
    seed: int | None = None

    def add(self, name: str, verdict, seconds: float = 0.0):
        self.checks.append(CheckEntry(name, verdict.status, verdict.witness,
                                      verdict.note, seconds))

    @property
    def all_pass(self) -> bool:
        return all(entry.status != "false" for entry in self.checks)

    def to_json(self) -> dict:
        field = field_from_json(self.document["field"])
        return {
            "tool": f"{TOOL_NAME} {TOOL_VERSION}",
            "input_digest": document_digest(self.document),
            "input": self.document,
            "seed": self.seed,
            "checks": [
                {
                    "name": e.name,
                    "status": e.status,
                    "witness": (witness_to_json(field, e.witness)
                                if e.witness else None),
                    "note": e.note,
                    "seconds": round(e.seconds, 6),
                }
                for e in self.checks
            ],
        }

    @staticmethod
    def from_json(obj) -> "Report":
        try:
            doc = obj["input"]
            field = field_from_json(doc["field"])
            report = Report(doc, seed=obj.get("seed"))
            for e in obj["checks"]:
                report.checks.append(CheckEntry(
                    e["name"], e["status"],
                    witness_from_json(field, e["witness"]) if e.get("witness") else None,
                    e.get("note"), e.get("seconds", 0.0)))
        except (TypeError, KeyError) as exc:
            raise DocumentError(f"malformed report: {exc}") from exc
        return report


# ---------------------------------------------------------------------------
# witness replay
# ---------------------------------------------------------------------------

def _sub(algebra, rows) -> Subspace:
    return Subspace.from_vectors(algebra.field, algebra.dim, rows)


def _is_maximal_in(algebra, sub: Subspace, sup: Subspace) -> bool:
    """X maximal in Y, decided locally: adjoining any vector of Y \\ X
    generates all of Y."""
    if not (sup.contains(sub) and sub.dim < sup.dim):
        return False
    for v in sup.vectors():
        if not sub.contains_vector(v):
            if algebra.closure(list(sub.rows) + [v]) != sup:
                return False
    return True


def _subalgebras_above(algebra, base: Subspace):
    for s in enumerate_subspaces(algebra.field, algebra.dim):
        if s.contains(base) and algebra.is_subalgebra(s):
            yield s


def replay_witness(algebra: LeibnizAlgebra, witness: dict) -> bool:
    """Re-check a stored violation witness directly against the algebra.

    Returns True when the witness still demonstrates the violation.
    """
    kind = witness.get("kind")
    handler = _REPLAY_HANDLERS.get(kind)
    if handler is None:
        raise DocumentError(f"unknown witness kind: {kind!r}")
    return handler(algebra, witness)


def _replay_leibniz(algebra, w):
    i, j, k = w["triple"]
    tab = algebra.table
    f = algebra.field
    lhs = algebra.bracket(algebra.basis_vector(i), tab[j][k])
    a = algebra.bracket(tab[i][j], algebra.basis_vector(k))
    b = algebra.bracket(tab[i][k], algebra.basis_vector(j))
    rhs = tuple(f.sub(x, y) for x, y in zip(a, b))
    return lhs != rhs and lhs == tuple(w["lhs"]) and rhs == tuple(w["rhs"])


def _replay_modular_identity(algebra, w):
    u, v, ww = (_sub(algebra, w[key]) for key in ("U", "V", "W"))
    for s in (u, v, ww):
        if not algebra.is_subalgebra(s):
            return False
    if w["identity"] == 1:
        if not ww.contains(v):
            return False
        lhs = algebra.closure(u.sum(v)).intersect(ww)
        rhs = algebra.closure(v.sum(u.intersect(ww)))
    else:
        if not ww.contains(u):
            return False
        lhs = algebra.closure(u.sum(v)).intersect(ww)
        rhs = algebra.closure(v.intersect(ww).sum(u))
    return lhs != rhs


def _replay_modular_law(algebra, w):
    a, b, c = (_sub(algebra, w[key]) for key in ("a", "b", "c"))
    if not c.contains(a):
        return False
    lhs = algebra.closure(a.sum(b.intersect(c)))
    rhs = algebra.closure(a.sum(b)).intersect(c)
    return lhs != rhs


def _replay_distributive(algebra, w):
    x, y, z = (_sub(algebra, w[key]) for key in ("x", "y", "z"))
    if w["law"] == "meet_over_join":
        lhs = x.intersect(algebra.closure(y.sum(z)))
        rhs = algebra.closure(x.intersect(y).sum(x.intersect(z)))
    else:
        lhs = algebra.closure(x.sum(y.intersect(z)))
        rhs = algebra.closure(x.sum(y)).intersect(algebra.closure(x.sum(z)))
    return lhs != rhs


def _replay_semimodular(algebra, w):
    u, b = _sub(algebra, w["U"]), _sub(algebra, w["B"])
    meet = u.intersect(b)
    join = algebra.closure(u.sum(b))
    if meet.rows != tuple(w["meet"]) or join.rows != tuple(w["join"]):
        return False
    if w["direction"] == "upper":
        return (_is_maximal_in(algebra, meet, b)
                and not _is_maximal_in(algebra, u, join))
    return (_is_maximal_in(algebra, u, join)
            and not _is_maximal_in(algebra, meet, b))


def _replay_dually_atomistic(algebra, w):
    node = _sub(algebra, w["node"])
    if not algebra.is_subalgebra(node):
        return False
    full = algebra.full_subspace()
    maximals = [s for s in _subalgebras_above(algebra, node)
                if s.dim < algebra.dim and _is_maximal_in(algebra, s, full)]
    inter = full
    for m in maximals:
        inter = inter.intersect(m)
    return inter != node and inter.rows == tuple(w["intersection"])


def _replay_graded_interval(algebra, w):
    lower, upper = _sub(algebra, w["lower"]), _sub(algebra, w["upper"])

    def chain_ok(chain_rows):
        chain = [_sub(algebra, rows) for rows in chain_rows]
        if chain[0] != lower or chain[-1] != upper:
            return False
        return all(_is_maximal_in(algebra, a, b)
                   for a, b in zip(chain, chain[1:]))

    short, long_ = w["short_chain"], w["long_chain"]
    return (len(short) != len(long_)
            and chain_ok(short) and chain_ok(long_))


def _replay_weak_quasi_ideal(algebra, w):
    u, v = _sub(algebra, w["U"]), _sub(algebra, w["V"])
    if not (algebra.is_subalgebra(u) and algebra.is_subalgebra(v)):
        return False
    if not (u.contains_vector(w["x"]) and v.contains_vector(w["y"])):
        return False
    prod = tuple(w["product"])
    if prod not in (algebra.bracket(w["x"], w["y"]), algebra.bracket(w["y"], w["x"])):
        return False
    return not u.sum(v).contains_vector(prod)


def _replay_bracket_condition(algebra, w):
    x, y = tuple(w["x"]), tuple(w["y"])
    prod = algebra.bracket(x, y)
    if prod != tuple(w["product"]):
        return False
    hull = algebra.closure([x]).sum(algebra.closure([y]))
    return not hull.contains_vector(prod)


def _replay_square_zero(algebra, w):
    x, y = tuple(w["x"]), tuple(w["y"])
    s = tuple(algebra.field.add(a, b) for a, b in zip(x, y))
    return (not any(algebra.square(x)) and not any(algebra.square(y))
            and s == tuple(w["sum"]) and any(algebra.square(s)))


_REPLAY_HANDLERS = {
    "leibniz_identity": _replay_leibniz,
    "modular_identity": _replay_modular_identity,
    "modular_law": _replay_modular_law,
    "distributive_law": _replay_distributive,
    "semimodular": _replay_semimodular,
    "dually_atomistic": _replay_dually_atomistic,
    "graded_interval": _replay_graded_interval,
    "weak_quasi_ideal": _replay_weak_quasi_ideal,
    "bracket_condition": _replay_bracket_condition,
    "square_zero": _replay_square_zero,
}


def replay_report(report: Report) -> list:
    """Re-check every false verdict in a report against its stored document.

    Returns a list of (check name, confirmed) pairs for the false verdicts.
    """
    algebra = document_to_algebra(report.document, require_valid=False)
    out = []
    for entry in report.checks:
        if entry.status != "false" or entry.witness is None:
            continue
        out.append((entry.name, replay_witness(algebra, entry.witness)))
    return out
