"""Both sides of every tracked identity, computed along separate code paths.

The left-hand side always comes from enumeration (of ASMs, matchings or
lattice paths); the right-hand side from a Markov chain, a product formula or
a determinant.  Each check has a size ceiling; above it the enumeration side
is not attempted and the report is marked ``skipped``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from .enumeration import SymmetryClass, count_class, count_formula_A, recurrence_ratio_A, refined_polynomial
from .errors import UnknownIdentity
from .linkpat import pattern_counts, rotate_word, stationary_distribution, transition_matrix
from . import tilings

VERIFIED = "verified"
REFUTED = "refuted"
SKIPPED = "skipped"

CONJECTURES = {"RS", "DeGier", "QtPerPattern", "QqtCount", "QqtPerPattern", "RefinedQqt"}

# largest size parameter each check runs by default
CEILINGS = {
    "RS": 6,
    "DeGier": 8,
    "QtProduct": 3,
    "QtPerPattern": 3,
    "QqtCount": 3,
    "QqtPerPattern": 2,
    "RefinedQqt": 3,
    "RotationInvariance": 6,
    "Thm6": 2,
    "Thm7": 6,
    "Recurrence": 10,
    "CiucuInstance": 5,
}

# sizes (not size parameters) for rotation invariance on the symmetric classes
_ROTATION_CEILING = {"plain": 6, "ht": 8, "qt": 12, "qqt": 10}


def _fmt(value: Any) -> Any:
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, (int, Fraction)):
        return str(value)
    if isinstance(value, (list, tuple)):
        return [_fmt(v) for v in value]
    if isinstance(value, dict):
        return {k: _fmt(v) for k, v in value.items()}
    return value


@dataclass
class VerificationReport:
    identity: str
    size: int
    status: str
    lhs: Any = None
    rhs: Any = None
    per_pattern: list[tuple[str, Any, Any]] = field(default_factory=list)
    witness: dict | None = None
    elapsed_ms: int = 0
    note: str = ""

    @property
    def kind(self) -> str:
        return "conjecture" if self.identity in CONJECTURES else "theorem"

    def to_record(self, timing: bool = True) -> dict:
        rec = {
            "identity": self.identity,
            "size": self.size,
            "status": self.status,
            "kind": self.kind,
            "lhs": _fmt(self.lhs),
            "rhs": _fmt(self.rhs),
            "per_pattern": [{"word": w, "lhs": _fmt(a), "rhs": _fmt(b)} for w, a, b in self.per_pattern],
        }
        if self.witness is not None:
            rec["witness"] = _fmt(self.witness)
        if self.note:
            rec["note"] = self.note
        if timing:
            rec["elapsed_ms"] = self.elapsed_ms
        return rec

    def summary(self) -> str:
        head = f"{self.identity:<18} {self.size:>4}  {self.status:<8}"
        if self.status == SKIPPED:
            return f"{head}  {self.note}"
        if self.status == REFUTED and self.witness:
            return f"{head}  witness {_fmt(self.witness)}"
        return f"{head}  lhs={_fmt(self.lhs)} rhs={_fmt(self.rhs)}"


def _compare(identity: str, size: int, lhs: Any, rhs: Any, rows: list[tuple[str, Any, Any]], note: str = "") -> VerificationReport:
    witness = None
    for word, a, b in rows:
        if a != b:
            witness = {"word": word, "lhs": a, "rhs": b}
            break
    if witness is None and lhs != rhs:
        witness = {"word": None, "lhs": lhs, "rhs": rhs}
    status = VERIFIED if witness is None else REFUTED
    return VerificationReport(identity, size, status, lhs, rhs, rows, witness, note=note)


def _skip(identity: str, size: int, reason: str, rhs: Any = None) -> VerificationReport:
    return VerificationReport(identity, size, SKIPPED, None, rhs, note=reason)


def _timed(fn: Callable[..., VerificationReport]) -> Callable[..., VerificationReport]:
    def wrapper(*args, **kwargs) -> VerificationReport:
        start = time.perf_counter()
        report = fn(*args, **kwargs)
        report.elapsed_ms = int((time.perf_counter() - start) * 1000)
        return report

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def _over(identity: str, size: int, force: bool) -> bool:
    return not force and size > CEILINGS[identity]


def _ceiling_note(identity: str) -> str:
    return f"above ceiling {CEILINGS[identity]} (use force to run)"


# --- link-pattern identities -----------------------------------------------------------


@_timed
def verify_rs(N: int, force: bool = False) -> VerificationReport:
    """Stationary distribution of the plain chain against per-pattern counts / A(N)."""
    if _over("RS", N, force):
        return _skip("RS", N, _ceiling_note("RS"))
    m = transition_matrix(N, SymmetryClass.PLAIN)
    mu = stationary_distribution(m)
    counts = pattern_counts(N, SymmetryClass.PLAIN).counts
    total = count_formula_A(N)
    rows = [(w, mu[k], Fraction(counts[w], total)) for k, w in enumerate(m.states)]
    return _compare("RS", N, sum(mu), sum(r[2] for r in rows), rows)


@_timed
def verify_degier(N: int, force: bool = False) -> VerificationReport:
    """Half-turn chain against half-turn per-pattern counts / A_HT(N)."""
    if _over("DeGier", N, force):
        return _skip("DeGier", N, _ceiling_note("DeGier"))
    m = transition_matrix(N, SymmetryClass.HALF_TURN)
    mu = stationary_distribution(m)
    dist = pattern_counts(N, SymmetryClass.HALF_TURN)
    rows = [(w, mu[k], Fraction(dist.counts[w], dist.total)) for k, w in enumerate(m.states)]
    return _compare("DeGier", N, sum(mu), sum(r[2] for r in rows), rows)


def _ht_total(size: int, jobs: int) -> int:
    return count_class(size, SymmetryClass.HALF_TURN, jobs)


@_timed
def verify_qt_count(n: int, force: bool = False, jobs: int = 1) -> VerificationReport:
    """``A_QT(4n) = A_HT(2n) A(n)^2``; the right side is always reported."""
    rhs = _ht_total(2 * n, jobs) * count_formula_A(n) ** 2
    if _over("QtProduct", n, force):
        return _skip("QtProduct", n, f"enumeration at size {4 * n} {_ceiling_note('QtProduct')}", rhs)
    lhs = count_class(4 * n, SymmetryClass.QUARTER_TURN, jobs)
    return _compare("QtProduct", n, lhs, rhs, [])


@_timed
def verify_qt(n: int, force: bool = False) -> VerificationReport:
    """Per-word ``A_QT(4n; w) = A_HT(2n; w) A(n)^2``."""
    if _over("QtPerPattern", n, force):
        return _skip("QtPerPattern", n, _ceiling_note("QtPerPattern"))
    qt = pattern_counts(4 * n, SymmetryClass.QUARTER_TURN).counts
    ht = pattern_counts(2 * n, SymmetryClass.HALF_TURN).counts
    scale = count_formula_A(n) ** 2
    rows = [(w, qt.get(w, 0), ht[w] * scale) for w in sorted(set(qt) | set(ht))]
    return _compare("QtPerPattern", n, sum(qt.values()), sum(ht.values()) * scale, rows)


@_timed
def verify_qqt_count(n: int, force: bool = False, jobs: int = 1) -> VerificationReport:
    """``A_qQT(4n+2) = A_HT(2n+1) A(n+1) A(n)``; the right side is always reported."""
    rhs = _ht_total(2 * n + 1, jobs) * count_formula_A(n + 1) * count_formula_A(n)
    if _over("QqtCount", n, force):
        return _skip("QqtCount", n, f"enumeration at size {4 * n + 2} {_ceiling_note('QqtCount')}", rhs)
    lhs = count_class(4 * n + 2, SymmetryClass.QUASI_QUARTER_TURN, jobs)
    return _compare("QqtCount", n, lhs, rhs, [])


@_timed
def verify_qqt(n: int, force: bool = False) -> VerificationReport:
    """Per-word ``A_qQT(4n+2; w) = A_HT(2n+1; w) A(n+1) A(n)``."""
    if _over("QqtPerPattern", n, force):
        return _skip("QqtPerPattern", n, _ceiling_note("QqtPerPattern"))
    qqt = pattern_counts(4 * n + 2, SymmetryClass.QUASI_QUARTER_TURN).counts
    ht = pattern_counts(2 * n + 1, SymmetryClass.HALF_TURN).counts
    scale = count_formula_A(n + 1) * count_formula_A(n)
    rows = [(w, qqt.get(w, 0), ht.get(w, 0) * scale) for w in sorted(set(qqt) | set(ht))]
    return _compare("QqtPerPattern", n, sum(qqt.values()), sum(ht.values()) * scale, rows)


def poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _trim(p: list[int]) -> list[int]:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


@_timed
def verify_refined(n: int, force: bool = False, jobs: int = 1) -> VerificationReport:
    """``A_qQT(4n+2; y) = y A_HT(2n+1; y) A(n+1; y) A(n; y)`` coefficient by coefficient.

    Coefficient lists are compared after dropping trailing zeros, since the two
    sides have different nominal lengths.
    """
    if _over("RefinedQqt", n, force):
        return _skip("RefinedQqt", n, _ceiling_note("RefinedQqt"))
    lhs = refined_polynomial(4 * n + 2, SymmetryClass.QUASI_QUARTER_TURN, jobs)
    rhs = [0] + poly_mul(
        poly_mul(refined_polynomial(2 * n + 1, SymmetryClass.HALF_TURN, jobs), refined_polynomial(n + 1)),
        refined_polynomial(n),
    )
    a, b = _trim(lhs), _trim(rhs)
    width = max(len(a), len(b))
    a += [0] * (width - len(a))
    b += [0] * (width - len(b))
    rows = [(f"y^{k}", a[k], b[k]) for k in range(width)]
    return _compare("RefinedQqt", n, a, b, rows)


@_timed
def verify_rotation_invariance(N: int, cls: "SymmetryClass | str" = SymmetryClass.PLAIN, force: bool = False) -> VerificationReport:
    """Per-pattern counts are unchanged by the label shift (induced shift on reduced words)."""
    cls = SymmetryClass.parse(cls)
    if not force and (N > _ROTATION_CEILING[cls.value] or (cls is SymmetryClass.PLAIN and N > CEILINGS["RotationInvariance"])):
        return _skip("RotationInvariance", N, f"size above ceiling {_ROTATION_CEILING[cls.value]} for class {cls.value}")
    counts = pattern_counts(N, cls).counts
    rows = [(w, counts[w], counts[rotate_word(w, cls)]) for w in sorted(counts)]
    total = sum(counts.values())
    report = _compare("RotationInvariance", N, total, total, rows)
    report.note = f"class {cls.value}"
    return report


# --- tilings identities --------------------------------------------------------------------


@_timed
def verify_thm6(n: int, force: bool = False) -> VerificationReport:
    """Quotient-matching bijection for both rarest-pattern families.

    For each of the sizes ``4n`` and ``4n+2``: the map is injective on the
    enumerated family, the family size equals the matching count of the
    residual quotient, and that count equals the plane-partition count
    (``A(n)^2`` resp. ``A(n) A(n+1)``).  The residual quotient is also checked
    to be isomorphic to the honeycomb orbit graph.
    """
    if _over("Thm6", n, force):
        return _skip("Thm6", n, _ceiling_note("Thm6"))
    rows = []
    lhs_total = rhs_total = 0
    for size, k, holed in ((4 * n, 2 * n, False), (4 * n + 2, 2 * n + 1, True)):
        closure = tilings.fixed_edge_closure(size)
        quotient = tilings.quotient_by_rotation(closure.residual, 4)
        family = tilings.rarest_pattern_family(size)
        images = {tilings.fpl_to_quotient_matching(f, closure) for f in family}
        honeycomb = tilings.quotient_by_rotation(tilings.hexagon_region(k, holed=holed), 6)
        pp = tilings.count_invariant_matchings(tilings.hexagon_region(k, holed=holed), 6)
        word = tilings.rarest_word(size)
        rows.append((f"{word}:family", len(family), len(images)))
        rows.append((f"{word}:quotient", len(images), int(tilings.count_matchings(quotient))))
        rows.append((f"{word}:plane-partitions", len(family), pp))
        rows.append((f"{word}:isomorphic", tilings.quotients_isomorphic(quotient, honeycomb), True))
        lhs_total += len(family)
        rhs_total += pp
    return _compare("Thm6", n, lhs_total, rhs_total, rows)


@_timed
def verify_thm7(n: int, force: bool = False) -> VerificationReport:
    """qCSSCPPs of size ``2n+1``: brute matchings, Ciucu halving, LGV, closed form, A(n)A(n+1)."""
    size = 2 * n + 1
    target = count_formula_A(n) * count_formula_A(n + 1)
    rows = []
    note = ""
    if _over("Thm7", n, force):
        note = f"matching methods {_ceiling_note('Thm7')}"
    else:
        rows.append(("brute", tilings.count_qcsscpp(size, "brute"), target))
        rows.append(("ciucu", tilings.count_qcsscpp(size, "ciucu"), target))
    rows.append(("lgv", tilings.count_qcsscpp(size, "lgv"), target))
    rows.append(("formula", tilings.count_qcsscpp(size, "formula"), target))
    return _compare("Thm7", n, rows[0][1], target, rows, note)


@_timed
def verify_ciucu(n: int, force: bool = False) -> VerificationReport:
    """``M(G_{2n+1}) = 2^n M*(G'_{2n+1})`` with both sides counted separately."""
    if _over("CiucuInstance", n, force):
        return _skip("CiucuInstance", n, _ceiling_note("CiucuInstance"))
    g = tilings.qcssc_region(2 * n + 1)
    halved, factor = tilings.ciucu_factorize(g, 2 * n)
    lhs = tilings.count_matchings(g)
    weighted = tilings.count_matchings(halved)
    paths = tilings.LatticePathSystem(n).nonintersecting_weight() if n <= 4 else None
    rows = [("M*(G')", weighted, Fraction(lhs) / factor)]
    if paths is not None:
        rows.append(("paths", paths, weighted))
    return _compare("CiucuInstance", n, lhs, factor * weighted, rows)


@_timed
def verify_recurrence(n: int, force: bool = False) -> VerificationReport:
    """``A(n+1)/A(n)`` from enumeration against the factorial ratio, plus the qCSSCPP ratio."""
    if _over("Recurrence", n, force):
        return _skip("Recurrence", n, _ceiling_note("Recurrence"))
    counts = [count_class(k, SymmetryClass.PLAIN) if k else 1 for k in range(n + 2)]
    lhs = Fraction(counts[n + 1], counts[n])
    rhs = recurrence_ratio_A(n)
    rows = [("A-ratio", lhs, rhs)]
    if n >= 2:
        p_ratio = Fraction(tilings.closed_form_p(2 * n + 1), tilings.closed_form_p(2 * n - 1))
        rows.append(("p-ratio", p_ratio, Fraction(counts[n + 1], counts[n - 1])))
    return _compare("Recurrence", n, lhs, rhs, rows)


# --- dispatch ----------------------------------------------------------------------------------

IDENTITIES: dict[str, tuple[str, Callable[..., VerificationReport]]] = {
    "rs": ("RS", verify_rs),
    "degier": ("DeGier", verify_degier),
    "qt-product": ("QtProduct", verify_qt_count),
    "qt-per-pattern": ("QtPerPattern", verify_qt),
    "qqt-count": ("QqtCount", verify_qqt_count),
    "qqt-per-pattern": ("QqtPerPattern", verify_qqt),
    "refined-qqt": ("RefinedQqt", verify_refined),
    "rotation-invariance": ("RotationInvariance", verify_rotation_invariance),
    "thm6": ("Thm6", verify_thm6),
    "thm7": ("Thm7", verify_thm7),
    "recurrence": ("Recurrence", verify_recurrence),
    "ciucu": ("CiucuInstance", verify_ciucu),
}

_MIN_SIZE = {"degier": 2, "qqt-count": 0, "qqt-per-pattern": 0}


def lookup(identity: str) -> Callable[..., VerificationReport]:
    key = identity.lower().replace("_", "-")
    for name, (ident, fn) in IDENTITIES.items():
        if key in (name, ident.lower()):
            return fn
    raise UnknownIdentity(f"unknown identity {identity!r}; choose from {', '.join(IDENTITIES)}")


def min_size(identity: str) -> int:
    key = identity.lower().replace("_", "-")
    for name, (ident, _) in IDENTITIES.items():
        if key in (name, ident.lower()):
            return _MIN_SIZE.get(name, 1)
    raise UnknownIdentity(identity)


def run(identity: str, size: int, force: bool = False, jobs: int = 1) -> VerificationReport:
    fn = lookup(identity)
    kwargs: dict[str, Any] = {"force": force}
    if fn in (verify_qt_count, verify_qqt_count, verify_refined):
        kwargs["jobs"] = jobs
    return fn(size, **kwargs)
