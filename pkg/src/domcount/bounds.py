"""Exact checks of the extremal inequalities, Shearer entropy reports, and sweeps.

Every inequality of the form ``x <= y^(a/b)`` is decided as ``x^b <= y^a``
in exact integer or rational arithmetic. The one exception is the
decimal constant 1.7159 in the minimal-dominating-set bound, compared
through 60-digit logarithms.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import numpy as np

from .conditions import (
    Activation,
    ColoringCondition,
    legal_function_count,
    weighted_legal_function_count,
)
from .counting import (
    ImageGraph,
    count_dominating_sets,
    count_independent_sets,
    count_legal_colorings,
    count_maximal_independent_sets,
    count_minimal_dominating_sets,
    cycle_xhom_closed_form,
    dominating_family,
    dominating_polynomial,
    hom_count,
    legal_colorings,
    path_id_closed_form,
    xhom_count_batch,
)
from .errors import ConditionError, GraphError, NotRegularError
from .graph import (
    Graph,
    complete_bipartite,
    cycle,
    disjoint_union,
    enumerate_labeled_graphs,
    enumerate_labeled_regular,
    enumerate_labeled_trees,
    members,
    regular_degree,
)

HOLDS = "holds"
EQUALITY = "equality"
FAILS = "fails"
HOLDS_NUMERIC = "holds (numeric)"
NOT_APPLICABLE = "not applicable"

FOMIN_CONSTANT = "1.7159"
FOMIN_SLACK = Decimal("1e-9")
SHEARER_TOL = 1e-9

with localcontext() as _ctx:
    _ctx.prec = 60
    _FOMIN_LN = Decimal(FOMIN_CONSTANT).ln()


def _exact_str(x) -> str:
    return str(x) if not isinstance(x, float) else repr(x)


@dataclass
class BoundReport:
    """Verdict on ``lhs_base^lhs_exp <= rhs_base^rhs_exp``."""

    name: str
    lhs_base: object
    lhs_exp: int
    rhs_base: object
    rhs_exp: int
    verdict: str
    note: str = ""
    margin: str | None = None

    @property
    def lhs(self):
        return self.lhs_base**self.lhs_exp

    @property
    def rhs(self):
        return self.rhs_base**self.rhs_exp

    @property
    def failed(self) -> bool:
        return self.verdict == FAILS

    def recheck(self) -> str:
        """Recompute the verdict from the stored witnesses."""
        if self.verdict in (NOT_APPLICABLE, HOLDS_NUMERIC) or self.margin is not None:
            return self.verdict
        return _compare(self.lhs, self.rhs)

    def to_record(self) -> dict:
        rec = {
            "check": self.name,
            "lhs_base": _exact_str(self.lhs_base),
            "lhs_exp": self.lhs_exp,
            "rhs_base": _exact_str(self.rhs_base),
            "rhs_exp": self.rhs_exp,
            "verdict": self.verdict,
        }
        if self.verdict not in (NOT_APPLICABLE, HOLDS_NUMERIC) and self.margin is None:
            rec["lhs"] = str(self.lhs)
            rec["rhs"] = str(self.rhs)
        if self.margin is not None:
            rec["margin"] = self.margin
        if self.note:
            rec["note"] = self.note
        return rec


def _compare(lhs, rhs) -> str:
    if lhs == rhs:
        return EQUALITY
    return HOLDS if lhs < rhs else FAILS


def not_applicable(name: str, reason: str) -> BoundReport:
    return BoundReport(name, 0, 1, 0, 1, NOT_APPLICABLE, note=reason)


def check_power_inequality(a, p: int, b, q: int, name: str = "power") -> BoundReport:
    """Exact verdict on a^p <= b^q for nonnegative a, b and p, q >= 1."""
    if p < 1 or q < 1:
        raise ValueError(f"exponents must be >= 1, got {p}, {q}")
    if a < 0 or b < 0:
        raise ValueError("bases must be nonnegative")
    return BoundReport(name, a, p, b, q, _compare(a**p, b**q))


def _regular(G: Graph) -> int:
    r = regular_degree(G)
    if r is None:
        raise NotRegularError(f"graph with degrees {sorted(set(G.degrees()))} is not regular")
    return r


def check_ds_bound(G: Graph, cap_bits: int | None = None) -> BoundReport:
    """ds(G)^(r+1) <= ds(K_{r+1})^n for r-regular G."""
    r = _regular(G)
    ds_clique = legal_function_count(r + 1, ColoringCondition.dominating())
    return check_power_inequality(count_dominating_sets(G, cap_bits=cap_bits), r + 1, ds_clique, G.n, "ds-bound")


def check_legal_bounds(
    G: Graph,
    cond: ColoringCondition,
    lam: Activation | None = None,
    cap_bits: int | None = None,
) -> tuple[BoundReport, BoundReport]:
    """(open, closed) legal-coloring bounds, weighted when ``lam`` is given."""
    r = _regular(G)
    n = G.n
    suffix = "-weighted" if lam is not None else ""

    def extremal(size: int):
        if lam is None:
            return legal_function_count(size, cond)
        return weighted_legal_function_count(size, cond, lam)

    if r == 0:
        open_report = not_applicable("legal-open" + suffix, "open bound needs degree >= 1")
    else:
        lhs = count_legal_colorings(G, cond, "open", lam, cap_bits)
        open_report = check_power_inequality(lhs, r, extremal(r), n, "legal-open" + suffix)
    lhs = count_legal_colorings(G, cond, "closed", lam, cap_bits)
    closed_report = check_power_inequality(lhs, r + 1, extremal(r + 1), n, "legal-closed" + suffix)
    return open_report, closed_report


def check_polynomial_bounds(G: Graph, mu, cap_bits: int | None = None) -> tuple[BoundReport, BoundReport]:
    """D_G(mu) against K_{r+1}, and D^s_G(mu) against K_{r,r}, for rational mu > 0."""
    mu = Fraction(mu)
    if mu <= 0:
        raise ConditionError(f"mu must be positive, got {mu}")
    r = _regular(G)
    n = G.n
    lam = Activation((Fraction(1), mu))
    dom = ColoringCondition.dominating()

    clique_value = (1 + mu) ** (r + 1) - 1
    assert clique_value == weighted_legal_function_count(r + 1, dom, lam)
    closed = check_power_inequality(
        dominating_polynomial(G, False, cap_bits)(mu), r + 1, clique_value, n, "dom-poly"
    )
    if r == 0:
        strong = not_applicable("strong-dom-poly", "strong bound needs degree >= 1")
    else:
        biclique_value = ((1 + mu) ** r - 1) ** 2
        assert biclique_value == weighted_legal_function_count(r, dom, lam) ** 2
        strong = check_power_inequality(
            dominating_polynomial(G, True, cap_bits)(mu), 2 * r, biclique_value, n, "strong-dom-poly"
        )
    return closed, strong


def falling(q: int, m: int) -> int:
    return math.prod(q - i for i in range(m))


def check_prorain_bounds(G: Graph, q: int, cap_bits: int | None = None) -> list[BoundReport]:
    """Proper and rainbow colorings of the open and closed neighborhood hypergraphs."""
    if q < 1:
        raise ConditionError(f"need at least one color, got q={q}")
    r = _regular(G)
    n = G.n
    proper, rainbow = ColoringCondition.proper(q), ColoringCondition.rainbow(q)
    closed_forms = {
        ("proper", "open"): (proper, r, q**r - q),
        ("proper", "closed"): (proper, r + 1, q ** (r + 1) - q),
        ("rainbow", "open"): (rainbow, r, falling(q, r)),
        ("rainbow", "closed"): (rainbow, r + 1, falling(q, r + 1)),
    }
    reports = []
    for (kind, mode), (cond, size, rhs) in closed_forms.items():
        name = f"{kind}-{mode}"
        if size == 0:
            reports.append(not_applicable(name, "open bound needs degree >= 1"))
            continue
        formula = legal_function_count(size, cond)
        if formula != rhs:
            raise ArithmeticError(f"{name}: closed form {rhs} disagrees with N({size}) = {formula}")
        lhs = count_legal_colorings(G, cond, mode, cap_bits=cap_bits)
        reports.append(check_power_inequality(lhs, size, rhs, n, name))
    return reports


def moon_moser_bound(n: int) -> int:
    if n < 2:
        raise GraphError("Moon-Moser bound needs n >= 2")
    t, rem = divmod(n, 3)
    if rem == 0:
        return 3**t
    if rem == 1:
        return 4 * 3 ** (t - 1)
    return 2 * 3**t


def check_moon_moser(G: Graph, cap_bits: int | None = None) -> BoundReport:
    if G.n < 2:
        return not_applicable("moon-moser", "needs n >= 2")
    mis = count_maximal_independent_sets(G, cap_bits)
    return check_power_inequality(mis, 1, moon_moser_bound(G.n), 1, "moon-moser")


def check_kahn_zhao(G: Graph, cap_bits: int | None = None) -> BoundReport:
    r = regular_degree(G)
    if not r:
        return not_applicable("kahn-zhao", "needs a regular graph of degree >= 1")
    return check_power_inequality(
        count_independent_sets(G, cap_bits), 2 * r, 2 ** (r + 1) - 1, G.n, "kahn-zhao"
    )


def check_galvin_tetali(
    G: Graph, H: ImageGraph, lam: Activation | None = None, cap_bits: int | None = None
) -> BoundReport:
    name = "galvin-tetali" + ("-weighted" if lam is not None else "")
    r = regular_degree(G)
    if not r or not G.is_bipartite():
        return not_applicable(name, "needs a bipartite regular graph of degree >= 1")
    if 2 * r > 64:
        return not_applicable(name, "K_{r,r} exceeds the vertex cap")
    lhs = hom_count(G, H, lam, cap_bits)
    rhs = hom_count(complete_bipartite(r, r), H, lam, cap_bits)
    return check_power_inequality(lhs, 2 * r, rhs, G.n, name)


def check_fomin(G: Graph, cap_bits: int | None = None) -> BoundReport:
    """Minimal dominating sets <= 1.7159^n, by high-precision logarithms."""
    count = count_minimal_dominating_sets(G, cap_bits)
    with localcontext() as ctx:
        ctx.prec = 60
        rhs_log = G.n * _FOMIN_LN
        lhs_log = Decimal(count).ln()
        margin = rhs_log - lhs_log
        verdict = HOLDS_NUMERIC if lhs_log <= rhs_log + FOMIN_SLACK else FAILS
    return BoundReport(
        "fomin", count, 1, Decimal(FOMIN_CONSTANT), G.n, verdict, margin=f"{margin:.12g}"
    )


def check_background_bounds(
    G: Graph,
    H: ImageGraph | None = None,
    lam: Activation | None = None,
    cap_bits: int | None = None,
) -> list[BoundReport]:
    reports = [check_moon_moser(G, cap_bits), check_kahn_zhao(G, cap_bits)]
    if H is not None:
        reports.append(check_galvin_tetali(G, H, None, cap_bits))
        if lam is not None:
            reports.append(check_galvin_tetali(G, H, lam, cap_bits))
    reports.append(check_fomin(G, cap_bits))
    return reports


def cycle_extremal_check(G: Graph) -> BoundReport:
    """xhom(G, E_2)^6 <= c_6^n for a disjoint union of cycles."""
    if regular_degree(G) != 2:
        raise NotRegularError("cycle extremality needs a 2-regular graph")
    lhs = math.prod(cycle_xhom_closed_form(comp.bit_count()) for comp in G.components())
    return check_power_inequality(lhs, 6, cycle_xhom_closed_form(6), G.n, "cycle-extremal")


# -- entropy ---------------------------------------------------------------------


def entropy_bits(counts: Iterable[int]) -> float:
    """Shannon entropy (bits) of the distribution proportional to counts."""
    counts = [c for c in counts if c]
    total = sum(counts)
    if not total:
        raise ValueError("entropy of an empty distribution")
    return math.log2(total) - sum(c * math.log2(c) for c in counts) / total


@dataclass
class EntropyReport:
    family_size: int
    total_entropy: float
    cover: list[int]
    k: int
    projection_entropies: list[float]
    shearer_rhs: float
    slack: float

    @property
    def holds(self) -> bool:
        return self.slack >= -SHEARER_TOL

    def to_record(self) -> dict:
        return {
            "check": "shearer",
            "family_size": str(self.family_size),
            "total_entropy": self.total_entropy,
            "cover": [members(a) for a in self.cover],
            "k": self.k,
            "projection_entropies": self.projection_entropies,
            "shearer_rhs": self.shearer_rhs,
            "slack": self.slack,
            "verdict": HOLDS if self.holds else FAILS,
        }


def _family_rows(G: Graph, structure, mode: str, cap_bits: int | None) -> np.ndarray:
    if isinstance(structure, ColoringCondition):
        rows = list(legal_colorings(G, structure, mode, cap_bits))
        return np.array(rows, dtype=np.int64).reshape(len(rows), G.n)
    if structure not in ("dominating", "strong_dominating"):
        raise ValueError(f"unknown structure {structure!r}")
    fam = dominating_family(G, structure == "strong_dominating", cap_bits)
    shifts = np.arange(G.n, dtype=np.uint64)
    return ((fam[:, None] >> shifts) & np.uint64(1)).astype(np.int64)


def shearer_report(G: Graph, structure="dominating", mode: str = "closed", cap_bits: int | None = None) -> EntropyReport:
    """Shearer's inequality for a uniform member of a structure family.

    ``structure`` is "dominating", "strong_dominating", or a
    ColoringCondition (whose legal colorings in ``mode`` form the family).
    The cover is the open or closed neighborhoods, per ``mode``.
    """
    rows = _family_rows(G, structure, mode, cap_bits)
    if len(rows) == 0:
        raise ValueError("empty structure family: entropy undefined")
    if mode == "closed":
        cover = [G.adj[v] | 1 << v for v in range(G.n)]
    elif mode == "open":
        cover = list(G.adj)
    else:
        raise ValueError(f"mode must be 'open' or 'closed', got {mode!r}")
    k = min(sum(a >> i & 1 for a in cover) for i in range(G.n))
    if k < 1:
        raise GraphError("some vertex lies in no cover set (isolated vertex in open mode)")
    m = len(rows)
    total = math.log2(m)
    base = int(rows.max()) + 1 if rows.size else 1
    width = max(len(members(a)) for a in cover)
    if (width + 1) * math.log2(max(base, 2)) + math.log2(len(cover)) < 62:
        # one integer code per (cover set, projected pattern), counted in a single pass
        radix = base ** np.arange(width + 1, dtype=np.int64)
        codes = np.empty((m, len(cover)), dtype=np.int64)
        for j, a in enumerate(cover):
            cols = members(a)
            codes[:, j] = rows[:, cols] @ radix[: len(cols)] + j * radix[width]
        keys, counts = np.unique(codes, return_counts=True)
        which = keys // radix[width]
        c = counts.astype(np.float64)
        plogp = np.bincount(which, weights=c * np.log2(c), minlength=len(cover))
        projections = [total - float(x) / m for x in plogp]
    else:
        projections = []
        for a in cover:
            _, counts = np.unique(rows[:, members(a)], axis=0, return_counts=True)
            projections.append(entropy_bits(int(c) for c in counts))
    rhs = sum(projections) / k
    return EntropyReport(len(rows), total, cover, k, projections, rhs, rhs - total)


# -- sweeps ----------------------------------------------------------------------


@dataclass
class SweepSummary:
    check: str
    instances: int = 0
    violations: list[str] = field(default_factory=list)
    equalities: int = 0
    details: dict = field(default_factory=dict)

    def add(self, report: BoundReport, label: str, weight: int = 1) -> None:
        self.instances += weight
        if report.verdict == FAILS:
            self.violations.append(label)
        elif report.verdict == EQUALITY:
            self.equalities += weight

    def to_record(self) -> dict:
        rec = {
            "check": self.check,
            "instances": self.instances,
            "violations": len(self.violations),
            "violating": self.violations[:20],
            "equalities": self.equalities,
            "verdict": FAILS if self.violations else HOLDS,
        }
        rec.update(self.details)
        return rec


def _is_clique_union(G: Graph, size: int) -> bool:
    return all(
        comp.bit_count() == size and all((G.adj[v] | 1 << v) == comp for v in members(comp))
        for comp in G.components()
    )


def ds_bound_sweep(max_n: int = 8, max_r: int = 4) -> SweepSummary:
    """ds bound over every labeled r-regular graph with n <= max_n, 1 <= r <= max_r."""
    summary = SweepSummary("ds-bound")
    equality_cases = 0
    equality_iff_cliques = True
    for n in range(2, max_n + 1):
        for r in range(1, min(max_r, n - 1) + 1):
            for G in enumerate_labeled_regular(n, r, max_n=max_n):
                report = check_ds_bound(G)
                summary.add(report, G.to_graph6())
                is_eq = report.verdict == EQUALITY
                equality_cases += is_eq
                if is_eq != _is_clique_union(G, r + 1):
                    equality_iff_cliques = False
    summary.details = {"equality_iff_clique_union": equality_iff_cliques, "max_n": max_n, "max_r": max_r}
    return summary


def partitions_min(n: int, smallest: int = 3, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of n into parts >= smallest, parts in non-increasing order."""
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for part in range(min(n, largest), smallest - 1, -1):
        for rest in partitions_min(n - part, smallest, part):
            yield (part,) + rest


def cycle_union(lengths: Sequence[int]) -> Graph:
    return disjoint_union(*(cycle(m) for m in lengths))


def labeled_cycle_type_count(lengths: Sequence[int]) -> int:
    """Labeled 2-regular graphs on sum(lengths) vertices with these cycle lengths."""
    n = sum(lengths)
    out = math.factorial(n)
    for m, mult in Counter(lengths).items():
        out //= (2 * m) ** mult * math.factorial(mult)
    return out


def two_regular_classes(n: int) -> Iterator[tuple[tuple[int, ...], Graph, int]]:
    """(cycle lengths, representative, labeled multiplicity) for every class on n vertices."""
    for lengths in partitions_min(n):
        yield lengths, cycle_union(lengths), labeled_cycle_type_count(lengths)


def builtin_conditions(max_colors: int = 2) -> list[ColoringCondition]:
    conds = []
    for k in range(1, max_colors + 1):
        conds += [ColoringCondition.proper(k), ColoringCondition.rainbow(k)]
        if k >= 2:
            conds += [
                ColoringCondition.dominating(k),
                ColoringCondition.at_least(k, 1, 2),
            ]
    return conds


def legal_bound_sweep(max_n: int = 12, labeled: bool = False, conditions=None) -> SweepSummary:
    """Legal-coloring bounds over every labeled 2-regular graph with n <= max_n.

    The counts are invariant under relabeling, so by default each cycle
    type is checked once on a representative and weighted by its number
    of labelings. ``labeled=True`` walks the labeled graphs one by one.
    """
    conditions = builtin_conditions() if conditions is None else conditions
    summary = SweepSummary("legal-bounds")
    graphs = 0
    for n in range(3, max_n + 1):
        if labeled:
            items = ((G.to_graph6(), G, 1) for G in enumerate_labeled_regular(n, 2, max_n=max_n))
        else:
            items = (
                ("+".join(map(str, lengths)), G, mult) for lengths, G, mult in two_regular_classes(n)
            )
        for label, G, mult in items:
            graphs += mult
            for cond in conditions:
                for report in check_legal_bounds(G, cond):
                    summary.add(report, f"{label}:{cond.describe()}:{report.name}", mult)
    summary.details = {"graphs": graphs, "conditions": len(conditions), "labeled_walk": labeled}
    return summary


def cycle_extremal_sweep(max_n: int = 18) -> SweepSummary:
    summary = SweepSummary("cycle-extremal")
    for n in range(3, max_n + 1):
        for lengths in partitions_min(n):
            summary.add(cycle_extremal_check(cycle_union(lengths)), "+".join(map(str, lengths)))
    summary.details = {"max_n": max_n, "extremal": "C6 unions"}
    return summary


def moon_moser_sweep(max_n: int = 6) -> SweepSummary:
    summary = SweepSummary("moon-moser")
    for n in range(2, max_n + 1):
        for G in enumerate_labeled_graphs(n, max_n=max_n):
            summary.add(check_moon_moser(G), G.to_graph6())
    return summary


def fomin_sweep(max_n: int = 6) -> SweepSummary:
    summary = SweepSummary("fomin")
    smallest = None
    for n in range(1, max_n + 1):
        for G in enumerate_labeled_graphs(n, max_n=max_n):
            report = check_fomin(G)
            summary.add(report, G.to_graph6())
            margin = Decimal(report.margin)
            smallest = margin if smallest is None else min(smallest, margin)
    summary.details = {"min_log_margin": str(smallest)}
    return summary


@dataclass
class TreeSweepReport:
    n: int
    trees: int
    bound: int
    max_id: int
    violations: list[str]
    equality_count: int
    path_count: int
    equality_exactly_on_paths: bool

    def to_record(self) -> dict:
        return {
            "check": "tree-extremal",
            "n": self.n,
            "trees": self.trees,
            "bound": str(self.bound),
            "max_id": str(self.max_id),
            "violations": len(self.violations),
            "equality_count": self.equality_count,
            "path_count": self.path_count,
            "equality_exactly_on_paths": self.equality_exactly_on_paths,
            "verdict": HOLDS if not self.violations and self.equality_exactly_on_paths else FAILS,
        }


def tree_extremal_sweep(n: int, max_n: int | None = None, batch: int = 4096) -> TreeSweepReport:
    """id(T) <= id(P_n) over all labeled trees, equality exactly on paths."""
    if n < 2:
        raise GraphError("tree sweep needs n >= 2")
    bound = path_id_closed_form(n)
    e2 = ImageGraph.looped_empty(2)
    trees = eq = paths = 0
    violations: list[str] = []
    exact = True
    it = enumerate_labeled_trees(n, max_n=max_n)
    max_id = 0
    while True:
        block = list(itertools.islice(it, batch))
        if not block:
            break
        for T, value in zip(block, xhom_count_batch(block, e2)):
            trees += 1
            max_id = max(max_id, value)
            is_path = T.max_degree() <= 2
            paths += is_path
            if value > bound:
                violations.append(T.to_graph6())
            if value == bound:
                eq += 1
            if (value == bound) != is_path:
                exact = False
    return TreeSweepReport(n, trees, bound, max_id, violations, eq, paths, exact)
