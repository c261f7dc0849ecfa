"""
Theorem service.

Checks the arc hypotheses of the three covering constructions and of the
planar realisation theorem on leveled graphs, and generates the graph
families: a band domain with circles is lifted over the base domain and the
predicted Reeb graph is the leveled fiber product of the two Reeb graphs.
"""

import math
from fractions import Fraction
from itertools import combinations
from typing import Any, Dict, List, Optional, Sequence, Tuple

import networkx as nx

from app.core.config import get_settings
from app.core.logging import get_logger
from app.models.domain import BandSpec, NCDomain
from app.models.graph import LeveledGraph
from app.models.theorems import (
    Arc,
    ConditionReport,
    FamilyResult,
    FoldCount,
    Reduction,
    TheoremTag,
)
from app.services.domain_service import get_domain_service, hole_offsets
from app.services.graph_service import get_graph_service
from app.services.planarity_service import get_planarity_service
from app.services.reeb_service import get_reeb_service
from app.utils.exceptions import ConditionError, InvalidParameterError, UnsupportedDomainError
from app.utils.rationals import format_rational, to_fraction

logger = get_logger(__name__)

Bound = Optional[Fraction]


class TheoremService:
    """Service for hypothesis checks and family generation."""

    def __init__(self):
        """Initialize theorem service."""
        self.settings = get_settings()
        self.domains = get_domain_service()
        self.graphs = get_graph_service()
        self.reeb = get_reeb_service()
        self.planarity = get_planarity_service()

    # === Arc search ===

    @staticmethod
    def _arc(
        graph: LeveledGraph, start: int, end: int, lo: Bound, hi: Bound, label: str
    ) -> Optional[Arc]:
        """
        Embedded arc from ``start`` to ``end`` with interior levels in ``(lo, hi)``.

        ``None`` bounds are open. Among all such simple paths the shortest is
        returned, ties broken by lexicographic vertex ids; parallel edges are
        resolved to the smallest edge id.
        """
        allowed = {
            v
            for v in graph.vertices
            if (lo is None or graph.level(v) > lo) and (hi is None or graph.level(v) < hi)
        }
        allowed |= {start, end}
        simple = nx.Graph()
        simple.add_nodes_from(allowed)
        edge_ids: Dict[frozenset, int] = {}
        for edge in graph.edges.values():
            if edge.lower in allowed and edge.upper in allowed:
                key = frozenset((edge.lower, edge.upper))
                edge_ids[key] = min(edge.id, edge_ids.get(key, edge.id))
                simple.add_edge(edge.lower, edge.upper)
        if start == end:
            return None
        shortest: List[List[int]] = []
        try:
            for path in nx.shortest_simple_paths(simple, start, end):
                if shortest and len(path) > len(shortest[0]):
                    break
                shortest.append(path)
        except nx.NetworkXNoPath:
            return None
        best = min(shortest)
        edges = tuple(edge_ids[frozenset(pair)] for pair in zip(best, best[1:]))
        return Arc(label, tuple(best), edges)

    # === Hypotheses ===

    def default_outer_levels(self, graph: LeveledGraph) -> Tuple[Fraction, Fraction]:
        """Midpoints of the two lowest and of the two highest vertex levels."""
        levels = graph.levels()
        if len(levels) < 2:
            raise InvalidParameterError("Graph needs at least two vertex levels")
        return (levels[0] + levels[1]) / 2, (levels[-2] + levels[-1]) / 2

    def validate_conditions(
        self,
        graph: LeveledGraph,
        t1: Any = None,
        t2: Any = None,
        tag: TheoremTag = TheoremTag.MT1,
        outer_levels: Optional[Tuple[Any, Any]] = None,
        reduction: Reduction = Reduction.NONE,
    ) -> ConditionReport:
        """
        Check the hypotheses of one construction on a leveled graph.

        Args:
            graph: Reeb graph of the base domain
            t1: Lower cut level (unused for THM2)
            t2: Upper cut level (unused for THM2)
            tag: Which hypothesis bundle to check
            outer_levels: (t1', t2') for the K5 construction; defaults to
                :meth:`default_outer_levels`
            reduction: Offset reduction whose extra hypotheses must also hold

        Returns:
            ConditionReport: Verdict per condition and the witness arcs found

        Raises:
            InvalidParameterError: If the levels are not strictly increasing
        """
        tag = TheoremTag(tag)
        if tag is TheoremTag.THM2:
            report = self._check_planar_realisation(graph)
        else:
            if t1 is None or t2 is None:
                raise InvalidParameterError(f"Tag {tag.value} needs both t1 and t2")
            t1, t2 = to_fraction(t1), to_fraction(t2)
            if t1 >= t2:
                raise InvalidParameterError(
                    f"t1 must be smaller than t2, got {format_rational(t1)} >= {format_rational(t2)}"
                )
            refined = self.graphs.refine(graph, [t1, t2])
            report = ConditionReport(tag, graph=refined)
            report.points = {"t1": sorted(refined.vertices_at(t1)), "t2": sorted(refined.vertices_at(t2))}
            no_vertices = self._check_no_vertices(graph, t1, t2)
            if tag is TheoremTag.MT1:
                report.add("C4", no_vertices == "", no_vertices)
                self._check_two_to_one(report, refined, t1, t2)
            elif tag is TheoremTag.MT2:
                report.add("C4'", no_vertices == "", no_vertices)
                self._check_three_by_three(report, refined, t1, t2)
            else:
                report.add("C2''", no_vertices == "", no_vertices)
                if outer_levels is None:
                    outer = self.default_outer_levels(graph)
                else:
                    outer = (to_fraction(outer_levels[0]), to_fraction(outer_levels[1]))
                if not outer[0] < t1 < t2 < outer[1]:
                    raise InvalidParameterError(
                        "Outer levels must satisfy t1' < t1 < t2 < t2'",
                        {"outer_levels": [format_rational(t) for t in outer]},
                    )
                self._check_two_by_three(report, refined, t1, t2, outer, Reduction(reduction))

        logger.info(
            "conditions_checked",
            tag=tag.value,
            passed=report.passed,
            failed=[c.name for c in report.conditions if not c.passed],
        )
        return report

    @staticmethod
    def _check_no_vertices(graph: LeveledGraph, t1: Fraction, t2: Fraction) -> str:
        hits = [format_rational(t) for t in (t1, t2) if graph.vertices_at(t)]
        return f"vertices at level {', '.join(hits)}" if hits else ""

    def _check_two_to_one(
        self, report: ConditionReport, graph: LeveledGraph, t1: Fraction, t2: Fraction
    ) -> None:
        p1, p2 = report.points["t1"], report.points["t2"]
        # Arcs ending at a point of a cut level share the single edge through it.
        for name, many, one, reverse in (("C5.1", p1, p2, False), ("C5.2", p2, p1, True)):
            for q in one:
                arcs = []
                for p in many:
                    start, end = (q, p) if reverse else (p, q)
                    arc = self._arc(graph, start, end, t1, t2, f"e({start},{end})")
                    if arc is not None:
                        arcs.append(arc)
                    if len(arcs) == 2:
                        break
                if len(arcs) == 2:
                    report.arcs.extend(arcs)
                    report.add("C5", True, name)
                    return
        report.add(
            "C5",
            False,
            f"no two points on one cut level joined over ({format_rational(t1)}, "
            f"{format_rational(t2)}) to a common point ({len(p1)} and {len(p2)} points)",
        )

    def _check_three_by_three(
        self, report: ConditionReport, graph: LeveledGraph, t1: Fraction, t2: Fraction
    ) -> None:
        p1, p2 = report.points["t1"], report.points["t2"]
        arcs = self._complete_family(graph, p1, p2, 3, 3, t1, t2)
        if arcs is None:
            report.add(
                "C5'",
                False,
                f"no 3x3 arc family over ({format_rational(t1)}, {format_rational(t2)})",
            )
            return
        report.arcs.extend(arcs)
        report.add("C5'", True)

    def _complete_family(
        self,
        graph: LeveledGraph,
        lower: Sequence[int],
        upper: Sequence[int],
        a: int,
        b: int,
        t1: Fraction,
        t2: Fraction,
    ) -> Optional[List[Arc]]:
        """First pair of subsets of sizes a, b joined by all a*b arcs over (t1, t2)."""
        found = {}
        for p in lower:
            for q in upper:
                arc = self._arc(graph, p, q, t1, t2, f"e({p},{q})")
                if arc is not None:
                    found[(p, q)] = arc
        for left in combinations(sorted(lower), a):
            for right in combinations(sorted(upper), b):
                if all((p, q) in found for p in left for q in right):
                    return [found[(p, q)] for p in left for q in right]
        return None

    def _same_level_arc(
        self,
        graph: LeveledGraph,
        start: int,
        end: int,
        regions: Sequence[Tuple[Bound, Bound]],
    ) -> Optional[Arc]:
        for lo, hi in regions:
            arc = self._arc(graph, start, end, lo, hi, f"e({start},{end})")
            if arc is not None:
                return arc
        return None

    def _check_two_by_three(
        self,
        report: ConditionReport,
        graph: LeveledGraph,
        t1: Fraction,
        t2: Fraction,
        outer: Tuple[Fraction, Fraction],
        reduction: Reduction,
    ) -> None:
        p1, p2 = report.points["t1"], report.points["t2"]
        regions = [(None, t1), (t1, t2), (t2, None)]
        candidates = []
        for left in combinations(sorted(p1), 2):
            for right in combinations(sorted(p2), 3):
                crossing = [self._arc(graph, p, q, t1, t2, f"e({p},{q})") for p in left for q in right]
                low = self._same_level_arc(graph, left[0], left[1], regions)
                high = [self._same_level_arc(graph, a, b, regions) for a, b in combinations(right, 2)]
                low_c = self._arc(graph, left[0], left[1], outer[0], t1, f"e({left[0]},{left[1]})")
                high_b = [self._arc(graph, a, b, t2, outer[1], f"e({a},{b})") for a, b in combinations(right, 2)]
                candidates.append(
                    {
                        "crossing": crossing,
                        "same_level": [low] + high,
                        "remark_c": low_c,
                        "remark_b": high_b,
                    }
                )

        def complete(c: Dict[str, Any]) -> bool:
            return all(c["crossing"]) and all(c["same_level"])

        def licensed(c: Dict[str, Any]) -> bool:
            if reduction in (Reduction.C, Reduction.BC) and c["remark_c"] is None:
                return False
            if reduction in (Reduction.B, Reduction.BC) and not all(c["remark_b"]):
                return False
            return True

        chosen = next((c for c in candidates if complete(c) and licensed(c)), None)
        if chosen is None:
            chosen = next((c for c in candidates if complete(c)), None)
        if chosen is None:
            chosen = next((c for c in candidates if all(c["crossing"])), None)
        if chosen is None:
            report.add(
                "C3.1''",
                False,
                f"no 2x3 arc family over ({format_rational(t1)}, {format_rational(t2)}) "
                f"({len(p1)} and {len(p2)} points)",
            )
            report.add("C3.2''", False, "no 2x3 arc family to connect")
            return

        report.arcs.extend(chosen["crossing"])
        report.add("C3.1''", True)
        same_level = chosen["same_level"]
        if all(same_level):
            report.arcs.extend(same_level)
            report.add("C3.2''", True)
        else:
            report.add("C3.2''", False, "some same-level pair has no arc avoiding both cut levels")

        if reduction in (Reduction.C, Reduction.BC):
            report.add(
                "reduction.C",
                chosen["remark_c"] is not None,
                f"the t1 pair is not joined within ({format_rational(outer[0])}, {format_rational(t1)})",
            )
        if reduction in (Reduction.B, Reduction.BC):
            report.add(
                "reduction.B",
                all(chosen["remark_b"]),
                f"some t2 pair is not joined within ({format_rational(t2)}, {format_rational(outer[1])})",
            )

    def _check_planar_realisation(self, graph: LeveledGraph) -> ConditionReport:
        report = ConditionReport(TheoremTag.THM2, graph=graph)
        components = graph.components()
        report.add("connected", len(components) == 1, f"{len(components)} components")
        bad_degree = sorted(v for v in graph.vertices if graph.degree(v) not in (1, 3))
        report.add("degrees", not bad_degree, f"vertices {bad_degree} have degree outside {{1, 3}}")
        levels = [graph.level(v) for v in graph.vertices]
        report.add(
            "distinct_levels",
            len(set(levels)) == len(levels),
            "two vertices share a level",
        )
        bad_extrema = sorted(
            v
            for v in graph.vertices
            if graph.degree(v) != 1 and (not graph.lower_edges(v) or not graph.upper_edges(v))
        )
        report.add(
            "extrema",
            not bad_extrema,
            f"vertices {bad_extrema} are local extrema of degree greater than one",
        )
        result = self.planarity.level_planarity_test(graph)
        report.add("level_planar", result.level_planar, "no crossing-free x-monotone drawing")
        return report

    # === Families ===

    def _base_graph(self, base: NCDomain, base_graph: Optional[LeveledGraph]) -> LeveledGraph:
        if base_graph is not None:
            return base_graph
        if base.ambient_dim != 2:
            raise UnsupportedDomainError(
                "The exact sweep needs a planar base; pass its Reeb graph explicitly",
                {"ambient_dim": base.ambient_dim},
            )
        return self.reeb.reeb_exact(base)

    @staticmethod
    def _factor_radius(
        bands: Sequence[Tuple[Fraction, Fraction, int]],
        center: Fraction,
        graph: LeveledGraph,
        stagger: bool,
    ) -> Fraction:
        """
        Smallest integer outer radius for the factor.

        It clears the builder's floor, fits every hole and leaves the factor's
        outer extremes strictly beyond the base graph's levels.
        """
        reach = max(abs(t - center) for lo, hi, _ in bands for t in (lo, hi))
        lo, hi = graph.level_range()
        bound = max(3 * reach, Fraction(math.floor(max(center - lo, hi - center)) + 1))
        for index, (t1, t2, count) in enumerate(bands):
            r = (t2 - t1) / 2
            for offset in hole_offsets(count, r, stagger and index % 2 == 1):
                distance = math.sqrt(float(((t1 + t2) / 2 - center) ** 2 + offset**2))
                bound = max(bound, Fraction(math.ceil(distance + float(2 * r))))
        return Fraction(math.ceil(bound))

    def _generate(
        self,
        tag: TheoremTag,
        base: NCDomain,
        graph: LeveledGraph,
        spec: BandSpec,
        indices: Tuple[int, ...],
        levels: Tuple[Fraction, Fraction],
        report: ConditionReport,
        reduction: Reduction = Reduction.NONE,
        auxiliary: Optional[Dict[str, Fraction]] = None,
    ) -> FamilyResult:
        factor = self.domains.build_band_domain(spec)
        factor_graph = self.reeb.reeb_exact(factor)
        prediction = self.graphs.fiber_product(graph, factor_graph)
        domain = self.domains.lift_product(base, factor)
        folds = [
            FoldCount(band.t1, band.t2, self.graphs.sheet_count(factor_graph, band.center))
            for band in spec.bands
        ]
        result = FamilyResult(
            tag=tag,
            indices=indices,
            levels=levels,
            factor=spec,
            domain=domain,
            prediction=prediction,
            fold_counts=folds,
            manifold_dimension=domain.ambient_dim + domain.num_constraints,
            reduction=reduction,
            auxiliary_levels=auxiliary or {},
            report=report,
        )
        logger.info(
            "family_member_generated",
            tag=tag.value,
            indices=list(indices),
            folds=[f.fold for f in folds],
            vertices=prediction.num_vertices,
            edges=prediction.num_edges,
        )
        return result

    def _require(self, report: ConditionReport) -> None:
        if not report.passed:
            raise ConditionError(
                f"Hypotheses of {report.tag.value} do not hold: {'; '.join(report.diagnostics)}",
                report,
            )

    def _single_band_family(
        self,
        tag: TheoremTag,
        base: NCDomain,
        t1: Any,
        t2: Any,
        i: int,
        holes: int,
        factor_center: Optional[Any],
        factor_radius: Optional[Any],
        base_graph: Optional[LeveledGraph],
    ) -> FamilyResult:
        if i <= 0:
            raise InvalidParameterError(f"Family index must be positive, got {i}")
        graph = self._base_graph(base, base_graph)
        report = self.validate_conditions(graph, t1, t2, tag)
        self._require(report)
        t1, t2 = to_fraction(t1), to_fraction(t2)
        center = (
            tuple(to_fraction(c) for c in factor_center)
            if factor_center is not None
            else ((t1 + t2) / 2, Fraction(0))
        )
        bands = [(t1, t2, holes)]
        radius = (
            to_fraction(factor_radius)
            if factor_radius is not None
            else self._factor_radius(bands, center[0], graph, False)
        )
        spec = BandSpec.create(bands, center, radius)
        return self._generate(tag, base, graph, spec, (i,), (t1, t2), report)

    def mt1_family(
        self,
        base: NCDomain,
        t1: Any,
        t2: Any,
        i: int,
        factor_center: Optional[Sequence[Any]] = None,
        factor_radius: Optional[Any] = None,
        base_graph: Optional[LeveledGraph] = None,
    ) -> FamilyResult:
        """
        Member ``i`` of the non-level-planar family: an (i, t1, t2) band factor.

        Args:
            base: Base domain
            t1: Lower cut level
            t2: Upper cut level
            i: Positive family index; the fold over (t1, t2) is i + 1
            factor_center: Outer circle center of the factor
            factor_radius: Outer circle radius of the factor
            base_graph: Reeb graph of the base; computed for planar bases

        Returns:
            FamilyResult: Lifted domain and predicted Reeb graph

        Raises:
            ConditionError: If the base graph fails the hypotheses
        """
        return self._single_band_family(
            TheoremTag.MT1, base, t1, t2, i, i, factor_center, factor_radius, base_graph
        )

    def mt2_family(
        self,
        base: NCDomain,
        t1: Any,
        t2: Any,
        i: int,
        factor_center: Optional[Sequence[Any]] = None,
        factor_radius: Optional[Any] = None,
        base_graph: Optional[LeveledGraph] = None,
    ) -> FamilyResult:
        """Member ``i`` of the K3,3 family: an (i + 7, t1, t2) band factor."""
        return self._single_band_family(
            TheoremTag.MT2, base, t1, t2, i, i + 7, factor_center, factor_radius, base_graph
        )

    def mt3_family(
        self,
        base: NCDomain,
        t1: Any,
        t2: Any,
        indices: Tuple[int, int, int],
        reduction: Reduction = Reduction.NONE,
        outer_levels: Optional[Tuple[Any, Any]] = None,
        factor_radius: Optional[Any] = None,
        base_graph: Optional[LeveledGraph] = None,
    ) -> FamilyResult:
        """
        Member (i1, i2, i3) of the K5 family.

        The factor has three touching bands (t1', t1), (t1, t2), (t2, t2')
        with i1, i2 + offset and i3 + 1 holes, where the offset is 8 or the
        smaller value licensed by the reduction.

        Raises:
            ConditionError: If the hypotheses, including those of the
                requested reduction, do not hold
        """
        i1, i2, i3 = indices
        if min(indices) <= 0:
            raise InvalidParameterError(f"Family indices must be positive, got {tuple(indices)}")
        reduction = Reduction(reduction)
        graph = self._base_graph(base, base_graph)
        report = self.validate_conditions(graph, t1, t2, TheoremTag.MT3, outer_levels, reduction)
        self._require(report)
        t1, t2 = to_fraction(t1), to_fraction(t2)
        outer = (
            (to_fraction(outer_levels[0]), to_fraction(outer_levels[1]))
            if outer_levels is not None
            else self.default_outer_levels(graph)
        )
        bands = [
            (outer[0], t1, i1),
            (t1, t2, i2 + reduction.middle_offset),
            (t2, outer[1], i3 + 1),
        ]
        center = (outer[0] + outer[1]) / 2
        radius = (
            to_fraction(factor_radius)
            if factor_radius is not None
            else self._factor_radius(bands, center, graph, True)
        )
        spec = BandSpec.create(bands, (center, 0), radius, stagger=True)
        auxiliary = {
            "t1_outer": outer[0],
            "t2_outer": outer[1],
            "t0": (outer[0] + t1) / 2,
            "t3": (t2 + outer[1]) / 2,
        }
        return self._generate(
            TheoremTag.MT3, base, graph, spec, (i1, i2, i3), (t1, t2), report, reduction, auxiliary
        )


# Singleton instance
_theorem_service: TheoremService | None = None


def get_theorem_service() -> TheoremService:
    """
    Get theorem service instance (singleton).

    Returns:
        TheoremService: Theorem service instance
    """
    global _theorem_service
    if _theorem_service is None:
        _theorem_service = TheoremService()
    return _theorem_service


# Convenience exports
validate_conditions = lambda graph, t1=None, t2=None, tag=TheoremTag.MT1, **kw: (  # noqa: E731
    get_theorem_service().validate_conditions(graph, t1, t2, tag, **kw)
)
mt1_family = lambda base, t1, t2, i, **kw: get_theorem_service().mt1_family(base, t1, t2, i, **kw)  # noqa: E731
mt2_family = lambda base, t1, t2, i, **kw: get_theorem_service().mt2_family(base, t1, t2, i, **kw)  # noqa: E731
mt3_family = lambda base, t1, t2, indices, **kw: get_theorem_service().mt3_family(  # noqa: E731
    base, t1, t2, indices, **kw
)
