"""
Planarity service.

Planarity with Kuratowski witnesses, and level planarity of leveled graphs
(crossing-free drawings in which every edge is x-monotone).
"""

from collections import defaultdict
from fractions import Fraction
from itertools import combinations, permutations
from typing import Dict, List, Optional, Sequence, Set, Tuple

import networkx as nx

from app.core.config import get_settings
from app.core.logging import get_logger
from app.models.graph import LeveledGraph
from app.models.planarity import (
    KuratowskiKind,
    KuratowskiWitness,
    LevelEmbedding,
    LevelPlanarityResult,
    PlanarityResult,
)
from app.services.graph_service import get_graph_service
from app.utils.exceptions import CapacityError, CertificateError

logger = get_logger(__name__)


class _BudgetExceeded(Exception):
    pass


def _subdivided(graph: LeveledGraph) -> nx.Graph:
    """
    Simple graph with every parallel edge beyond the first subdivided.

    Subdivision vertices get negative ids.
    """
    simple = nx.Graph()
    simple.add_nodes_from(graph.vertices)
    virtual = -1
    for edge in sorted(graph.edges.values(), key=lambda e: e.id):
        u, v = edge.lower, edge.upper
        if simple.has_edge(u, v):
            simple.add_edge(u, virtual)
            simple.add_edge(virtual, v)
            virtual -= 1
        else:
            simple.add_edge(u, v)
    return simple


def _strip_virtual(path: Sequence[int]) -> Tuple[int, ...]:
    return tuple(v for v in path if v >= 0)


class PlanarityService:
    """Service for planarity and level planarity decisions."""

    def __init__(self):
        """Initialize planarity service."""
        self.settings = get_settings()
        self.graphs = get_graph_service()

    # === Planarity ===

    def planarity_test(
        self,
        graph: LeveledGraph,
        kind: Optional[KuratowskiKind] = None,
        cap: Optional[int] = None,
    ) -> PlanarityResult:
        """
        Decide planarity, ignoring levels.

        Args:
            graph: Graph to test; parallel edges are allowed
            kind: Preferred witness kind for non-planar graphs
            cap: Vertex cap; defaults to the configured planarity cap

        Returns:
            PlanarityResult: Rotation system and face count, or a validated witness

        Raises:
            CapacityError: If the graph exceeds the cap
        """
        cap = cap or self.settings.planarity_cap
        if graph.num_vertices > cap:
            raise CapacityError(
                f"Planarity test limited to {cap} vertices, got {graph.num_vertices}",
                {"cap": cap, "vertices": graph.num_vertices},
            )
        simple = _subdivided(graph)
        planar, certificate = nx.check_planarity(simple, counterexample=True)
        if planar:
            rotation = {v: list(certificate.neighbors_cw_order(v)) for v in certificate.nodes}
            faces = self._count_faces(certificate)
            logger.info("planarity_decided", planar=True, faces=faces)
            return PlanarityResult(True, rotation_system=rotation, faces=faces)

        witness = None
        if kind is not None:
            witness = self.find_subdivision(graph, kind)
        if witness is None:
            witness = self._witness_from_counterexample(certificate)
        problems = self.validate_witness(graph, witness)
        if problems:
            raise CertificateError(
                "Extracted Kuratowski witness failed validation",
                {"kind": witness.kind.value, "problems": problems},
            )
        logger.info(
            "planarity_decided",
            planar=False,
            kind=witness.kind.value,
            branch_vertices=list(witness.branch_vertices),
        )
        return PlanarityResult(False, witness=witness)

    @staticmethod
    def _count_faces(embedding: nx.PlanarEmbedding) -> int:
        visited: Set[Tuple[int, int]] = set()
        faces = 0
        for u, v in embedding.edges():
            if (u, v) in visited:
                continue
            embedding.traverse_face(u, v, mark_half_edges=visited)
            faces += 1
        return max(faces, 1)

    def _witness_from_counterexample(self, subgraph: nx.Graph) -> KuratowskiWitness:
        branch = sorted(v for v in subgraph.nodes if subgraph.degree(v) >= 3)
        branch_set = set(branch)
        paths: List[Tuple[int, ...]] = []
        seen: Set[frozenset] = set()
        for start in branch:
            for neighbor in sorted(subgraph.neighbors(start)):
                path = [start, neighbor]
                while path[-1] not in branch_set:
                    step = next(n for n in subgraph.neighbors(path[-1]) if n != path[-2])
                    path.append(step)
                key = frozenset([(path[0], path[1]), (path[-1], path[-2])])
                if key in seen:
                    continue
                seen.add(key)
                if path[0] > path[-1]:
                    path.reverse()
                paths.append(_strip_virtual(path))

        if len(branch) == 5:
            return KuratowskiWitness(KuratowskiKind.K5, tuple(branch), tuple(sorted(paths)))
        contracted = nx.Graph((p[0], p[-1]) for p in paths)
        left, right = nx.bipartite.sets(contracted)
        sides = tuple(sorted(left)) + tuple(sorted(right))
        if min(sides[:3]) > min(sides[3:]):
            sides = sides[3:] + sides[:3]
        return KuratowskiWitness(KuratowskiKind.K33, sides, tuple(sorted(paths)))

    def find_subdivision(
        self, graph: LeveledGraph, kind: KuratowskiKind, budget: Optional[int] = None
    ) -> Optional[KuratowskiWitness]:
        """
        Search for a subdivision of the requested kind.

        Branch sets are tried by descending degree. Disjoint paths are routed
        pair by pair, the pairs with the smallest local connectivity first,
        each along the shortest simple paths avoiding vertices already used.

        Returns:
            Optional[KuratowskiWitness]: Witness, or None if none was found within the budget
        """
        budget = budget or self.settings.kuratowski_search_budget
        simple = nx.Graph()
        simple.add_nodes_from(graph.vertices)
        simple.add_edges_from((e.lower, e.upper) for e in graph.edges.values())
        need = 4 if kind is KuratowskiKind.K5 else 3
        candidates = sorted(
            (v for v in simple.nodes if simple.degree(v) >= need),
            key=lambda v: (-simple.degree(v), v),
        )
        size = 5 if kind is KuratowskiKind.K5 else 6
        steps = [0]
        try:
            for branch in combinations(candidates, size):
                for sides in self._partitions(branch, kind):
                    witness = self._route(simple, kind, sides, budget, steps)
                    if witness is not None:
                        logger.debug("subdivision_found", kind=kind.value, steps=steps[0])
                        return witness
        except _BudgetExceeded:
            logger.warning("subdivision_search_budget_exhausted", kind=kind.value, budget=budget)
        return None

    @staticmethod
    def _partitions(
        branch: Tuple[int, ...], kind: KuratowskiKind
    ) -> List[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
        if kind is KuratowskiKind.K5:
            return [(tuple(sorted(branch)), ())]
        first = min(branch)
        result = []
        for others in combinations(sorted(set(branch) - {first}), 2):
            left = tuple(sorted((first,) + others))
            right = tuple(sorted(set(branch) - set(left)))
            result.append((left, right))
        return result

    def _route(
        self,
        simple: nx.Graph,
        kind: KuratowskiKind,
        sides: Tuple[Tuple[int, ...], Tuple[int, ...]],
        budget: int,
        steps: List[int],
    ) -> Optional[KuratowskiWitness]:
        left, right = sides
        branch = set(left) | set(right)
        if kind is KuratowskiKind.K5:
            pairs = list(combinations(left, 2))
        else:
            pairs = [(a, b) for a in left for b in right]

        def connectivity(pair: Tuple[int, int]) -> int:
            others = branch - set(pair)
            view = nx.restricted_view(simple, others, [])
            if view.has_edge(*pair):
                return 1
            return nx.algorithms.connectivity.local_node_connectivity(view, *pair)

        ranked = sorted(pairs, key=lambda p: (connectivity(p), p))
        if any(connectivity(p) == 0 for p in ranked):
            return None
        chosen: Dict[Tuple[int, int], Tuple[int, ...]] = {}

        def extend(index: int, used: Set[int]) -> bool:
            if index == len(ranked):
                return True
            u, v = ranked[index]
            blocked = (branch - {u, v}) | used
            view = nx.restricted_view(simple, blocked, [])
            try:
                for path in nx.shortest_simple_paths(view, u, v):
                    steps[0] += 1
                    if steps[0] > budget:
                        raise _BudgetExceeded()
                    chosen[(u, v)] = tuple(path)
                    if extend(index + 1, used | set(path[1:-1])):
                        return True
                    if len(path) > len(simple):
                        break
            except nx.NetworkXNoPath:
                pass
            chosen.pop((u, v), None)
            return False

        if not extend(0, set()):
            return None
        paths = tuple(sorted(chosen[p] if p[0] < p[1] else tuple(reversed(chosen[p])) for p in chosen))
        return KuratowskiWitness(kind, left + right, paths)

    def validate_witness(self, graph: LeveledGraph, witness: KuratowskiWitness) -> List[str]:
        """
        Check a witness against the graph.

        Returns:
            List[str]: Every problem found; empty when the witness is a valid subdivision
        """
        problems: List[str] = []
        nxg = graph.to_networkx()
        branch = list(witness.branch_vertices)
        expected = 5 if witness.kind is KuratowskiKind.K5 else 6
        if len(branch) != expected or len(set(branch)) != expected:
            problems.append(f"expected {expected} distinct branch vertices, got {branch}")
            return problems
        if witness.kind is KuratowskiKind.K5:
            required = {frozenset(p) for p in combinations(branch, 2)}
        else:
            left, right = witness.sides
            required = {frozenset((a, b)) for a in left for b in right}

        covered: Set[frozenset] = set()
        interior_seen: Set[int] = set()
        for path in witness.paths:
            if len(path) < 2:
                problems.append(f"path {path} is too short")
                continue
            ends = frozenset((path[0], path[-1]))
            if ends not in required:
                problems.append(f"path {path} does not join a required branch pair")
            elif ends in covered:
                problems.append(f"branch pair {sorted(ends)} is joined twice")
            covered.add(ends)
            for u, v in zip(path, path[1:]):
                if not nxg.has_edge(u, v):
                    problems.append(f"path {path} uses missing edge ({u}, {v})")
            interior = path[1:-1]
            if len(set(interior)) != len(interior):
                problems.append(f"path {path} is not simple")
            for vertex in interior:
                if vertex in branch:
                    problems.append(f"path {path} passes through branch vertex {vertex}")
                if vertex in interior_seen:
                    problems.append(f"vertex {vertex} is interior to two paths")
                interior_seen.add(vertex)
        missing = required - covered
        if missing:
            problems.append(f"branch pairs without a path: {sorted(sorted(p) for p in missing)}")
        return problems

    # === Level planarity ===

    def _proper(self, graph: LeveledGraph, cap: Optional[int]) -> LeveledGraph:
        proper = self.graphs.refine(graph, graph.levels())
        cap = cap or self.settings.level_planarity_cap
        if proper.num_vertices > cap:
            raise CapacityError(
                f"Proper refinement has {proper.num_vertices} vertices, cap is {cap}",
                {"cap": cap, "vertices": proper.num_vertices},
            )
        return proper

    @staticmethod
    def _layers(proper: LeveledGraph) -> Tuple[List[Fraction], List[List[int]], Dict[int, Set[int]]]:
        levels = proper.levels()
        layers = [sorted(proper.vertices_at(level)) for level in levels]
        lower: Dict[int, Set[int]] = defaultdict(set)
        for edge in proper.edges.values():
            lower[edge.upper].add(edge.lower)
        return levels, layers, lower

    def level_planarity_test(self, graph: LeveledGraph, cap: Optional[int] = None) -> LevelPlanarityResult:
        """
        Decide whether the graph has a crossing-free drawing with x-monotone edges.

        The graph is refined at every vertex level so that all edges join
        consecutive levels; per-level orders are then built left to right by
        backtracking. A vertex may follow the already placed ones only if its
        leftmost lower neighbour is not left of any of their lower neighbours.

        Raises:
            CapacityError: If the refinement exceeds the cap or the search exceeds its budget
        """
        proper = self._proper(graph, cap)
        levels, layers, lower = self._layers(proper)
        budget = self.settings.level_planarity_budget
        steps = [0]
        failed: Set[Tuple[int, Tuple[int, ...]]] = set()
        orders: List[Tuple[int, ...]] = []

        def place_level(index: int, above: Dict[int, int]) -> bool:
            if index == len(layers):
                return True
            layer = layers[index]

            def build(order: List[int], remaining: List[int], frontier: int) -> bool:
                steps[0] += 1
                if steps[0] > budget:
                    raise CapacityError(
                        f"Level planarity search exceeded {budget} steps",
                        {"budget": budget},
                    )
                if not remaining:
                    key = (index, tuple(order))
                    if key in failed:
                        return False
                    orders.append(tuple(order))
                    if place_level(index + 1, {v: i for i, v in enumerate(order)}):
                        return True
                    orders.pop()
                    failed.add(key)
                    return False
                for w in remaining:
                    below = [above[a] for a in lower[w]]
                    if below and min(below) < frontier:
                        continue
                    nxt = max([frontier] + below)
                    rest = [r for r in remaining if r != w]
                    if build(order + [w], rest, nxt):
                        return True
                return False

            return build([], layer, -1)

        found = place_level(0, {})
        logger.info("level_planarity_decided", level_planar=found, steps=steps[0])
        if not found:
            return LevelPlanarityResult(False)
        embedding = LevelEmbedding(proper, tuple(zip(levels, orders)))
        return LevelPlanarityResult(True, embedding)

    def count_inversions(self, embedding: LevelEmbedding) -> int:
        """Pairs of edges between consecutive levels whose endpoint orders interleave."""
        position = {v: i for _, order in embedding.orders for i, v in enumerate(order)}
        graph = embedding.graph
        spans: Dict[Fraction, Set[Tuple[int, int]]] = defaultdict(set)
        for edge in graph.edges.values():
            spans[graph.level(edge.lower)].add((edge.lower, edge.upper))
        inversions = 0
        for pairs in spans.values():
            for (a, b), (c, d) in combinations(sorted(pairs), 2):
                if (position[a] - position[c]) * (position[b] - position[d]) < 0:
                    inversions += 1
        return inversions

    def level_planarity_oracle(self, graph: LeveledGraph) -> bool:
        """
        Brute force over per-level permutations; for small graphs only.

        Raises:
            CapacityError: Beyond the configured per-level and level-count bounds
        """
        proper = self.graphs.refine(graph, graph.levels())
        levels, layers, _ = self._layers(proper)
        widest = max((len(layer) for layer in layers), default=0)
        if widest > self.settings.level_oracle_max_per_level or len(layers) > self.settings.level_oracle_max_levels:
            raise CapacityError(
                "Graph too large for the brute-force oracle",
                {"levels": len(layers), "widest_level": widest},
            )
        edges_by_level: Dict[int, List[Tuple[int, int]]] = defaultdict(list)
        index_of = {level: i for i, level in enumerate(levels)}
        for edge in proper.edges.values():
            edges_by_level[index_of[proper.level(edge.lower)]].append((edge.lower, edge.upper))

        def clean(index: int, position: Dict[int, int]) -> bool:
            for (a, b), (c, d) in combinations(edges_by_level[index], 2):
                if (position[a] - position[c]) * (position[b] - position[d]) < 0:
                    return False
            return True

        # orders of a level that admit no completion above it
        dead: Set[Tuple[int, Tuple[int, ...]]] = set()

        def search(index: int, position: Dict[int, int]) -> bool:
            if index == len(layers):
                return True
            for perm in permutations(layers[index]):
                if (index, perm) in dead:
                    continue
                candidate = dict(position)
                candidate.update({v: i for i, v in enumerate(perm)})
                if index > 0 and not clean(index - 1, candidate):
                    continue
                if search(index + 1, candidate):
                    return True
                dead.add((index, perm))
            return False

        return search(0, {})


# Singleton instance
_planarity_service: PlanarityService | None = None


def get_planarity_service() -> PlanarityService:
    """
    Get planarity service instance (singleton).

    Returns:
        PlanarityService: Planarity service instance
    """
    global _planarity_service
    if _planarity_service is None:
        _planarity_service = PlanarityService()
    return _planarity_service


# Convenience exports
planarity_test = lambda graph, kind=None: get_planarity_service().planarity_test(graph, kind)  # noqa: E731
validate_witness = lambda graph, witness: get_planarity_service().validate_witness(graph, witness)  # noqa: E731
level_planarity_test = lambda graph: get_planarity_service().level_planarity_test(graph)  # noqa: E731
level_planarity_oracle = lambda graph: get_planarity_service().level_planarity_oracle(graph)  # noqa: E731
count_inversions = lambda embedding: get_planarity_service().count_inversions(embedding)  # noqa: E731
