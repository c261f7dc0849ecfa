"""
DOT export of leveled graphs.

Levels map to horizontal ranks so the function increases left to right.
"""

from pathlib import Path
from typing import Dict, List, Optional

from jinja2 import Environment, FileSystemLoader, StrictUndefined

from app.core.logging import get_logger
from app.models.graph import LeveledGraph
from app.models.planarity import KuratowskiWitness
from app.utils.rationals import format_rational

logger = get_logger(__name__)

TEMPLATE_DIR = Path(__file__).resolve().parent.parent / "templates"
PATH_COLORS = ["red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "teal", "gold", "navy"]


class ExportService:
    """Service for rendering graphs."""

    def __init__(self):
        """Initialize export service."""
        self.env = Environment(
            loader=FileSystemLoader(str(TEMPLATE_DIR)),
            undefined=StrictUndefined,
            trim_blocks=True,
            lstrip_blocks=True,
            keep_trailing_newline=True,
        )

    def to_dot(
        self,
        graph: LeveledGraph,
        witness: Optional[KuratowskiWitness] = None,
        name: str = "reeb",
    ) -> str:
        """
        Render a graph as DOT.

        Args:
            graph: Graph to render
            witness: Kuratowski witness to highlight
            name: Graph name

        Returns:
            str: DOT source, deterministic for equal graphs
        """
        branch = set(witness.branch_vertices) if witness else set()
        colors: Dict[int, str] = {}
        if witness:
            for index, path in enumerate(witness.paths):
                color = PATH_COLORS[index % len(PATH_COLORS)]
                for u, v in zip(path, path[1:]):
                    candidates = [
                        e.id
                        for e in graph.edges.values()
                        if {e.lower, e.upper} == {u, v} and e.id not in colors
                    ]
                    if candidates:
                        colors[min(candidates)] = color

        ranks: List[Dict] = []
        for level in graph.levels():
            ranks.append(
                {
                    "vertices": [
                        {
                            "id": v,
                            "essential": graph.vertices[v].essential,
                            "label": format_rational(level),
                            "branch": v in branch,
                        }
                        for v in sorted(graph.vertices_at(level))
                    ]
                }
            )
        edges = [
            {"id": e.id, "lower": e.lower, "upper": e.upper, "color": colors.get(e.id)}
            for e in sorted(graph.edges.values(), key=lambda e: e.id)
        ]
        dot = self.env.get_template("graph.dot.j2").render(name=name, ranks=ranks, edges=edges)
        logger.debug("graph_exported", format="dot", vertices=graph.num_vertices, highlighted=len(colors))
        return dot


# Singleton instance
_export_service: ExportService | None = None


def get_export_service() -> ExportService:
    """
    Get export service instance (singleton).

    Returns:
        ExportService: Export service instance
    """
    global _export_service
    if _export_service is None:
        _export_service = ExportService()
    return _export_service


# Convenience exports
to_dot = lambda graph, witness=None, name="reeb": get_export_service().to_dot(graph, witness, name)  # noqa: E731
