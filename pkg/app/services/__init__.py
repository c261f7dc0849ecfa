"""
Services package.

Provides the computation layer of the toolkit.
"""

from app.services.domain_service import DomainService, get_domain_service
from app.services.graph_service import GraphService, get_graph_service
from app.services.reeb_service import ReebService, get_reeb_service
from app.services.grid_oracle import GridOracle, get_grid_oracle
from app.services.planarity_service import PlanarityService, get_planarity_service
from app.services.theorem_service import TheoremService, get_theorem_service
from app.services.algebraic_service import AlgebraicService, get_algebraic_service
from app.services.export_service import ExportService, get_export_service

__all__ = [
    "DomainService",
    "GraphService",
    "ReebService",
    "GridOracle",
    "PlanarityService",
    "TheoremService",
    "AlgebraicService",
    "ExportService",
    "get_domain_service",
    "get_graph_service",
    "get_reeb_service",
    "get_grid_oracle",
    "get_planarity_service",
    "get_theorem_service",
    "get_algebraic_service",
    "get_export_service",
]
