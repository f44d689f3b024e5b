from src.numerology.audits import (
    bielliptic_audit,
    counterex_dims_audit,
    elliptic_dims_audit,
    exa_one_audit,
    exa_three_audit,
    exa_two_audit,
    gonality_audit,
    grassmannian_dim,
    rank_two_criterion_audit,
    riemann_roch,
)
from src.numerology.gonality import GonalityPreset, GonalityProfile, gonality_lookup
from src.numerology.grid import GRIDS, GridReport, run_grid
from src.numerology.rows import Audit, AuditRow, Cmp, RowBuilder

__all__ = [
    "Audit", "AuditRow", "Cmp", "RowBuilder",
    "GonalityPreset", "GonalityProfile", "gonality_lookup",
    "riemann_roch", "grassmannian_dim",
    "exa_one_audit", "exa_two_audit", "exa_three_audit",
    "elliptic_dims_audit", "counterex_dims_audit", "bielliptic_audit",
    "rank_two_criterion_audit", "gonality_audit",
    "GRIDS", "GridReport", "run_grid",
]
