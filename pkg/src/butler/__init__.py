from src.butler.diagram import (
    ButlerAudit,
    ButlerDiagram,
    DegData,
    PropertyCheck,
    audit_properties,
    butler_from_subbundle,
    max_slope_subbundle,
    summand_inclusion,
)

__all__ = [
    "ButlerDiagram", "ButlerAudit", "DegData", "PropertyCheck",
    "butler_from_subbundle", "audit_properties", "max_slope_subbundle", "summand_inclusion",
]
