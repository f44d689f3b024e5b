from src.hyperelliptic.pipeline import (
    DestabilizerRecord,
    HyperellipticModel,
    HyperellipticReport,
    MultMapKernel,
    PullbackSeries,
    destabilizer_check,
    dimension_ledger,
    h0_Hm,
    hyperelliptic_pipeline,
    mult_map_kernel,
    random_vbar,
)

__all__ = [
    "HyperellipticModel", "PullbackSeries", "MultMapKernel", "DestabilizerRecord",
    "HyperellipticReport", "h0_Hm", "mult_map_kernel", "random_vbar", "destabilizer_check",
    "dimension_ledger", "hyperelliptic_pipeline",
]
