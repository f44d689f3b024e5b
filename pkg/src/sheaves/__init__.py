from src.sheaves.bundle_map import BundleMap, graded_piece
from src.sheaves.kernel import (
    H0Profile,
    ImageData,
    KernelResult,
    full_rank_colength,
    generic_rank,
    image_data,
    is_saturated_inclusion,
    kernel_h0,
    kernel_splitting,
    rank_one_image_degree,
)
from src.sheaves.splitting import SplittingType, cohomology_line

__all__ = [
    "SplittingType", "cohomology_line",
    "BundleMap", "graded_piece",
    "H0Profile", "ImageData", "KernelResult",
    "kernel_splitting", "kernel_h0", "image_data", "generic_rank",
    "full_rank_colength", "rank_one_image_degree", "is_saturated_inclusion",
]
