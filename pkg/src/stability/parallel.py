"""Parallel subspace sweeps via ProcessPoolExecutor.

The Grassmannian of each dimension is cut into disjoint index ranges; each
worker checks one range and returns its counts and its violation/equality
certificates.  Results are merged in chunk order and the certificates sorted
canonically afterwards, so the verdict does not depend on worker count.

Usage:
    from src.stability.parallel import sweep_subspaces

    items = [(sys, w, lo, hi, rhs) for ...]
    results = sweep_subspaces(items, max_workers=4)
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from src.coherent.system import CoherentSystemP1
    from src.stability.certificates import LinStabCertificate

SweepItem = tuple["CoherentSystemP1", int, int, int, Fraction]


@dataclass
class ChunkResult:
    examined: int
    nontrivial: int
    certificates: list["LinStabCertificate"]


# ── Worker function (top-level for pickling) ─────────────────────────

def _sweep_worker(item: SweepItem) -> ChunkResult:
    """Check every w-dimensional subspace with index in [lo, hi).

    Each W is screened with the system's cached graded pieces; only
    violations and equalities are rebuilt as full certificates, and those
    must agree with the screen.
    """
    sys, w, lo, hi, rhs = item
    from src.coherent.system import GradedEvaluation, check_image_dichotomy
    from src.core.errors import CertificationError
    from src.stability.grassmann import GrassmannEnumerator
    from src.stability.linear import certificate_for

    graded = GradedEvaluation(sys)
    enum = GrassmannEnumerator(sys.n, w, sys.field.p)
    examined = nontrivial = 0
    kept: list = []
    for basis in enum.iter_range(lo, hi):
        examined += 1
        data = graded.image_data(basis)
        check_image_dichotomy(w, data)
        if data.degree == 0:
            continue
        nontrivial += 1
        lhs = Fraction(data.degree, w - data.rank)
        if lhs > rhs:
            continue
        cert = certificate_for(sys, basis, rhs)
        if cert is None or cert.lhs != lhs:
            raise CertificationError(f"graded screen gave {lhs} for W = {basis}, "
                                     f"the exact subsheaf gave {cert and cert.lhs}")
        kept.append(cert)
    return ChunkResult(examined, nontrivial, kept)


# ── Public API ───────────────────────────────────────────────────────

def sweep_subspaces(items: list[SweepItem], max_workers: int | None = None) -> list[ChunkResult]:
    """Run the sweep chunks, in parallel when more than one worker is allowed.

    Results come back in the order of ``items``.
    """
    if max_workers is None:
        max_workers = min(os.cpu_count() or 4, 8)

    if max_workers <= 1 or len(items) <= 1:
        return [_sweep_worker(item) for item in items]

    with ProcessPoolExecutor(max_workers=max_workers) as pool:
        return list(pool.map(_sweep_worker, items))
