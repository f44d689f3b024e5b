"""Linear (semi)stability of coherent systems on P^1.

Only subspaces W whose generated subsheaf E_W is not trivial are compared;
a single nonzero section always generates a copy of O, so one-dimensional
subspaces never matter, and W = V is the boundary case where both sides of
the inequality agree.
"""

from __future__ import annotations

import itertools
import logging
from fractions import Fraction
from typing import Iterator, Sequence

from src.coherent.system import (
    CoherentSystemP1,
    echelon_subspace,
    is_generated,
    subsheaf_generated,
)
from src.core.errors import CertificationError, NotGeneratedError, ResourceGuardError
from src.core.fields import FieldSpec, Scalar
from src.core.forms import BinaryForm, bf_mul
from src.sheaves import linalg
from src.sheaves.bundle_map import forms_to_vector
from src.stability.certificates import (
    Coverage,
    LinStabCertificate,
    StabilityVerdict,
    verdict_from_certificates,
)
from src.stability.config import StabilityConfig
from src.stability.grassmann import GrassmannEnumerator, gaussian_binomial
from src.stability.parallel import sweep_subspaces
from src.utils.seeding import rng_for

log = logging.getLogger(__name__)

FINITE_FIELD_NOTE = (
    "verdict concerns the system over the prime field itself; "
    "no claim is made about a lift to characteristic zero"
)


def reduced_slope(sys: CoherentSystemP1) -> Fraction:
    if sys.n <= sys.r:
        raise ValueError(f"linear stability needs n > r, got type {sys.type_tuple}")
    return Fraction(sys.d, sys.n - sys.r)


def certificate_for(
    sys: CoherentSystemP1, w_coords: Sequence[Sequence[Scalar]], rhs: Fraction
) -> LinStabCertificate | None:
    """Compare one subspace against ``rhs``; None when E_W is trivial."""
    report = subsheaf_generated(sys, w_coords)
    if report.trivial:
        return None
    lhs = Fraction(report.deg_EW, report.dim_w - report.rank_EW)
    # The left side is the slope of the dual of M_{W,E_W}, the kernel of W (x) O -> E.
    if -report.kernel_splitting.slope != lhs:
        raise CertificationError(
            f"lhs {lhs} differs from the dual kernel slope {-report.kernel_splitting.slope}"
        )
    return LinStabCertificate(report, lhs, rhs)


def linstab_check_one(
    sys: CoherentSystemP1, w_coords: Sequence[Sequence[Scalar]]
) -> LinStabCertificate | None:
    if not is_generated(sys):
        raise NotGeneratedError(f"system of type {sys.type_tuple} does not generate E")
    return certificate_for(sys, w_coords, reduced_slope(sys))


def _check_whole_space(sys: CoherentSystemP1, rhs: Fraction) -> None:
    identity = [[sys.field.one if i == j else sys.field.zero for j in range(sys.n)]
                for i in range(sys.n)]
    cert = certificate_for(sys, identity, rhs)
    if cert is None or not cert.is_equality:
        raise CertificationError("W = V must give equality for a generated system")


def linstab_exhaustive(
    sys: CoherentSystemP1, config: StabilityConfig | None = None
) -> StabilityVerdict:
    """Sweep every proper subspace of V over GF(p)."""
    config = config or StabilityConfig()
    fs = sys.field
    if not fs.is_prime:
        raise ValueError("exhaustive sweeps need a prime field")
    if sys.n > config.max_n or fs.p > config.max_prime:
        raise ResourceGuardError(
            f"sweep of n={sys.n} over GF({fs.p}) exceeds the guard "
            f"(n <= {config.max_n}, p <= {config.max_prime})"
        )
    if not is_generated(sys):
        raise NotGeneratedError(f"system of type {sys.type_tuple} does not generate E")
    rhs = reduced_slope(sys)
    _check_whole_space(sys, rhs)

    items = []
    for w in range(2, sys.n):
        enum = GrassmannEnumerator(sys.n, w, fs.p)
        items.extend((sys, w, lo, hi, rhs) for lo, hi in enum.chunks(config.chunk_size))
    log.info("sweeping %s over %s in %d chunks", sys.type_tuple, fs.label, len(items))
    results = sweep_subspaces(items, max_workers=config.max_workers)

    skipped = gaussian_binomial(sys.n, 1, fs.p) if sys.n > 1 else 0
    examined = skipped + sum(r.examined for r in results)
    nontrivial = sum(r.nontrivial for r in results)
    certs = [c for r in results for c in r.certificates]
    verdict = verdict_from_certificates(
        certs, Coverage.EXHAUSTIVE, examined, nontrivial,
        keep=config.keep_certificates, notes=(FINITE_FIELD_NOTE,),
    )
    log.info("sweep of %d subspaces: %s", examined, verdict.kind.value)
    return verdict


# ── Sampled search ───────────────────────────────────────────────────


def vanishing_subspace(
    sys: CoherentSystemP1, divisor: BinaryForm
) -> tuple[tuple[Scalar, ...], ...]:
    """Coordinates of V(-D): the sections of V divisible by the form D."""
    fs = sys.field
    k = divisor.degree
    columns = list(sys.section_vectors)
    for i, a in enumerate(sys.bundle.degrees):
        for power in range(max(a - k + 1, 0)):
            sec = [BinaryForm.zero(fs)] * sys.r
            sec[i] = bf_mul(divisor, BinaryForm.monomial(fs, a - k, power))
            columns.append([fs.neg(x) for x in forms_to_vector(sec, sys.bundle)])
    h0 = sys.bundle.h0()
    rows = [[col[i] for col in columns] for i in range(h0)]
    null = linalg.nullspace(rows, len(columns), fs)
    coords = [v[: sys.n] for v in null if any(c != 0 for c in v[: sys.n])]
    if not coords:
        return ()
    reduced, _ = linalg.rref(coords, sys.n, fs)
    return tuple(tuple(row) for row in reduced)


def _points(fs: FieldSpec) -> list[tuple[Scalar, Scalar]]:
    raw = [(1, 0), (0, 1), (1, 1), (1, -1), (1, 2), (2, 1), (1, -2), (2, -1)]
    seen: set = set()
    out = []
    for s, t in raw:
        s, t = fs(s), fs(t)
        if s == 0 and t == 0:
            continue
        # normalise projective coordinates
        key = (fs.one, fs.div(t, s)) if s != 0 else (fs.zero, fs.one)
        if key not in seen:
            seen.add(key)
            out.append(key)
    return out


def _line_through(fs: FieldSpec, point: tuple[Scalar, Scalar]) -> BinaryForm:
    s0, t0 = point
    # t0 * s - s0 * t vanishes at [s0 : t0]
    return BinaryForm.from_coeffs(fs, [t0, fs.neg(s0)])


def structured_candidates(sys: CoherentSystemP1) -> Iterator[tuple[tuple[Scalar, ...], ...]]:
    """Coordinate subspaces, then subspaces vanishing on small divisors."""
    fs = sys.field
    n = sys.n
    for w in range(2, n):
        for subset in itertools.combinations(range(n), w):
            yield tuple(tuple(fs.one if j == i else fs.zero for j in range(n)) for i in subset)
    lines = [_line_through(fs, p) for p in _points(fs)]
    divisors = [*lines, *(bf_mul(a, a) for a in lines),
                *(bf_mul(a, b) for a, b in itertools.combinations(lines, 2))]
    for divisor in divisors:
        basis = vanishing_subspace(sys, divisor)
        if 2 <= len(basis) < n:
            yield basis


def linstab_sampled(
    sys: CoherentSystemP1,
    samples: int,
    seed: int,
    config: StabilityConfig | None = None,
) -> StabilityVerdict:
    """Search structured and random subspaces; only a violation is conclusive."""
    config = config or StabilityConfig()
    fs = sys.field
    rhs = reduced_slope(sys)
    notes = [f"{samples} random subspaces plus structured candidates; absence of violations "
             "is evidence only"]
    if not is_generated(sys):
        notes.append("system is not generated")

    seen: set = set()
    certs: list[LinStabCertificate] = []
    examined = nontrivial = 0

    def visit(basis: tuple[tuple[Scalar, ...], ...]) -> None:
        nonlocal examined, nontrivial
        if basis in seen:
            return
        seen.add(basis)
        examined += 1
        cert = certificate_for(sys, basis, rhs)
        if cert is not None:
            nontrivial += 1
            if cert.is_violation or cert.is_equality:
                certs.append(cert)

    for basis in structured_candidates(sys):
        visit(echelon_subspace(basis, sys.n, fs))
    if sys.n > 2:
        rng = rng_for(seed, "subspaces")
        for _ in range(samples):
            w = int(rng.integers(2, sys.n))
            coords = [[fs.random_scalar(rng, config.coeff_bound) for _ in range(sys.n)]
                      for _ in range(w)]
            if linalg.rank(coords, sys.n, fs) < w:
                continue
            visit(echelon_subspace(coords, sys.n, fs))

    verdict = verdict_from_certificates(
        certs, Coverage.SAMPLED, examined, nontrivial,
        keep=config.keep_certificates, notes=tuple(notes),
    )
    log.info("sampled %d subspaces of %s: %s", examined, sys.type_tuple, verdict.kind.value)
    return verdict


def linstab(sys: CoherentSystemP1, seed: int = 0, samples: int | None = None,
            config: StabilityConfig | None = None) -> StabilityVerdict:
    """Exhaustive over small prime fields, sampled otherwise."""
    config = config or StabilityConfig()
    fs = sys.field
    if fs.is_prime and sys.n <= config.max_n and fs.p <= config.max_prime:
        return linstab_exhaustive(sys, config)
    return linstab_sampled(sys, samples or config.sampled_subspaces, seed, config)
