"""Exact replays of the numerical arguments that live beyond P^1.

Each audit recomputes every count from its defining formula and sets it
against the value the argument states.  Stated values are kept as they are;
where they disagree with the recomputation the row is marked as a
discrepancy and both chains are carried forward.
"""

from __future__ import annotations

from fractions import Fraction

from src.coherent.numerical import NumericalSystem, pullback_numeric
from src.numerology.gonality import GonalityProfile, gonality_lookup
from src.numerology.rows import Audit, Cmp, RowBuilder
from src.sheaves.splitting import SplittingType
from src.stability.certificates import Relation

WINDOW_NOTE = (
    "window read as 3r + 2a < d < 4r + 2a, matching the later use of d < 4r + 2a"
)


def riemann_roch(r: int, d: int, g: int) -> int:
    """chi = d + r(1 - g)."""
    if r < 1:
        raise ValueError(f"rank must be >= 1, got {r}")
    if g < 0:
        raise ValueError(f"genus must be >= 0, got {g}")
    return d + r * (1 - g)


def grassmannian_dim(k: int, n: int) -> int:
    if not 0 <= k <= n:
        raise ValueError(f"Gr({k}, {n}) is empty")
    return k * (n - k)


# ── Genus 2: K_C inside E ─────────────────────────────────────────────


def exa_one_audit(r: int, a: int, d: int, g: int = 2) -> Audit:
    """Systems of type (r, d, r + m) on a genus-2 curve that are not linearly semistable."""
    if g != 2:
        raise ValueError(f"the canonical-subsystem argument needs genus 2, got {g}")
    if r < 1 or a < 1:
        raise ValueError(f"r and a must be positive, got r={r}, a={a}")
    lo, hi = 3 * r + 2 * a, 4 * r + 2 * a
    if hi - lo < 2:
        raise ValueError(f"empty window {lo} < d < {hi}")
    if not lo < d < hi:
        raise ValueError(f"d = {d} outside the window {lo} < d < {hi}")

    m = d - 2 * r - a
    b = RowBuilder({"r": r, "a": a, "d": d, "g": g})
    b.add("window_lower", lo, d, Cmp.LT, "3r + 2a < d")
    b.add("window_upper", d, hi, Cmp.LT, "d < 4r + 2a")
    b.add("m_positive", m, 0, Cmp.GT, "m = d - 2r - a")
    # h^1(E^v) = d + r against h^1(O) * dim V = 2(r + m)
    b.add("evaluation_dual_not_surjective", d + r, 2 * r + 2 * m, Cmp.LT, "d + r < 2r + 2m")
    canonical = Fraction(2, 2 - 1)
    system = Fraction(d, m)
    b.add("canonical_side", canonical, 2, Cmp.EQ, "deg K / (dim(V cap H^0(K)) - 1)")
    b.add("system_side_exceeds_2", system, 2, Cmp.GT, "d / m > 2 iff d < 4r + 2a")
    b.add("dsb_dual_slope_exceeds_canonical", system, canonical, Cmp.GT, "mu(M^v) = d/m > mu(K)")
    b.add("not_linearly_semistable", canonical, system, Cmp.LT,
          "the canonical subsystem violates the inequality")
    stated = Fraction(d, d - 2 * r - 2 * a)
    b.add("slope_variant", stated, system, Cmp.EQ,
          "stated -d/(d - 2r - 2a) against -d/m with m = d - 2r - a", discrepancy=True)
    return b.build("exa-5.6", notes=(WINDOW_NOTE,))


# ── Strictly semistable E ────────────────────────────────────────────


def exa_two_audit(r: int, d: int, g: int, r_prime: int) -> Audit:
    """A proportional subbundle gives equality, so (E, V) is at best strictly semistable."""
    if not 1 <= r_prime < r:
        raise ValueError(f"subbundle rank must satisfy 1 <= r' < r, got r'={r_prime}, r={r}")
    if d <= 2 * r * g - r:
        raise ValueError(f"needs d > 2rg - r = {2 * r * g - r}, got d = {d}")
    if (d * r_prime) % r:
        raise ValueError(f"d' = d r'/r = {Fraction(d * r_prime, r)} is not an integer")
    if d <= r * g:
        raise ValueError(f"needs d > rg so that h^0(E) > r, got d = {d}")
    d_prime = d * r_prime // r

    b = RowBuilder({"r": r, "d": d, "g": g, "r_prime": r_prime})
    b.add("degree_bound", d, 2 * r * g - r, Cmp.GT, "d > 2rg - r")
    # h^1 of a semistable bundle of slope > 2g - 2 vanishes
    b.add("h1_vanishes_sub", Fraction(d_prime, r_prime), 2 * g - 2, Cmp.GT, "d'/r' > 2g - 2")
    b.add("h1_vanishes", Fraction(d, r), 2 * g - 2, Cmp.GT, "d/r > 2g - 2")
    b.add("positivity", d - r * g, 0, Cmp.GT, "d - rg > 0")

    h0_sub = riemann_roch(r_prime, d_prime, g)
    h0 = riemann_roch(r, d, g)
    first = Fraction(d_prime, h0_sub - r_prime)
    second = Fraction(d_prime, d_prime - r_prime * (g - 1) - r_prime)
    third = Fraction(d_prime, r_prime) / (Fraction(d_prime, r_prime) - g)
    fourth = Fraction(d, r) / (Fraction(d, r) - g)
    fifth = Fraction(d, d - r * g)
    b.add("chain_riemann_roch", first, second, Cmp.EQ, "h0(E') = d' - r'(g - 1)")
    b.add("chain_normalise", second, third, Cmp.EQ)
    b.add("chain_proportional", third, fourth, Cmp.EQ, "d'/r' = d/r")
    b.add("chain_clear", fourth, fifth, Cmp.EQ)
    b.add("reduced_slopes_equal", first, Fraction(d, h0 - r), Cmp.EQ,
          "subsystem meets the system's reduced slope")
    return b.build("exa-5.8")


# ── Semistable E with a generated subsystem ──────────────────────────


def exa_three_audit(r: int, d: int, n: int, s: int, e: int, m: int) -> Audit:
    if e <= 0 or m <= s:
        raise ValueError(f"needs e > 0 and m > s, got e={e}, m={m}, s={s}")
    if n <= r:
        raise ValueError(f"needs n > r, got n={n}, r={r}")
    b = RowBuilder({"r": r, "d": d, "n": n, "s": s, "e": e, "m": m})
    one = b.add("subsystem_count", Fraction(s, r * (m - s)), Fraction(1, n - r), Cmp.LE,
                "s / (r(m - s)) <= 1 / (n - r)")
    two = b.add("semistable_degree_bound", e, Fraction(d * s, r), Cmp.LE, "e <= ds / r")
    if not (one.passed and two.passed):
        return b.build("exa-5.9", notes=("a hypothesis fails; no conclusion drawn",),
                       applicable=False)

    lhs = Fraction(e, m - s)
    middle = Fraction(d * s, r * (m - s))
    rhs = Fraction(d, n - r)
    b.add("first_inequality", lhs, middle, Cmp.LE, "from e <= ds / r")
    b.add("second_inequality", middle, rhs, Cmp.LE, "from s / (r(m - s)) <= 1 / (n - r)")
    b.add("conclusion", lhs, rhs, Cmp.LE, "mu(M_{G,W}^v) <= mu(M_{V,E}^v)")
    strict = Relation.LT in (one.relation, two.relation)
    if strict:
        b.add("conclusion_strict", lhs, rhs, Cmp.LT, "a strict hypothesis makes M not semistable")
        verdict = "M is not semistable; (E, V) at best linearly semistable"
    else:
        b.add("conclusion_equality", lhs, rhs, Cmp.EQ, "at best linearly strictly semistable")
        verdict = "equality throughout; (E, V) at best strictly semistable"
    return b.build("exa-5.9", notes=(verdict,))


# ── The elliptic (2, 7, 4) system ────────────────────────────────────


def elliptic_dims_audit(e: int) -> Audit:
    """Dimension counts making a general V in Gr(4, H^0(E)) linearly stable, E of type (2, 7)."""
    if e not in (2, 3):
        raise ValueError(f"line subbundles of interest have degree 2 or 3, got {e}")
    g = 1
    b = RowBuilder({"e": e})
    h0_e = riemann_roch(2, 7, g)
    b.add("h0_E", h0_e, 7, Cmp.EQ, "extension of degree-4 by degree-3 line bundles")
    b.add("hom_M2_M1_dim", riemann_roch(1, 4 - 3, g), 1, Cmp.EQ, "unique nonsplit extension")
    b.add("obstruction_degree_negative", 2 * e - 7, 0, Cmp.LT, "deg((E/M)^v (x) M) = 2e - 7")
    quot = riemann_roch(1, (7 - e) - e, g)
    b.add("quot_line_dim", quot, 7 - 2 * e, Cmp.EQ, "chi(M^v (x) E/M)")
    b.add("line_sections", riemann_roch(1, e, g), e, Cmp.EQ, "dim i(H^0(M))")
    sigma = grassmannian_dim(2, e) + grassmannian_dim(2, h0_e - 2)
    b.add("sigma_i_dim", sigma, 2 * e + 2, Cmp.LE, "Gr(2, C^e) then Gr(2, H^0(E)/V_1)")
    union = 2 * e + 2 + quot
    b.add("union_sigma_i", union, 9, Cmp.EQ, "(2e + 2) + (7 - 2e)")
    gr = grassmannian_dim(4, h0_e)
    b.add("grassmannian_dim", gr, 12, Cmp.EQ, "4 (7 - 4)")
    b.add("union_sigma_i_lt_gr", union, gr, Cmp.LT)

    b.add("target_degree_4", Fraction(4, 3 - 2), Fraction(7, 4 - 2), Cmp.GT, "4/1 > 7/2")
    b.add("target_degree_3_fails", Fraction(3, 3 - 2), Fraction(7, 4 - 2), Cmp.LT, "3/1 < 7/2")
    # O + M' has h^0 = 1 + e; the nonsplit extension of degrees 1 and 2 has h^0 = 3
    b.add("split_candidate_h0", 1 + riemann_roch(1, e, g), e + 1, Cmp.EQ, "F = O + M'")
    b.add("nonsplit_candidate_h0", riemann_roch(1, 1, g) + riemann_roch(1, 2, g), 3, Cmp.EQ,
          "0 -> N_1 -> F -> N_2 -> 0")
    quot0 = 2 * (7 - 3)
    b.add("quot_torsion_dim", quot0, 8, Cmp.EQ, "rk(E) * length 4")
    sigma_j = grassmannian_dim(1, h0_e - 3)
    b.add("sigma_j_dim", sigma_j, 3, Cmp.EQ, "P^3 of complements")
    b.add("union_sigma_j", sigma_j + quot0, 11, Cmp.EQ, "3 + 8")
    b.add("union_sigma_j_lt_gr", sigma_j + quot0, gr, Cmp.LT)
    return b.build("prop-5.14")


# ── The (O(e) + O(e+1), V) counterexample ─────────────────────────────


def counterex_dims_audit(e: int, t: int) -> Audit:
    """Dimension ledger for a general V in Gr(4, H^0(O(e) + O(e+1))) being linearly stable."""
    if e < 3:
        raise ValueError(f"needs e >= 3, got {e}")
    if not 1 <= t <= e + 1:
        raise ValueError(f"needs 1 <= t <= e + 1, got t = {t}")
    b = RowBuilder({"e": e, "t": t})
    bundle = SplittingType([e, e + 1])
    h0_e = bundle.h0()
    b.add("h0_E", h0_e, riemann_roch(2, 2 * e + 1, 0), Cmp.EQ, "2e + 3")
    b.add("dsb_odd_degree", (2 * e + 1) % 2, 1, Cmp.EQ, "rank 2 and odd degree: not semistable")

    stated_quot = 2 * (e - t - 1)
    chi_quot = riemann_roch(1, 2 * e + 1 - 2 * t, 0)
    b.add("quot_line_dim", stated_quot, chi_quot, Cmp.EQ,
          "stated 2(e - t - 1) against chi(O(2e + 1 - 2t)) = 2e + 2 - 2t", discrepancy=True)
    b.add("line_sections", t + 1, SplittingType([t]).h0(), Cmp.EQ, "dim C^{t+1}")
    # V_1 in Gr(2, C^{t+1}), then V_2 in Gr(2, H^0(E) / V_1)
    sigma_stated = 2 * (2 * e + t - 4)
    sigma = grassmannian_dim(2, t + 1) + grassmannian_dim(2, h0_e - 2)
    b.add("sigma_j_dim", sigma_stated, sigma, Cmp.GE,
          "stated 2(2e + t - 4) against Gr(2, t + 1) + Gr(2, 2e + 1)", discrepancy=True)
    b.add("union_bound_stated", sigma_stated + stated_quot, 6 * e - 6, Cmp.LE,
          "2(2e + t - 4) + 2(e - t - 1)")
    gr = grassmannian_dim(4, h0_e)
    b.add("union_bound_recomputed", sigma + chi_quot, gr, Cmp.LT,
          "dim Sigma_j + chi(O(2e + 1 - 2t)) < dim Gr(4, H^0(E))")
    b.add("grassmannian_dim", gr, 8 * e - 4, Cmp.EQ, "4(2e + 3 - 4)")
    b.add("union_lt_gr", 6 * e - 6, gr, Cmp.LT)

    target = Fraction(2 * e + 1, 4 - 2)
    b.add("target_degree_e_plus_1", Fraction(e + 1, 3 - 2), target, Cmp.GT,
          "(e + 1)/1 > (2e + 1)/2")
    b.add("target_degree_e_fails", Fraction(e, 3 - 2), target, Cmp.LT, "e/1 < (2e + 1)/2")
    for a1 in range(0, e // 2 + 1):
        b.add(f"h0_F_{a1}_{e - a1}", SplittingType([a1, e - a1]).h0(), e + 2, Cmp.EQ,
              "generically generated F of degree e")
    p_dim = h0_e - 3 - 1
    b.add("complement_projective_dim", p_dim, 2 * e - 1, Cmp.EQ, "P(H^0(E)/W)")
    sigma_f = grassmannian_dim(3, e + 2) + p_dim
    b.add("sigma_F_dim", sigma_f, 5 * e - 4, Cmp.EQ, "Gr(3, e + 2) then P^{2e-1}")
    quot0 = 2 * (e + 1)
    b.add("quot_torsion_dim", quot0, 2 * (e + 1), Cmp.EQ, "rk(E) * length (e + 1)")
    b.add("union_sigma_F", sigma_f + quot0, 7 * e - 2, Cmp.EQ, "(5e - 4) + 2(e + 1)")
    b.add("union_sigma_F_lt_gr", 7 * e - 2, gr, Cmp.LT, "holds iff e > 2")
    return b.build("thm-5.18")


# ── Bielliptic pullback ───────────────────────────────────────────────


def bielliptic_audit(g: int = 6) -> Audit:
    profile = GonalityProfile.bielliptic(g)
    d3 = gonality_lookup(profile, 3)
    base = NumericalSystem(r=2, d=7, n=4, g=1)
    lifted = pullback_numeric(base, 2, cover_genus=g)
    b = RowBuilder({"g": g})
    b.add("d3", d3, 2 * 3 + 2, Cmp.EQ, "d_3 of a bielliptic curve")
    b.add("pullback_degree", lifted.d, 14, Cmp.EQ, "(2, 7, 4) pulled back by a double cover")
    b.add("pullback_rank", lifted.r, 2, Cmp.EQ)
    b.add("pullback_sections", lifted.n, 4, Cmp.EQ)
    b.add("reduced_slope_scales", lifted.reduced_slope, 2 * base.reduced_slope, Cmp.EQ,
          "both sides scale by the cover degree")
    b.add("criterion_hypothesis", lifted.d, 2 * d3, Cmp.LT, "14 < 2 d_3, so M is stable")
    return b.build("cor-5.15")


def rank_two_criterion_audit(d: int, d3: int) -> Audit:
    """The numerical side of the (2, d, 4) criterion: d < 2 d_3."""
    b = RowBuilder({"d": d, "d3": d3})
    b.add("degree_below_twice_d3", d, 2 * d3, Cmp.LT, "d < 2 d_3")
    b.add("dsb_rank", 4 - 2, 2, Cmp.EQ, "M of rank n - r = 2")
    b.add("destabilizing_dual_degree_bound", d3, Fraction(d, 2), Cmp.GT,
          "a destabilizing S with W = V would need d_3 <= deg S^v <= d/2")
    return b.build("prop-5.11")


def gonality_audit() -> Audit:
    b = RowBuilder({})
    b.add("p1_d3", gonality_lookup(GonalityProfile.p1(), 3), 3, Cmp.EQ, "h0(O(3)) = 4")
    b.add("hyperelliptic_d1", gonality_lookup(GonalityProfile.hyperelliptic(7), 1), 2, Cmp.EQ,
          "the g^1_2")
    b.add("bielliptic_d3", gonality_lookup(GonalityProfile.bielliptic(), 3), 8, Cmp.EQ)
    return b.build("gonality")
