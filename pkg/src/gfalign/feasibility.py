"""Feasibility statistics for random two-hop channels.

Exact machinery: the fraction of nonzero elements whose minimal polynomial
has full degree (feasible cross ratios are uniform on the nonzero elements),
an analytic lower bound on that fraction, and normalized sum-rates.

Monte Carlo machinery: estimators for the joint two-hop feasibility event
under the scalar extension-field model and under the diagonal (time-varying
symbol-extension) model, with deterministic per-trial substreams so results
are reproducible and order-independent.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import TooLarge
from .gf import make_field
from .polys import count_irreducible, divisors
from .scheme import TwoHopChannel, check_feasible


def exact_fraction(p: int, m: int) -> Fraction:
    """Probability that a uniform nonzero element of F_{p^m} has a minimal
    polynomial of degree exactly m: m * N(p, m) / (p^m - 1), where N counts
    the monic irreducible polynomials of degree m.

    For m = 1 the fraction is 1 (every nonzero element of F_p has a degree-1
    minimal polynomial; the counting formula would also charge the zero
    element to the polynomial x).
    """
    if m == 1:
        return Fraction(1)
    return Fraction(m * count_irreducible(p, m), p ** m - 1)


def lower_bound(p: int, m: int) -> Fraction:
    """Analytic lower bound 1 - sum over d | m, d > 1 of p^(m/d - m).

    Exact as a rational; can be negative for tiny p^m and is returned as-is.
    """
    total = Fraction(0)
    for d in divisors(m):
        if d > 1:
            total += Fraction(p ** (m // d), p ** m)
    return 1 - total


@dataclass(frozen=True)
class NormalizedRates:
    """Achieved sum-rate normalized by the interference-free capacity."""

    d_finite: Fraction       # (2m - 1) / m at finite (p, m)
    limit_large_m: Fraction  # value as m grows without bound
    limit_large_p: Fraction  # value as p grows without bound


def normalized_rates(p: int, m: int) -> NormalizedRates:
    if p < 2 or m < 1:
        raise ValueError("need p >= 2 and m >= 1")
    return NormalizedRates(Fraction(2 * m - 1, m), Fraction(2), Fraction(2 * m - 1, m))


def _trial_rng(seed: int, index: int) -> random.Random:
    # String seeding hashes with sha512, so substreams are reproducible
    # across platforms and independent of trial execution order.
    return random.Random(f"{seed}:{index}")


@dataclass(frozen=True)
class McFeasibility:
    """Monte Carlo estimate of the joint feasibility probability.

    Each trial draws the eight coefficients uniformly from the nonzero
    elements.  Draws with a singular hop matrix fall outside the channel
    model and are counted as rejected; the primary estimate conditions on
    the model (feasible / valid), while estimate_raw keeps rejected draws in
    the denominator (feasible / trials), which is the view calibrated by
    exact_fraction squared.
    """

    p: int
    m: int
    trials: int
    seed: int
    feasible: int
    rejected: int

    @property
    def valid(self) -> int:
        return self.trials - self.rejected

    @property
    def estimate(self) -> float | None:
        if self.valid == 0:
            return None
        return self.feasible / self.valid

    @property
    def estimate_raw(self) -> float:
        return self.feasible / self.trials

    def to_dict(self) -> dict:
        return {
            "p": self.p, "m": self.m, "trials": self.trials, "seed": self.seed,
            "feasible": self.feasible, "rejected": self.rejected,
            "valid": self.valid, "estimate": self.estimate,
            "estimate_raw": self.estimate_raw,
        }


def mc_feasibility(p: int, m: int, trials: int, seed: int) -> McFeasibility:
    """Estimate the probability that a random channel satisfies the
    full-degree condition on both cross ratios.  Deterministic for a given
    (seed, trials); trials use independent substreams and may be evaluated
    in any order."""
    if trials < 1:
        raise ValueError("need at least one trial")
    spec = make_field(p, m)
    order = spec.order
    feasible = rejected = 0
    for i in range(trials):
        rng = _trial_rng(seed, i)
        codes = [rng.randrange(1, order) for _ in range(8)]
        ch = TwoHopChannel(spec,
                           tuple(spec.from_code(c) for c in codes[:4]),
                           tuple(spec.from_code(c) for c in codes[4:]))
        verdict = check_feasible(ch)
        if not verdict.model_ok:
            rejected += 1
        elif verdict.feasible:
            feasible += 1
    return McFeasibility(p, m, trials, seed, feasible, rejected)


@dataclass(frozen=True)
class DiagFeasibility:
    """Monte Carlo estimate for the diagonal (symbol-extension) model.

    Eight diagonal m x m matrices with i.i.d. uniform nonzero diagonals
    stand for m uses of a time-varying scalar channel.  A draw is feasible when
    both cross-ratio products exist (every per-slot second-hop matrix is
    invertible) and have all-distinct diagonal entries.  The primary
    estimate is feasible / trials; estimate_conditional conditions on the
    product existing.
    """

    p: int
    m: int
    trials: int
    seed: int
    feasible: int
    product_defined: int     # draws whose second-hop product exists

    @property
    def estimate(self) -> float:
        return self.feasible / self.trials

    @property
    def estimate_conditional(self) -> float | None:
        if self.product_defined == 0:
            return None
        return self.feasible / self.product_defined

    def to_dict(self) -> dict:
        return {
            "p": self.p, "m": self.m, "trials": self.trials, "seed": self.seed,
            "feasible": self.feasible, "product_defined": self.product_defined,
            "estimate": self.estimate,
            "estimate_conditional": self.estimate_conditional,
        }


def _diag_slot_ratio1(p, q11, q12, q21, q22):
    return q12 * q21 * pow(q11 * q22, p - 2, p) % p


def _diag_slot_ratio2(p, q33, q34, q43, q44):
    """Second-hop per-slot cross ratio, or None when the slot is singular."""
    det = (q33 * q44 - q34 * q43) % p
    if det == 0:
        return None
    # s11 = q44/det, s12 = -q34/det, s21 = -q43/det, s22 = q33/det; the
    # determinants cancel in the cross ratio.
    return q34 * q43 * pow(q33 * q44, p - 2, p) % p


def _diag_feasible(p, m, slots1, slots2) -> tuple[bool, bool]:
    """(feasible, product_defined) for one diagonal draw."""
    g1 = {_diag_slot_ratio1(p, *s) for s in slots1}
    ratios2 = [_diag_slot_ratio2(p, *s) for s in slots2]
    if any(r is None for r in ratios2):
        return False, False
    return len(g1) == m and len(set(ratios2)) == m, True


def diag_symbol_ext_feasibility(p: int, m: int, trials: int,
                                seed: int) -> DiagFeasibility:
    if trials < 1:
        raise ValueError("need at least one trial")
    feasible = defined = 0
    for i in range(trials):
        rng = _trial_rng(seed, i)
        slots1 = [tuple(rng.randrange(1, p) for _ in range(4)) for _ in range(m)]
        slots2 = [tuple(rng.randrange(1, p) for _ in range(4)) for _ in range(m)]
        ok, has_product = _diag_feasible(p, m, slots1, slots2)
        feasible += ok
        defined += has_product
    return DiagFeasibility(p, m, trials, seed, feasible, defined)


def diag_exhaustive(p: int, m: int, limit: int = 10 ** 6) -> Fraction:
    """Exact diagonal-model feasibility by enumerating each hop's slot
    tuples (the hops are independent, so the joint fraction is the product
    of the per-hop fractions)."""
    per_hop = (p - 1) ** (4 * m)
    if per_hop > limit:
        raise TooLarge(f"({p - 1})^{4 * m} = {per_hop} exceeds the guard of {limit}")
    nonzero = range(1, p)
    hop1_ok = 0
    hop2_ok = hop2_defined = 0
    for slots in itertools.product(itertools.product(nonzero, repeat=4), repeat=m):
        g1 = {_diag_slot_ratio1(p, *s) for s in slots}
        if len(g1) == m:
            hop1_ok += 1
        ratios2 = [_diag_slot_ratio2(p, *s) for s in slots]
        if all(r is not None for r in ratios2):
            hop2_defined += 1
            if len(set(ratios2)) == m:
                hop2_ok += 1
    return Fraction(hop1_ok, per_hop) * Fraction(hop2_ok, per_hop)


@dataclass(frozen=True)
class FeasibilityStats:
    """One row of a feasibility sweep."""

    p: int
    m: int
    exact: Fraction
    bound: Fraction
    d_finite: Fraction
    mc: McFeasibility | None

    def to_dict(self) -> dict:
        return {
            "p": self.p, "m": self.m,
            "exact_fraction": str(self.exact),
            "exact_fraction_dec": float(self.exact),
            "lower_bound": str(self.bound),
            "lower_bound_dec": float(self.bound),
            "mc": None if self.mc is None else self.mc.to_dict(),
            "d_finite": str(self.d_finite),
            "d_finite_dec": float(self.d_finite),
        }


def feasibility_stats(p: int, m: int, trials: int | None = None,
                      seed: int | None = None) -> FeasibilityStats:
    mc = None
    if trials is not None:
        if seed is None:
            raise ValueError("a seed is required when sampling")
        mc = mc_feasibility(p, m, trials, seed)
    return FeasibilityStats(p, m, exact_fraction(p, m), lower_bound(p, m),
                            normalized_rates(p, m).d_finite, mc)


CSV_COLUMNS = ["p", "m", "exact_fraction", "exact_fraction_dec",
               "lower_bound", "lower_bound_dec", "mc_estimate",
               "mc_estimate_raw", "trials", "rejected", "d_finite",
               "d_finite_dec"]


def stats_csv_row(row: FeasibilityStats) -> list:
    mc = row.mc
    return [row.p, row.m,
            str(row.exact), f"{float(row.exact):.6f}",
            str(row.bound), f"{float(row.bound):.6f}",
            "" if mc is None or mc.estimate is None else f"{mc.estimate:.6f}",
            "" if mc is None else f"{mc.estimate_raw:.6f}",
            "" if mc is None else mc.trials,
            "" if mc is None else mc.rejected,
            str(row.d_finite), f"{float(row.d_finite):.6f}"]
