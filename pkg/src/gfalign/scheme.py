"""End-to-end transmission scheme for the scalar two-hop 2x2x2 interference
channel over F_{p^m}.

The pipeline delivers 2m-1 ground-field symbols per channel use when the
channel is feasible:

* source 1 carries m symbols, source 2 carries m-1;
* precoders align the interfering streams so each relay observes an
  invertible image of simple symbol sums (relay 1 sees w1 shifted-added with
  w2, relay 2 the unshifted sums);
* relays re-encode their decoded sums through the inverse of the second-hop
  matrix, which diagonalizes the network: destination 1 receives only w1,
  destination 2 only w2.

Feasibility hinges on two cross ratios, one per hop: the first-hop ratio
q11^-1 q12 q22^-1 q21 and the same expression in the blocks of the inverted
second-hop matrix.  The scheme works exactly when both ratios have minimal
polynomials of full degree m, which makes the power-basis precoders full
rank.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import TooLarge, ZeroSBlock
from .gf import (FieldElem, FieldSpec, format_element, make_field,
                 minpoly_degree, parse_element, prime_field)
from .linalg import (Mat, coeff_vector, elem_from_coeff_vector, matrix_rep,
                     solve_exact)

_HOP1_KEYS = ("q11", "q12", "q21", "q22")
_HOP2_KEYS = ("q33", "q34", "q43", "q44")


@dataclass(frozen=True)
class TwoHopChannel:
    """Eight scalar coefficients of a two-hop 2x2x2 channel over F_{p^m}.

    hop1 holds (q11, q12, q21, q22), hop2 holds (q33, q34, q43, q44).
    Degenerate coefficient sets (zeros, singular hops) are accepted here and
    reported as infeasible by check_feasible, so scanners can iterate over
    arbitrary tuples uniformly.
    """

    spec: FieldSpec
    hop1: tuple[FieldElem, FieldElem, FieldElem, FieldElem]
    hop2: tuple[FieldElem, FieldElem, FieldElem, FieldElem]

    @classmethod
    def create(cls, spec: FieldSpec, hop1: Sequence, hop2: Sequence) -> "TwoHopChannel":
        if len(hop1) != 4 or len(hop2) != 4:
            raise ValueError("each hop needs exactly four coefficients")
        return cls(spec,
                   tuple(spec.element(v) for v in hop1),
                   tuple(spec.element(v) for v in hop2))

    def hop_det(self, hop: int) -> FieldElem:
        a, b, c, d = self.hop1 if hop == 1 else self.hop2
        return a * d - b * c


def second_hop_inverse(ch: TwoHopChannel) -> tuple[FieldElem, ...]:
    """Blocks (s11, s12, s21, s22) of the inverted second-hop matrix."""
    q33, q34, q43, q44 = ch.hop2
    det = ch.hop_det(2)
    dinv = det.inv()
    return (q44 * dinv, -q34 * dinv, -q43 * dinv, q33 * dinv)


def alignment_ratios(ch: TwoHopChannel) -> tuple[FieldElem, FieldElem]:
    """The two cross ratios driving feasibility and precoder construction.

    The first is q11^-1 q12 q22^-1 q21; the second is the same expression in
    the blocks of the inverted second-hop matrix.  Raises ZeroSBlock when an
    inverse block vanishes (possible only for channels with zero
    coefficients, e.g. a diagonal second hop), since the second ratio then
    does not exist.
    """
    q11, q12, q21, q22 = ch.hop1
    r1 = q11.inv() * q12 * q22.inv() * q21
    s11, s12, s21, s22 = second_hop_inverse(ch)
    if not (s11 and s12 and s21 and s22):
        raise ZeroSBlock("inverted second hop has a zero block")
    r2 = s11.inv() * s12 * s22.inv() * s21
    return r1, r2


@dataclass(frozen=True)
class FeasibilityVerdict:
    """Outcome of the feasibility test with the reasons for a rejection."""

    feasible: bool
    model_ok: bool                 # all coefficients nonzero, both hops full rank
    hop1_degree: int | None        # minimal-polynomial degree of the hop-1 ratio
    hop2_degree: int | None
    reasons: tuple[str, ...]


def check_feasible(ch: TwoHopChannel) -> FeasibilityVerdict:
    """Feasible iff both cross ratios have minimal polynomials of degree m.

    Model violations (zero coefficients, singular hop matrices, vanished
    inverse blocks) are reported as reasons rather than raised, so arbitrary
    channel tuples can be classified uniformly.
    """
    m = ch.spec.m
    reasons: list[str] = []
    model_ok = True
    for name, value in zip(_HOP1_KEYS + _HOP2_KEYS, ch.hop1 + ch.hop2):
        if not value:
            reasons.append(f"zero channel coefficient {name}")
            model_ok = False
    if not ch.hop_det(1):
        reasons.append("first-hop matrix is singular")
        model_ok = False
    if not ch.hop_det(2):
        reasons.append("second-hop matrix is singular")
        model_ok = False

    deg1 = deg2 = None
    q11, q12, q21, q22 = ch.hop1
    if q11 and q22:
        deg1 = minpoly_degree(q11.inv() * q12 * q22.inv() * q21)
        if deg1 != m:
            reasons.append(f"first-hop ratio has minimal polynomial degree {deg1} < {m}")
    if ch.hop_det(2):
        s11, s12, s21, s22 = second_hop_inverse(ch)
        if not (s11 and s12 and s21 and s22):
            reasons.append("inverted second hop has a zero block")
        else:
            deg2 = minpoly_degree(s11.inv() * s12 * s22.inv() * s21)
            if deg2 != m:
                reasons.append(
                    f"second-hop ratio has minimal polynomial degree {deg2} < {m}")
    feasible = model_ok and deg1 == m and deg2 == m
    return FeasibilityVerdict(feasible, model_ok, deg1, deg2, tuple(reasons))


@dataclass(frozen=True)
class PrecoderSet:
    """Precoding matrices over F_p plus the scalars they were built from.

    v1 (m x m) and v2 (m x m-1) precode the sources; v3 and v4 play the same
    roles for the relays with respect to the inverted second hop, whose
    blocks s11..s22 also scale the relay outputs.
    """

    spec: FieldSpec
    v1: Mat
    v2: Mat
    v3: Mat
    v4: Mat
    hop1_ratio: FieldElem
    hop2_ratio: FieldElem
    s11: FieldElem
    s12: FieldElem
    s21: FieldElem
    s22: FieldElem


def power_basis_matrix(ratio: FieldElem, width: int) -> Mat:
    """Columns are the coefficient vectors of ratio^0, ..., ratio^(width-1).

    Its rank equals the minimal-polynomial degree of the ratio (the columns
    span the subfield generated by it), which is the full-rank argument
    behind the feasibility condition.
    """
    cols = [coeff_vector(ratio ** k) for k in range(width)]
    return Mat.from_columns(prime_field(ratio.spec), cols, nrows=ratio.spec.m)


def _shifted_columns(scalar: FieldElem, ratio: FieldElem, count: int) -> Mat:
    cols = [coeff_vector(scalar * ratio ** k) for k in range(count)]
    return Mat.from_columns(prime_field(scalar.spec), cols, nrows=scalar.spec.m)


def build_precoders(ch: TwoHopChannel) -> PrecoderSet:
    """Construct and verify the four precoding matrices of a feasible channel.

    Column l+1 of v1 is the image of the first column under the l-th power
    of the hop-1 ratio, with the first column fixed to the unit element's
    coefficient vector; v2 repeats the pattern scaled by q22^-1 q21, which is
    exactly what makes both relays observe aligned sums.  v3 and v4 mirror
    the construction with the second-hop ratio and inverse blocks.  Ranks and
    alignment identities are asserted; a failure would contradict the
    feasibility condition, not user input.
    """
    verdict = check_feasible(ch)
    if not verdict.feasible:
        raise ValueError("channel is infeasible: " + "; ".join(verdict.reasons))
    spec = ch.spec
    m = spec.m
    r1, r2 = alignment_ratios(ch)
    s11, s12, s21, s22 = second_hop_inverse(ch)
    q11, q12, q21, q22 = ch.hop1

    v1 = power_basis_matrix(r1, m)
    v2 = _shifted_columns(q22.inv() * q21, r1, m - 1)
    v3 = power_basis_matrix(r2, m)
    v4 = _shifted_columns(s22.inv() * s21, r2, m - 1)
    assert v1.rank() == m and v3.rank() == m, \
        "full-degree ratio must give a full-rank power basis"

    for a, b, left, right, offset in ((q11, q12, v1, v2, 1), (q21, q22, v1, v2, 0),
                                      (s11, s12, v3, v4, 1), (s21, s22, v3, v4, 0)):
        am, bm = matrix_rep(a), matrix_rep(b)
        for l in range(m - 1):
            lhs = am @ left.col(l + offset)
            rhs = bm @ right.col(l)
            assert lhs == rhs, "alignment identity failed"
    return PrecoderSet(spec, v1, v2, v3, v4, r1, r2, s11, s12, s21, s22)


@dataclass(frozen=True)
class MessagePair:
    """Source messages: m symbols for source 1, m-1 for source 2, over F_p."""

    w1: tuple[int, ...]
    w2: tuple[int, ...]

    @classmethod
    def create(cls, spec: FieldSpec, w1: Sequence[int], w2: Sequence[int]) -> "MessagePair":
        m, p = spec.m, spec.p
        w1 = tuple(int(v) for v in w1)
        w2 = tuple(int(v) for v in w2)
        if len(w1) != m or len(w2) != m - 1:
            raise ValueError(f"expected message lengths {m} and {m - 1}")
        if any(not 0 <= v < p for v in w1 + w2):
            raise ValueError(f"message symbols must lie in [0, {p})")
        return cls(w1, w2)


def all_messages(spec: FieldSpec) -> Iterator[MessagePair]:
    """Every message pair, in lexicographic order."""
    p, m = spec.p, spec.m
    for w1 in itertools.product(range(p), repeat=m):
        for w2 in itertools.product(range(p), repeat=m - 1):
            yield MessagePair(w1, w2)


def random_message(spec: FieldSpec, rng: random.Random) -> MessagePair:
    p, m = spec.p, spec.m
    return MessagePair(tuple(rng.randrange(p) for _ in range(m)),
                       tuple(rng.randrange(p) for _ in range(m - 1)))


def _precode(v: Mat, w: tuple[int, ...], spec: FieldSpec) -> Mat:
    ground = prime_field(spec)
    if not w:
        return Mat.zeros(ground, spec.m, 1)
    return v @ Mat.column(ground, [ground.from_code(c) for c in w])


def source_encode(pre: PrecoderSet, msg: MessagePair) -> tuple[FieldElem, FieldElem]:
    """Precode both messages over F_p and map the columns back to scalars."""
    spec = pre.spec
    x1 = elem_from_coeff_vector(_precode(pre.v1, msg.w1, spec), spec)
    x2 = elem_from_coeff_vector(_precode(pre.v2, msg.w2, spec), spec)
    return x1, x2


def apply_hop(ch: TwoHopChannel, hop: int, xa: FieldElem,
              xb: FieldElem) -> tuple[FieldElem, FieldElem]:
    """Scalar channel action of one hop on a pair of inputs."""
    a, b, c, d = ch.hop1 if hop == 1 else ch.hop2
    return a * xa + b * xb, c * xa + d * xb


def relay_decode(pre: PrecoderSet, ch: TwoHopChannel, y: FieldElem,
                 relay: int) -> tuple[int, ...]:
    """Solve the aligned system at a relay.

    The observation satisfies coeff_vector(y) = rep(q_r1) v1 u where u is a
    plain symbol-sum pattern: relay 1 sees (w1_1, w1_2 + w2_1, ...,
    w1_m + w2_{m-1}) and relay 2 (w1_1 + w2_1, ..., w1_{m-1} + w2_{m-1},
    w1_m).  The system matrix is invertible for every feasible channel.
    """
    q = ch.hop1[0] if relay == 1 else ch.hop1[2]
    system = matrix_rep(q) @ pre.v1
    u = system.solve(coeff_vector(y))
    return tuple(row[0].code for row in u.rows)


def relay_encode(pre: PrecoderSet, u: Sequence[int], relay: int) -> FieldElem:
    """Re-encode decoded sums through the inverted second hop.

    Relay r transmits the scalar of rep(s_r1) v3 u; jointly the two relay
    outputs equal the inverted second-hop matrix applied to (v3 w1, v4 w2),
    so the hop that follows cancels to a diagonal end-to-end map.
    """
    spec = pre.spec
    ground = prime_field(spec)
    s = pre.s11 if relay == 1 else pre.s21
    x = matrix_rep(s) @ pre.v3 @ Mat.column(ground, [ground.from_code(c) for c in u])
    return elem_from_coeff_vector(x, spec)


def destination_decode(pre: PrecoderSet, y3: FieldElem,
                       y4: FieldElem) -> MessagePair:
    """Invert v3 at destination 1; solve the tall consistent v4 system at
    destination 2 (full Gauss-Jordan, so an inconsistent right-hand side is
    detected instead of silently dropping rows)."""
    spec = pre.spec
    w1 = tuple(row[0].code for row in pre.v3.solve(coeff_vector(y3)).rows)
    if spec.m == 1:
        w2: tuple[int, ...] = ()
    else:
        sol = solve_exact(pre.v4, coeff_vector(y4))
        w2 = tuple(row[0].code for row in sol.rows)
    return MessagePair(w1, w2)


@dataclass(frozen=True)
class SimulationReport:
    """Record of one end-to-end run (or of a feasibility rejection)."""

    channel: TwoHopChannel
    verdict: FeasibilityVerdict
    hop1_ratio: FieldElem | None
    hop2_ratio: FieldElem | None
    precoders: PrecoderSet | None
    u1: tuple[int, ...] | None
    u2: tuple[int, ...] | None
    message: MessagePair | None
    decoded: MessagePair | None
    success: bool
    sum_rate_bits: float | None

    def to_dict(self) -> dict:
        """JSON-ready dictionary with a stable key order."""
        pre = self.precoders
        return {
            "channel": channel_to_dict(self.channel),
            "feasible": self.verdict.feasible,
            "reasons": list(self.verdict.reasons),
            "hop1_ratio": None if self.hop1_ratio is None else list(self.hop1_ratio.coeffs),
            "hop1_ratio_degree": self.verdict.hop1_degree,
            "hop2_ratio": None if self.hop2_ratio is None else list(self.hop2_ratio.coeffs),
            "hop2_ratio_degree": self.verdict.hop2_degree,
            "precoders": None if pre is None else {
                "v1": pre.v1.to_lists(),
                "v2": pre.v2.to_lists(),
                "v3": pre.v3.to_lists(),
                "v4": pre.v4.to_lists(),
            },
            "s_blocks": None if pre is None else {
                "s11": list(pre.s11.coeffs),
                "s12": list(pre.s12.coeffs),
                "s21": list(pre.s21.coeffs),
                "s22": list(pre.s22.coeffs),
            },
            "relay_equations": None if self.u1 is None else {
                "u1": list(self.u1), "u2": list(self.u2)},
            "message": None if self.message is None else {
                "w1": list(self.message.w1), "w2": list(self.message.w2)},
            "decoded": None if self.decoded is None else {
                "w1": list(self.decoded.w1), "w2": list(self.decoded.w2)},
            "success": self.success,
            "sum_rate_bits": self.sum_rate_bits,
        }


def simulate(ch: TwoHopChannel, msg: MessagePair) -> SimulationReport:
    """Run the full pipeline; infeasible channels produce a report with the
    verdict and no transmission."""
    verdict = check_feasible(ch)
    if not verdict.feasible:
        return SimulationReport(ch, verdict, None, None, None, None, None,
                                None, None, False, None)
    pre = build_precoders(ch)
    x1, x2 = source_encode(pre, msg)
    y1, y2 = apply_hop(ch, 1, x1, x2)
    u1 = relay_decode(pre, ch, y1, 1)
    u2 = relay_decode(pre, ch, y2, 2)
    x3 = relay_encode(pre, u1, 1)
    x4 = relay_encode(pre, u2, 2)
    y3, y4 = apply_hop(ch, 2, x3, x4)
    decoded = destination_decode(pre, y3, y4)
    success = decoded == msg
    rate = (2 * ch.spec.m - 1) * math.log2(ch.spec.p) if success else None
    return SimulationReport(ch, verdict, pre.hop1_ratio, pre.hop2_ratio, pre,
                            u1, u2, msg, decoded, success, rate)


# -- channel serialization ------------------------------------------------------


def channel_to_dict(ch: TwoHopChannel, style: str = "coeffs") -> dict:
    spec = ch.spec
    return {
        "p": spec.p,
        "m": spec.m,
        "pi": list(spec.modulus_coeffs),
        "hop1": {k: format_element(v, style) for k, v in zip(_HOP1_KEYS, ch.hop1)},
        "hop2": {k: format_element(v, style) for k, v in zip(_HOP2_KEYS, ch.hop2)},
    }


def channel_from_dict(obj: dict) -> TwoHopChannel:
    """Parse the channel JSON shape; elements accept coefficient lists,
    'a^k' exponent strings, or ints (constants mod p)."""
    spec = make_field(int(obj["p"]), int(obj["m"]), obj.get("pi"))
    hop1 = tuple(parse_element(spec, obj["hop1"][k]) for k in _HOP1_KEYS)
    hop2 = tuple(parse_element(spec, obj["hop2"][k]) for k in _HOP2_KEYS)
    return TwoHopChannel(spec, hop1, hop2)


def draw_channel(spec: FieldSpec, rng: random.Random) -> TwoHopChannel:
    """Eight coefficients drawn uniformly from the nonzero elements (no
    full-rank conditioning; classify with check_feasible)."""
    return TwoHopChannel(
        spec,
        tuple(spec.random_element(rng, nonzero=True) for _ in range(4)),
        tuple(spec.random_element(rng, nonzero=True) for _ in range(4)))


def draw_valid_channel(spec: FieldSpec, rng: random.Random,
                       max_tries: int = 10000) -> TwoHopChannel:
    """Rejection-sample a channel whose hop matrices are both full rank."""
    for _ in range(max_tries):
        ch = draw_channel(spec, rng)
        if ch.hop_det(1) and ch.hop_det(2):
            return ch
    raise TooLarge(f"no full-rank channel found in {max_tries} draws over {spec!r}")


# -- exhaustive scanning --------------------------------------------------------


@dataclass(frozen=True)
class HopScan:
    """Exhaustive classification of one hop's coefficient 4-tuples."""

    tuples: int
    valid: int          # full-rank matrices among all-nonzero tuples
    feasible: int       # valid and full-degree cross ratio
    feasible_tuples: list[tuple[FieldElem, ...]]


def _scan_hop(spec: FieldSpec, second: bool) -> HopScan:
    m = spec.m
    total = valid = feasible = 0
    keep = []
    for t in itertools.product(list(spec.nonzero_elements()), repeat=4):
        total += 1
        a, b, c, d = t
        det = a * d - b * c
        if not det:
            continue
        valid += 1
        if second:
            dinv = det.inv()
            s11, s12, s21, s22 = d * dinv, -b * dinv, -c * dinv, a * dinv
            ratio = s11.inv() * s12 * s22.inv() * s21
        else:
            ratio = a.inv() * b * d.inv() * c
        if minpoly_degree(ratio) == m:
            feasible += 1
            keep.append(t)
    return HopScan(total, valid, feasible, keep)


@dataclass(frozen=True)
class ScanReport:
    """Exhaustive verification summary for one field.

    mode is "paired" when every valid channel pair was driven end to end, or
    "factored" when each hop was verified exhaustively on its own half of
    the pipeline (the two hop events are independent, and decoding splits
    into a relay half that only involves hop 1 and a destination half that
    only involves hop 2, so the joint statements follow exactly).
    """

    p: int
    m: int
    pi: list[int]
    mode: str
    hop1: tuple[int, int, int]        # tuples, valid, feasible
    hop2: tuple[int, int, int]
    valid_channels: int
    feasible_channels: int
    feasible_fraction_valid: float | None   # None when no valid channels exist
    feasible_fraction_all: float
    messages_per_channel: int
    round_trips: int
    decode_failures: int

    @property
    def decode_success_rate(self) -> float:
        if self.round_trips == 0:
            return 1.0
        return 1.0 - self.decode_failures / self.round_trips

    def to_dict(self) -> dict:
        return {
            "p": self.p, "m": self.m, "pi": self.pi, "mode": self.mode,
            "hop1": {"tuples": self.hop1[0], "valid": self.hop1[1],
                     "feasible": self.hop1[2]},
            "hop2": {"tuples": self.hop2[0], "valid": self.hop2[1],
                     "feasible": self.hop2[2]},
            "valid_channels": self.valid_channels,
            "feasible_channels": self.feasible_channels,
            "feasible_fraction_valid": self.feasible_fraction_valid,
            "feasible_fraction_all": self.feasible_fraction_all,
            "messages_per_channel": self.messages_per_channel,
            "round_trips": self.round_trips,
            "decode_failures": self.decode_failures,
            "decode_success_rate": self.decode_success_rate,
        }


def _verify_first_hop(spec: FieldSpec, hop1: tuple[FieldElem, ...]) -> int:
    """Relay half of the pipeline for one feasible hop-1 tuple, all messages.
    Returns the number of failures (expected 0)."""
    unit = spec.one
    ch = TwoHopChannel(spec, hop1, (unit, unit, unit, unit))  # hop 2 unused here
    q11, q12, q21, q22 = hop1
    r1 = q11.inv() * q12 * q22.inv() * q21
    v1 = power_basis_matrix(r1, spec.m)
    v2 = _shifted_columns(q22.inv() * q21, r1, spec.m - 1)
    pre = PrecoderSet(spec, v1, v2, v1, v2, r1, r1, unit, unit, unit, unit)
    m = spec.m
    failures = 0
    for msg in all_messages(spec):
        x1, x2 = source_encode(pre, msg)
        y1, y2 = apply_hop(ch, 1, x1, x2)
        u1 = relay_decode(pre, ch, y1, 1)
        u2 = relay_decode(pre, ch, y2, 2)
        w1, w2 = msg.w1, msg.w2
        want1 = tuple((w1[i] + (w2[i - 1] if i else 0)) % spec.p for i in range(m))
        want2 = tuple((w1[i] + (w2[i] if i < m - 1 else 0)) % spec.p for i in range(m))
        if u1 != want1 or u2 != want2:
            failures += 1
    return failures


def _verify_second_hop(spec: FieldSpec, hop2: tuple[FieldElem, ...]) -> int:
    """Destination half for one feasible hop-2 tuple, all messages: form the
    relay sums directly from the messages, re-encode, transmit, decode."""
    unit = spec.one
    ch = TwoHopChannel(spec, (unit, unit, unit, unit), hop2)
    s11, s12, s21, s22 = second_hop_inverse(ch)
    r2 = s11.inv() * s12 * s22.inv() * s21
    v3 = power_basis_matrix(r2, spec.m)
    v4 = _shifted_columns(s22.inv() * s21, r2, spec.m - 1)
    pre = PrecoderSet(spec, v3, v4, v3, v4, r2, r2, s11, s12, s21, s22)
    m = spec.m
    failures = 0
    for msg in all_messages(spec):
        w1, w2 = msg.w1, msg.w2
        u1 = tuple((w1[i] + (w2[i - 1] if i else 0)) % spec.p for i in range(m))
        u2 = tuple((w1[i] + (w2[i] if i < m - 1 else 0)) % spec.p for i in range(m))
        x3 = relay_encode(pre, u1, 1)
        x4 = relay_encode(pre, u2, 2)
        y3, y4 = apply_hop(ch, 2, x3, x4)
        if destination_decode(pre, y3, y4) != msg:
            failures += 1
    return failures


def exhaustive_scan(p: int, m: int, pi=None, *, tuple_limit: int = 10 ** 7,
                    pair_limit: int = 20000) -> ScanReport:
    """Classify every all-nonzero channel tuple and verify decoding.

    Guard: refuses when the raw tuple count (p^m - 1)^8 exceeds tuple_limit.
    Up to pair_limit valid channels, every feasible pair is driven end to end
    over every message (paired mode); beyond that each hop is verified
    exhaustively on its own half of the pipeline (factored mode), which
    covers the same ground because the halves interact only through the
    decoded sums.
    """
    spec = make_field(p, m, pi)
    q1 = spec.order - 1
    if q1 ** 8 > tuple_limit:
        raise TooLarge(
            f"({q1})^8 = {q1 ** 8} channel tuples exceed the guard of {tuple_limit}")
    scan1 = _scan_hop(spec, second=False)
    scan2 = _scan_hop(spec, second=True)
    valid_channels = scan1.valid * scan2.valid
    feasible_channels = scan1.feasible * scan2.feasible
    messages = spec.p ** (2 * m - 1)
    round_trips = 0
    failures = 0
    messages_list = list(all_messages(spec))
    if valid_channels <= pair_limit:
        mode = "paired"
        for t1 in scan1.feasible_tuples:
            for t2 in scan2.feasible_tuples:
                ch = TwoHopChannel(spec, t1, t2)
                pre = build_precoders(ch)
                for msg in messages_list:
                    round_trips += 1
                    x1, x2 = source_encode(pre, msg)
                    y1, y2 = apply_hop(ch, 1, x1, x2)
                    u1 = relay_decode(pre, ch, y1, 1)
                    u2 = relay_decode(pre, ch, y2, 2)
                    x3 = relay_encode(pre, u1, 1)
                    x4 = relay_encode(pre, u2, 2)
                    y3, y4 = apply_hop(ch, 2, x3, x4)
                    if destination_decode(pre, y3, y4) != msg:
                        failures += 1
    else:
        mode = "factored"
        for t1 in scan1.feasible_tuples:
            failures += _verify_first_hop(spec, t1)
            round_trips += messages
        for t2 in scan2.feasible_tuples:
            failures += _verify_second_hop(spec, t2)
            round_trips += messages
    return ScanReport(
        p, m, list(spec.modulus_coeffs), mode,
        (scan1.tuples, scan1.valid, scan1.feasible),
        (scan2.tuples, scan2.valid, scan2.feasible),
        valid_channels, feasible_channels,
        feasible_channels / valid_channels if valid_channels else None,
        feasible_channels / (scan1.tuples * scan2.tuples),
        messages, round_trips, failures)
