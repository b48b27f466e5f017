"""Two-hop 2x2x2 interference channel with arbitrary full-rank m x m
ground-field matrices, handled by coding across time slots.

Unlike the scalar extension-field case, the channel matrices here do not
commute and are not powers of one companion matrix, so the power-basis
precoders must be built from eigen-decompositions.  Some eigenvalues only
exist in an extension of F_p: the pipeline therefore works over the
splitting field F_{p^L} of both hop products (L is the lcm of the
irreducible-factor degrees across the two hops) and transports each
extension symbol as L ground-field column slots.  Per slot the scheme still
delivers 2m-1 ground-field symbols.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Sequence

from .errors import InconsistentSystem, SingularChannel
from .gf import FieldElem, FieldSpec, make_field, prime_field
from .linalg import (Mat, block2x2, eigenvectors_in, lift_matrix,
                     roots_in_field, split_blocks, splitting_data,
                     vandermonde_det)
from .polys import Poly

_MATRIX_KEYS = ("Q11", "Q12", "Q21", "Q22", "Q33", "Q34", "Q43", "Q44")


@dataclass(frozen=True)
class MimoChannel:
    """Eight m x m matrices over F_p: (Q11, Q12, Q21, Q22) for the first hop
    and (Q33, Q34, Q43, Q44) for the second."""

    ground: FieldSpec
    m: int
    matrices: tuple[Mat, ...]

    @classmethod
    def create(cls, p: int, m: int, matrices: Sequence) -> "MimoChannel":
        ground = prime_field(p)
        if len(matrices) != 8:
            raise ValueError("a channel needs exactly eight matrices")
        mats = []
        for q in matrices:
            mat = q if isinstance(q, Mat) else Mat.build(ground, q)
            if mat.spec != ground or mat.nrows != m or mat.ncols != m:
                raise ValueError(f"expected {m} x {m} matrices over GF({p})")
            mats.append(mat)
        return cls(ground, m, tuple(mats))

    @property
    def hop1(self) -> tuple[Mat, Mat, Mat, Mat]:
        return self.matrices[:4]

    @property
    def hop2(self) -> tuple[Mat, Mat, Mat, Mat]:
        return self.matrices[4:]


@dataclass(frozen=True)
class HopPlan:
    """Eigen data of one hop's cross-ratio product."""

    product: Mat                      # over F_p
    char: Poly
    factor_degrees: tuple[int, ...]   # descending
    max_factor_degree: int            # extension order claimed by the largest factor
    splitting_degree: int             # lcm of the factor degrees
    eigenvalues: tuple[FieldElem, ...]  # in the common extension field
    eigenvectors: Mat                 # columns over the common extension

    def summary(self) -> dict:
        return {
            "char_poly": [c.code for c in self.char.coeffs],
            "factor_degrees": list(self.factor_degrees),
            "max_factor_degree": self.max_factor_degree,
            "splitting_degree": self.splitting_degree,
        }


@dataclass(frozen=True)
class ExtensionPlan:
    """Common extension field and per-hop eigen data for one channel.

    The extension degree is the lcm of both hops' splitting degrees; for
    some channels that exceeds the degree of the largest irreducible factor
    (the smallest field named by the factorization alone), so reports carry
    both numbers.
    """

    channel: MimoChannel
    ext: FieldSpec
    degree: int
    hop1: HopPlan
    hop2: HopPlan
    s_blocks: tuple[Mat, Mat, Mat, Mat]   # over F_p

    def summary(self) -> dict:
        return {
            "extension_degree": self.degree,
            "max_factor_degree": max(self.hop1.max_factor_degree,
                                     self.hop2.max_factor_degree),
            "hop1": self.hop1.summary(),
            "hop2": self.hop2.summary(),
        }


def _invertible(mat: Mat) -> bool:
    return bool(mat.det())


def plan_extension(ch: MimoChannel) -> ExtensionPlan:
    """Validate the channel, factor both hop products' characteristic
    polynomials, and eigen-decompose them over the common splitting field.

    Raises SingularChannel when a channel matrix, a compound hop matrix or
    an inverse block is singular, and DegenerateSpectrum when either product
    has a repeated eigenvalue.
    """
    for name, mat in zip(_MATRIX_KEYS, ch.matrices):
        if not _invertible(mat):
            raise SingularChannel(f"channel matrix {name} is singular")
    q11, q12, q21, q22 = ch.hop1
    q33, q34, q43, q44 = ch.hop2
    compound1 = block2x2(q11, q12, q21, q22)
    if not _invertible(compound1):
        raise SingularChannel("compound first-hop matrix is singular")
    compound2 = block2x2(q33, q34, q43, q44)
    if not _invertible(compound2):
        raise SingularChannel("compound second-hop matrix is singular")
    s11, s12, s21, s22 = split_blocks(compound2.inv(), ch.m)
    for name, block in zip(("s11", "s12", "s21", "s22"), (s11, s12, s21, s22)):
        if not _invertible(block):
            raise SingularChannel(f"second-hop inverse block {name} is singular")

    product1 = q11.inv() @ q12 @ q22.inv() @ q21
    product2 = s11.inv() @ s12 @ s22.inv() @ s21
    cp1, degrees1, deg1 = splitting_data(product1)
    cp2, degrees2, deg2 = splitting_data(product2)
    degree = math.lcm(deg1, deg2)
    ext = make_field(ch.ground.p, degree)

    def hop_plan(product, cp, degrees, own_degree):
        values = tuple(roots_in_field(cp, ext))
        if len(values) != ch.m:
            raise AssertionError("common extension does not split a hop product")
        vectors = eigenvectors_in(product, ext, values)
        return HopPlan(product, cp, degrees, degrees[0], own_degree,
                       values, vectors)

    return ExtensionPlan(ch, ext, degree,
                         hop_plan(product1, cp1, degrees1, deg1),
                         hop_plan(product2, cp2, degrees2, deg2),
                         (s11, s12, s21, s22))


@dataclass(frozen=True)
class MimoPrecoders:
    """Precoding matrices over the extension field.

    v1 columns are product^l applied to the eigenvector sum (the all-ones
    combination in the eigenbasis), which a Vandermonde argument keeps full
    rank; v2 repeats the pattern through Q22^-1 Q21 to align the hops.  v3
    and v4 mirror the construction for the inverted second hop.
    """

    plan: ExtensionPlan
    v1: Mat
    v2: Mat
    v3: Mat
    v4: Mat


def _hop_precoders(plan: ExtensionPlan, hop: HopPlan, cross: Mat) -> tuple[Mat, Mat]:
    ext = plan.ext
    m = plan.channel.m
    product = lift_matrix(hop.product, ext)
    lead = hop.eigenvectors @ Mat.build(ext, [[1]] * m)
    cols = [lead]
    for _ in range(m - 1):
        cols.append(product @ cols[-1])
    v_main = Mat.from_columns(ext, cols)
    det = v_main.det()
    expected = hop.eigenvectors.det() * vandermonde_det(hop.eigenvalues)
    assert det == expected and det.code, \
        "power-basis determinant must equal the eigenvector-Vandermonde product"
    shift = lift_matrix(cross, ext)
    v_side = Mat.from_columns(ext, [shift @ cols[l] for l in range(m - 1)],
                              nrows=m)
    return v_main, v_side


def build_mimo_precoders(plan: ExtensionPlan) -> MimoPrecoders:
    ch = plan.channel
    ext = plan.ext
    q11, q12, q21, q22 = ch.hop1
    s11, s12, s21, s22 = plan.s_blocks
    v1, v2 = _hop_precoders(plan, plan.hop1, q22.inv() @ q21)
    v3, v4 = _hop_precoders(plan, plan.hop2, s22.inv() @ s21)
    for a, b, left, right, offset in ((q11, q12, v1, v2, 1), (q21, q22, v1, v2, 0),
                                      (s11, s12, v3, v4, 1), (s21, s22, v3, v4, 0)):
        am, bm = lift_matrix(a, ext), lift_matrix(b, ext)
        for l in range(ch.m - 1):
            assert am @ left.col(l + offset) == bm @ right.col(l), \
                "alignment identity failed"
    return MimoPrecoders(plan, v1, v2, v3, v4)


def _matvec(rows, vec):
    out = []
    for row in rows:
        acc = row[0] * vec[0]
        for a, b in zip(row[1:], vec[1:]):
            acc = acc + a * b
        out.append(acc)
    return tuple(out)


def _slot_transport(qa: list[list[int]], qb: list[list[int]],
                    xa: tuple[FieldElem, ...], xb: tuple[FieldElem, ...],
                    p: int, ext: FieldSpec) -> tuple[FieldElem, ...]:
    """Apply y = Qa xa + Qb xb by transmitting one ground-field coefficient
    column per slot, then reassemble the extension-field observation.

    A ground-field matrix acts on each coefficient slot independently, which
    is exactly why per-slot transmission carries extension symbols
    faithfully.  Works on integer coefficient rows to keep message sweeps
    cheap.
    """
    ca = [e.coeffs for e in xa]
    cb = [e.coeffs for e in xb]
    n = len(ca)
    rng_n = range(n)
    out = []
    for i in rng_n:
        qai = qa[i]
        qbi = qb[i]
        coeffs = []
        for t in range(ext.m):
            acc = 0
            for k in rng_n:
                acc += qai[k] * ca[k][t] + qbi[k] * cb[k][t]
            coeffs.append(acc % p)
        out.append(ext._from_coeffs(tuple(coeffs)))
    return tuple(out)


class MimoPipeline:
    """Reusable end-to-end runner for one planned channel.

    Precomputes the lifted decode systems (including the Gauss-Jordan
    elimination transform for the tall destination-2 system, so inconsistent
    observations are still detected exactly) and keeps channel matrices as
    integer rows; every run still transports each hop slot by slot over the
    ground field.
    """

    def __init__(self, precoders: MimoPrecoders):
        plan = precoders.plan
        ch = plan.channel
        ext = plan.ext
        self.plan = plan
        self.pre = precoders
        self.ext = ext
        self.m = ch.m
        self.p = ch.ground.p
        self._codes = [mat.to_code_rows() for mat in ch.matrices]
        q11, _, q21, _ = ch.hop1
        s11, _, s21, _ = plan.s_blocks
        self._relay1_dec = (lift_matrix(q11, ext) @ precoders.v1).inv().rows
        self._relay2_dec = (lift_matrix(q21, ext) @ precoders.v1).inv().rows
        self._relay1_enc = (lift_matrix(s11, ext) @ precoders.v3).rows
        self._relay2_enc = (lift_matrix(s21, ext) @ precoders.v3).rows
        self._v3_inv = precoders.v3.inv().rows
        if self.m > 1:
            # T with T @ v4 = [I; 0]: applying T to an observation yields the
            # solution in the first m-1 entries and consistency residuals in
            # the rest.
            work, pivots = precoders.v4._rref(Mat.identity(ext, self.m))
            assert len(pivots) == self.m - 1, "side precoder lost column rank"
            self._v4_elim = tuple(tuple(row[self.m - 1:]) for row in work)
        else:
            self._v4_elim = None

    def encode(self, w1: Sequence[FieldElem],
               w2: Sequence[FieldElem]) -> tuple[tuple[FieldElem, ...], tuple[FieldElem, ...]]:
        x1 = _matvec(self.pre.v1.rows, tuple(w1))
        if self.m == 1:
            x2 = (self.ext.zero,)
        else:
            x2 = _matvec(self.pre.v2.rows, tuple(w2))
        return x1, x2

    def run(self, w1: Sequence[FieldElem], w2: Sequence[FieldElem]):
        """Full pipeline; returns (decoded_w1, decoded_w2, u1, u2)."""
        m, p, ext = self.m, self.p, self.ext
        q11, q12, q21, q22, q33, q34, q43, q44 = self._codes
        x1, x2 = self.encode(w1, w2)
        y1 = _slot_transport(q11, q12, x1, x2, p, ext)
        y2 = _slot_transport(q21, q22, x1, x2, p, ext)
        u1 = _matvec(self._relay1_dec, y1)
        u2 = _matvec(self._relay2_dec, y2)
        x3 = _matvec(self._relay1_enc, u1)
        x4 = _matvec(self._relay2_enc, u2)
        y3 = _slot_transport(q33, q34, x3, x4, p, ext)
        y4 = _slot_transport(q43, q44, x3, x4, p, ext)
        got1 = _matvec(self._v3_inv, y3)
        if m == 1:
            got2: tuple[FieldElem, ...] = ()
        else:
            z = _matvec(self._v4_elim, y4)
            if any(v.code for v in z[m - 1:]):
                raise InconsistentSystem(
                    "destination-2 observation left the side-precoder column space")
            got2 = z[: m - 1]
        return got1, got2, u1, u2


@dataclass(frozen=True)
class MimoSimulationReport:
    """Record of one symbol-extension run."""

    channel: MimoChannel
    plan: ExtensionPlan
    w1: tuple[FieldElem, ...]
    w2: tuple[FieldElem, ...]
    u1: tuple[FieldElem, ...]
    u2: tuple[FieldElem, ...]
    decoded1: tuple[FieldElem, ...]
    decoded2: tuple[FieldElem, ...]
    success: bool

    @property
    def slots(self) -> int:
        return self.plan.degree

    @property
    def sum_rate_bits_per_slot(self) -> float:
        return (2 * self.channel.m - 1) * math.log2(self.channel.ground.p)

    @property
    def ground_symbols_delivered(self) -> int:
        return (2 * self.channel.m - 1) * self.plan.degree

    def to_dict(self) -> dict:
        def as_lists(vec):
            return [list(e.coeffs) for e in vec]
        return {
            "channel": mimo_channel_to_dict(self.channel),
            "plan": self.plan.summary(),
            "message": {"w1": as_lists(self.w1), "w2": as_lists(self.w2)},
            "relay_equations": {"u1": as_lists(self.u1), "u2": as_lists(self.u2)},
            "decoded": {"w1": as_lists(self.decoded1), "w2": as_lists(self.decoded2)},
            "success": self.success,
            "slots": self.slots,
            "sum_rate_bits_per_slot": self.sum_rate_bits_per_slot,
            "ground_symbols_delivered": self.ground_symbols_delivered,
        }


def simulate_symbol_ext(ch: MimoChannel, w1: Sequence[FieldElem],
                        w2: Sequence[FieldElem],
                        pipeline: MimoPipeline | None = None) -> MimoSimulationReport:
    """Plan, precode and run one message through the slotted pipeline.

    Pass a prebuilt pipeline when sweeping messages over one channel.
    Message symbols live in the plan's extension field.
    """
    if pipeline is None:
        pipeline = MimoPipeline(build_mimo_precoders(plan_extension(ch)))
    w1 = tuple(pipeline.ext.element(v) for v in w1)
    w2 = tuple(pipeline.ext.element(v) for v in w2)
    if len(w1) != ch.m or len(w2) != ch.m - 1:
        raise ValueError(f"expected message lengths {ch.m} and {ch.m - 1}")
    got1, got2, u1, u2 = pipeline.run(w1, w2)
    return MimoSimulationReport(ch, pipeline.plan, w1, w2, u1, u2, got1, got2,
                                got1 == w1 and got2 == w2)


def random_message(ext: FieldSpec, m: int, rng: random.Random):
    w1 = tuple(ext.random_element(rng) for _ in range(m))
    w2 = tuple(ext.random_element(rng) for _ in range(m - 1))
    return w1, w2


def random_mimo_channel(p: int, m: int, rng: random.Random,
                        max_tries: int = 10000) -> MimoChannel:
    """Random channel satisfying the invertibility model (all eight matrices
    plus both compounds), by rejection."""
    ground = prime_field(p)

    def random_invertible() -> Mat:
        while True:
            mat = Mat.build(ground, [[rng.randrange(p) for _ in range(m)]
                                     for _ in range(m)])
            if mat.det():
                return mat

    for _ in range(max_tries):
        mats = tuple(random_invertible() for _ in range(8))
        ch = MimoChannel(ground, m, mats)
        if _invertible(block2x2(*ch.hop1)) and _invertible(block2x2(*ch.hop2)):
            return ch
    raise SingularChannel(f"no valid channel found in {max_tries} draws")


# -- serialization --------------------------------------------------------------


def mimo_channel_to_dict(ch: MimoChannel) -> dict:
    out: dict = {"p": ch.ground.p, "m": ch.m}
    for key, mat in zip(_MATRIX_KEYS, ch.matrices):
        out[key] = mat.to_code_rows()
    return out


def mimo_channel_from_dict(obj: dict) -> MimoChannel:
    p, m = int(obj["p"]), int(obj["m"])
    return MimoChannel.create(p, m, [obj[k] for k in _MATRIX_KEYS])
