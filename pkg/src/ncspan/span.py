"""Evaluation of polynomials on M_d(Q) and classification of value spans.

The linear span of the values of a polynomial on a full matrix algebra is
always one of four canonical subspaces: zero, the scalars, the trace-zero
matrices, or everything.  This module samples random integer matrix tuples,
accumulates the exact span of the resulting values, and stops once the
basis has been stable for a while and matches a canonical space.  Sampling
is a lower bound on the true span, so a budget that runs out without a
match is reported honestly as UNDETERMINED rather than coerced.

Identity and centrality tests are exact for multilinear polynomials (it
suffices to evaluate on tuples of matrix units) and randomized otherwise,
with the usual polynomial-vanishing error bound.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .linalg import (
    Classification,
    DimensionMismatch,
    MatrixQ,
    NotInSpan,
    SpanBasis,
    commutator,
    express_in_terms,
)
from .poly import NcPoly


class ArityMismatch(Exception):
    """Fewer argument matrices than the polynomial has variables."""


class ConstantInput(Exception):
    """Operation requires a nonconstant polynomial."""


@dataclass(frozen=True)
class SampleConfig:
    """Deterministic sampling policy; every random draw flows from seed.

    Entries are integers uniform in [-coeff_bound, coeff_bound].  When
    max_samples is None the budget defaults to 64 * d^2 for dimension d
    (the rank can grow at most d^2 times, with generous slack).
    """

    seed: int = 0
    coeff_bound: int = 10
    max_samples: int | None = None
    stability_window: int = 50

    def __post_init__(self):
        if self.coeff_bound < 1:
            raise ValueError("coeff_bound must be >= 1")
        if self.stability_window < 1:
            raise ValueError("stability_window must be >= 1")
        if self.max_samples is not None and self.max_samples < 1:
            raise ValueError("max_samples must be >= 1")

    def samples_for(self, d: int) -> int:
        return self.max_samples if self.max_samples is not None else 64 * d * d


Witness = tuple[tuple[MatrixQ, ...], MatrixQ]


@dataclass(frozen=True)
class SpanReport:
    """Outcome of sampling the span of a polynomial's values on M_d."""

    poly: NcPoly
    dim: int
    classification: Classification
    basis: SpanBasis
    witnesses: tuple[Witness, ...]
    samples_used: int
    config: SampleConfig


def evaluate(
    f: NcPoly, args: Sequence[MatrixQ], dim: int | None = None
) -> MatrixQ:
    """Evaluate f at a tuple of matrices (args[i-1] is the value of X_i).

    The constant term contributes a scalar multiple of the identity.  For a
    polynomial without variables the target dimension must be passed
    explicitly since it cannot be inferred.
    """
    args = tuple(args)
    if len(args) < f.nvars:
        raise ArityMismatch(
            f"polynomial uses X1..X{f.nvars} but only {len(args)} matrices given"
        )
    if args:
        d = args[0].dim
        for a in args:
            if a.dim != d:
                raise DimensionMismatch("argument matrices have differing dimensions")
        if dim is not None and dim != d:
            raise DimensionMismatch(f"arguments are {d}x{d}, expected {dim}x{dim}")
    elif dim is not None:
        d = dim
    else:
        raise ArityMismatch("cannot infer dimension: no arguments and no dim given")
    acc = MatrixQ.zero(d)
    for word, coeff in f.terms.items():
        if word:
            prod = args[word[0] - 1]
            for letter in word[1:]:
                prod = prod * args[letter - 1]
            acc = acc + prod.scale(coeff)
        else:
            acc = acc + MatrixQ.identity(d).scale(coeff)
    return acc


def random_matrix(rng: random.Random, d: int, bound: int) -> MatrixQ:
    """d x d matrix with integer entries uniform in [-bound, bound]."""
    return MatrixQ(
        [[rng.randint(-bound, bound) for _ in range(d)] for _ in range(d)]
    )


def _matrix_unit_tuples(d: int, n: int):
    units = [
        MatrixQ.unit(d, j, k) for j in range(d) for k in range(d)
    ]
    return itertools.product(units, repeat=n)


def is_identity(f: NcPoly, d: int, cfg: SampleConfig | None = None) -> bool:
    """Decide whether every value of f on M_d is zero.

    Exact for multilinear f: by linearity in each variable it is enough to
    check all tuples of matrix units.  Otherwise randomized over integer
    matrices: any nonzero value certifies False, while an all-zero run
    returns True with error probability at most vanishing_bound().
    """
    cfg = cfg or SampleConfig()
    if f.is_zero():
        return True
    if f.is_multilinear():
        return all(
            evaluate(f, tup, dim=d).is_zero()
            for tup in _matrix_unit_tuples(d, f.nvars)
        )
    rng = random.Random(cfg.seed)
    for _ in range(cfg.samples_for(d)):
        args = tuple(
            random_matrix(rng, d, cfg.coeff_bound) for _ in range(f.nvars)
        )
        if not evaluate(f, args, dim=d).is_zero():
            return False
    return True


def vanishing_bound(f: NcPoly, d: int, cfg: SampleConfig | None = None) -> Fraction:
    """Error probability bound for a randomized all-zero identity verdict.

    Standard polynomial-vanishing estimate: a nonzero polynomial of total
    degree k vanishes at a uniform integer point of [-B, B] with
    probability at most k / (2B + 1), independently per sample.  Exact
    (multilinear) tests have bound 0.
    """
    cfg = cfg or SampleConfig()
    deg = f.degree()
    if f.is_zero() or f.is_multilinear() or deg == 0:
        return Fraction(0)
    per_sample = Fraction(deg, 2 * cfg.coeff_bound + 1)
    if per_sample >= 1:
        return Fraction(1)
    return per_sample ** cfg.samples_for(d)


def is_central(f: NcPoly, d: int, cfg: SampleConfig | None = None) -> bool:
    """Decide whether f's values lie in the center of M_d without all vanishing.

    Tested through the bracket with a fresh variable: f is central iff
    [f, X_{n+1}] is an identity while f itself is not.
    """
    cfg = cfg or SampleConfig()
    bracket = f * NcPoly.variable(f.nvars + 1) - NcPoly.variable(f.nvars + 1) * f
    return is_identity(bracket, d, cfg) and not is_identity(f, d, cfg)


def nontriviality_oracle(
    d: int, cfg: SampleConfig | None = None
) -> Callable[[NcPoly], bool]:
    """Oracle for the reduction pipeline: neither identity nor central on M_d."""
    cfg = cfg or SampleConfig()

    def oracle(f: NcPoly) -> bool:
        if is_identity(f, d, cfg):
            return False
        fresh = NcPoly.variable(f.nvars + 1)
        bracket = f * fresh - fresh * f
        return not is_identity(bracket, d, cfg)

    return oracle


def classify_span(
    f: NcPoly, d: int, cfg: SampleConfig | None = None
) -> SpanReport:
    """Sample values of f on M_d and classify their linear span.

    Stops as soon as the basis has seen stability_window consecutive
    non-growing samples while matching a canonical space, or immediately at
    full rank (no further sample can change a full basis), or when the
    budget runs out.  Witness tuples are recorded exactly for the samples
    that grew the basis, so the basis is the span of the witness values.
    """
    cfg = cfg or SampleConfig()
    rng = random.Random(cfg.seed)
    basis = SpanBasis(d)
    witnesses: list[Witness] = []
    budget = cfg.samples_for(d)
    full_rank = d * d
    stall = 0
    samples_used = 0
    classification: Classification | None = None
    for _ in range(budget):
        args = tuple(
            random_matrix(rng, d, cfg.coeff_bound) for _ in range(f.nvars)
        )
        value = evaluate(f, args, dim=d)
        samples_used += 1
        basis, grew = basis.insert(value)
        if grew:
            witnesses.append((args, value))
            stall = 0
        else:
            stall += 1
        if basis.rank == full_rank:
            classification = Classification.FULL
            break
        if stall >= cfg.stability_window:
            match = basis.canonical_match()
            if match is not None:
                classification = match
                break
    if classification is None:
        classification = basis.canonical_match() or Classification.UNDETERMINED
    return SpanReport(
        poly=f,
        dim=d,
        classification=classification,
        basis=basis,
        witnesses=tuple(witnesses),
        samples_used=samples_used,
        config=cfg,
    )


def find_witness_dimension(
    f: NcPoly, d_max: int, cfg: SampleConfig | None = None
) -> int | None:
    """Smallest d <= d_max where f is neither an identity nor central.

    Such a d exists for every nonconstant polynomial once d_max is large
    enough (no nonzero polynomial is an identity of every M_d); None means
    the search bound was too small.
    """
    if f.is_constant():
        raise ConstantInput("witness dimensions are defined for nonconstant input")
    cfg = cfg or SampleConfig()
    for d in range(1, d_max + 1):
        if not is_identity(f, d, cfg) and not is_central(f, d, cfg):
            return d
    return None


def lie_ideal_check(basis: SpanBasis) -> bool:
    """Check [r, E_jk] stays in the span for every basis row and matrix unit.

    By bilinearity of the bracket this certifies the span is a Lie ideal of
    the full matrix algebra.
    """
    d = basis.dim
    units = [MatrixQ.unit(d, j, k) for j in range(d) for k in range(d)]
    return all(
        basis.contains(commutator(row, unit))
        for row in basis.row_matrices()
        for unit in units
    )


def herstein_closure(seed: MatrixQ, d: int) -> SpanBasis:
    """Smallest subspace containing seed that is a Lie ideal and a subalgebra.

    Fixpoint iteration: repeatedly adjoin brackets of basis rows with matrix
    units and pairwise products of basis rows until the rank stops growing.
    For a noncentral seed of a full matrix algebra the closure is everything.
    """
    if seed.dim != d:
        raise DimensionMismatch(f"seed is {seed.dim}x{seed.dim}, expected {d}x{d}")
    units = [MatrixQ.unit(d, j, k) for j in range(d) for k in range(d)]
    basis, _ = SpanBasis(d).insert(seed)
    changed = True
    while changed:
        changed = False
        mats = basis.row_matrices()
        for r in mats:
            for u in units:
                basis, grew = basis.insert(commutator(r, u))
                changed = changed or grew
        for a in mats:
            for b in mats:
                basis, grew = basis.insert(a * b)
                changed = changed or grew
    return basis


Decomposition = list[tuple[Fraction, tuple[MatrixQ, ...]]]


def decompose_target(report: SpanReport, target: MatrixQ) -> Decomposition:
    """Express target as an exact combination sum lam_j * f(t_j).

    The t_j are witness tuples from the report (whose values span the
    report's basis), except in the directly invertible case f = c * X_i,
    where the preimage tuple is written down outright.  Raises NotInSpan
    when the target lies outside the recorded span.
    """
    d = report.dim
    if target.dim != d:
        raise DimensionMismatch(f"target is {target.dim}x{target.dim}, expected {d}")
    f = report.poly
    if len(f.terms) == 1:
        ((word, coeff),) = f.terms.items()
        if len(word) == 1:
            i = word[0]
            scaled = target.scale(Fraction(1) / coeff)
            args = tuple(
                scaled if v == i else MatrixQ.zero(d)
                for v in range(1, f.nvars + 1)
            )
            return [(Fraction(1), args)]
    if not report.basis.contains(target):
        raise NotInSpan("target is outside the sampled span")
    vectors = [value.flatten() for _, value in report.witnesses]
    sol = express_in_terms(vectors, target.flatten())
    if sol is None:
        raise NotInSpan("target is outside the span of the witness values")
    return [
        (lam, args)
        for lam, (args, _) in zip(sol, report.witnesses)
        if lam
    ]
