"""Journal influence indicators computed from citation matrices.

The central quantity is the influence weight: the stochastic dominant
eigenvector of the reference-normalized citation matrix, obtained by
recursive power iteration.  Alongside it this module provides the
Pinski-Narin normalization itself, power-weakness ratios from the raw
matrix and its transpose, raw-count popularity measures, impact ratios,
and per-journal self-citation diagnostics.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CitationDataError, NumericalError
from .matrix import CitationMatrix, JournalSet, margins, strip_self_citations, transpose

RAW = "raw"
STOCHASTIC = "stochastic"

#: Sum-to-one slack accepted for stochastic-tagged vectors.
STOCHASTIC_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class NormalizedMatrix:
    """Dimensionless citation matrix: each row divided by that journal's
    citing (reference) total.

    Row i sums to journal i's cited-to-citing ratio, and scaling the
    source counts by a positive constant leaves the values unchanged.
    """

    journals: JournalSet
    values: np.ndarray

    def __post_init__(self):
        arr = np.array(self.values, dtype=float)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise CitationDataError(f"matrix must be square, got shape {arr.shape}")
        if len(self.journals) != arr.shape[0]:
            raise CitationDataError(
                f"{len(self.journals)} journal labels for a {arr.shape[0]}x{arr.shape[1]} matrix"
            )
        if not np.isfinite(arr).all() or (arr < 0).any():
            raise CitationDataError("normalized values must be finite and non-negative")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    @property
    def n(self) -> int:
        return self.values.shape[0]


@dataclass(frozen=True, eq=False)
class WeightVector:
    """Per-journal non-negative weights with a normalization tag.

    ``stochastic`` vectors sum to 1 (within ``STOCHASTIC_TOL``); ``raw``
    vectors carry counts or ratios on their natural scale.
    """

    journals: JournalSet
    values: np.ndarray
    kind: str = RAW

    def __post_init__(self):
        arr = np.array(self.values, dtype=float)
        if arr.ndim != 1 or arr.shape[0] != len(self.journals):
            raise CitationDataError(
                f"weight vector of length {arr.shape} does not match "
                f"{len(self.journals)} journals"
            )
        if not np.isfinite(arr).all() or (arr < 0).any():
            raise CitationDataError("weights must be finite and non-negative")
        if self.kind not in (RAW, STOCHASTIC):
            raise CitationDataError(f"unknown weight kind {self.kind!r}")
        if self.kind == STOCHASTIC and abs(arr.sum() - 1.0) > STOCHASTIC_TOL:
            raise CitationDataError(f"stochastic vector sums to {arr.sum()!r}, not 1")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True, eq=False)
class IterationStep:
    """One cycle of the recursion: the matrix-vector product before
    renormalization, the stochastic vector after it, and the L1 distance
    from the previous stochastic vector."""

    cycle: int
    unnormalized: np.ndarray
    stochastic: np.ndarray
    delta: float


@dataclass(frozen=True, eq=False)
class IterationTrace:
    """Full record of a power iteration run."""

    journals: JournalSet
    steps: tuple[IterationStep, ...]
    converged: bool
    iterations_used: int

    @property
    def final(self) -> WeightVector:
        """Stochastic weight vector after the last cycle."""
        return WeightVector(self.journals, self.steps[-1].stochastic, STOCHASTIC)

    @property
    def deltas(self) -> tuple[float, ...]:
        return tuple(step.delta for step in self.steps)


@dataclass(frozen=True, eq=False)
class PowerWeaknessResult:
    """Power-weakness ratio with its component vectors.

    ``power`` iterates the matrix as stored (cited side), ``weakness``
    its transpose (citing side); ``ratio`` is their elementwise quotient.
    """

    power: WeightVector
    weakness: WeightVector
    ratio: WeightVector
    cycles: int


@dataclass(frozen=True, eq=False)
class SelfCitationDiagnostics:
    """Per-journal decomposition of citation traffic into the self block
    and the exchanges with the rest of the ecosystem.

    For each journal: ``self_citations`` is the diagonal count,
    ``cited_by_others`` and ``citing_others`` the off-diagonal margins.
    Rates and ratios with zero denominators are NaN; use
    ``ratio_without_defined`` to mask the undefined entries.
    """

    journals: JournalSet
    self_citations: np.ndarray
    cited_by_others: np.ndarray
    citing_others: np.ndarray
    self_cited_rate: np.ndarray
    self_citing_rate: np.ndarray
    cited_citing_ratio_with: np.ndarray
    cited_citing_ratio_without: np.ndarray

    @property
    def ratio_without_defined(self) -> np.ndarray:
        return ~np.isnan(self.cited_citing_ratio_without)


def pinski_narin_normalize(m: CitationMatrix) -> NormalizedMatrix:
    """Divide each journal's received-citation row by its citing total.

    The divisor for row i is journal i's own reference total (the column-i
    margin), so the result is dimensionless: citations received per
    reference given.

    Raises
    ------
    NumericalError
        If some journal makes no references at all, naming it; such an
        isolated journal must be removed before normalizing.
    """
    citing = margins(m).citing_totals
    silent = np.flatnonzero(citing == 0)
    if silent.size:
        names = ", ".join(repr(m.journals.labels[i]) for i in silent)
        raise NumericalError(f"journal {names} makes no references; cannot normalize")
    return NormalizedMatrix(m.journals, m.counts / citing[:, None])


def _iterable_values(matrix: CitationMatrix | NormalizedMatrix) -> tuple[JournalSet, np.ndarray]:
    if isinstance(matrix, CitationMatrix):
        return matrix.journals, matrix.counts
    if isinstance(matrix, NormalizedMatrix):
        return matrix.journals, matrix.values
    raise CitationDataError(
        f"expected a CitationMatrix or NormalizedMatrix, got {type(matrix).__name__}"
    )


def power_iterate(
    matrix: CitationMatrix | NormalizedMatrix,
    *,
    cycles: int | None = None,
    tolerance: float = 1e-9,
    max_cycles: int = 100,
) -> IterationTrace:
    """Run the recursive weight iteration and record every cycle.

    Starting from an all-ones vector, each cycle multiplies the matrix by
    the current weight vector and renormalizes the product to sum 1; the
    first cycle therefore reproduces the matrix row sums before
    renormalization.  Cycle deltas are L1 distances between successive
    stochastic vectors, with cycle 1 measured against the normalized
    (uniform) start vector.

    Parameters
    ----------
    matrix : CitationMatrix or NormalizedMatrix
        Square non-negative matrix to iterate.
    cycles : int, optional
        Run exactly this many cycles.  When omitted, iteration stops as
        soon as the delta drops to ``tolerance``, or after ``max_cycles``
        cycles with ``converged`` set False.
    tolerance : float
        L1 convergence threshold; also decides the ``converged`` flag of
        fixed-cycle runs.
    max_cycles : int
        Cycle budget in tolerance mode.

    Raises
    ------
    NumericalError
        If an iterate overflows to a non-finite value, or its mass
        vanishes so that renormalization is impossible.
    """
    journals, values = _iterable_values(matrix)
    if cycles is not None and (not isinstance(cycles, (int, np.integer)) or cycles < 1):
        raise CitationDataError(f"cycle count must be a positive integer, got {cycles!r}")
    if not tolerance > 0:
        raise CitationDataError(f"tolerance must be positive, got {tolerance!r}")
    if max_cycles < 1:
        raise CitationDataError(f"max_cycles must be at least 1, got {max_cycles!r}")

    n = values.shape[0]
    vector = np.ones(n)
    previous = np.full(n, 1.0 / n)
    steps: list[IterationStep] = []
    cycle = 0
    while True:
        cycle += 1
        product = values @ vector
        if not np.isfinite(product).all():
            raise NumericalError(f"weight vector became non-finite at cycle {cycle}")
        mass = product.sum()
        if mass <= 0.0:
            raise NumericalError(
                f"weight vector vanished at cycle {cycle}; cannot renormalize"
            )
        vector = product / mass
        delta = float(np.abs(vector - previous).sum())
        product.setflags(write=False)
        stochastic = vector.copy()
        stochastic.setflags(write=False)
        steps.append(IterationStep(cycle, product, stochastic, delta))
        previous = vector
        if cycles is not None:
            if cycle >= cycles:
                break
        elif delta <= tolerance or cycle >= max_cycles:
            break
    converged = steps[-1].delta <= tolerance
    return IterationTrace(journals, tuple(steps), converged, len(steps))


def influence_weights(
    m: CitationMatrix,
    *,
    self_citations: bool = True,
    cycles: int | None = None,
    tolerance: float = 1e-9,
    max_cycles: int = 100,
) -> WeightVector:
    """Recursive influence weights of the normalized citation matrix.

    With ``self_citations=False`` the diagonal is zeroed before
    normalization, so the reference totals used as divisors are recomputed
    from the stripped matrix.  Iteration arguments are passed through to
    :func:`power_iterate`; the result is its final stochastic vector.
    """
    working = m if self_citations else strip_self_citations(m)
    trace = power_iterate(
        pinski_narin_normalize(working),
        cycles=cycles,
        tolerance=tolerance,
        max_cycles=max_cycles,
    )
    return trace.final


def power_weakness_ratio(m: CitationMatrix, cycles: int) -> PowerWeaknessResult:
    """Elementwise ratio of iterated cited-side and citing-side weights.

    Both the raw matrix (power) and its transpose (weakness) are iterated
    for the same number of cycles with per-cycle stochastic
    renormalization, and the ratio is taken of the two final vectors.
    After one cycle the ratio equals each journal's cited-to-citing margin
    ratio.

    Raises
    ------
    NumericalError
        If some journal's weakness weight is zero, naming it; the ratio is
        undefined there.
    """
    power = power_iterate(m, cycles=cycles).final
    weakness = power_iterate(transpose(m), cycles=cycles).final
    zero = np.flatnonzero(weakness.values == 0)
    if zero.size:
        names = ", ".join(repr(m.journals.labels[i]) for i in zero)
        raise NumericalError(
            f"weakness weight of journal {names} is zero after {cycles} cycles; "
            "power-weakness ratio undefined"
        )
    ratio = WeightVector(m.journals, power.values / weakness.values, RAW)
    return PowerWeaknessResult(power, weakness, ratio, int(cycles))


def raw_citation_counts(m: CitationMatrix) -> tuple[WeightVector, WeightVector]:
    """Margin totals as popularity indicators: (cited, citing) counts."""
    totals = margins(m)
    return (
        WeightVector(m.journals, totals.cited_totals, RAW),
        WeightVector(m.journals, totals.citing_totals, RAW),
    )


def impact_ratio(citations: WeightVector, publications: WeightVector) -> WeightVector:
    """Citations per publication, the classic size-normalized quality proxy.

    Both vectors must cover the same journals in the same order, and every
    publication count must be positive.
    """
    if citations.journals != publications.journals:
        raise CitationDataError("citation and publication vectors cover different journals")
    bad = np.flatnonzero(publications.values <= 0)
    if bad.size:
        names = ", ".join(repr(citations.journals.labels[i]) for i in bad)
        raise NumericalError(
            f"publication count for journal {names} is not positive; impact undefined"
        )
    return WeightVector(citations.journals, citations.values / publications.values, RAW)


def self_citation_diagnostics(m: CitationMatrix) -> SelfCitationDiagnostics:
    """Split each journal's citation traffic into self and cross terms.

    Zero-denominator rates and ratios come back as NaN instead of raising,
    since a journal with no received citations or no references is valid
    data.
    """
    totals = margins(m)
    self_counts = np.diagonal(m.counts).copy()
    cited_by_others = totals.cited_totals - self_counts
    citing_others = totals.citing_totals - self_counts
    return SelfCitationDiagnostics(
        journals=m.journals,
        self_citations=self_counts,
        cited_by_others=cited_by_others,
        citing_others=citing_others,
        self_cited_rate=_safe_divide(self_counts, totals.cited_totals),
        self_citing_rate=_safe_divide(self_counts, totals.citing_totals),
        cited_citing_ratio_with=_safe_divide(totals.cited_totals, totals.citing_totals),
        cited_citing_ratio_without=_safe_divide(cited_by_others, citing_others),
    )


def _safe_divide(numerator: np.ndarray, denominator: np.ndarray) -> np.ndarray:
    out = np.full(numerator.shape, np.nan)
    np.divide(numerator, denominator, out=out, where=denominator != 0)
    return out
