"""Independent cross-checks for the path and meter machinery.

Two deliberately different computation routes back the main library:

* projective_joint re-derives the accurate-measurement statistics with
  explicit spectral projector matrices and dense linear algebra, never
  touching the path decomposition;
* grid_mean_reading integrates the pointer density numerically on a
  wide grid, never using the closed-form overlap kernel.

verification_checks runs both against the built-in scenario library and
reports a pass/fail line per comparison.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import MeterStatisticsUndefined
from .measurement import build_network
from .meter import MeterModel, mean_reading, reading_amplitude, scaled_widths
from .pathsum import PathDecomposition, decompose
from .statespace import DiagonalObservable, KetState

GRID_POINTS = 2 ** 14
GRID_PADDING = 8.0


def projective_joint(initial: KetState, final: KetState,
                     observable: DiagonalObservable) -> dict[float, float]:
    """Joint probability of each reading with the post-selection.

    Computed as |<f| P_a |i>|^2 with P_a the explicit projector matrix
    onto the eigenvalue-a subspace.  Keys are the distinct eigenvalues.
    """
    f = final.amplitudes
    i = initial.amplitudes
    result: dict[float, float] = {}
    for ev in observable.distinct_eigenvalues:
        projector = np.diag((observable.eigenvalues == ev).astype(float))
        bracket = np.conjugate(f) @ projector @ i
        result[ev] = float(abs(bracket) ** 2)
    return result


@dataclass(frozen=True)
class ReadingGrid:
    """Uniform pointer-position grid for numerical reading statistics."""

    lo: float
    hi: float
    points: int

    def __post_init__(self):
        if self.points < 4096:
            raise ValueError("reading grid needs at least 4096 points")
        if not self.hi > self.lo:
            raise ValueError("reading grid needs hi > lo")

    @property
    def samples(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.points)


def reading_grid(observable: DiagonalObservable, meter: MeterModel,
                 points: int = GRID_POINTS) -> ReadingGrid:
    """Grid covering every shifted pointer packet out to eight widths."""
    pad = GRID_PADDING * meter.width
    return ReadingGrid(float(observable.eigenvalues.min()) - pad,
                       float(observable.eigenvalues.max()) + pad,
                       points)


def grid_mean_reading(decomposition: PathDecomposition,
                      observable: DiagonalObservable,
                      meter: MeterModel,
                      grid: ReadingGrid | None = None) -> float:
    """Mean pointer reading by trapezoid integration of the pointer density."""
    if grid is None:
        grid = reading_grid(observable, meter)
    else:
        pad = GRID_PADDING * meter.width
        if (grid.lo > float(observable.eigenvalues.min()) - pad
                or grid.hi < float(observable.eigenvalues.max()) + pad):
            raise ValueError("grid does not cover the pointer packets out to eight widths")
    x = grid.samples
    density = np.abs(reading_amplitude(decomposition, observable, meter, x)) ** 2
    weight = float(np.trapezoid(density, x))
    if not (weight > 1e-300):
        raise MeterStatisticsUndefined(
            "post-selection succeeds with probability zero; no reading distribution")
    return float(np.trapezoid(x * density, x) / weight)


@dataclass(frozen=True)
class CheckResult:
    """One verification comparison: its worst deviation against its tolerance."""

    name: str
    deviation: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.deviation <= self.tolerance

    def __str__(self) -> str:
        word = "pass" if self.passed else "FAIL"
        return f"{word}  {self.name}  deviation {self.deviation:.3e}  tolerance {self.tolerance:.1e}"


PROJECTIVE_TOL = 1e-12
MEAN_READING_TOL = 1e-6
REFINEMENT_TOL = 1e-8
WIDTH_RATIOS = (0.01, 0.1, 1.0, 10.0, 100.0)


def verification_checks(beta: float = 0.5, epsilon: float = 0.5) -> list[CheckResult]:
    """Cross-validate both computation routes over the built-in scenarios."""
    from .scenarios import built_in_library

    checks: list[CheckResult] = []
    library = built_in_library(beta=beta, epsilon=epsilon)

    for scenario in library:
        for obs_name, obs in scenario.observables.items():
            worst = 0.0
            for fin in scenario.finals.values():
                net = build_network(scenario.initial, fin, obs)
                reference = projective_joint(scenario.initial, fin, obs)
                for ev, prob in reference.items():
                    worst = max(worst, abs(net.probability_of(ev) - prob))
            checks.append(CheckResult(f"projective {scenario.name} {obs_name}",
                                      worst, PROJECTIVE_TOL))

    for scenario in library:
        for obs_name, obs in scenario.observables.items():
            worst = 0.0
            for fin in scenario.finals.values():
                dec = decompose(scenario.initial, fin)
                for width in scaled_widths(obs, WIDTH_RATIOS):
                    meter = MeterModel(width)
                    try:
                        closed = mean_reading(dec, obs, meter)
                    except MeterStatisticsUndefined:
                        continue
                    numeric = grid_mean_reading(dec, obs, meter)
                    worst = max(worst, abs(closed - numeric))
            checks.append(CheckResult(f"mean-reading {scenario.name} {obs_name}",
                                      worst, MEAN_READING_TOL))

    hardy = library[1]
    fin = next(iter(hardy.finals.values()))
    obs = next(iter(hardy.observables.values()))
    dec = decompose(hardy.initial, fin)
    meter = MeterModel(obs.spread)
    coarse = grid_mean_reading(dec, obs, meter, reading_grid(obs, meter, GRID_POINTS))
    fine = grid_mean_reading(dec, obs, meter, reading_grid(obs, meter, 2 * GRID_POINTS))
    checks.append(CheckResult(f"grid-refinement {hardy.name}",
                              abs(fine - coarse), REFINEMENT_TOL))
    return checks
