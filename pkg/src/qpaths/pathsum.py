"""Path amplitudes for transitions with no intermediate dynamics.

A system prepared in |i> and later found in |f> evolves trivially in
between, so the transition amplitude splits over the basis into one
virtual path per basis state:

    amp(n) = <f|n><n|i>        total = <f|i> = sum_n amp(n)

These path amplitudes are the raw material for pathway networks,
meters, and weak values.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .errors import DimensionMismatch, NonOrthogonalFinals
from .statespace import ATOL, KetState, StateSpace, inner


@dataclass(frozen=True, eq=False)
class PathDecomposition:
    """Per-path amplitudes of one transition |i> -> |f>."""

    initial: KetState
    final: KetState
    amplitudes: np.ndarray

    @property
    def space(self) -> StateSpace:
        return self.initial.space

    @property
    def total_amplitude(self) -> complex:
        """<f|i>: coherent sum over all paths."""
        return complex(self.amplitudes.sum())

    def amplitude(self, which: int | str) -> complex:
        k = which if isinstance(which, int) else self.space.index(which)
        return complex(self.amplitudes[k])

    def __repr__(self) -> str:
        amps = ", ".join(f"{a:.6g}" for a in self.amplitudes)
        return f"PathDecomposition([{amps}])"


def decompose(initial: KetState, final: KetState) -> PathDecomposition:
    """Split <final|initial> into one amplitude per basis path."""
    if initial.space != final.space:
        raise DimensionMismatch("initial and final states live over different spaces")
    amps = np.conjugate(final.amplitudes) * initial.amplitudes
    amps.setflags(write=False)
    return PathDecomposition(initial, final, amps)


def transition_probability(initial: KetState, final: KetState) -> float:
    """|<final|initial>|^2 via the coherent path sum."""
    return float(abs(decompose(initial, final).total_amplitude) ** 2)


@dataclass(frozen=True, eq=False)
class AmplitudeTable:
    """Path amplitudes for one initial state against several final states.

    values[n, j] is the amplitude through basis path n when post-selecting
    on final state j.  Column sums are the transition amplitudes; their
    squared magnitudes sum to 1 when the finals form a complete
    orthonormal family.
    """

    space: StateSpace
    final_names: tuple[str, ...]
    values: np.ndarray

    @property
    def path_labels(self) -> tuple[str, ...]:
        return self.space.labels

    def column(self, final_name: str) -> np.ndarray:
        return self.values[:, self.final_names.index(final_name)]

    @property
    def total_amplitudes(self) -> np.ndarray:
        return self.values.sum(axis=0)

    @property
    def transition_probabilities(self) -> np.ndarray:
        return np.abs(self.total_amplitudes) ** 2


def amplitude_table(initial: KetState, finals: Mapping[str, KetState],
                    *, require_orthogonal: bool = True) -> AmplitudeTable:
    """Tabulate path amplitudes against a named family of final states.

    The family must be mutually orthogonal (the table's columns then
    describe exclusive outcomes); pass require_orthogonal=False to
    tabulate a non-orthogonal family anyway.
    """
    names = tuple(finals.keys())
    states = [finals[name] for name in names]
    for st in states:
        if st.space != initial.space:
            raise DimensionMismatch("final states must share the initial state's space")
    if require_orthogonal:
        for a in range(len(states)):
            for b in range(a + 1, len(states)):
                overlap = abs(inner(states[a], states[b]))
                if overlap > 1e-9:
                    raise NonOrthogonalFinals(
                        f"finals {names[a]!r} and {names[b]!r} overlap (|<a|b>| = {overlap:.3g})")
    columns = [decompose(initial, st).amplitudes for st in states]
    values = np.column_stack(columns) if columns else np.zeros((initial.dimension, 0), complex)
    values.setflags(write=False)
    return AmplitudeTable(initial.space, names, values)
