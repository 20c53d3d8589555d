"""Finite-dimensional labeled state spaces, kets, and diagonal observables.

Everything in this package is expressed over a StateSpace: an ordered
orthonormal basis identified by string labels.  States are complex
amplitude vectors over that basis; observables are real diagonals.
All three types are immutable after construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

from .errors import DimensionMismatch, ZeroStateError

ATOL = 1e-12


class BasisLabel(NamedTuple):
    """One basis direction: its display name and its position."""

    name: str
    index: int


@dataclass(frozen=True)
class StateSpace:
    """Ordered orthonormal basis with unique string labels."""

    labels: tuple[str, ...]

    def __post_init__(self):
        labels = tuple(str(x) for x in self.labels)
        if not labels:
            raise ValueError("state space needs at least one basis label")
        if len(set(labels)) != len(labels):
            raise ValueError("basis labels must be unique")
        object.__setattr__(self, "labels", labels)

    @property
    def dimension(self) -> int:
        return len(self.labels)

    @property
    def basis(self) -> tuple[BasisLabel, ...]:
        return tuple(BasisLabel(name, k) for k, name in enumerate(self.labels))

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"no basis label {label!r} in {self.labels}") from None

    def basis_state(self, which: int | str) -> KetState:
        """Unit ket along one basis direction."""
        k = which if isinstance(which, int) else self.index(which)
        amps = np.zeros(self.dimension, dtype=complex)
        amps[k] = 1.0
        return KetState(self, amps, normalize=False)

    @staticmethod
    def of_dimension(n: int, prefix: str = "n") -> StateSpace:
        return StateSpace(tuple(f"{prefix}{k}" for k in range(n)))


def _frozen_array(values: Iterable[complex], dtype) -> np.ndarray:
    arr = np.array(list(values) if not isinstance(values, np.ndarray) else values,
                   dtype=dtype).reshape(-1).copy()
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class KetState:
    """Complex amplitude vector over a StateSpace.

    Construction normalizes to unit length by default.  Pass
    normalize=False to keep the amplitudes exactly as given, e.g. for
    scaled states or for basis vectors whose entries must stay exact.
    """

    space: StateSpace
    amplitudes: np.ndarray

    def __init__(self, space: StateSpace, amplitudes, *, normalize: bool = True):
        arr = _frozen_array(amplitudes, complex)
        if arr.size != space.dimension:
            raise DimensionMismatch(
                f"state has {arr.size} amplitudes, space has dimension {space.dimension}")
        if normalize:
            nrm = float(np.linalg.norm(arr))
            if nrm <= ATOL:
                raise ZeroStateError("cannot normalize a zero state")
            if abs(nrm - 1.0) > ATOL:
                arr = _frozen_array(arr / nrm, complex)
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "amplitudes", arr)

    @property
    def dimension(self) -> int:
        return self.space.dimension

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def amplitude(self, which: int | str) -> complex:
        k = which if isinstance(which, int) else self.space.index(which)
        return complex(self.amplitudes[k])

    def scaled(self, factor: complex) -> KetState:
        """This state multiplied by a constant, left unnormalized."""
        return KetState(self.space, self.amplitudes * factor, normalize=False)

    def isclose(self, other: KetState, atol: float = ATOL) -> bool:
        return (self.space == other.space
                and bool(np.allclose(self.amplitudes, other.amplitudes, atol=atol, rtol=0.0)))

    def __repr__(self) -> str:
        amps = ", ".join(f"{a:.6g}" for a in self.amplitudes)
        return f"KetState([{amps}])"


def inner(bra: KetState, ket: KetState) -> complex:
    """<bra|ket>, conjugating the first argument."""
    if bra.space != ket.space:
        raise DimensionMismatch("inner product needs states over the same space")
    return complex(np.vdot(bra.amplitudes, ket.amplitudes))


def normalize(state: KetState) -> KetState:
    """Unit-norm copy of the state."""
    return KetState(state.space, state.amplitudes, normalize=True)


def tensor(a: KetState, b: KetState) -> KetState:
    """Product state on the product space, first factor varying slowest.

    Labels combine as "<a>,<b>".  The result is not renormalized: its
    norm is the product of the factor norms.
    """
    labels = tuple(f"{la},{lb}" for la in a.space.labels for lb in b.space.labels)
    amps = np.kron(a.amplitudes, b.amplitudes)
    return KetState(StateSpace(labels), amps, normalize=False)


@dataclass(frozen=True, eq=False)
class DiagonalObservable:
    """Real diagonal operator F over a StateSpace: F|n> = F(n)|n>."""

    space: StateSpace
    eigenvalues: np.ndarray

    def __init__(self, space: StateSpace, eigenvalues):
        arr = _frozen_array(eigenvalues, float)
        if arr.size != space.dimension:
            raise DimensionMismatch(
                f"observable has {arr.size} eigenvalues, space has dimension {space.dimension}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("eigenvalues must be finite")
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "eigenvalues", arr)

    @staticmethod
    def identity(space: StateSpace) -> DiagonalObservable:
        return DiagonalObservable(space, np.ones(space.dimension))

    @property
    def distinct_eigenvalues(self) -> tuple[float, ...]:
        """Distinct eigenvalues, largest first."""
        return tuple(float(v) for v in sorted(set(self.eigenvalues.tolist()), reverse=True))

    @property
    def is_projector(self) -> bool:
        return bool(np.all((self.eigenvalues == 0.0) | (self.eigenvalues == 1.0)))

    @property
    def spread(self) -> float:
        """Width of the spectrum: max eigenvalue minus min eigenvalue."""
        return float(self.eigenvalues.max() - self.eigenvalues.min())

    def eigenvalue(self, which: int | str) -> float:
        k = which if isinstance(which, int) else self.space.index(which)
        return float(self.eigenvalues[k])

    def __add__(self, other: DiagonalObservable) -> DiagonalObservable:
        if self.space != other.space:
            raise DimensionMismatch("observables live over different spaces")
        return DiagonalObservable(self.space, self.eigenvalues + other.eigenvalues)

    def __mul__(self, factor: float) -> DiagonalObservable:
        return DiagonalObservable(self.space, self.eigenvalues * float(factor))

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return (isinstance(other, DiagonalObservable)
                and self.space == other.space
                and bool(np.array_equal(self.eigenvalues, other.eigenvalues)))

    def __repr__(self) -> str:
        vals = ", ".join(f"{v:g}" for v in self.eigenvalues)
        return f"DiagonalObservable([{vals}])"


def expectation(state: KetState, observable: DiagonalObservable) -> float:
    """<state|F|state> for a unit-norm state: sum of F(n)|amp_n|^2."""
    if state.space != observable.space:
        raise DimensionMismatch("state and observable live over different spaces")
    weights = np.abs(state.amplitudes) ** 2
    return float(np.real(np.sum(observable.eigenvalues * weights)))


def fourier_basis(space: StateSpace) -> tuple[KetState, ...]:
    """A complete orthonormal basis with no zero components.

    Discrete-Fourier vectors z_k[n] = exp(-2*pi*i*k*n/N)/sqrt(N).  Useful
    as an alternative complete family of final states: every basis path
    contributes to every member.
    """
    n = space.dimension
    grid = np.arange(n)
    states = []
    for k in range(n):
        amps = np.exp(-2j * np.pi * k * grid / n) / np.sqrt(n)
        states.append(KetState(space, amps, normalize=False))
    return tuple(states)
