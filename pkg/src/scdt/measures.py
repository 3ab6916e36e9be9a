"""Finite positive and signed measures on the extended real line.

Measures are finite lists of weighted atoms (locations sorted strictly
increasing, ``+-inf`` locations allowed).  Sampled signals convert to signed
measures by midpoint binning; atomless reference measures are given by
continuous strictly-increasing piecewise-linear CDFs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Tuple, Union

import numpy as np

from .errors import InvalidReferenceError, RangeError, SingularityError
from .steps import NEG_INF, POS_INF, ArrayLike, PiecewiseLinearMap, StepFunction

__all__ = [
    "DiscreteMeasure",
    "SignedMeasure",
    "GridDensity",
    "ReferenceMeasure",
    "cdf",
    "measure_from_density",
    "jordan_parts",
    "pushforward",
    "rebin",
    "measure_quantiles",
]

#: Relative slack allowed between a stored total mass and the sum of weights.
MASS_RTOL = 1e-12


@dataclass(frozen=True, eq=False)
class DiscreteMeasure:
    """A finite positive measure given by sorted weighted atoms.

    The zero measure is the empty atom list.  Atoms at ``+-inf`` are
    representable (the extended-real theory needs them) but are rejected by
    grid re-binning and by second-moment metrics.
    """

    locations: np.ndarray
    weights: np.ndarray
    total_mass: Optional[float] = None

    def __post_init__(self) -> None:
        locs = np.asarray(self.locations, dtype=float)
        w = np.asarray(self.weights, dtype=float)
        if locs.ndim != 1 or w.ndim != 1 or locs.size != w.size:
            raise ValueError("locations and weights must be 1-D arrays of equal length")
        if np.any(np.isnan(locs)) or np.any(np.isnan(w)):
            raise ValueError("atoms must not contain NaN")
        if locs.size > 1 and not np.all(locs[1:] > locs[:-1]):
            raise ValueError("atom locations must be strictly increasing (merge duplicates first)")
        if np.any(w <= 0) or np.any(~np.isfinite(w)):
            raise ValueError("atom weights must be finite and positive")
        computed = float(np.cumsum(w)[-1]) if w.size else 0.0
        total = computed if self.total_mass is None else float(self.total_mass)
        if abs(total - computed) > MASS_RTOL * max(abs(total), abs(computed), 1.0):
            raise ValueError(
                f"total_mass {total} does not match the sum of weights {computed}"
            )
        locs.setflags(write=False)
        w.setflags(write=False)
        object.__setattr__(self, "locations", locs)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "total_mass", total)

    @classmethod
    def from_atoms(cls, locations: ArrayLike, weights: ArrayLike) -> "DiscreteMeasure":
        """Build a measure from unsorted atoms: sorts, merges duplicate
        locations by summing weights, and drops zero-weight atoms."""
        locs = np.asarray(locations, dtype=float)
        w = np.asarray(weights, dtype=float)
        if locs.shape != w.shape or locs.ndim != 1:
            raise ValueError("locations and weights must be 1-D arrays of equal length")
        if np.any(w < 0):
            raise ValueError("atom weights must be nonnegative")
        keep = w > 0
        locs, w = locs[keep], w[keep]
        uniq, inverse = np.unique(locs, return_inverse=True)
        merged = np.zeros(uniq.size)
        np.add.at(merged, inverse, w)
        return cls(uniq, merged)

    @classmethod
    def zero(cls) -> "DiscreteMeasure":
        return cls(np.empty(0), np.empty(0))

    @property
    def is_zero(self) -> bool:
        return self.weights.size == 0

    def scaled(self, factor: float) -> "DiscreteMeasure":
        """The measure with every weight multiplied by ``factor > 0``."""
        if factor <= 0 or not np.isfinite(factor):
            raise ValueError("scale factor must be finite and positive")
        if self.is_zero:
            return DiscreteMeasure.zero()
        return DiscreteMeasure(self.locations, self.weights * factor)


@dataclass(frozen=True, eq=False)
class SignedMeasure:
    """A signed measure stored as its Jordan decomposition: a pair of
    mutually singular positive measures (disjoint atom supports)."""

    positive_part: DiscreteMeasure
    negative_part: DiscreteMeasure

    def __post_init__(self) -> None:
        overlap = np.intersect1d(
            self.positive_part.locations, self.negative_part.locations
        )
        if overlap.size:
            raise SingularityError(
                f"positive and negative parts share {overlap.size} atom location(s), "
                f"e.g. {overlap[0]}"
            )

    @classmethod
    def zero(cls) -> "SignedMeasure":
        return cls(DiscreteMeasure.zero(), DiscreteMeasure.zero())

    @property
    def total_variation(self) -> float:
        """Total variation norm: positive mass plus negative mass."""
        return self.positive_part.total_mass + self.negative_part.total_mass


@dataclass(frozen=True, eq=False)
class GridDensity:
    """A signed piecewise-constant density on ``N`` equal bins of
    ``[t0, t1]``; ``samples[i]`` is the density value on bin ``i``."""

    t0: float
    t1: float
    samples: np.ndarray

    def __post_init__(self) -> None:
        t0, t1 = float(self.t0), float(self.t1)
        if not (np.isfinite(t0) and np.isfinite(t1) and t0 < t1):
            raise ValueError("need finite t0 < t1")
        samples = np.asarray(self.samples, dtype=float)
        if samples.ndim != 1 or samples.size < 1:
            raise ValueError("samples must be a 1-D array with at least one bin")
        if not np.all(np.isfinite(samples)):
            raise ValueError("density samples must be finite")
        samples.setflags(write=False)
        object.__setattr__(self, "t0", t0)
        object.__setattr__(self, "t1", t1)
        object.__setattr__(self, "samples", samples)

    @property
    def n_bins(self) -> int:
        return self.samples.size

    @property
    def bin_width(self) -> float:
        return (self.t1 - self.t0) / self.samples.size

    def bin_centers(self) -> np.ndarray:
        return self.t0 + (np.arange(self.samples.size) + 0.5) * self.bin_width


@dataclass(frozen=True, eq=False)
class ReferenceMeasure:
    """An atomless positive measure with a continuous piecewise-linear CDF,
    strictly increasing on its support ``[xs[0], xs[-1]]`` and constant
    outside.  ``ys`` are the CDF knot values: ``ys[0] = 0`` and
    ``ys[-1]`` equals the total mass."""

    xs: np.ndarray
    ys: np.ndarray
    _inverse: PiecewiseLinearMap = field(init=False, repr=False)

    def __post_init__(self) -> None:
        try:
            xs = np.asarray(self.xs, dtype=float)
            ys = np.asarray(self.ys, dtype=float)
            if xs.ndim != 1 or ys.ndim != 1 or xs.size != ys.size or xs.size < 2:
                raise InvalidReferenceError("need matching 1-D knot arrays with >= 2 knots")
            if not (np.all(np.isfinite(xs)) and np.all(np.isfinite(ys))):
                raise InvalidReferenceError("reference CDF knots must be finite")
            if not np.all(xs[1:] > xs[:-1]):
                raise InvalidReferenceError("reference CDF knot xs must be strictly increasing")
            if not np.all(ys[1:] > ys[:-1]):
                raise InvalidReferenceError(
                    "reference CDF must be strictly increasing on its support "
                    "(an atomless measure admits no flat or jumping CDF)"
                )
            if ys[0] != 0:
                raise InvalidReferenceError("reference CDF must start at 0")
        except ValueError as exc:  # NaN comparisons and the like
            raise InvalidReferenceError(str(exc)) from exc
        xs.setflags(write=False)
        ys.setflags(write=False)
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "ys", ys)
        object.__setattr__(self, "_inverse", PiecewiseLinearMap(ys, xs))

    @classmethod
    def uniform(cls, a: float = 0.0, b: float = 1.0, mass: float = 1.0) -> "ReferenceMeasure":
        """The uniform measure of total ``mass`` on ``[a, b]``."""
        if not (np.isfinite(a) and np.isfinite(b) and a < b):
            raise InvalidReferenceError("need finite a < b")
        if not (np.isfinite(mass) and mass > 0):
            raise InvalidReferenceError("mass must be finite and positive")
        return cls(np.array([a, b]), np.array([0.0, mass]))

    @property
    def total_mass(self) -> float:
        return float(self.ys[-1])

    @property
    def support(self) -> Tuple[float, float]:
        return float(self.xs[0]), float(self.xs[-1])

    def cdf_eval(self, x: ArrayLike) -> Union[float, np.ndarray]:
        """CDF value at ``x``: 0 left of the support, total mass right of it."""
        xa = np.asarray(x, dtype=float)
        if np.any(np.isnan(xa)):
            raise ValueError("x must not contain NaN")
        clipped = np.clip(xa, self.xs[0], self.xs[-1])
        fwd = PiecewiseLinearMap(self.xs, self.ys)
        out = fwd(clipped)
        if np.ndim(x) == 0:
            return float(out)
        return out

    def quantile(self, p: ArrayLike) -> Union[float, np.ndarray]:
        """Exact inverse of the normalized CDF at ``p`` in ``[0, 1]``."""
        pa = np.asarray(p, dtype=float)
        if np.any(np.isnan(pa)) or np.any(pa < 0) or np.any(pa > 1):
            raise ValueError("quantile levels must lie in [0, 1]")
        out = self._inverse(pa * self.total_mass)
        if np.ndim(p) == 0:
            return float(out)
        return out


def cdf(m: DiscreteMeasure) -> StepFunction:
    """The right-continuous CDF ``F(x) = m([-inf, x])`` as a step function.

    An atom at ``-inf`` lifts the head value; an atom at ``+inf`` appears only
    in the value at the point ``+inf``, so ``F(+inf)`` always equals the total
    mass.
    """
    locs, w = m.locations, m.weights
    csum = np.concatenate(([0.0], np.cumsum(w)))
    finite = np.isfinite(locs)
    breakpoints = locs[finite]
    # Value right of finite atom i is the cumulative sum through i; the head
    # value is the cumulative sum before the first finite atom (i.e. the
    # weight of a -inf atom, if any).
    idx = np.flatnonzero(finite)
    head_count = idx[0] if idx.size else locs.size - int(locs.size and locs[-1] == POS_INF)
    values = np.concatenate(([csum[head_count]], csum[idx + 1]))
    return StepFunction(
        breakpoints,
        values,
        value_at_pos_inf=max(m.total_mass, float(values[-1])),
        monotone=True,
    )


def measure_from_density(d: GridDensity) -> SignedMeasure:
    """Convert a sampled density to a signed measure by midpoint binning:
    bin ``i`` contributes an atom at its center with weight
    ``|samples[i]| * bin_width`` to the part matching its sign; zero bins are
    dropped, so the two parts are mutually singular by construction."""
    centers = d.bin_centers()
    w = d.samples * d.bin_width
    pos = d.samples > 0
    neg = d.samples < 0
    positive = (
        DiscreteMeasure(centers[pos], w[pos]) if np.any(pos) else DiscreteMeasure.zero()
    )
    negative = (
        DiscreteMeasure(centers[neg], -w[neg]) if np.any(neg) else DiscreteMeasure.zero()
    )
    return SignedMeasure(positive, negative)


def jordan_parts(s: SignedMeasure) -> Tuple[DiscreteMeasure, DiscreteMeasure]:
    """The mutually singular pair ``(s+, s-)`` exactly as stored; raises
    :class:`SingularityError` if the supports overlap."""
    overlap = np.intersect1d(s.positive_part.locations, s.negative_part.locations)
    if overlap.size:
        raise SingularityError("parts share atom locations; not a Jordan decomposition")
    return s.positive_part, s.negative_part


def pushforward(samples: ArrayLike, mass: float) -> DiscreteMeasure:
    """The empirical push-forward of the normalized reference through a
    non-decreasing quantile-sampled map: one atom of weight ``mass / M`` per
    sample, duplicates merged exactly.  ``mass = 0`` gives the zero measure."""
    arr = np.asarray(samples, dtype=float)
    if arr.ndim != 1 or arr.size < 1:
        raise ValueError("samples must be a non-empty 1-D array")
    if np.any(np.isnan(arr)):
        raise ValueError("samples must not contain NaN")
    if arr.size > 1 and np.any(arr[1:] < arr[:-1]):
        raise ValueError("samples must be non-decreasing")
    mass = float(mass)
    if not mass >= 0:
        raise ValueError("mass must be nonnegative")
    if mass == 0:
        return DiscreteMeasure.zero()
    uniq, counts = np.unique(arr, return_counts=True)
    per_sample = mass / arr.size
    return DiscreteMeasure(uniq, counts * per_sample, total_mass=mass)


def rebin(m: SignedMeasure, t0: float, t1: float, n_bins: int) -> GridDensity:
    """Deposit a signed measure's atoms on ``n_bins`` equal bins of
    ``[t0, t1]`` and return the resulting density (positive minus negative
    mass per bin, divided by the bin width).

    Raises :class:`RangeError` for atoms outside the grid, including
    infinite locations.
    """
    t0, t1 = float(t0), float(t1)
    n_bins = int(n_bins)
    if not (np.isfinite(t0) and np.isfinite(t1) and t0 < t1 and n_bins >= 1):
        raise ValueError("need finite t0 < t1 and n_bins >= 1")
    width = (t1 - t0) / n_bins

    def deposit(part: DiscreteMeasure) -> np.ndarray:
        if part.is_zero:
            return np.zeros(n_bins)
        locs = part.locations
        if not np.all(np.isfinite(locs)):
            raise RangeError("cannot rebin atoms at +-inf onto a finite grid")
        if np.any(locs < t0) or np.any(locs > t1):
            raise RangeError(
                f"atoms outside the grid [{t0}, {t1}] cannot be rebinned"
            )
        idx = np.minimum(((locs - t0) / width).astype(int), n_bins - 1)
        return np.bincount(idx, weights=part.weights, minlength=n_bins)

    density = (deposit(m.positive_part) - deposit(m.negative_part)) / width
    return GridDensity(t0, t1, density)


def measure_quantiles(m: DiscreteMeasure, q: np.ndarray) -> np.ndarray:
    """Values of the generalized inverse CDF of the *normalized* measure at
    quantile levels ``q`` in ``(0, 1)``: the atom location where the
    cumulative weight first exceeds ``q * total``.

    This one routine backs both the forward transforms and the quantile-based
    distances, so the two agree bit for bit.
    """
    if m.is_zero:
        raise ValueError("the zero measure has no quantile function")
    qa = np.asarray(q, dtype=float)
    csum = np.cumsum(m.weights)
    idx = np.searchsorted(csum, qa * csum[-1], side="right")
    return m.locations[np.minimum(idx, m.locations.size - 1)]
