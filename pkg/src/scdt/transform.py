"""Forward and inverse transport transforms of probability, positive, and
signed measures relative to an atomless reference.

A probability measure is represented by its generalized inverse CDF sampled
at midpoint quantile levels of the reference; a positive measure adds a total
mass channel; a signed measure transforms part-wise through its Jordan
decomposition into a 4-tuple (plus samples, plus mass, minus samples, minus
mass).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import SingularityError, SingularityWarning
from .measures import (
    DiscreteMeasure,
    ReferenceMeasure,
    SignedMeasure,
    jordan_parts,
    measure_quantiles,
    pushforward,
)

__all__ = [
    "TransformConfig",
    "CdtResult",
    "ScdtResult",
    "cdt_probability",
    "cdt_positive",
    "scdt_forward",
    "cdt_inverse",
    "scdt_inverse",
]

#: Relative tolerance on the total mass of a claimed probability measure.
PROBABILITY_RTOL = 1e-9

#: Distinct supports closer than this (absolute gap) trigger a warning that
#: mutual singularity is numerically borderline.
COLLISION_WARN_GAP = 1e-9


@dataclass(frozen=True, eq=False)
class TransformConfig:
    """Discretization of the transform: the reference measure and the number
    of midpoint quantile levels ``q_j = (j - 1/2) / M``.

    The midpoint grid stays strictly inside ``(0, 1)``, which keeps every
    sample finite for measures of bounded support (the endpoint levels 0 and 1
    are where quantile functions escape to ``+-inf``).
    """

    reference: ReferenceMeasure = field(default_factory=ReferenceMeasure.uniform)
    n_quantiles: int = 1024
    quantiles: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if not isinstance(self.reference, ReferenceMeasure):
            raise TypeError("reference must be a ReferenceMeasure")
        m = int(self.n_quantiles)
        if m < 2:
            raise ValueError("n_quantiles must be at least 2")
        q = (np.arange(m) + 0.5) / m
        q.setflags(write=False)
        object.__setattr__(self, "n_quantiles", m)
        object.__setattr__(self, "quantiles", q)


@dataclass(frozen=True, eq=False)
class CdtResult:
    """Transform of a finite positive measure: quantile samples of the
    normalized measure plus a total mass channel.

    The zero measure is encoded by the convention (all-zero samples, mass 0);
    the mass field alone disambiguates it from a unit mass concentrated at 0.
    """

    samples: np.ndarray
    mass: float

    def __post_init__(self) -> None:
        samples = np.asarray(self.samples, dtype=float)
        if samples.ndim != 1 or samples.size < 2:
            raise ValueError("samples must be a 1-D array with at least 2 entries")
        if np.any(np.isnan(samples)):
            raise ValueError("samples must not contain NaN")
        if np.any(samples[1:] < samples[:-1]):
            raise ValueError("samples must be non-decreasing")
        mass = float(self.mass)
        if not (np.isfinite(mass) and mass >= 0):
            raise ValueError("mass must be finite and nonnegative")
        if mass == 0 and np.any(samples != 0):
            raise ValueError("the zero measure is encoded as all-zero samples with mass 0")
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "mass", mass)

    @property
    def is_zero(self) -> bool:
        return self.mass == 0

    @classmethod
    def zero(cls, n_quantiles: int) -> "CdtResult":
        return cls(np.zeros(n_quantiles), 0.0)


@dataclass(frozen=True, eq=False)
class ScdtResult:
    """Transform of a signed measure: the pair of positive-part and
    negative-part transforms on a shared quantile grid."""

    plus: CdtResult
    minus: CdtResult

    def __post_init__(self) -> None:
        if self.plus.samples.size != self.minus.samples.size:
            raise ValueError("plus and minus parts must share one quantile grid")

    @property
    def n_quantiles(self) -> int:
        return self.plus.samples.size


def cdt_probability(nu: DiscreteMeasure, cfg: TransformConfig) -> np.ndarray:
    """Quantile samples of a probability measure: the generalized inverse CDF
    evaluated at the reference's midpoint quantile levels."""
    if abs(nu.total_mass - 1.0) > PROBABILITY_RTOL:
        raise ValueError(
            f"cdt_probability requires a probability measure, got mass {nu.total_mass}"
        )
    return measure_quantiles(nu, cfg.quantiles)


def cdt_positive(nu: DiscreteMeasure, cfg: TransformConfig) -> CdtResult:
    """Transform of a finite positive measure: normalized quantile samples and
    the total mass; the zero measure maps to the (0, 0) convention."""
    if nu.is_zero:
        return CdtResult.zero(cfg.n_quantiles)
    return CdtResult(measure_quantiles(nu, cfg.quantiles), nu.total_mass)


def scdt_forward(s: SignedMeasure, cfg: TransformConfig) -> ScdtResult:
    """Part-wise transform of a signed measure through its Jordan
    decomposition."""
    plus, minus = jordan_parts(s)
    return ScdtResult(cdt_positive(plus, cfg), cdt_positive(minus, cfg))


def cdt_inverse(c: CdtResult, cfg: TransformConfig) -> DiscreteMeasure:
    """Invert a positive-measure transform by pushing the normalized reference
    forward through the sampled quantile function: one atom of weight
    ``mass / M`` per sample, duplicates merged."""
    if c.samples.size != cfg.n_quantiles:
        raise ValueError(
            f"transform carries {c.samples.size} samples but the config expects "
            f"{cfg.n_quantiles}"
        )
    if c.is_zero:
        return DiscreteMeasure.zero()
    return pushforward(c.samples, c.mass)


def scdt_inverse(t: ScdtResult, cfg: TransformConfig) -> SignedMeasure:
    """Invert a signed-measure transform part-wise.

    The two reconstructed parts must have disjoint supports (mutual
    singularity); an exact support collision raises
    :class:`SingularityError`, and distinct supports closer than
    ``1e-9`` emit a :class:`SingularityWarning`.
    """
    plus = cdt_inverse(t.plus, cfg)
    minus = cdt_inverse(t.minus, cfg)
    if not plus.is_zero and not minus.is_zero:
        overlap = np.intersect1d(plus.locations, minus.locations)
        if overlap.size:
            raise SingularityError(
                f"inverse parts collide at {overlap.size} location(s), e.g. "
                f"{overlap[0]}; the tuple does not describe a signed measure"
            )
        gap = _min_gap(plus.locations, minus.locations)
        if gap < COLLISION_WARN_GAP:
            warnings.warn(
                f"positive and negative supports are only {gap:.3g} apart; "
                "mutual singularity is numerically borderline",
                SingularityWarning,
                stacklevel=2,
            )
    return SignedMeasure(plus, minus)


def _min_gap(a: np.ndarray, b: np.ndarray) -> float:
    """Smallest distance between entries of two sorted arrays with no exact
    common entries."""
    a = a[np.isfinite(a)]
    b = b[np.isfinite(b)]
    if not a.size or not b.size:
        return np.inf
    idx = np.searchsorted(b, a)
    best = np.inf
    right = idx < b.size
    if np.any(right):
        best = min(best, float(np.min(b[idx[right]] - a[right])))
    left = idx > 0
    if np.any(left):
        best = min(best, float(np.min(a[left] - b[idx[left] - 1])))
    return best
