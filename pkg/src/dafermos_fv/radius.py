"""Information radius predictors.

Each predictor turns the K recovered candidates at an interface into an
admissible interval [center - radius, center + radius]. The ``*_rows``
variants work on a (n_interfaces, K) array and return ``(center, radius)``
arrays; the scalar entry points return :class:`AdmissibleInterval`.
"""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class AdmissibleInterval:
    center: float
    radius: float
    # exact endpoints when known, so that hull(u_l, u_r) keeps u_l and u_r
    # bit-for-bit instead of center -/+ radius after rounding
    lo: float = None
    hi: float = None

    def __post_init__(self):
        if not self.radius >= 0:
            raise ValueError(f"radius must be nonnegative, got {self.radius}")
        if self.lo is None:
            object.__setattr__(self, "lo", self.center - self.radius)
        if self.hi is None:
            object.__setattr__(self, "hi", self.center + self.radius)

    @classmethod
    def hull(cls, u_l, u_r):
        """conv(u_l, u_r), the interval a classical left/right pair maps to."""
        lo, hi = min(u_l, u_r), max(u_l, u_r)
        return cls(0.5 * (u_l + u_r), 0.5 * abs(u_r - u_l), lo, hi)

    @property
    def bounds(self):
        return self.lo, self.hi


def variance_rows(cands, weights=None):
    cands = np.asarray(cands, dtype=float)
    k = cands.shape[-1]
    if weights is None:
        center = np.mean(cands, axis=-1)
    else:
        weights = np.asarray(weights, dtype=float)
        wsum = np.sum(weights, axis=-1)
        if np.any(wsum <= 0) or np.any(weights < 0):
            raise ValueError("weights must be nonnegative with a positive sum")
        center = np.sum(weights * cands, axis=-1) / wsum
    dev = center[..., None] - cands
    radius = np.sqrt(np.sum(dev * dev, axis=-1)) / k
    return center, radius


def bounding_sphere_rows(cands):
    cands = np.asarray(cands, dtype=float)
    lo = np.min(cands, axis=-1)
    hi = np.max(cands, axis=-1)
    return 0.5 * (lo + hi), 0.5 * (hi - lo)


def surface_discard_rows(cands, k_discard):
    cands = np.asarray(cands, dtype=float)
    k = cands.shape[-1]
    if k_discard < 0 or k - k_discard < 2:
        raise ValueError(
            f"cannot discard {k_discard} of {k} candidates; at least 2 must remain"
        )
    if k_discard == 0:
        return bounding_sphere_rows(cands)
    srt = np.sort(cands, axis=-1)
    lead = srt.shape[:-1]
    lo = np.zeros(lead, dtype=np.intp)
    hi = np.full(lead, k - 1, dtype=np.intp)
    take = lambda idx: np.take_along_axis(srt, idx[..., None], axis=-1)[..., 0]
    for m in range(k, k - k_discard, -1):
        # survivors are the contiguous sorted block lo..hi of size m
        median = 0.5 * (take(lo + (m - 1) // 2) + take(lo + m // 2))
        d_min = median - take(lo)
        d_max = take(hi) - median
        drop_max = d_max >= d_min
        hi = np.where(drop_max, hi - 1, hi)
        lo = np.where(drop_max, lo, lo + 1)
    vmin, vmax = take(lo), take(hi)
    return 0.5 * (vmin + vmax), 0.5 * (vmax - vmin)


def variance_predictor(candidates, weights=None):
    """Weighted mean of the candidates with the spread of their average.

    radius = sqrt(sum_k (center - R_k)^2) / K
    """
    c, r = variance_rows(candidates, weights)
    return AdmissibleInterval(float(c), float(r))


def bounding_sphere_predictor(candidates):
    c, r = bounding_sphere_rows(candidates)
    return AdmissibleInterval(float(c), float(r))


def surface_discard_predictor(candidates, k_discard):
    """Bounding sphere after peeling ``k_discard`` surface candidates.

    Each round drops whichever extreme lies farther from the median of the
    current survivors (the maximum on a tie).
    """
    c, r = surface_discard_rows(candidates, k_discard)
    return AdmissibleInterval(float(c), float(r))


@dataclass(frozen=True)
class PredictorKind:
    kind: str
    k_discard: int = 0
    weights: tuple = None

    KINDS = ("variance", "bsphere", "bsphere-discard")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown predictor {self.kind!r}")
        if self.kind != "bsphere-discard" and self.k_discard:
            raise ValueError("k_discard only applies to bsphere-discard")

    @classmethod
    def parse(cls, text):
        """Parse ``variance``, ``bsphere`` or ``bsphere-discard:<k>``."""
        if isinstance(text, cls):
            return text
        text = str(text).strip()
        if text.startswith("bsphere-discard"):
            _, sep, k = text.partition(":")
            if not sep:
                raise ValueError("bsphere-discard needs a count, e.g. bsphere-discard:2")
            return cls("bsphere-discard", int(k))
        return cls(text)

    def __str__(self):
        if self.kind == "bsphere-discard":
            return f"bsphere-discard:{self.k_discard}"
        return self.kind

    def validate(self, k):
        if self.kind == "bsphere-discard" and k - self.k_discard < 2:
            raise ValueError(
                f"{self} leaves fewer than 2 of {k} candidates"
            )

    def __call__(self, cands):
        """Apply to a (..., K) candidate array; returns (center, radius)."""
        if self.kind == "variance":
            return variance_rows(cands, self.weights)
        if self.kind == "bsphere":
            return bounding_sphere_rows(cands)
        return surface_discard_rows(cands, self.k_discard)
