"""Threshold arithmetic shared by the finders.

All degree/size thresholds are kept as exact rationals and compared directly
against integer counts, so scaled desk runs never hit float boundary noise.
The one irrational ingredient, k^(7/4), is replaced by its exact integer
ceiling (the smallest t with t^4 >= k^7), which only strengthens the
requirements it appears in.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

__all__ = ["ceil_k74", "FinderParams"]


def ceil_k74(k: int) -> int:
    """Smallest integer t with t**4 >= k**7."""
    if k < 0:
        raise ValueError("k must be non-negative")
    target = k**7
    t = round(k**1.75)
    while t**4 < target:
        t += 1
    while t > 0 and (t - 1) ** 4 >= target:
        t -= 1
    return t


@dataclass(frozen=True)
class FinderParams:
    """Degree/size thresholds for a target order k, optionally rescaled.

    ``scale`` multiplies every threshold coherently; 1 reproduces the source
    constants, smaller values allow desk-size experiments where only
    soundness (never the success guarantee) is preserved.
    """

    k: int
    scale: Fraction = Fraction(1)

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be positive")
        if not isinstance(self.scale, Fraction):
            object.__setattr__(self, "scale", Fraction(self.scale))
        if self.scale <= 0:
            raise ValueError("scale must be positive")

    @property
    def paper_faithful(self) -> bool:
        return self.scale == 1

    @property
    def k74(self) -> int:
        return ceil_k74(self.k)

    @property
    def slack(self) -> Fraction:
        """Degree window half-width / additive slack term (scaled k^(7/4))."""
        return self.scale * self.k74

    @property
    def window_width(self) -> int:
        return max(1, math.ceil(self.slack))

    @property
    def peel_threshold(self) -> Fraction:
        """Out-degree peel bound: k^2 + 12 k^(7/4), scaled."""
        return self.scale * (self.k**2 + 12 * self.k74)

    @property
    def min_out_degree(self) -> Fraction:
        """Host minimum out-degree required at scale 1: 2k^2 + 147 k^(7/4)."""
        return self.scale * (2 * self.k**2 + 147 * self.k74)

    @property
    def balanced_min_size(self) -> Fraction:
        """Smallest size admitting a balanced set (the alpha >= 1 point)."""
        return self.scale * (2 * self.k**2 + 24 * self.k74)

    def alpha_for(self, size: int) -> Fraction:
        """Exact alpha solving size = scale * (2 a k^2 + (20 a + 4) k^(7/4))."""
        return (Fraction(size) / self.scale - 4 * self.k74) / (
            2 * self.k**2 + 20 * self.k74
        )

    def deg_floor(self, alpha: Union[Fraction, int]) -> Fraction:
        """In-degree floor for balanced-set candidates: alpha k^2 + 2 k^(7/4)."""
        return self.scale * (alpha * self.k**2 + 2 * self.k74)

    @property
    def tt3_min_size(self) -> Fraction:
        """Transitive-subdivision size gate: 150 k^2, scaled."""
        return self.scale * 150 * self.k**2

    @property
    def aux_threshold(self) -> Fraction:
        """Out-neighbourhood symmetric-difference threshold: 2 k^2, scaled."""
        return self.scale * 2 * self.k**2

    @property
    def onesub_min_size(self) -> float:
        """1-subdivision size gate: 1e7 k^2 ln^3 k, scaled (float: ln is
        transcendental; the gate is only an admission check)."""
        if self.k < 2:
            return 0.0
        return float(self.scale) * 1e7 * self.k**2 * math.log(self.k) ** 3

    def rescaled(self, k: int) -> "FinderParams":
        return FinderParams(k=k, scale=self.scale)
