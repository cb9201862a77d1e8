"""Progression filters on series exponents.

``huff`` keeps the coefficients whose exponent lies in one residue class
and zeroes the rest, without renumbering.  ``deflate`` renumbers q^m -> q
once every surviving exponent is a multiple of m.  ``extract_progression``
fuses the two with a shift, picking out coefficient(m*n + r) as the new
coefficient of q^n.
"""

from __future__ import annotations

from dataclasses import dataclass

from .series import INF, Series


class OffStride(ValueError):
    """Deflation hit a nonzero coefficient off the required stride."""


@dataclass(frozen=True)
class HuffSpec:
    """Residue class of exponents to keep: those congruent to residue mod modulus."""

    modulus: int
    residue: int

    def __post_init__(self):
        if not isinstance(self.modulus, int) or self.modulus < 1:
            raise ValueError(f"modulus {self.modulus!r} must be a positive integer")
        if not isinstance(self.residue, int) or not 0 <= self.residue < self.modulus:
            raise ValueError(f"residue {self.residue!r} must lie in [0, {self.modulus})")


MOD3 = HuffSpec(3, 0)


def huff(series, spec=MOD3):
    """Zero out coefficients whose exponent is outside the residue class."""
    if series.is_zero:
        return series
    m, r = spec.modulus, spec.residue
    lead = series.lead
    out = [c if (lead + i) % m == r else 0 for i, c in enumerate(series.coeffs)]
    return Series(lead, out, series.valid_to)


def deflate(series, m):
    """Substitute q^m -> q; every nonzero exponent must be a multiple of m."""
    if not isinstance(m, int) or m < 1:
        raise ValueError(f"stride {m!r} must be a positive integer")
    valid = INF if series.valid_to == INF else series.valid_to // m
    if series.is_zero:
        return Series(0, (), valid)
    lead = series.lead
    for i, c in enumerate(series.coeffs):
        if c and (lead + i) % m:
            raise OffStride(f"nonzero coefficient at exponent {lead + i} is off stride {m}")
    return Series(lead // m, series.coeffs[::m], valid)


def extract_progression(series, m, r):
    """Series of coefficient(m*n + r) as the coefficient of q^n."""
    if not isinstance(m, int) or m < 1:
        raise ValueError(f"stride {m!r} must be a positive integer")
    if not isinstance(r, int) or not 0 <= r < m:
        raise ValueError(f"offset {r!r} must lie in [0, {m})")
    valid = INF if series.valid_to == INF else (series.valid_to - r) // m
    if series.is_zero:
        return Series(0, (), valid)
    first = -((r - series.lead) // m)
    start = m * first + r - series.lead
    return Series(first, series.coeffs[start::m], valid)
