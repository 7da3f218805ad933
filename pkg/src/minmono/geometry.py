"""Exact rational 2-d geometry: halfplane regions clipped against grid cells.

Everything here is fractions.Fraction arithmetic; areas are exact, so the
classification of a grid cell as outside / boundary / interior of a region
(fraction 0, in (0,1), or 1) is unambiguous.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

__all__ = ["Region2D", "clip_area", "clip_fraction", "polygon_area", "rect_band_area"]

Point = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class Region2D:
    """Convex region {(u, v): p*u + q*v <= r for each halfplane (p, q, r)}."""

    halfplanes: tuple

    def __init__(self, halfplanes: Sequence[tuple]):
        hp = tuple(
            (Fraction(p), Fraction(q), Fraction(r)) for p, q, r in halfplanes
        )
        object.__setattr__(self, "halfplanes", hp)

    def contains(self, u, v) -> bool:
        u, v = Fraction(u), Fraction(v)
        return all(p * u + q * v <= r for p, q, r in self.halfplanes)


def polygon_area(points: Sequence[Point]) -> Fraction:
    """Shoelace area of a simple polygon with rational vertices."""
    if len(points) < 3:
        return Fraction(0)
    total = Fraction(0)
    for (x0, y0), (x1, y1) in zip(points, points[1:] + list(points[:1])):
        total += x0 * y1 - x1 * y0
    return abs(total) / 2


def _clip_halfplane(poly: list[Point], p: Fraction, q: Fraction, r: Fraction) -> list[Point]:
    """Sutherland-Hodgman step: keep the part of poly with p*u + q*v <= r."""
    if not poly:
        return []
    out: list[Point] = []
    prev = poly[-1]
    prev_val = p * prev[0] + q * prev[1] - r
    for cur in poly:
        cur_val = p * cur[0] + q * cur[1] - r
        if cur_val <= 0:
            if prev_val > 0:
                t = prev_val / (prev_val - cur_val)
                out.append(
                    (prev[0] + t * (cur[0] - prev[0]), prev[1] + t * (cur[1] - prev[1]))
                )
            out.append(cur)
        elif prev_val <= 0:
            t = prev_val / (prev_val - cur_val)
            out.append(
                (prev[0] + t * (cur[0] - prev[0]), prev[1] + t * (cur[1] - prev[1]))
            )
        prev, prev_val = cur, cur_val
    return out


def clip_area(region: Region2D, rect: tuple) -> Fraction:
    """Exact area of region intersected with the rectangle (u0, u1, v0, v1)."""
    u0, u1, v0, v1 = (Fraction(t) for t in rect)
    poly: list[Point] = [(u0, v0), (u1, v0), (u1, v1), (u0, v1)]
    for p, q, r in region.halfplanes:
        poly = _clip_halfplane(poly, p, q, r)
        if not poly:
            return Fraction(0)
    return polygon_area(poly)


def clip_fraction(region: Region2D, cell: tuple) -> Fraction:
    """Fraction in [0,1] of the axis-aligned cell (u0, u1, v0, v1) inside region."""
    u0, u1, v0, v1 = (Fraction(t) for t in cell)
    if u1 <= u0 or v1 <= v0:
        raise ValueError("degenerate cell")
    return clip_area(region, cell) / ((u1 - u0) * (v1 - v0))


def rect_band_area(x0, x1, y0, y1, lo, hi) -> Fraction:
    """Area of {(u,v) in [x0,x1] x [y0,y1] : lo <= u+v <= hi}, closed form.

    Uses F(t) = area of the rectangle below the line u+v = t, which is the
    full-plane corner triangle minus the triangles cut off at each rectangle
    corner; equal to the polygon-clipping result but much cheaper.
    """
    x0, x1, y0, y1, lo, hi = (Fraction(t) for t in (x0, x1, y0, y1, lo, hi))
    if x1 <= x0 or y1 <= y0 or hi <= lo:
        return Fraction(0)

    def tri(s):
        return s * s / 2 if s > 0 else Fraction(0)

    def below(t):
        # area of {u + v <= t} within the rectangle
        return (
            tri(t - x0 - y0) - tri(t - x1 - y0) - tri(t - x0 - y1) + tri(t - x1 - y1)
        )

    return below(hi) - below(lo)
