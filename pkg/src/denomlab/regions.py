"""Regions A in R^n and shifted/scaled query sets x + delta*A, with exact membership.

Grammar (the stable CLI syntax):

    interval:lo,hi[:oo|oc|co|cc]
    box:lo1,hi1;lo2,hi2;...[:flags]          (flags apply to every axis)
    ball:r[@c1,c2,...]                        (always closed; exact squared norms)

Default openness is [lo, hi): closed low, open high.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exactnum import rat_parse, rat_str

_FLAG_CODES = {"oo": (True, True), "oc": (True, False), "co": (False, True), "cc": (False, False)}
_CODE_OF = {v: k for k, v in _FLAG_CODES.items()}


@dataclass(frozen=True)
class AxisBounds:
    lo: Fraction
    hi: Fraction
    lo_open: bool = False
    hi_open: bool = True  # default half-open [lo, hi)

    def __post_init__(self):
        if self.lo >= self.hi:
            raise ValueError("empty interior")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, v: Fraction) -> bool:
        if self.lo_open:
            if v <= self.lo:
                return False
        elif v < self.lo:
            return False
        if self.hi_open:
            return v < self.hi
        return v <= self.hi


@dataclass(frozen=True)
class RegionSpec:
    """The set A: an interval, an axis-aligned box, or a norm ball."""

    kind: str  # interval | box | ball
    dim: int
    axes: tuple[AxisBounds, ...] = ()
    radius: Fraction | None = None
    center: tuple[Fraction, ...] = ()
    norm_id: str = "euclidean"  # euclidean | sup | l1   (balls only)

    def __post_init__(self):
        if self.kind in ("interval", "box"):
            if len(self.axes) != self.dim:
                raise ValueError("axis count does not match dim")
        elif self.kind == "ball":
            if self.radius is None or self.radius <= 0:
                raise ValueError("ball radius must be positive")
            if len(self.center) != self.dim:
                raise ValueError("center length does not match dim")
            if self.norm_id not in ("euclidean", "sup", "l1"):
                raise ValueError(f"unknown norm {self.norm_id!r}")
        else:
            raise ValueError(f"unknown region kind {self.kind!r}")

    def min_width(self) -> Fraction:
        """Smallest axis width; 2r for balls."""
        if self.kind == "ball":
            return 2 * self.radius
        return min(a.width for a in self.axes)

    def contains(self, u: tuple[Fraction, ...]) -> bool:
        """Exact membership of u in A itself (unshifted, unscaled)."""
        if len(u) != self.dim:
            raise ValueError("dimension mismatch")
        if self.kind in ("interval", "box"):
            return all(a.contains(v) for a, v in zip(self.axes, u))
        d = [v - c for v, c in zip(u, self.center)]
        r = self.radius
        if self.norm_id == "sup":
            return all(abs(di) <= r for di in d)
        if self.norm_id == "l1":
            return sum(abs(di) for di in d) <= r
        return sum(di * di for di in d) <= r * r

    def bounding_axes(self) -> tuple[AxisBounds, ...]:
        if self.kind in ("interval", "box"):
            return self.axes
        # any standard norm ball fits in the closed sup-norm box of the same radius
        return tuple(
            AxisBounds(c - self.radius, c + self.radius, lo_open=False, hi_open=False)
            for c in self.center
        )


@dataclass(frozen=True)
class QueryRegion:
    """The query set x + delta * A."""

    base: RegionSpec
    x: tuple[Fraction, ...]
    delta: Fraction

    def __post_init__(self):
        if self.delta <= 0:
            raise ValueError("delta must be positive")
        if len(self.x) != self.base.dim:
            raise ValueError("shift length does not match region dim")

    @property
    def dim(self) -> int:
        return self.base.dim


def region_membership(r: QueryRegion, pt: tuple[Fraction, ...]) -> bool:
    """Exact test pt in x + delta*A."""
    if len(pt) != r.dim:
        raise ValueError("dimension mismatch")
    u = tuple((p - xi) / r.delta for p, xi in zip(pt, r.x))
    return r.base.contains(u)


def region_bounding_box(r: QueryRegion) -> tuple[AxisBounds, ...]:
    """Smallest axis-aligned box containing x + delta*A, openness preserved."""
    return tuple(
        AxisBounds(xi + r.delta * a.lo, xi + r.delta * a.hi, a.lo_open, a.hi_open)
        for xi, a in zip(r.x, r.base.bounding_axes())
    )


def region_parse(text: str, dim: int | None = None) -> RegionSpec:
    """Parse the region grammar; see the module docstring."""
    parts = text.strip().split(":")
    if not parts or parts[0] not in ("interval", "box", "ball"):
        raise ValueError(f"unknown region kind in {text!r}")
    kind = parts[0]
    if kind == "interval":
        if len(parts) not in (2, 3):
            raise ValueError(f"bad interval spec {text!r}")
        lo_s, hi_s = _split2(parts[1], ",", text)
        lo_open, hi_open = _flags(parts[2] if len(parts) == 3 else "co", text)
        return RegionSpec(
            kind="interval", dim=1,
            axes=(AxisBounds(rat_parse(lo_s), rat_parse(hi_s), lo_open, hi_open),),
        )
    if kind == "box":
        if len(parts) not in (2, 3):
            raise ValueError(f"bad box spec {text!r}")
        lo_open, hi_open = _flags(parts[2] if len(parts) == 3 else "co", text)
        axes = []
        for chunk in parts[1].split(";"):
            lo_s, hi_s = _split2(chunk, ",", text)
            axes.append(AxisBounds(rat_parse(lo_s), rat_parse(hi_s), lo_open, hi_open))
        return RegionSpec(kind="box", dim=len(axes), axes=tuple(axes))
    # ball
    if len(parts) != 2:
        raise ValueError(f"bad ball spec {text!r}")
    body = parts[1]
    if "@" in body:
        r_s, c_s = body.split("@", 1)
        center = tuple(rat_parse(c) for c in c_s.split(","))
    else:
        r_s = body
        center = tuple(Fraction(0) for _ in range(dim or 1))
    return RegionSpec(kind="ball", dim=len(center), radius=rat_parse(r_s), center=center)


def region_serialize(spec: RegionSpec) -> str:
    """Inverse of region_parse (round-trips exactly)."""
    if spec.kind in ("interval", "box"):
        chunks = ";".join(f"{rat_str(a.lo)},{rat_str(a.hi)}" for a in spec.axes)
        codes = {_CODE_OF[(a.lo_open, a.hi_open)] for a in spec.axes}
        if len(codes) != 1:
            raise ValueError("mixed per-axis openness cannot be serialized")
        body = chunks if spec.kind == "box" else chunks
        return f"{spec.kind}:{body}:{codes.pop()}"
    center = ",".join(rat_str(c) for c in spec.center)
    return f"ball:{rat_str(spec.radius)}@{center}"


def unit_box(n: int) -> RegionSpec:
    """[0,1)^n, the default sampling and region box."""
    kind = "interval" if n == 1 else "box"
    return RegionSpec(kind=kind, dim=n,
                      axes=tuple(AxisBounds(Fraction(0), Fraction(1)) for _ in range(n)))


def centered_box(n: int, open_faces: bool = True) -> RegionSpec:
    """(-1/2, 1/2)^n (open by default)."""
    kind = "interval" if n == 1 else "box"
    h = Fraction(1, 2)
    return RegionSpec(kind=kind, dim=n,
                      axes=tuple(AxisBounds(-h, h, open_faces, open_faces) for _ in range(n)))


def _split2(chunk: str, sep: str, text: str) -> tuple[str, str]:
    bits = chunk.split(sep)
    if len(bits) != 2:
        raise ValueError(f"expected 'lo{sep}hi' in {text!r}")
    return bits[0], bits[1]


def _flags(code: str, text: str) -> tuple[bool, bool]:
    try:
        return _FLAG_CODES[code]
    except KeyError:
        raise ValueError(f"bad openness flags {code!r} in {text!r}") from None
