"""Exact piecewise-linear homeomorphisms of [0, 1] and infinite-height
certificates for their cyclic groups.

All arithmetic is over fractions.Fraction: breakpoint images, fixed points,
inverses, compositions, and orbit samples are exact, so orbit distinctness is
decided by equality, never by tolerance. A certificate witnesses an infinite
strictly increasing chain of closed invariant sets either degenerately (a
fixed interval or a large supply of fixed points yields arbitrarily many
disjoint finite invariant sets) or via a fixed-point-free gap, in which the
orbits of midpoint-picked seeds are pairwise disjoint; decreasing maps are
handled through their square, tracking both branches x and f(x) of each
closure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import GraphInputError

ZERO = Fraction(0)
ONE = Fraction(1)


def _frac(raw) -> Fraction:
    if isinstance(raw, Fraction):
        return raw
    if isinstance(raw, int) and not isinstance(raw, bool):
        return Fraction(raw)
    if isinstance(raw, str):
        try:
            return Fraction(raw)
        except (ValueError, ZeroDivisionError) as exc:
            raise GraphInputError(f"bad rational literal {raw!r}") from exc
    raise GraphInputError(f"expected an exact rational, got {raw!r}")


@dataclass(frozen=True)
class PLHomeo:
    """A piecewise-linear bijection of [0, 1], strictly monotone, described by
    its breakpoints (t_i, f(t_i))."""

    points: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        pts = self.points
        if len(pts) < 2:
            raise GraphInputError("a PL map needs at least two breakpoints")
        ts = [t for (t, _) in pts]
        vs = [v for (_, v) in pts]
        if ts[0] != ZERO or ts[-1] != ONE:
            raise GraphInputError("breakpoints must start at t=0 and end at t=1")
        for a, b in zip(ts, ts[1:]):
            if not a < b:
                raise GraphInputError("breakpoint positions must strictly increase")
        inc = all(a < b for a, b in zip(vs, vs[1:]))
        dec = all(a > b for a, b in zip(vs, vs[1:]))
        if not (inc or dec):
            raise GraphInputError("breakpoint values must be strictly monotone")
        if {vs[0], vs[-1]} != {ZERO, ONE}:
            raise GraphInputError("a bijection of [0,1] must map {0,1} onto {0,1}")

    @classmethod
    def from_pairs(cls, pairs) -> "PLHomeo":
        return cls(tuple((_frac(t), _frac(v)) for (t, v) in pairs))

    @classmethod
    def identity(cls) -> "PLHomeo":
        return cls(((ZERO, ZERO), (ONE, ONE)))

    @property
    def is_increasing(self) -> bool:
        return self.points[0][1] < self.points[-1][1]

    def __call__(self, x: Fraction) -> Fraction:
        if not ZERO <= x <= ONE:
            raise GraphInputError(f"{x} is outside [0, 1]")
        pts = self.points
        lo, hi = 0, len(pts) - 1
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if pts[mid][0] <= x:
                lo = mid
            else:
                hi = mid
        (t0, v0), (t1, v1) = pts[lo], pts[hi]
        return v0 + (x - t0) * (v1 - v0) / (t1 - t0)

    def inverse(self) -> "PLHomeo":
        pairs = [(v, t) for (t, v) in self.points]
        if not self.is_increasing:
            pairs.reverse()
        return PLHomeo(tuple(pairs))

    def compose(self, other: "PLHomeo") -> "PLHomeo":
        """self after other: x -> self(other(x))."""
        cuts = {t for (t, _) in other.points}
        inv = other.inverse()
        for (t, _) in self.points:
            cuts.add(inv(t))
        ts = sorted(cuts)
        return PLHomeo(tuple((t, self(other(t))) for t in ts))

    def to_json(self) -> dict:
        return {"points": [[str(t), str(v)] for (t, v) in self.points]}

    @classmethod
    def from_json(cls, raw) -> "PLHomeo":
        if not isinstance(raw, dict) or "points" not in raw:
            raise GraphInputError("PL document needs a 'points' field")
        pts = raw["points"]
        if not isinstance(pts, list) or not all(
            isinstance(p, (list, tuple)) and len(p) == 2 for p in pts
        ):
            raise GraphInputError("'points' must be a list of [t, value] pairs")
        return cls.from_pairs(pts)


@dataclass(frozen=True)
class FixedPoints:
    points: tuple[Fraction, ...]
    intervals: tuple[tuple[Fraction, Fraction], ...]


def fixed_points(f: PLHomeo) -> FixedPoints:
    """Exact fixed set, split into isolated points and fixed intervals."""
    isolated: list[Fraction] = []
    intervals: list[tuple[Fraction, Fraction]] = []
    pts = f.points
    for (t0, v0), (t1, v1) in zip(pts, pts[1:]):
        slope = (v1 - v0) / (t1 - t0)
        if slope == 1:
            if v0 == t0:
                intervals.append((t0, t1))
            continue
        x = (v0 - slope * t0) / (1 - slope)
        if t0 <= x <= t1:
            isolated.append(x)
    merged: list[tuple[Fraction, Fraction]] = []
    for iv in intervals:
        if merged and merged[-1][1] == iv[0]:
            merged[-1] = (merged[-1][0], iv[1])
        else:
            merged.append(iv)
    covered = lambda x: any(a <= x <= b for (a, b) in merged)
    points = sorted({x for x in isolated if not covered(x)})
    return FixedPoints(tuple(points), tuple(merged))


MODE_INCREASING = "increasing"
MODE_SQUARE = "decreasing-via-square"


@dataclass(frozen=True)
class OrbitSamples:
    point: Fraction
    forward: tuple[Fraction, ...]
    backward: tuple[Fraction, ...]
    aux_forward: tuple[Fraction, ...] = ()
    aux_backward: tuple[Fraction, ...] = ()

    def all_values(self) -> set[Fraction]:
        vals = {self.point}
        vals.update(self.forward)
        vals.update(self.backward)
        vals.update(self.aux_forward)
        vals.update(self.aux_backward)
        return vals

    def to_json(self) -> dict:
        out = {
            "point": str(self.point),
            "forward": [str(x) for x in self.forward],
            "backward": [str(x) for x in self.backward],
        }
        if self.aux_forward or self.aux_backward:
            out["auxForward"] = [str(x) for x in self.aux_forward]
            out["auxBackward"] = [str(x) for x in self.aux_backward]
        return out

    @classmethod
    def from_json(cls, raw: dict) -> "OrbitSamples":
        return cls(
            point=_frac(raw["point"]),
            forward=tuple(_frac(x) for x in raw.get("forward", [])),
            backward=tuple(_frac(x) for x in raw.get("backward", [])),
            aux_forward=tuple(_frac(x) for x in raw.get("auxForward", [])),
            aux_backward=tuple(_frac(x) for x in raw.get("auxBackward", [])),
        )


@dataclass(frozen=True)
class InfinityCertificate:
    """Finite evidence that the cyclic group of a PL map has infinite height."""

    mode: str
    degenerate: bool
    depth: int
    points: tuple[Fraction, ...]
    gap: tuple[Fraction, Fraction] | None
    orbits: tuple[OrbitSamples, ...]

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "degenerate": self.degenerate,
            "depth": self.depth,
            "points": [str(x) for x in self.points],
            "gap": [str(self.gap[0]), str(self.gap[1])] if self.gap else None,
            "orbits": [o.to_json() for o in self.orbits],
        }

    @classmethod
    def from_json(cls, raw: dict) -> "InfinityCertificate":
        if not isinstance(raw, dict):
            raise GraphInputError("certificate must be an object")
        try:
            gap = raw.get("gap")
            return cls(
                mode=raw["mode"],
                degenerate=bool(raw["degenerate"]),
                depth=int(raw["depth"]),
                points=tuple(_frac(x) for x in raw["points"]),
                gap=(_frac(gap[0]), _frac(gap[1])) if gap else None,
                orbits=tuple(OrbitSamples.from_json(o) for o in raw.get("orbits", [])),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise GraphInputError(f"malformed certificate: {exc}") from exc


def _square_or_self(f: PLHomeo) -> tuple[PLHomeo, str]:
    if f.is_increasing:
        return f, MODE_INCREASING
    return f.compose(f), MODE_SQUARE


def _iterate(h: PLHomeo, x: Fraction, depth: int) -> list[Fraction]:
    out = []
    cur = x
    for _ in range(depth):
        cur = h(cur)
        out.append(cur)
    return out


def _orbit_samples(h: PLHomeo, h_inv: PLHomeo, f: PLHomeo, x: Fraction, depth: int, aux: bool) -> OrbitSamples:
    forward = tuple(_iterate(h, x, depth))
    backward = tuple(_iterate(h_inv, x, depth))
    if not aux:
        return OrbitSamples(x, forward, backward)
    fx = f(x)
    return OrbitSamples(
        x,
        forward,
        backward,
        aux_forward=(fx,) + tuple(_iterate(h, fx, depth)),
        aux_backward=tuple(_iterate(h_inv, fx, depth)),
    )


def infinity_certificate(f: PLHomeo, n_points: int = 50, depth: int = 50) -> InfinityCertificate:
    """Build a verifiable witness that <f> has infinite height on [0, 1]."""
    if n_points < 1 or depth < 1:
        raise GraphInputError("certificate needs n_points >= 1 and depth >= 1")
    h, mode = _square_or_self(f)
    aux = mode == MODE_SQUARE
    fp = fixed_points(h)

    if fp.intervals or len(fp.points) >= n_points:
        chosen: list[Fraction] = []
        used: set[Fraction] = set()
        candidates: list[Fraction] = []
        supply = 2 * n_points + 1
        for (a, b) in fp.intervals:
            for k in range(1, supply + 1):
                candidates.append(a + (b - a) * Fraction(k, supply + 1))
        candidates.extend(fp.points)
        for x in candidates:
            if len(chosen) == n_points:
                break
            if not ZERO < x < ONE:
                continue
            if x in used:
                continue
            chosen.append(x)
            used.add(x)
            if aux:
                used.add(f(x))
        if len(chosen) == n_points:
            return InfinityCertificate(
                mode=mode,
                degenerate=True,
                depth=depth,
                points=tuple(chosen),
                gap=None,
                orbits=(),
            )

    # gap route: seed orbits inside the longest fixed-point-free gap of h
    anchors = sorted(set(fp.points) | {ZERO, ONE})
    best = None
    for lo, hi in zip(anchors, anchors[1:]):
        if best is None or hi - lo > best[1] - best[0]:
            best = (lo, hi)
    assert best is not None and best[1] > best[0]
    x1 = (best[0] + best[1]) / 2
    h_inv = h.inverse()
    hx1 = h(x1)
    assert hx1 != x1, "gap must be fixed-point-free"
    mover, mover_inv = (h, h_inv) if hx1 > x1 else (h_inv, h)
    end = mover(x1)

    orbits = [_orbit_samples(mover, mover_inv, f, x1, depth, aux)]
    taken: set[Fraction] = orbits[0].all_values()
    points = [x1]
    while len(points) < n_points:
        candidate = (points[-1] + end) / 2
        while True:
            if candidate in taken:
                candidate = (candidate + end) / 2
                continue
            sample = _orbit_samples(mover, mover_inv, f, candidate, depth, aux)
            if any(p in sample.all_values() for p in points):
                candidate = (candidate + end) / 2
                continue
            break
        points.append(candidate)
        orbits.append(sample)
        taken |= sample.all_values()
    return InfinityCertificate(
        mode=mode,
        degenerate=False,
        depth=depth,
        points=tuple(points),
        gap=(x1, end),
        orbits=tuple(orbits),
    )


def certificate_failures(f: PLHomeo, cert: InfinityCertificate) -> list[str]:
    """Recompute every claim in a certificate; empty list means it verifies."""
    problems: list[str] = []
    h, mode = _square_or_self(f)
    if cert.mode != mode:
        problems.append(f"mode is {cert.mode!r} but the map requires {mode!r}")
        return problems
    if cert.depth < 1:
        problems.append("depth must be >= 1")
    if not cert.points:
        problems.append("certificate has no points")
        return problems
    if len(set(cert.points)) != len(cert.points):
        problems.append("points are not pairwise distinct")
    for x in cert.points:
        if not ZERO < x < ONE:
            problems.append(f"point {x} is not interior to [0, 1]")
    aux = mode == MODE_SQUARE

    if cert.degenerate:
        if cert.gap is not None or cert.orbits:
            problems.append("degenerate certificates carry no gap or orbit samples")
        for x in cert.points:
            if h(x) != x:
                problems.append(f"point {x} is not fixed by the certifying map")
        if aux:
            pairs = [frozenset((x, f(x))) for x in cert.points]
            if len(set(pairs)) != len(pairs):
                problems.append("orbit pairs {x, f(x)} are not pairwise distinct")
        return problems

    if cert.gap is None:
        problems.append("non-degenerate certificate is missing its gap")
        return problems
    lo, hi = cert.gap
    x1 = cert.points[0]
    if lo != x1:
        problems.append("gap must start at the first point")
    hx1 = h(x1)
    if hx1 == x1:
        problems.append(f"seed {x1} is a fixed point")
        return problems
    mover = h if hx1 > x1 else h.inverse()
    mover_inv = mover.inverse()
    if mover(x1) != hi:
        problems.append("gap end must be the image of the seed")
    fp = fixed_points(h)
    span_lo, span_hi = min(lo, hi), max(lo, hi)
    for x in fp.points:
        if span_lo <= x <= span_hi:
            problems.append(f"fixed point {x} lies inside the gap")
    for (a, b) in fp.intervals:
        if a <= span_hi and span_lo <= b:
            problems.append("a fixed interval meets the gap")
    if not hi > x1:
        problems.append("gap end must lie to the right of the seed")
    for a, b in zip(cert.points, cert.points[1:]):
        if not a < b:
            problems.append("points must be strictly increasing")
            break
    for x in cert.points[1:]:
        if not x1 < x < hi:
            problems.append(f"point {x} is outside the open gap")
    if len(cert.orbits) != len(cert.points):
        problems.append("one orbit sample block is required per point")
        return problems
    for x, orb in zip(cert.points, cert.orbits):
        if orb.point != x:
            problems.append(f"orbit block mismatches point {x}")
            continue
        fwd = tuple(_iterate(mover, x, cert.depth))
        bwd = tuple(_iterate(mover_inv, x, cert.depth))
        if orb.forward != fwd or orb.backward != bwd:
            problems.append(f"orbit samples of {x} do not recompute")
        if aux:
            fx = f(x)
            afwd = (fx,) + tuple(_iterate(mover, fx, cert.depth))
            abwd = tuple(_iterate(mover_inv, fx, cert.depth))
            if orb.aux_forward != afwd or orb.aux_backward != abwd:
                problems.append(f"aux orbit samples of {x} do not recompute")
        elif orb.aux_forward or orb.aux_backward:
            problems.append("increasing mode carries no aux samples")
        for prev, cur in zip((x,) + orb.forward, orb.forward):
            if not prev < cur:
                problems.append(f"forward orbit of {x} is not strictly monotone")
                break
        for prev, cur in zip((x,) + orb.backward, orb.backward):
            if not cur < prev:
                problems.append(f"backward orbit of {x} is not strictly monotone")
                break
    for i, orb in enumerate(cert.orbits):
        vals = orb.all_values()
        for j, y in enumerate(cert.points):
            if i != j and y in vals:
                problems.append(
                    f"point {y} collides with the sampled orbit of {cert.points[i]}"
                )
    return problems


def verify_certificate(f: PLHomeo, cert: InfinityCertificate) -> bool:
    return not certificate_failures(f, cert)
