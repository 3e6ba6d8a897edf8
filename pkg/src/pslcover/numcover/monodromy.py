"""Numerical monodromy: analytic continuation of fibers of a rational map along paths."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

import gmpy2
import mpmath

from ..nielsen import GenTuple, OrbitTable
from ..permgrp import Perm, tuple_conjugator
from . import cpoly
from .cpoly import CPoly
from .system import CoverModel, PathPlan, StepUnderflow, circle_path, cjson, default_tol


class Collision(RuntimeError):
    pass


class NotEquivalent(ValueError):
    pass


class NotUnique(ValueError):
    pass


class Unreachable(LookupError):
    pass


def fiber(num: CPoly, den: CPoly, t, prec: int | None = None) -> list:
    """Roots of ``num - t den`` (the finite preimages of t)."""
    t = mpmath.mpc(t)
    return cpoly.roots_all(cpoly.sub(num.coeffs, [t * c for c in den.coeffs]), prec=prec)


@dataclass
class TrackStats:
    steps: int = 0
    halvings: int = 0
    max_residual: object = 0


def _nearest_gaps(z: Sequence) -> list:
    n = len(z)
    out = [None] * n
    for i in range(n):
        best = None
        for j in range(n):
            if i != j:
                d = abs(z[i] - z[j])
                if best is None or d < best:
                    best = d
        out[i] = best
    return out


def _to_mpfr(x: mpmath.mpf) -> gmpy2.mpfr:
    sign, man, exp, _ = x._mpf_
    v = gmpy2.mpfr(man) * gmpy2.exp2(exp)
    return -v if sign else v


def to_gmp(z) -> gmpy2.mpc:
    z = mpmath.mpc(z)
    return gmpy2.mpc(_to_mpfr(z.real), _to_mpfr(z.imag))


def from_gmp(z) -> mpmath.mpc:
    return mpmath.mpc(*(mpmath.mpf(tuple(map(int, x.as_mantissa_exp()))) for x in (z.real, z.imag)))


class _Arith:
    """Coefficient lists of ``num``, ``den`` and their derivatives as gmpy2 numbers."""

    def __init__(self, num: CPoly, den: CPoly, tol):
        self.nc = [to_gmp(c) for c in num.coeffs]
        self.dc = [to_gmp(c) for c in den.coeffs]
        zero = gmpy2.mpc(0)
        self.dnc = cpoly.deriv(self.nc) or [zero]
        self.ddc = cpoly.deriv(self.dc) or [zero]
        self.tol = to_gmp(tol).real

    def g(self, x, t):
        return cpoly.horner(self.nc, x) - t * cpoly.horner(self.dc, x)

    def dg(self, x, t):
        return cpoly.horner(self.dnc, x) - t * cpoly.horner(self.ddc, x)

    def scale(self, x, t):
        return cpoly.residual_scale(self.nc, x) + abs(t) * cpoly.residual_scale(self.dc, x)

    def newton(self, y, t, maxiter: int = 8):
        """Newton on ``num - t den`` from ``y``; None if it fails to converge."""
        for _ in range(maxiter):
            v = self.g(y, t)
            if abs(v) <= self.tol * self.scale(y, t):
                return y
            d = self.dg(y, t)
            if d == 0:
                return None
            y = y - v / d
        return y if abs(self.g(y, t)) <= self.tol * self.scale(y, t) else None


def _track_segment(ar: _Arith, a, b, z: list, max_step: float, min_step: float, stats: TrackStats) -> list:
    length = float(abs(b - a))
    if length == 0:
        return z
    t = 0.0
    cap = min(max_step / length, 1.0)
    h = cap
    while t < 1:
        h = min(h, 1 - t)
        t0 = a + t * (b - a)
        t1 = a + (t + h) * (b - a)
        dt = t1 - t0
        new = []
        for x in z:
            d = ar.dg(x, t0)
            if d == 0:
                break
            y = ar.newton(x + cpoly.horner(ar.dc, x) / d * dt, t1)
            if y is None:
                break
            new.append(y)
        ok = len(new) == len(z)
        if ok and len(z) > 1:
            # each root must move less than half the distance to its nearest neighbour
            gaps_new, gaps_old = _nearest_gaps(new), _nearest_gaps(z)
            ok = all(2 * abs(p - q) < min(g1, g2) for p, q, g1, g2 in zip(new, z, gaps_new, gaps_old))
        if ok:
            z = new
            t += h
            stats.steps += 1
            h = min(2 * h, cap)
        else:
            stats.halvings += 1
            h /= 2
            if h * length < min_step:
                raise StepUnderflow(f"fiber tracking stalled near t = {complex(t0):.6g}")
    return z


def track_fiber(
    num: CPoly,
    den: CPoly,
    path: PathPlan,
    start: Sequence,
    tol=None,
    stats: TrackStats | None = None,
) -> list:
    """Continue every root of ``num - t den`` along the polyline ``path``.

    Each step predicts with ``dz/dt = den / (num' - t den')`` and corrects
    with Newton.  A step is accepted only if the corrector converges and every
    root moves less than half the distance to its nearest neighbour, so no
    two roots can trade places unnoticed.  The arithmetic runs in gmpy2 at
    the current mpmath working precision.
    """
    stats = stats if stats is not None else TrackStats()
    tol = tol if tol is not None else default_tol()
    with gmpy2.context(precision=mpmath.mp.prec):
        ar = _Arith(num, den, tol)
        pts = [to_gmp(w) for w in path.waypoints]
        z = [to_gmp(v) for v in start]
        for a, b in zip(pts, pts[1:]):
            z = _track_segment(ar, a, b, z, path.max_step, path.min_step, stats)
        end = pts[-1]
        res = max((abs(ar.g(x, end)) / ar.scale(x, end) for x in z), default=0)
        out = [from_gmp(x) for x in z]
    stats.max_residual = max(stats.max_residual, from_gmp(gmpy2.mpc(res)).real if res else mpmath.mpf(0))
    return out


def match_fibers(a: Sequence, b: Sequence) -> list[int]:
    """Index map ``i -> j`` with ``a[i] ~ b[j]``; raises Collision if ambiguous."""
    out = []
    for x in a:
        dists = sorted((abs(x - y), j) for j, y in enumerate(b))
        if len(dists) > 1 and not dists[0][0] * 4 < dists[1][0]:
            raise Collision("fiber points cannot be matched unambiguously")
        out.append(dists[0][1])
    if sorted(out) != list(range(len(b))):
        raise Collision("endpoint matching is not a bijection")
    return out


def loop_perm(num: CPoly, den: CPoly, loop: PathPlan, base_fiber: Sequence, stats: TrackStats | None = None) -> Perm:
    end = track_fiber(num, den, loop, base_fiber, stats=stats)
    return Perm(match_fibers(end, base_fiber))


def monodromy_tuple(num: CPoly, den: CPoly, base, loops: Sequence[PathPlan], base_fiber: Sequence | None = None, stats: TrackStats | None = None) -> list[Perm]:
    """Permutations of the fiber over ``base`` induced by each loop (right action)."""
    base = mpmath.mpc(base)
    if base_fiber is None:
        base_fiber = fiber(num, den, base)
    for loop in loops:
        if abs(mpmath.mpc(loop.waypoints[0]) - base) > 0 or abs(mpmath.mpc(loop.waypoints[-1]) - base) > 0:
            raise ValueError("loops must start and end at the base point")
    return [loop_perm(num, den, loop, base_fiber, stats) for loop in loops]


# ---------------------------------------------------------------------------
# loop systems


def circle_loop(center, radius, base, points: int = 48, turns: int = 1) -> list:
    """Go straight from ``base`` to the circle, around it ``turns`` times counterclockwise, and back."""
    center, base = mpmath.mpc(center), mpmath.mpc(base)
    u = (base - center) / abs(base - center)
    entry = center + radius * u
    ring = [center + radius * u * mpmath.expj(2 * mpmath.pi * k / points * (1 if turns > 0 else -1)) for k in range(1, points * abs(turns))]
    return [base, entry] + ring + [entry, base]


def _segment_distance(a, b, c):
    d = b - a
    t = mpmath.re((c - a) * mpmath.conj(d)) / abs(d) ** 2
    t = min(max(t, 0), 1)
    return abs(a + t * d - c)


@dataclass
class LoopSystem:
    """Loops around finite points from a common far base point, plus a loop around infinity.

    The finite loops are ordered by the direction in which they leave the
    base (counterclockwise seen from the base), so that
    ``loops[0] * ... * loops[-1] * inf_loop = 1``.
    """

    base: mpmath.mpc
    points: list
    loops: list[PathPlan]
    inf_loop: PathPlan
    order: list[int] = field(default_factory=list)


def loop_system(points: Sequence, direction=None, radius=None, max_step: float = 0.05, margin_factor: float = 4.0, base_radius=None) -> LoopSystem:
    """Star-shaped loop system around ``points``, based outside them in ``direction`` from their centroid.

    Each finite loop runs along a straight ray to a small circle; the loop
    around infinity is a clockwise circle through the base.
    """
    pts = [mpmath.mpc(p) for p in points]
    center = sum(pts) / len(pts)
    spread = max(abs(p - center) for p in pts)
    gap = min(abs(p - q) for i, p in enumerate(pts) for q in pts[:i]) if len(pts) > 1 else mpmath.mpf(1)
    radius = radius if radius is not None else gap / margin_factor
    R = base_radius if base_radius is not None else max(mpmath.mpf("1.5") * spread, spread + 2 * radius, mpmath.mpf(1))
    u = mpmath.mpc(direction) if direction is not None else mpmath.expj(mpmath.mpf("2.2"))
    u /= abs(u)
    base = center + R * u
    for i, p in enumerate(pts):
        for j, q in enumerate(pts):
            if i != j and _segment_distance(base, p, q) < 2 * radius:
                raise ValueError("ray from the base passes too close to another point")
    # counterclockwise order of the rays as seen from the base, starting just after the direction to 0
    ref = -u
    angles = [mpmath.arg((p - base) / ref) for p in pts]
    order = sorted(range(len(pts)), key=lambda i: angles[i])
    loops = [PathPlan(circle_loop(pts[i], radius, base), max_step=max_step, margin=0) for i in order]
    ring = [center + R * u * mpmath.expj(-2 * mpmath.pi * k / 96) for k in range(97)]
    ring[-1] = base
    return LoopSystem(base, pts, loops, PathPlan(ring, max_step=max_step, margin=0), order)


def figure_eight_loops(base, centers=(0, 1), max_step: float = 0.05, points_per_turn: int = 96) -> list[PathPlan]:
    """Counterclockwise circles through ``base`` around each center (base between them)."""
    return [PathPlan(circle_path(c, base, points_per_turn=points_per_turn), max_step=max_step, margin=0) for c in centers]


def labeled_monodromy(num: CPoly, den: CPoly, points: dict[str, object], labels: Sequence[str], direction=None, stats: TrackStats | None = None, **kw) -> list[Perm]:
    """Monodromy tuple in the order ``labels``; ``"inf"`` uses the circle at infinity.

    The loop system's angular order must agree cyclically with ``labels``
    (with infinity last); otherwise a ValueError is raised and another
    ``direction`` should be tried.
    """
    finite = [l for l in labels if l != "inf"]
    ls = loop_system([points[l] for l in finite], direction=direction, **kw)
    ordered = [finite[i] for i in ls.order] + ["inf"]
    k = ordered.index(labels[0])
    if ordered[k:] + ordered[:k] != list(labels):
        raise ValueError(f"loop order {ordered} does not match {list(labels)}")
    base_fiber = fiber(num, den, ls.base)
    perms = {}
    for i, loop in zip(ls.order, ls.loops):
        perms[finite[i]] = loop_perm(num, den, loop, base_fiber, stats)
    if "inf" in labels:
        perms["inf"] = loop_perm(num, den, ls.inf_loop, base_fiber, stats)
    return [perms[l] for l in labels]


def find_direction(points: dict[str, object], labels: Sequence[str], tries: int = 64) -> object:
    """A base direction whose ray order matches ``labels`` cyclically (infinity last)."""
    finite = [l for l in labels if l != "inf"]
    for k in range(tries):
        u = mpmath.expj(2 * mpmath.pi * (k + mpmath.mpf("0.37")) / tries)
        try:
            ls = loop_system([points[l] for l in finite], direction=u)
        except ValueError:
            continue
        ordered = [finite[i] for i in ls.order] + ["inf"]
        j = ordered.index(labels[0])
        if ordered[j:] + ordered[:j] == list(labels):
            return u
    raise ValueError(f"no base direction realizes the order {list(labels)}")


def product(perms: Sequence[Perm]) -> Perm:
    out = Perm.identity(perms[0].degree)
    for g in perms:
        out = out * g
    return out


def model_monodromy(model: CoverModel, labels=("0", "inf", "1+s", "1-s"), stats: TrackStats | None = None) -> list[Perm]:
    """Monodromy of a cover model in branch-label order, with product one."""
    pts = model.branch_points()
    direction = find_direction(pts, labels)
    perms = labeled_monodromy(model.numerator(), model.denominator(), pts, labels, direction=direction, stats=stats)
    if not product(perms).is_identity():
        raise Collision("loop permutations do not multiply to the identity")
    return perms


# ---------------------------------------------------------------------------
# intertwiners and steering


def _intertwine(A: Sequence[Perm], B: Sequence[Perm], anchor: int) -> list[int] | None:
    n = A[0].degree
    f = [-1] * n
    used = [False] * n
    f[0], used[anchor] = anchor, True
    queue = deque([0])
    while queue:
        p = queue.popleft()
        for a, b in zip(A, B):
            for g, h in ((a, b), (~a, ~b)):
                q, r = g.img[p], h.img[f[p]]
                if f[q] == -1:
                    if used[r]:
                        return None
                    f[q], used[r] = r, True
                    queue.append(q)
                elif f[q] != r:
                    return None
    return f if -1 not in f else None


def chi_bijection(block_action: Sequence[Perm], fiber_action: Sequence[Perm]) -> list[int]:
    """The unique ``f`` with ``f(a.img[p]) = b.img[f(p)]`` for every generator pair.

    Raises NotEquivalent if no intertwiner exists and NotUnique if several do.
    """
    if len(block_action) != len(fiber_action):
        raise ValueError("generator lists differ in length")
    n = block_action[0].degree
    if any(g.degree != n for g in list(block_action) + list(fiber_action)):
        raise NotEquivalent("actions on sets of different sizes")
    found = [f for c in range(n) if (f := _intertwine(block_action, fiber_action, c)) is not None]
    if not found:
        raise NotEquivalent("the actions are not equivalent")
    if len(found) > 1:
        raise NotUnique(f"{len(found)} intertwiners")
    return found[0]


def steer_to_tuple(table: OrbitTable, current: int, target: int) -> list[tuple[str, int]]:
    """Shortest word in ``x^+-1, y^+-1`` moving ``current`` to ``target`` on the orbit."""
    if table.x is None or table.y is None:
        raise ValueError("family monodromy not set on the table")
    gens = {"x": table.x, "y": table.y}
    prev: dict[int, tuple[int, tuple[str, int]] | None] = {current: None}
    queue = deque([current])
    while queue:
        p = queue.popleft()
        if p == target:
            break
        for name, g in gens.items():
            for sign, h in ((1, g), (-1, ~g)):
                q = h.img[p]
                if q not in prev:
                    prev[q] = (p, (name, sign))
                    queue.append(q)
    if target not in prev:
        raise Unreachable(f"{target} is not reachable from {current}")
    word = []
    p = target
    while prev[p] is not None:
        p, letter = prev[p]
        word.append(letter)
    return word[::-1]


def apply_steering(table: OrbitTable, start: int, word: Sequence[tuple[str, int]]) -> int:
    p = start
    for name, sign in word:
        g = getattr(table, name)
        p = (g if sign > 0 else ~g).img[p]
    return p


# ---------------------------------------------------------------------------
# verification report


def verify_cover_numeric(model: CoverModel, expected: GenTuple | Sequence[Perm] | None = None, tol=None) -> dict:
    """Residuals, trace checks and (optionally) a monodromy comparison."""
    tol = tol if tol is not None else default_tol(model.prec)
    report: dict = {"lambda": cjson(model.lam), "prec_bits": model.prec, "checks": {}}
    with mpmath.workprec(model.prec):
        res = model.residual_norm()
        report["residual"] = mpmath.nstr(res, 5)
        report["checks"]["residual"] = bool(res < tol)
        for f in model.shape.factor_specs():
            if f.fixed_trace is not None:
                coeffs = model.factors[f.key]
                dev = abs(-coeffs[-2] - mpmath.mpf(f.fixed_trace.numerator) / f.fixed_trace.denominator)
                report["checks"][f"trace {f.location}^{f.mult}"] = bool(dev < tol)
        if expected is not None:
            perms = expected.perms if isinstance(expected, GenTuple) else tuple(expected)
            stats = TrackStats()
            try:
                mono = model_monodromy(model, stats=stats)
                h = tuple_conjugator(mono, perms)
                report["monodromy"] = [g.images1() for g in mono]
                report["tracking_residual"] = mpmath.nstr(stats.max_residual, 5)
                report["checks"]["monodromy"] = h is not None
            except (Collision, StepUnderflow, ValueError) as exc:
                report["monodromy_error"] = str(exc)
                report["checks"]["monodromy"] = False
    report["passed"] = all(report["checks"].values())
    return report
