"""Coefficient-comparison systems for four-branch-point covers, Newton solving and continuation.

A cover with branch points ``0, inf, b_1, ..., b_r`` is written as

    f = c0 * N_0 / D = b_j + c0 * N_j / D        (j = 1..r)

where each ``N_b`` (and ``D``) is a product of monic factors ``P_{b,m}^m``, one
per multiplicity m occurring in the cycle type over b.  One pole of a chosen
multiplicity is pinned at ``X = inf``, and trace conditions fix the
translation/scaling freedom.  Comparing coefficients of
``c0 N_0 - c0 N_j - b_j D`` gives a square polynomial system.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Sequence

import mpmath
import numpy as np

from ..permgrp import CycleType
from . import cpoly


class ShapeInvalid(ValueError):
    pass


class Diverged(RuntimeError):
    pass


class SingularJacobian(ArithmeticError):
    pass


class StepUnderflow(RuntimeError):
    pass


MOVING = ("1+s", "1-s")


def branch_value(location: str, s):
    """Branch point for a location label; ``s`` is the tracked square root of lambda."""
    if location == "0":
        return 0 * s
    if location == "1+s":
        return 1 + s
    if location == "1-s":
        return 1 - s
    if location.startswith("fixed:"):
        return mpmath.mpc(location[6:]) if isinstance(s, mpmath.mpc) else complex(location[6:])
    raise ShapeInvalid(f"no finite value for location {location!r}")


def branch_dvalue(location: str, s):
    """Derivative of the branch point with respect to lambda."""
    if location == "1+s":
        return 1 / (2 * s)
    if location == "1-s":
        return -1 / (2 * s)
    return 0 * s


@dataclass(frozen=True)
class Branch:
    location: str
    ctype: CycleType


@dataclass(frozen=True)
class TraceRule:
    """The factor of multiplicity ``mult`` over ``location`` has root sum ``value``."""

    location: str
    mult: int
    value: Fraction


@dataclass(frozen=True)
class FactorSpec:
    location: str
    mult: int
    degree: int
    fixed_trace: Fraction | None

    @property
    def key(self) -> tuple[str, int]:
        return (self.location, self.mult)

    @property
    def n_free(self) -> int:
        return self.degree - (self.fixed_trace is not None)


@dataclass(frozen=True)
class RamShape:
    degree: int
    branches: tuple[Branch, ...]
    traces: tuple[TraceRule, ...]
    pinned: int = 1

    @classmethod
    def make(cls, degree: int, layout: Sequence[tuple[str, str]], traces: Sequence[tuple[str, int, object]], pinned: int = 1) -> RamShape:
        shape = cls(
            degree,
            tuple(Branch(loc, CycleType.parse(ct)) for loc, ct in layout),
            tuple(TraceRule(loc, m, Fraction(v)) for loc, m, v in traces),
            pinned,
        )
        shape.validate()
        return shape

    def branch(self, location: str) -> Branch:
        for b in self.branches:
            if b.location == location:
                return b
        raise KeyError(location)

    @property
    def finite_others(self) -> list[Branch]:
        return [b for b in self.branches if b.location not in ("0", "inf")]

    def factor_specs(self) -> list[FactorSpec]:
        rules = {(t.location, t.mult): t.value for t in self.traces}
        out = []
        for b in self.branches:
            for m, count in b.ctype.parts:
                deg = count - (1 if b.location == "inf" and m == self.pinned else 0)
                if deg == 0:
                    continue
                out.append(FactorSpec(b.location, m, deg, rules.get((b.location, m))))
        return out

    def n_unknowns(self) -> int:
        return 1 + sum(f.n_free for f in self.factor_specs())

    def n_equations(self) -> int:
        return self.degree * len(self.finite_others)

    def genus(self) -> int:
        from ..nielsen import rh_genus

        return rh_genus(self.degree, [b.ctype for b in self.branches])

    def validate(self) -> None:
        locs = [b.location for b in self.branches]
        if locs.count("inf") != 1 or locs.count("0") != 1:
            raise ShapeInvalid("need exactly one branch at 0 and one at inf")
        if len(set(locs)) != len(locs):
            raise ShapeInvalid("duplicate branch locations")
        for b in self.branches:
            if b.ctype.degree != self.degree:
                raise ShapeInvalid(f"cycle type {b.ctype} has the wrong degree")
        try:
            g = self.genus()
        except ValueError as exc:
            raise ShapeInvalid(str(exc)) from exc
        if g != 0:
            raise ShapeInvalid(f"genus {g}, expected 0")
        if self.branch("inf").ctype.count(self.pinned) == 0:
            raise ShapeInvalid("pinned pole multiplicity does not occur over inf")
        specs = {f.key: f for f in self.factor_specs()}
        for t in self.traces:
            if (t.location, t.mult) not in specs:
                raise ShapeInvalid(f"trace rule on missing factor {(t.location, t.mult)}")
        if self.n_unknowns() != self.n_equations():
            raise ShapeInvalid(f"{self.n_unknowns()} unknowns vs {self.n_equations()} equations")

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "branches": [{"location": b.location, "type": str(b.ctype)} for b in self.branches],
            "traces": [{"branch": t.location, "mult": t.mult, "value": str(t.value)} for t in self.traces],
            "pinned_pole": self.pinned,
        }

    @classmethod
    def from_json(cls, obj: dict) -> RamShape:
        return cls.make(
            obj["degree"],
            [(b["location"], b["type"]) for b in obj["branches"]],
            [(t["branch"], t["mult"], Fraction(t["value"])) for t in obj["traces"]],
            obj.get("pinned_pole", 1),
        )


def family_shape(degree: int, classes: Sequence[str | CycleType], simple_root_trace=("0", 1), double_pole_trace=("inf", 2)) -> RamShape:
    """Shape with branch points ``(0, inf, 1+s, 1-s)`` and the usual trace rules.

    By default the simple roots sum to 0, the double poles sum to 1 and one
    simple pole sits at infinity.
    """
    layout = list(zip(("0", "inf", "1+s", "1-s"), [str(CycleType.parse(c)) for c in classes]))
    traces = [(simple_root_trace[0], simple_root_trace[1], 0), (double_pole_trace[0], double_pole_trace[1], 1)]
    return RamShape.make(degree, layout, traces, pinned=1)


def psl62_shape() -> RamShape:
    return family_shape(63, ("2^28.1^7", "2^16.1^31", "3^20.1^3", "3^20.1^3"))


def toy_shape() -> RamShape:
    """Degree 7 analogue in PSL(3,2): transvection classes over 0 and inf, order-3 classes at 1 +- s."""
    return family_shape(7, ("2^2.1^3", "2^2.1^3", "3^2.1^1", "3^2.1^1"))


# ---------------------------------------------------------------------------
# unknown vector <-> factors


def unpack(shape: RamShape, x: Sequence) -> tuple[object, dict[tuple[str, int], list]]:
    """Split ``x = [c0, free coefficients...]`` into c0 and monic factor coefficient lists."""
    c0 = x[0]
    one = 1 + 0 * c0
    pos = 1
    factors = {}
    for f in shape.factor_specs():
        coeffs = list(x[pos:pos + f.n_free])
        pos += f.n_free
        if f.fixed_trace is not None:
            coeffs.append(-f.fixed_trace * one)
        coeffs.append(one)
        factors[f.key] = coeffs
    return c0, factors


def pack(shape: RamShape, c0, factors: dict[tuple[str, int], Sequence]) -> list:
    x = [c0]
    for f in shape.factor_specs():
        x += list(factors[f.key][: f.n_free])
    return x


def labels(shape: RamShape) -> list[str]:
    out = ["c0"]
    for f in shape.factor_specs():
        out += [f"{f.location}^{f.mult}[{i}]" for i in range(f.n_free)]
    return out


def _powers(c, m):
    out = [1 + 0 * c[0]]
    for _ in range(m):
        out = cpoly.mul(out, c)
    return out


def _branch_products(shape, factors):
    """``N_b`` for every branch and, per factor, ``N_b / P`` (one copy of P removed)."""
    specs = shape.factor_specs()
    by_branch: dict[str, list[FactorSpec]] = {}
    for f in specs:
        by_branch.setdefault(f.location, []).append(f)
    full, reduced = {}, {}
    any_c = next(iter(factors.values()))[0]
    one = 1 + 0 * any_c
    for b in shape.branches:
        fs = by_branch.get(b.location, [])
        pw = {f.key: _powers(factors[f.key], f.mult) for f in fs}
        prod = [one]
        for f in fs:
            prod = cpoly.mul(prod, pw[f.key])
        full[b.location] = prod
        for f in fs:
            r = _powers(factors[f.key], f.mult - 1)
            for g in fs:
                if g is not f:
                    r = cpoly.mul(r, pw[g.key])
            reduced[f.key] = r
    return full, reduced


def _coef(poly, k):
    return poly[k] if 0 <= k < len(poly) else 0


class PolySystem:
    """Residual and closed-form Jacobian of the coefficient comparison at fixed lambda."""

    def __init__(self, shape: RamShape, lam, sqrt_lam=None):
        shape.validate()
        self.shape = shape
        self.lam = lam
        self.sqrt_lam = sqrt_lam if sqrt_lam is not None else (mpmath.sqrt(lam) if isinstance(lam, mpmath.mpc) else complex(lam) ** 0.5)
        self.labels = labels(shape)
        self.specs = shape.factor_specs()
        self.others = shape.finite_others

    @property
    def n_unknowns(self) -> int:
        return len(self.labels)

    @property
    def n_equations(self) -> int:
        return self.shape.n_equations()

    def _values(self, like):
        s = self.sqrt_lam
        s = mpmath.mpc(s) if isinstance(like, mpmath.mpc) else complex(s)
        return s, [branch_value(b.location, s) for b in self.others]

    def residual(self, x: Sequence) -> list:
        c0, factors = unpack(self.shape, x)
        full, _ = _branch_products(self.shape, factors)
        _, values = self._values(c0)
        n = self.shape.degree
        out = []
        N0, D = full["0"], full["inf"]
        for b, v in zip(self.others, values):
            Nj = full[b.location]
            for k in range(n):
                out.append(c0 * (_coef(N0, k) - _coef(Nj, k)) - v * _coef(D, k))
        return out

    def jacobian(self, x: Sequence) -> list[list]:
        c0, factors = unpack(self.shape, x)
        full, reduced = _branch_products(self.shape, factors)
        _, values = self._values(c0)
        n = self.shape.degree
        zero = 0 * c0
        rows = []
        N0 = full["0"]
        for b, v in zip(self.others, values):
            Nj = full[b.location]
            for k in range(n):
                row = [_coef(N0, k) - _coef(Nj, k)]
                for f in self.specs:
                    red = reduced[f.key]
                    if f.location == "0":
                        scale = c0 * f.mult
                    elif f.location == b.location:
                        scale = -c0 * f.mult
                    elif f.location == "inf":
                        scale = -v * f.mult
                    else:
                        row += [zero] * f.n_free
                        continue
                    row += [scale * _coef(red, k - i) for i in range(f.n_free)]
                rows.append(row)
        return rows

    def dlambda(self, x: Sequence) -> list:
        """Partial derivative of the residual with respect to lambda at fixed coefficients."""
        c0, factors = unpack(self.shape, x)
        full, _ = _branch_products(self.shape, factors)
        s, _ = self._values(c0)
        D = full["inf"]
        out = []
        for b in self.others:
            dv = branch_dvalue(b.location, s)
            out += [-dv * _coef(D, k) for k in range(self.shape.degree)]
        return out


def assemble_system(shape: RamShape, lam, sqrt_lam=None) -> PolySystem:
    return PolySystem(shape, lam, sqrt_lam)


@dataclass
class FunctionSystem:
    """A square system given by plain callables (used for small tests and utilities)."""

    F: Callable
    J: Callable
    n: int

    def residual(self, x):
        return list(self.F(x))

    def jacobian(self, x):
        return [list(r) for r in self.J(x)]


# ---------------------------------------------------------------------------
# Newton


def _is_mp(x) -> bool:
    return isinstance(x[0], (mpmath.mpc, mpmath.mpf))


def _solve(J, r, mp: bool):
    if mp:
        try:
            sol = mpmath.lu_solve(mpmath.matrix(J), mpmath.matrix(r))
        except ZeroDivisionError as exc:
            raise SingularJacobian(str(exc)) from exc
        return [sol[i] for i in range(len(r))]
    try:
        A = np.array(J, dtype=complex)
        sol = np.linalg.solve(A, np.array(r, dtype=complex))
    except np.linalg.LinAlgError as exc:
        raise SingularJacobian(str(exc)) from exc
    if not np.all(np.isfinite(sol)) or np.linalg.cond(A) > 1e14:
        raise SingularJacobian("Jacobian is numerically singular")
    return list(sol)


def _norm(v):
    return max((abs(a) for a in v), default=0)


@dataclass
class NewtonResult:
    x: list
    residual: object
    iterations: int


def default_tol(prec: int | None = None):
    prec = prec or mpmath.mp.prec
    return mpmath.mpf(2) ** (32 - prec)


def newton_solve(system, x0: Sequence, tol=None, maxiter: int = 50, max_increases: int = 5, polish: bool = True) -> NewtonResult:
    """Newton iteration until the residual's max-norm drops below ``tol``.

    Raises :class:`Diverged` after ``maxiter`` steps or ``max_increases``
    consecutive residual increases, :class:`SingularJacobian` if a linear
    solve fails.
    """
    x = list(x0)
    mp = _is_mp(x)
    if tol is None:
        tol = default_tol() if mp else 1e-11
    r = system.residual(x)
    res = _norm(r)
    increases = 0
    it = 0
    while res >= tol:
        if it >= maxiter:
            raise Diverged(f"no convergence in {maxiter} iterations (residual {float(res):.3e})")
        try:
            dx = _solve(system.jacobian(x), r, mp)
        except ZeroDivisionError as exc:
            raise SingularJacobian(str(exc)) from exc
        x = [a - d for a, d in zip(x, dx)]
        r = system.residual(x)
        new = _norm(r)
        it += 1
        if not (new == new) or new == float("inf"):
            raise Diverged("residual is not finite")
        increases = increases + 1 if new > res else 0
        if increases >= max_increases:
            raise Diverged("residual increased repeatedly")
        res = new
    if polish and it > 0:
        # quadratic convergence: one more step brings the iterate to working accuracy
        try:
            dx = _solve(system.jacobian(x), r, mp)
            cand = [a - d for a, d in zip(x, dx)]
            cr = system.residual(cand)
            if _norm(cr) <= res:
                x, res = cand, _norm(cr)
                it += 1
        except SingularJacobian:
            pass
    return NewtonResult(x, res, it)


# ---------------------------------------------------------------------------
# models and continuation


def _to_str(x) -> str:
    return mpmath.libmp.to_str(mpmath.mpf(x)._mpf_, mpmath.libmp.repr_dps(mpmath.mp.prec), min_fixed=1, max_fixed=0)


def cjson(z) -> dict:
    z = mpmath.mpc(z)
    return {"re": _to_str(z.real), "im": _to_str(z.imag)}


def cparse(obj) -> mpmath.mpc:
    return mpmath.mpc(mpmath.mpf(obj["re"]), mpmath.mpf(obj["im"]))


@dataclass
class CoverModel:
    shape: RamShape
    lam: mpmath.mpc
    sqrt_lam: mpmath.mpc
    c0: mpmath.mpc
    factors: dict[tuple[str, int], list]
    prec: int = field(default_factory=lambda: mpmath.mp.prec)

    @classmethod
    def from_vector(cls, shape: RamShape, lam, sqrt_lam, x: Sequence) -> CoverModel:
        c0, factors = unpack(shape, [mpmath.mpc(v) for v in x])
        return cls(shape, mpmath.mpc(lam), mpmath.mpc(sqrt_lam), c0, factors, mpmath.mp.prec)

    def vector(self) -> list:
        return pack(self.shape, self.c0, self.factors)

    def system(self) -> PolySystem:
        return PolySystem(self.shape, self.lam, self.sqrt_lam)

    def products(self):
        full, _ = _branch_products(self.shape, self.factors)
        return full

    def numerator(self) -> cpoly.CPoly:
        return cpoly.CPoly(self.c0 * c for c in self.products()["0"])

    def denominator(self) -> cpoly.CPoly:
        return cpoly.CPoly(self.products()["inf"])

    def branch_points(self) -> dict[str, mpmath.mpc]:
        return {b.location: branch_value(b.location, self.sqrt_lam) for b in self.shape.finite_others} | {"0": mpmath.mpc(0)}

    def residual_norm(self):
        return _norm(self.system().residual(self.vector()))

    def normalize_sign(self) -> CoverModel:
        """Relabel so that ``sqrt_lam`` is the principal square root (swaps the 1 +- s data)."""
        principal = mpmath.sqrt(self.lam)
        if abs(self.sqrt_lam - principal) <= abs(self.sqrt_lam + principal):
            return self
        if self.shape.branch("1+s").ctype != self.shape.branch("1-s").ctype:
            raise ShapeInvalid("cannot swap branches with different cycle types")
        swap = {"1+s": "1-s", "1-s": "1+s"}
        factors = {(swap.get(loc, loc), m): c for (loc, m), c in self.factors.items()}
        return replace(self, sqrt_lam=-self.sqrt_lam, factors=factors)

    def distance(self, other: CoverModel):
        return _norm([a - b for a, b in zip(self.vector(), other.vector())])

    def to_json(self) -> dict:
        return {
            "shape": self.shape.to_json(),
            "lambda": cjson(self.lam),
            "sqrt_lambda": cjson(self.sqrt_lam),
            "prec_bits": self.prec,
            "c0": cjson(self.c0),
            "factors": [
                {"branch": loc, "mult": m, "coeffs": [cjson(c) for c in coeffs]}
                for (loc, m), coeffs in self.factors.items()
            ],
        }

    @classmethod
    def from_json(cls, obj: dict) -> CoverModel:
        prec = int(obj["prec_bits"])
        with mpmath.workprec(prec):
            shape = RamShape.from_json(obj["shape"])
            lam = cparse(obj["lambda"])
            s = cparse(obj["sqrt_lambda"]) if "sqrt_lambda" in obj else mpmath.sqrt(lam)
            factors = {(f["branch"], f["mult"]): [cparse(c) for c in f["coeffs"]] for f in obj["factors"]}
            model = cls(shape, lam, s, cparse(obj["c0"]), factors, prec)
        expected = {f.key for f in shape.factor_specs()}
        if set(factors) != expected:
            raise ValueError("factor keys do not match the shape")
        return model


@dataclass
class PathPlan:
    waypoints: list
    max_step: float = 0.05
    min_step: float = 1e-10
    margin: float = 1e-3

    def validate(self, avoid=(0, 1)) -> None:
        pts = [mpmath.mpc(w) for w in self.waypoints]
        for a, b in zip(pts, pts[1:]):
            if a == b:
                raise ValueError("consecutive waypoints coincide")
            for c in avoid:
                if _segment_distance(a, b, mpmath.mpc(c)) < self.margin:
                    raise ValueError(f"path passes within {self.margin} of {c}")

    def reversed(self) -> PathPlan:
        return replace(self, waypoints=list(reversed(self.waypoints)))

    def to_json(self) -> dict:
        return {"waypoints": [cjson(w) for w in self.waypoints], "max_step": self.max_step, "min_step": self.min_step, "margin": self.margin}

    @classmethod
    def from_json(cls, obj: dict) -> PathPlan:
        return cls([cparse(w) for w in obj["waypoints"]], obj.get("max_step", 0.05), obj.get("min_step", 1e-10), obj.get("margin", 1e-3))


def _segment_distance(a, b, c):
    d = b - a
    t = mpmath.re((c - a) * mpmath.conj(d)) / abs(d) ** 2
    t = min(max(t, 0), 1)
    return abs(a + t * d - c)


def circle_path(center, start, turns: int = 1, points_per_turn: int = 64) -> list:
    """Counterclockwise polyline circle around ``center`` starting and ending at ``start``."""
    center, start = mpmath.mpc(center), mpmath.mpc(start)
    r = start - center
    n = points_per_turn * abs(turns)
    sgn = 1 if turns > 0 else -1
    pts = [center + r * mpmath.expj(sgn * 2 * mpmath.pi * k / points_per_turn) for k in range(n)]
    return pts + [start]


def deform_lambda(model: CoverModel, plan: PathPlan, tol=None) -> CoverModel:
    """Continue the cover along a polyline in the lambda-plane.

    The square root of lambda is followed continuously, so a loop around 0
    returns with the opposite sign; call :meth:`CoverModel.normalize_sign`
    to relabel.  Each step uses a tangent predictor and a Newton corrector;
    the step is halved whenever the corrector needs too many iterations or
    lands far from the prediction.
    """
    if len(plan.waypoints) < 2:
        return model
    plan.validate()
    tol = tol if tol is not None else default_tol()
    shape = model.shape
    x = model.vector()
    lam = mpmath.mpc(model.lam)
    s = mpmath.mpc(model.sqrt_lam)
    if abs(lam - mpmath.mpc(plan.waypoints[0])) > mpmath.mpf(2) ** (-mpmath.mp.prec // 2):
        raise ValueError("path does not start at the model's lambda")
    for a, b in zip(plan.waypoints, plan.waypoints[1:]):
        a, b = mpmath.mpc(a), mpmath.mpc(b)
        length = abs(b - a)
        t = mpmath.mpf(0)
        h = min(mpmath.mpf(plan.max_step) / length, mpmath.mpf(1))
        while t < 1:
            h = min(h, 1 - t)
            lam_new = a + (t + h) * (b - a)
            dl = lam_new - lam
            s_guess = s + dl / (2 * s)
            s_new = mpmath.sqrt(lam_new)
            if abs(s_new - s_guess) > abs(s_new + s_guess):
                s_new = -s_new
            sysm = PolySystem(shape, lam, s)
            try:
                tangent = _solve(sysm.jacobian(x), sysm.dlambda(x), True)
                pred = [xi - ti * dl for xi, ti in zip(x, tangent)]
                res = newton_solve(PolySystem(shape, lam_new, s_new), pred, tol=tol, maxiter=8, max_increases=2)
                jump = _norm([p - q for p, q in zip(res.x, pred)])
                move = _norm([p - q for p, q in zip(pred, x)])
                ok = jump <= mpmath.mpf("0.25") * move + tol * 2**20
            except (Diverged, SingularJacobian):
                ok = False
            if ok:
                x, lam, s = res.x, lam_new, s_new
                t += h
                h = min(h * mpmath.mpf("1.5"), mpmath.mpf(plan.max_step) / length)
            else:
                h /= 2
                if h * length < plan.min_step:
                    raise StepUnderflow(f"step below {plan.min_step} at lambda = {mpmath.nstr(lam, 8)}")
    final = newton_solve(PolySystem(shape, lam, s), x, tol=tol)
    return CoverModel.from_vector(shape, lam, s, final.x)


# ---------------------------------------------------------------------------
# finding starting covers


def _random_start(shape: RamShape, rng: random.Random) -> list[complex]:
    x = []
    for _ in range(shape.n_unknowns()):
        r = math.sqrt(rng.random())
        x.append(complex(r * math.cos(2 * math.pi * rng.random()), r * math.sin(2 * math.pi * rng.random())))
    return x


def factor_roots_separated(model: CoverModel, min_sep: float = 1e-8) -> bool:
    """All factor roots are pairwise distinct (no hidden coincidences between fibers)."""
    roots = []
    for coeffs in model.factors.values():
        if len(coeffs) > 1:
            roots += cpoly.roots_all(coeffs, prec=min(model.prec, 128))
    for i in range(len(roots)):
        for j in range(i):
            if abs(roots[i] - roots[j]) < min_sep:
                return False
    return abs(model.c0) > min_sep


def multistart(
    shape: RamShape,
    lam,
    rng: random.Random,
    restarts: int = 10**4,
    accept: Callable[[CoverModel], bool] | None = None,
    max_found: int = 1,
) -> list[CoverModel]:
    """Random starts in the unit polydisc, fast double-precision Newton, then refinement.

    Solutions with coinciding factor roots are discarded; ``accept`` can
    filter further (for instance by monodromy).
    """
    lam_c = complex(lam)
    s_c = lam_c**0.5
    fast = PolySystem(shape, lam_c, s_c)
    found: list[CoverModel] = []
    seen: list[list[complex]] = []
    lam_mp = mpmath.mpc(lam)
    s_mp = mpmath.sqrt(lam_mp)
    for _ in range(restarts):
        x0 = _random_start(shape, rng)
        try:
            res = newton_solve(fast, x0, tol=1e-10, maxiter=40)
        except (Diverged, SingularJacobian, OverflowError, ZeroDivisionError):
            continue
        if any(max(abs(a - b) for a, b in zip(res.x, y)) < 1e-6 for y in seen):
            continue
        seen.append(res.x)
        try:
            fine = newton_solve(PolySystem(shape, lam_mp, s_mp), [mpmath.mpc(v) for v in res.x])
        except (Diverged, SingularJacobian):
            continue
        model = CoverModel.from_vector(shape, lam_mp, s_mp, fine.x)
        if not factor_roots_separated(model):
            continue
        if accept is not None and not accept(model):
            continue
        found.append(model)
        if len(found) >= max_found:
            break
    return found
