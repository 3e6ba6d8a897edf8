"""Small end-to-end run: tuple search, numeric cover, lambda-loop, monodromy comparison."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import mpmath

from ..nielsen import BraidWord, ClassVector, OrbitTable, action_of_word, braid_orbit, search_tuple
from ..permgrp import canonical_key
from .monodromy import model_monodromy
from .system import CoverModel, PathPlan, circle_path, deform_lambda, family_shape, multistart

TOY_CLASSES = ("2^1.1^2", "2^1.1^2", "3^1.1^1", "3^1.1^1")
TOY_GROUP = "s4"


@dataclass
class ToyRun:
    orbit_size: int
    solutions: int
    located: list[int]
    loop_image: int
    predicted: dict[str, int]
    sign: int | None
    round_trip_error: object
    permutes_solutions: bool
    complete: bool
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        return {
            "orbit_size": self.orbit_size,
            "solutions": self.solutions,
            "located": self.located,
            "loop_image": self.loop_image,
            "predicted": self.predicted,
            "braid_sign": self.sign,
            "round_trip_error": mpmath.nstr(self.round_trip_error, 5),
            "permutes_solutions": self.permutes_solutions,
            "all_covers_found": self.complete,
            "checks": self.checks,
            "passed": self.passed,
        }


def locate(table: OrbitTable, model: CoverModel) -> int:
    """Orbit index of the cover's monodromy tuple (order ``0, inf, 1+s, 1-s``)."""
    mono = model_monodromy(model)
    return table.index[canonical_key(mono)]


def run_toy(
    seed: int = 0,
    classes=TOY_CLASSES,
    group: str = TOY_GROUP,
    lam="0.3",
    restarts: int = 800,
    max_found: int = 64,
) -> ToyRun:
    """Run the small pipeline at the current mpmath precision.

    The lambda-loop is a counterclockwise circle around 0.  Along it ``s``
    changes sign; after relabelling, the endpoint cover's tuple should be
    the image of the starting tuple under ``Q3`` or its inverse, and the run
    records which one matches.
    """
    rng = random.Random(seed)
    cv = ClassVector.parse(classes, group)
    tup = search_tuple(cv, rng)
    table = braid_orbit(tup, cv)
    x_plus = action_of_word(table, BraidWord.parse("Q3"))
    x_minus = ~x_plus
    shape = family_shape(cv.degree, cv.classes)
    lam = mpmath.mpc(lam)
    models = multistart(shape, lam, rng, restarts=restarts, max_found=max_found)
    if not models:
        raise RuntimeError("multi-start found no admissible cover")
    located = []
    kept = []
    for m in models:
        try:
            located.append(locate(table, m))
            kept.append(m)
        except KeyError:
            located.append(-1)
    checks = {"solutions_in_orbit": bool(kept) and -1 not in located}
    # every cover shows up once per simple pole that can be pinned at infinity
    poles = shape.branch("inf").ctype.count(shape.pinned)
    counts = [located.count(i) for i in range(table.size)]
    checks["solution_count"] = max(counts) <= poles
    complete = len(models) == poles * table.size

    # prefer a start on which Q3 and its inverse disagree, so the sign is tested
    def informative(i):
        j = located[i]
        return (x_plus[j] != x_minus[j], x_plus[j] != j)

    pick = max((i for i in range(len(models)) if located[i] >= 0), key=informative)
    model, start = models[pick], located[pick]

    plan = PathPlan(circle_path(0, lam), max_step=0.05)
    moved = deform_lambda(model, plan)
    # relabel 1 +- s so the endpoint is again a solution in the starting normalization
    normal = moved.normalize_sign()
    image = locate(table, normal)
    predicted = {"Q3": x_plus[start], "Q3^-1": x_minus[start]}
    sign = 1 if image == predicted["Q3"] else -1 if image == predicted["Q3^-1"] else None
    checks["loop_matches_braid"] = sign is not None

    tol = mpmath.mpf(2) ** (16 - mpmath.mp.prec)
    hits = [i for i, m in enumerate(models) if normal.distance(m) < tol * 2**16]
    permutes = len(hits) == 1 and located[hits[0]] == image
    checks["endpoint_is_solution"] = permutes

    back = deform_lambda(moved, plan.reversed())
    err = back.distance(model)
    checks["round_trip"] = bool(err < tol)
    return ToyRun(table.size, len(models), located, image, predicted, sign, err, permutes, complete, checks)
