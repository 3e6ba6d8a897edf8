"""Factor-degree patterns of ``p(X) q~(t0) - p~(t0) q(X)`` and subgroup orbit certificates."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ..permgrp import Perm, orbits, schreier_generators
from . import gfp
from .poly import Poly

DEFAULT_PRIMES = (67, 101, 127)
DEFAULT_POINTS = (2, 3, 5, 7, 11)


class AllSamplesDegenerate(RuntimeError):
    pass


@dataclass
class Sample:
    prime: int
    point: Fraction
    degrees: tuple[int, ...] | None
    reason: str = ""


@dataclass
class DegreePattern:
    degrees: tuple[int, ...]
    samples: list[Sample] = field(default_factory=list)
    disagreements: int = 0

    def to_json(self) -> dict:
        return {
            "degrees": list(self.degrees),
            "heuristic": True,
            "disagreeing_samples": self.disagreements,
            "samples": [
                {"prime": s.prime, "t0": str(s.point), "degrees": list(s.degrees) if s.degrees else None, "reason": s.reason}
                for s in self.samples
            ],
        }


def _can_group(parts: Sequence[int], targets: Sequence[int]) -> bool:
    """Can ``parts`` be split into groups whose sums are exactly ``targets``?"""
    if sum(parts) != sum(targets):
        return False
    parts = sorted(parts, reverse=True)
    bins = sorted(targets, reverse=True)
    room = list(bins)

    def place(i):
        if i == len(parts):
            return all(r == 0 for r in room)
        seen = set()
        for j, r in enumerate(room):
            if r >= parts[i] and r not in seen:
                seen.add(r)
                room[j] -= parts[i]
                if place(i + 1):
                    return True
                room[j] += parts[i]
        return False

    return place(0)


def _coarsenings(parts: Sequence[int]):
    """All multisets obtained by merging parts, finest first."""
    parts = list(parts)
    found = set()

    def rec(i, blocks):
        if i == len(parts):
            found.add(tuple(sorted(blocks)))
            return
        for j in range(len(blocks)):
            blocks[j] += parts[i]
            rec(i + 1, blocks)
            blocks[j] -= parts[i]
        blocks.append(parts[i])
        rec(i + 1, blocks)
        blocks.pop()

    rec(0, [])
    return sorted(found, key=lambda t: (-len(t), t))


def common_coarsening(patterns: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Finest degree multiset that every pattern refines."""
    seed = min(patterns, key=len)
    for cand in _coarsenings(seed):
        if all(_can_group(p, cand) for p in patterns):
            return cand
    return (sum(seed),)


def specialized(p: Poly, q: Poly, pt: Poly, qt: Poly, t0, prime: int) -> list[int]:
    """``p(X) qt(t0) - pt(t0) q(X)`` reduced mod ``prime`` (t0 reduced first)."""
    a = gfp.reduce_poly(p, prime)
    b = gfp.reduce_poly(q, prime)
    at = gfp.reduce_poly(pt, prime)
    bt = gfp.reduce_poly(qt, prime)
    x = gfp.reduce_coeff(Fraction(t0), prime)
    qv = gfp.evaluate(bt, x, prime)
    pv = gfp.evaluate(at, x, prime)
    return gfp.sub(gfp.scale(a, qv, prime), gfp.scale(b, pv, prime), prime)


def lemma31_degree_pattern(
    p: Poly,
    q: Poly,
    pt: Poly | None = None,
    qt: Poly | None = None,
    primes: Sequence[int] = DEFAULT_PRIMES,
    points: Sequence = DEFAULT_POINTS,
) -> DegreePattern:
    """Stable factor-degree multiset of ``p(X) qt(s) - pt(s) q(X)`` over specializations.

    Each usable sample (prime, t0) factors the specialization over F_prime.
    Reduction can only split factors further, so the samples are combined
    into their finest common coarsening.  Samples where the degree drops, the
    specialization is not squarefree, or the prime is inert in the
    coefficient field are skipped.
    """
    pt = p if pt is None else pt
    qt = q if qt is None else qt
    n = max(p.degree, q.degree)
    samples = []
    for prime in primes:
        for t0 in points:
            t0 = Fraction(t0)
            try:
                f = specialized(p, q, pt, qt, t0, prime)
            except (gfp.BadPrime, ValueError) as exc:
                samples.append(Sample(prime, t0, None, str(exc)))
                continue
            if len(f) - 1 != n:
                samples.append(Sample(prime, t0, None, "degree drops"))
                continue
            if len(gfp.gcd(f, gfp.deriv(f, prime), prime)) > 1:
                samples.append(Sample(prime, t0, None, "not squarefree"))
                continue
            degs = tuple(gfp.factor_degrees(f, prime))
            samples.append(Sample(prime, t0, degs))
    good = [s.degrees for s in samples if s.degrees]
    if not good:
        raise AllSamplesDegenerate("no usable specialization")
    degrees = common_coarsening(good)
    disagree = sum(1 for g in good if tuple(sorted(g)) != degrees)
    return DegreePattern(degrees, samples, disagree)


# ---------------------------------------------------------------------------
# orbit-length certificates in the matrix model


def hyperplane_points(normal: int, d: int = 6) -> list[int]:
    """Points (0-based) of the nonzero vectors orthogonal to ``normal``."""
    return [v - 1 for v in range(1, 1 << d) if bin(v & normal).count("1") % 2 == 0]


def setwise_stabilizer(gens: Sequence[Perm], block: Sequence[int], rng: random.Random, samples: int = 40) -> list[Perm]:
    """Generators of the setwise stabilizer of ``block`` via the orbit of the block.

    Works because the orbit of the block under the group is small; Schreier
    generators are built from a transversal of that orbit.
    """
    start = frozenset(block)
    trans = {start: Perm.identity(gens[0].degree)}
    queue = [start]
    for b in queue:
        u = trans[b]
        for g in gens:
            img = frozenset(g.img[x] for x in b)
            if img not in trans:
                trans[img] = u * g
                queue.append(img)
    out = set()
    for b, u in trans.items():
        for g in gens:
            img = frozenset(g.img[x] for x in b)
            s = u * g * ~trans[img]
            if not s.is_identity():
                out.add(s)
    return sorted(out)


def orbit_length_certificate(gens: Sequence[Perm], claimed: Sequence[int], seeds: str = "points+hyperplanes") -> bool:
    """Does a subgroup of index dividing the degree realize the claimed orbit lengths?

    Candidates are point stabilizers and (for degree 63) stabilizers of the
    hyperplane point-sets; each candidate's orbit of seeds must have length
    dividing the degree.  A negative answer only covers these candidates.
    """
    claimed = sorted(claimed)
    n = gens[0].degree
    cands = []
    if "points" in seeds:
        cands.append(schreier_generators(list(gens), 0))
    if "hyperplanes" in seeds and n == 63:
        rng = random.Random(0)
        block = hyperplane_points(1)
        cands.append(setwise_stabilizer(gens, block, rng))
    for sub in cands:
        if not sub:
            continue
        lengths = sorted(len(o) for o in orbits(sub, degree=n))
        if lengths == claimed:
            return True
    return False
