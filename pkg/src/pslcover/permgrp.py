"""Permutation arithmetic and the group machinery needed for Nielsen classes.

Conventions
-----------
* Permutations act on the *right* and compose left-to-right:
  ``(a * b)[x] == b[a[x]]``, i.e. ``x^(ab) = (x^a)^b``.
* Internally points are 0-based (``0 .. n-1``).  Every external surface
  (JSON, cycle notation, CLI output) is 1-based.
* The matrix model of GL_d(2) acts on row vectors, ``v -> v M``, which is
  compatible with the composition order above.  A nonzero vector with
  coordinates ``(v_1, ..., v_d)`` has binary value ``sum v_i 2^(i-1)`` and is
  the point ``value - 1``.
"""

from __future__ import annotations

import math
import random
import re
import warnings
from collections import deque
from dataclasses import dataclass, field
from functools import reduce
from typing import Iterable, Sequence


class DegreeMismatch(ValueError):
    pass


class NotTransitive(ValueError):
    pass


class NotFound(RuntimeError):
    """Random search ran out of budget.  This is inconclusive, not a proof of absence."""


class RankMismatch(ValueError):
    pass


class Perm:
    """An immutable permutation of ``{0, ..., n-1}`` stored as an image tuple."""

    __slots__ = ("img", "_hash")

    def __init__(self, images: Iterable[int], check: bool = True):
        img = tuple(images)
        if check and sorted(img) != list(range(len(img))):
            raise ValueError("images do not form a permutation")
        self.img = img
        self._hash = None

    @classmethod
    def identity(cls, n: int) -> Perm:
        return cls(range(n), check=False)

    @classmethod
    def from_cycles(cls, n: int, *cycles: Sequence[int]) -> Perm:
        """Build from 1-based cycles, e.g. ``Perm.from_cycles(3, (1, 2, 3))``."""
        img = list(range(n))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                img[a - 1] = b - 1
        return cls(img)

    @classmethod
    def from_images1(cls, images: Sequence[int]) -> Perm:
        return cls(i - 1 for i in images)

    @property
    def degree(self) -> int:
        return len(self.img)

    def images1(self) -> list[int]:
        return [i + 1 for i in self.img]

    def __getitem__(self, x: int) -> int:
        return self.img[x]

    def __len__(self):
        return len(self.img)

    def __mul__(self, other: Perm) -> Perm:
        if len(self.img) != len(other.img):
            raise DegreeMismatch(f"degrees {len(self.img)} and {len(other.img)}")
        return Perm(map(other.img.__getitem__, self.img), check=False)

    def __invert__(self) -> Perm:
        inv = [0] * len(self.img)
        for i, j in enumerate(self.img):
            inv[j] = i
        return Perm(inv, check=False)

    inverse = __invert__

    def __pow__(self, k: int) -> Perm:
        if k < 0:
            return (~self) ** (-k)
        result = Perm.identity(len(self.img))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self, h: Perm) -> Perm:
        """``h^-1 * self * h``."""
        return ~h * self * h

    def __eq__(self, other):
        return isinstance(other, Perm) and self.img == other.img

    def __lt__(self, other: Perm):
        return self.img < other.img

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.img)
        return self._hash

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.img))

    def cycles(self) -> list[tuple[int, ...]]:
        """All cycles (0-based), fixed points included."""
        seen = [False] * len(self.img)
        out = []
        for start in range(len(self.img)):
            if seen[start]:
                continue
            cyc = []
            x = start
            while not seen[x]:
                seen[x] = True
                cyc.append(x)
                x = self.img[x]
            out.append(tuple(cyc))
        return out

    def cycle_lengths(self) -> list[int]:
        return [len(c) for c in self.cycles()]

    def cycle_type(self) -> CycleType:
        return CycleType.from_lengths(self.cycle_lengths())

    def order(self) -> int:
        return reduce(math.lcm, self.cycle_lengths(), 1)

    def fixed_points(self) -> list[int]:
        return [i for i, j in enumerate(self.img) if i == j]

    def __repr__(self):
        cyc = [c for c in self.cycles() if len(c) > 1]
        if not cyc:
            return f"Perm(id, n={len(self.img)})"
        body = "".join("(" + ",".join(str(x + 1) for x in c) + ")" for c in cyc)
        return f"Perm({body}, n={len(self.img)})"

    def to_json(self) -> dict:
        return {"degree": len(self.img), "images": self.images1()}

    @classmethod
    def from_json(cls, obj: dict) -> Perm:
        p = cls.from_images1(obj["images"])
        if p.degree != obj["degree"]:
            raise ValueError("degree field disagrees with image list")
        return p


def compose(a: Perm, b: Perm) -> Perm:
    return a * b


def inverse(a: Perm) -> Perm:
    return ~a


def cycle_type(a: Perm) -> CycleType:
    return a.cycle_type()


_CT_TOKEN = re.compile(r"^(\d+)(?:\^(\d+))?$")


@dataclass(frozen=True, order=True)
class CycleType:
    """Multiset of cycle lengths, written like ``2^28.1^7``."""

    parts: tuple[tuple[int, int], ...]

    @classmethod
    def from_lengths(cls, lengths: Iterable[int]) -> CycleType:
        counts: dict[int, int] = {}
        for L in lengths:
            if L <= 0:
                raise ValueError("cycle lengths must be positive")
            counts[L] = counts.get(L, 0) + 1
        return cls(tuple(sorted(counts.items(), reverse=True)))

    @classmethod
    def parse(cls, text: str | CycleType) -> CycleType:
        if isinstance(text, CycleType):
            return text
        lengths = []
        prev = None
        for tok in text.strip().split("."):
            m = _CT_TOKEN.match(tok.strip())
            if not m:
                raise ValueError(f"bad cycle type token {tok!r} in {text!r}")
            L, c = int(m.group(1)), int(m.group(2) or 1)
            if prev is not None and L >= prev:
                raise ValueError(f"lengths must be strictly decreasing in {text!r}")
            prev = L
            lengths += [L] * c
        return cls.from_lengths(lengths)

    @property
    def degree(self) -> int:
        return sum(L * c for L, c in self.parts)

    @property
    def index(self) -> int:
        """Riemann-Hurwitz contribution ``sum (length - 1) * count``."""
        return sum((L - 1) * c for L, c in self.parts)

    def lengths(self) -> list[int]:
        return [L for L, c in self.parts for _ in range(c)]

    def count(self, length: int) -> int:
        return dict(self.parts).get(length, 0)

    def __str__(self):
        return ".".join(f"{L}^{c}" for L, c in self.parts)


# ---------------------------------------------------------------------------
# orbits and Schreier-Sims


def orbits(gens: Sequence[Perm], points: Iterable[int] | None = None, degree: int | None = None):
    """Partition ``points`` (default: all) into orbits of ``<gens>``.

    Orbits are returned as sorted lists, ordered by their smallest element.
    """
    if degree is None:
        if not gens:
            raise ValueError("degree required when there are no generators")
        degree = gens[0].degree
    pts = sorted(set(range(degree) if points is None else points))
    seen = set()
    result = []
    for p in pts:
        if p in seen:
            continue
        orb = {p}
        queue = [p]
        while queue:
            x = queue.pop()
            for g in gens:
                y = g.img[x]
                if y not in orb:
                    orb.add(y)
                    queue.append(y)
        seen |= orb
        result.append(sorted(orb))
    return result


def is_transitive(gens: Sequence[Perm], degree: int | None = None) -> bool:
    return len(orbits(gens, degree=degree)) == 1


def orbit_transversal(gens: Sequence[Perm], point: int) -> dict[int, Perm]:
    """Map each point of the orbit to an element carrying ``point`` there."""
    n = gens[0].degree
    trans = {point: Perm.identity(n)}
    queue = deque([point])
    while queue:
        x = queue.popleft()
        u = trans[x]
        for g in gens:
            y = g.img[x]
            if y not in trans:
                trans[y] = u * g
                queue.append(y)
    return trans


def schreier_generators(gens: Sequence[Perm], point: int) -> list[Perm]:
    """Schreier generators of the stabilizer of ``point`` (identity dropped, deduplicated)."""
    trans = orbit_transversal(gens, point)
    out = set()
    for x, u in trans.items():
        for g in gens:
            s = u * g * ~trans[g.img[x]]
            if not s.is_identity():
                out.add(s)
    return sorted(out)


class StabChain:
    """Base and strong generating set.

    ``gens[i]`` are the strong generators fixing ``base[:i]`` pointwise and
    ``trans[i][x]`` is an element of ``<gens[i]>`` mapping ``base[i]`` to ``x``.
    """

    def __init__(self, degree: int):
        self.degree = degree
        self.base: list[int] = []
        self.gens: list[list[Perm]] = []
        self.trans: list[dict[int, Perm]] = []

    def order(self) -> int:
        return math.prod(len(t) for t in self.trans)

    def sift(self, g: Perm) -> tuple[Perm, int]:
        """Strip ``g`` through the chain; returns the residue and the level it stopped at."""
        for i, b in enumerate(self.base):
            x = g.img[b]
            u = self.trans[i].get(x)
            if u is None:
                return g, i
            g = g * ~u
        return g, len(self.base)

    def contains(self, g: Perm) -> bool:
        if g.degree != self.degree:
            return False
        h, _ = self.sift(g)
        return h.is_identity()

    __contains__ = contains

    def random_element(self, rng: random.Random) -> Perm:
        g = Perm.identity(self.degree)
        for t in reversed(self.trans):
            g = g * rng.choice(list(t.values()))
        return g

    def _add(self, h: Perm, level: int) -> None:
        if level == len(self.base):
            moved = next(i for i, j in enumerate(h.img) if i != j)
            self.base.append(moved)
            self.gens.append([])
            self.trans.append({moved: Perm.identity(self.degree)})
        for i in range(level + 1):
            self.gens[i].append(h)
            self._extend_orbit(i)

    def _extend_orbit(self, i: int) -> None:
        trans = self.trans[i]
        gens = self.gens[i]
        queue = deque(trans)
        while queue:
            x = queue.popleft()
            u = trans[x]
            for g in gens:
                y = g.img[x]
                if y not in trans:
                    trans[y] = u * g
                    queue.append(y)

    def strong_generators(self) -> list[Perm]:
        return list(self.gens[0]) if self.gens else []


def bsgs(gens: Sequence[Perm], rng: random.Random | None = None, random_rounds: int = 30) -> StabChain:
    """Schreier-Sims: a randomized phase followed by deterministic verification.

    The randomized phase only accelerates the construction; the order is
    reported only after every Schreier generator at every level sifts to the
    identity.
    """
    if not gens:
        raise ValueError("need at least one generator")
    n = gens[0].degree
    if any(g.degree != n for g in gens):
        raise DegreeMismatch("generators of different degrees")
    rng = rng or random.Random(0)
    chain = StabChain(n)
    for g in gens:
        h, lvl = chain.sift(g)
        if not h.is_identity():
            chain._add(h, lvl)
    if not chain.base:
        return chain

    # product replacement
    pool = list(gens) * max(1, 10 // len(gens) + 1)
    pool = pool[:10]
    acc = Perm.identity(n)
    hits = 0
    while hits < random_rounds:
        i, j = rng.sample(range(len(pool)), 2) if len(pool) > 1 else (0, 0)
        pool[i] = pool[i] * pool[j] if rng.random() < 0.5 else pool[j] * pool[i]
        acc = acc * pool[i]
        h, lvl = chain.sift(acc)
        if h.is_identity():
            hits += 1
        else:
            chain._add(h, lvl)
            hits = 0

    _verify_chain(chain)
    return chain


def _verify_chain(chain: StabChain) -> None:
    i = len(chain.base) - 1
    while i >= 0:
        restart = None
        for x, u in list(chain.trans[i].items()):
            for s in list(chain.gens[i]):
                sg = u * s * ~chain.trans[i][s.img[x]]
                if sg.is_identity():
                    continue
                h, lvl = chain.sift(sg)
                if not h.is_identity():
                    chain._add(h, lvl)
                    restart = lvl
                    break
            if restart is not None:
                break
        if restart is not None:
            i = min(restart, len(chain.base) - 1)
        else:
            i -= 1


def group_order(gens: Sequence[Perm], rng: random.Random | None = None) -> int:
    return bsgs(gens, rng).order()


def is_two_transitive(gens: Sequence[Perm]) -> bool:
    if not gens:
        return False
    n = gens[0].degree
    if n < 2 or not is_transitive(gens):
        return False
    stab = schreier_generators(gens, 0)
    if not stab:
        return n == 2
    return len(orbits(stab, range(1, n), degree=n)) == 1


# ---------------------------------------------------------------------------
# tuples up to simultaneous conjugation


def _check_tuple(A: Sequence[Perm]) -> int:
    n = A[0].degree
    if any(g.degree != n for g in A):
        raise DegreeMismatch("tuple entries of different degrees")
    if not is_transitive(list(A)):
        raise NotTransitive("tuple does not generate a transitive group")
    return n


def _propagate(A: Sequence[Perm], B: Sequence[Perm], start: int) -> list[int] | None:
    """Try to build h with h(0) = start and h(A_i(x)) = B_i(h(x)); None if inconsistent."""
    n = A[0].degree
    h = [-1] * n
    used = [False] * n
    h[0] = start
    used[start] = True
    queue = [0]
    for x in queue:
        hx = h[x]
        for a, b in zip(A, B):
            y = a.img[x]
            hy = b.img[hx]
            if h[y] < 0:
                if used[hy]:
                    return None
                h[y] = hy
                used[hy] = True
                queue.append(y)
            elif h[y] != hy:
                return None
    return h


def tuple_conjugator(A: Sequence[Perm], B: Sequence[Perm]) -> Perm | None:
    """Return h with ``h^-1 A_i h == B_i`` for all i, or None if no such h exists."""
    A = list(A)
    B = list(B)
    if len(A) != len(B):
        raise ValueError("tuples of different lengths")
    n = _check_tuple(A)
    if any(b.degree != n for b in B):
        raise DegreeMismatch("tuples of different degrees")
    for c in range(n):
        h = _propagate(A, B, c)
        if h is not None:
            return Perm(h, check=False)
    return None


def all_conjugators(A: Sequence[Perm], B: Sequence[Perm]) -> list[Perm]:
    A = list(A)
    B = list(B)
    n = _check_tuple(A)
    out = []
    for c in range(n):
        h = _propagate(A, B, c)
        if h is not None:
            out.append(Perm(h, check=False))
    return out


def _relabel_key(imgs: Sequence[tuple[int, ...]], root: int, n: int, best):
    """BFS relabeling from ``root``; returns the relabeled flat image tuple.

    Gives up early (returns None) as soon as the result is known to be
    lexicographically larger than ``best``.
    """
    label = [-1] * n
    order = [root]
    label[root] = 0
    nxt = 1
    for x in order:
        for g in imgs:
            y = g[x]
            if label[y] < 0:
                label[y] = nxt
                nxt += 1
                order.append(y)
    if nxt != n:
        raise NotTransitive("tuple does not generate a transitive group")
    out = []
    pos = 0
    for g in imgs:
        for x in order:
            v = label[g[x]]
            if best is not None:
                b = best[pos]
                if v > b:
                    return None
                if v < b:
                    best = None
            out.append(v)
            pos += 1
    return tuple(out)


def canonical_key(A: Sequence[Perm]) -> tuple[int, ...]:
    """Hashable canonical form of a transitive tuple up to S_n-conjugation."""
    n = A[0].degree
    imgs = [g.img for g in A]
    best = None
    for r in range(n):
        key = _relabel_key(imgs, r, n, best)
        if key is not None and (best is None or key < best):
            best = key
    return best


def key_to_tuple(key: Sequence[int], n: int) -> tuple[Perm, ...]:
    return tuple(Perm(key[i:i + n], check=False) for i in range(0, len(key), n))


def canonical_tuple(A: Sequence[Perm]) -> tuple[Perm, ...]:
    """Lexicographic minimum over all BFS relabelings, one per choice of root.

    Two transitive tuples have the same canonical form iff they are
    simultaneously conjugate in S_n.  This is an inner-class invariant only when
    the generated group is self-normalizing in S_n (true for PSL_d(2) on points).
    """
    return key_to_tuple(canonical_key(A), A[0].degree)


# ---------------------------------------------------------------------------
# the matrix model of GL_d(2) = PSL_d(2)


@dataclass(frozen=True)
class MatF2:
    """Square matrix over F_2; ``rows[i]`` is a bitmask of row i."""

    rows: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, d: int) -> MatF2:
        return cls(tuple(1 << i for i in range(d)))

    def apply(self, v: int) -> int:
        """Row vector times matrix."""
        out = 0
        i = 0
        while v:
            if v & 1:
                out ^= self.rows[i]
            v >>= 1
            i += 1
        return out

    def __mul__(self, other: MatF2) -> MatF2:
        return MatF2(tuple(other.apply(r) for r in self.rows))

    def __add__(self, other: MatF2) -> MatF2:
        return MatF2(tuple(a ^ b for a, b in zip(self.rows, other.rows)))

    def rank(self) -> int:
        return len(_row_echelon(list(self.rows)))

    def is_invertible(self) -> bool:
        return self.rank() == self.dim

    def to_perm(self) -> Perm:
        n = (1 << self.dim) - 1
        return Perm((self.apply(v) - 1 for v in range(1, n + 1)), check=False)

    def order(self) -> int:
        return self.to_perm().order()


def _row_echelon(rows: list[int]) -> list[int]:
    basis: list[int] = []
    for r in rows:
        for b in basis:
            r = min(r, r ^ b)
        if r:
            basis.append(r)
            basis.sort(reverse=True)
    return basis


def perm_to_matrix(g: Perm) -> MatF2:
    """Recover the matrix inducing ``g`` on nonzero vectors (rows = images of basis vectors)."""
    n = g.degree
    d = (n + 1).bit_length() - 1
    if (1 << d) - 1 != n:
        raise ValueError(f"degree {n} is not 2^d - 1")
    M = MatF2(tuple(g.img[(1 << i) - 1] + 1 for i in range(d)))
    if M.to_perm() != g:
        raise ValueError("permutation is not induced by a linear map")
    return M


def gl2_generators(d: int) -> tuple[list[MatF2], list[Perm]]:
    """Generators of GL_d(2): an elementary transvection and the cyclic coordinate shift."""
    if d < 2:
        raise ValueError("need d >= 2")
    T = list(MatF2.identity(d).rows)
    T[0] ^= 1 << 1
    shift = tuple(1 << ((i + 1) % d) for i in range(d))
    mats = [MatF2(tuple(T)), MatF2(shift)]
    return mats, [M.to_perm() for M in mats]


def psl62_generators() -> tuple[list[MatF2], list[Perm]]:
    return gl2_generators(6)


def gl2_order(d: int) -> int:
    return math.prod((1 << d) - (1 << i) for i in range(d))


PSL62_ORDER = gl2_order(6)  # 20 158 709 760


def class_rep(ct: CycleType | str, chain: StabChain, rng: random.Random, budget: int = 10**6) -> Perm:
    """Random element of the group with the given cycle type.

    Each sampled element is also examined through its powers, since small
    classes (transvections, say) are far too rare for plain rejection
    sampling.  Raises :class:`NotFound` when the budget is exhausted.
    """
    ct = CycleType.parse(ct)
    target = ct.lengths()
    target.sort()
    for _ in range(budget):
        g = chain.random_element(rng)
        lens = g.cycle_lengths()
        o = reduce(math.lcm, lens, 1)
        for k in range(1, o):
            if o % k:
                continue
            pl = []
            for L in lens:
                c = math.gcd(L, k)
                pl += [L // c] * c
            pl.sort()
            if pl == target:
                return g ** k
    raise NotFound(f"no element of cycle type {ct} within {budget} samples")


def distinguished_fixed_point(g: Perm, M: MatF2 | None = None) -> int:
    """The unique fixed point of a transvection that its centralizer also fixes.

    It is the single nonzero vector in the image of ``v -> v (M + I)``.
    """
    if M is None:
        M = perm_to_matrix(g)
    N = M + MatF2.identity(M.dim)
    basis = _row_echelon(list(N.rows))
    if len(basis) != 1:
        raise RankMismatch(f"rank of M + I is {len(basis)}, expected 1")
    if (N * N).rank() != 0:
        raise RankMismatch("(M + I)^2 != 0")
    point = basis[0] - 1
    if g.img[point] != point:
        raise RankMismatch("image vector is not fixed by g")
    return point


def identify_psl62(gens: Sequence[Perm]) -> bool:
    """True iff the group is 2-transitive of degree 63 with |PSL_6(2)| elements."""
    if not gens or gens[0].degree != 63:
        return False
    if not is_two_transitive(gens):
        return False
    return bsgs(gens).order() == PSL62_ORDER


def symmetric_generators(n: int) -> list[Perm]:
    if n == 1:
        return [Perm.identity(1)]
    if n == 2:
        return [Perm.from_cycles(2, (1, 2))]
    return [Perm.from_cycles(n, (1, 2)), Perm.from_cycles(n, tuple(range(1, n + 1)))]


@dataclass
class PermGroup:
    """A named permutation group with a lazily built stabilizer chain."""

    name: str
    gens: list[Perm]
    matrices: list[MatF2] | None = None
    _chain: StabChain | None = field(default=None, repr=False)

    @property
    def degree(self) -> int:
        return self.gens[0].degree

    @property
    def chain(self) -> StabChain:
        if self._chain is None:
            self._chain = bsgs(self.gens)
        return self._chain

    @property
    def order(self) -> int:
        return self.chain.order()

    def identify(self, gens: Sequence[Perm]) -> bool:
        """Does ``<gens>`` equal this group?  (Assumes ``gens`` lie in it.)"""
        if self.name == "psl62":
            return identify_psl62(gens)
        return bsgs(gens).order() == self.order


def named_group(name: str) -> PermGroup:
    """``psl62``, ``psl32`` (GL_d(2) on nonzero vectors, any d) or ``S<n>``."""
    key = name.lower()
    m = re.fullmatch(r"psl(\d)2", key)
    if m:
        mats, perms = gl2_generators(int(m.group(1)))
        return PermGroup(key, perms, mats)
    m = re.fullmatch(r"s(\d+)", key)
    if m:
        return PermGroup(key, symmetric_generators(int(m.group(1))))
    raise ValueError(f"unknown group {name!r}")


def warn_if_not_self_normalizing(group: PermGroup) -> None:
    if group.name.startswith("s"):
        return
    if not group.name.startswith("psl"):
        warnings.warn(
            f"canonical forms are S_n-conjugacy classes; {group.name} is not known to be "
            "self-normalizing, so distinct inner classes may be merged",
            stacklevel=2,
        )
