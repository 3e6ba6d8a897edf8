"""Nielsen classes, the Hurwitz braid action and the induced family monodromy.

Tuples are ordered ``(s_1, ..., s_k)`` with ``s_1 s_2 ... s_k = 1`` under the
left-to-right product of :mod:`pslcover.permgrp`.  The braid move ``Q_i``
(1-based) sends ``(.., s_i, s_{i+1}, ..)`` to ``(.., s_{i+1}, s_{i+1}^-1 s_i s_{i+1}, ..)``.
"""

from __future__ import annotations

import logging
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .permgrp import (
    CycleType,
    NotFound,
    Perm,
    PermGroup,
    canonical_key,
    class_rep,
    is_transitive,
    key_to_tuple,
    named_group,
)

log = logging.getLogger(__name__)


class ParityError(ValueError):
    pass


class BudgetExhausted(RuntimeError):
    pass


class EscapesOrbit(LookupError):
    pass


class NoMatch(LookupError):
    pass


class Primitive(ValueError):
    pass


class InconsistentCover(ValueError):
    pass


def rh_genus(degree: int, types: Sequence[CycleType | str]) -> int:
    """Genus of a connected cover from its branch cycle types."""
    total = 0
    for t in types:
        t = CycleType.parse(t)
        if t.degree != degree:
            raise ValueError(f"cycle type {t} does not have degree {degree}")
        total += t.index
    two_g = total - 2 * degree + 2
    if two_g < 0 or two_g % 2:
        raise ParityError(f"Riemann-Hurwitz gives 2g = {two_g}")
    return two_g // 2


@dataclass(frozen=True)
class ClassVector:
    degree: int
    classes: tuple[CycleType, ...]
    group: str = "psl62"

    @classmethod
    def parse(cls, classes: Sequence[str | CycleType] | str, group: str = "psl62") -> ClassVector:
        if isinstance(classes, str):
            classes = classes.split(",")
        cts = tuple(CycleType.parse(c) for c in classes)
        if len(cts) < 3:
            raise ValueError("need at least three classes")
        n = cts[0].degree
        if any(c.degree != n for c in cts):
            raise ValueError("cycle types of different degrees")
        return cls(n, cts, group)

    def __len__(self):
        return len(self.classes)

    def labels(self) -> list[str]:
        return [str(c) for c in self.classes]


PSL62_CLASSES = ("2^28.1^7", "2^16.1^31", "3^20.1^3", "3^20.1^3")
FAMILY_TARGETS = ("6^5.4^4.2^1", "7^4.4^3.3^2.2^1", "2^24")


@dataclass(frozen=True)
class GenTuple:
    perms: tuple[Perm, ...]
    classes: ClassVector
    verified: bool = False

    @property
    def degree(self) -> int:
        return self.perms[0].degree

    def product(self) -> Perm:
        p = Perm.identity(self.degree)
        for g in self.perms:
            p = p * g
        return p

    def check(self) -> None:
        if not self.product().is_identity():
            raise ValueError("tuple is not product-one")
        for g, c in zip(self.perms, self.classes.classes):
            if g.cycle_type() != c:
                raise ValueError(f"entry has type {g.cycle_type()}, expected {c}")

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "class_vector": self.classes.labels(),
            "group": self.classes.group,
            "perms": [g.images1() for g in self.perms],
            "verified": self.verified,
        }

    @classmethod
    def from_json(cls, obj: dict) -> GenTuple:
        cv = ClassVector.parse(obj["class_vector"], obj.get("group", "psl62"))
        perms = tuple(Perm.from_images1(p) for p in obj["perms"])
        if any(p.degree != obj["degree"] for p in perms):
            raise ValueError("degree field disagrees with permutations")
        t = cls(perms, cv, bool(obj.get("verified", False)))
        t.check()
        return t


def search_tuple(
    cv: ClassVector,
    rng: random.Random,
    group: PermGroup | None = None,
    budget: int = 10**5,
    rep_budget: int = 10**6,
) -> GenTuple:
    """Random product-one generating tuple in the given classes."""
    group = group or named_group(cv.group)
    if group.degree != cv.degree:
        raise ValueError("group degree and class vector degree differ")
    chain = group.chain
    try:
        reps = [class_rep(c, chain, rng, rep_budget) for c in cv.classes[:-1]]
    except NotFound as exc:
        raise BudgetExhausted(str(exc)) from exc
    last = cv.classes[-1]
    first = reps[0]
    for _ in range(budget):
        perms = [first]
        for r in reps[1:]:
            perms.append(r.conj(chain.random_element(rng)))
        prod = Perm.identity(cv.degree)
        for g in perms:
            prod = prod * g
        tail = ~prod
        if tail.cycle_type() != last:
            continue
        perms.append(tail)
        if not is_transitive(perms):
            continue
        if group.identify(perms):
            return GenTuple(tuple(perms), cv, verified=True)
    raise BudgetExhausted(f"no generating tuple in {budget} trials")


# ---------------------------------------------------------------------------
# braid moves


@dataclass(frozen=True)
class BraidWord:
    """Letters ``(i, sign)`` with 1-based ``i``; applied left to right."""

    letters: tuple[tuple[int, int], ...] = ()

    @classmethod
    def parse(cls, text: str) -> BraidWord:
        """``"Q3 Q2^-1 Q2"``-style words; empty string is the empty word."""
        letters = []
        for tok in text.replace("*", " ").split():
            tok = tok.strip()
            if not tok.upper().startswith("Q"):
                raise ValueError(f"bad braid letter {tok!r}")
            body = tok[1:]
            sign = 1
            if "^" in body:
                body, e = body.split("^")
                sign = int(e)
                if sign not in (1, -1):
                    raise ValueError(f"exponent must be +-1 in {tok!r}")
            letters.append((int(body), sign))
        return cls(tuple(letters))

    def inverse(self) -> BraidWord:
        return BraidWord(tuple((i, -s) for i, s in reversed(self.letters)))

    def __add__(self, other: BraidWord) -> BraidWord:
        return BraidWord(self.letters + other.letters)

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return " ".join(f"Q{i}" if s == 1 else f"Q{i}^-1" for i, s in self.letters)


def braid_move(perms: Sequence[Perm], i: int, sign: int = 1) -> tuple[Perm, ...]:
    k = len(perms)
    if not 1 <= i <= k - 1:
        raise IndexError(f"braid index {i} outside 1..{k - 1}")
    out = list(perms)
    a, b = perms[i - 1], perms[i]
    if sign == 1:
        out[i - 1], out[i] = b, a.conj(b)
    elif sign == -1:
        out[i - 1], out[i] = b.conj(~a), a
    else:
        raise ValueError("sign must be +1 or -1")
    return tuple(out)


def apply_word(perms: Sequence[Perm], word: BraidWord) -> tuple[Perm, ...]:
    out = tuple(perms)
    for i, s in word.letters:
        out = braid_move(out, i, s)
    return out


def pure_braid(i: int, j: int) -> BraidWord:
    """``A_ij = Q_{j-1} ... Q_{i+1} Q_i^2 Q_{i+1}^-1 ... Q_{j-1}^-1`` for ``i < j``."""
    if not i < j:
        raise ValueError("need i < j")
    head = [(m, 1) for m in range(j - 1, i, -1)]
    return BraidWord(tuple(head + [(i, 1), (i, 1)] + [(m, -1) for m in range(i + 1, j)]))


def straight_generators(cv: ClassVector) -> list[BraidWord]:
    k = len(cv)
    gens = [pure_braid(i, j) for i in range(1, k) for j in range(i + 1, k + 1)]
    for j in range(1, k):
        if cv.classes[j - 1] == cv.classes[j]:
            gens.append(BraidWord(((j, 1),)))
    return gens


# ---------------------------------------------------------------------------
# orbits


@dataclass
class OrbitTable:
    """Canonical tuples of a braid orbit with move maps on their indices.

    Straight (class-preserving) tuples occupy indices ``0 .. size-1``.  When
    the table is extended to the full Hurwitz orbit, the remaining
    class-permuted tuples follow and ``full_moves`` records ``Q_i`` for all i.
    """

    degree: int
    classes: ClassVector
    keys: list[tuple[int, ...]]
    index: dict[tuple[int, ...], int]
    moves: dict[str, list[int]]
    size: int
    full_moves: dict[int, list[int]] = field(default_factory=dict)
    x: Perm | None = None
    y: Perm | None = None
    z: Perm | None = None
    words: tuple[BraidWord, BraidWord, BraidWord] | None = None

    def tuple_at(self, idx: int) -> tuple[Perm, ...]:
        return key_to_tuple(self.keys[idx], self.degree)

    def locate(self, perms: Sequence[Perm]) -> int:
        key = canonical_key(perms)
        try:
            return self.index[key]
        except KeyError:
            raise EscapesOrbit("tuple is not in the orbit table") from None

    def is_straight(self, perms: Sequence[Perm]) -> bool:
        return tuple(g.cycle_type() for g in perms) == self.classes.classes

    def to_json(self) -> dict:
        out = {
            "degree": self.degree,
            "class_vector": self.classes.labels(),
            "group": self.classes.group,
            "size": self.size,
            "tuples": [[g.images1() for g in self.tuple_at(i)] for i in range(self.size)],
            "moves": {k: [v + 1 for v in m] for k, m in self.moves.items()},
        }
        for name in "xyz":
            p = getattr(self, name)
            if p is not None:
                out[name] = p.images1()
        if self.words:
            out["words"] = [str(w) for w in self.words]
        return out

    @classmethod
    def from_json(cls, obj: dict) -> OrbitTable:
        cv = ClassVector.parse(obj["class_vector"], obj.get("group", "psl62"))
        keys = []
        for t in obj["tuples"]:
            perms = [Perm.from_images1(p) for p in t]
            keys.append(canonical_key(perms))
        table = cls(
            degree=obj["degree"],
            classes=cv,
            keys=keys,
            index={k: i for i, k in enumerate(keys)},
            moves={k: [v - 1 for v in m] for k, m in obj["moves"].items()},
            size=obj["size"],
        )
        for name in "xyz":
            if name in obj:
                setattr(table, name, Perm.from_images1(obj[name]))
        if "words" in obj:
            table.words = tuple(BraidWord.parse(w) for w in obj["words"])
        return table


def _closure(seeds, gens: Sequence[BraidWord], keys, index, degree, accept=None):
    moves = {str(w): {} for w in gens}
    queue = deque(seeds)
    while queue:
        idx = queue.popleft()
        perms = key_to_tuple(keys[idx], degree)
        for w in gens:
            image = apply_word(perms, w)
            key = canonical_key(image)
            j = index.get(key)
            if j is None:
                if accept is not None and not accept(image):
                    raise EscapesOrbit(f"{w} leaves the admissible tuples")
                j = len(keys)
                keys.append(key)
                index[key] = j
                queue.append(j)
            moves[str(w)][idx] = j
    return moves


def braid_orbit(T: GenTuple | Sequence[Perm], classes: ClassVector | None = None, full: bool = False) -> OrbitTable:
    """Closure of ``T`` under the straightness-preserving braid subgroup.

    With ``full=True`` the table is then extended by the full Hurwitz action
    (``Q_1 .. Q_{k-1}``), keeping straight tuples first.
    """
    if isinstance(T, GenTuple):
        classes = T.classes
        perms = T.perms
    else:
        perms = tuple(T)
        if classes is None:
            classes = ClassVector(perms[0].degree, tuple(g.cycle_type() for g in perms), "s%d" % perms[0].degree)
    degree = perms[0].degree
    gens = straight_generators(classes)
    key0 = canonical_key(perms)
    keys = [key0]
    index = {key0: 0}

    def straight(t):
        return tuple(g.cycle_type() for g in t) == classes.classes

    raw = _closure([0], gens, keys, index, degree, accept=straight)
    m = len(keys)
    table = OrbitTable(
        degree=degree,
        classes=classes,
        keys=keys,
        index=index,
        moves={w: [raw[w][i] for i in range(m)] for w in raw},
        size=m,
    )
    if full:
        extend_hurwitz(table)
    return table


def extend_hurwitz(table: OrbitTable) -> None:
    k = len(table.classes)
    gens = [BraidWord(((i, 1),)) for i in range(1, k)]
    raw = _closure(range(len(table.keys)), gens, table.keys, table.index, table.degree)
    n = len(table.keys)
    # closure only queued new tuples; straight ones were seeded so all are covered
    for i, w in enumerate(gens, start=1):
        table.full_moves[i] = [raw[str(w)][j] for j in range(n)]


def _letter_perm(table: OrbitTable, i: int, sign: int) -> list[int]:
    m = table.full_moves[i]
    if sign == 1:
        return m
    inv = [0] * len(m)
    for a, b in enumerate(m):
        inv[b] = a
    return inv


def word_map(table: OrbitTable, word: BraidWord) -> list[int]:
    """Image list of the word on all table indices (requires the full Hurwitz table)."""
    n = len(table.keys)
    cur = list(range(n))
    for i, s in word.letters:
        m = _letter_perm(table, i, s)
        cur = [m[c] for c in cur]
    return cur


def action_of_word(table: OrbitTable, word: BraidWord) -> Perm:
    """Permutation of the straight indices induced by ``word``."""
    m = table.size
    if table.full_moves and all(1 <= i < len(table.classes) for i, _ in word.letters):
        img = word_map(table, word)[:m]
        if any(v >= m for v in img):
            raise EscapesOrbit(f"{word} does not preserve the straight class")
        return Perm(img)
    img = []
    for idx in range(m):
        image = apply_word(table.tuple_at(idx), word)
        key = canonical_key(image)
        j = table.index.get(key)
        if j is None or j >= m:
            raise EscapesOrbit(f"{word} does not preserve the orbit")
        img.append(j)
    return Perm(img)


# ---------------------------------------------------------------------------
# family monodromy


def geometric_family_words(k: int = 4) -> tuple[BraidWord, BraidWord, BraidWord]:
    """Words for lambda-loops around 0 and 1 in a ``(0, inf, 1+s, 1-s)`` layout.

    A small loop of lambda around 0 is a half twist of the pair ``1 +- s``,
    which is ``Q_3``.  A loop around 1 makes ``1 - s`` circle the point 0:
    after rotating the tuple to ``(s_3, s_4, s_1, s_2)`` this is ``Q_2^2``.
    The third word is the inverse of the product of the first two.
    """
    if k != 4:
        raise ValueError("layout defined for four branch points")
    x = BraidWord(((3, 1),))
    # rotation (a,b,c,d) -> (c,d,a,b) realized as Q2 Q1 Q3 Q2; its inverse undoes it
    rot = BraidWord(((2, 1), (1, 1), (3, 1), (2, 1)))
    y = rot + BraidWord(((2, 1), (2, 1))) + rot.inverse()
    z = (x + y).inverse()
    return x, y, z


def _reduced_words(letters, maxlen):
    yield ()
    frontier = [()]
    for _ in range(maxlen):
        nxt = []
        for w in frontier:
            for a in letters:
                if w and w[-1] == (a[0], -a[1]):
                    continue
                nw = w + (a,)
                nxt.append(nw)
                yield nw
        frontier = nxt


@dataclass
class FamilyMatch:
    words: tuple[BraidWord, BraidWord, BraidWord]
    perms: tuple[Perm, Perm, Perm]


def find_family_words(
    table: OrbitTable,
    targets: Sequence[CycleType | str] = FAMILY_TARGETS,
    maxlen: int = 6,
    limit: int | None = None,
) -> list[FamilyMatch]:
    """All (x, y) word pairs with ``z = (xy)^-1`` realizing the target cycle types.

    Words run over ``Q_i^{+-1}`` of length at most ``maxlen``; only words
    preserving the straight class count.  Matches are sorted by total
    length then lexicographically.  Raises :class:`NoMatch` if none exist.
    """
    targets = [CycleType.parse(t) for t in targets]
    if not table.full_moves:
        extend_hurwitz(table)
    k = len(table.classes)
    m = table.size
    n = len(table.keys)
    letters = [(i, s) for i in range(1, k) for s in (1, -1)]
    inv = {(i, s): _letter_perm(table, i, s) for i, s in letters}

    # best word per induced permutation, for the x- and y-targets
    found: dict[int, dict[tuple[int, ...], tuple]] = {0: {}, 1: {}}
    stack = [((), list(range(n)))]
    while stack:
        w, cur = stack.pop()
        img = cur[:m]
        if all(v < m for v in img):
            p = tuple(img)
            ct = CycleType.from_lengths(Perm(p, check=False).cycle_lengths())
            for slot in (0, 1):
                if ct == targets[slot]:
                    prev = found[slot].get(p)
                    if prev is None or (len(w), w) < (len(prev), prev):
                        found[slot][p] = w
        if len(w) < maxlen:
            for a in letters:
                if w and w[-1] == (a[0], -a[1]):
                    continue
                mp = inv[a]
                stack.append((w + (a,), [mp[c] for c in cur]))

    def key(letters_):
        return (len(letters_), [(i, -s) for i, s in letters_])

    matches = []
    for px, wx in found[0].items():
        X = Perm(px, check=False)
        for py, wy in found[1].items():
            Y = Perm(py, check=False)
            Z = ~(X * Y)
            if Z.cycle_type() != targets[2]:
                continue
            if not is_transitive([X, Y, Z]):
                continue
            bx, by = BraidWord(wx), BraidWord(wy)
            matches.append(FamilyMatch((bx, by, (bx + by).inverse()), (X, Y, Z)))
    if not matches:
        raise NoMatch(f"no family words up to length {maxlen}")
    matches.sort(key=lambda f: (len(f.words[0]) + len(f.words[1]), key(f.words[0].letters), key(f.words[1].letters)))
    log.info("family words: %d matches", len(matches))
    if limit is not None:
        matches = matches[:limit]
    return matches


def set_family(table: OrbitTable, words: tuple[BraidWord, BraidWord, BraidWord]) -> None:
    x = action_of_word(table, words[0])
    y = action_of_word(table, words[1])
    table.x, table.y, table.z = x, y, ~(x * y)
    table.words = words


# ---------------------------------------------------------------------------
# blocks


def _find(parent, a):
    while parent[a] != a:
        parent[a] = parent[parent[a]]
        a = parent[a]
    return a


def _block_closure(gens: Sequence[Perm], a: int, b: int) -> list[int]:
    n = gens[0].degree
    parent = list(range(n))
    parent[_find(parent, b)] = _find(parent, a)
    pending = [(a, b)]
    while pending:
        u, v = pending.pop()
        for g in gens:
            ru, rv = _find(parent, g.img[u]), _find(parent, g.img[v])
            if ru != rv:
                parent[rv] = ru
                pending.append((g.img[u], g.img[v]))
    return [_find(parent, i) for i in range(n)]


@dataclass
class BlockSystem:
    blocks: list[list[int]]
    block_of: list[int]
    induced: tuple[Perm, ...]

    @property
    def block_size(self) -> int:
        return len(self.blocks[0])


def block_system(gens: Sequence[Perm]) -> BlockSystem:
    """Smallest nontrivial block system containing the block of point 0."""
    gens = list(gens)
    n = gens[0].degree
    if not is_transitive(gens):
        raise ValueError("group is not transitive")
    best = None
    for j in range(1, n):
        roots = _block_closure(gens, 0, j)
        size = roots.count(roots[0])
        if size < n and (best is None or size < best[0]):
            best = (size, roots)
            if size == 2:
                break
    if best is None:
        raise Primitive("no nontrivial block system")
    roots = best[1]
    labels: dict[int, int] = {}
    blocks: list[list[int]] = []
    block_of = [0] * n
    for i in range(n):
        r = roots[i]
        if r not in labels:
            labels[r] = len(blocks)
            blocks.append([])
        blocks[labels[r]].append(i)
        block_of[i] = labels[r]
    induced = tuple(Perm(block_of[g.img[b[0]]] for b in blocks) for g in gens)
    return BlockSystem(blocks, block_of, induced)


@dataclass
class FiberRamification:
    label: str
    ramified: list[int]
    split: list[int]
    ramified_cycles: list[tuple[int, ...]]


def degree2_branch_data(gens: Sequence[Perm], bs: BlockSystem, labels: Sequence[str] = ("0", "1", "inf")) -> list[FiberRamification]:
    """For each cycle of the induced action, decide whether the size-2 blocks over it ramify.

    An induced cycle of length e lies under either two e-cycles (split) or
    one 2e-cycle (ramified).
    """
    if bs.block_size != 2:
        raise ValueError("blocks must have size 2")
    out = []
    for g, h, label in zip(gens, bs.induced, labels):
        lengths = {}
        for c in g.cycles():
            for p in c:
                lengths[p] = len(c)
        ram, spl, ramc = [], [], []
        for c in h.cycles():
            e = len(c)
            a, b = bs.blocks[c[0]]
            la, lb = lengths[a], lengths[b]
            if la == lb == 2 * e:
                ram.append(e)
                ramc.append(c)
            elif la == lb == e:
                spl.append(e)
            else:
                raise InconsistentCover(f"block cycle of length {e} covered by lengths {la}, {lb}")
        out.append(FiberRamification(label, sorted(ram), sorted(spl), ramc))
    return out


def schreier_word(gens: Sequence[Perm], source: int, target: int) -> list[tuple[int, int]] | None:
    """Shortest word ``[(generator index, +-1), ...]`` moving ``source`` to ``target``."""
    if source == target:
        return []
    invs = [~g for g in gens]
    prev = {source: None}
    queue = deque([source])
    while queue:
        p = queue.popleft()
        for gi, g in enumerate(gens):
            for sign, h in ((1, g), (-1, invs[gi])):
                q = h.img[p]
                if q in prev:
                    continue
                prev[q] = (p, gi, sign)
                if q == target:
                    word = []
                    while prev[q] is not None:
                        p0, gi0, s0 = prev[q]
                        word.append((gi0, s0))
                        q = p0
                    return word[::-1]
                queue.append(q)
    return None
