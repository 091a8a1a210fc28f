"""Finitely presented groups, Todd-Coxeter coset enumeration, and branched-cover groups.

Words are tuples of signed generator indices: +k stands for generator k-1 and
-k for its inverse. Coset tables are standardized (cosets numbered in BFS
discovery order), so identical inputs always produce identical tables.
"""

from __future__ import annotations

from array import array
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from qf.intlinalg import AbelianGroup, SparseIntMatrix, smith_normal_form
from qf.quandles import FiniteGroupElementSet, FiniteQuandle, GroupAutomorphism, from_table

Word = tuple[int, ...]

DEFAULT_MAX_COSETS = 10 ** 6
STRATEGY_VERSION = "hlt-lookahead-1"


class Overflow(Exception):
    """Coset enumeration exceeded its cap; the index may be infinite or just large."""

    def __init__(self, max_cosets: int):
        self.max_cosets = max_cosets
        super().__init__(f"coset enumeration exceeded {max_cosets} cosets")


class IncompleteTable(Exception):
    """A coset table with undefined entries cannot be used."""


class KernelSizeMismatch(Exception):
    """|G_n| != n * |kernel|; the grading of the enumerated group is broken."""


def free_reduce(word: Iterable[int]) -> Word:
    out: list[int] = []
    for letter in word:
        if letter == 0:
            raise ValueError("0 is not a valid signed generator")
        if out and out[-1] == -letter:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def cyclic_reduce(word: Iterable[int]) -> Word:
    w = list(free_reduce(word))
    while len(w) >= 2 and w[0] == -w[-1]:
        w = w[1:-1]
    return tuple(w)


def invert_word(word: Iterable[int]) -> Word:
    return tuple(-letter for letter in reversed(tuple(word)))


@dataclass(frozen=True)
class GroupPresentation:
    """A finite presentation; relators are freely and cyclically reduced."""

    ngens: int
    relators: tuple[Word, ...]

    def __init__(self, ngens: int, relators: Iterable[Iterable[int]]):
        if ngens < 0:
            raise ValueError("generator count must be non-negative")
        reduced = []
        for rel in relators:
            w = cyclic_reduce(rel)
            if any(abs(letter) > ngens for letter in w):
                raise ValueError(f"relator {tuple(rel)} mentions an undeclared generator")
            if w:
                reduced.append(w)
        object.__setattr__(self, "ngens", ngens)
        object.__setattr__(self, "relators", tuple(reduced))


def _word_to_cols(word: Word) -> tuple[int, ...]:
    return tuple(2 * (letter - 1) if letter > 0 else 2 * (-letter - 1) + 1 for letter in word)


class CosetTable:
    """Completed coset table: the action of each signed generator on coset indices."""

    def __init__(self, ngens: int, action: Sequence[Sequence[int]],
                 rep_words: Sequence[Word], subgroup: Sequence[Word]):
        self.ngens = ngens
        self.action = tuple(tuple(col) for col in action)
        self.rep_words = tuple(tuple(w) for w in rep_words)
        self.subgroup = tuple(tuple(w) for w in subgroup)
        if len(self.action) != 2 * ngens:
            raise ValueError("need one action column per signed generator")
        self.size = len(self.action[0]) if self.action else 1
        for col in self.action:
            if len(col) != self.size or any(not 0 <= v < self.size for v in col):
                raise IncompleteTable("action arrays must be total maps on cosets")
        for i in range(ngens):
            fwd, bwd = self.action[2 * i], self.action[2 * i + 1]
            for c in range(self.size):
                if bwd[fwd[c]] != c:
                    raise ValueError(f"columns for generator {i} are not mutually inverse")
        if len(self.rep_words) != self.size:
            raise ValueError("need one representative word per coset")

    def follow(self, coset: int, word: Iterable[int]) -> int:
        action = self.action
        for letter in word:
            col = 2 * (letter - 1) if letter > 0 else 2 * (-letter - 1) + 1
            coset = action[col][coset]
        return coset

    def coset_of_word(self, word: Iterable[int]) -> int:
        return self.follow(0, word)

    def to_json(self) -> dict:
        return {
            "generators": self.ngens,
            "cosets": self.size,
            "action": [list(col) for col in self.action],
            "rep_words": [list(w) for w in self.rep_words],
            "subgroup": [list(w) for w in self.subgroup],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "CosetTable":
        return cls(int(data["generators"]),
                   [tuple(col) for col in data["action"]],
                   [tuple(w) for w in data["rep_words"]],
                   [tuple(w) for w in data["subgroup"]])

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, CosetTable) and self.ngens == other.ngens
                and self.action == other.action and self.rep_words == other.rep_words
                and self.subgroup == other.subgroup)

    def __repr__(self) -> str:
        return f"CosetTable(cosets={self.size}, ngens={self.ngens})"


class _Enumerator:
    """HLT coset enumeration with lookahead and table compression."""

    def __init__(self, ngens: int, relator_cols: list[tuple[int, ...]],
                 subgroup_cols: list[tuple[int, ...]], max_cosets: int):
        self.width = 2 * ngens
        self.relator_cols = relator_cols
        self.subgroup_cols = subgroup_cols
        self.max_cosets = max_cosets
        self.table = array("i", [-1] * self.width)
        self.parent = array("i", [0])
        self.nrows = 1
        self.dead: deque[int] = deque()

    def rep(self, c: int) -> int:
        parent = self.parent
        root = c
        while parent[root] != root:
            root = parent[root]
        while parent[c] != root:
            parent[c], c = root, parent[c]
        return root

    def _merge(self, a: int, b: int) -> None:
        a, b = self.rep(a), self.rep(b)
        if a != b:
            if a > b:
                a, b = b, a
            self.parent[b] = a
            self.dead.append(b)

    def _coincidence(self, a: int, b: int) -> None:
        table, width = self.table, self.width
        self._merge(a, b)
        while self.dead:
            e = self.dead.popleft()
            base = e * width
            for x in range(width):
                f = table[base + x]
                if f < 0:
                    continue
                table[base + x] = -1
                table[f * width + (x ^ 1)] = -1
                e1 = self.rep(e)
                f1 = self.rep(f)
                t = table[e1 * width + x]
                if t >= 0:
                    self._merge(f1, t)
                else:
                    t = table[f1 * width + (x ^ 1)]
                    if t >= 0:
                        self._merge(e1, t)
                    else:
                        table[e1 * width + x] = f1
                        table[f1 * width + (x ^ 1)] = e1

    def _define(self, coset: int, col: int) -> int:
        if self.nrows >= self.max_cosets:
            raise _CapHit
        new = self.nrows
        self.nrows += 1
        self.table.extend([-1] * self.width)
        self.parent.append(new)
        self.table[coset * self.width + col] = new
        self.table[new * self.width + (col ^ 1)] = coset
        return new

    def scan(self, alpha: int, word: tuple[int, ...], fill: bool) -> None:
        table, width = self.table, self.width
        f = alpha
        b = alpha
        i = 0
        j = len(word) - 1
        while True:
            while i <= j:
                t = table[f * width + word[i]]
                if t < 0:
                    break
                f = t
                i += 1
            if i > j:
                if f != b:
                    self._coincidence(f, b)
                return
            while j >= i:
                t = table[b * width + (word[j] ^ 1)]
                if t < 0:
                    break
                b = t
                j -= 1
            if j < i:
                self._coincidence(f, b)
                return
            if j == i:
                table[f * width + word[i]] = b
                table[b * width + (word[i] ^ 1)] = f
                return
            if not fill:
                return
            self._define(f, word[i])

    def lookahead(self) -> None:
        for c in range(self.nrows):
            if self.parent[c] != c:
                continue
            for word in self.relator_cols:
                self.scan(c, word, fill=False)
                if self.parent[c] != c:
                    break

    def compress(self) -> None:
        table, width = self.table, self.width
        live = [c for c in range(self.nrows) if self.rep(c) == c]
        remap = {old: new for new, old in enumerate(live)}
        new_table = array("i", [-1] * (len(live) * width))
        for new, old in enumerate(live):
            base_old = old * width
            base_new = new * width
            for x in range(width):
                t = table[base_old + x]
                if t >= 0:
                    new_table[base_new + x] = remap[self.rep(t)]
        self.table = new_table
        self.parent = array("i", range(len(live)))
        self.nrows = len(live)
        self.dead.clear()

    def live_count(self) -> int:
        return sum(1 for c in range(self.nrows) if self.parent[c] == c)

    def run(self) -> None:
        while True:
            try:
                for word in self.subgroup_cols:
                    self.scan(0, word, fill=True)
                alpha = 0
                while alpha < self.nrows:
                    if self.parent[alpha] == alpha:
                        for word in self.relator_cols:
                            self.scan(alpha, word, fill=True)
                            if self.parent[alpha] != alpha:
                                break
                    alpha += 1
            except _CapHit:
                # lookahead: close what deductions alone can close, then compact
                self.lookahead()
                self.compress()
                if self.nrows >= 0.9 * self.max_cosets:
                    raise Overflow(self.max_cosets) from None
                continue
            if self._complete_and_clean():
                return

    def _complete_and_clean(self) -> bool:
        # a post-pass both verifies closure and repairs the rare case where a
        # coincidence disturbed an already-scanned coset
        table, width = self.table, self.width
        for c in range(self.nrows):
            if self.parent[c] != c:
                continue
            base = c * width
            for x in range(width):
                if table[base + x] < 0:
                    return False
        before = (self.nrows, self.live_count())
        for word in self.subgroup_cols:
            self.scan(0, word, fill=False)
        for c in range(self.nrows):
            if self.parent[c] == c:
                for word in self.relator_cols:
                    self.scan(c, word, fill=False)
        return (self.nrows, self.live_count()) == before


class _CapHit(Exception):
    pass


def todd_coxeter(g: GroupPresentation, subgroup: Sequence[Iterable[int]] = (),
                 max_cosets: int = DEFAULT_MAX_COSETS) -> CosetTable:
    """Enumerate the cosets of the given subgroup; raises Overflow past the cap.

    HLT strategy: relators are scanned in declaration order at each coset in
    ascending index order, with gaps filled by new definitions. Hitting the cap
    triggers one lookahead-and-compress round before giving up.
    """
    if max_cosets < 1:
        raise ValueError("max_cosets must be at least 1")
    subgroup_words = [free_reduce(w) for w in subgroup]
    if any(abs(letter) > g.ngens for w in subgroup_words for letter in w):
        raise ValueError("subgroup word mentions an undeclared generator")
    enum = _Enumerator(g.ngens,
                       [_word_to_cols(r) for r in g.relators],
                       [_word_to_cols(w) for w in subgroup_words if w],
                       max_cosets)
    enum.run()
    enum.compress()

    # standardize: renumber cosets in BFS discovery order, columns in order
    table, width, size = enum.table, enum.width, enum.nrows
    order = [0]
    seen = [False] * size
    seen[0] = True
    rep_words: list[Word] = [()] * size
    head = 0
    while head < len(order):
        c = order[head]
        head += 1
        base = c * width
        for x in range(width):
            t = table[base + x]
            if not seen[t]:
                seen[t] = True
                letter = x // 2 + 1 if x % 2 == 0 else -(x // 2 + 1)
                rep_words[t] = rep_words[c] + (letter,)
                order.append(t)
    remap = [0] * size
    for new, old in enumerate(order):
        remap[old] = new
    action = [[0] * size for _ in range(width)]
    for old in range(size):
        base = old * width
        for x in range(width):
            action[x][remap[old]] = remap[table[base + x]]
    reps = [rep_words[old] for old in order]

    result = CosetTable(g.ngens, action, reps, subgroup_words)
    for word in g.relators:
        for c in range(result.size):
            assert result.follow(c, word) == c, "relator does not act trivially"
    for word in subgroup_words:
        assert result.follow(0, word) == 0, "subgroup generator moves coset 0"
    return result


def quandle_from_cosets(t: CosetTable, meridian: Iterable[int]) -> FiniteQuandle:
    """The quandle on coset indices with op(i, j) = i . (rep_j^-1 m rep_j)."""
    meridian = free_reduce(meridian)
    n = t.size
    table = [[0] * n for _ in range(n)]
    for j in range(n):
        conj = invert_word(t.rep_words[j]) + meridian + t.rep_words[j]
        for i in range(n):
            table[i][j] = t.follow(i, conj)
    return from_table(table)


def g_n_presentation(p, n: int) -> GroupPresentation:
    """Knot group modulo the n-th power of the meridian."""
    if n < 1:
        raise ValueError("n must be at least 1")
    relators = list(p.group.relators)
    relators.append((p.meridian + 1,) * n)
    return GroupPresentation(p.group.ngens, relators)


def element_order(g: FiniteGroupElementSet, x: int) -> int:
    """Least k >= 1 with x^k = identity."""
    k = 1
    y = x
    while y != g.identity:
        y = g.mult[y][x]
        k += 1
    return k


def branched_cover_group(p, n: int, max_cosets: int = DEFAULT_MAX_COSETS
                         ) -> tuple[FiniteGroupElementSet, GroupAutomorphism, int]:
    """Fundamental group of the n-fold cyclic branched cover, meridian conjugation, longitude.

    Enumerates the meridian-power quotient of the knot group over the trivial
    subgroup, grades cosets by meridian exponent sum mod n, and promotes the
    kernel of the grading to an explicit finite group. Returns the group, the
    automorphism g -> m^-1 g m restricted to it, and the longitude's element.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    pres = g_n_presentation(p, n)
    t = todd_coxeter(pres, [], max_cosets)
    grades = [sum(1 if letter > 0 else -1 for letter in w) % n for w in t.rep_words]
    kernel = [c for c in range(t.size) if grades[c] == 0]
    if t.size != n * len(kernel):
        raise KernelSizeMismatch(f"|G_n| = {t.size} but the grading kernel has {len(kernel)} cosets")
    index = {c: i for i, c in enumerate(kernel)}
    mult = tuple(tuple(index[t.follow(c, t.rep_words[d])] for d in kernel) for c in kernel)
    identity = index[0]
    inv = [0] * len(kernel)
    for i in range(len(kernel)):
        inv[i] = next(j for j in range(len(kernel)) if mult[i][j] == identity)
    labels = tuple("".join(f"x{letter}" if letter > 0 else f"x{-letter}'" for letter in t.rep_words[c]) or "e"
                   for c in kernel)
    group = FiniteGroupElementSet(len(kernel), mult, identity, tuple(inv), labels)

    m_word = (p.meridian + 1,)
    phi_map = tuple(index[t.follow(t.follow(t.coset_of_word(invert_word(m_word)), t.rep_words[c]), m_word)]
                    for c in kernel)
    phi = GroupAutomorphism(group, phi_map)

    l_coset = t.coset_of_word(p.longitude)
    if grades[l_coset] != 0:
        raise KernelSizeMismatch("longitude does not land in the grading kernel")
    longitude = index[l_coset]
    return group, phi, longitude


def abelianization(g: GroupPresentation) -> AbelianGroup:
    """Abelianization from the Smith form of the relator exponent matrix."""
    triples = {}
    for r, word in enumerate(g.relators):
        for letter in word:
            key = (r, abs(letter) - 1)
            triples[key] = triples.get(key, 0) + (1 if letter > 0 else -1)
    m = SparseIntMatrix(len(g.relators), g.ngens, {k: v for k, v in triples.items() if v})
    snf = smith_normal_form(m)
    return AbelianGroup(g.ngens - snf.rank, tuple(d for d in snf.factors if d > 1))


def trefoil_branched_presentation(n: int) -> tuple[GroupPresentation, Word]:
    """Cyclic presentation <x_1..x_n | x_{i-1} = x_i x_{i-2}> with its longitude word.

    Indices are mod n; the longitude is x_1 x_0^-1 x_1^-1 x_0 read at i = 1.
    """
    if n < 2:
        raise ValueError("n must be at least 2")

    def gen(i: int) -> int:
        return (i - 1) % n + 1

    relators = []
    for i in range(1, n + 1):
        # x_{i-1} x_{i-2}^-1 x_i^-1
        relators.append((gen(i - 1), -gen(i - 2), -gen(i)))
    longitude = (gen(1), -gen(0), -gen(1), gen(0))
    return GroupPresentation(n, relators), longitude
