"""Finite quandles as explicit operation tables, plus the group-flavoured constructions.

Elements are dense 0-based indices. Every constructor funnels through full
axiom validation, so an existing FiniteQuandle is always a genuine quandle.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from math import lcm
from typing import Iterable, Mapping, Optional, Sequence

MAX_SIZE = 1 << 16


class AxiomViolation(Exception):
    """A table fails a quandle axiom; carries the axiom name and a witness."""

    def __init__(self, axiom: str, witness: tuple):
        self.axiom = axiom
        self.witness = witness
        super().__init__(f"{axiom} fails at {witness}")


class AutomorphismInvalid(Exception):
    """A claimed group automorphism does not satisfy its invariants."""


class NotASubgroup(Exception):
    """The given element list is not closed under product and inverse."""


class NotInvariant(Exception):
    """The subgroup is not compatible with the automorphism."""


class MalformedWitness(Exception):
    """Extension witness data with mismatched sizes or out-of-range values."""


class UnknownGenerator(Exception):
    """A relator mentions a generator missing from the assignment."""


class FiniteQuandle:
    """A finite quandle given by its full operation table ``table[x][y] = x * y``."""

    def __init__(self, table: Sequence[Sequence[int]]):
        tab = tuple(tuple(row) for row in table)
        n = len(tab)
        if n == 0 or n > MAX_SIZE:
            raise ValueError(f"quandle size must be in 1..{MAX_SIZE}")
        for row in tab:
            if len(row) != n:
                raise ValueError("operation table must be square")
            for v in row:
                if not 0 <= v < n:
                    raise ValueError(f"table entry {v} outside 0..{n - 1}")
        self.size = n
        self.table = tab
        self.inverse_table = self._validate()

    def _validate(self) -> tuple[tuple[int, ...], ...]:
        n = self.size
        tab = self.table
        for x in range(n):
            if tab[x][x] != x:
                raise AxiomViolation("idempotence", (x,))
        inv = [[0] * n for _ in range(n)]
        for y in range(n):
            seen = [False] * n
            for x in range(n):
                z = tab[x][y]
                if seen[z]:
                    raise AxiomViolation("bijectivity", (x, y))
                seen[z] = True
                inv[z][y] = x
        for x in range(n):
            row_x = tab[x]
            for y in range(n):
                xy = tab[x][y]
                row_xy = tab[xy]
                for z in range(n):
                    if row_xy[z] != tab[row_x[z]][tab[y][z]]:
                        raise AxiomViolation("distributivity", (x, y, z))
        return tuple(tuple(row) for row in inv)

    def op(self, x: int, y: int) -> int:
        return self.table[x][y]

    def inv_op(self, x: int, y: int) -> int:
        """The unique z with z * y == x."""
        return self.inverse_table[x][y]

    def pow_op(self, x: int, y: int, k: int) -> int:
        """x *^k y, i.e. the k-th power of the translation by y applied to x."""
        tab = self.table if k >= 0 else self.inverse_table
        for _ in range(abs(k)):
            x = tab[x][y]
        return x

    def column(self, y: int) -> tuple[int, ...]:
        """The translation permutation S_y as a mapping x -> x * y."""
        return tuple(self.table[x][y] for x in range(self.size))

    def to_json(self) -> dict:
        return {"size": self.size, "table": [list(row) for row in self.table]}

    @classmethod
    def from_json(cls, data: Mapping) -> "FiniteQuandle":
        q = from_table(data["table"])
        if q.size != int(data["size"]):
            raise ValueError("size field disagrees with the table")
        return q

    def to_text(self) -> str:
        return "\n".join(" ".join(str(v) for v in row) for row in self.table) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "FiniteQuandle":
        rows = [[int(t) for t in line.split()] for line in text.splitlines() if line.strip()]
        return from_table(rows)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FiniteQuandle) and self.table == other.table

    def __hash__(self) -> int:
        return hash(self.table)

    def __repr__(self) -> str:
        return f"FiniteQuandle(size={self.size})"


def from_table(table: Sequence[Sequence[int]]) -> FiniteQuandle:
    """Validate an operation table and return the quandle it defines."""
    return FiniteQuandle(table)


def trivial_quandle(n: int) -> FiniteQuandle:
    return FiniteQuandle([[x] * n for x in range(n)])


def dihedral_quandle(n: int) -> FiniteQuandle:
    return FiniteQuandle([[(2 * y - x) % n for y in range(n)] for x in range(n)])


def _perm_cycle_type(perm: Sequence[int]) -> tuple[int, ...]:
    seen = [False] * len(perm)
    lengths = []
    for start in range(len(perm)):
        if not seen[start]:
            length = 0
            x = start
            while not seen[x]:
                seen[x] = True
                x = perm[x]
                length += 1
            lengths.append(length)
    return tuple(sorted(lengths))


def quandle_type(q: FiniteQuandle) -> int:
    """Least n >= 1 with x *^n y == x everywhere: the lcm of the translation orders."""
    out = 1
    for y in range(q.size):
        for length in set(_perm_cycle_type(q.column(y))):
            out = lcm(out, length)
    return out


def components(q: FiniteQuandle) -> tuple[tuple[int, ...], ...]:
    """Orbits of the group generated by all translations; one orbit means connected."""
    parent = list(range(q.size))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for y in range(q.size):
        for x in range(q.size):
            ra, rb = find(x), find(q.table[x][y])
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    orbits: dict[int, list[int]] = {}
    for x in range(q.size):
        orbits.setdefault(find(x), []).append(x)
    return tuple(tuple(orbits[r]) for r in sorted(orbits))


def is_connected(q: FiniteQuandle) -> bool:
    return len(components(q)) == 1


@dataclass
class FiniteGroupElementSet:
    """A finite group as a full multiplication table on indices 0..order-1."""

    order: int
    mult: tuple[tuple[int, ...], ...]
    identity: int
    inv: tuple[int, ...]
    labels: Optional[tuple[str, ...]] = None

    # All groups produced here come out of coset enumeration, which guarantees
    # associativity structurally; validation is a safety net.
    ASSOCIATIVITY_EXHAUSTIVE_LIMIT = 256
    ASSOCIATIVITY_SAMPLES = 10_000

    def __post_init__(self) -> None:
        n = self.order
        if len(self.mult) != n or any(len(row) != n for row in self.mult):
            raise ValueError("multiplication table must be order x order")
        if any(not 0 <= v < n for row in self.mult for v in row):
            raise ValueError("multiplication table entry out of range")
        e = self.identity
        for a in range(n):
            if self.mult[e][a] != a or self.mult[a][e] != a:
                raise ValueError(f"identity law fails at {a}")
            if self.mult[a][self.inv[a]] != e or self.mult[self.inv[a]][a] != e:
                raise ValueError(f"inverse law fails at {a}")
        mult = self.mult
        if n <= self.ASSOCIATIVITY_EXHAUSTIVE_LIMIT:
            rng_n = range(n)
            for a in rng_n:
                ma = mult[a]
                for b in rng_n:
                    mab = mult[ma[b]]
                    mb = mult[b]
                    for c in rng_n:
                        if mab[c] != ma[mb[c]]:
                            raise ValueError(f"associativity fails at {(a, b, c)}")
        else:
            rng = random.Random(0)
            for _ in range(self.ASSOCIATIVITY_SAMPLES):
                a, b, c = (rng.randrange(n) for _ in range(3))
                if mult[mult[a][b]][c] != mult[a][mult[b][c]]:
                    raise ValueError(f"associativity fails at {(a, b, c)}")

    def mul(self, a: int, b: int) -> int:
        return self.mult[a][b]

    def subgroup_generated(self, gens: Iterable[int]) -> tuple[int, ...]:
        seen = {self.identity}
        frontier = [self.identity]
        gens = list(gens)
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    for b in (self.mult[a][g], self.mult[a][self.inv[g]]):
                        if b not in seen:
                            seen.add(b)
                            nxt.append(b)
            frontier = nxt
        return tuple(sorted(seen))

    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroupElementSet":
        mult = tuple(tuple((a + b) % n for b in range(n)) for a in range(n))
        return cls(n, mult, 0, tuple((-a) % n for a in range(n)))


@dataclass
class GroupAutomorphism:
    """A group automorphism given as a permutation of element indices."""

    source: FiniteGroupElementSet
    map: tuple[int, ...]

    def __post_init__(self) -> None:
        n = self.source.order
        if len(self.map) != n or sorted(self.map) != list(range(n)):
            raise AutomorphismInvalid("map is not a permutation of the elements")
        if self.map[self.source.identity] != self.source.identity:
            raise AutomorphismInvalid("identity is not fixed")
        mult = self.source.mult
        f = self.map
        for a in range(n):
            fa = f[a]
            for b in range(n):
                if f[mult[a][b]] != mult[fa][f[b]]:
                    raise AutomorphismInvalid(f"homomorphism fails at {(a, b)}")

    def __call__(self, a: int) -> int:
        return self.map[a]

    @classmethod
    def identity_of(cls, g: FiniteGroupElementSet) -> "GroupAutomorphism":
        return cls(g, tuple(range(g.order)))


def galex(g: FiniteGroupElementSet, phi: GroupAutomorphism) -> FiniteQuandle:
    """Generalized Alexander quandle on the elements of g: x * y = phi(x y^-1) y."""
    if phi.source is not g and phi.source != g:
        raise AutomorphismInvalid("automorphism does not act on the given group")
    mult, inv, f = g.mult, g.inv, phi.map
    table = [[mult[f[mult[x][inv[y]]]][y] for y in range(g.order)] for x in range(g.order)]
    return FiniteQuandle(table)


def right_cosets(g: FiniteGroupElementSet, subgroup: Sequence[int]
                 ) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Partition into right cosets Ax: (coset index per element, representatives).

    Cosets are numbered by their least element, so the subgroup itself is coset 0
    whenever the identity has index 0.
    """
    a_set = sorted(set(subgroup))
    if not a_set or g.identity not in a_set:
        raise NotASubgroup("subgroup must contain the identity")
    sset = set(a_set)
    for a in a_set:
        if g.inv[a] not in sset:
            raise NotASubgroup(f"not closed under inverse at {a}")
        for b in a_set:
            if g.mult[a][b] not in sset:
                raise NotASubgroup(f"not closed under product at {(a, b)}")
    coset_of = [-1] * g.order
    reps: list[int] = []
    for x in range(g.order):
        if coset_of[x] == -1:
            reps.append(x)
            idx = len(reps) - 1
            for a in a_set:
                coset_of[g.mult[a][x]] = idx
    return tuple(coset_of), tuple(reps)


def coset_quandle(g: FiniteGroupElementSet, phi: GroupAutomorphism,
                  subgroup: Sequence[int]) -> FiniteQuandle:
    """Quandle on right cosets A\\G with Ax * Ay = A phi(x y^-1) y."""
    if phi.source is not g and phi.source != g:
        raise AutomorphismInvalid("automorphism does not act on the given group")
    a_set = sorted(set(subgroup))
    sset = set(a_set)
    coset_of, reps = right_cosets(g, subgroup)
    if {phi.map[a] for a in a_set} != sset:
        raise NotInvariant("phi(A) != A")
    mult, inv, f = g.mult, g.inv, phi.map
    k = len(reps)
    table = [[0] * k for _ in range(k)]
    for i, x in enumerate(reps):
        for j, y in enumerate(reps):
            table[i][j] = coset_of[mult[f[mult[x][inv[y]]]][y]]
    # phi(A) = A setwise does not by itself make the coset operation well
    # defined; verify on all representatives of each pair of cosets.
    for i in range(k):
        fiber_i = [x for x in range(g.order) if coset_of[x] == i]
        for j, y in enumerate(reps):
            want = table[i][j]
            for x in fiber_i:
                for a in a_set:
                    if coset_of[mult[f[mult[x][inv[mult[a][y]]]]][mult[a][y]]] != want:
                        raise NotInvariant("coset operation is not well defined for this subgroup")
    return FiniteQuandle(table)


def _element_profiles(q: FiniteQuandle) -> list[tuple]:
    orbit_of = {}
    for orbit in components(q):
        for x in orbit:
            orbit_of[x] = len(orbit)
    return [(_perm_cycle_type(q.column(x)), orbit_of[x]) for x in range(q.size)]


def is_isomorphic(q1: FiniteQuandle, q2: FiniteQuandle) -> Optional[tuple[int, ...]]:
    """A quandle isomorphism q1 -> q2 as a permutation array, or None.

    Deterministic: the lexicographically least isomorphism is returned.
    """
    n = q1.size
    if n != q2.size:
        return None
    if quandle_type(q1) != quandle_type(q2):
        return None
    prof1 = _element_profiles(q1)
    prof2 = _element_profiles(q2)
    if sorted(prof1) != sorted(prof2):
        return None
    candidates = [[t for t in range(n) if prof2[t] == prof1[x]] for x in range(n)]
    t1, t2 = q1.table, q2.table
    # pairs (i, j) with i, j < z and t1[i][j] == z, checked once z gets its image
    preimages: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            z = t1[i][j]
            if z > i and z > j:
                preimages[z].append((i, j))
    mapping = [-1] * n
    used = [False] * n

    def consistent(x: int, t: int) -> bool:
        # every product whose operands and result all lie in 0..x is pinned now
        for y in range(x + 1):
            fy = t if y == x else mapping[y]
            z = t1[x][y]
            if z <= x and (t if z == x else mapping[z]) != t2[t][fy]:
                return False
            z = t1[y][x]
            if z <= x and (t if z == x else mapping[z]) != t2[fy][t]:
                return False
        for i, j in preimages[x]:
            if t2[mapping[i]][mapping[j]] != t:
                return False
        return True

    def extend(x: int) -> bool:
        if x == n:
            return True
        for t in candidates[x]:
            if not used[t] and consistent(x, t):
                mapping[x] = t
                used[t] = True
                if extend(x + 1):
                    return True
                mapping[x] = -1
                used[t] = False
        return False

    if not extend(0):
        return None
    return tuple(mapping)


@dataclass(frozen=True)
class ExtensionWitness:
    """Data claiming that ``total`` extends ``base`` by a cyclic group.

    ``projection`` maps total elements onto base elements and ``action`` is the
    permutation by which the cyclic group generator acts on the total quandle.
    """

    total: FiniteQuandle
    base: FiniteQuandle
    projection: tuple[int, ...]
    group_order: int
    action: tuple[int, ...]


@dataclass(frozen=True)
class ExtensionReport:
    projection_is_homomorphism: bool
    projection_is_surjective: bool
    e1: bool
    e2: bool
    action_order_matches: bool

    @property
    def ok(self) -> bool:
        return (self.projection_is_homomorphism and self.projection_is_surjective
                and self.e1 and self.e2 and self.action_order_matches)


def verify_extension(w: ExtensionWitness) -> ExtensionReport:
    """Check the central-extension axioms (E1), (E2) on a finite witness."""
    nt = w.total.size
    if len(w.projection) != nt or len(w.action) != nt:
        raise MalformedWitness("projection/action length differs from the total size")
    if any(not 0 <= v < w.base.size for v in w.projection):
        raise MalformedWitness("projection value out of range")
    if sorted(w.action) != list(range(nt)):
        raise MalformedWitness("action is not a permutation of the total quandle")
    if w.group_order < 1:
        raise MalformedWitness("group order must be positive")

    tt, tb = w.total.table, w.base.table
    p, lam = w.projection, w.action

    hom = all(p[tt[x][y]] == tb[p[x]][p[y]] for x in range(nt) for y in range(nt))
    surj = len(set(p)) == w.base.size

    e1 = all(lam[tt[x][y]] == tt[lam[x]][y] and tt[x][lam[y]] == tt[x][y]
             for x in range(nt) for y in range(nt))

    order = 1
    img = tuple(lam)
    ident = tuple(range(nt))
    while img != ident and order <= nt:
        img = tuple(lam[v] for v in img)
        order += 1
    action_order_matches = img == ident and order == w.group_order

    fibers: dict[int, list[int]] = {}
    for x, b in enumerate(p):
        fibers.setdefault(b, []).append(x)
    e2 = True
    for fiber in fibers.values():
        if len(fiber) != w.group_order:
            e2 = False
            break
        x = fiber[0]
        orbit = [x]
        for _ in range(w.group_order - 1):
            x = lam[x]
            orbit.append(x)
        if len(set(orbit)) != w.group_order or set(orbit) != set(fiber):
            e2 = False
            break
    return ExtensionReport(hom, surj, e1, e2, action_order_matches)


# --- quandle terms -----------------------------------------------------------
#
# Grammar for relator strings: parenthesized binary terms, left-associated,
# with the power shorthand "x *^k y" meaning the k-th translation power
# (k any integer, default 1 for a bare "*"). An equation is "term = term".

_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<pow>\*\^-?\d+)"
                    r"|(?P<star>\*)|(?P<lpar>\()|(?P<rpar>\))|(?P<eq>=))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            raise ValueError(f"bad token at position {pos} in {text!r}")
        pos = m.end()
        kind = m.lastgroup
        tokens.append((kind, m.group(kind)))
    return tokens


def _parse_term(tokens: list[tuple[str, str]], pos: int):
    def factor(pos):
        kind, value = tokens[pos] if pos < len(tokens) else (None, None)
        if kind == "name":
            return ("gen", value), pos + 1
        if kind == "lpar":
            node, pos = term(pos + 1)
            if pos >= len(tokens) or tokens[pos][0] != "rpar":
                raise ValueError("missing closing parenthesis")
            return node, pos + 1
        raise ValueError(f"expected a generator or '(' at token {pos}")

    def term(pos):
        node, pos = factor(pos)
        while pos < len(tokens) and tokens[pos][0] in ("star", "pow"):
            kind, value = tokens[pos]
            k = 1 if kind == "star" else int(value[2:])
            rhs, pos = factor(pos + 1)
            node = ("pow", node, rhs, k)
        return node, pos

    return term(pos)


def parse_equation(text: str) -> tuple:
    """Parse "lhs = rhs" into a pair of term trees."""
    tokens = _tokenize(text)
    lhs, pos = _parse_term(tokens, 0)
    if pos >= len(tokens) or tokens[pos][0] != "eq":
        raise ValueError(f"missing '=' in {text!r}")
    rhs, pos = _parse_term(tokens, pos + 1)
    if pos != len(tokens):
        raise ValueError(f"trailing tokens in {text!r}")
    return lhs, rhs


def _eval_term(q: FiniteQuandle, node, assignment: Mapping[str, int]) -> int:
    if node[0] == "gen":
        name = node[1]
        if name not in assignment:
            raise UnknownGenerator(name)
        return assignment[name]
    _, left, right, k = node
    return q.pow_op(_eval_term(q, left, assignment), _eval_term(q, right, assignment), k)


def check_relators(q: FiniteQuandle, assignment: Mapping[str, int],
                   relators: Iterable[str]) -> bool:
    """True iff every relator equation holds in q under the assignment."""
    for rel in relators:
        lhs, rhs = parse_equation(rel)
        if _eval_term(q, lhs, assignment) != _eval_term(q, rhs, assignment):
            return False
    return True
