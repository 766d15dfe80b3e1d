"""Permutations and finite permutation groups on at most 16 points.

Points are 1-based in every public interface.  Internally a :class:`Perm`
is a tuple of 0-based images, which keeps hashing, equality and
lexicographic ordering at C speed.

Composition is right-to-left: ``p * q`` (or ``compose(p, q)``) applies
``q`` first, so ``(p * q)(x) == p(q(x))``.
"""
from __future__ import annotations

import functools
import itertools
import re
from collections import Counter
from enum import Enum
from typing import Iterable, Sequence

MAX_DEGREE = 16
SCAN_LIMIT = 8          # full S_n scans (normalizer, centralizer, implementers)
SUBGROUP_LIMIT = 64     # brute-force subgroup / isomorphism enumeration
DEFAULT_CAP = 50000


class PermError(ValueError):
    pass


class Perm(tuple):
    """A bijection of {1..n}, stored as 0-based images."""

    __slots__ = ()

    def __new__(cls, images: Sequence[int]):
        img = tuple(int(x) - 1 for x in images)
        n = len(img)
        if n > MAX_DEGREE:
            raise PermError(f"degree {n} exceeds {MAX_DEGREE}")
        if sorted(img) != list(range(n)):
            raise PermError(f"not a bijection of 1..{n}: {list(images)}")
        return tuple.__new__(cls, img)

    @classmethod
    def _raw(cls, img) -> Perm:
        return tuple.__new__(cls, img)

    @classmethod
    def identity(cls, n: int) -> Perm:
        return cls._raw(range(n))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], n: int) -> Perm:
        img = list(range(n))
        seen = set()
        for cyc in cycles:
            for x in cyc:
                if not 1 <= x <= n:
                    raise PermError(f"point {x} outside 1..{n}")
                if x in seen:
                    raise PermError(f"point {x} repeated in cycle notation")
                seen.add(x)
            for a, b in zip(cyc, tuple(cyc[1:]) + tuple(cyc[:1])):
                img[a - 1] = b - 1
        return cls._raw(img)

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> Perm:
        """Parse cycle notation such as ``"(1,2,3,4)(5,6,7,8)"``.

        Whitespace is ignored and ``"()"`` is the identity.  When ``n`` is
        omitted the degree is the largest point mentioned.
        """
        s = re.sub(r"\s+", "", text)
        if not re.fullmatch(r"(\((\d+(,\d+)*)?\))*", s) or not s:
            raise PermError(f"bad cycle notation: {text!r}")
        cycles = [tuple(int(x) for x in body.split(",")) for body in re.findall(r"\(([^()]*)\)", s) if body]
        top = max((max(c) for c in cycles), default=1)
        if n is None:
            n = top
        elif top > n:
            raise PermError(f"point {top} outside 1..{n}")
        return cls.from_cycles(cycles, n)

    @property
    def degree(self) -> int:
        return len(self)

    @property
    def images(self) -> tuple[int, ...]:
        return tuple(x + 1 for x in self)

    def __call__(self, x: int) -> int:
        return self[x - 1] + 1

    def __mul__(self, other: Perm) -> Perm:
        return compose(self, other)

    def __pow__(self, k: int) -> Perm:
        result = Perm.identity(len(self))
        base = self if k >= 0 else invert(self)
        for _ in range(abs(k)):
            result = compose(base, result)
        return result

    def inverse(self) -> Perm:
        return invert(self)

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self))

    def order(self) -> int:
        result = 1
        for c in self.cycles():
            result = result * len(c) // _gcd(result, len(c))
        return result

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, each starting at its smallest point (1-based)."""
        seen = [False] * len(self)
        out = []
        for start in range(len(self)):
            if seen[start]:
                continue
            cyc = []
            x = start
            while not seen[x]:
                seen[x] = True
                cyc.append(x + 1)
                x = self[x]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def sign(self) -> int:
        return -1 if sum(len(c) - 1 for c in self.cycles()) % 2 else 1

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + ",".join(map(str, c)) + ")" for c in cyc)

    def __repr__(self) -> str:
        return f"Perm.parse({str(self)!r}, {len(self)})"


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def compose(p: Perm, q: Perm) -> Perm:
    """Return p∘q, i.e. apply q first."""
    if len(p) != len(q):
        raise PermError(f"degree mismatch: {len(p)} vs {len(q)}")
    return Perm._raw(p[i] for i in q)


def invert(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return Perm._raw(inv)


def conjugate(g: Perm, x: Perm) -> Perm:
    """g x g⁻¹."""
    if len(g) != len(x):
        raise PermError(f"degree mismatch: {len(g)} vs {len(x)}")
    c = [0] * len(g)
    for i, xi in enumerate(x):
        c[g[i]] = g[xi]
    return Perm._raw(c)


def parse_perm_list(text: str, n: int | None = None) -> list[Perm]:
    """Parse a ``;``-separated list of cycle-notation permutations."""
    parts = [p for p in (s.strip() for s in text.split(";")) if p]
    perms = [Perm.parse(p, n) for p in parts]
    if n is None and perms:
        deg = max(p.degree for p in perms)
        perms = [Perm.parse(p, deg) for p in parts]
    return perms


def generate(gens: Sequence[Perm], cap: int = DEFAULT_CAP, degree: int | None = None) -> tuple[Perm, ...]:
    """Closure of ``gens`` under composition, sorted lexicographically.

    Raises :class:`PermError` once more than ``cap`` elements appear.
    """
    if cap < 1:
        raise PermError("cap must be at least 1")
    if gens:
        degree = len(gens[0])
        if any(len(g) != degree for g in gens):
            raise PermError("generators of mixed degree")
    elif degree is None:
        raise PermError("degree required for an empty generator list")
    ident = Perm.identity(degree)
    found = {ident}
    frontier = [ident]
    gens = [g for g in set(gens) if not g.is_identity()]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = Perm._raw(g[i] for i in x)
                if y not in found:
                    found.add(y)
                    nxt.append(y)
        if len(found) > cap:
            raise PermError(f"group closure exceeded cap {cap}")
        frontier = nxt
    return tuple(sorted(found))


class PermGroup:
    """A permutation group given by generators; elements materialized lazily."""

    def __init__(self, generators: Iterable[Perm], degree: int | None = None,
                 cap: int = DEFAULT_CAP, elements: Iterable[Perm] | None = None):
        self.generators = tuple(generators)
        if degree is None:
            if not self.generators:
                raise PermError("degree required for a group with no generators")
            degree = len(self.generators[0])
        if any(len(g) != degree for g in self.generators):
            raise PermError("generators of mixed degree")
        self.degree = degree
        self.cap = cap
        self._elements = tuple(sorted(elements)) if elements is not None else None
        self._set = None

    @classmethod
    def from_elements(cls, elements: Iterable[Perm], degree: int | None = None) -> PermGroup:
        """Wrap an element set already known to be a group; generators picked greedily."""
        elems = tuple(sorted(set(elements)))
        if degree is None:
            degree = len(elems[0])
        return cls(small_generating_set(elems, degree), degree, elements=elems)

    @property
    def elements(self) -> tuple[Perm, ...]:
        if self._elements is None:
            self._elements = generate(self.generators, self.cap, self.degree)
        return self._elements

    @property
    def element_set(self) -> frozenset:
        if self._set is None:
            self._set = frozenset(self.elements)
        return self._set

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, p) -> bool:
        return p in self.element_set

    def __eq__(self, other) -> bool:
        if not isinstance(other, PermGroup):
            return NotImplemented
        return self.degree == other.degree and self.element_set == other.element_set

    def __hash__(self) -> int:
        return hash((self.degree, self.element_set))

    def __le__(self, other: PermGroup) -> bool:
        return self.element_set <= other.element_set

    def identity(self) -> Perm:
        return Perm.identity(self.degree)

    def sort_key(self):
        return (self.order, self.elements)

    def conjugate_by(self, g: Perm) -> PermGroup:
        return PermGroup([conjugate(g, x) for x in self.generators], self.degree,
                         elements=[conjugate(g, x) for x in self.elements])

    def __repr__(self) -> str:
        gens = ", ".join(str(g) for g in self.generators)
        return f"PermGroup<{gens}> (degree {self.degree})"


def small_generating_set(elements: Sequence[Perm], degree: int) -> list[Perm]:
    """Greedy generating set, preferring elements of large order."""
    target = frozenset(elements)
    gens: list[Perm] = []
    current = {Perm.identity(degree)}
    for x in sorted(elements, key=lambda p: (-p.order(), p)):
        if len(current) == len(target):
            break
        if x not in current:
            gens.append(x)
            current = set(generate(gens, len(target), degree))
    return gens


def symmetric_group(n: int) -> PermGroup:
    if n == 1:
        return PermGroup([], 1)
    gens = [Perm.from_cycles([range(1, n + 1)], n), Perm.from_cycles([(1, 2)], n)]
    return PermGroup(gens, n, cap=_factorial(n))


def all_perms(n: int):
    """Every element of S_n, lexicographic order."""
    if n > SCAN_LIMIT:
        raise PermError(f"full scan of S_{n} exceeds the limit n <= {SCAN_LIMIT}")
    for img in itertools.permutations(range(n)):
        yield Perm._raw(img)


def _factorial(n: int) -> int:
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def orbit(H: PermGroup, point: int) -> list[int]:
    seen = {point}
    todo = [point]
    while todo:
        x = todo.pop()
        for g in H.generators:
            y = g(x)
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return sorted(seen)


def is_transitive(H: PermGroup) -> bool:
    return len(orbit(H, 1)) == H.degree


def is_regular(H: PermGroup, n: int | None = None) -> bool:
    n = H.degree if n is None else n
    if H.degree != n:
        return False
    return is_transitive(H) and H.order == n


def normalizes(g: Perm, N: PermGroup) -> bool:
    return all(conjugate(g, x) in N.element_set for x in N.generators)


def normalizer_in_sym(N: PermGroup) -> PermGroup:
    """{g in S_n : g N g⁻¹ = N}, by a full scan of S_n (n <= 8)."""
    elems = [g for g in all_perms(N.degree) if normalizes(g, N)]
    return PermGroup.from_elements(elems, N.degree)


def centralizer_in_sym(N: PermGroup) -> PermGroup:
    gens = N.generators
    elems = [g for g in all_perms(N.degree) if all(conjugate(g, x) == x for x in gens)]
    return PermGroup.from_elements(elems, N.degree)


def center(H: PermGroup) -> PermGroup:
    elems = [z for z in H if all(compose(z, g) == compose(g, z) for g in H.generators)]
    return PermGroup.from_elements(elems, H.degree)


def is_subgroup_normal(S: PermGroup, H: PermGroup) -> bool:
    return all(conjugate(g, s) in S.element_set for g in H.generators for s in S.generators)


def subgroups(H: PermGroup, limit: int = SUBGROUP_LIMIT) -> list[PermGroup]:
    """All subgroups of H, sorted by (order, element list).

    Cyclic subgroups are joined repeatedly until no new subgroup appears,
    so the result is complete regardless of how many generators a
    subgroup needs.
    """
    if H.order > limit:
        raise PermError(f"subgroup enumeration limited to order <= {limit}")
    deg = H.degree
    cyclic: dict[frozenset, Perm] = {}
    for x in H:
        key = frozenset(generate([x], H.order, deg))
        cyclic.setdefault(key, x)
    found: dict[frozenset, list[Perm]] = {k: ([g] if not g.is_identity() else []) for k, g in cyclic.items()}
    frontier = list(found)
    while frontier:
        nxt = []
        for S in frontier:
            for C, c in cyclic.items():
                if C <= S:
                    continue
                gens = found[S] + [c]
                J = frozenset(generate(gens, H.order, deg))
                if J not in found:
                    found[J] = gens
                    nxt.append(J)
        frontier = nxt
    groups = [PermGroup(gens, deg, elements=elems) for elems, gens in found.items()]
    return sorted(groups, key=PermGroup.sort_key)


def element_orders(H: PermGroup) -> Counter:
    return Counter(x.order() for x in H)


def _extend_hom(gens_a, images, ident_a, ident_b):
    """Extend a generator assignment along the Cayley graph; None if inconsistent."""
    phi = {ident_a: ident_b}
    todo = [ident_a]
    while todo:
        x = todo.pop()
        fx = phi[x]
        for g, gi in zip(gens_a, images):
            y = compose(g, x)
            fy = compose(gi, fx)
            prev = phi.get(y)
            if prev is None:
                phi[y] = fy
                todo.append(y)
            elif prev != fy:
                return None
    return phi


def iter_isomorphisms(A: PermGroup, B: PermGroup, limit: int = SUBGROUP_LIMIT):
    """Yield every isomorphism A -> B as a dict, in deterministic order."""
    if A.order > limit or B.order > limit:
        raise PermError(f"isomorphism search limited to order <= {limit}")
    if A.order != B.order or element_orders(A) != element_orders(B):
        return
    gens = small_generating_set(A.elements, A.degree)
    by_order: dict[int, list[Perm]] = {}
    for y in B:
        by_order.setdefault(y.order(), []).append(y)
    candidates = [by_order.get(g.order(), []) for g in gens]
    ia, ib = A.identity(), B.identity()
    for images in itertools.product(*candidates):
        phi = _extend_hom(gens, images, ia, ib)
        if phi is None or len(phi) != A.order or len(set(phi.values())) != B.order:
            continue
        if all(phi[compose(x, y)] == compose(phi[x], phi[y]) for x in A for y in A):
            yield phi


def isomorphisms(A: PermGroup, B: PermGroup, limit: int = SUBGROUP_LIMIT) -> list[dict]:
    return list(iter_isomorphisms(A, B, limit))


def automorphisms(A: PermGroup, limit: int = SUBGROUP_LIMIT) -> list[dict]:
    return isomorphisms(A, A, limit)


def are_isomorphic(A: PermGroup, B: PermGroup, limit: int = SUBGROUP_LIMIT) -> bool:
    return next(iter_isomorphisms(A, B, limit), None) is not None


class IsoType8(str, Enum):
    C8 = "C8"
    C2xC4 = "C2xC4"
    C2xC2xC2 = "C2xC2xC2"
    D8 = "D8"
    Q8 = "Q8"

    def __str__(self) -> str:
        return self.value


def order8_type(H: PermGroup) -> IsoType8:
    if H.order != 8:
        raise PermError(f"order8_type needs a group of order 8, got {H.order}")
    orders = element_orders(H)
    if orders[8]:
        return IsoType8.C8
    if orders[2] == 7:
        return IsoType8.C2xC2xC2
    if orders[2] == 1:
        return IsoType8.Q8
    if orders[2] == 5:
        return IsoType8.D8
    return IsoType8.C2xC4


@functools.lru_cache(maxsize=None)
def _small_type_table():
    # order -> list of (tag, sorted element-order signature)
    return {
        1: [("C1", ((1, 1),))],
        2: [("C2", ((1, 1), (2, 1)))],
        3: [("C3", ((1, 1), (3, 2)))],
        4: [("C4", ((1, 1), (2, 1), (4, 2))), ("C2xC2", ((1, 1), (2, 3)))],
        5: [("C5", ((1, 1), (5, 4)))],
        6: [("C6", ((1, 1), (2, 1), (3, 2), (6, 2))), ("S3", ((1, 1), (2, 3), (3, 2)))],
        7: [("C7", ((1, 1), (7, 6)))],
    }


def iso_type(H: PermGroup) -> str:
    """Isomorphism tag for groups of order <= 8 (element-order multiset)."""
    if H.order == 8:
        return order8_type(H).value
    table = _small_type_table().get(H.order)
    if table is None:
        raise PermError(f"no isomorphism tags for order {H.order}")
    sig = tuple(sorted(element_orders(H).items()))
    for tag, ref in table:
        if sig == ref:
            return tag
    raise PermError(f"unrecognized group of order {H.order}")
