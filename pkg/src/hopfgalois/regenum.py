"""Regular subgroups of S_n, holomorphs and the normalization test.

Abstract groups enter as Cayley tables: ``table[i][j]`` is the 0-based
index of the product of elements ``i`` and ``j``, element 0 being the
identity.  On disk the same table is stored 1-based, one row per line.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass, field
from importlib import resources
from typing import Sequence

from .permcore import (
    IsoType8,
    Perm,
    PermError,
    PermGroup,
    are_isomorphic,
    automorphisms,
    compose,
    conjugate,
    element_orders,
    generate,
    is_regular,
    is_transitive,
    iso_type,
    normalizer_in_sym,
    symmetric_group,
)

Table = tuple[tuple[int, ...], ...]

HOLOMORPH_LIMIT = 16
PROBE_LIMIT = 1500


# ---------------------------------------------------------------------------
# Cayley tables

def parse_table(text: str) -> Table:
    rows = [tuple(int(x) - 1 for x in line.split()) for line in text.splitlines() if line.strip()]
    table = tuple(rows)
    validate_table(table)
    return table


def format_table(table: Table) -> str:
    return "".join(" ".join(str(x + 1) for x in row) + "\n" for row in table)


def validate_table(table: Table) -> None:
    m = len(table)
    if any(len(row) != m for row in table):
        raise ValueError("Cayley table is not square")
    if any(sorted(row) != list(range(m)) for row in table):
        raise ValueError("Cayley table rows are not permutations")
    if tuple(table[0]) != tuple(range(m)) or any(table[i][0] != i for i in range(m)):
        raise ValueError("element 1 is not the identity")
    for a in range(m):
        for b in range(m):
            for c in range(m):
                if table[table[a][b]][c] != table[a][table[b][c]]:
                    raise ValueError("Cayley table is not associative")


def table_from_elements(elements: Sequence[Perm]) -> Table:
    """Cayley table of a permutation group, identity moved to the front."""
    elems = sorted(elements, key=lambda p: (not p.is_identity(), p))
    index = {p: i for i, p in enumerate(elems)}
    return tuple(tuple(index[compose(a, b)] for b in elems) for a in elems)


def load_fixture(tag: str) -> Table:
    text = resources.files("hopfgalois.data.groups").joinpath(f"{tag}.txt").read_text()
    return parse_table(text)


def _cyclic(n: int) -> list[Perm]:
    return [Perm.from_cycles([range(1, n + 1)], n)] if n > 1 else []


@functools.lru_cache(maxsize=None)
def _small_tables() -> dict[int, dict[str, Table]]:
    P = Perm.parse
    built = {
        1: {"C1": [Perm.identity(1)]},
        2: {"C2": generate(_cyclic(2))},
        3: {"C3": generate(_cyclic(3))},
        4: {"C4": generate(_cyclic(4)), "C2xC2": generate([P("(1,2)", 4), P("(3,4)", 4)])},
        5: {"C5": generate(_cyclic(5))},
        6: {"C6": generate(_cyclic(6)), "S3": generate([P("(1,2,3)", 3), P("(1,2)", 3)])},
        7: {"C7": generate(_cyclic(7))},
    }
    return {n: {tag: table_from_elements(els) for tag, els in d.items()} for n, d in built.items()}


def cayley_table(tag: str | IsoType8) -> Table:
    tag = str(tag)
    if tag in IsoType8.__members__:
        return load_fixture(tag)
    for by_tag in _small_tables().values():
        if tag in by_tag:
            return by_tag[tag]
    raise KeyError(f"no Cayley table for {tag!r}")


def types_of_order(n: int) -> list[str]:
    """Isomorphism tags of all groups of order n (n <= 8)."""
    if n == 8:
        return [t.value for t in IsoType8]
    if n in _small_tables():
        return list(_small_tables()[n])
    raise PermError(f"group catalogue covers orders 1..8 only, not {n}")


def right_regular(table: Table) -> PermGroup:
    """ρ(T): element j acts on points by x ↦ x·j (points 1..|T| name the elements)."""
    m = len(table)
    perms = [Perm._raw(table[i][j] for i in range(m)) for j in range(m)]
    return PermGroup.from_elements(perms, m)


def left_regular(table: Table) -> PermGroup:
    m = len(table)
    perms = [Perm._raw(table[j][i] for i in range(m)) for j in range(m)]
    return PermGroup.from_elements(perms, m)


# ---------------------------------------------------------------------------
# Holomorphs

@functools.lru_cache(maxsize=None)
def _holomorph(table: Table, check: bool) -> PermGroup:
    m = len(table)
    if m > HOLOMORPH_LIMIT:
        raise PermError(f"holomorph limited to |T| <= {HOLOMORPH_LIMIT}")
    rho = right_regular(table)
    if m == 1:
        return rho
    # ρ(x)(1) = x, so an automorphism α of ρ(T) acts on points as x ↦ α(ρ(x))(1).
    by_point = {r[0]: r for r in rho}
    auts = [Perm._raw(a[by_point[x]][0] for x in range(m)) for a in automorphisms(rho)]
    hol = PermGroup(list(rho.generators) + auts, m, cap=40320 * 16)
    if check and m <= 8 and hol != normalizer_in_sym(rho):
        raise AssertionError("holomorph differs from the normalizer of the regular representation")
    return hol


def holomorph(table: Table, check: bool = True) -> PermGroup:
    """N ⋊ Aut N acting on the points of the right-regular representation."""
    return _holomorph(tuple(tuple(r) for r in table), check)


def holomorph_of_type(tag: str | IsoType8) -> PermGroup:
    return holomorph(cayley_table(tag))


def holomorph_feasibility(tag: str | IsoType8, required_divisor: int) -> bool:
    return holomorph_of_type(tag).order % required_divisor == 0


# ---------------------------------------------------------------------------
# Regular classes

@dataclass(frozen=True)
class RegularClass:
    type: str
    members: tuple[PermGroup, ...] = field(repr=False)

    def __len__(self) -> int:
        return len(self.members)


def _conj_set(g: Perm, elems: frozenset) -> frozenset:
    return frozenset(conjugate(g, x) for x in elems)


@functools.lru_cache(maxsize=None)
def enumerate_regular(n: int, tag: str | IsoType8) -> RegularClass:
    """All regular subgroups of S_n isomorphic to ``tag``.

    These form one S_n-conjugacy class (that of ρ(T)); it is traced as an
    orbit under the two standard generators of S_n.
    """
    if not 1 <= n <= 8:
        raise PermError(f"regular-subgroup enumeration supports degree <= 8, not {n}")
    tag = str(tag)
    table = cayley_table(tag)
    if len(table) != n:
        raise PermError(f"type {tag} has order {len(table)}, not {n}")
    base = frozenset(right_regular(table).elements)
    sym_gens = symmetric_group(n).generators
    seen = {base}
    todo = [base]
    while todo:
        S = todo.pop()
        for g in sym_gens:
            T = _conj_set(g, S)
            if T not in seen:
                seen.add(T)
                todo.append(T)
    members = sorted((PermGroup.from_elements(S, n) for S in seen), key=PermGroup.sort_key)
    return RegularClass(tag, tuple(members))


def normalized_by(N: PermGroup, L: PermGroup) -> bool:
    """True iff every generator of L conjugates the regular group N onto itself."""
    if not is_regular(N):
        raise PermError("normalized_by expects a regular subgroup")
    if N.degree != L.degree:
        raise PermError("degree mismatch")
    elems = N.element_set
    return all(conjugate(g, x) in elems for g in L.generators for x in N.generators)


def regular_table(N: PermGroup) -> tuple[Table, dict[int, int]]:
    """Cayley table of a regular N plus the point relabeling that turns N into ρ(T).

    Elements are indexed in sorted order (identity first); the product used
    is ``e_i * e_j := e_j ∘ e_i``, and point p goes to the index of the
    unique element sending 1 to p.
    """
    elems = N.elements
    index = {p: i for i, p in enumerate(elems)}
    table = tuple(tuple(index[compose(b, a)] for b in elems) for a in elems)
    relabel = {e(1): i for i, e in enumerate(elems)}
    return table, relabel


def in_holomorph(N: PermGroup, L: PermGroup) -> bool:
    """Holomorph formulation: L, transported so that N becomes ρ(N), lies in Hol(N)."""
    table, relabel = regular_table(N)
    hol = holomorph(table)
    n = N.degree
    for g in L.generators:
        moved = [0] * n
        for p in range(1, n + 1):
            moved[relabel[p]] = relabel[g(p)]
        if Perm._raw(moved) not in hol:
            return False
    return True


# ---------------------------------------------------------------------------
# Transitive-subgroup probe

def conjugacy_class_reps(H: PermGroup) -> list[Perm]:
    reps = []
    seen: set[Perm] = set()
    for x in H:
        if x in seen:
            continue
        reps.append(x)
        cls = {x}
        todo = [x]
        while todo:
            y = todo.pop()
            for g in H.generators:
                z = conjugate(g, y)
                if z not in cls:
                    cls.add(z)
                    todo.append(z)
        seen |= cls
    return reps


@dataclass
class ProbeReport:
    found: bool
    transitive_count: int        # distinct transitive subgroups of the probe order seen
    matching_count: int          # of those, how many are isomorphic to the probe
    used_triples: bool


def _closure_capped(gens, degree, cap):
    try:
        return frozenset(generate(gens, cap, degree))
    except PermError:
        return None


def probe_transitive_subgroups(H: PermGroup, order: int, probe: PermGroup,
                               stop_at_first: bool = True) -> ProbeReport:
    """Search subgroups of H of the given order generated by pairs (then triples).

    The first generator runs over conjugacy-class representatives of H,
    which loses nothing since transitivity and isomorphism type are
    invariant under conjugation in H.
    """
    if H.order > PROBE_LIMIT:
        raise PermError(f"probe limited to |H| <= {PROBE_LIMIT}")
    if order > H.order or H.order % order or probe.order != order:
        return ProbeReport(False, 0, 0, False)
    deg = H.degree
    limit = max(64, order)
    probe_orders = element_orders(probe)
    usable = [x for x in H if order % x.order() == 0]
    reps = [a for a in conjugacy_class_reps(H) if order % a.order() == 0]
    found: dict[frozenset, list[Perm]] = {}
    hits: dict[frozenset, bool] = {}

    def visit(gens) -> bool:
        S = _closure_capped(gens, deg, order)
        if S is None or S in found:
            return False
        found[S] = list(gens)
        if len(S) != order:
            return False
        K = PermGroup(gens, deg, elements=S)
        if not is_transitive(K):
            return False
        ok = element_orders(K) == probe_orders and are_isomorphic(K, probe, limit)
        hits[S] = ok
        return ok

    for a in reps:
        for b in usable:
            if visit([a, b]) and stop_at_first:
                return _report(H, hits, False)
    used_triples = False
    if not any(hits.values()):
        used_triples = True
        small = [(S, g) for S, g in found.items() if len(S) < order]
        for S, gens in small:
            for c in usable:
                if c in S:
                    continue
                if visit(gens + [c]) and stop_at_first:
                    return _report(H, hits, True)
    return _report(H, hits, used_triples)


def _report(H: PermGroup, hits: dict[frozenset, bool], used_triples: bool) -> ProbeReport:
    # close the transitive hits under conjugation by H to count them exactly
    orbit: dict[frozenset, bool] = {}
    for S, ok in hits.items():
        if S in orbit:
            continue
        todo = [S]
        orbit[S] = ok
        while todo:
            X = todo.pop()
            for g in H.generators:
                Y = _conj_set(g, X)
                if Y not in orbit:
                    orbit[Y] = ok
                    todo.append(Y)
    return ProbeReport(any(orbit.values()), len(orbit), sum(orbit.values()), used_triples)


def reference_group(probe: str | PermGroup) -> PermGroup:
    if isinstance(probe, PermGroup):
        return probe
    if probe == "S4":
        return symmetric_group(4)
    raise KeyError(f"unknown probe type {probe!r}")


_PROBES: dict[tuple, ProbeReport] = {}


def cached_probe(H: PermGroup, order: int, probe: PermGroup, stop_at_first: bool = True) -> ProbeReport:
    """Memoized probe; a completed full search also answers first-hit queries."""
    full = _PROBES.get((H, order, probe, False))
    if full is not None:
        return full
    key = (H, order, probe, stop_at_first)
    if key not in _PROBES:
        _PROBES[key] = probe_transitive_subgroups(H, order, probe, stop_at_first)
    return _PROBES[key]


def has_transitive_iso_subgroup(H: PermGroup, order: int, probe: str | PermGroup = "S4") -> bool:
    ref = reference_group(probe)
    if order > H.order:
        return False
    return cached_probe(H, order, ref).found


def regular_type(N: PermGroup) -> str:
    return iso_type(N)
