"""Greither–Pareigis layer: λ on cosets, structure discovery, stable lattices,
G-isomorphisms and the λ/ρ comparison for groups acting on themselves.
"""
from __future__ import annotations

import functools
from collections import Counter
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .permcore import (
    Perm,
    PermError,
    PermGroup,
    all_perms,
    are_isomorphic,
    centralizer_in_sym,
    compose,
    conjugate,
    invert,
    is_regular,
    iso_type,
    isomorphisms,
    orbit,
    subgroups,
)
from .regenum import (
    Table,
    enumerate_regular,
    has_transitive_iso_subgroup,
    holomorph_feasibility,
    holomorph_of_type,
    left_regular,
    normalized_by,
    types_of_order,
)

MAX_INDEX = 16


@dataclass(frozen=True, eq=False)
class GPContext:
    """λ : G → Sym(G/G') in a fixed enumeration of the cosets.

    ``point_reps[i-1]`` is an element g_i of G with λ(g_i)(1) = i, and
    ``cosets[i-1]`` is the coset g_i G'.
    """

    G: PermGroup
    Gp: PermGroup
    n: int
    gens: tuple[Perm, ...]
    lam_gens: tuple[Perm, ...]
    point_reps: tuple[Perm, ...]
    cosets: tuple[frozenset, ...]

    @functools.cached_property
    def _point_of(self) -> dict[Perm, int]:
        return {g: i for i, c in enumerate(self.cosets) for g in c}

    def point_of(self, g: Perm) -> int:
        """1-based point of the coset gG'."""
        return self._point_of[g] + 1

    def rep(self, i: int) -> Perm:
        return self.point_reps[i - 1]

    @functools.cached_property
    def lam_map(self) -> dict[Perm, Perm]:
        pt = self._point_of
        return {g: Perm._raw(pt[compose(g, r)] for r in self.point_reps) for g in self.G}

    def lam(self, g: Perm) -> Perm:
        return self.lam_map[g]

    @functools.cached_property
    def lambda_group(self) -> PermGroup:
        return PermGroup(self.lam_gens, self.n, elements=set(self.lam_map.values()))


def _coset(g: Perm, Gp: PermGroup) -> frozenset:
    return frozenset(compose(g, h) for h in Gp)


def _bfs_points(start_rep: Perm, gens: Sequence[Perm], step) -> list[Perm]:
    """Breadth-first coset walk from 1; ``step(gen_index, point)`` gives the next point."""
    reps = {1: start_rep}
    order = [1]
    for p in order:
        for k, s in enumerate(gens):
            q = step(k, p)
            if q not in reps:
                reps[q] = compose(s, reps[p])
                order.append(q)
    return [reps[i] for i in sorted(reps)]


def build_lambda(G: PermGroup, Gp: PermGroup) -> GPContext:
    if not Gp <= G or Gp.degree != G.degree:
        raise PermError("G' is not a subgroup of G")
    n = G.order // Gp.order
    if n > MAX_INDEX:
        raise PermError(f"index [G:G'] = {n} exceeds {MAX_INDEX}")
    gens = tuple(G.generators)
    ident = G.identity()
    cosets = [_coset(ident, Gp)]
    reps = [ident]
    lookup = {g: 0 for g in cosets[0]}
    for i in range(n):
        if i >= len(reps):
            raise PermError("coset enumeration did not reach every coset")
        for s in gens:
            x = compose(s, reps[i])
            if x not in lookup:
                c = _coset(x, Gp)
                for g in c:
                    lookup[g] = len(cosets)
                cosets.append(c)
                reps.append(x)
    lam_gens = tuple(Perm._raw(lookup[compose(s, r)] for r in reps) for s in gens)
    return GPContext(G, Gp, n, gens, lam_gens, tuple(reps), tuple(cosets))


def canonical_relabel(ctx: GPContext, target: Mapping[Perm, Perm] | Sequence[Perm]) -> tuple[Perm, GPContext]:
    """Find π fixing 1 with π λ(g) π⁻¹ = target(g) on generators; return (π, relabeled ctx)."""
    if isinstance(target, Mapping):
        tgt = tuple(target[g] for g in ctx.gens)
    else:
        tgt = tuple(target)
    if len(tgt) != len(ctx.gens) or any(t.degree != ctx.n for t in tgt):
        raise PermError("target does not assign a degree-n image to every generator")
    pi = {1: 1}
    todo = [1]
    while todo:
        i = todo.pop(0)
        for lg, tg in zip(ctx.lam_gens, tgt):
            j, pj = lg(i), tg(pi[i])
            if j in pi:
                if pi[j] != pj:
                    raise PermError("no relabeling carries λ onto the target")
            else:
                pi[j] = pj
                todo.append(j)
    if sorted(pi.values()) != list(range(1, ctx.n + 1)) or len(pi) != ctx.n:
        raise PermError("no relabeling carries λ onto the target")
    perm = Perm([pi[i] for i in range(1, ctx.n + 1)])
    for lg, tg in zip(ctx.lam_gens, tgt):
        if conjugate(perm, lg) != tg:
            raise PermError("no relabeling carries λ onto the target")
    # new point j holds the old coset of point π⁻¹(j)
    back = invert(perm)
    cosets = tuple(ctx.cosets[back(j) - 1] for j in range(1, ctx.n + 1))
    lookup = {g: i + 1 for i, c in enumerate(cosets) for g in c}
    reps = _bfs_points(ctx.G.identity(), ctx.gens,
                       lambda k, p: tgt[k](p))
    for j, r in enumerate(reps, start=1):
        if lookup[r] != j:
            raise AssertionError("recomputed representative lands in the wrong coset")
    return perm, GPContext(ctx.G, ctx.Gp, ctx.n, ctx.gens, tgt, tuple(reps), cosets)


def core(G: PermGroup, Gp: PermGroup) -> frozenset:
    """Intersection of all conjugates of G' (the kernel of λ)."""
    out = Gp.element_set
    for g in G:
        out = out & frozenset(conjugate(g, h) for h in Gp)
    return out


# ---------------------------------------------------------------------------
# Structures

@dataclass(eq=False)
class HGStructure:
    N: PermGroup
    label: str
    type: str
    names: dict[str, Perm] = field(default_factory=dict)

    def word(self, x: Perm) -> str:
        """Name x as a product of the named generators (for elementary-abelian N)."""
        if x.is_identity():
            return "Id"
        gens = list(self.names.items())
        for mask in range(1, 1 << len(gens)):
            prod = self.N.identity()
            parts = []
            for k, (name, g) in enumerate(gens):
                if mask >> k & 1:
                    prod = compose(prod, g)
                    parts.append(name)
            if prod == x:
                return "".join(parts)
        return str(x)

    def named_elements(self) -> list[tuple[str, Perm]]:
        """Elements in word order Id, r, s, t, rs, rt, st, rst (by subset size)."""
        out = {}
        gens = list(self.names.items())
        masks = sorted(range(1 << len(gens)), key=lambda m: (bin(m).count("1"), [not (m >> k & 1) for k in range(len(gens))]))
        for mask in masks:
            prod = self.N.identity()
            for k, (_, g) in enumerate(gens):
                if mask >> k & 1:
                    prod = compose(prod, g)
            out.setdefault(prod, self.word(prod))
        for x in self.N:
            out.setdefault(x, str(x))
        return [(name, x) for x, name in out.items()]


def find_structures(ctx: GPContext, use_filters: bool = True,
                    named: Mapping[str, Mapping[str, Perm]] | None = None) -> list[HGStructure]:
    """Regular subgroups of S_n normalized by λ(G), one per Hopf–Galois structure.

    With ``use_filters`` the holomorph-order divisibility test and the
    transitive-subgroup probe prune isomorphism types before the scan; the
    result must not depend on it.  ``named`` maps a label to named
    generators; a structure whose group they generate takes that label.
    """
    L = ctx.lambda_group
    found: list[tuple[str, PermGroup]] = []
    for tag in types_of_order(ctx.n):
        if use_filters:
            if not holomorph_feasibility(tag, L.order):
                continue
            if not has_transitive_iso_subgroup(holomorph_of_type(tag), L.order, L):
                continue
        for N in enumerate_regular(ctx.n, tag).members:
            if normalized_by(N, L):
                found.append((tag, N))
    known = {}
    for label, gens in (named or {}).items():
        known[PermGroup(list(gens.values()), ctx.n).element_set] = (label, dict(gens))
    out = []
    for k, (tag, N) in enumerate(found, start=1):
        label, names = known.get(N.element_set, (f"N_{k}", {}))
        out.append(HGStructure(N, label, tag, names))
    if known and all(h.names for h in out):
        out.sort(key=lambda h: h.label)
    return out


def is_stable(ctx: GPContext, S: PermGroup) -> bool:
    elems = S.element_set
    return all(conjugate(lg, x) in elems for lg in ctx.lam_gens for x in S.generators)


@dataclass(eq=False)
class StableSubgroup:
    S: PermGroup
    G_S: PermGroup
    degree_over_k: int
    label: str

    def is_proper_nontrivial(self, n: int) -> bool:
        return 1 < self.S.order < n


def fixed_field_subgroup(ctx: GPContext, S: PermGroup) -> PermGroup:
    """G_S = {g ∈ G : λ(g)(1) lies in the S-orbit of 1}."""
    pts = set(orbit(S, 1)) if S.generators else {1}
    elems = [g for g, lg in ctx.lam_map.items() if lg(1) in pts]
    try:
        G_S = PermGroup.from_elements(elems, ctx.G.degree)
        closed = G_S.element_set == frozenset(elems)
    except PermError:
        closed = False
    if not closed:
        raise PermError("G_S is not a subgroup; S is not λ(G)-stable")
    return G_S


def field_label(ctx: GPContext, G_S: PermGroup) -> str:
    """Name the intermediate field fixed by G_S (quartic-tower names where they apply)."""
    if G_S == ctx.G:
        return "k"
    if G_S == ctx.Gp:
        return "K"
    stab1 = frozenset(g for g in ctx.G if g(1) == 1)
    if G_S.element_set == stab1:
        return "k(α)"
    even = frozenset(g for g in ctx.G if g.sign() == 1)
    if even != ctx.G.element_set and G_S.element_set == even:
        return "k(√δ)"
    gens = ",".join(str(g) for g in G_S.generators) or "()"
    return f"Fix<{gens}>"


def stable_subgroups(ctx: GPContext, H: HGStructure) -> list[StableSubgroup]:
    out = []
    for S in subgroups(H.N):
        if not is_stable(ctx, S):
            continue
        G_S = fixed_field_subgroup(ctx, S)
        out.append(StableSubgroup(S, G_S, ctx.n // S.order, field_label(ctx, G_S)))
    return out


def lattice_signature(ctx: GPContext, H: HGStructure) -> Counter:
    return Counter((st.S.order, st.label) for st in stable_subgroups(ctx, H))


# ---------------------------------------------------------------------------
# G-isomorphisms

@dataclass(eq=False)
class GIso:
    source: HGStructure
    target: HGStructure
    map: dict[Perm, Perm]
    implementer: Perm | None = None


def is_equivariant(ctx: GPContext, phi: Mapping[Perm, Perm], lams: Sequence[Perm] | None = None) -> bool:
    lams = ctx.lam_gens if lams is None else lams
    return all(phi[conjugate(lg, x)] == conjugate(lg, fx) for lg in lams for x, fx in phi.items())


def g_isomorphisms(ctx: GPContext, A: HGStructure, B: HGStructure, prefilter: bool = True) -> list[GIso]:
    """Isomorphisms A.N → B.N commuting with conjugation by λ(G)."""
    if prefilter and lattice_signature(ctx, A) != lattice_signature(ctx, B):
        return []
    return [GIso(A, B, phi) for phi in isomorphisms(A.N, B.N) if is_equivariant(ctx, phi)]


@dataclass
class ImplementerReport:
    candidates: list[Perm]
    implementer: Perm | None
    coboundaries: list[Perm]          # s⁻¹ λ(g)⁻¹ s λ(g) per generator g of G
    in_centralizer: bool


def conjugation_implementer(ctx: GPContext, iso: GIso) -> ImplementerReport:
    """Permutations s with s n s⁻¹ = Φ(n) on the source group, by a scan of S_n."""
    src = iso.source.N
    pairs = [(x, iso.map[x]) for x in src.generators]
    cands = [s for s in all_perms(ctx.n) if all(conjugate(s, x) == y for x, y in pairs)]
    if not cands:
        return ImplementerReport([], None, [], False)
    cent = centralizer_in_sym(src).element_set

    def cobs(s):
        si = invert(s)
        return [compose(compose(si, invert(lg)), compose(s, lg)) for lg in ctx.lam_gens]

    def rank(s):
        cb = cobs(s)
        return (not all(c in cent for c in cb), sum(not c.is_identity() for c in cb), s)

    best = min(cands, key=rank)
    cb = cobs(best)
    iso.implementer = best
    return ImplementerReport(cands, best, cb, all(c in cent for c in cb))


# ---------------------------------------------------------------------------
# Fixed-point description of H = K̃[N]^G

@dataclass
class OrbitInfo:
    rep: Perm
    members: list[Perm]
    stabilizer: PermGroup
    transports: dict[Perm, Perm]      # member -> g ∈ G with λ(g) rep λ(g)⁻¹ = member


def orbit_fixed_conditions(ctx: GPContext, H: HGStructure,
                           order: Sequence[Perm] | None = None) -> list[OrbitInfo]:
    """Orbits of G on N (conjugation through λ) with stabilizers and transporters."""
    order = list(order) if order is not None else list(H.N.elements)
    rank = {x: i for i, x in enumerate(order)}
    done: set[Perm] = set()
    out = []
    for rep in order:
        if rep in done:
            continue
        transports = {rep: ctx.G.identity()}
        queue = [rep]
        for x in queue:
            for s, lg in zip(ctx.gens, ctx.lam_gens):
                y = conjugate(lg, x)
                if y not in transports:
                    transports[y] = compose(s, transports[x])
                    queue.append(y)
        members = sorted(transports, key=rank.__getitem__)
        stab = [g for g in ctx.G if conjugate(ctx.lam(g), rep) == rep]
        out.append(OrbitInfo(rep, members, PermGroup.from_elements(stab, ctx.G.degree),
                             {m: transports[m] for m in members}))
        done |= set(members)
    return out


# ---------------------------------------------------------------------------
# λ versus ρ for a group acting on itself

@dataclass
class LambdaRhoReport:
    ctx: GPContext
    lam: HGStructure
    rho: HGStructure
    isomorphic: bool
    g_isos: list[GIso]
    stable_lambda: list[StableSubgroup]
    stable_rho: list[StableSubgroup]
    same_images: bool


def right_translations(ctx: GPContext) -> PermGroup:
    """ρ(G) = {x ↦ x·h} on the points of a G' = 1 context."""
    perms = [Perm._raw(ctx.point_of(compose(r, h)) - 1 for r in ctx.point_reps) for h in ctx.G]
    return PermGroup.from_elements(perms, ctx.n)


def lambda_rho_compare(table: Table) -> LambdaRhoReport:
    if len(table) > MAX_INDEX:
        raise PermError(f"group order limited to {MAX_INDEX}")
    G = left_regular(table)
    ctx = build_lambda(G, PermGroup([], G.degree))
    lamN = ctx.lambda_group
    rhoN = right_translations(ctx)
    if not (is_regular(lamN) and is_regular(rhoN)):
        raise AssertionError("translations are not regular")
    A = HGStructure(lamN, "lambda", iso_type(lamN))
    B = HGStructure(rhoN, "rho", iso_type(rhoN))
    isos = g_isomorphisms(ctx, A, B, prefilter=False)
    st_l = stable_subgroups(ctx, A)
    st_r = stable_subgroups(ctx, B)
    same = {s.G_S.element_set for s in st_l} == {s.G_S.element_set for s in st_r}
    return LambdaRhoReport(ctx, A, B, are_isomorphic(lamN, rhoN), isos, st_l, st_r, same)
