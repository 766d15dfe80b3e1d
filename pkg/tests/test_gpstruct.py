import itertools

import pytest

from hopfgalois import paperdata
from hopfgalois.gpstruct import (
    build_lambda, canonical_relabel, conjugation_implementer, core, field_label,
    find_structures, fixed_field_subgroup, g_isomorphisms, is_equivariant, is_stable,
    lambda_rho_compare, orbit_fixed_conditions, right_translations, stable_subgroups,
)
from hopfgalois.permcore import (
    PermError, PermGroup, compose, conjugate, invert, is_regular, is_subgroup_normal,
    subgroups,
)
from hopfgalois.regenum import cayley_table

from conftest import P


def P4(text):
    return P(text, 4)


S4_POINT1 = PermGroup([P4("(2,3,4)"), P4("(2,3)")], 4)
A4 = PermGroup([P4("(1,2,3)"), P4("(2,3,4)")], 4)


# --- λ ----------------------------------------------------------------------

def test_lambda_is_a_faithful_homomorphism(paper_ctx):
    ctx = paper_ctx
    assert ctx.n == 8 and ctx.lambda_group.order == 24
    for g, h in itertools.product(list(ctx.G)[::3], list(ctx.G)[::2]):
        assert ctx.lam(compose(g, h)) == compose(ctx.lam(g), ctx.lam(h))
    assert len(set(ctx.lam_map.values())) == 24
    assert len(core(*paperdata.paper_groups())) == 1


def test_lambda_moves_cosets(paper_ctx):
    for g in paper_ctx.G:
        for i in range(1, 9):
            assert paper_ctx.lam(g)(i) == paper_ctx.point_of(compose(g, paper_ctx.rep(i)))


def test_relabel_hits_reference_generators(paper_ctx, tau, sigma):
    target = paperdata.lambda_target()
    assert paper_ctx.lam(tau) == target["tau"]
    assert paper_ctx.lam(sigma) == target["sigma"]


def test_relabel_fixes_point_one():
    G, Gp = paperdata.paper_groups()
    pi, ctx = canonical_relabel(build_lambda(G, Gp), list(paperdata.lambda_target().values()))
    assert pi(1) == 1
    assert ctx.rep(1).is_identity()


def test_relabel_rejects_impossible_target():
    G, Gp = paperdata.paper_groups()
    ctx = build_lambda(G, Gp)
    with pytest.raises(PermError):
        canonical_relabel(ctx, [P("(1,2,3,4,5,6,7,8)"), P("(1,2)")])


def test_lambda_of_subgroup_is_point_stabilizer(paper_ctx):
    lam_gp = PermGroup([paper_ctx.lam(g) for g in paper_ctx.Gp.generators], 8)
    assert lam_gp == PermGroup([P(paperdata.example()["lambda_subgroup"])])
    stab = PermGroup.from_elements([x for x in paper_ctx.lambda_group if x(1) == 1], 8)
    assert lam_gp == stab


def test_transposition_sits_over_point_seven(paper_ctx):
    assert paper_ctx.point_of(P4("(2,3)")) == 7


def test_build_lambda_rejects_non_subgroup():
    with pytest.raises(PermError):
        build_lambda(PermGroup([P4("(1,2,3)")], 4), PermGroup([P4("(1,2)")], 4))


# --- structures -------------------------------------------------------------

def test_four_structures_match_reference(structures):
    expected = paperdata.named_structures()
    assert sorted(structures) == ["N_1", "N_2", "N_3", "N_4"]
    for label, gens in expected.items():
        assert structures[label].N == PermGroup(list(gens.values()), 8)
        assert structures[label].type == "C2xC2xC2"


def test_structures_are_regular_and_normalized(paper_ctx, structures):
    for h in structures.values():
        assert is_regular(h.N, 8)
        assert all(conjugate(lg, x) in h.N.element_set for lg in paper_ctx.lambda_group for x in h.N)


def test_filters_do_not_change_the_answer(paper_ctx, structures):
    unfiltered = find_structures(paper_ctx, use_filters=False)
    assert {h.N.element_set for h in unfiltered} == {h.N.element_set for h in structures.values()}


def test_shared_translation_t(N):
    # N_1 and N_2 share the element t
    assert N["N_1"]["t"] == N["N_2"]["t"]


# --- action of G on N -------------------------------------------------------

def test_action_table(paper_ctx, N, tau, sigma):
    table = paperdata.action_table()
    names = {}
    for gens in N.values():
        names.update(gens)
    count = 0
    for row, g in (("tau", tau), ("sigma", sigma)):
        lg = paper_ctx.lam(g)
        for col, word in table[row].items():
            owner = next(gens for gens in N.values() if col in gens)
            assert conjugate(lg, names[col]) == paperdata.parse_word(word, owner), (row, col)
            count += 1
    assert count == 22


# --- stable subgroups -------------------------------------------------------

def _stable_by_brute_force(ctx, H):
    return [S for S in subgroups(H.N)
            if all(conjugate(lg, x) in S.element_set for lg in ctx.lambda_group for x in S)]


@pytest.mark.parametrize("label", ["N_1", "N_2", "N_3", "N_4"])
def test_stable_subgroups_against_brute_force(paper_ctx, structures, label):
    H = structures[label]
    found = stable_subgroups(paper_ctx, H)
    assert {s.S.element_set for s in found} == {S.element_set for S in _stable_by_brute_force(paper_ctx, H)}


@pytest.mark.parametrize("label", ["N_1", "N_2", "N_3", "N_4"])
def test_proper_stable_table(paper_ctx, structures, N, label):
    want = {(PermGroup([paperdata.parse_word(w, N[label]) for w in gens.split(",")], 8).element_set, field)
            for gens, field in paperdata.stable_table()[label]}
    got = {(st.S.element_set, st.label)
           for st in stable_subgroups(paper_ctx, structures[label]) if st.is_proper_nontrivial(8)}
    assert got == want


def test_field_labels_name_the_expected_groups(paper_ctx, structures):
    for h in structures.values():
        for st in stable_subgroups(paper_ctx, h):
            if st.label == "k(α)":
                assert st.G_S == S4_POINT1
            elif st.label == "k(√δ)":
                assert st.G_S == A4
            elif st.label == "k":
                assert st.G_S.order == 24
            elif st.label == "K":
                assert st.G_S == paper_ctx.Gp


@pytest.mark.parametrize("label", ["N_1", "N_2", "N_3", "N_4"])
def test_degree_formula_and_inclusion_reversal(paper_ctx, structures, label):
    found = stable_subgroups(paper_ctx, structures[label])
    for st in found:
        assert st.degree_over_k * st.S.order == 8
        assert st.G_S.order == 3 * st.S.order          # |G_S| = |G| / [K^S : k]
        assert paper_ctx.Gp <= st.G_S
    for a, b in itertools.permutations(found, 2):
        if a.S <= b.S:
            assert a.G_S <= b.G_S
    assert len({st.G_S.element_set for st in found}) == len(found)


def test_fixed_field_subgroup_rejects_unstable(paper_ctx, N):
    S = PermGroup([N["N_3"]["r3"]], 8)
    assert not is_stable(paper_ctx, S)
    with pytest.raises(PermError):
        fixed_field_subgroup(paper_ctx, S)


def test_generic_field_label(paper_ctx):
    V4 = PermGroup([P4("(1,2)(3,4)"), P4("(1,3)(2,4)")], 4)
    assert field_label(paper_ctx, V4).startswith("Fix<")


# --- G-isomorphisms ---------------------------------------------------------

def test_only_n3_n4_are_g_isomorphic(paper_ctx, structures):
    for a, b in itertools.combinations(sorted(structures), 2):
        isos = g_isomorphisms(paper_ctx, structures[a], structures[b], prefilter=False)
        assert len(isos) == (1 if (a, b) == ("N_3", "N_4") else 0), (a, b)


def test_prefilter_agrees_with_full_search(paper_ctx, structures):
    for a, b in itertools.product(sorted(structures), repeat=2):
        A, B = structures[a], structures[b]
        assert len(g_isomorphisms(paper_ctx, A, B)) == len(g_isomorphisms(paper_ctx, A, B, prefilter=False))


def test_g_automorphisms(paper_ctx, structures):
    counts = {k: len(g_isomorphisms(paper_ctx, h, h)) for k, h in structures.items()}
    assert counts["N_3"] == 1


def test_phi_maps_generators_and_is_equivariant(paper_ctx, structures, N):
    (iso,) = g_isomorphisms(paper_ctx, structures["N_3"], structures["N_4"])
    for a, b in (("r3", "r4"), ("s3", "s4"), ("t3", "t4")):
        assert iso.map[N["N_3"][a]] == N["N_4"][b]
    assert is_equivariant(paper_ctx, iso.map, list(paper_ctx.lambda_group))


def test_reference_implementer(paper_ctx, structures):
    (iso,) = g_isomorphisms(paper_ctx, structures["N_3"], structures["N_4"])
    rep = conjugation_implementer(paper_ctx, iso)
    s = P(paperdata.example()["g_isomorphism"]["implementer"])
    assert s in rep.candidates
    assert rep.implementer == s
    assert all(c.is_identity() for c in rep.coboundaries)
    # s is an involution, so s⁻¹ λ(g)⁻¹ s λ(g) coincides with s λ(g)⁻¹ s λ(g)
    for lg in paper_ctx.lam_gens:
        assert compose(compose(s, invert(lg)), compose(s, lg)).is_identity()
    for x in structures["N_3"].N:
        assert conjugate(s, x) == iso.map[x]


def test_non_equivariant_iso_is_rejected(paper_ctx, structures):
    from hopfgalois.permcore import isomorphisms
    A, B = structures["N_1"], structures["N_3"]
    phi = isomorphisms(A.N, B.N)[0]
    assert not is_equivariant(paper_ctx, phi)


# --- orbits of G on N_3 -----------------------------------------------------

def test_orbits_on_n3(paper_ctx, structures, N, tau, sigma):
    H = structures["N_3"]
    orbits = orbit_fixed_conditions(paper_ctx, H, [x for _, x in H.named_elements()])
    sizes = sorted((len(o.members), o.stabilizer.order) for o in orbits)
    assert sizes == [(1, 24), (3, 8), (4, 6)]
    n = N["N_3"]
    r_orbit = next(o for o in orbits if o.rep == n["r3"])
    assert set(r_orbit.members) == {n["r3"], n["t3"], compose(n["r3"], n["t3"])}
    assert r_orbit.stabilizer == PermGroup([sigma, tau ** 2], 4)
    st = compose(sigma, tau)
    assert conjugate(paper_ctx.lam(st), n["r3"]) == n["t3"]
    assert conjugate(paper_ctx.lam(tau), n["r3"]) == compose(n["r3"], n["t3"])
    s_orbit = next(o for o in orbits if o.rep == n["s3"])
    assert s_orbit.stabilizer == S4_POINT1
    for m, g in r_orbit.transports.items():
        assert conjugate(paper_ctx.lam(g), r_orbit.rep) == m


# --- λ versus ρ -------------------------------------------------------------

def test_q8_lambda_rho():
    rep = lambda_rho_compare(cayley_table("Q8"))
    assert rep.isomorphic
    assert rep.g_isos == []
    assert len(rep.stable_lambda) == len(rep.stable_rho) == 6
    assert rep.same_images


def test_lambda_and_rho_commute():
    rep = lambda_rho_compare(cayley_table("Q8"))
    assert all(compose(a, b) == compose(b, a) for a in rep.lam.N for b in rep.rho.N)
    assert right_translations(rep.ctx) == rep.rho.N


@pytest.mark.parametrize("tag", ["S3", "D8"])
def test_stable_means_normal_for_lambda_and_any_for_rho(tag):
    rep = lambda_rho_compare(cayley_table(tag))
    lam_subs = subgroups(rep.lam.N)
    normal = {S.element_set for S in lam_subs if is_subgroup_normal(S, rep.lam.N)}
    assert {s.S.element_set for s in rep.stable_lambda} == normal
    assert len(rep.stable_rho) == len(subgroups(rep.rho.N))
    assert len(normal) < len(lam_subs)


def test_abelian_lambda_equals_rho():
    rep = lambda_rho_compare(cayley_table("C2xC2xC2"))
    assert rep.lam.N == rep.rho.N
    assert len(rep.g_isos) == 168
    assert rep.same_images
