"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run ``python3 tests/test_acceptance.py`` for the verdict lines alone.
"""
import itertools
import random
import sys
import time
from fractions import Fraction

import pytest

from hopfgalois import paperdata
from hopfgalois.gpstruct import (
    conjugation_implementer, find_structures, g_isomorphisms, lambda_rho_compare,
    stable_subgroups,
)
from hopfgalois.permcore import (
    IsoType8, Perm, PermGroup, compose, conjugate, invert, symmetric_group,
)
from hopfgalois.quartic import (
    FieldElt, Poly, elementary_symmetric, galois_act, normal_form, paper_inequality_check,
    preimage_point,
)
from hopfgalois.regenum import (
    cayley_table, enumerate_regular, holomorph_feasibility, holomorph_of_type, in_holomorph,
    normalized_by, normalizer_in_sym, probe_transitive_subgroups, reference_group,
)

SEED = 20261018


def _setup():
    _, ctx = paperdata.paper_context()
    structs = find_structures(ctx, named=paperdata.named_structures())
    return ctx, {h.label: h for h in structs}


def _timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


# --- criteria ---------------------------------------------------------------

def criterion_1():
    cls, dt = _timed(lambda: enumerate_regular.__wrapped__(8, "C2xC2xC2"))
    return len(cls) == 30 and dt < 10, f"{len(cls)} members in {dt:.2f}s"


def criterion_2():
    ctx, structs = _setup()
    expected = {label: PermGroup(list(g.values()), 8).element_set
                for label, g in paperdata.named_structures().items()}
    got = {label: h.N.element_set for label, h in structs.items()}
    return got == expected, f"{len(got)} structures"


def criterion_3():
    ctx, _ = _setup()
    L = ctx.lambda_group
    feasible = [t.value for t in IsoType8 if holomorph_feasibility(t, L.order)]
    rep, dt = _timed(lambda: probe_transitive_subgroups(
        holomorph_of_type("Q8"), 24, reference_group("S4"), stop_at_first=False))
    ok = feasible == ["C2xC2xC2", "Q8"] and not rep.found and dt < 60
    return ok, f"feasible={feasible}, Q8 transitive S4={rep.found} ({rep.transitive_count} transitive, {dt:.1f}s)"


def criterion_4():
    ctx, structs = _setup()
    names = {k: v for h in structs.values() for k, v in h.names.items()}
    owner = {k: h for h in structs.values() for k in h.names}
    gens = paperdata.group_generators()
    table = paperdata.action_table()
    bad, total = [], 0
    for row, cols in table.items():
        lg = ctx.lam(gens[row])
        for col, word in cols.items():
            total += 1
            if conjugate(lg, names[col]) != paperdata.parse_word(word, owner[col].names):
                bad.append(f"{row}/{col}")
    return not bad and total == 22, f"{total - len(bad)}/{total} entries"


def criterion_5():
    ctx, structs = _setup()
    want = {label: {(PermGroup([paperdata.parse_word(w, structs[label].names) for w in g.split(",")], 8)
                     .element_set, f) for g, f in rows}
            for label, rows in paperdata.stable_table().items()}
    got = {label: {(st.S.element_set, st.label) for st in stable_subgroups(ctx, h) if st.is_proper_nontrivial(8)}
           for label, h in structs.items()}
    return got == want, ", ".join(f"{k}:{len(v)}" for k, v in sorted(got.items()))


def criterion_6():
    ctx, structs = _setup()
    iso_pairs = {}
    for a, b in itertools.combinations(sorted(structs), 2):
        isos = g_isomorphisms(ctx, structs[a], structs[b], prefilter=False)
        if isos:
            iso_pairs[(a, b)] = isos
    if list(iso_pairs) != [("N_3", "N_4")] or len(iso_pairs[("N_3", "N_4")]) != 1:
        return False, f"pairs {list(iso_pairs)}"
    (iso,) = iso_pairs[("N_3", "N_4")]
    n3, n4 = structs["N_3"].names, structs["N_4"].names
    generatorwise = all(iso.map[n3[a]] == n4[b] for a, b in (("r3", "r4"), ("s3", "s4"), ("t3", "t4")))
    autos = len(g_isomorphisms(ctx, structs["N_3"], structs["N_3"], prefilter=False))
    s = Perm.parse(paperdata.example()["g_isomorphism"]["implementer"], 8)
    implements = all(conjugate(s, x) == iso.map[x] for x in structs["N_3"].N)
    cob = all(compose(compose(s, invert(lg)), compose(s, lg)).is_identity() for lg in ctx.lam_gens)
    in_scan = s in conjugation_implementer(ctx, iso).candidates
    ok = generatorwise and autos == 1 and implements and cob and in_scan
    return ok, f"unique Φ, generator-wise={generatorwise}, |Aut_G(N_3)|={autos}, s implements={implements}, coboundary=Id:{cob}"


def criterion_7():
    ctx, structs = _setup()
    Gp = ctx.Gp.element_set
    ok, total = True, 0
    for label, row in paperdata.preimage_tables().items():
        for word, reference in row.items():
            total += 1
            ours = ctx.rep(preimage_point(paperdata.parse_word(word, structs[label].names)))
            ok &= compose(invert(ours), reference) in Gp
    return ok and total == 16, f"{total} entries compared as cosets"


def criterion_8():
    ctx, structs = _setup()
    (iso,) = g_isomorphisms(ctx, structs["N_3"], structs["N_4"])
    rep, dt = _timed(lambda: paper_inequality_check(ctx, structs["N_3"], structs["N_4"], iso.map))
    return rep.passed and dt < 1, f"μ3={rep.mu_source!s:.40}…, μ4 differs={rep.mu_differ}, {dt:.3f}s"


def criterion_9():
    rep = lambda_rho_compare(cayley_table("Q8"))
    ok = (rep.isomorphic and not rep.g_isos and len(rep.stable_lambda) == len(rep.stable_rho) == 6
          and rep.same_images)
    return ok, f"λ≅ρ={rep.isomorphic}, G-isos={len(rep.g_isos)}, stable={len(rep.stable_lambda)}/{len(rep.stable_rho)}"


def _random_poly(rng, terms=3, root_deg=2):
    out = {}
    for _ in range(terms):
        e = tuple(rng.randint(0, 1) for _ in range(4)) + tuple(rng.randint(0, root_deg) for _ in range(4))
        out[e] = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 2))
    return Poly(out)


def criterion_10():
    rng = random.Random(SEED)
    notes = []

    # normalization versus holomorph membership on sampled (N, L)
    pool = [N for t in IsoType8 for N in rng.sample(enumerate_regular(8, t).members, 2)]
    agree = 0
    for k in range(50):
        N = pool[k % len(pool)]
        if k % 2:
            norm = normalizer_in_sym(N).elements
            L = PermGroup([rng.choice(norm), rng.choice(norm)], 8)
        else:
            L = PermGroup([Perm(rng.sample(range(1, 9), 8)) for _ in range(2)], 8)
        agree += normalized_by(N, L) == in_holomorph(N, L)
    notes.append(f"normalizer {agree}/50")

    # orbit-stabilizer for every order-8 type
    orb = all(len(enumerate_regular(8, t)) * holomorph_of_type(t).order == 40320 for t in IsoType8)
    notes.append(f"orbit-stab {orb}")

    # normal form idempotence and homomorphism
    nf_ok = 0
    for _ in range(100):
        p, q = _random_poly(rng), _random_poly(rng)
        x = FieldElt(p)
        nf_ok += (FieldElt(x.poly) == x and FieldElt(p * q) == x * FieldElt(q)
                  and FieldElt(p + q) == x + FieldElt(q))
    notes.append(f"nf {nf_ok}/100")

    ek = all(normal_form(elementary_symmetric(k)) == FieldElt.b(k) for k in range(1, 5))
    notes.append(f"e_k {ek}")

    S4 = list(symmetric_group(4))
    gal = 0
    for _ in range(100):
        g, h = rng.choice(S4), rng.choice(S4)
        x = FieldElt(_random_poly(rng))
        gal += galois_act(compose(g, h), x) == galois_act(g, galois_act(h, x))
    notes.append(f"galois {gal}/100")

    ctx, structs = _setup()
    lattice_ok, checked = True, 0
    for h in structs.values():
        found = stable_subgroups(ctx, h)
        checked += len(found)
        for st in found:
            lattice_ok &= st.degree_over_k * st.S.order == 8 and st.G_S.order * st.degree_over_k == 24
        for a, b in itertools.permutations(found, 2):
            if a.S <= b.S:
                lattice_ok &= a.G_S <= b.G_S
        lattice_ok &= len({st.G_S.element_set for st in found}) == len(found)
    notes.append(f"lattice {lattice_ok} on {checked}")

    ok = agree == 50 and orb and nf_ok == 100 and ek and gal == 100 and lattice_ok
    return ok, ", ".join(notes)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


def _verdict(number, fn):
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash is a failure, reported like one
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return ok, f"{'PASS' if ok else 'FAIL'}  criterion {number:>2}  {detail}"


@pytest.mark.parametrize("number", range(1, 11))
def test_criterion(number, capsys):
    ok, line = _verdict(number, CRITERIA[number - 1])
    with capsys.disabled():
        print(f"\n{line}")
    assert ok, line


if __name__ == "__main__":
    results = [_verdict(k, fn) for k, fn in enumerate(CRITERIA, start=1)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
