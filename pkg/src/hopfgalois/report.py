"""End-to-end pipelines and the JSON/text report they produce."""
from __future__ import annotations

import itertools
import json
from dataclasses import asdict, dataclass, field, fields

from . import paperdata
from .gpstruct import (
    GPContext,
    HGStructure,
    build_lambda,
    canonical_relabel,
    conjugation_implementer,
    core,
    find_structures,
    g_isomorphisms,
    lambda_rho_compare,
    orbit_fixed_conditions,
    stable_subgroups,
)
from .permcore import (
    IsoType8,
    Perm,
    PermError,
    PermGroup,
    compose,
    conjugate,
    generate,
    invert,
    is_regular,
)
from .quartic import paper_inequality_check, preimage_point
from .regenum import (
    cached_probe,
    cayley_table,
    enumerate_regular,
    holomorph_feasibility,
    holomorph_of_type,
    normalized_by,
    reference_group,
)


@dataclass
class Report:
    command: str
    structures: list = field(default_factory=list)
    classification: dict | None = None
    action_table: dict | None = None
    stable_table: dict | None = None
    g_iso_section: dict | None = None
    orbit_section: dict | None = None
    preimage_section: dict | None = None
    mu_section: dict | None = None
    hamiltonian_section: dict | None = None
    checks: list = field(default_factory=list)

    def check(self, name: str, passed: bool, detail: str = "") -> bool:
        self.checks.append({"name": name, "passed": bool(passed), "detail": detail})
        return bool(passed)

    @property
    def passed(self) -> bool:
        return all(c["passed"] for c in self.checks)

    def first_failure(self) -> dict | None:
        return next((c for c in self.checks if not c["passed"]), None)

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"

    @classmethod
    def from_json(cls, text: str) -> Report:
        data = json.loads(text)
        names = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in data.items() if k in names})

    def to_text(self) -> str:
        return render_text(self.to_dict())


def render_text(data: dict) -> str:
    """Readable rendering of the JSON report (the JSON stays authoritative)."""
    lines = [f"== {data['command']} =="]
    for key, value in data.items():
        if key in ("command", "checks") or value in (None, [], {}):
            continue
        lines.append("")
        lines.append(f"[{key}]")
        lines.extend(_render(value, 1))
    lines.append("")
    lines.append("[checks]")
    for c in data["checks"]:
        mark = "PASS" if c["passed"] else "FAIL"
        detail = f"  ({c['detail']})" if c["detail"] else ""
        lines.append(f"  {mark}  {c['name']}{detail}")
    return "\n".join(lines) + "\n"


def _render(value, depth: int) -> list[str]:
    pad = "  " * depth
    if isinstance(value, dict):
        out = []
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v and not _flat(v):
                out.append(f"{pad}{k}:")
                out.extend(_render(v, depth + 1))
            else:
                out.append(f"{pad}{k}: {_inline(v)}")
        return out
    if isinstance(value, list):
        out = []
        for v in value:
            if isinstance(v, (dict, list)) and not _flat(v):
                out.append(f"{pad}-")
                out.extend(_render(v, depth + 1))
            else:
                out.append(f"{pad}- {_inline(v)}")
        return out
    return [f"{pad}{_inline(value)}"]


def _flat(v) -> bool:
    if isinstance(v, dict):
        return all(not isinstance(x, (dict, list)) for x in v.values()) and len(v) <= 3
    return all(not isinstance(x, (dict, list)) for x in v)


def _inline(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_inline(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_inline(x)}" for k, x in v.items()) + "}"
    return str(v)


# ---------------------------------------------------------------------------
# shared sections

def _gens(group: PermGroup) -> list[str]:
    return [str(g) for g in group.generators]


def _subgroup_name(H: HGStructure, S: PermGroup) -> str:
    """⟨...⟩ in terms of named elements when names exist, else cycle notation."""
    if not S.generators:
        return "<>"
    if not H.names:
        return "<" + ", ".join(str(g) for g in S.generators) + ">"
    chosen: list[tuple[str, Perm]] = []
    current = {S.identity()}
    for name, x in H.named_elements():
        if len(current) == S.order:
            break
        if x in S and x not in current:
            chosen.append((name, x))
            current = set(generate([g for _, g in chosen], S.order, S.degree))
    return "<" + ",".join(name for name, _ in chosen) + ">"


def structures_section(structs: list[HGStructure]) -> list[dict]:
    return [{"label": h.label, "type": h.type,
             "generators": ({k: str(v) for k, v in h.names.items()} if h.names else _gens(h.N))}
            for h in structs]


def stable_section(ctx: GPContext, structs: list[HGStructure]) -> dict:
    out = {}
    for h in structs:
        rows = []
        for st in stable_subgroups(ctx, h):
            rows.append({
                "subgroup": _subgroup_name(h, st.S),
                "order": st.S.order,
                "G_S": _gens(st.G_S) or ["()"],
                "G_S_order": st.G_S.order,
                "field": st.label,
                "degree": st.degree_over_k,
                "proper": st.is_proper_nontrivial(ctx.n),
            })
        out[h.label] = rows
    return out


def giso_section(ctx: GPContext, structs: list[HGStructure]) -> dict:
    pairs = []
    for A, B in itertools.combinations(structs, 2):
        isos = g_isomorphisms(ctx, A, B)
        entry = {"source": A.label, "target": B.label, "count": len(isos), "maps": []}
        for iso in isos:
            rep = conjugation_implementer(ctx, iso)
            entry["maps"].append({
                "images": {_word(A, x): _word(B, iso.map[x]) for x in (A.names.values() or A.N.generators)},
                "implementer": str(rep.implementer) if rep.implementer else None,
                "implementer_candidates": [str(s) for s in rep.candidates],
                "coboundaries": [str(c) for c in rep.coboundaries],
                "coboundaries_in_centralizer": rep.in_centralizer,
            })
        pairs.append(entry)
    autos = {h.label: len(g_isomorphisms(ctx, h, h)) for h in structs}
    return {"pairs": pairs, "g_automorphism_counts": autos}


def _word(H: HGStructure, x: Perm) -> str:
    return H.word(x) if H.names else str(x)


# ---------------------------------------------------------------------------
# paper-example

def run_paper_example() -> Report:
    rep = Report("paper-example")
    data = paperdata.example()
    G, Gp = paperdata.paper_groups()
    gen_names = list(paperdata.group_generators())

    raw = build_lambda(G, Gp)
    rep.check("G has order 24", G.order == 24, f"|G| = {G.order}")
    rep.check("index [G:G'] is 8", raw.n == 8)
    rep.check("λ is faithful", len(core(G, Gp)) == 1)
    _, ctx = canonical_relabel(raw, list(paperdata.lambda_target().values()))
    lam_gp = PermGroup([ctx.lam(g) for g in Gp.generators], 8)
    expected = PermGroup([Perm.parse(data["lambda_subgroup"], 8)])
    rep.check("λ(G') matches the reference generator", lam_gp == expected, _gens(lam_gp)[0])

    # classification of candidate types
    L = ctx.lambda_group
    cls = {}
    for t in IsoType8:
        cls[t.value] = {"holomorph_order": holomorph_of_type(t).order,
                        "divisible_by_24": holomorph_feasibility(t, L.order),
                        "class_length": len(enumerate_regular(8, t))}
    s4 = reference_group("S4")
    q8 = cached_probe(holomorph_of_type("Q8"), 24, s4, stop_at_first=False)
    c2 = cached_probe(holomorph_of_type("C2xC2xC2"), 24, s4)
    cls["Q8"]["transitive_order24_subgroups"] = q8.transitive_count
    cls["Q8"]["transitive_S4"] = q8.found
    cls["C2xC2xC2"]["transitive_S4"] = c2.found
    rep.classification = cls
    feasible = [t for t, v in cls.items() if v["divisible_by_24"]]
    rep.check("holomorph filter keeps C2xC2xC2 and Q8", feasible == ["C2xC2xC2", "Q8"], ", ".join(feasible))
    rep.check("Hol(Q8) has no transitive S4", not q8.found,
              f"{q8.transitive_count} transitive order-24 subgroups, none isomorphic to S4")
    rep.check("C2xC2xC2 class has the reference length",
              cls[data["class_type"]]["class_length"] == data["class_length"])

    named = paperdata.named_structures()
    structs = find_structures(ctx, named=named)
    rep.structures = structures_section(structs)
    labels = [h.label for h in structs]
    rep.check("exactly the four reference structures", labels == sorted(named) and all(h.names for h in structs),
              ", ".join(labels))
    rep.check("all structures are C2xC2xC2", all(h.type == "C2xC2xC2" for h in structs))
    by_label = {h.label: h for h in structs}

    # action table
    owner = {}
    for h in structs:
        for name, x in h.names.items():
            owner.setdefault(name, h)
    table = {}
    for gname, g in zip(gen_names, ctx.gens):
        lg = ctx.lam(g)
        table[gname] = {name: h.word(conjugate(lg, h.names[name])) for name, h in owner.items()}
    rep.action_table = table
    golden = paperdata.action_table()
    entries = [(r, c) for r in golden for c in golden[r]]
    bad = [f"{r}/{c}" for r, c in entries if table.get(r, {}).get(c) != golden[r][c]]
    rep.check(f"action table ({len(entries)} entries)", not bad and len(entries) == 22, ", ".join(bad))

    # stable subgroups
    rep.stable_table = stable_section(ctx, structs)
    got = {label: [(row["subgroup"].strip("<>"), row["field"]) for row in rows if row["proper"]]
           for label, rows in rep.stable_table.items()}
    want = paperdata.stable_table()
    rep.check("stable-subgroup table", {k: sorted(v) for k, v in got.items()} == {k: sorted(v) for k, v in want.items()},
              json.dumps(got, ensure_ascii=False))

    # G-isomorphisms
    rep.g_iso_section = giso_section(ctx, structs)
    gi = data["g_isomorphism"]
    nonempty = [(p["source"], p["target"]) for p in rep.g_iso_section["pairs"] if p["count"]]
    rep.check("only N_3, N_4 are G-isomorphic", nonempty == [(gi["source"], gi["target"])], str(nonempty))
    pair = next((p for p in rep.g_iso_section["pairs"] if (p["source"], p["target"]) == (gi["source"], gi["target"])), None)
    unique = pair is not None and pair["count"] == 1
    rep.check("the G-isomorphism is unique", unique)
    if unique:
        m = pair["maps"][0]
        rep.check("Φ maps generators as expected", m["images"] == gi["map"], json.dumps(m["images"]))
        rep.check("the reference s implements Φ", gi["implementer"] in m["implementer_candidates"])
        s = Perm.parse(gi["implementer"], 8)
        cob = [compose(compose(invert(s), invert(lg)), compose(s, lg)) for lg in ctx.lam_gens]
        rep.check("s λ(g)⁻¹ s λ(g) = Id for τ, σ", all(c.is_identity() for c in cob))
    autos = rep.g_iso_section["g_automorphism_counts"]
    rep.check("N_3 has only the trivial G-automorphism", autos.get(gi["source"]) == 1)

    # H_3 membership data
    n3 = by_label[gi["source"]]
    order = [x for _, x in n3.named_elements()]
    orbits = orbit_fixed_conditions(ctx, n3, order)
    rep.orbit_section = {n3.label: [{
        "representative": n3.word(o.rep),
        "members": [n3.word(x) for x in o.members],
        "stabilizer": _gens(o.stabilizer) or ["()"],
        "stabilizer_order": o.stabilizer.order,
        "transports": {n3.word(x): str(g) for x, g in o.transports.items()},
    } for o in orbits]}
    sizes = sorted(len(o.members) for o in orbits)
    rep.check("N_3 orbit sizes 1, 3, 4", sizes == [1, 3, 4], str(sizes))

    # preimage tables
    pre = {}
    ok = True
    Gp_set = Gp.element_set
    for label, row in paperdata.preimage_tables().items():
        h = by_label[label]
        names = {**h.names}
        pre[label] = {}
        for word, reference_rep in row.items():
            x = paperdata.parse_word(word, names)
            point = preimage_point(x)
            ours = ctx.rep(point)
            same = compose(invert(ours), reference_rep) in Gp_set
            ok &= same
            pre[label][word] = {"point": point, "representative": str(ours), "reference": str(reference_rep), "same_coset": same}
    rep.preimage_section = pre
    rep.check("preimage tables (as cosets of G')", ok and sum(len(v) for v in pre.values()) == 16)

    # the two Hopf actions
    src, tgt = by_label[gi["source"]], by_label[gi["target"]]
    phi = g_isomorphisms(ctx, src, tgt)[0].map
    mu = paper_inequality_check(ctx, src, tgt, phi)
    rep.mu_section = asdict(mu)
    rep.check("displayed expansions are the normal forms", all(e["matches"] for e in mu.expansions))
    rep.check("expansions differ", mu.difference_nonzero)
    rep.check("h ∈ H_3 and Φ(h) ∈ H_4", mu.h_in_source and mu.image_in_target)
    rep.check("μ3(h)(α1) and μ4(Φ(h))(α1) match the displayed sums", mu.mu_source_matches and mu.mu_target_matches)
    rep.check("μ3(h)(α1) ≠ μ4(Φ(h))(α1)", mu.mu_differ)
    return rep


# ---------------------------------------------------------------------------
# discover

class InputError(ValueError):
    pass


def run_discover(group_text: str, subgroup_text: str) -> Report:
    from .permcore import parse_perm_list

    try:
        gens = parse_perm_list(group_text)
        if not gens:
            raise InputError("the group needs at least one generator")
        deg = max(g.degree for g in gens)
        gens = [Perm.parse(str(g), deg) for g in gens]
        sub = parse_perm_list(subgroup_text, deg) if subgroup_text.strip() else []
    except PermError as exc:
        raise InputError(str(exc)) from exc
    try:
        G = PermGroup(gens, deg, cap=40320)
        G.elements
    except PermError as exc:
        raise InputError(f"group too large: {exc}") from exc
    Gp = PermGroup(sub, deg)
    if not Gp <= G:
        raise InputError("the subgroup is not contained in the group")
    n = G.order // Gp.order
    if n > 8:
        raise InputError(f"index {n} is above the supported limit 8")
    ctx = build_lambda(G, Gp)
    rep = Report("discover")
    structs = find_structures(ctx)
    rep.structures = structures_section(structs)
    rep.classification = {"group_order": G.order, "subgroup_order": Gp.order, "degree": n,
                          "lambda": [str(x) for x in ctx.lam_gens],
                          "lambda_faithful": len(core(G, Gp)) == 1}
    rep.stable_table = stable_section(ctx, structs)
    rep.g_iso_section = giso_section(ctx, structs)
    L = ctx.lambda_group
    rep.check("every structure is regular and normalized by λ(G)",
              all(is_regular(h.N, n) and normalized_by(h.N, L) for h in structs))
    return rep


# ---------------------------------------------------------------------------
# hamiltonian

def run_hamiltonian() -> Report:
    rep = Report("hamiltonian")
    cmp = lambda_rho_compare(cayley_table("Q8"))
    sec = {
        "lambda": _gens(cmp.lam.N),
        "rho": _gens(cmp.rho.N),
        "isomorphic": cmp.isomorphic,
        "g_isomorphisms": len(cmp.g_isos),
        "stable_lambda": len(cmp.stable_lambda),
        "stable_rho": len(cmp.stable_rho),
        "same_correspondence_image": cmp.same_images,
        "images": sorted(st.G_S.order for st in cmp.stable_lambda),
    }
    rep.hamiltonian_section = sec
    rep.check("λ(Q8) ≅ ρ(Q8)", cmp.isomorphic)
    rep.check("no G-isomorphism λ(Q8) → ρ(Q8)", not cmp.g_isos)
    rep.check("both stable lattices have all 6 subgroups", sec["stable_lambda"] == sec["stable_rho"] == 6)
    rep.check("identical correspondence images", cmp.same_images)
    return rep
