"""Loader for the degree-8 example fixtures shipped under ``data/paper``."""
from __future__ import annotations

import functools
import json
from importlib import resources

from .gpstruct import GPContext, build_lambda, canonical_relabel
from .permcore import Perm, PermGroup, compose

_DATA = "hopfgalois.data.paper"


def _read(name: str) -> str:
    return resources.files(_DATA).joinpath(name).read_text(encoding="utf-8")


@functools.lru_cache(maxsize=None)
def example() -> dict:
    return json.loads(_read("example.json"))


def _tsv(name: str) -> list[list[str]]:
    return [line.split("\t") for line in _read(name).splitlines() if line.strip()]


def group_generators() -> dict[str, Perm]:
    g = example()["group"]
    return {name: Perm.parse(c, g["degree"]) for name, c in g["generators"].items()}


def lambda_target() -> dict[str, Perm]:
    return {name: Perm.parse(c, 8) for name, c in example()["lambda_target"].items()}


def named_structures() -> dict[str, dict[str, Perm]]:
    return {label: {name: Perm.parse(c, 8) for name, c in gens.items()}
            for label, gens in example()["structures"].items()}


def paper_groups() -> tuple[PermGroup, PermGroup]:
    deg = example()["group"]["degree"]
    G = PermGroup(list(group_generators().values()), deg)
    Gp = PermGroup([Perm.parse(c, deg) for c in example()["subgroup"]], deg)
    return G, Gp


@functools.lru_cache(maxsize=None)
def paper_context() -> tuple[Perm, GPContext]:
    """λ for the example, relabeled so that λ(τ), λ(σ) are the reference permutations."""
    G, Gp = paper_groups()
    ctx = build_lambda(G, Gp)
    return canonical_relabel(ctx, list(lambda_target().values()))


def action_table() -> dict[str, dict[str, str]]:
    """row name ('tau'/'sigma') -> column generator -> word."""
    rows = _tsv("action_table.tsv")
    cols = rows[0][1:]
    return {r[0]: dict(zip(cols, r[1:])) for r in rows[1:]}


def stable_table() -> dict[str, list[tuple[str, str]]]:
    """label -> [(subgroup generators, field label)]."""
    out = {}
    for label, subs, fields in _tsv("stable_table.tsv"):
        gens = [s.strip().strip("<>") for s in subs.split(">, <")]
        labels = [f.strip() for f in fields.split(", ")]
        out[label] = list(zip(gens, labels))
    return out


def preimage_tables() -> dict[str, dict[str, Perm]]:
    """label -> element word -> reference coset representative in G."""
    rows = _tsv("preimages.tsv")
    deg = example()["group"]["degree"]
    out = {}
    for head, body in zip(rows[0::2], rows[1::2]):
        out[head[0]] = {w: Perm.parse(c, deg) for w, c in zip(head[1:], body[1:])}
    return out


def parse_word(word: str, names: dict[str, Perm]) -> Perm:
    """Evaluate a word such as ``r2s2t`` over named generators (longest match first)."""
    ident = Perm.identity(len(next(iter(names.values()))))
    if word == "Id":
        return ident
    out = ident
    rest = word
    keys = sorted(names, key=len, reverse=True)
    while rest:
        for k in keys:
            if rest.startswith(k):
                out = compose(out, names[k])
                rest = rest[len(k):]
                break
        else:
            raise ValueError(f"cannot read {word!r} as a word in {sorted(names)}")
    return out
