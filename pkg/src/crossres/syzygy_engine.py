"""Levels of a free crossed resolution above the presentation.

Level 3 generators: for each group element g and relator r,

    delta3[g, r] = h1(g, omega_r)^-1 . (r conjugated by sigma(g)^-1)

is an identity among relations (its boundary2 freely reduces to 1).
Reduction keeps a generating subset J (greedy, in a declared order,
against the ZG-orbit lattice of the accepted abelianisations) and
records a retraction xi: accepted tags map to units, others to
certificates with delta(xi tag) = form(tag) exactly.

The retraction log of level n is the homotopy table driving level n+1:

    delta_{n+1}[g, b] = -h_{n-1}(g, delta_n b) + e_b . g^-1

where h_{n-1} evaluates additively over the boundary, looking up
xi_n[(g . g'^-1, prev)] per coefficient (the action-killing rule; on
level 3 this is the same sum taken factor-by-factor over the crossed
form, since the lookup depends only on each factor's relator and the
image of its conjugator).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .crossed import (CrossedElt, ModuleElt, ZERO_MODULE, abelianise, act,
                      apply_map, boundary2, crossed, inv, mult, parse_crossed,
                      render_crossed, unit)
from .group_core import CayleyGraph, Contraction0, MaximalTree, Presentation, \
    enumerate_presentation, render_zg
from .logged_rewriter import H1Table, h1_eval
from .words import GroupRingElt, Word, fox_derivative, parse_word
from .zg_lattice import IntSpan, OrbitLattice, expand, kernel_lattice, \
    member_solve, span_of_orbit

SCHEMA = "crossres-state/1"

Tag = tuple[int, str]  # (group element index, lower-level basis name)


@dataclass(frozen=True)
class Candidate:
    tag: Tag
    form: ModuleElt                 # over the previous level's basis
    crossed_form: CrossedElt | None  # level 3 only


class Level:
    """One computed resolution level: ordered candidates, the accepted
    basis, boundaries of accepted symbols, and the retraction log xi
    (= the homotopy table used to build the next level)."""

    __slots__ = ("n", "codomain", "basis", "boundary", "crossed",
                 "candidates", "xi", "symbol_of_tag")

    def __init__(self, n, codomain, basis, boundary, crossed, candidates,
                 xi, symbol_of_tag):
        self.n = n
        self.codomain = codomain        # previous level's basis names
        self.basis = basis              # list of (symbol, tag)
        self.boundary = boundary        # symbol -> ModuleElt over codomain
        self.crossed = crossed          # symbol -> CrossedElt (level 3) or None
        self.candidates = candidates    # list of Candidate, reduction order
        self.xi = xi                    # tag -> ModuleElt over this basis
        self.symbol_of_tag = symbol_of_tag  # tag -> symbol | None


class ResolutionState:
    __slots__ = ("presentation", "graph", "tree", "contraction", "h1", "levels")

    def __init__(self, presentation, graph, tree, contraction, h1):
        self.presentation: Presentation = presentation
        self.graph: CayleyGraph = graph
        self.tree: MaximalTree = tree
        self.contraction: Contraction0 = contraction
        self.h1: H1Table = h1
        self.levels: dict[int, Level] = {}

    @property
    def max_level(self):
        return max(self.levels) if self.levels else 2


def compute_delta3(state: ResolutionState, g: int, rname: str) -> CrossedElt:
    wr = state.presentation.relator_word(rname)
    lift = inv(h1_eval(state.h1, g, wr))
    based = act(crossed(rname), state.contraction.sigma_bar(g))
    return mult(lift, based)


def level3_candidates(state: ResolutionState) -> list[Candidate]:
    """All (g, r) tags in declared order: g ascending, relators as declared."""
    out = []
    for g in range(state.graph.order):
        for rname in state.presentation.relator_names():
            c = compute_delta3(state, g, rname)
            out.append(Candidate((g, rname), abelianise(c, state.graph), c))
    return out


def h2_prime(state: ResolutionState, g: int, c: CrossedElt) -> ModuleElt:
    """Sum of xi lookups factor-by-factor over a crossed form: each
    (r, eps, u) contributes eps . xi3[(g . phi(u)^-1, r)]."""
    graph = state.graph
    xi = state.levels[3].xi
    total = ZERO_MODULE
    for name, sign, u in c.factors:
        h = graph.mult(g, graph.inv_elt(graph.eval_word(u, 0)))
        entry = xi[(h, name)]
        total = total + entry if sign > 0 else total - entry
    return total


def homotopy_eval(graph: CayleyGraph, xi, g: int, chain: ModuleElt) -> ModuleElt:
    """Additive homotopy: h(g, sum c . e_prev . g') = sum c . xi[(g.g'^-1, prev)]."""
    total = ZERO_MODULE
    for prev, ring in chain.items():
        for gp, c in ring.items():
            entry = xi[(graph.mult(g, graph.inv_elt(gp)), prev)]
            if c == 1:
                total = total + entry
            elif c == -1:
                total = total - entry
            else:
                total = total + ModuleElt(
                    {s: r.scaled(c) for s, r in entry.coords.items()})
    return total


def next_candidates(state: ResolutionState, m: int) -> list[Candidate]:
    """Level m+1 candidates from level m's basis and retraction log."""
    graph = state.graph
    level = state.levels[m]
    out = []
    for g in range(graph.order):
        for sym, _tag in level.basis:
            if m == 3:
                h_val = h2_prime(state, g, level.crossed[sym])
            else:
                h_val = homotopy_eval(graph, level.xi, g, level.boundary[sym])
            form = (-h_val) + unit(sym, graph.inv_elt(g))
            out.append(Candidate((g, sym), form, None))
    return out


def order_candidates(candidates, policy="declared", explicit=None):
    """Reduction order: `explicit` tags (a prefix) first, the rest in
    declared order; policy "support" stably sorts by support size."""
    by_tag = {c.tag: c for c in candidates}
    if explicit:
        seen = set()
        for tag in explicit:
            if tag not in by_tag:
                raise ValueError(f"unknown tag in order file: {tag}")
            if tag in seen:
                raise ValueError(f"duplicate tag in order file: {tag}")
            seen.add(tag)
        rest = [c for c in candidates if c.tag not in seen]
        ordered = [by_tag[t] for t in explicit] + rest
    else:
        ordered = list(candidates)
    if policy == "support":
        ordered = sorted(ordered, key=lambda c: c.form.support_size())
    elif policy != "declared":
        raise ValueError(f"unknown order policy {policy!r}")
    return ordered


def reduce_level(state: ResolutionState, n: int, candidates,
                 cert_overrides=None) -> Level:
    """Greedy reduction: accept a candidate iff its form is outside the
    ZG-orbit span of the forms accepted so far.  Certificates for the
    others are solved against the full accepted lattice afterwards
    (member_solve), unless pinned by an override; every certificate is
    checked to replay exactly."""
    graph = state.graph
    codomain = (list(state.presentation.relator_names()) if n == 3
                else [sym for sym, _ in state.levels[n - 1].basis])
    span = IntSpan(len(codomain) * graph.order)
    accepted: list[Candidate] = []
    symbol_of_tag: dict[Tag, str | None] = {}
    basis, boundary, crossed_forms = [], {}, {}
    for cand in candidates:
        vec = expand(graph, codomain, cand.form)
        if span.contains(vec):
            symbol_of_tag[cand.tag] = None
            continue
        sym = f"b{n}_{len(accepted) + 1}"
        symbol_of_tag[cand.tag] = sym
        accepted.append(cand)
        basis.append((sym, cand.tag))
        boundary[sym] = cand.form
        if cand.crossed_form is not None:
            crossed_forms[sym] = cand.crossed_form
        for g in range(graph.order):
            span.add(expand(graph, codomain, cand.form.translated(graph, g)))

    if cert_overrides:
        stray = [tag for tag in cert_overrides if tag not in symbol_of_tag]
        stray += [tag for tag in cert_overrides
                  if symbol_of_tag.get(tag) is not None]
        if stray:
            names = ", ".join(_tag_text(graph, tag) for tag in stray)
            raise ValueError(
                f"certificate pins for tags that are not rejected at "
                f"level {n}: {names}")

    lattice = OrbitLattice(graph, codomain, [c.form for c in accepted])
    xi: dict[Tag, ModuleElt] = {}
    for cand in candidates:
        sym = symbol_of_tag[cand.tag]
        if sym is not None:
            xi[cand.tag] = unit(sym)
            continue
        override = (cert_overrides or {}).get(cand.tag)
        if override is not None:
            cert = _resolve_override(state, graph, basis, override, cand.tag)
        else:
            solved = member_solve(lattice, cand.form)
            if solved is None:
                raise RuntimeError(
                    f"rejected candidate {_tag_text(graph, cand.tag)} is not "
                    f"a member of the accepted lattice; reduction is "
                    f"inconsistent")
            cert = ModuleElt({sym: ring for (sym, _), ring
                              in zip(basis, solved) if ring})
        if apply_map(state.graph, boundary, cert) != cand.form:
            raise ValueError(
                f"certificate for tag {_tag_text(graph, cand.tag)} does not "
                f"replay to the candidate form")
        xi[cand.tag] = cert

    level = Level(n, codomain, basis, boundary,
                  crossed_forms if n == 3 else None, list(candidates),
                  xi, symbol_of_tag)
    state.levels[n] = level
    return level


def _resolve_override(state, graph, basis, terms, tag):
    """Certificate pin: list of (coeff, symbol, element Word) resolved
    against this level's accepted basis."""
    known = {sym for sym, _ in basis}
    coords: dict[str, dict[int, int]] = {}
    for coeff, sym, w in terms:
        if sym not in known:
            raise ValueError(
                f"certificate pin for {_tag_text(graph, tag)} references "
                f"{sym!r}, which was not accepted at this level")
        g = graph.eval_word(w, 0)
        d = coords.setdefault(sym, {})
        d[g] = d.get(g, 0) + coeff
    return ModuleElt({sym: GroupRingElt(d) for sym, d in coords.items()})


def _tag_text(graph, tag):
    g, name = tag
    return f"({graph.elt_name(g)}, {name})"


def extend_resolution(state: ResolutionState, max_level: int,
                      policy="declared", explicit=None, overrides=None):
    """Compute levels 3..max_level.  `explicit` and `overrides` are
    per-level dicts (tag lists / certificate pins) from an order file."""
    explicit = explicit or {}
    overrides = overrides or {}
    for n in range(3, max_level + 1):
        cands = (level3_candidates(state) if n == 3
                 else next_candidates(state, n - 1))
        ordered = order_candidates(cands, policy, explicit.get(n))
        reduce_level(state, n, ordered, overrides.get(n))
    return state


def fox_matrix_map(pres: Presentation, graph: CayleyGraph):
    """Relator -> ModuleElt of Fox derivatives over the generators: the
    abelianised delta2, whose kernel lattice is the module of identities."""
    return {rname: ModuleElt({x: fox_derivative(wr, x, graph)
                              for x in pres.generators})
            for rname, wr in pres.relators}


# ---------------------------------------------------------------------------
# verification


def verify_state(state: ResolutionState, samples: int = 50, seed: int = 0):
    """Re-derive every stored invariant; returns (ok, report rows).
    Each row is (check, level, element, ok, detail)."""
    import random
    rng = random.Random(seed)
    graph, pres = state.graph, state.presentation
    rows = []

    def add(check, level, element, ok, detail=""):
        rows.append((check, level, element, ok, detail))

    # retr2: sigma is a section of phi, based at the identity.
    for g in range(graph.order):
        ok = graph.eval_word(state.contraction.sigma[g], 0) == g
        add("retr2", 0, graph.elt_name(g), ok,
            "" if ok else "phi(sigma(g)) != g")
    add("retr2", 0, "1", state.contraction.sigma[0].is_empty(),
        "" if state.contraction.sigma[0].is_empty() else "sigma(1) != 1")

    # retr3: h1 entries bound the tree-contracted loops.
    for (g, k), c in sorted(state.h1.entries.items()):
        want = state.contraction.rho(g, Word(((graph.gens[k], 1),)))
        got = boundary2(c, pres)
        add("retr3", 1, f"({graph.elt_name(g)}, {graph.gens[k]})", got == want,
            "" if got == want else f"boundary {got.render()} != {want.render()}")

    fox = fox_matrix_map(pres, graph)
    for n in sorted(state.levels):
        level = state.levels[n]
        lower = state.levels.get(n - 1)
        # stored crossed forms agree with stored module forms (level 3)
        if n == 3:
            for cand in level.candidates:
                ok = abelianise(cand.crossed_form, graph) == cand.form
                add("consistency", n, _tag_text(graph, cand.tag), ok,
                    "" if ok else "abelianised crossed form != module form")
                w = boundary2(cand.crossed_form, pres)
                add("dd", n, _tag_text(graph, cand.tag), w.is_empty(),
                    "" if w.is_empty() else
                    f"boundary2 of delta3 reduces to {w.render()}, not 1")
        # dd = 0 for stored boundaries
        for sym, _tag in level.basis:
            if n == 3:
                img = apply_map(graph, fox, level.boundary[sym])
            else:
                img = apply_map(graph, lower.boundary, level.boundary[sym])
            add("dd", n, sym, not img,
                "" if not img else "delta(delta(sym)) != 0")
        # retraction: delta_n(xi tag) == candidate form, all tags
        name = "retr32" if n == 3 else "retr4"
        for cand in level.candidates:
            got = apply_map(graph, level.boundary, level.xi[cand.tag])
            ok = got == cand.form
            add(name, n, _tag_text(graph, cand.tag), ok,
                "" if ok else "delta(xi) != candidate form")
        # retr5: translated homotopy lookups resolve to the base entry
        # (the action-killing rule), sampled
        if level.candidates:
            for _ in range(samples):
                h, prev = rng.choice(level.candidates).tag
                g = rng.randrange(graph.order)
                moved = homotopy_eval(
                    graph, level.xi, graph.mult(h, g),
                    ModuleElt({prev: GroupRingElt({g: 1})}))
                ok = moved == level.xi[(h, prev)]
                add("retr5", n, _tag_text(graph, (h, prev)), ok,
                    "" if ok else "translated lookup mismatch")

    # exactness: image of delta_{n+1} equals kernel of delta_n
    levels = sorted(state.levels)
    for n in levels:
        level = state.levels[n]
        forms = [level.boundary[sym] for sym, _ in level.basis]
        image = span_of_orbit(graph, level.codomain, forms)
        if n == 3:
            kern = kernel_lattice(graph, list(pres.relator_names()),
                                  list(pres.generators), fox)
        else:
            lower = state.levels[n - 1]
            kern = kernel_lattice(graph, [s for s, _ in lower.basis],
                                  lower.codomain, lower.boundary)
        ok = image == kern
        add("exactness", n - 1, f"image(delta{n}) vs kernel(delta{n - 1})",
            ok, "" if ok else "image lattice != kernel lattice")

    return all(r[3] for r in rows), rows


# ---------------------------------------------------------------------------
# serialization


def _render_module(graph, m: ModuleElt):
    return {sym: {graph.elt_name(g): str(c) for g, c in ring.items()}
            for sym, ring in m.items()}


def _parse_module(graph, data) -> ModuleElt:
    coords = {}
    for sym, ring in data.items():
        coords[sym] = GroupRingElt(
            {graph.phi(parse_word(wtext, graph.gens)): int(c)
             for wtext, c in ring.items()})
    return ModuleElt(coords)


def export_json(state: ResolutionState) -> str:
    graph, pres = state.graph, state.presentation
    doc = {
        "schema": SCHEMA,
        "group": {"order": str(graph.order),
                  "elements": [graph.elt_name(g) for g in range(graph.order)]},
        "presentation": {
            "generators": list(pres.generators),
            "relators": [[name, w.render()] for name, w in pres.relators],
        },
        "tree": [[graph.elt_name(g), graph.gens[k]]
                 for g, k in sorted(state.tree.edges)],
        "h1": {f"{graph.elt_name(g)} {graph.gens[k]}": render_crossed(c)
               for (g, k), c in sorted(state.h1.entries.items())},
        "levels": {},
    }
    for n in sorted(state.levels):
        level = state.levels[n]
        entry = {
            "codomain": list(level.codomain),
            "basis": [{"symbol": sym,
                       "tag": [graph.elt_name(tag[0]), tag[1]]}
                      for sym, tag in level.basis],
            "boundary": {sym: _render_module(graph, level.boundary[sym])
                         for sym, _ in level.basis},
            "candidates": [{"tag": [graph.elt_name(c.tag[0]), c.tag[1]],
                            "form": _render_module(graph, c.form)}
                           for c in level.candidates],
            "xi": {f"{graph.elt_name(tag[0])} {tag[1]}":
                   _render_module(graph, level.xi[tag])
                   for tag in sorted(level.xi)},
        }
        if level.crossed:
            entry["crossed"] = {sym: render_crossed(level.crossed[sym])
                                for sym, _ in level.basis}
            entry["candidates_crossed"] = {
                f"{graph.elt_name(c.tag[0])} {c.tag[1]}":
                render_crossed(c.crossed_form) for c in level.candidates}
        doc["levels"][str(n)] = entry
    return json.dumps(doc, sort_keys=True, indent=1) + "\n"


def import_json(text: str) -> ResolutionState:
    doc = json.loads(text)
    if doc.get("schema") != SCHEMA:
        raise ValueError(f"unsupported schema {doc.get('schema')!r}")
    gens = doc["presentation"]["generators"]
    relators = [(name, parse_word(wtext, gens))
                for name, wtext in doc["presentation"]["relators"]]
    pres = Presentation(gens, relators)
    graph = enumerate_presentation(pres)
    if [graph.elt_name(g) for g in range(graph.order)] != doc["group"]["elements"]:
        raise ValueError("element enumeration mismatch on import")
    edges = frozenset((graph.phi(parse_word(wtext, gens)), graph.gen_index(x))
                      for wtext, x in doc["tree"])
    tree = MaximalTree(graph, edges)
    contraction = Contraction0(graph, tree)
    rel_names = set(pres.relator_names())
    entries = {}
    for key, ctext in doc["h1"].items():
        head, gen = key.rsplit(" ", 1)
        entries[(graph.phi(parse_word(head, gens)), graph.gen_index(gen))] = \
            parse_crossed(ctext, rel_names, gens)
    state = ResolutionState(pres, graph, tree, contraction,
                            H1Table(contraction, entries))
    for ntext, entry in sorted(doc["levels"].items(), key=lambda kv: int(kv[0])):
        n = int(ntext)
        basis = [(b["symbol"], (graph.phi(parse_word(b["tag"][0], gens)),
                                b["tag"][1])) for b in entry["basis"]]
        boundary = {sym: _parse_module(graph, entry["boundary"][sym])
                    for sym, _ in basis}
        crossed_forms = None
        if "crossed" in entry:
            crossed_forms = {sym: parse_crossed(ctext, rel_names, gens)
                             for sym, ctext in entry["crossed"].items()}
        cands = []
        for c in entry["candidates"]:
            tag = (graph.phi(parse_word(c["tag"][0], gens)), c["tag"][1])
            cf = None
            if "candidates_crossed" in entry:
                cf = parse_crossed(
                    entry["candidates_crossed"][f"{c['tag'][0]} {c['tag'][1]}"],
                    rel_names, gens)
            cands.append(Candidate(tag, _parse_module(graph, c["form"]), cf))
        xi = {}
        for key, data in entry["xi"].items():
            head, name = key.rsplit(" ", 1)
            xi[(graph.phi(parse_word(head, gens)), name)] = \
                _parse_module(graph, data)
        symbol_of_tag = {tag: None for tag in xi}
        for sym, tag in basis:
            symbol_of_tag[tag] = sym
        state.levels[n] = Level(n, list(entry["codomain"]), basis, boundary,
                                crossed_forms, cands, xi, symbol_of_tag)
    return state


# ---------------------------------------------------------------------------
# rendering


def render_module(graph, m: ModuleElt) -> str:
    if not m:
        return "0"
    parts = []
    for sym, ring in m.items():
        parts.append(f"{sym}.({render_zg(graph, ring)})")
    return " + ".join(parts)


def render_tables(state: ResolutionState) -> str:
    graph = state.graph
    out = []
    out.append(f"group order {graph.order}; elements: "
               + ", ".join(graph.elt_name(g) for g in range(graph.order)))
    out.append("tree edges: " + ", ".join(
        f"({graph.elt_name(g)}, {graph.gens[k]})"
        for g, k in sorted(state.tree.edges)))
    out.append("")
    for n in sorted(state.levels):
        level = state.levels[n]
        out.append(f"level {n} generators ({len(level.candidates)} candidates, "
                   f"{len(level.basis)} kept)")
        for cand in level.candidates:
            sym = level.symbol_of_tag[cand.tag]
            status = f"kept as {sym}" if sym else \
                ("trivial" if not cand.form else
                 f"xi = {render_module(graph, level.xi[cand.tag])}")
            line = f"  [{graph.elt_name(cand.tag[0])}, {cand.tag[1]}]"
            if cand.crossed_form is not None:
                line += f"  {render_crossed(cand.crossed_form)}"
            line += f"  ->  {render_module(graph, cand.form)}  ({status})"
            out.append(line)
        out.append("")
    return "\n".join(out) + "\n"
