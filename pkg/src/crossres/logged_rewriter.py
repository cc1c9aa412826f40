"""Logged filling: express a word with phi(w) = 1 as a consequence of the
relators, i.e. find a CrossedElt whose boundary2 is exactly w.

The search applies "logged relator moves": replace a subword m of the
current word that is a prefix of some cyclic rotation a^-1 (omega r)^e a by
the inverse of the rotation's remainder, logging the factor (r, e, a.p^-1)
for current prefix p.  Each move is exact:

    w = p.m.s  and  m.c = a^-1 (omega r)^e a
    ==>  w = [u^-1 (omega r)^e u] . reduce(p.c^-1.s)   with u = reduce(a.p^-1)

so the accumulated factors always have boundary2 equal to the original word.
Iterative deepening over the number of moves makes the result deterministic
and (within limits) the shortest-derivation filling under the documented
tie-break: resulting length, leftmost position, relator declaration order,
positive before negative, rotation offset, match length.
"""

from __future__ import annotations

from dataclasses import dataclass

from .crossed import CrossedElt, IDENTITY_CROSSED, boundary2, inv, mult, parse_crossed
from .group_core import Contraction0
from .words import Word, parse_word, word


class FillError(RuntimeError):
    pass


@dataclass(frozen=True)
class FillLimits:
    max_depth: int = 64
    max_length_factor: int = 4
    node_budget: int = 200000


DEFAULT_LIMITS = FillLimits()


def _rotations(pres):
    """(relator index, name, sign, conjugator a, rotation letter tuple) for
    every cyclic rotation of every signed relator."""
    out = []
    for ri, (name, w) in enumerate(pres.relators):
        for sign in (1, -1):
            base = w.letters if sign == 1 else w.inv().letters
            for k in range(len(base)):
                a = Word(base[:k])
                out.append((ri, name, sign, a, base[k:] + base[:k]))
    return out


def _reduce_splice(p, c_inv, s):
    out = list(p)
    for letter in c_inv + s:
        if out and out[-1][0] == letter[0] and out[-1][1] == -letter[1]:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def fill_loop(pres, w: Word, limits: FillLimits = DEFAULT_LIMITS) -> CrossedElt:
    """Find c with boundary2(c) = w, by iterative-deepening logged rewriting.

    Raises FillError when no filling is found within limits (the word may
    then be given more depth, or supplied through an h1 override file).
    The caller is responsible for phi(w) = 1; a filling found here proves
    it, and no filling exists otherwise.
    """
    if w.is_empty():
        return IDENTITY_CROSSED
    rotations = _rotations(pres)
    max_length = max(limits.max_length_factor * len(w), 8)
    budget = limits.node_budget

    def children(letters):
        found = []
        L = len(letters)
        for i in range(L):
            for ri, name, sign, a, rot in rotations:
                mlen = 0
                while mlen < len(rot) and i + mlen < L and letters[i + mlen] == rot[mlen]:
                    mlen += 1
                    c_inv = tuple((n, -s) for n, s in reversed(rot[mlen:]))
                    child = _reduce_splice(letters[:i], c_inv, letters[i + mlen:])
                    if len(child) <= max_length:
                        found.append(
                            ((len(child), i, ri, 0 if sign == 1 else 1, len(a), mlen),
                             child, (name, sign, a, i)))
        found.sort(key=lambda t: t[0])
        return found

    def dfs(letters, remaining, memo):
        nonlocal budget
        budget -= 1
        if budget < 0:
            raise FillError(
                f"filling search for {Word(letters).render()!r} exceeded the node budget")
        if not letters:
            return []
        if remaining == 0:
            return None
        seen = memo.get(letters)
        if seen is not None and seen >= remaining:
            return None
        memo[letters] = remaining
        for _, child, (name, sign, a, i) in children(letters):
            rest = dfs(child, remaining - 1, memo)
            if rest is not None:
                u = a * Word(letters[:i]).inv()
                return [(name, sign, u)] + rest
        return None

    for depth in range(1, limits.max_depth + 1):
        factors = dfs(w.letters, depth, {})
        if factors is not None:
            result = CrossedElt(factors)
            assert boundary2(result, pres) == w
            return result
    raise FillError(
        f"filling not found within limits for {w.render()!r} "
        f"(max_depth={limits.max_depth})")


class H1Table:
    """h1 on the arrows of the Cayley graph: the empty consequence on tree
    arrows, a chosen filling of rho(edge) on every other arrow; extended to
    all of F(X) at every base by the morphism law."""

    __slots__ = ("contraction", "entries")

    def __init__(self, contraction: Contraction0, entries):
        graph = contraction.graph
        for (g, k), c in entries.items():
            expected = contraction.rho(g, word(graph.gens[k]))
            got = boundary2(c, graph.presentation)
            if got != expected:
                raise ValueError(
                    f"h1 entry at edge ({graph.elt_name(g)!r}, {graph.gens[k]}) has "
                    f"boundary {got.render()!r}, expected {expected.render()!r}")
        for g in range(graph.order):
            for k in range(len(graph.gens)):
                if (g, k) not in contraction.tree and (g, k) not in entries:
                    raise ValueError(
                        f"missing h1 entry for non-tree edge "
                        f"({graph.elt_name(g)!r}, {graph.gens[k]})")
        self.contraction = contraction
        self.entries = dict(entries)

    @property
    def graph(self):
        return self.contraction.graph


def build_h1(contraction: Contraction0, source="search",
             limits: FillLimits = DEFAULT_LIMITS) -> H1Table:
    """Build the h1 table: `source` is "search" (fill every non-tree edge's
    rho by fill_loop) or a path to an override file with lines
    `<element-word> <generator> := <consequence text>`."""
    graph = contraction.graph
    if source == "search":
        entries = {}
        for g in range(graph.order):
            for k in range(len(graph.gens)):
                if (g, k) in contraction.tree:
                    continue
                loop = contraction.rho(g, word(graph.gens[k]))
                try:
                    entries[(g, k)] = fill_loop(graph.presentation, loop, limits)
                except FillError as exc:
                    raise FillError(
                        f"h1 search failed at edge ({graph.elt_name(g)!r}, "
                        f"{graph.gens[k]}): {exc}") from None
        return H1Table(contraction, entries)
    return _h1_from_file(contraction, source)


def _h1_from_file(contraction: Contraction0, path) -> H1Table:
    graph = contraction.graph
    names = set(graph.presentation.relator_names())
    entries = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            head, sep, body = line.partition(":=")
            if not sep:
                raise ValueError(f"{path}:{lineno}: expected `<edge> := <consequence>`")
            tokens = head.split()
            if len(tokens) < 2:
                raise ValueError(f"{path}:{lineno}: expected `<element-word> <generator>`")
            try:
                k = graph.gen_index(tokens[-1])
                g = graph.phi(parse_word(" ".join(tokens[:-1]), graph.gens))
                c = parse_crossed(body.strip(), names, graph.gens)
            except (KeyError, ValueError) as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from None
            if (g, k) in entries:
                raise ValueError(
                    f"{path}:{lineno}: duplicate h1 entry for edge "
                    f"({graph.elt_name(g)!r}, {graph.gens[k]})")
            entries[(g, k)] = c
    entries = {e: c for e, c in entries.items()
               if not (e in contraction.tree and c.is_trivial())}
    return H1Table(contraction, entries)


def h1_eval(table: H1Table, g: int, u: Word) -> CrossedElt:
    """h1 of the path that starts at g and reads u, by the morphism law
    h1(g, uv) = h1(g, u) . h1(g.phi(u), v).  Tree arrows contribute
    nothing; a reversed arrow contributes the inverse of its entry."""
    graph = table.graph
    out = IDENTITY_CROSSED
    v = g
    for name, sign in u:
        k = graph.gen_index(name)
        if sign == 1:
            entry = table.entries.get((v, k))
            if entry is not None:
                out = mult(out, entry)
            v = graph.fwd[v][k]
        else:
            v = graph.bwd[v][k]
            entry = table.entries.get((v, k))
            if entry is not None:
                out = mult(out, inv(entry))
    return out
