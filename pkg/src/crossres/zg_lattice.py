"""Exact linear algebra over ZG for finite G, by expansion to integer row
lattices: Hermite normal form with a transformation log, membership with
ZG-certificates, kernel lattices, and canonical lattice equality.

Everything is arbitrary-precision integer arithmetic on lists; a ModuleElt
over basis B expands to a vector of length |B|.|G| with coordinate
(b, g) at position index(b).|G| + g.
"""

from __future__ import annotations

from .crossed import ModuleElt
from .words import GroupRingElt


def expand(graph, basis, m: ModuleElt) -> list[int]:
    n = graph.order
    vec = [0] * (len(basis) * n)
    index = {sym: i for i, sym in enumerate(basis)}
    for sym, c in m.items():
        try:
            base = index[sym] * n
        except KeyError:
            raise ValueError(f"module element uses unknown basis symbol {sym!r}") from None
        for g, coeff in c.items():
            vec[base + g] = coeff
    return vec


def unexpand(graph, basis, vec) -> ModuleElt:
    n = graph.order
    coords = {}
    for i, sym in enumerate(basis):
        block = {g: vec[i * n + g] for g in range(n) if vec[i * n + g]}
        if block:
            coords[sym] = GroupRingElt(block)
    return ModuleElt(coords)


def _hnf_in_place(rows, width, mirror=None):
    """Row-style Hermite normal form by integer row operations.

    Applies the same operations to the optional `mirror` matrix (the
    transformation log).  Returns the list of pivot columns; on return,
    rows[:len(pivots)] are the canonical HNF basis (positive pivots,
    entries above each pivot reduced into [0, pivot)) and the remaining
    rows are zero.
    """
    pivots = []
    r = 0
    m = len(rows)
    for col in range(width):
        # chain gcd steps down the column until one nonzero entry remains
        while True:
            best = None
            for i in range(r, m):
                if rows[i][col] and (best is None or abs(rows[i][col]) < abs(rows[best][col])):
                    best = i
            if best is None:
                break
            if best != r:
                rows[r], rows[best] = rows[best], rows[r]
                if mirror is not None:
                    mirror[r], mirror[best] = mirror[best], mirror[r]
            done = True
            for i in range(r + 1, m):
                if rows[i][col]:
                    q = rows[i][col] // rows[r][col]
                    rows[i] = [a - q * b for a, b in zip(rows[i], rows[r])]
                    if mirror is not None:
                        mirror[i] = [a - q * b for a, b in zip(mirror[i], mirror[r])]
                    if rows[i][col]:
                        done = False
            if done:
                break
        if r < m and rows[r][col]:
            if rows[r][col] < 0:
                rows[r] = [-a for a in rows[r]]
                if mirror is not None:
                    mirror[r] = [-a for a in mirror[r]]
            d = rows[r][col]
            for i in range(r):
                q = rows[i][col] // d
                if q:
                    rows[i] = [a - q * b for a, b in zip(rows[i], rows[r])]
                    if mirror is not None:
                        mirror[i] = [a - q * b for a, b in zip(mirror[i], mirror[r])]
            pivots.append(col)
            r += 1
            if r == m:
                break
    return pivots


class Lattice:
    """An integer row lattice in canonical Hermite normal form."""

    __slots__ = ("ambient", "rows", "pivots")

    def __init__(self, ambient: int, raw_rows):
        rows = [list(r) for r in raw_rows]
        pivots = _hnf_in_place(rows, ambient)
        self.ambient = ambient
        self.rows = tuple(tuple(r) for r in rows[:len(pivots)])
        self.pivots = tuple(pivots)

    @property
    def rank(self):
        return len(self.rows)

    def _reduce(self, vec):
        """Returns (residue, coeffs over self.rows) after pivot division."""
        v = list(vec)
        coeffs = []
        for row, p in zip(self.rows, self.pivots):
            q = v[p] // row[p]
            if q:
                v = [a - q * b for a, b in zip(v, row)]
            coeffs.append(q)
        return v, coeffs

    def contains(self, vec) -> bool:
        residue, _ = self._reduce(vec)
        return not any(residue)

    def solve(self, vec):
        residue, coeffs = self._reduce(vec)
        return None if any(residue) else coeffs

    def __eq__(self, other):
        return (isinstance(other, Lattice)
                and self.ambient == other.ambient and self.rows == other.rows)

    def __hash__(self):
        return hash((self.ambient, self.rows))


def lattice_equal(a: Lattice, b: Lattice) -> bool:
    return a == b


class OrbitLattice(Lattice):
    """ZG-span of a list of generators, with provenance: each HNF row is
    logged as an integer combination of the input rows (the G-translates
    of the generators, ordered generator-major then element index), and
    the integer relations among the input rows are kept for canonical
    certificate reduction."""

    __slots__ = ("graph", "basis", "gens", "expr_rows", "kernel_rows",
                 "kernel_pivots", "_translates")

    def __init__(self, graph, basis, gens):
        n = graph.order
        inputs = []
        translates = []
        for m in gens:
            per_gen = []
            for g in range(n):
                t = m.translated(graph, g)
                per_gen.append(t)
                inputs.append(expand(graph, basis, t))
            translates.append(per_gen)
        ambient = len(basis) * n
        rows = [list(r) for r in inputs]
        mirror = [[1 if i == j else 0 for j in range(len(rows))] for i in range(len(rows))]
        pivots = _hnf_in_place(rows, ambient, mirror)
        rank = len(pivots)
        self.ambient = ambient
        self.rows = tuple(tuple(r) for r in rows[:rank])
        self.pivots = tuple(pivots)
        self.graph = graph
        self.basis = basis
        self.gens = list(gens)
        self.expr_rows = tuple(tuple(r) for r in mirror[:rank])
        kernel = [list(r) for r in mirror[rank:]]
        self.kernel_pivots = tuple(_hnf_in_place(kernel, len(inputs)))
        self.kernel_rows = tuple(tuple(r) for r in kernel[:len(self.kernel_pivots)])
        self._translates = translates


def span_of_orbit(graph, basis, gens) -> OrbitLattice:
    return OrbitLattice(graph, basis, gens)


def _l1(m: ModuleElt) -> int:
    return sum(abs(c) for _, zg in m.items() for _, c in zg.items())


def _greedy_certificate(lat: OrbitLattice, target: ModuleElt):
    """Peel the target by repeatedly subtracting the signed generator
    translate that most decreases the L1 norm (ties broken by +1 before
    -1, then element index, then generator position).  Returns
    coefficient dicts on reaching zero, None on stalling."""
    n = lat.graph.order
    cert = [dict() for _ in lat.gens]
    rem = target
    size = _l1(rem)
    while size:
        best = None
        for j, per_gen in enumerate(lat._translates):
            for g in range(n):
                tr = per_gen[g]
                for s in (1, -1):
                    new = rem - tr if s == 1 else rem + tr
                    key = (_l1(new), 0 if s == 1 else 1, g, j)
                    if key[0] < size and (best is None or key < best[0]):
                        best = (key, s, new)
        if best is None:
            return None
        (size, _, g, j), s, rem = best
        cert[j][g] = cert[j].get(g, 0) + s
    return cert


def member_solve(lat: OrbitLattice, target: ModuleElt):
    """If target lies in the lattice, return its certificate: one
    GroupRingElt per original generator with
    sum_j gen_j . cert_j = target.  Otherwise None (exact non-membership).

    The certificate is the greedy small-support solution when the peeling
    search reaches zero (it reproduces hand-computed retraction tables);
    otherwise the HNF solution reduced canonically modulo the relation
    lattice of the generator translates.
    """
    vec = expand(lat.graph, lat.basis, target)
    coeffs = lat.solve(vec)
    if coeffs is None:
        return None
    greedy = _greedy_certificate(lat, target)
    if greedy is not None:
        return [GroupRingElt(d) for d in greedy]
    n_inputs = len(lat.gens) * lat.graph.order
    v = [0] * n_inputs
    for q, expr in zip(coeffs, lat.expr_rows):
        if q:
            v = [a + q * b for a, b in zip(v, expr)]
    for row, p in zip(lat.kernel_rows, lat.kernel_pivots):
        q = v[p] // row[p]
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    n = lat.graph.order
    return [GroupRingElt({g: v[j * n + g] for g in range(n) if v[j * n + g]})
            for j in range(len(lat.gens))]


class IntSpan:
    """Mutable integer row span with incremental membership — the working
    structure behind greedy reduction.  Not canonical; use Lattice for
    anything compared or exported."""

    __slots__ = ("ambient", "rows", "pivots")

    def __init__(self, ambient: int):
        self.ambient = ambient
        self.rows: list[list[int]] = []
        self.pivots: list[int] = []

    def _reduce(self, vec):
        v = list(vec)
        for row, p in zip(self.rows, self.pivots):
            if v[p]:
                q = v[p] // row[p]
                if q:
                    v = [a - q * b for a, b in zip(v, row)]
        return v

    def contains(self, vec) -> bool:
        return not any(self._reduce(vec))

    def add(self, vec):
        rows = self.rows + [list(vec)]
        pivots = _hnf_in_place(rows, self.ambient)
        self.rows = rows[:len(pivots)]
        self.pivots = list(pivots)


def map_rows(graph, dom_basis, codom_basis, mapping):
    """Expanded integer rows of the ZG-linear map b -> mapping[b], one row
    per (domain basis symbol, group element), generator-major order."""
    rows = []
    for sym in dom_basis:
        image = mapping[sym]
        for g in range(graph.order):
            rows.append(expand(graph, codom_basis, image.translated(graph, g)))
    return rows


def kernel_lattice(graph, dom_basis, codom_basis, mapping) -> Lattice:
    """HNF basis of the integer kernel of the expanded matrix of the map
    (ZG)^dom -> (ZG)^codom sending b to mapping[b]."""
    rows = map_rows(graph, dom_basis, codom_basis, mapping)
    if not rows:
        return Lattice(len(dom_basis) * graph.order, [])
    mirror = [[1 if i == j else 0 for j in range(len(rows))] for i in range(len(rows))]
    work = [list(r) for r in rows]
    pivots = _hnf_in_place(work, len(codom_basis) * graph.order, mirror)
    return Lattice(len(dom_basis) * graph.order, mirror[len(pivots):])
