"""Finite crystallographic root systems in exact arithmetic.

Conventions used everywhere in the package:

* simple roots are numbered as in Bourbaki's plates, but indices are
  0-based in Python (``alpha_1`` is index 0);
* ``cartan[i][j] = (alpha_i, alpha_j^vee)``;
* the bilinear form is normalised so that long roots have squared length 2;
* a root is an integer coefficient tuple in the simple-root basis, any other
  vector (weights, projections, barycentres) a tuple of ``Fraction``.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Mapping, Sequence

from rootstrata import _linalg

RootVec = tuple[int, ...]
RationalVec = tuple[Fraction, ...]

FAMILIES = "ABCDEFG"
AFFINE_NODE = -1

# Orders of the irreducible Weyl groups that are not given by a formula.
_EXCEPTIONAL_WEYL_ORDERS = {
    ("E", 6): 51840,
    ("E", 7): 2903040,
    ("E", 8): 696729600,
    ("F", 4): 1152,
    ("G", 2): 12,
}


class RootSystemError(ValueError):
    """Invalid root-system input (bad type, rank, index or non-root)."""


@dataclass(frozen=True, order=True)
class RootSystemSpec:
    """Cartan type of an irreducible root system.

    ``C2`` is stored as ``B2`` and ``D3`` as ``A3``.
    """

    family: str
    rank: int

    def __post_init__(self) -> None:
        family, rank = self.family, self.rank
        if not isinstance(rank, int) or family not in FAMILIES:
            raise RootSystemError(f"unknown root system type {family}{rank}")
        if (family, rank) == ("C", 2):
            family = "B"
        elif (family, rank) == ("D", 3):
            family = "A"
        ok = {
            "A": rank >= 1,
            "B": rank >= 2,
            "C": rank >= 3,
            "D": rank >= 4,
            "E": rank in (6, 7, 8),
            "F": rank == 4,
            "G": rank == 2,
        }[family]
        if not ok:
            raise RootSystemError(f"invalid rank {rank} for family {self.family}")
        object.__setattr__(self, "family", family)

    @classmethod
    def parse(cls, text: str) -> RootSystemSpec:
        m = re.fullmatch(r"\s*([A-Ga-g])\s*(\d+)\s*", text)
        if not m:
            raise RootSystemError(f"cannot parse root system type {text!r}")
        return cls(m.group(1).upper(), int(m.group(2)))

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


def canonical_cartan(family: str, rank: int) -> tuple[tuple[int, ...], ...]:
    """Cartan matrix of type ``family``/``rank`` in Bourbaki numbering."""
    spec = RootSystemSpec(family, rank)
    family, n = spec.family, spec.rank
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i: int, j: int, ij: int = -1, ji: int = -1) -> None:
        a[i][j], a[j][i] = ij, ji

    if family in "ABC":
        for i in range(n - 1):
            link(i, i + 1)
        if family == "B":
            link(n - 2, n - 1, -2, -1)
        elif family == "C":
            link(n - 2, n - 1, -1, -2)
    elif family == "D":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 3, n - 1)
    elif family == "E":
        link(0, 2)
        link(1, 3)
        for i in range(2, n - 1):
            link(i, i + 1)
    elif family == "F":
        link(0, 1)
        link(1, 2, -2, -1)
        link(2, 3)
    elif family == "G":
        link(0, 1, -1, -3)
    return tuple(tuple(row) for row in a)


def _simple_root_norms(cartan: Sequence[Sequence[int]]) -> tuple[Fraction, ...]:
    # cartan[i][j] / cartan[j][i] = |alpha_i|^2 / |alpha_j|^2 along every edge;
    # each connected component is scaled so its longest simple root has norm 2.
    n = len(cartan)
    norms: list[Fraction | None] = [None] * n
    for start in range(n):
        if norms[start] is not None:
            continue
        norms[start] = Fraction(1)
        comp = [start]
        queue = deque([start])
        while queue:
            i = queue.popleft()
            for j in range(n):
                if j != i and cartan[i][j] != 0 and norms[j] is None:
                    norms[j] = norms[i] * Fraction(cartan[j][i], cartan[i][j])
                    comp.append(j)
                    queue.append(j)
        scale = 2 / max(norms[i] for i in comp)
        for i in comp:
            norms[i] *= scale
    return tuple(norms)  # type: ignore[arg-type]


def _positive_roots(cartan: Sequence[Sequence[int]]) -> list[RootVec]:
    """Positive roots by closure under root strings, layer by layer in height."""
    n = len(cartan)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    found = set(simple)
    layer = list(simple)
    while layer:
        nxt: list[RootVec] = []
        for g in layer:
            for i in range(n):
                if g == simple[i]:
                    continue
                p = 0
                while True:
                    down = tuple(c - (p + 1) * (k == i) for k, c in enumerate(g))
                    if down not in found:
                        break
                    p += 1
                pairing = sum(g[j] * cartan[j][i] for j in range(n))
                if p - pairing > 0:
                    up = tuple(c + (k == i) for k, c in enumerate(g))
                    if up not in found:
                        found.add(up)
                        nxt.append(up)
        layer = nxt
    return sorted(found, key=lambda r: (sum(r), r))


@dataclass(frozen=True, eq=False)
class RootSystem:
    """An irreducible root system; immutable once built.

    Build canonical systems with :func:`build_root_system`; ``from_cartan``
    accepts any irreducible finite-type Cartan matrix, in which case the
    numbering is the one of the matrix and may differ from Bourbaki's.
    """

    spec: RootSystemSpec
    cartan: tuple[tuple[int, ...], ...]
    form: tuple[tuple[Fraction, ...], ...]
    positive_roots: tuple[RootVec, ...]
    roots: tuple[RootVec, ...]
    highest_root: RootVec
    marks: tuple[int, ...]
    lacing: int

    @classmethod
    def from_cartan(cls, cartan: Sequence[Sequence[int]],
                    spec: RootSystemSpec | None = None) -> RootSystem:
        cartan = tuple(tuple(int(x) for x in row) for row in cartan)
        components = classify_cartan(cartan)
        if len(components) != 1:
            raise RootSystemError("Cartan matrix is not irreducible")
        if spec is None:
            spec = RootSystemSpec(components[0].family, components[0].rank)
        n = len(cartan)
        norms = _simple_root_norms(cartan)
        form = tuple(tuple(cartan[i][j] * norms[j] / 2 for j in range(n)) for i in range(n))
        positive = _positive_roots(cartan)
        negative = [tuple(-c for c in r) for r in positive]
        roots = tuple(sorted(positive + negative, key=lambda r: (sum(r), r)))
        highest = positive[-1]
        if not all(all(h >= c for h, c in zip(highest, r)) for r in positive):
            raise RootSystemError("root poset has no maximum")
        lacing = int(max(norms) / min(norms))
        return cls(spec, cartan, form, tuple(positive), roots, highest, highest, lacing)

    @property
    def rank(self) -> int:
        return len(self.cartan)

    @cached_property
    def root_set(self) -> frozenset[RootVec]:
        return frozenset(self.roots)

    @cached_property
    def root_index(self) -> dict[RootVec, int]:
        return {r: i for i, r in enumerate(self.roots)}

    @cached_property
    def simple_norms(self) -> tuple[Fraction, ...]:
        return tuple(self.form[i][i] for i in range(self.rank))

    @cached_property
    def _norm_cache(self) -> dict[RootVec, Fraction]:
        return {r: self.pair(r, r) for r in self.roots}

    @property
    def simple_roots(self) -> tuple[RootVec, ...]:
        n = self.rank
        return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))

    def is_root(self, v: Sequence[int]) -> bool:
        return tuple(v) in self.root_set

    @cached_property
    def _scaled_form(self) -> tuple[tuple[int, ...], ...]:
        # form entries have denominators dividing the lacing number
        return tuple(tuple(int(x * self.lacing) for x in row) for row in self.form)

    def pair(self, x: Sequence, y: Sequence):
        """The bilinear form ``(x, y)`` on coefficient vectors."""
        n = self.rank
        if all(type(c) is int for c in x) and all(type(c) is int for c in y):
            g = self._scaled_form
            total = sum(x[i] * sum(g[i][j] * y[j] for j in range(n) if y[j]) for i in range(n) if x[i])
            return Fraction(total, self.lacing)
        f = self.form
        return sum(x[i] * f[i][j] * y[j] for i in range(n) if x[i] for j in range(n) if y[j])

    def coroot_pairing(self, x: Sequence, i: int):
        """``(x, alpha_i^vee)``; an integer whenever ``x`` is in the root lattice."""
        c = self.cartan
        return sum(x[j] * c[j][i] for j in range(self.rank) if x[j])

    def norm(self, v: Sequence) -> Fraction:
        key = tuple(v)
        cached = self._norm_cache.get(key)  # type: ignore[arg-type]
        return cached if cached is not None else Fraction(self.pair(key, key))

    def is_long(self, v: Sequence) -> bool:
        return self.norm(v) == 2

    def is_short(self, v: Sequence) -> bool:
        return self.lacing > 1 and self.norm(v) != 2

    def short_simple(self) -> frozenset[int]:
        return frozenset(i for i in range(self.rank) if self.simple_norms[i] != 2)

    def __repr__(self) -> str:
        return f"RootSystem({self.spec})"

    def __reduce__(self):
        return (RootSystem.from_cartan, (self.cartan, self.spec))


@lru_cache(maxsize=None)
def build_root_system(spec: RootSystemSpec | str) -> RootSystem:
    """Canonical (Bourbaki-numbered) root system of the given type.

    >>> rs = build_root_system("G2")
    >>> len(rs.roots), rs.marks
    (12, (3, 2))
    """
    if isinstance(spec, str):
        spec = RootSystemSpec.parse(spec)
    return RootSystem.from_cartan(canonical_cartan(spec.family, spec.rank), spec)


def height(v: Sequence[int]) -> int:
    return sum(v)


def support(v: Sequence) -> frozenset[int]:
    return frozenset(i for i, c in enumerate(v) if c)


def check_index(rs: RootSystem, i: int) -> int:
    if not isinstance(i, int) or not 0 <= i < rs.rank:
        raise RootSystemError(f"simple root index {i!r} out of range for {rs.spec}")
    return i


def check_subset(rs: RootSystem, subset: Iterable[int]) -> frozenset[int]:
    return frozenset(check_index(rs, i) for i in subset)


def check_root(rs: RootSystem, v: Sequence[int]) -> RootVec:
    v = tuple(v)
    if v not in rs.root_set:
        raise RootSystemError(f"{v} is not a root of {rs.spec}")
    return v


def inverse_cartan(rs: RootSystem) -> _linalg.Matrix:
    """Entry ``(i, j)`` is ``(omega_i, coweight_j)``: row ``i`` holds the
    simple-root coordinates of the fundamental weight ``omega_i``."""
    return _inverse_cartan(rs.cartan)


@lru_cache(maxsize=None)
def _inverse_cartan(cartan: tuple[tuple[int, ...], ...]) -> _linalg.Matrix:
    return _linalg.inverse(cartan)


@lru_cache(maxsize=None)
def _inverse_form(form: tuple[tuple[Fraction, ...], ...]) -> _linalg.Matrix:
    return _linalg.inverse(form)


def coweight(rs: RootSystem, i: int) -> RationalVec:
    """Fundamental coweight: ``(coweight(i), alpha_j) = delta_ij``."""
    check_index(rs, i)
    return _inverse_form(rs.form)[i]


def weight(rs: RootSystem, i: int) -> RationalVec:
    """Fundamental weight: ``(weight(i), alpha_j^vee) = delta_ij``."""
    check_index(rs, i)
    return inverse_cartan(rs)[i]


def coroot(rs: RootSystem, gamma: Sequence[int]) -> RootVec:
    """Coordinates of ``gamma^vee`` in the basis of simple coroots."""
    gamma = check_root(rs, gamma)
    n = rs.norm(gamma)
    coords = [c * rs.simple_norms[i] / n for i, c in enumerate(gamma)]
    assert all(x.denominator == 1 for x in coords)
    return tuple(int(x) for x in coords)


def root_poset_leq(rs: RootSystem, beta: Sequence[int], gamma: Sequence[int]) -> bool:
    """``beta <= gamma``: the difference has no negative coordinate."""
    beta, gamma = check_root(rs, beta), check_root(rs, gamma)
    return all(g >= b for b, g in zip(beta, gamma))


# --------------------------------------------------------------------------
# Dynkin diagrams


@dataclass(frozen=True)
class DiagramComponent:
    """One connected component of a Dynkin (sub)diagram.

    ``vertices[k]`` is the caller's label of the vertex playing the role of
    Bourbaki's ``alpha_{k+1}`` in type ``family``/``rank``.
    """

    family: str
    rank: int
    vertices: tuple[int, ...]

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"


DiagramComponents = list[DiagramComponent]


def _path_order(adj: Mapping[int, set[int]], start: int) -> list[int]:
    order = [start]
    prev = None
    while True:
        nxt = [v for v in adj[order[-1]] if v != prev]
        if not nxt:
            return order
        prev = order[-1]
        order.append(nxt[0])


def _arm(adj: Mapping[int, set[int]], branch: int, first: int) -> list[int]:
    arm = [first]
    prev = branch
    while True:
        nxt = [v for v in adj[arm[-1]] if v != prev]
        if not nxt:
            return arm
        prev = arm[-1]
        arm.append(nxt[0])


def _classify_connected(labels: list[int], a: Mapping[tuple[int, int], int]) -> DiagramComponent:
    def entry(i: int, j: int) -> int:
        return a.get((i, j), 0)

    adj = {v: {w for w in labels if w != v and entry(v, w) != 0} for v in labels}
    n = len(labels)
    if n == 1:
        return DiagramComponent("A", 1, (labels[0],))
    edges = [(v, w) for v in labels for w in adj[v] if v < w]
    if len(edges) != n - 1:
        raise RootSystemError("diagram is not a tree: not of finite type")
    bonds = {(v, w): entry(v, w) * entry(w, v) for v, w in edges}
    if any(b not in (1, 2, 3) for b in bonds.values()):
        raise RootSystemError("invalid bond in diagram")

    def shorter(v: int, w: int) -> bool:
        # |alpha_v|^2 / |alpha_w|^2 = a(v, w) / a(w, v)
        return abs(entry(v, w)) < abs(entry(w, v))

    multiple = [e for e, b in bonds.items() if b > 1]
    degrees = {v: len(adj[v]) for v in labels}
    if multiple:
        if len(multiple) > 1 or max(degrees.values()) > 2:
            raise RootSystemError("diagram is not of finite type")
        (u, w), = multiple
        if bonds[(u, w)] == 3:
            if n != 2:
                raise RootSystemError("triple bond outside G2")
            short, long_ = (u, w) if shorter(u, w) else (w, u)
            return DiagramComponent("G", 2, (short, long_))
        ends = sorted(v for v in labels if degrees[v] == 1)
        if n == 2:
            long_, short = (w, u) if shorter(u, w) else (u, w)
            return DiagramComponent("B", 2, (long_, short))
        for end in ends:
            path = _path_order(adj, end)
            if {path[-2], path[-1]} == {u, w}:
                family = "B" if shorter(path[-1], path[-2]) else "C"
                return DiagramComponent(family, n, tuple(path))
        if n == 4:
            for end in ends:
                path = _path_order(adj, end)
                if {path[1], path[2]} == {u, w} and not shorter(path[1], path[2]):
                    return DiagramComponent("F", 4, tuple(path))
        raise RootSystemError("diagram is not of finite type")
    if max(degrees.values()) <= 2:
        start = min(v for v in labels if degrees[v] == 1)
        return DiagramComponent("A", n, tuple(_path_order(adj, start)))
    branches = [v for v in labels if degrees[v] == 3]
    if len(branches) != 1 or max(degrees.values()) > 3:
        raise RootSystemError("diagram is not of finite type")
    b = branches[0]
    arms = sorted((_arm(adj, b, f) for f in adj[b]), key=lambda arm: (len(arm), arm[-1]))
    lengths = tuple(len(arm) for arm in arms)
    if lengths[:2] == (1, 1):
        long_arm = list(reversed(arms[2]))
        return DiagramComponent("D", n, tuple(long_arm + [b, arms[0][0], arms[1][0]]))
    if lengths in ((1, 2, 2), (1, 2, 3), (1, 2, 4)):
        a2 = arms[0][0]
        a3, a1 = arms[1]
        rest = arms[2]
        return DiagramComponent("E", n, tuple([a1, a2, a3, b] + rest))
    raise RootSystemError("diagram is not of finite type")


def classify_cartan(cartan: Sequence[Sequence[int]],
                    labels: Sequence[int] | None = None) -> DiagramComponents:
    """Split a (generalised) Cartan matrix into irreducible components and
    name each one, with a vertex mapping onto Bourbaki's numbering.

    ``labels`` names the rows; it defaults to ``0..n-1``.  Components are
    ordered by their smallest label.
    """
    n = len(cartan)
    labels = list(range(n)) if labels is None else list(labels)
    a = {(labels[i], labels[j]): int(cartan[i][j]) for i in range(n) for j in range(n)
         if i != j and cartan[i][j] != 0}
    for (v, w), x in a.items():
        if a.get((w, v), 0) == 0:
            raise RootSystemError("Cartan matrix is not sign-symmetric")
    seen: set[int] = set()
    out: DiagramComponents = []
    for start in sorted(labels):
        if start in seen:
            continue
        comp = {start}
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for w in labels:
                if w not in comp and (v, w) in a:
                    comp.add(w)
                    queue.append(w)
        seen |= comp
        component = _classify_connected(sorted(comp), a)
        canon = canonical_cartan(component.family, component.rank)
        pos = {v: labels.index(v) for v in component.vertices}
        for k, v in enumerate(component.vertices):
            for m, w in enumerate(component.vertices):
                if cartan[pos[v]][pos[w]] != canon[k][m]:
                    raise RootSystemError("diagram does not match its classified type")
        out.append(component)
    return out


def classify_subdiagram(rs: RootSystem, subset: Iterable[int]) -> DiagramComponents:
    """Classify the subdiagram induced on ``subset``; labels are indices of Pi.

    >>> [c.name for c in classify_subdiagram(build_root_system("F4"), {1, 2, 3})]
    ['C3']
    """
    sub = sorted(check_subset(rs, subset))
    cartan = [[rs.cartan[i][j] for j in sub] for i in sub]
    return classify_cartan(cartan, sub)


def weyl_order(components: Iterable[DiagramComponent]) -> int:
    """Order of the Weyl group of a (possibly empty) product of components."""
    order = 1
    for comp in components:
        fam, n = comp.family, comp.rank
        if fam == "A":
            order *= _factorial(n + 1)
        elif fam in "BC":
            order *= 2 ** n * _factorial(n)
        elif fam == "D":
            order *= 2 ** (n - 1) * _factorial(n)
        else:
            order *= _EXCEPTIONAL_WEYL_ORDERS[(fam, n)]
    return order


def _factorial(n: int) -> int:
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def parabolic_order(rs: RootSystem, subset: Iterable[int]) -> int:
    """``|W<subset>|`` for a set of simple-root indices."""
    return weyl_order(classify_subdiagram(rs, subset))


def component_system(comp: DiagramComponent) -> RootSystem:
    """Canonical root system of a component, numbered like ``comp.vertices``."""
    return build_root_system(RootSystemSpec(comp.family, comp.rank))


def embed(comp: DiagramComponent, local: Sequence, rank: int) -> tuple:
    """Map coordinates of ``component_system(comp)`` into the ambient basis."""
    out = [0] * rank
    for k, v in enumerate(comp.vertices):
        out[v] = local[k]
    return tuple(out)


def restrict(comp: DiagramComponent, ambient: Sequence) -> tuple:
    return tuple(ambient[v] for v in comp.vertices)


def extended_diagram_vertices(rs: RootSystem) -> dict[int, frozenset[int]]:
    """Adjacency of the extended Dynkin diagram.

    The affine vertex is labelled :data:`AFFINE_NODE`; it is adjacent to the
    simple roots not orthogonal to the highest root.
    """
    n = rs.rank
    adj = {i: {j for j in range(n) if j != i and rs.cartan[i][j] != 0} for i in range(n)}
    affine = {i for i in range(n) if rs.coroot_pairing(rs.highest_root, i) != 0}
    adj[AFFINE_NODE] = affine
    for i in affine:
        adj[i].add(AFFINE_NODE)
    return {k: frozenset(v) for k, v in adj.items()}


def is_connected(adj: Mapping[int, Iterable[int]], vertices: Iterable[int]) -> bool:
    vertices = set(vertices)
    if not vertices:
        return True
    start = min(vertices)
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if w in vertices and w not in seen:
                seen.add(w)
                queue.append(w)
    return seen == vertices


def dual_system(rs: RootSystem) -> RootSystem:
    """The dual root system, on the transposed Cartan matrix (same numbering)."""
    return RootSystem.from_cartan(_linalg.transpose(rs.cartan))


def coxeter_number(rs: RootSystem) -> int:
    return len(rs.roots) // rs.rank


def to_json(rs: RootSystem) -> dict:
    return {
        "family": rs.spec.family,
        "rank": rs.rank,
        "cartan": [list(row) for row in rs.cartan],
        "roots": [list(r) for r in rs.roots],
        "marks": list(rs.marks),
        "highest_root": list(rs.highest_root),
        "lacing": rs.lacing,
    }


def all_specs(max_rank: int = 8) -> list[RootSystemSpec]:
    """Every irreducible type of rank <= ``max_rank``, one name per type."""
    out = []
    for n in range(1, max_rank + 1):
        out.append(RootSystemSpec("A", n))
    for n in range(2, max_rank + 1):
        out.append(RootSystemSpec("B", n))
    for n in range(3, max_rank + 1):
        out.append(RootSystemSpec("C", n))
    for n in range(4, max_rank + 1):
        out.append(RootSystemSpec("D", n))
    out += [RootSystemSpec("E", n) for n in (6, 7, 8) if n <= max_rank]
    if max_rank >= 4:
        out.append(RootSystemSpec("F", 4))
    if max_rank >= 2:
        out.append(RootSystemSpec("G", 2))
    return out
