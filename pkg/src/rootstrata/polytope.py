"""The root polytope: standard faces, dilations and wall projections.

A subset ``J`` of simple-root indices stands for the (possibly reducible)
standard parabolic subsystem it generates; its polytope is handled one
irreducible component at a time.  Throughout, ``o_eta`` is the fundamental
coweight of ``eta`` inside ``span(J)`` divided by the mark of ``eta`` in its
component.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from rootstrata import _linalg
from rootstrata.core_roots import (
    DiagramComponent,
    RationalVec,
    RootSystem,
    RootSystemError,
    RootVec,
    build_root_system,
    check_index,
    check_subset,
    classify_subdiagram,
    component_system,
    coweight,
    extended_diagram_vertices,
    inverse_cartan,
    is_connected,
    parabolic_order,
    RootSystemSpec,
)
from rootstrata.strata import level_stratum
from rootstrata.weyl_orbits import brute_force_group, dominant_representative, is_dominant


class FaceError(RootSystemError):
    pass


@dataclass(frozen=True)
class FaceDescriptor:
    """A standard face, given per component by an extremal subset.

    ``parts`` pairs each component (as a sorted tuple of simple-root
    indices) with its extremal subset, or ``None`` for the empty face of
    that component.  The whole polytope is the single part ``(Pi, ())``.
    """

    parts: tuple[tuple[tuple[int, ...], tuple[int, ...] | None], ...]
    functional: RationalVec
    vertices: tuple[RootVec, ...]
    barycenter: RationalVec
    dimension: int

    def to_json(self) -> dict:
        subsets = [sorted(i + 1 for i in I) for _, I in self.parts if I]
        return {
            "I": subsets[0] if len(subsets) == 1 else subsets,
            "functional": [str(x) for x in self.functional],
            "vertices": [list(v) for v in self.vertices],
            "barycenter": [str(x) for x in self.barycenter],
            "dimension": self.dimension,
        }


@dataclass(frozen=True)
class DilationCertificate:
    """``r_min`` is the least ``r`` with ``point`` in ``r`` times the polytope;
    ``witness`` is a facet functional attaining it at ``point``."""

    point: RationalVec
    r_min: Fraction
    witness: RationalVec


# --------------------------------------------------------------------------
# Extremal subsets


@lru_cache(maxsize=None)
def _extremal_cached(rs: RootSystem, max_size: int) -> tuple[frozenset[int], ...]:
    adj = extended_diagram_vertices(rs)
    out = []
    for size in range(max_size + 1):
        for I in combinations(range(rs.rank), size):
            if is_connected(adj, set(adj) - set(I)):
                out.append(frozenset(I))
    return tuple(out)


def extremal_subsets(rs: RootSystem, max_size: int) -> list[frozenset[int]]:
    """Subsets ``I`` of size <= ``max_size`` whose removal leaves the
    extended Dynkin diagram connected."""
    return list(_extremal_cached(rs, min(max_size, rs.rank)))


def is_extremal(rs: RootSystem, I: Iterable[int]) -> bool:
    I = check_subset(rs, I)
    adj = extended_diagram_vertices(rs)
    return is_connected(adj, set(adj) - I)


def extremal_roots(rs: RootSystem) -> list[int]:
    return sorted(next(iter(I)) for I in extremal_subsets(rs, 1) if I)


# --------------------------------------------------------------------------
# Coweights and marks inside a standard parabolic subsystem


@lru_cache(maxsize=None)
def _subspace_coweights(rs: RootSystem, J: frozenset[int]) -> dict[int, RationalVec]:
    """Dual basis of ``J`` inside ``span(J)``, in ambient coordinates."""
    idx = sorted(J)
    gram = [[rs.form[a][b] for b in idx] for a in idx]
    inv = _linalg.inverse(gram)
    out = {}
    for p, eta in enumerate(idx):
        vec = [Fraction(0)] * rs.rank
        for q, k in enumerate(idx):
            vec[k] = inv[p][q]
        out[eta] = tuple(vec)
    return out


def _components(rs: RootSystem, J: Iterable[int]) -> list[DiagramComponent]:
    return classify_subdiagram(rs, J)


def _local_marks(comp: DiagramComponent) -> dict[int, int]:
    local = component_system(comp)
    return {v: local.marks[k] for k, v in enumerate(comp.vertices)}


def _local_extremal(comp: DiagramComponent) -> list[int]:
    local = component_system(comp)
    return [comp.vertices[k] for k in extremal_roots(local)]


def o_vector(rs: RootSystem, J: Iterable[int], eta: int) -> RationalVec:
    """``o_eta`` relative to the parabolic subsystem on ``J``."""
    J = check_subset(rs, J)
    comp = next(c for c in _components(rs, J) if eta in c.vertices)
    m = _local_marks(comp)[eta]
    return tuple(x / m for x in _subspace_coweights(rs, J)[eta])


# --------------------------------------------------------------------------
# Standard faces


def _vertices_in(rs: RootSystem, comp: Sequence[int], I: Iterable[int],
                 marks: dict[int, int]) -> list[RootVec]:
    comp_set = set(comp)
    return [r for r in rs.roots
            if all(r[k] == 0 for k in range(rs.rank) if k not in comp_set)
            and all(r[eta] == marks[eta] for eta in I)]


def _barycenter(rank: int, vertices: Sequence[RootVec]) -> RationalVec:
    if not vertices:
        return tuple(Fraction(0) for _ in range(rank))
    return tuple(Fraction(sum(v[k] for v in vertices), len(vertices)) for k in range(rank))


def face_product(rs: RootSystem,
                 parts: Sequence[tuple[Iterable[int], Iterable[int] | None]]) -> FaceDescriptor:
    """Face of the polytope of ``Phi<J>``, ``J`` the union of the parts'
    components, assembled from one proper face per component.

    The supporting functional is the sum over components of the average of
    ``o_eta`` over the component's extremal subset (zero for an empty face).
    """
    comps = [tuple(sorted(check_subset(rs, c))) for c, _ in parts]
    seen: set[int] = set()
    for c in comps:
        if seen & set(c):
            raise FaceError("components overlap")
        seen |= set(c)
    J = frozenset(seen)
    actual = {tuple(sorted(c.vertices)): c for c in _components(rs, J)}
    if set(comps) != set(actual):
        raise FaceError("parts are not the irreducible components of their union")
    if all(I is None for _, I in parts):
        raise FaceError("at least one part must be a nonempty face")
    coweights = _subspace_coweights(rs, J)
    functional = [Fraction(0)] * rs.rank
    vertices: list[RootVec] = []
    dimension = len(parts) - 1
    norm_parts = []
    for c, (_, I) in zip(comps, parts):
        comp = actual[c]
        if I is None:
            dimension += -1
            norm_parts.append((c, None))
            continue
        I = tuple(sorted(check_subset(rs, I)))
        if not set(I) <= set(c):
            raise FaceError(f"{I} is not inside component {c}")
        local = component_system(comp)
        local_I = {comp.vertices.index(v) for v in I}
        if not is_extremal(local, local_I):
            raise FaceError(f"{I} is not extremal in {comp.name}")
        marks = _local_marks(comp)
        if I:
            for eta in I:
                for k in range(rs.rank):
                    functional[k] += coweights[eta][k] / (marks[eta] * len(I))
        vertices += _vertices_in(rs, c, I, marks)
        dimension += len(c) - len(I)
        norm_parts.append((c, I))
    vertices.sort(key=lambda r: (sum(r), r))
    return FaceDescriptor(tuple(norm_parts), tuple(functional), tuple(vertices),
                          _barycenter(rs.rank, vertices), dimension)


def standard_face(rs: RootSystem, I: Iterable[int]) -> FaceDescriptor:
    """``F_I``: convex hull of the roots with ``(gamma, o_alpha) = 1`` for all
    ``alpha`` in ``I``.  ``I`` empty gives the whole polytope.

    >>> from rootstrata.core_roots import build_root_system
    >>> standard_face(build_root_system("A2"), {0}).vertices
    ((1, 0), (1, 1))
    """
    I = check_subset(rs, I)
    if not is_extremal(rs, I):
        raise FaceError(f"{sorted(I)} is not extremal")
    return face_product(rs, [(range(rs.rank), I)])


def face_certificate(rs: RootSystem, face: FaceDescriptor) -> bool:
    """Every root of the ambient subsystem satisfies ``(gamma, f) <= 1``,
    with equality exactly on the face's vertices."""
    J = set().union(*(set(c) for c, _ in face.parts))
    verts = set(face.vertices)
    for r in rs.roots:
        if any(r[k] for k in range(rs.rank) if k not in J):
            continue
        value = rs.pair(r, face.functional)
        if value > 1 or (value == 1) != (r in verts):
            return False
    return True


# --------------------------------------------------------------------------
# Dilations


def dilation_gauge(rs: RootSystem, x: Sequence, J: Iterable[int] | None = None) -> DilationCertificate:
    """Least ``r`` with ``conv(W<J> x)`` inside ``r P_{Phi<J>}``, for ``x``
    dominant in ``span(J)``: the largest value of ``x`` on a standard facet."""
    J = frozenset(range(rs.rank)) if J is None else check_subset(rs, J)
    x = tuple(Fraction(c) for c in x)
    if any(x[k] for k in range(rs.rank) if k not in J):
        raise FaceError("point is not in the span of the subsystem")
    if not is_dominant(rs, J, x):
        raise FaceError("point is not dominant")
    total = Fraction(0)
    witness = [Fraction(0)] * rs.rank
    for comp in _components(rs, J):
        best = max(_local_extremal(comp), key=lambda eta: (rs.pair(x, o_vector(rs, J, eta)), -eta))
        o = o_vector(rs, J, best)
        total += rs.pair(x, o)
        witness = [w + y for w, y in zip(witness, o)]
    return DilationCertificate(x, total, tuple(witness))


def dominant_membership(rs: RootSystem, x: Sequence, r: Fraction | int,
                        J: Iterable[int] | None = None) -> bool:
    """Whether ``conv(W x)`` lies in ``r`` times the polytope (``x`` dominant)."""
    return dilation_gauge(rs, x, J).r_min <= r


def project_to_wall(rs: RootSystem, i: int, v: Sequence) -> RationalVec:
    """Orthogonal projection onto the span of the simple roots other than ``alpha_i``."""
    check_index(rs, i)
    w = coweight(rs, i)
    scale = Fraction(rs.pair(v, w)) / rs.pair(w, w)
    return tuple(Fraction(a) - scale * b for a, b in zip(v, w))


def neighbours(rs: RootSystem, i: int) -> list[int]:
    return [j for j in range(rs.rank) if j != i and rs.cartan[i][j] != 0]


def wall_fundamental_weight(rs: RootSystem, i: int, eps: int) -> RationalVec:
    """Fundamental weight of ``eps`` in the subsystem without ``alpha_i``,
    from that subsystem's own inverse Cartan matrix."""
    rest = [j for j in range(rs.rank) if j != i]
    if eps not in rest:
        raise RootSystemError("eps must differ from alpha_i")
    sub = [[rs.cartan[a][b] for b in rest] for a in rest]
    row = _linalg.inverse(sub)[rest.index(eps)]
    out = [Fraction(0)] * rs.rank
    for q, k in enumerate(rest):
        out[k] = row[q]
    return tuple(out)


def projected_alpha_weights(rs: RootSystem, i: int) -> dict[int, int]:
    """Coefficients ``(alpha_i, eps^vee)`` of the projection of ``alpha_i``
    on the wall fundamental weights of its neighbours ``eps``."""
    check_index(rs, i)
    return {eps: rs.cartan[i][eps] for eps in neighbours(rs, i)}


def _c_local(comp: DiagramComponent, eps: int) -> Fraction:
    local = component_system(comp)
    k = comp.vertices.index(eps)
    inv = inverse_cartan(local)
    return max(inv[k][j] / local.marks[j] for j in extremal_roots(local))


def c_constant(family: str, n: int, i: int) -> Fraction:
    """``max (omega_i, o_j)`` over the extremal simple roots ``alpha_j`` of
    type ``family``/``n`` (0-based ``i``)."""
    rs = build_root_system(RootSystemSpec(family, n))
    check_index(rs, i)
    inv = inverse_cartan(rs)
    return max(inv[i][j] / rs.marks[j] for j in extremal_roots(rs))


def r_alpha(rs: RootSystem, i: int) -> Fraction:
    """Least dilation of the polytope of the parabolic subsystem without
    ``alpha_i`` containing the projection of the level-1 slice, as
    ``sum over neighbours eps of -(alpha_i, eps^vee) c_eps``."""
    check_index(rs, i)
    rest = [j for j in range(rs.rank) if j != i]
    comps = _components(rs, rest)
    total = Fraction(0)
    for eps, coeff in projected_alpha_weights(rs, i).items():
        comp = next(c for c in comps if eps in c.vertices)
        total += -coeff * _c_local(comp, eps)
    return total


def _check_level(rs: RootSystem, i: int, k: int) -> None:
    check_index(rs, i)
    if not 1 <= abs(k) <= rs.marks[i]:
        raise RootSystemError(f"level {k} must satisfy 1 <= |k| <= {rs.marks[i]}")


def min_dilation_oracle(rs: RootSystem, i: int, k: int = 1) -> DilationCertificate:
    """Least ``r`` with the projected level-``k`` slice inside ``r`` times the
    polytope of the subsystem without ``alpha_i``: project the slice maximum,
    move it to the dominant chamber, take the largest facet value."""
    _check_level(rs, i, k)
    mu = level_stratum(rs, i, k).max_root
    x = project_to_wall(rs, i, mu)
    rest = frozenset(j for j in range(rs.rank) if j != i)
    dom = dominant_representative(rs, rest, x)
    return dilation_gauge(rs, dom, rest)


def min_dilation_via_subsystem(rs: RootSystem, i: int, k: int) -> Fraction:
    """The same dilation computed from the slice minimum ``gamma``: ``-gamma``
    projects to a dominant combination of wall weights, evaluated per
    component from local inverse Cartan data."""
    _check_level(rs, i, k)
    gamma = level_stratum(rs, i, k).min_root
    rest = [j for j in range(rs.rank) if j != i]
    total = Fraction(0)
    for comp in _components(rs, rest):
        coeffs = {eps: -rs.coroot_pairing(gamma, eps) for eps in comp.vertices}
        local = component_system(comp)
        inv = inverse_cartan(local)
        total += max(
            sum(c * inv[comp.vertices.index(eps)][j] for eps, c in coeffs.items()) / local.marks[j]
            for j in extremal_roots(local)
        )
    return total


def min_dilation_lp(rs: RootSystem, i: int, k: int = 1) -> Fraction:
    """Exact LP: minimise ``sum(lambda)`` subject to ``sum(lambda_g g)`` being
    the projected slice maximum, ``g`` running over the roots of the
    parabolic subsystem without ``alpha_i``.  Small ranks only."""
    _check_level(rs, i, k)
    mu = level_stratum(rs, i, k).max_root
    x = project_to_wall(rs, i, mu)
    rest = [j for j in range(rs.rank) if j != i]
    points = [r for r in rs.roots if r[i] == 0]
    if not points:
        raise RootSystemError("empty parabolic subsystem")
    a_eq = [[p[j] for p in points] for j in rest]
    value, _ = _linalg.simplex_min([1] * len(points), a_eq, [x[j] for j in rest])
    return value


def in_convex_hull(points: Sequence[Sequence], x: Sequence) -> bool:
    """Exact LP feasibility of ``x`` as a convex combination of ``points``."""
    if not points:
        return False
    a_eq = [[p[j] for p in points] for j in range(len(x))]
    a_eq.append([1] * len(points))
    try:
        _linalg.simplex_min([0] * len(points), a_eq, list(x) + [1])
    except _linalg.Infeasible:
        return False
    return True


# --------------------------------------------------------------------------
# Orbit of a standard face (brute force, small ranks)


def standard_face_orbit_check(rs: RootSystem, I: Iterable[int], max_rank: int = 4) -> bool:
    """The ``W``-orbit of ``F_I`` has exactly one member with dominant
    barycentre, namely ``F_I``, and ``F_I``'s stabiliser has the order of
    the parabolic subgroup fixing its barycentre."""
    if rs.rank > max_rank:
        raise RootSystemError(f"brute-force orbit check limited to rank <= {max_rank}")
    face = standard_face(rs, I)
    group = brute_force_group(rs, range(rs.rank))
    idx = rs.root_index
    base = frozenset(idx[v] for v in face.vertices)
    images: dict[frozenset[int], int] = {}
    for g in group:
        img = frozenset(g[x] for x in base)
        images[img] = images.get(img, 0) + 1
    dominant = []
    for img in images:
        verts = [rs.roots[x] for x in img]
        if is_dominant(rs, range(rs.rank), _barycenter(rs.rank, verts)):
            dominant.append(img)
    if dominant != [base]:
        return False
    fixing = [j for j in range(rs.rank) if rs.coroot_pairing(face.barycenter, j) == 0]
    return images[base] == parabolic_order(rs, fixing)


# --------------------------------------------------------------------------
# Level slices of codimension one


def orthogonal_components(rs: RootSystem, i: int, gamma: Sequence) -> tuple[bool, ...]:
    """For each component of the subsystem without ``alpha_i``, whether
    ``gamma`` is orthogonal to it."""
    rest = [j for j in range(rs.rank) if j != i]
    return tuple(all(rs.pair(gamma, rs.simple_roots[v]) == 0 for v in comp.vertices)
                 for comp in _components(rs, rest))


def projection_dimension(rs: RootSystem, i: int, k: int) -> int:
    """Dimension of the projected level-``k`` slice: total rank of the
    components not orthogonal to a longest root of the slice."""
    _check_level(rs, i, k)
    mu = level_stratum(rs, i, k).max_root
    rest = [j for j in range(rs.rank) if j != i]
    comps = _components(rs, rest)
    return sum(c.rank for c, orth in zip(comps, orthogonal_components(rs, i, mu)) if not orth)
