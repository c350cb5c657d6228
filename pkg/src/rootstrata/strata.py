"""Affine slices of a root system.

For ``S`` a set of simple-root indices and ``beta`` a root, the stratum
``Phi_{S,beta}`` is the set of roots whose ``S``-coordinates agree with those
of ``beta``; ``Phi_{S,Z beta}`` allows any integer multiple of them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Literal, Sequence

from rootstrata.core_roots import (
    DiagramComponents,
    RootSystem,
    RootSystemError,
    RootVec,
    check_index,
    check_root,
    check_subset,
    classify_cartan,
    support,
)

Profile = Literal["short-only", "long-only", "mixed"]


class StratumError(RootSystemError):
    """The operation needs ``S`` to meet the support of ``beta``."""


@dataclass(frozen=True)
class Stratum:
    S: frozenset[int]
    level: dict[int, int] = field(hash=False)
    roots: tuple[RootVec, ...]
    min_root: RootVec | None
    max_root: RootVec | None
    lengths_present: Profile
    max_short: RootVec | None

    @property
    def nontrivial(self) -> bool:
        return self.min_root is not None

    def to_json(self) -> dict:
        return {
            "S": sorted(i + 1 for i in self.S),
            "level": {str(i + 1): c for i, c in sorted(self.level.items())},
            "roots": [list(r) for r in self.roots],
            "min": list(self.min_root) if self.min_root else None,
            "max": list(self.max_root) if self.max_root else None,
            "profile": self.lengths_present,
            "max_short": list(self.max_short) if self.max_short else None,
        }


@dataclass(frozen=True)
class SubsystemBasis:
    """A simple system ``{gamma} u (Pi - S)`` of ``Phi_{S, Z beta}``."""

    gamma: RootVec
    rest: tuple[int, ...]
    cartan: tuple[tuple[int, ...], ...]
    components: DiagramComponents

    def coordinates(self, rs: RootSystem, root: Sequence[int], S: Iterable[int]) -> tuple[int, ...]:
        """Coordinates of ``root`` in this basis, ``gamma`` first.

        ``root`` must lie in the lattice spanned by the basis.
        """
        s = next(i for i in S if self.gamma[i])
        j, r = divmod(root[s], self.gamma[s])
        if r:
            raise ValueError(f"{root} is not in the span of the basis")
        diff = [x - j * g for x, g in zip(root, self.gamma)]
        if any(diff[i] for i in S):
            raise ValueError(f"{root} is not in the span of the basis")
        return (j,) + tuple(diff[i] for i in self.rest)


def _leq(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _profile(rs: RootSystem, roots: Iterable[RootVec]) -> Profile:
    kinds = {rs.is_long(r) for r in roots}
    if kinds == {True}:
        return "long-only"
    if kinds == {False}:
        return "short-only"
    return "mixed"


def _build(rs: RootSystem, S: frozenset[int], level: dict[int, int]) -> Stratum:
    roots = tuple(r for r in rs.roots if all(r[i] == c for i, c in level.items()))
    lo = hi = max_short = None
    if any(level.values()):
        minimal = [r for r in roots if not any(o != r and _leq(o, r) for o in roots)]
        maximal = [r for r in roots if not any(o != r and _leq(r, o) for o in roots)]
        if len(minimal) != 1 or len(maximal) != 1:
            raise RuntimeError(f"stratum {sorted(S)}/{level} of {rs.spec} is not an interval")
        lo, hi = minimal[0], maximal[0]
    profile = _profile(rs, roots) if roots else "long-only"
    if profile == "mixed":
        shorts = [r for r in roots if not rs.is_long(r)]
        tops = [r for r in shorts if not any(o != r and _leq(r, o) for o in shorts)]
        if len(tops) != 1:
            raise RuntimeError("short roots of a mixed stratum have no maximum")
        max_short = tops[0]
    return Stratum(S, dict(level), roots, lo, hi, profile, max_short)


def stratum(rs: RootSystem, S: Iterable[int], beta: Sequence[int]) -> Stratum:
    """``Phi_{S,beta}``.

    When ``S`` misses the support of ``beta`` this is the parabolic
    subsystem on the complement of ``S`` and ``min_root``/``max_root`` are
    ``None``.

    >>> from rootstrata.core_roots import build_root_system
    >>> st = stratum(build_root_system("B2"), {0}, (1, 1))
    >>> st.roots, st.min_root, st.max_root
    (((1, 0), (1, 1), (1, 2)), (1, 0), (1, 2))
    """
    S = check_subset(rs, S)
    beta = check_root(rs, beta)
    return _build(rs, S, {i: beta[i] for i in S})


def level_stratum(rs: RootSystem, i: int, k: int) -> Stratum:
    """``Phi_{alpha_i, k}``: roots whose ``alpha_i``-coordinate is ``k``."""
    check_index(rs, i)
    if abs(k) > rs.marks[i]:
        raise RootSystemError(f"level {k} outside [-{rs.marks[i]}, {rs.marks[i]}]")
    return _build(rs, frozenset({i}), {i: k})


def _nontrivial(rs: RootSystem, S: Iterable[int], beta: Sequence[int]) -> tuple[frozenset[int], RootVec]:
    S = check_subset(rs, S)
    beta = check_root(rs, beta)
    if not S & support(beta):
        raise StratumError("S does not meet the support of beta")
    return S, beta


def z_stratum(rs: RootSystem, S: Iterable[int], beta: Sequence[int]) -> frozenset[RootVec]:
    """``Phi_{S, Z beta}``, a root subsystem of ``rs``."""
    S = check_subset(rs, S)
    beta = check_root(rs, beta)
    hit = [i for i in sorted(S) if beta[i]]
    if not hit:
        return frozenset(r for r in rs.roots if not any(r[i] for i in S))
    s = hit[0]
    out = set()
    for r in rs.roots:
        j, rem = divmod(r[s], beta[s])
        if not rem and all(r[i] == j * beta[i] for i in S):
            out.add(r)
    return frozenset(out)


def basis_cartan(rs: RootSystem, basis: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    """Generalised Cartan matrix ``(x, y^vee)`` of a list of roots."""
    out = []
    for x in basis:
        row = []
        for y in basis:
            v = 2 * rs.pair(x, y) / rs.norm(y)
            assert v.denominator == 1
            row.append(int(v))
        out.append(tuple(row))
    return tuple(out)


def z_stratum_basis(rs: RootSystem, S: Iterable[int], beta: Sequence[int],
                    side: Literal["min", "max"] = "min") -> SubsystemBasis:
    """Simple system ``{min} u (Pi - S)`` or ``{-max} u (Pi - S)`` of the
    ``Z``-stratum; raises if some root of the subsystem is not sign-uniform
    in it."""
    S, beta = _nontrivial(rs, S, beta)
    st = stratum(rs, S, beta)
    if side == "min":
        gamma = st.min_root
    elif side == "max":
        gamma = tuple(-c for c in st.max_root)
    else:
        raise ValueError(f"side must be 'min' or 'max', not {side!r}")
    rest = tuple(i for i in range(rs.rank) if i not in S)
    simple = [gamma] + [rs.simple_roots[i] for i in rest]
    cartan = basis_cartan(rs, simple)
    labels = [-1] + list(rest)
    components = classify_cartan(cartan, labels)
    basis = SubsystemBasis(gamma, rest, cartan, components)
    for r in z_stratum(rs, S, beta):
        coords = basis.coordinates(rs, r, S)
        if not (all(c >= 0 for c in coords) or all(c <= 0 for c in coords)):
            raise RuntimeError(f"{r} is not sign-uniform in the basis {simple}")
    return basis


def dominant_in_stratum(rs: RootSystem, S: Iterable[int], beta: Sequence[int]) -> list[RootVec]:
    """The ``(Pi - S)``-dominant roots of the stratum, long one first.

    There is exactly one per root length present.
    """
    S, beta = _nontrivial(rs, S, beta)
    st = stratum(rs, S, beta)
    rest = [i for i in range(rs.rank) if i not in S]
    dominant = [r for r in st.roots if all(rs.coroot_pairing(r, i) >= 0 for i in rest)]
    longs = [r for r in dominant if rs.is_long(r)]
    shorts = [r for r in dominant if not rs.is_long(r)]
    for group, present in ((longs, any(rs.is_long(r) for r in st.roots)),
                           (shorts, any(not rs.is_long(r) for r in st.roots))):
        if len(group) != int(present):
            raise RuntimeError(f"expected one dominant root per length, got {group}")
    return longs + shorts


def length_profile(rs: RootSystem, S: Iterable[int], beta: Sequence[int]) -> Profile:
    """Root lengths in the stratum, read off from its minimum and the
    component of the minimum in the diagram of ``{min} u (Pi - S)``."""
    S, beta = _nontrivial(rs, S, beta)
    st = stratum(rs, S, beta)
    gamma = st.min_root
    if not rs.is_long(gamma):
        return "short-only"
    rest = [i for i in range(rs.rank) if i not in S]
    simple = [gamma] + [rs.simple_roots[i] for i in rest]
    comp = next(c for c in classify_cartan(basis_cartan(rs, simple), [-1] + rest)
                if -1 in c.vertices)
    if any(v != -1 and not rs.is_long(rs.simple_roots[v]) for v in comp.vertices):
        return "mixed"
    return "long-only"


def lacing_criterion(rs: RootSystem, S: Iterable[int], beta: Sequence[int]) -> bool:
    """Whether the stratum contains long roots, decided from ``beta`` alone:
    the lacing number must divide ``c_alpha(beta)`` for each short ``alpha``
    in ``S``."""
    S, beta = _nontrivial(rs, S, beta)
    return all(beta[i] % rs.lacing == 0 for i in S & rs.short_simple())


def short_witness(rs: RootSystem, mu: Sequence[int]) -> int:
    """A short simple root ``gamma`` with ``mu + gamma`` a positive root and
    ``c_gamma(mu)`` not divisible by the lacing number (smallest index)."""
    mu = check_root(rs, mu)
    if rs.lacing == 1:
        raise RootSystemError("root system is simply laced")
    if rs.is_long(mu) or min(mu) <= 0:
        raise RootSystemError(f"{mu} is not a short positive root with full support")
    for g in sorted(rs.short_simple()):
        up = tuple(c + (k == g) for k, c in enumerate(mu))
        if rs.is_root(up) and mu[g] % rs.lacing:
            return g
    raise RuntimeError(f"no short witness for {mu} in {rs.spec}")


def nontrivial_pairs(rs: RootSystem, subsets: Iterable[Iterable[int]]):
    """Yield ``(S, beta)`` with ``beta`` positive and ``S`` meeting its support."""
    for S in subsets:
        S = frozenset(S)
        for beta in rs.positive_roots:
            if any(beta[i] for i in S):
                yield S, beta
