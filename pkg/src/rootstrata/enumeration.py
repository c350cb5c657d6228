"""Root counts expressed through ratios of parabolic Weyl group orders.

Every formula here is paired with a brute count over the root list so the
two can be compared.  ``N[a]`` below is ``a`` together with its neighbours
in the Dynkin diagram; ``W_X`` is the parabolic subgroup on ``Pi - X``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from rootstrata.core_roots import (
    RootSystem,
    RootSystemError,
    check_index,
    classify_subdiagram,
    component_system,
    coxeter_number,
    is_connected,
    parabolic_order,
)

LengthClass = Literal["long", "short"]

CLASSICAL = frozenset("ABCD")


class EnumerationError(RootSystemError):
    pass


def _adjacency(rs: RootSystem) -> dict[int, set[int]]:
    return {i: {j for j in range(rs.rank) if j != i and rs.cartan[i][j]} for i in range(rs.rank)}


def closed_neighbourhood(rs: RootSystem, i: int) -> frozenset[int]:
    check_index(rs, i)
    return frozenset(_adjacency(rs)[i] | {i})


def is_leaf(rs: RootSystem, i: int) -> bool:
    check_index(rs, i)
    return len(_adjacency(rs)[i]) <= 1


def _complement(rs: RootSystem, removed) -> list[int]:
    return [j for j in range(rs.rank) if j not in removed]


def _ratio(rs: RootSystem, i: int) -> int:
    num = parabolic_order(rs, _complement(rs, {i}))
    den = parabolic_order(rs, _complement(rs, closed_neighbourhood(rs, i)))
    q, r = divmod(num, den)
    assert r == 0
    return q


def _same_length(rs: RootSystem, root, i: int) -> bool:
    return rs.norm(root) == rs.simple_norms[i]


def level1_same_length_count(rs: RootSystem, i: int) -> int:
    """``|W_a| / |W_N[a]|`` for ``a = alpha_i``.

    >>> from rootstrata.core_roots import build_root_system
    >>> level1_same_length_count(build_root_system("E8"), 7)
    56
    """
    check_index(rs, i)
    return _ratio(rs, i)


def level1_same_length_brute(rs: RootSystem, i: int) -> int:
    check_index(rs, i)
    return sum(1 for r in rs.positive_roots if r[i] == 1 and _same_length(rs, r, i))


def _gate(rs: RootSystem, i: int, families: frozenset[str], diagnostic: bool) -> None:
    check_index(rs, i)
    if not is_leaf(rs, i):
        raise EnumerationError(f"alpha_{i + 1} is not a leaf of {rs.spec}")
    if rs.spec.family not in families and not diagnostic:
        raise EnumerationError(f"{rs.spec} is outside types {''.join(sorted(families))}")


def leaf_support_count(rs: RootSystem, i: int, diagnostic: bool = False) -> int:
    """Number of positive roots of the length of ``alpha_i`` whose support
    contains it, as a group-order ratio.  Classical leaves only unless
    ``diagnostic`` is set."""
    _gate(rs, i, CLASSICAL, diagnostic)
    return _ratio(rs, i)


def leaf_support_brute(rs: RootSystem, i: int) -> int:
    check_index(rs, i)
    return sum(1 for r in rs.positive_roots if r[i] > 0 and _same_length(rs, r, i))


def coxeter_identity_sides(rs: RootSystem, i: int) -> tuple[int, int]:
    """``(h n - h_a (n - 1), 2 |W_a| / |W_N[a]|)`` for a leaf of an A or D
    diagram; ``h_a`` is the Coxeter number of the diagram without ``a``
    (0 when that is empty)."""
    _gate(rs, i, frozenset("AD"), False)
    n = rs.rank
    rest = _complement(rs, {i})
    if rest:
        (comp,) = classify_subdiagram(rs, rest)
        h_rest = coxeter_number(component_system(comp))
    else:
        h_rest = 0
    return coxeter_number(rs) * n - h_rest * (n - 1), 2 * _ratio(rs, i)


def coxeter_identity_check(rs: RootSystem, i: int) -> bool:
    lhs, rhs = coxeter_identity_sides(rs, i)
    return lhs == rhs


# --------------------------------------------------------------------------
# Peeling sequences


def _length_indices(rs: RootSystem, t: LengthClass) -> frozenset[int]:
    if t not in ("long", "short"):
        raise ValueError(f"length class must be 'long' or 'short', not {t!r}")
    short = rs.short_simple()
    return frozenset(range(rs.rank)) - short if t == "long" else short


@dataclass(frozen=True)
class PeelingStep:
    remaining: frozenset[int]  # the diagram the leaf is removed from
    leaf: int
    neighbour: int | None  # None once the leaf is isolated

    def ratio(self, rs: RootSystem) -> int:
        without = self.remaining - {self.leaf}
        if self.neighbour is None:
            return 1
        q, r = divmod(parabolic_order(rs, without),
                      parabolic_order(rs, without - {self.neighbour}))
        assert r == 0
        return q


@dataclass(frozen=True)
class PeelingSequence:
    length_class: LengthClass
    order: tuple[int, ...]
    steps: tuple[PeelingStep, ...]

    @classmethod
    def build(cls, rs: RootSystem, t: LengthClass, order) -> "PeelingSequence":
        """Validate ``order`` and derive its steps; raises
        :class:`EnumerationError` when a condition fails."""
        order = tuple(order)
        wanted = _length_indices(rs, t)
        if sorted(order) != sorted(wanted):
            raise EnumerationError(f"order must list each simple root of length {t} once")
        adj = _adjacency(rs)
        remaining = frozenset(range(rs.rank))
        steps = []
        for leaf in order:
            nbrs = adj[leaf] & remaining
            if len(nbrs) > 1:
                raise EnumerationError(f"alpha_{leaf + 1} is not a leaf of the remaining diagram")
            after = remaining - {leaf}
            if after and not is_connected(adj, after):
                raise EnumerationError(f"removing alpha_{leaf + 1} disconnects the diagram")
            steps.append(PeelingStep(remaining, leaf, next(iter(nbrs), None)))
            remaining = after
        return cls(t, order, tuple(steps))

    def to_json(self) -> dict:
        return {"length": self.length_class, "order": [i + 1 for i in self.order]}


def valid_peeling_sequences(rs: RootSystem, t: LengthClass) -> list[PeelingSequence]:
    """Every valid peeling order of the simple roots of length ``t``, in
    lexicographic order."""
    wanted = _length_indices(rs, t)
    adj = _adjacency(rs)
    out: list[tuple[int, ...]] = []

    def extend(prefix: tuple[int, ...], remaining: frozenset[int]) -> None:
        left = wanted - set(prefix)
        if not left:
            out.append(prefix)
            return
        for leaf in sorted(left):
            if len(adj[leaf] & remaining) > 1:
                continue
            after = remaining - {leaf}
            if after and not is_connected(adj, after):
                continue
            extend(prefix + (leaf,), after)

    if wanted:
        extend((), frozenset(range(rs.rank)))
    return [PeelingSequence.build(rs, t, order) for order in out]


def iterando_sum(rs: RootSystem, seq: PeelingSequence, diagnostic: bool = False) -> int:
    """Sum of the per-step ratios of a peeling sequence.  Classical types
    only unless ``diagnostic`` is set."""
    if rs.spec.family not in CLASSICAL and not diagnostic:
        raise EnumerationError(f"{rs.spec} is not of classical type")
    # revalidate against this system
    seq = PeelingSequence.build(rs, seq.length_class, seq.order)
    return sum(step.ratio(rs) for step in seq.steps)


def positive_roots_of_length(rs: RootSystem, t: LengthClass) -> int:
    _length_indices(rs, t)
    if t == "long":
        return sum(1 for r in rs.positive_roots if rs.is_long(r))
    return sum(1 for r in rs.positive_roots if not rs.is_long(r))


def count_report(rs: RootSystem, i: int) -> dict:
    """Level-1 formula against brute count, one-based ``alpha``."""
    formula = level1_same_length_count(rs, i)
    brute = level1_same_length_brute(rs, i)
    return {"system": str(rs.spec), "alpha": i + 1, "formula": formula,
            "brute": brute, "match": formula == brute}
