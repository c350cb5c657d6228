"""Orbits of standard parabolic subgroups of the Weyl group.

Orbits are found by breadth-first search on vectors; group elements are only
ever enumerated by :func:`brute_force_group`, the small-rank oracle.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Iterable, Sequence

from rootstrata import _linalg
from rootstrata.core_roots import (
    RootSystem,
    RootSystemError,
    RootVec,
    check_index,
    check_subset,
    classify_subdiagram,
    weyl_order,
)
from rootstrata.strata import _nontrivial, stratum

DEFAULT_ORBIT_BOUND = 10**7
DEFAULT_GROUP_BOUND = 10**6


class OrbitTooLarge(RuntimeError):
    pass


def orbit_bound() -> int:
    """Orbit-size guard; ``ROOTSTRATA_ORBIT_BOUND`` overrides the default."""
    value = os.environ.get("ROOTSTRATA_ORBIT_BOUND")
    return int(value) if value else DEFAULT_ORBIT_BOUND


@dataclass(frozen=True)
class OrbitReport:
    generators: frozenset[int]
    seed: tuple
    elements: tuple[tuple, ...]
    dominant_representative: tuple

    @property
    def orbit_size(self) -> int:
        return len(self.elements)

    def to_json(self) -> dict:
        return {
            "generators": sorted(i + 1 for i in self.generators),
            "seed": [str(x) for x in self.seed],
            "orbit_size": self.orbit_size,
            "dominant": [str(x) for x in self.dominant_representative],
        }


def reflect(rs: RootSystem, i: int, v: Sequence) -> tuple:
    """``s_i(v) = v - (v, alpha_i^vee) alpha_i``."""
    c = rs.coroot_pairing(v, i)
    if not c:
        return tuple(v)
    out = list(v)
    out[i] -= c
    return tuple(out)


def _normalise(v: Sequence) -> tuple:
    # Fractions with denominator 1 compare and hash equal to ints; keep
    # integer vectors integral so roots stay recognisable.
    return tuple(int(x) if isinstance(x, Fraction) and x.denominator == 1 else x for x in v)


def is_dominant(rs: RootSystem, generators: Iterable[int], v: Sequence) -> bool:
    return all(rs.coroot_pairing(v, i) >= 0 for i in generators)


def dominant_representative(rs: RootSystem, generators: Iterable[int], v: Sequence) -> tuple:
    """Reflect at the first generator with negative pairing until none is
    left; each step strictly raises the vector in the dominance order."""
    gens = sorted(check_subset(rs, generators))
    v = _normalise(v)
    while True:
        for i in gens:
            if rs.coroot_pairing(v, i) < 0:
                v = reflect(rs, i, v)
                break
        else:
            return v


def orbit(rs: RootSystem, generators: Iterable[int], seed: Sequence,
          bound: int | None = None) -> OrbitReport:
    """Orbit of ``seed`` under ``W<generators>``, sorted."""
    gens = check_subset(rs, generators)
    bound = orbit_bound() if bound is None else bound
    seed = _normalise(seed)
    seen = {seed}
    queue = deque([seed])
    while queue:
        v = queue.popleft()
        for i in gens:
            w = reflect(rs, i, v)
            if w not in seen:
                seen.add(w)
                if len(seen) > bound:
                    raise OrbitTooLarge(f"orbit exceeds {bound} elements")
                queue.append(w)
    elements = tuple(sorted(seen))
    dominant = [w for w in elements if is_dominant(rs, gens, w)]
    if len(dominant) != 1:
        raise RuntimeError(f"orbit has {len(dominant)} dominant elements")
    return OrbitReport(gens, seed, elements, dominant[0])


def orbit_partition(rs: RootSystem, generators: Iterable[int],
                    vectors: Iterable[Sequence]) -> list[frozenset]:
    """Split a ``W<generators>``-stable set of vectors into orbits."""
    gens = sorted(check_subset(rs, generators))
    remaining = {_normalise(v) for v in vectors}
    orbits = []
    while remaining:
        start = min(remaining)
        seen = {start}
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for i in gens:
                w = reflect(rs, i, v)
                if w not in seen:
                    if w not in remaining:
                        raise ValueError("vector set is not stable under the generators")
                    seen.add(w)
                    queue.append(w)
        remaining -= seen
        orbits.append(frozenset(seen))
    return orbits


def oshima_check(rs: RootSystem, S: Iterable[int], beta: Sequence[int]) -> tuple[int, int]:
    """``(number of W<Pi - S>-orbits on the stratum, number of root lengths in it)``.

    The two agree for every ``(S, beta)`` with ``S`` meeting ``supp(beta)``.
    """
    S, beta = _nontrivial(rs, S, beta)
    st = stratum(rs, S, beta)
    rest = [i for i in range(rs.rank) if i not in S]
    orbits = orbit_partition(rs, rest, st.roots)
    lengths = len({rs.norm(r) for r in st.roots})
    return len(orbits), lengths


def stabilizer_order(rs: RootSystem, generators: Iterable[int], v: Sequence) -> int:
    """``|Stab_{W<generators>}(v)|``, from the parabolic subgroup fixing the
    dominant representative of ``v``."""
    gens = check_subset(rs, generators)
    dom = dominant_representative(rs, gens, v)
    fixing = [i for i in gens if rs.coroot_pairing(dom, i) == 0]
    return weyl_order(classify_subdiagram(rs, fixing))


@lru_cache(maxsize=None)
def _projector(rs: RootSystem, J: frozenset[int]) -> tuple[tuple[int, ...], tuple]:
    idx = tuple(sorted(J))
    gram = [[rs.form[a][b] for b in idx] for a in idx]
    return idx, _linalg.inverse(gram) if idx else ()


def project_onto_span(rs: RootSystem, J: Iterable[int], v: Sequence) -> tuple:
    """Orthogonal projection of ``v`` onto ``span{alpha_j : j in J}``."""
    idx, inv = _projector(rs, check_subset(rs, J))
    out = [Fraction(0)] * rs.rank
    if idx:
        rhs = [rs.pair(v, rs.simple_roots[j]) for j in idx]
        for j, c in zip(idx, _linalg.matvec(inv, rhs)):
            out[j] = c
    return _normalise(out)


def act(rs: RootSystem, word: Sequence[int], v: Sequence) -> tuple:
    """Apply ``s_{word[0]} ... s_{word[-1]}`` to ``v`` (rightmost first)."""
    for i in reversed(word):
        v = reflect(rs, i, v)
    return _normalise(v)


# --------------------------------------------------------------------------
# Brute-force oracle


Permutation = tuple[int, ...]


def simple_reflection_permutation(rs: RootSystem, i: int) -> Permutation:
    check_index(rs, i)
    idx = rs.root_index
    return tuple(idx[reflect(rs, i, r)] for r in rs.roots)


def brute_force_group(rs: RootSystem, generators: Iterable[int],
                      bound: int = DEFAULT_GROUP_BOUND) -> frozenset[Permutation]:
    """All elements of ``W<generators>`` as permutations of ``rs.roots``,
    by breadth-first search on words in the generators."""
    gens = sorted(check_subset(rs, generators))
    expected = weyl_order(classify_subdiagram(rs, gens))
    if expected > bound:
        raise OrbitTooLarge(f"group of order {expected} exceeds bound {bound}")
    perms = [simple_reflection_permutation(rs, i) for i in gens]
    identity = tuple(range(len(rs.roots)))
    seen = {identity}
    queue = deque([identity])
    while queue:
        g = queue.popleft()
        for s in perms:
            h = tuple(s[x] for x in g)  # s after g
            if h not in seen:
                seen.add(h)
                queue.append(h)
    return frozenset(seen)


def apply_permutation(rs: RootSystem, perm: Permutation, v: Sequence) -> tuple:
    """Act by the linear map a root permutation induces, on any vector."""
    n = rs.rank
    images = [rs.roots[perm[rs.root_index[s]]] for s in rs.simple_roots]
    return _normalise(tuple(sum(v[j] * images[j][k] for j in range(n)) for k in range(n)))


def root_orbit_oracle(rs: RootSystem, group: Iterable[Permutation], root: RootVec) -> frozenset[RootVec]:
    k = rs.root_index[tuple(root)]
    return frozenset(rs.roots[g[k]] for g in group)


def require_rank(rs: RootSystem, max_rank: int) -> None:
    if rs.rank > max_rank:
        raise RootSystemError(f"oracle limited to rank <= {max_rank}")
