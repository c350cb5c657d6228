"""Batch verification of the library's structural invariants.

Each check runs on one root system and returns pass/fail plus a short
detail string.  Sampling is seeded from the check and system names, so a
report depends only on ``max_rank`` and ``deep``.
"""

from __future__ import annotations

import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable, Iterator

from rootstrata import _linalg
from rootstrata.core_roots import (
    RootSystem,
    RootSystemError,
    RootSystemSpec,
    all_specs,
    build_root_system,
    coweight,
    coxeter_number,
    dual_system,
    extended_diagram_vertices,
    inverse_cartan,
    parabolic_order,
    weight,
    AFFINE_NODE,
)
from rootstrata.enumeration import (
    coxeter_identity_sides,
    is_leaf,
    iterando_sum,
    leaf_support_brute,
    leaf_support_count,
    level1_same_length_brute,
    level1_same_length_count,
    positive_roots_of_length,
    valid_peeling_sequences,
)
from rootstrata.polytope import (
    c_constant,
    extremal_subsets,
    face_certificate,
    in_convex_hull,
    min_dilation_lp,
    min_dilation_oracle,
    min_dilation_via_subsystem,
    orthogonal_components,
    project_to_wall,
    projected_alpha_weights,
    projection_dimension,
    r_alpha,
    standard_face,
    standard_face_orbit_check,
    wall_fundamental_weight,
)
from rootstrata.strata import (
    dominant_in_stratum,
    lacing_criterion,
    length_profile,
    level_stratum,
    short_witness,
    stratum,
    z_stratum,
    z_stratum_basis,
)
from rootstrata.weyl_orbits import (
    act,
    brute_force_group,
    dominant_representative,
    oshima_check,
    orbit,
    orbit_partition,
    project_onto_span,
    root_orbit_oracle,
    stabilizer_order,
)

SUITE = "rootstrata-verify"
MAX_RANK = 8
DEEP_RANK = 4
SAMPLES = 1000
GLOBAL = "all"  # system label of checks not tied to one type

COXETER_TABLE = {"E": {6: 12, 7: 18, 8: 30}, "F": {4: 12}, "G": {2: 6}}

# Reference values of r_alpha (Bourbaki numbering) and upper bounds for E_n.
R_ALPHA_REFERENCE = {
    "F4": (Fraction(3, 2), Fraction(11, 6), Fraction(7, 6), Fraction(3, 4)),
    "G2": (Fraction(1, 2), Fraction(3, 2)),
}
E_BOUNDS = (Fraction(7, 4), Fraction(15, 8), Fraction(27, 14), Fraction(59, 30),
            Fraction(39, 20), Fraction(23, 12), Fraction(11, 6), Fraction(3, 2))


class CheckFailure(AssertionError):
    pass


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise CheckFailure(message)


@dataclass(frozen=True)
class CheckResult:
    name: str
    system: str
    status: str
    detail: str

    def to_json(self) -> dict:
        return {"name": self.name, "system": self.system, "status": self.status, "detail": self.detail}


@dataclass
class VerificationReport:
    suite: str
    max_rank: int
    deep: bool
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def systems(self) -> list[str]:
        return list(dict.fromkeys(c.system for c in self.checks if c.system != GLOBAL))

    @property
    def totals(self) -> dict[str, int]:
        passed = sum(c.status == "pass" for c in self.checks)
        return {"total": len(self.checks), "pass": passed, "fail": len(self.checks) - passed}

    @property
    def ok(self) -> bool:
        return self.totals["fail"] == 0

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "max_rank": self.max_rank,
            "deep": self.deep,
            "systems": self.systems,
            "checks": [c.to_json() for c in self.checks],
            "totals": self.totals,
        }


# --------------------------------------------------------------------------
# Coverage helpers


def _rng(name: str, rs: RootSystem) -> random.Random:
    return random.Random(f"{name}:{rs.spec}")


def _random_pair(rs: RootSystem, rng: random.Random, roots) -> tuple[frozenset[int], tuple]:
    while True:
        S = frozenset(i for i in range(rs.rank) if rng.random() < 0.5)
        beta = rng.choice(roots)
        if S & {i for i, c in enumerate(beta) if c}:
            return S, beta


def _pairs(rs: RootSystem, name: str, exhaustive_rank: int, all_roots: bool = False
           ) -> Iterator[tuple[frozenset[int], tuple]]:
    """Exhaustive ``(S, beta)`` pairs up to ``exhaustive_rank``, seeded
    samples above it."""
    roots = rs.roots if all_roots else rs.positive_roots
    if rs.rank <= exhaustive_rank:
        for size in range(1, rs.rank + 1):
            for S in combinations(range(rs.rank), size):
                S = frozenset(S)
                for beta in roots:
                    if any(beta[i] for i in S):
                        yield S, beta
        return
    rng = _rng(name, rs)
    for _ in range(SAMPLES):
        yield _random_pair(rs, rng, roots)


def _small_subset_pairs(rs: RootSystem) -> Iterator[tuple[frozenset[int], tuple]]:
    for size in (1, 2):
        for S in combinations(range(rs.rank), size):
            S = frozenset(S)
            for beta in rs.positive_roots:
                if any(beta[i] for i in S):
                    yield S, beta


def _fmt(S: Iterable[int]) -> str:
    return "{" + ",".join(str(i + 1) for i in sorted(S)) + "}"


# --------------------------------------------------------------------------
# core_roots


def _h_table(rs: RootSystem) -> int:
    fam, n = rs.spec.family, rs.rank
    if fam == "A":
        return n + 1
    if fam in "BC":
        return 2 * n
    if fam == "D":
        return 2 * n - 2
    return COXETER_TABLE[fam][n]


def check_root_count(rs: RootSystem) -> str:
    h = _h_table(rs)
    _require(len(rs.roots) == rs.rank * h, f"|roots| = {len(rs.roots)} != {rs.rank} x {h}")
    _require(coxeter_number(rs) == h, "Coxeter number mismatch")
    return f"|roots| = {len(rs.roots)} = {rs.rank} x {h}"


def check_root_set_brute(rs: RootSystem) -> str:
    """Box search: integer vectors of root norm whose dominant
    representative is the highest root of their length."""
    import itertools

    norms = {Fraction(2), Fraction(2, rs.lacing)}
    tops = {rs.highest_root}
    shorts = [r for r in rs.positive_roots if not rs.is_long(r)]
    if shorts:
        tops.add(max(shorts, key=lambda r: (sum(r), r)))
    found = set()
    for v in itertools.product(*(range(-m, m + 1) for m in rs.marks)):
        if rs.norm(v) in norms and dominant_representative(rs, range(rs.rank), v) in tops:
            found.add(v)
    _require(found == rs.root_set, "box search disagrees with closure")
    return f"{len(found)} roots"


def check_long_congruence(rs: RootSystem) -> str:
    short = rs.short_simple()
    for r in rs.roots:
        by_coeffs = all(r[i] % rs.lacing == 0 for i in short)
        _require(rs.is_long(r) == by_coeffs, f"{r} breaks the congruence criterion")
    return f"{len(rs.roots)} roots"


def check_simple_sum(rs: RootSystem) -> str:
    _require(rs.is_root((1,) * rs.rank), "sum of simple roots is not a root")
    return "ok"


def check_coweight_duality(rs: RootSystem) -> str:
    n = rs.rank
    for i in range(n):
        w, lam = coweight(rs, i), weight(rs, i)
        for j in range(n):
            _require(rs.pair(rs.simple_roots[j], w) == (i == j), f"(alpha_{j + 1}, coweight_{i + 1})")
            _require(rs.coroot_pairing(lam, j) == (i == j), f"(weight_{i + 1}, coroot_{j + 1})")
    inv = inverse_cartan(rs)
    _require(_linalg.matmul(rs.cartan, inv) == _linalg.identity(n), "Cartan inverse")
    return "ok"


# --------------------------------------------------------------------------
# strata


def _leq(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def check_interval(rs: RootSystem) -> str:
    n = 0
    for S, beta in _pairs(rs, "interval", 6):
        st = stratum(rs, S, beta)
        lo, hi = st.min_root, st.max_root
        interval = tuple(r for r in rs.roots if _leq(lo, r) and _leq(r, hi))
        _require(interval == st.roots, f"S={_fmt(S)} beta={beta}: not an interval")
        n += 1
    return f"{n} pairs"


def check_subsystem_bases(rs: RootSystem) -> str:
    n = 0
    for S, beta in _pairs(rs, "subsystem_bases", 6):
        for side in ("min", "max"):
            basis = z_stratum_basis(rs, S, beta, side)
            _require(sum(c.rank for c in basis.components) == 1 + len(basis.rest),
                     f"S={_fmt(S)} beta={beta}: basis of wrong rank")
        n += 1
    return f"{n} pairs, both sides"


def check_extreme_lengths(rs: RootSystem) -> str:
    n = 0
    for S, beta in _pairs(rs, "extreme_lengths", 6):
        st = stratum(rs, S, beta)
        top = max(rs.norm(r) for r in st.roots)
        _require(rs.norm(st.min_root) == rs.norm(st.max_root) == top,
                 f"S={_fmt(S)} beta={beta}: min/max not of maximal length")
        n += 1
    return f"{n} pairs"


def check_length_profile(rs: RootSystem) -> str:
    n = 0
    for S, beta in _pairs(rs, "length_profile", 4, all_roots=True):
        st = stratum(rs, S, beta)
        _require(length_profile(rs, S, beta) == st.lengths_present,
                 f"S={_fmt(S)} beta={beta}: profile disagrees with scan")
        n += 1
    return f"{n} pairs"


def check_lacing_criterion(rs: RootSystem) -> str:
    n = 0
    for S, beta in _pairs(rs, "lacing_criterion", 4, all_roots=True):
        has_long = any(rs.is_long(r) for r in stratum(rs, S, beta).roots)
        _require(lacing_criterion(rs, S, beta) == has_long, f"S={_fmt(S)} beta={beta}")
        n += 1
    return f"{n} pairs"


def _coroot_coords(rs: RootSystem, gamma) -> tuple[int, ...]:
    out = []
    for c, a in zip(gamma, rs.simple_norms):
        q = Fraction(c) * a / rs.norm(gamma)
        assert q.denominator == 1
        out.append(int(q))
    return tuple(out)


def check_dual_lengths(rs: RootSystem) -> str:
    dual = dual_system(rs)
    n = 0
    for S, beta in _pairs(rs, "dual_lengths", 4, all_roots=True):
        st = stratum(rs, S, beta)
        shorts = [r for r in st.roots if rs.is_short(r)]
        if not shorts:
            continue
        images = {_coroot_coords(rs, g) for g in shorts}
        level = _coroot_coords(rs, shorts[0])
        dual_st = stratum(dual, S, level)
        longs = {r for r in dual_st.roots if dual.is_long(r)}
        _require(images == longs, f"S={_fmt(S)} beta={beta}: coroots of short roots")
        n += 1
    return f"{n} strata with short roots"


def check_dominant_per_length(rs: RootSystem) -> str:
    n = 0
    for S, beta in _pairs(rs, "dominant_per_length", 4):
        dom = dominant_in_stratum(rs, S, beta)
        _require(dom[0] == stratum(rs, S, beta).max_root, f"S={_fmt(S)} beta={beta}")
        n += 1
    return f"{n} pairs"


def check_short_witness(rs: RootSystem) -> str:
    n = 0
    for mu in rs.positive_roots:
        if rs.is_long(mu) or min(mu) == 0:
            continue
        g = short_witness(rs, mu)
        up = tuple(c + (k == g) for k, c in enumerate(mu))
        _require(g in rs.short_simple() and rs.is_root(up) and mu[g] % rs.lacing != 0,
                 f"bad witness {g + 1} for {mu}")
        n += 1
    return f"{n} short roots with full support"


# --------------------------------------------------------------------------
# weyl_orbits


def check_oshima(rs: RootSystem) -> str:
    if rs.rank <= 6:
        pairs = list(_pairs(rs, "oshima", 6))
        label = "exhaustive"
    else:
        pairs = list(_small_subset_pairs(rs)) + list(_pairs(rs, "oshima", 6))
        label = "|S|<=2 plus samples"
    for S, beta in pairs:
        orbits, lengths = oshima_check(rs, S, beta)
        _require(orbits == lengths, f"S={_fmt(S)} beta={beta}: {orbits} orbits, {lengths} lengths")
    return f"{len(pairs)} pairs ({label})"


def check_projection_equivariance(rs: RootSystem) -> str:
    rng = _rng("projection_equivariance", rs)
    for _ in range(200):
        S, beta = _random_pair(rs, rng, rs.positive_roots)
        rest = [i for i in range(rs.rank) if i not in S]
        gamma = rng.choice(stratum(rs, S, beta).roots)
        word = [rng.choice(rest) for _ in range(rng.randint(0, 6))] if rest else []
        lhs = project_onto_span(rs, rest, act(rs, word, gamma))
        rhs = act(rs, word, project_onto_span(rs, rest, gamma))
        _require(lhs == rhs, f"S={_fmt(S)} gamma={gamma} word={word}")
    return "200 sampled triples"


def check_level_projection(rs: RootSystem) -> str:
    n = 0
    for S, beta in _pairs(rs, "level_projection", 4):
        rest = [i for i in range(rs.rank) if i not in S]
        perp = lambda v: tuple(Fraction(a) - b for a, b in zip(v, project_onto_span(rs, rest, v)))
        target = perp(beta)
        for g in stratum(rs, S, beta).roots:
            _require(perp(g) == target, f"S={_fmt(S)} beta={beta} gamma={g}")
        n += 1
    return f"{n} pairs"


def check_orbit_stabilizer(rs: RootSystem) -> str:
    n = 0
    gen_sets = [tuple(range(rs.rank))] + [tuple(j for j in range(rs.rank) if j != i) for i in range(rs.rank)]
    for gens in gen_sets:
        order = parabolic_order(rs, gens)
        seeds = list(rs.simple_roots) + [rs.highest_root]
        if order <= 10**5:
            seeds += [weight(rs, i) for i in range(rs.rank)]
        for seed in seeds:
            rep = orbit(rs, gens, seed)
            _require(rep.orbit_size * stabilizer_order(rs, gens, seed) == order,
                     f"gens={_fmt(gens)} seed={seed}")
            n += 1
    return f"{n} orbits"


def check_hull_orbit(rs: RootSystem) -> str:
    n = 0
    for S, beta in _pairs(rs, "hull_orbit", DEEP_RANK):
        st = stratum(rs, S, beta)
        rest = [i for i in range(rs.rank) if i not in S]
        verts = orbit(rs, rest, st.max_root).elements
        top = rs.norm(st.max_root)
        for g in st.roots:
            if rs.norm(g) != top:
                _require(in_convex_hull(verts, g), f"S={_fmt(S)} beta={beta}: {g} outside hull")
                n += 1
    return f"{n} shorter roots inside orbit hulls"


def check_brute_group(rs: RootSystem) -> str:
    gen_sets = [tuple(range(rs.rank))] + [tuple(j for j in range(rs.rank) if j != i) for i in range(rs.rank)]
    for gens in gen_sets:
        group = brute_force_group(rs, gens)
        _require(len(group) == parabolic_order(rs, gens), f"|W<{_fmt(gens)}>|")
        bfs = orbit_partition(rs, gens, rs.roots)
        for part in bfs:
            seed = min(part)
            _require(root_orbit_oracle(rs, group, seed) == part, f"orbit of {seed}")
            k = rs.root_index[seed]
            fixing = sum(1 for g in group if g[k] == k)
            _require(fixing == stabilizer_order(rs, gens, seed), f"stabiliser of {seed}")
    return f"{len(gen_sets)} parabolic subgroups"


# --------------------------------------------------------------------------
# polytope


def check_extremal_leaves(rs: RootSystem) -> str:
    singles = sorted(next(iter(I)) for I in extremal_subsets(rs, 1) if I)
    if rs.spec.family == "A":
        _require(singles == list(range(rs.rank)), "type A: every simple root is extremal")
    else:
        adj = extended_diagram_vertices(rs)
        leaves = sorted(v for v, nb in adj.items() if v != AFFINE_NODE and len(nb) == 1)
        _require(singles == leaves, f"extremal {singles} != leaves {leaves}")
    return f"{len(singles)} extremal simple roots"


def _faces(rs: RootSystem):
    for I in extremal_subsets(rs, 2):
        if I:
            yield I, standard_face(rs, I)


def check_face_certificates(rs: RootSystem) -> str:
    n = 0
    for I, face in _faces(rs):
        _require(face_certificate(rs, face), f"I={_fmt(I)}")
        _require(face.dimension == rs.rank - len(I) == _linalg.affine_rank(face.vertices),
                 f"I={_fmt(I)}: dimension")
        n += 1
    return f"{n} faces with |I|<=2"


def check_barycenters(rs: RootSystem) -> str:
    n = 0
    for I, face in _faces(rs):
        _require(all(rs.coroot_pairing(face.barycenter, j) >= 0 for j in range(rs.rank)),
                 f"I={_fmt(I)}: barycentre not dominant")
        n += 1
    return f"{n} faces"


def _levels(rs: RootSystem):
    for i in range(rs.rank):
        for k in range(1, rs.marks[i] + 1):
            yield i, k


def check_orthogonality(rs: RootSystem) -> str:
    n = 0
    for i, k in _levels(rs):
        st = level_stratum(rs, i, k)
        top = rs.norm(st.max_root)
        patterns = {orthogonal_components(rs, i, g) for g in st.roots if rs.norm(g) == top}
        _require(len(patterns) == 1, f"alpha_{i + 1}, k={k}")
        n += 1
    return f"{n} level slices"


def check_projection_dimension(rs: RootSystem) -> str:
    n = 0
    for i, k in _levels(rs):
        d = projection_dimension(rs, i, k)
        st = level_stratum(rs, i, k)
        projected = [project_to_wall(rs, i, g) for g in st.roots]
        _require(d == _linalg.affine_rank(projected) == _linalg.affine_rank(st.roots),
                 f"alpha_{i + 1}, k={k}: dimension {d}")
        if k == 1:
            _require(d == rs.rank - 1, f"alpha_{i + 1}: level 1 not of codimension 1")
        n += 1
    return f"{n} level slices"


def check_projected_alpha(rs: RootSystem) -> str:
    for i in range(rs.rank):
        total = [Fraction(0)] * rs.rank
        for eps, c in projected_alpha_weights(rs, i).items():
            total = [t + c * w for t, w in zip(total, wall_fundamental_weight(rs, i, eps))]
        _require(tuple(total) == project_to_wall(rs, i, rs.simple_roots[i]), f"alpha_{i + 1}")
    return f"{rs.rank} simple roots"


def check_hopkins_postnikov(rs: RootSystem) -> str:
    values = [r_alpha(rs, i) for i in range(rs.rank)]
    # rank 1: the wall subsystem is empty and r is 0
    positive = all(v > 0 for v in values) or rs.rank == 1
    _require(positive and all(0 <= v < 2 for v in values), f"r = {[str(v) for v in values]}")
    return "r = (" + ", ".join(str(v) for v in values) + ")"


def check_r_alpha_oracle(rs: RootSystem) -> str:
    for i in range(rs.rank):
        a, b = r_alpha(rs, i), min_dilation_oracle(rs, i, 1).r_min
        _require(a == b, f"alpha_{i + 1}: formula {a} != oracle {b}")
    return f"{rs.rank} simple roots"


def check_higher_levels(rs: RootSystem) -> str:
    n = 0
    for i, k in _levels(rs):
        up = min_dilation_oracle(rs, i, k).r_min
        _require(up == min_dilation_oracle(rs, i, -k).r_min, f"alpha_{i + 1}: level -{k}")
        _require(up <= min_dilation_via_subsystem(rs, i, k), f"alpha_{i + 1}, k={k}")
        n += 1
    return f"{n} levels, symmetric and bounded by the subsystem value"


def check_wall_weight_support(rs: RootSystem) -> str:
    n = 0
    for i, k in _levels(rs):
        if k < 2:
            continue
        gamma = level_stratum(rs, i, k).min_root
        support = [e for e in range(rs.rank) if e != i and rs.coroot_pairing(gamma, e)]
        _require(len(support) <= 2, f"alpha_{i + 1}, k={k}: {len(support)} wall weights")
        n += 1
    return f"{n} levels with k>1"


def check_reference_values(rs: RootSystem) -> str:
    name = str(rs.spec)
    values = tuple(r_alpha(rs, i) for i in range(rs.rank))
    if name in R_ALPHA_REFERENCE:
        _require(values == R_ALPHA_REFERENCE[name], f"r = {[str(v) for v in values]}")
    if rs.spec.family == "E":
        for i, v in enumerate(values):
            _require(v <= E_BOUNDS[i], f"alpha_{i + 1}: {v} > {E_BOUNDS[i]}")
        if rs.rank == 8:
            _require(values[7] == Fraction(3, 2), "E8 alpha_8")
    return "matches reference"


def check_lp_oracle(rs: RootSystem) -> str:
    n = 0
    for i, k in _levels(rs):
        a, b = min_dilation_lp(rs, i, k), min_dilation_oracle(rs, i, k).r_min
        _require(a == b, f"alpha_{i + 1}, k={k}: LP {a} != oracle {b}")
        n += 1
    return f"{n} levels"


def check_face_orbits(rs: RootSystem) -> str:
    n = 0
    for I, _ in _faces(rs):
        _require(standard_face_orbit_check(rs, I, DEEP_RANK), f"I={_fmt(I)}")
        n += 1
    return f"{n} faces"


# --------------------------------------------------------------------------
# enumeration


def check_level1_count(rs: RootSystem) -> str:
    for i in range(rs.rank):
        a, b = level1_same_length_count(rs, i), level1_same_length_brute(rs, i)
        _require(a == b, f"alpha_{i + 1}: formula {a} != brute {b}")
    return f"{rs.rank} simple roots"


def check_leaf_support(rs: RootSystem) -> str:
    leaves = [i for i in range(rs.rank) if is_leaf(rs, i)]
    for i in leaves:
        a, b = leaf_support_count(rs, i), leaf_support_brute(rs, i)
        _require(a == b, f"alpha_{i + 1}: formula {a} != brute {b}")
    return f"{len(leaves)} leaves"


def check_coxeter_identity(rs: RootSystem) -> str:
    leaves = [i for i in range(rs.rank) if is_leaf(rs, i)]
    for i in leaves:
        lhs, rhs = coxeter_identity_sides(rs, i)
        _require(lhs == rhs, f"alpha_{i + 1}: {lhs} != {rhs}")
    return f"{len(leaves)} leaves"


def check_peeling_sums(rs: RootSystem) -> str:
    out = []
    for t in ("long", "short"):
        seqs = valid_peeling_sequences(rs, t)
        expected = positive_roots_of_length(rs, t)
        if not expected:
            _require(not seqs, f"{t}: sequences without roots")
            continue
        _require(bool(seqs), f"{t}: no valid sequence")
        if rs.lacing > 1:
            _require(len(seqs) == 1, f"{t}: {len(seqs)} sequences in a multiply laced system")
        sums = {iterando_sum(rs, s) for s in seqs}
        _require(sums == {expected}, f"{t}: sums {sorted(sums)} != {expected}")
        out.append(f"{t}: {len(seqs)} sequences, sum {expected}")
    return "; ".join(out)


def check_e6_peeling(rs: RootSystem) -> str:
    by_first: dict[int, set[int]] = {}
    for s in valid_peeling_sequences(rs, "long"):
        by_first.setdefault(s.order[0], set()).add(iterando_sum(rs, s, diagnostic=True))
    _require(by_first.get(1) == {35}, f"alpha_2 first: {by_first.get(1)}")
    _require(by_first.get(0) == {36}, f"alpha_1 first: {by_first.get(0)}")
    return "alpha_2 first: 35; alpha_1 first: 36 (sequence-dependent)"


# --------------------------------------------------------------------------
# global


def _lemma_table(max_rank: int) -> list[tuple[str, int, int, Fraction]]:
    rows = []
    for n in range(1, max_rank + 1):
        for i in range(1, n + 1):
            rows.append(("A", n, i, Fraction(i * (n + 1 - i), n + 1)))
    for n in range(2, max_rank + 1):
        rows.append(("B", n, 1, Fraction(1)))
        rows.append(("B", n, n, Fraction(n, 4)))
    for n in range(3, max_rank + 1):
        rows.append(("C", n, 1, Fraction(1, 2)))
        rows.append(("C", n, n, Fraction(n, 2)))
    for n in range(4, max_rank + 1):
        rows.append(("D", n, 1, Fraction(1)))
        rows.append(("D", n, n, Fraction(n, 4)))
    if max_rank >= 6:
        rows.append(("E", 6, 6, Fraction(4, 3)))
    if max_rank >= 7:
        rows.append(("E", 7, 7, Fraction(3, 2)))
    return rows


def check_c_constants(max_rank: int) -> str:
    rows = _lemma_table(max_rank)
    for fam, n, i, expected in rows:
        got = c_constant(fam, n, i - 1)
        _require(got == expected, f"c_{i}[{fam}{n}] = {got} != {expected}")
    return f"{len(rows)} identities"


# --------------------------------------------------------------------------
# Registry and driver

Applies = Callable[[RootSystem], bool]
_always: Applies = lambda rs: True
_classical: Applies = lambda rs: rs.spec.family in "ABCD"

CHECKS: list[tuple[str, Applies, Callable[[RootSystem], str], bool]] = [
    ("root_count", _always, check_root_count, False),
    ("root_set_brute", lambda rs: rs.rank <= 4, check_root_set_brute, False),
    ("long_root_congruence", _always, check_long_congruence, False),
    ("simple_sum_is_root", _always, check_simple_sum, False),
    ("coweight_duality", _always, check_coweight_duality, False),
    ("stratum_interval", _always, check_interval, False),
    ("subsystem_bases", _always, check_subsystem_bases, False),
    ("extreme_lengths", _always, check_extreme_lengths, False),
    ("length_profile", _always, check_length_profile, False),
    ("lacing_criterion", _always, check_lacing_criterion, False),
    ("dual_lengths", lambda rs: rs.lacing > 1, check_dual_lengths, False),
    ("dominant_per_length", _always, check_dominant_per_length, False),
    ("short_witness", lambda rs: rs.spec.family in "BCFG", check_short_witness, False),
    ("oshima", _always, check_oshima, False),
    ("projection_equivariance", _always, check_projection_equivariance, False),
    ("level_projection", _always, check_level_projection, False),
    ("orbit_stabilizer", _always, check_orbit_stabilizer, False),
    ("hull_orbit", lambda rs: rs.rank <= DEEP_RANK, check_hull_orbit, True),
    ("brute_force_group", lambda rs: rs.rank <= DEEP_RANK, check_brute_group, True),
    ("extremal_leaves", _always, check_extremal_leaves, False),
    ("face_certificates", _always, check_face_certificates, False),
    ("barycenter_dominance", _always, check_barycenters, False),
    ("orthogonality_constancy", _always, check_orthogonality, False),
    ("projection_dimension", _always, check_projection_dimension, False),
    ("projected_alpha", _always, check_projected_alpha, False),
    ("hopkins_postnikov", _always, check_hopkins_postnikov, False),
    ("r_alpha_oracle", lambda rs: rs.rank <= 6, check_r_alpha_oracle, False),
    ("higher_levels", _always, check_higher_levels, False),
    ("wall_weight_support", _always, check_wall_weight_support, False),
    ("r_alpha_reference", lambda rs: str(rs.spec) in R_ALPHA_REFERENCE or rs.spec.family == "E",
     check_reference_values, False),
    ("lp_oracle", lambda rs: 2 <= rs.rank <= DEEP_RANK, check_lp_oracle, True),
    ("standard_face_orbit", lambda rs: rs.rank <= DEEP_RANK, check_face_orbits, True),
    ("level1_count", _always, check_level1_count, False),
    ("leaf_support", _classical, check_leaf_support, False),
    ("coxeter_identity", lambda rs: rs.spec.family in "AD", check_coxeter_identity, False),
    ("peeling_sums", _classical, check_peeling_sums, False),
    ("e6_peeling_diagnostic", lambda rs: str(rs.spec) == "E6", check_e6_peeling, False),
]

CHECK_NAMES = [name for name, *_ in CHECKS] + ["c_constants"]


def _run_one(name: str, system: str, fn: Callable[[], str]) -> CheckResult:
    try:
        return CheckResult(name, system, "pass", fn())
    except (CheckFailure, RootSystemError, RuntimeError, AssertionError) as exc:
        return CheckResult(name, system, "fail", f"{type(exc).__name__}: {exc}")


def run_system(spec: str, deep: bool = False, only: frozenset[str] | None = None) -> list[CheckResult]:
    rs = build_root_system(spec)
    out = []
    for name, applies, fn, needs_deep in CHECKS:
        if only is not None and name not in only:
            continue
        if needs_deep and not deep:
            continue
        if applies(rs):
            out.append(_run_one(name, spec, lambda: fn(rs)))
    return out


def _run_system_args(args: tuple) -> list[CheckResult]:
    return run_system(*args)


def verify(max_rank: int = MAX_RANK, deep: bool = False, jobs: int = 1,
           only: Iterable[str] | None = None) -> VerificationReport:
    """Run the battery on every irreducible type of rank <= ``max_rank``.

    ``jobs > 1`` spreads systems over worker processes; results are
    reassembled in the fixed system order, so the report is unchanged.
    """
    if not 1 <= max_rank <= MAX_RANK:
        raise RootSystemError(f"max rank must be between 1 and {MAX_RANK}")
    only = frozenset(only) if only is not None else None
    if only is not None and not only <= set(CHECK_NAMES):
        raise RootSystemError(f"unknown checks: {sorted(only - set(CHECK_NAMES))}")
    specs = [str(s) for s in all_specs(max_rank)]
    tasks = [(s, deep, only) for s in specs]
    if jobs > 1:
        # submit the largest systems first, collect in the fixed order
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = {t[0]: pool.submit(_run_system_args, t)
                       for t in sorted(tasks, key=lambda t: -RootSystemSpec.parse(t[0]).rank)}
            results = [futures[s].result() for s in specs]
    else:
        results = [run_system(*t) for t in tasks]
    report = VerificationReport(SUITE, max_rank, deep)
    for chunk in results:
        report.checks.extend(chunk)
    if only is None or "c_constants" in only:
        report.checks.append(_run_one("c_constants", GLOBAL, lambda: check_c_constants(max_rank)))
    return report


def default_jobs() -> int:
    return max(1, min(8, os.cpu_count() or 1))
