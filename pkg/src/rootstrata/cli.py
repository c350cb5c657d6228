"""Command line front end.

Indices and coefficient vectors are 1-based and comma separated on input
and in every report.  Exit status: 0 when all checks pass, 1 when one
fails, 2 for usage errors and unknown root system types.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from rootstrata import __version__
from rootstrata.core_roots import (
    RootSystem,
    RootSystemError,
    build_root_system,
    classify_subdiagram,
    to_json,
)
from rootstrata.enumeration import (
    CLASSICAL,
    coxeter_identity_sides,
    count_report,
    is_leaf,
    iterando_sum,
    leaf_support_brute,
    leaf_support_count,
    positive_roots_of_length,
    valid_peeling_sequences,
)
from rootstrata.polytope import extremal_subsets, face_certificate, min_dilation_oracle, r_alpha, standard_face
from rootstrata.strata import lacing_criterion, length_profile, stratum, z_stratum_basis
from rootstrata.verify import MAX_RANK, default_jobs, verify
from rootstrata.weyl_orbits import oshima_check


class UsageError(Exception):
    pass


def _q(x) -> str:
    return str(Fraction(x))


def _vec(v: Sequence) -> str:
    return "(" + ", ".join(_q(x) for x in v) + ")"


def _parse_ints(text: str, what: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"{what} must be comma-separated integers, got {text!r}") from None


def _parse_subset(rs: RootSystem, text: str) -> frozenset[int]:
    idx = _parse_ints(text, "--S")
    if not idx or any(not 1 <= i <= rs.rank for i in idx):
        raise UsageError(f"--S indices must lie in 1..{rs.rank}")
    return frozenset(i - 1 for i in idx)


def _parse_alpha(rs: RootSystem, value: int) -> int:
    if not 1 <= value <= rs.rank:
        raise UsageError(f"--alpha must lie in 1..{rs.rank}")
    return value - 1


def _parse_root(rs: RootSystem, text: str) -> tuple[int, ...]:
    beta = tuple(_parse_ints(text, "--beta"))
    if len(beta) != rs.rank:
        raise UsageError(f"--beta needs {rs.rank} coefficients")
    if not rs.is_root(beta):
        raise UsageError(f"{beta} is not a root of {rs.spec}")
    return beta


def _emit(args, payload: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(lines))


# --------------------------------------------------------------------------
# Subcommands; each returns an exit status


def cmd_info(args) -> int:
    rs = build_root_system(args.system)
    payload = to_json(rs)
    lines = [
        f"type        {rs.spec}",
        f"rank        {rs.rank}",
        f"roots       {len(rs.roots)} ({len(rs.positive_roots)} positive)",
        f"marks       {', '.join(map(str, rs.marks))}",
        f"highest     {_vec(rs.highest_root)}",
        f"lacing      {rs.lacing}",
        "cartan",
        *("  " + " ".join(f"{x:>2}" for x in row) for row in rs.cartan),
        "roots",
        *("  " + _vec(r) for r in rs.roots),
    ]
    _emit(args, payload, lines)
    return 0


def cmd_strata(args) -> int:
    rs = build_root_system(args.system)
    S = _parse_subset(rs, args.S)
    beta = _parse_root(rs, args.beta)
    st = stratum(rs, S, beta)
    payload = st.to_json()
    lines = [f"stratum of {rs.spec}, S = {sorted(i + 1 for i in S)}, beta = {_vec(beta)}",
             f"roots       {len(st.roots)}"]
    lines += ["  " + _vec(r) for r in st.roots]
    status = 0
    if st.nontrivial:
        profile = length_profile(rs, S, beta)
        lacing = lacing_criterion(rs, S, beta)
        agree = profile == st.lengths_present and lacing == (profile != "short-only")
        basis = z_stratum_basis(rs, S, beta, "min")
        names = [c.name for c in basis.components]
        payload.update({"predicted_profile": profile, "lacing_criterion": lacing,
                        "z_stratum_type": names, "pass": agree})
        lines += [f"min         {_vec(st.min_root)}",
                  f"max         {_vec(st.max_root)}",
                  f"profile     {st.lengths_present} (predicted {profile})",
                  f"has long    {lacing}",
                  f"Z-stratum   {' x '.join(names) or 'empty'}",
                  "pass" if agree else "FAIL"]
        status = 0 if agree else 1
    else:
        comps = classify_subdiagram(rs, [i for i in range(rs.rank) if i not in S])
        lines.append(f"S misses supp(beta): parabolic subsystem {' x '.join(c.name for c in comps) or 'empty'}")
    _emit(args, payload, lines)
    return status


def cmd_oshima(args) -> int:
    rs = build_root_system(args.system)
    S = _parse_subset(rs, args.S)
    beta = _parse_root(rs, args.beta)
    orbits, lengths = oshima_check(rs, S, beta)
    ok = orbits == lengths
    payload = {"system": str(rs.spec), "S": sorted(i + 1 for i in S), "beta": list(beta),
               "orbits": orbits, "lengths": lengths, "pass": ok}
    _emit(args, payload, [f"orbits={orbits} lengths={lengths} {'pass' if ok else 'FAIL'}"])
    return 0 if ok else 1


def cmd_faces(args) -> int:
    rs = build_root_system(args.system)
    faces, lines, ok = [], [], True
    for I in extremal_subsets(rs, args.max_size):
        if not I:
            continue
        face = standard_face(rs, I)
        good = face_certificate(rs, face)
        ok &= good
        entry = face.to_json()
        entry["certified"] = good
        faces.append(entry)
        lines.append(f"I={sorted(i + 1 for i in I)} dim={face.dimension} vertices={len(face.vertices)} "
                     f"functional={_vec(face.functional)} barycenter={_vec(face.barycenter)} "
                     f"{'certified' if good else 'FAIL'}")
    _emit(args, {"system": str(rs.spec), "faces": faces}, lines)
    return 0 if ok else 1


def cmd_ralpha(args) -> int:
    rs = build_root_system(args.system)
    indices = [_parse_alpha(rs, args.alpha)] if args.alpha else list(range(rs.rank))
    reports, lines, ok = [], [], True
    for i in indices:
        if args.k is not None:
            if not 1 <= abs(args.k) <= rs.marks[i]:
                raise UsageError(f"--k must satisfy 1 <= |k| <= {rs.marks[i]} for alpha_{i + 1}")
            value = min_dilation_oracle(rs, i, args.k).r_min
            k = args.k
        else:
            value, k = r_alpha(rs, i), 1
        bound_ok = value < 2
        ok &= bound_ok
        reports.append({"alpha": i + 1, "k": k, "r_min": _q(value), "bound_ok": bound_ok})
        lines.append(f"alpha_{i + 1}  k={k}  r={_q(value):>6}  {'< 2' if bound_ok else '>= 2 FAIL'}")
    _emit(args, {"system": str(rs.spec), "dilations": reports, "all_below_2": ok}, lines)
    return 0 if ok else 1


def cmd_counts(args) -> int:
    rs = build_root_system(args.system)
    indices = [_parse_alpha(rs, args.alpha)] if args.alpha else list(range(rs.rank))
    classical = rs.spec.family in CLASSICAL
    ok = True
    level1, leaves, lines = [], [], ["level-1 roots of the length of alpha (formula / brute):"]
    for i in indices:
        rep = count_report(rs, i)
        ok &= rep["match"]
        level1.append(rep)
        lines.append(f"  alpha_{i + 1}: {rep['formula']} / {rep['brute']} {'ok' if rep['match'] else 'FAIL'}")
        if classical and is_leaf(rs, i):
            formula, brute = leaf_support_count(rs, i), leaf_support_brute(rs, i)
            entry = {"system": str(rs.spec), "alpha": i + 1, "formula": formula,
                     "brute": brute, "match": formula == brute}
            line = f"  leaf alpha_{i + 1}: support count {formula} / {brute}"
            if rs.spec.family in "AD":
                lhs, rhs = coxeter_identity_sides(rs, i)
                entry["coxeter_identity"] = [lhs, rhs]
                entry["match"] = entry["match"] and lhs == rhs
                line += f", Coxeter identity {lhs} = {rhs}"
            ok &= entry["match"]
            leaves.append(entry)
            lines.append(line + (" ok" if entry["match"] else " FAIL"))
    payload = {"level1": level1, "leaves": leaves}
    if args.iterando:
        peel = []
        for t in ("long", "short"):
            expected = positive_roots_of_length(rs, t)
            if not expected:
                continue
            seqs = valid_peeling_sequences(rs, t)
            sums = sorted({iterando_sum(rs, s, diagnostic=True) for s in seqs})
            dependent = len(sums) > 1
            match = sums == [expected]
            if classical:
                ok &= match
            peel.append({"length": t, "sequences": len(seqs), "sums": sums,
                         "positive_roots": expected, "sequence_dependent": dependent})
            lines.append(f"peeling ({t}): {len(seqs)} sequences, sums {sums}, "
                         f"{expected} positive roots of this length")
            if dependent:
                by_first: dict[int, list[int]] = {}
                for s in seqs:
                    by_first.setdefault(s.order[0] + 1, []).append(iterando_sum(rs, s, diagnostic=True))
                for first, vals in sorted(by_first.items()):
                    lines.append(f"  first alpha_{first}: sums {sorted(set(vals))}")
                lines.append("  warning: sum depends on the peeling sequence")
            if not classical:
                lines.append("  (diagnostic: type outside the classical families)")
        payload["iterando"] = peel
    _emit(args, payload, lines)
    return 0 if ok else 1


def cmd_verify(args) -> int:
    if not 1 <= args.max_rank <= MAX_RANK:
        raise UsageError(f"--max-rank must lie in 1..{MAX_RANK}")
    jobs = args.jobs if args.jobs is not None else default_jobs()
    report = verify(args.max_rank, deep=args.deep, jobs=jobs, only=args.check)
    if args.json:
        print(json.dumps(report.to_json(), indent=2))
    else:
        width = max((len(c.name) for c in report.checks), default=0)
        for c in report.checks:
            print(f"{c.status.upper():4}  {c.system:3}  {c.name:<{width}}  {c.detail}")
        t = report.totals
        print(f"{t['pass']}/{t['total']} checks passed")
    return 0 if report.ok else 1


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rootstrata", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def system_cmd(name: str, help_: str):
        p = sub.add_parser(name, help=help_)
        p.add_argument("system", help="root system type, e.g. B3 or E8")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        return p

    system_cmd("info", "Cartan data and roots").set_defaults(func=cmd_info)
    for name, func, help_ in (("strata", cmd_strata, "a stratum and its length profile"),
                              ("oshima", cmd_oshima, "orbits against root lengths on a stratum")):
        p = system_cmd(name, help_)
        p.add_argument("--S", required=True, help="simple-root indices, e.g. 1,3")
        p.add_argument("--beta", required=True, help="root coefficients, e.g. 1,2,1")
        p.set_defaults(func=func)
    p = system_cmd("faces", "standard faces with certificates")
    p.add_argument("--max-size", type=int, default=1, help="largest |I| (default 1: facets)")
    p.set_defaults(func=cmd_faces)
    p = system_cmd("ralpha", "dilation constants r_alpha")
    p.add_argument("--alpha", type=int, help="single simple root (1-based)")
    p.add_argument("--k", type=int, help="level k (oracle) instead of the closed formula")
    p.set_defaults(func=cmd_ralpha)
    p = system_cmd("counts", "root counts from Weyl group orders")
    p.add_argument("--alpha", type=int, help="single simple root (1-based)")
    p.add_argument("--iterando", action="store_true", help="also sum over peeling sequences")
    p.set_defaults(func=cmd_counts)

    p = sub.add_parser("verify", help="run the invariant battery")
    p.add_argument("--max-rank", type=int, default=MAX_RANK)
    p.add_argument("--deep", action="store_true", help="add the brute-force group and LP oracles (rank <= 4)")
    p.add_argument("--json", action="store_true")
    p.add_argument("--jobs", type=int, help="worker processes (default: CPU count, at most 8)")
    p.add_argument("--check", action="append", help="run only this check (repeatable)")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, RootSystemError) as exc:
        print(f"rootstrata {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
