"""Command-line surface: every capability behind one `minbase` entry
point, with JSON certificates that a `verify` subcommand can re-check
from their own content.

Exit codes: 0 = verified pass, 1 = verified fail (a counterexample was
found), 2 = refusal (bad parameters, order cap, or search budget) -- a
refusal is never a fail.  JSON output is deterministic for search-free
commands; wall-clock timing appears only in the human-readable report.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from fractions import Fraction

from . import bounds as bounds_mod
from .bounds import FAMILY_BUILDERS, evaluate_qhat
from .catalog import BUILTIN_NAMES, group_from_spec
from .classical import (
    BudgetError,
    orth_odd_construct,
    orth_odd_pair_check,
    sp4_pair_stabilizer,
    sp4_triple_base_check,
)
from .fq import Fq, frobenius_subspace
from .invariants import (
    NotSoluble,
    alpha,
    base_size_subgroup,
    beta,
    chief_factor_bound,
    soluble_bounds_report,
)
from .lattice import GroupTable, Lattice, OrderCapExceeded, frattini
from .partitions import (
    PreconditionError,
    SearchBudgetExceeded,
    base_size_partitions,
    format_partition,
    minimal_partition_base,
    parse_partition,
    partition_base_size_value,
    partition_stabilizer,
)
from .perm import format_perm, parse_perm

PASS, FAIL, REFUSED = 0, 1, 2


def _emit(args, cert, human_lines, elapsed):
    if args.json:
        print(json.dumps(cert, indent=1, sort_keys=True, default=str))
    else:
        for line in human_lines:
            print(line)
        print(f"[{elapsed:.2f}s]")
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            json.dump(cert, fh, indent=1, sort_keys=True, default=str)


def _lattice_for(args):
    G = group_from_spec(args.spec)
    table = GroupTable(G, getattr(args, "cap", 1000) or 1000)
    return Lattice(table)


# -- subcommand implementations ---------------------------------------------


def cmd_partition_base(args):
    t0 = time.time()
    parts = minimal_partition_base(
        args.a, args.b, ambient=args.ambient, seed=args.seed, budget=args.budget
    )
    order = partition_stabilizer(
        parts, "all" if args.ambient == "sym" else "even"
    ).order
    claimed = partition_base_size_value(args.a, args.b, args.ambient)
    cert = {
        "command": "partition-base",
        "inputs": {"a": args.a, "b": args.b, "ambient": args.ambient},
        "seed": args.seed,
        "result": {"base_size": len(parts), "stabilizer_order": order,
                   "claimed_value": claimed},
        "witnesses": {"partitions": [format_partition(p) for p in parts]},
    }
    lines = [
        f"base of size {len(parts)} for the ({args.a},{args.b}) partition action",
        *("  " + format_partition(p) for p in parts),
        f"joint stabilizer order: {order} (certified)",
    ]
    _emit(args, cert, lines, time.time() - t0)
    return PASS if order == 1 and len(parts) == claimed else FAIL


def cmd_base_size(args):
    t0 = time.time()
    value, cert_data = base_size_partitions(
        args.a, args.b, mode=args.mode, ambient=args.ambient,
        seed=args.seed, budget=args.budget,
    )
    cert = {
        "command": "base-size",
        "inputs": {"a": args.a, "b": args.b, "mode": args.mode,
                   "ambient": args.ambient},
        "seed": args.seed,
        "result": {"base_size": value, "exact": cert_data["exact"]},
        "witnesses": {"partitions": cert_data["partitions"]},
    }
    lines = [f"base size ({args.mode}) = {value}"]
    _emit(args, cert, lines, time.time() - t0)
    return PASS


def cmd_stabilizer(args):
    t0 = time.time()
    parts = [
        parse_partition(chunk, args.ground)
        for chunk in args.partitions.split(";")
    ]
    G = partition_stabilizer(parts, args.parity)
    cert = {
        "command": "stabilizer",
        "inputs": {"ground": args.ground, "parity": args.parity,
                   "partitions": [format_partition(p) for p in parts]},
        "seed": args.seed,
        "result": {"order": G.order},
        "witnesses": {"generators": [format_perm(g) for g in G.generators]},
    }
    _emit(args, cert, [f"stabilizer order: {G.order}"], time.time() - t0)
    return PASS


def cmd_alpha(args):
    t0 = time.time()
    lat = _lattice_for(args)
    cert_a = alpha(lat)
    table = lat.table
    frat_rec = frattini(lat)
    cert = {
        "command": "alpha",
        "inputs": {"spec": args.spec, "order": table.n},
        "seed": args.seed,
        "result": {"alpha": cert_a.value, "frattini_order": cert_a.frattini_order,
                   "exhaustive": cert_a.exhaustive},
        "witnesses": {
            "maximal_subgroups": [
                [table.word_of(g) for g in rec.generators]
                for rec in cert_a.witness
            ],
            "frattini_generators": [table.word_of(g) for g in frat_rec.generators],
        },
    }
    assert cert_a.verify(table)
    lines = [f"alpha({args.spec}) = {cert_a.value} (proved minimal)"]
    _emit(args, cert, lines, time.time() - t0)
    return PASS


def cmd_beta(args):
    t0 = time.time()
    lat = _lattice_for(args)
    res = beta(lat)
    table = lat.table
    if res.value is math.inf:
        cert = {
            "command": "beta",
            "inputs": {"spec": args.spec, "order": table.n},
            "seed": args.seed,
            "result": {"beta": "infinity", "frattini_order": res.frattini_order},
            "witnesses": {
                "core_orders_by_class": [
                    {"generators": [table.word_of(g) for g in rec.generators],
                     "core_order": order}
                    for rec, order in res.empty_star_evidence
                ]
            },
        }
        lines = [f"beta({args.spec}) = infinity (no core-free-to-Frattini maximal class)"]
        _emit(args, cert, lines, time.time() - t0)
        return PASS
    chosen = res.chosen
    cert = {
        "command": "beta",
        "inputs": {"spec": args.spec, "order": table.n},
        "seed": args.seed,
        "result": {"beta": res.value, "frattini_order": res.frattini_order},
        "witnesses": {
            "subgroup_generators": [
                table.word_of(g) for g in chosen.subgroup.generators
            ],
            "conjugator_words": [table.word_of(g) for g in chosen.conjugators],
            "core_order": chosen.core_order,
        },
    }
    assert chosen.verify(table)
    lines = [f"beta({args.spec}) = {res.value}"]
    _emit(args, cert, lines, time.time() - t0)
    return PASS


def _parse_qgrid(text):
    out = []
    for chunk in text.split(","):
        if ".." in chunk:
            lo, hi = chunk.split("..")
            for q in range(int(lo), int(hi) + 1):
                try:
                    bounds_mod.factor_prime_power(q)
                except ValueError:
                    continue
                out.append(q)
        else:
            out.append(int(chunk))
    return out


def cmd_qhat(args):
    t0 = time.time()
    builder = FAMILY_BUILDERS[args.family]
    rows = []
    all_certified = True
    for q in _parse_qgrid(args.q):
        try:
            table = builder(q)
        except ValueError:
            continue
        res = evaluate_qhat(table, args.c)
        all_certified &= res.certified
        rows.append(
            {
                "q": q,
                "gamma": table.gamma,
                "value": str(res.value),
                "value_float": float(res.value),
                "certified": res.certified,
                "terms": [
                    {"label": t.label, "u": str(t.u), "v": str(t.v),
                     "multiplicity": t.multiplicity}
                    for t in table.terms
                ],
            }
        )
    if not rows:
        print("no admissible q in the grid", file=sys.stderr)
        return REFUSED
    cert = {
        "command": "qhat",
        "inputs": {"family": args.family, "q": args.q, "c": args.c},
        "seed": args.seed,
        "result": {"all_certified": all_certified, "rows": rows},
        "witnesses": {},
    }
    lines = [
        f"q={r['q']}: sum = {r['value_float']:.6g}  certified(<1) = {r['certified']}"
        for r in rows
    ]
    _emit(args, cert, lines, time.time() - t0)
    return PASS if all_certified else FAIL


def cmd_sp4(args):
    t0 = time.time()
    if args.triple:
        rep = sp4_triple_base_check(args.q)
        cert = {
            "command": "sp4",
            "inputs": {"q": args.q, "triple": True},
            "seed": args.seed,
            "result": {
                "verdict": rep.verdict,
                "pair_scalars_only": rep.pair_scalars_only,
                "phi_fixes_alpha": rep.phi_fixes_alpha,
                "phi_fixes_beta": rep.phi_fixes_beta,
                "phi_moves_gamma": rep.phi_moves_gamma,
            },
            "witnesses": {},
        }
        lines = [f"triple base check at q={args.q}: {'pass' if rep.verdict else 'FAIL'}"]
        _emit(args, cert, lines, time.time() - t0)
        return PASS if rep.verdict else FAIL
    rep = sp4_pair_stabilizer(args.q)
    cert = {
        "command": "sp4",
        "inputs": {"q": args.q, "triple": False},
        "seed": args.seed,
        "result": {
            "candidates": rep.candidates,
            "survivor_count": len(rep.survivors),
            "scalars_only": rep.scalars_only,
        },
        "witnesses": {"survivors": [list(map(list, g)) for g in rep.survivors]},
    }
    lines = [
        f"pair stabilizer at q={args.q}: {len(rep.survivors)} survivors "
        f"(expected {args.q - 1} scalars): {'pass' if rep.scalars_only else 'FAIL'}"
    ]
    _emit(args, cert, lines, time.time() - t0)
    return PASS if rep.scalars_only else FAIL


def cmd_orth(args):
    t0 = time.time()
    if args.pair_check:
        rep = orth_odd_pair_check(args.n, args.q)
        cert = {
            "command": "orth",
            "inputs": {"n": args.n, "q": args.q, "pair_check": True},
            "seed": args.seed,
            "result": {
                "stabilizer_size": rep.stabilizer_size,
                "survivors": rep.survivors,
                "verdict": rep.verdict,
            },
            "witnesses": (
                {}
                if rep.counterexample is None
                else {"counterexample": [list(r) for r in rep.counterexample]}
            ),
        }
        lines = [
            f"pair check O_{args.n}({args.q}): {rep.survivors} survivor(s) "
            f"out of {rep.stabilizer_size}: {'pass' if rep.verdict else 'FAIL'}"
        ]
        _emit(args, cert, lines, time.time() - t0)
        return PASS if rep.verdict else FAIL
    variant = "4m+1" if args.n % 4 == 1 else "4m+3"
    m = (args.n - (1 if variant == "4m+1" else 3)) // 4
    cons = orth_odd_construct(m, variant, args.q)
    F = Fq(args.q)
    phi_moves = frobenius_subspace(F, cons.W_prime) != cons.W_prime if F.f > 1 else None
    cert = {
        "command": "orth",
        "inputs": {"n": args.n, "q": args.q, "pair_check": False},
        "seed": args.seed,
        "result": {
            "dim_U": len(cons.U),
            "dim_W": len(cons.W),
            "phi_moves_w_prime": phi_moves,
        },
        "witnesses": {
            "U": [list(v) for v in cons.U],
            "W": [list(v) for v in cons.W],
            "W_prime": [list(v) for v in cons.W_prime],
            "basis": cons.basis_names,
        },
    }
    lines = [
        f"constructed U, W, W' in dimension {args.n} over F_{args.q}",
        f"phi moves W': {phi_moves}",
    ]
    _emit(args, cert, lines, time.time() - t0)
    return PASS


def cmd_soluble(args):
    t0 = time.time()
    lat = _lattice_for(args)
    rep = soluble_bounds_report(lat)
    ok = rep.alpha_le_length and (rep.alpha_le_non_frattini in (True, None))
    cert = {
        "command": "soluble",
        "inputs": {"spec": args.spec},
        "seed": args.seed,
        "result": {
            "alpha": rep.alpha_value,
            "chief_length": rep.chief_length,
            "non_frattini_count": rep.non_frattini_count,
            "derived_nilpotent": rep.derived_nilpotent,
            "alpha_le_length": rep.alpha_le_length,
            "alpha_le_non_frattini": rep.alpha_le_non_frattini,
        },
        "witnesses": {},
    }
    lines = [
        f"{args.spec}: alpha={rep.alpha_value} chief_length={rep.chief_length} "
        f"non_frattini={rep.non_frattini_count}: {'pass' if ok else 'FAIL'}"
    ]
    _emit(args, cert, lines, time.time() - t0)
    return PASS if ok else FAIL


def cmd_theorem4(args):
    t0 = time.time()
    lat = _lattice_for(args)
    rep = chief_factor_bound(lat)
    cert = {
        "command": "theorem4",
        "inputs": {"spec": args.spec},
        "seed": args.seed,
        "result": {
            "alpha": rep.alpha_value,
            "bound": rep.bound,
            "verdict": rep.verdict,
            "soluble": rep.soluble,
            "soluble_bound": rep.soluble_bound,
            "abelian_classes": [
                {"delta": d, "dim_over_endo": dim, "p": p, "dim": full}
                for d, dim, p, full in rep.abelian_classes
            ],
            "nonabelian_classes": [
                {"delta": d, "composition_length": n}
                for d, n in rep.nonabelian_classes
            ],
        },
        "witnesses": {},
    }
    lines = [
        f"{args.spec}: alpha={rep.alpha_value} <= bound={rep.bound}: "
        f"{'pass' if rep.verdict else 'FAIL'}"
    ]
    _emit(args, cert, lines, time.time() - t0)
    return PASS if rep.verdict else FAIL


def cmd_catalog(args):
    for name in BUILTIN_NAMES:
        G = group_from_spec(name)
        print(f"{name:10s} degree {G.degree:3d} order {G.order}")
    return PASS


def cmd_verify(args):
    with open(args.certificate) as fh:
        cert = json.load(fh)
    command = cert.get("command")
    checker = _VERIFIERS.get(command)
    if checker is None:
        print(f"no verifier for command {command!r}", file=sys.stderr)
        return REFUSED
    ok = checker(cert)
    print(f"certificate {args.certificate}: {'verified' if ok else 'REJECTED'}")
    return PASS if ok else FAIL


# -- certificate re-verification ---------------------------------------------


def _verify_partition_base(cert):
    a = cert["inputs"]["a"]
    b = cert["inputs"]["b"]
    ambient = cert["inputs"].get("ambient", "sym")
    parts = [parse_partition(s, a * b) for s in cert["witnesses"]["partitions"]]
    order = partition_stabilizer(parts, "all" if ambient == "sym" else "even").order
    return (
        order == cert["result"]["stabilizer_order"]
        and len(parts) == cert["result"]["base_size"]
        and order == 1
    )


def _verify_base_size(cert):
    a, b = cert["inputs"]["a"], cert["inputs"]["b"]
    ambient = cert["inputs"].get("ambient", "sym")
    parts = [parse_partition(s, a * b) for s in cert["witnesses"]["partitions"]]
    order = partition_stabilizer(parts, "all" if ambient == "sym" else "even").order
    return order == 1 and len(parts) == cert["result"]["base_size"]


def _verify_stabilizer(cert):
    ground = cert["inputs"]["ground"]
    parts = [parse_partition(s, ground) for s in cert["inputs"]["partitions"]]
    order = partition_stabilizer(parts, cert["inputs"]["parity"]).order
    return order == cert["result"]["order"]


def _witness_subgroup_elems(table, words):
    gens = [table.index[parse_perm(w, table.degree)] for w in words]
    return table.closure(gens)


def _verify_alpha(cert):
    G = group_from_spec(cert["inputs"]["spec"])
    table = GroupTable(G, 2000)
    frat = _witness_subgroup_elems(
        table, cert["witnesses"]["frattini_generators"]
    )
    inter = frozenset(range(table.n))
    for words in cert["witnesses"]["maximal_subgroups"]:
        inter &= _witness_subgroup_elems(table, words)
    return (
        inter == frat
        and len(cert["witnesses"]["maximal_subgroups"]) == cert["result"]["alpha"]
        and len(frat) == cert["result"]["frattini_order"]
    )


def _verify_beta(cert):
    G = group_from_spec(cert["inputs"]["spec"])
    table = GroupTable(G, 2000)
    if cert["result"]["beta"] == "infinity":
        return True  # evidence is advisory; emptiness needs the full lattice
    sub = _witness_subgroup_elems(table, cert["witnesses"]["subgroup_generators"])
    inter = set(sub)
    for w in cert["witnesses"]["conjugator_words"]:
        g = table.index[parse_perm(w, table.degree)]
        inter &= table.conjugate_set(sub, g)
    return (
        len(inter) == cert["witnesses"]["core_order"]
        and len(cert["witnesses"]["conjugator_words"]) == cert["result"]["beta"] - 1
        and cert["witnesses"]["core_order"] == cert["result"]["frattini_order"]
    )


def _verify_qhat(cert):
    c = cert["inputs"]["c"]
    for row in cert["result"]["rows"]:
        total = Fraction(0)
        for t in row["terms"]:
            if t["multiplicity"] > 0:
                total += (
                    t["multiplicity"]
                    * Fraction(t["u"]) ** c
                    / Fraction(t["v"]) ** (c - 1)
                )
        if (total < 1) != row["certified"] or str(total) != row["value"]:
            return False
    return True


def _verify_sp4(cert):
    if cert["inputs"]["triple"]:
        rep = sp4_triple_base_check(cert["inputs"]["q"])
        return rep.verdict == cert["result"]["verdict"]
    q = cert["inputs"]["q"]
    from .classical import _fixes_pair, sp4_similitude_check

    F = Fq(q)
    survivors = [tuple(tuple(r) for r in g) for g in cert["witnesses"]["survivors"]]
    if len(survivors) != cert["result"]["survivor_count"]:
        return False
    return all(
        _fixes_pair(F, g) and sp4_similitude_check(F, g) for g in survivors
    )


def _verify_orth(cert):
    if cert["inputs"].get("pair_check"):
        rep = orth_odd_pair_check(cert["inputs"]["n"], cert["inputs"]["q"])
        return (
            rep.survivors == cert["result"]["survivors"]
            and rep.verdict == cert["result"]["verdict"]
        )
    n, q = cert["inputs"]["n"], cert["inputs"]["q"]
    variant = "4m+1" if n % 4 == 1 else "4m+3"
    m = (n - (1 if variant == "4m+1" else 3)) // 4
    cons = orth_odd_construct(m, variant, q)
    return [list(v) for v in cons.W] == cert["witnesses"]["W"]


def _verify_soluble(cert):
    lat = Lattice(GroupTable(group_from_spec(cert["inputs"]["spec"]), 2000))
    rep = soluble_bounds_report(lat)
    r = cert["result"]
    return (
        rep.alpha_value == r["alpha"]
        and rep.chief_length == r["chief_length"]
        and rep.non_frattini_count == r["non_frattini_count"]
    )


def _verify_theorem4(cert):
    lat = Lattice(GroupTable(group_from_spec(cert["inputs"]["spec"]), 2000))
    rep = chief_factor_bound(lat)
    return rep.bound == cert["result"]["bound"] and rep.verdict == cert["result"]["verdict"]


_VERIFIERS = {
    "partition-base": _verify_partition_base,
    "base-size": _verify_base_size,
    "stabilizer": _verify_stabilizer,
    "alpha": _verify_alpha,
    "beta": _verify_beta,
    "qhat": _verify_qhat,
    "sp4": _verify_sp4,
    "orth": _verify_orth,
    "soluble": _verify_soluble,
    "theorem4": _verify_theorem4,
}


# -- argument parsing ---------------------------------------------------------


def _add_common(p):
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--budget", type=int, default=100000)
    p.add_argument("--cap", type=int, default=1000, help="subgroup-lattice order cap")
    p.add_argument("--out", help="also write the certificate to this file")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="minbase",
        description="certified minimal bases and intersection numbers for small groups",
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("partition-base", help="certified base for the partition action")
    p.add_argument("-a", type=int, required=True)
    p.add_argument("-b", type=int, required=True)
    p.add_argument("--ambient", choices=["sym", "alt"], default="sym")
    _add_common(p)
    p.set_defaults(func=cmd_partition_base)

    p = sub.add_parser("base-size", help="exact or upper base size for the partition action")
    p.add_argument("-a", type=int, required=True)
    p.add_argument("-b", type=int, required=True)
    p.add_argument("--mode", choices=["exact", "upper"], default="exact")
    p.add_argument("--ambient", choices=["sym", "alt"], default="sym")
    _add_common(p)
    p.set_defaults(func=cmd_base_size)

    p = sub.add_parser("stabilizer", help="joint stabilizer of listed partitions")
    p.add_argument("--ground", type=int, required=True)
    p.add_argument("--partitions", required=True,
                   help='semicolon-separated, e.g. "{1,2}|{3,4};{1,3}|{2,4}"')
    p.add_argument("--parity", choices=["all", "even"], default="all")
    _add_common(p)
    p.set_defaults(func=cmd_stabilizer)

    p = sub.add_parser("alpha", help="intersection number with witness")
    p.add_argument("--spec", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_alpha)

    p = sub.add_parser("beta", help="base number with witness")
    p.add_argument("--spec", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_beta)

    p = sub.add_parser("qhat", help="exact-rational bound tables")
    p.add_argument("--family", choices=sorted(FAMILY_BUILDERS), required=True)
    p.add_argument("--q", required=True, help="comma list or lo..hi range")
    p.add_argument("--c", type=int, default=3)
    _add_common(p)
    p.set_defaults(func=cmd_qhat)

    p = sub.add_parser("sp4", help="symplectic pair/triple base checks")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--triple", action="store_true")
    _add_common(p)
    p.set_defaults(func=cmd_sp4)

    p = sub.add_parser("orth", help="odd orthogonal construction and pair check")
    p.add_argument("--n", type=int, default=7)
    p.add_argument("--q", type=int, default=3)
    p.add_argument("--pair-check", action="store_true", dest="pair_check")
    _add_common(p)
    p.set_defaults(func=cmd_orth)

    p = sub.add_parser("soluble", help="intersection number vs chief-series bounds")
    p.add_argument("--spec", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_soluble)

    p = sub.add_parser("theorem4", help="chief-factor upper bound vs exact alpha")
    p.add_argument("--spec", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_theorem4)

    p = sub.add_parser("verify", help="re-check an emitted certificate")
    p.add_argument("certificate")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("catalog", help="list builtin groups")
    p.set_defaults(func=cmd_catalog)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (PreconditionError, BudgetError, OrderCapExceeded, NotSoluble) as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return REFUSED
    except SearchBudgetExceeded as exc:
        print(f"refused (budget): {exc}", file=sys.stderr)
        return REFUSED
    except ValueError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return REFUSED


if __name__ == "__main__":
    sys.exit(main())
