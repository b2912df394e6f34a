"""Command line front end.

Every command emits one JSON document with an embedded run manifest
(command, arguments, version, timestamp, input digests, seed, thread
cap).  Exit codes: 0 when the computation succeeded and every checked
property holds, 1 when a property fails or the census engines disagree,
2 for argument, input, precondition, or capacity errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import sys
from datetime import datetime, timezone

from . import __version__
from .census import (
    CensusResult,
    census_direct,
    census_ie,
    verify_census_inequality,
    verify_chain_set_overlap,
    verify_charge_multiplicity,
    verify_lym_bound,
)
from .constructions import erdos_family, middle_band_family, middle_band_family_low
from .families import (
    CapacityError,
    Family,
    PreconditionError,
    elements_of,
    family_from_jsonable,
    family_to_jsonable,
)
from .search import SearchCertificate, conjecture_report, f_exact, uniqueness_report
from .sperner import is_l_trace_k_sperner

VERIFY_CHOICES = ("overlap", "multiplicity", "census-balance", "lym", "all")


def _threads() -> int:
    raw = os.environ.get("TRACE_SPERNER_THREADS", "0")
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"TRACE_SPERNER_THREADS must be an integer, got {raw!r}") from None
    if value < 0:
        raise ValueError(f"TRACE_SPERNER_THREADS must be nonnegative, got {value}")
    return value


def _manifest(args: argparse.Namespace, inputs: dict[str, str]) -> dict:
    return {
        "command": args.command,
        "argv": args.raw_argv,
        "version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "inputs": inputs,
        "seed": args.seed,
        "threads": _threads(),
    }


def _read_json(path: str) -> tuple[dict, str]:
    with open(path, "rb") as fh:
        raw = fh.read()
    digest = hashlib.sha256(raw).hexdigest()
    return json.loads(raw.decode("utf-8")), digest


def _emit(doc: dict, out: str | None) -> None:
    text = json.dumps(doc, indent=2) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _sets_json(masks) -> list[list[int]]:
    return [list(elements_of(m)) for m in masks]


def _cmd_check(args: argparse.Namespace) -> int:
    doc, digest = _read_json(args.family)
    manifest = _manifest(args, {args.family: digest})
    if isinstance(doc, dict) and "witnesses" in doc:
        cert = SearchCertificate.from_jsonable(doc)
        l = args.l if args.l is not None else cert.l
        k = args.k if args.k is not None else cert.k
        results = []
        holds = True
        for idx, fam in enumerate(cert.witnesses):
            ok, violation = is_l_trace_k_sperner(fam, l, k)
            good = ok and len(fam) == cert.value
            holds = holds and good
            results.append(
                {
                    "index": idx,
                    "size": len(fam),
                    "holds": good,
                    "violation": None if violation is None else violation.describe(),
                }
            )
        out = {
            "manifest": manifest,
            "mode": "certificate",
            "n": cert.n,
            "k": k,
            "l": l,
            "value": cert.value,
            "witnesses_checked": len(results),
            "results": results,
            "holds": holds,
        }
        _emit(out, args.out)
        return 0 if holds else 1
    fam = family_from_jsonable(doc)
    if args.l is None or args.k is None:
        raise ValueError("checking a family file needs both --l and --k")
    ok, violation = is_l_trace_k_sperner(fam, args.l, args.k)
    out = {
        "manifest": manifest,
        "mode": "family",
        "n": fam.n,
        "members": len(fam),
        "k": args.k,
        "l": args.l,
        "holds": ok,
        "violation": None
        if violation is None
        else {
            "window": list(elements_of(violation.window)),
            "chain": _sets_json(violation.chain),
            "describe": violation.describe(),
        },
    }
    _emit(out, args.out)
    return 0 if ok else 1


def _cmd_construct(args: argparse.Namespace) -> int:
    if args.kind in ("band", "band-low"):
        if args.l is None:
            raise ValueError(f"--kind {args.kind} needs --l (omitted element count)")
        build = middle_band_family if args.kind == "band" else middle_band_family_low
        fam = build(args.n, args.k, args.l)
    else:
        fam = erdos_family(args.n, args.k, variant=args.variant)
    doc = family_to_jsonable(fam)
    doc["manifest"] = _manifest(args, {})
    _emit(doc, args.out)
    return 0


def _census_counts(result: CensusResult) -> dict:
    return {str(j): result.counts[j] for j in sorted(result.counts)}


def _cmd_census(args: argparse.Namespace) -> int:
    doc, digest = _read_json(args.family)
    fam = family_from_jsonable(doc)
    engines: dict[str, CensusResult] = {}
    if args.engine in ("direct", "both"):
        engines["direct"] = census_direct(fam, args.k)
    if args.engine in ("ie", "both"):
        engines["ie"] = census_ie(fam, args.k)
    primary = engines["direct"] if "direct" in engines else engines["ie"]
    checks = []
    total = sum(primary.counts.values())
    checks.append(
        {
            "name": "counts_total_is_factorial",
            "holds": total == math.factorial(fam.n),
            "witness": None if total == math.factorial(fam.n) else {"total": total},
        }
    )
    if len(engines) == 2:
        agree = engines["direct"].counts == engines["ie"].counts
        checks.append(
            {
                "name": "engines_agree",
                "holds": agree,
                "witness": None
                if agree
                else {
                    "direct": _census_counts(engines["direct"]),
                    "ie": _census_counts(engines["ie"]),
                },
            }
        )
    holds = all(c["holds"] for c in checks)
    out = {
        "manifest": _manifest(args, {args.family: digest}),
        "n": fam.n,
        "k": args.k,
        "engine": args.engine,
        "counts": _census_counts(primary),
        "c_minus": primary.c_minus,
        "c": primary.c,
        "c_plus": primary.c_plus,
        "checks": checks,
    }
    _emit(out, args.out)
    if args.csv is not None:
        lines = ["j,count"]
        lines.extend(f"{j},{primary.counts[j]}" for j in sorted(primary.counts))
        with open(args.csv, "w", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + "\n")
    return 0 if holds else 1


def _copy_json(copy) -> dict:
    return {
        "chain": _sets_json(copy.chain.sets),
        "kind": copy.chain.kind,
        "jump_pos": copy.chain.jump_pos,
        "x": copy.x,
        "z": copy.z,
        "order": None if copy.order is None else list(copy.order),
        "required": _sets_json(copy.required),
    }


def _verify_one(fam: Family, k: int, which: str) -> dict:
    if which == "overlap":
        rep = verify_chain_set_overlap(fam, k)
        witness = None
        if rep.witness is not None:
            copy, perm, meet = rep.witness
            witness = {"copy": _copy_json(copy), "perm": list(perm), "meet": meet}
        return {
            "name": "overlap",
            "holds": rep.holds,
            "witness": witness,
            "bound": rep.bound,
            "max_meet": rep.max_meet,
            "chains_checked": rep.chains_checked,
            "copies_checked": rep.copies_checked,
            "maximal_chains_checked": rep.maximal_chains_checked,
        }
    if which == "multiplicity":
        rep = verify_charge_multiplicity(fam, k)
        witness = None
        if rep.witness is not None:
            row = rep.witness
            witness = {
                "chain": _sets_json(row.chain.sets),
                "kind": row.chain.kind,
                "charged_count": row.charged_count,
                "charged_multiplicity": row.charged_multiplicity,
                "containing_multiplicity": row.containing_multiplicity,
            }
        return {
            "name": "multiplicity",
            "holds": rep.holds,
            "witness": witness,
            "rows": len(rep.rows),
            "max_charged_multiplicity": max(
                (r.charged_multiplicity for r in rep.rows), default=0
            ),
            "max_containing_multiplicity": max(
                (r.containing_multiplicity for r in rep.rows), default=0
            ),
        }
    if which == "census-balance":
        rep = verify_census_inequality(fam, k)
        return {
            "name": "census-balance",
            "holds": rep.holds,
            "witness": None
            if rep.holds
            else {"c_minus": rep.c_minus, "c_plus": rep.c_plus},
            "c_minus": rep.c_minus,
            "c": rep.c,
            "c_plus": rep.c_plus,
            "strict_expected": rep.strict_expected,
            "strict_holds": rep.strict_holds,
        }
    rep = verify_lym_bound(fam, k)
    return {
        "name": "lym",
        "holds": rep.holds,
        "witness": None
        if rep.holds
        else {"value": [rep.value.numerator, rep.value.denominator]},
        "value": [rep.value.numerator, rep.value.denominator],
        "bound": rep.bound,
    }


def _cmd_verify(args: argparse.Namespace) -> int:
    doc, digest = _read_json(args.family)
    fam = family_from_jsonable(doc)
    names = (
        ["overlap", "multiplicity", "census-balance", "lym"]
        if args.which == "all"
        else [args.which]
    )
    checks = [_verify_one(fam, args.k, name) for name in names]
    holds = all(c["holds"] for c in checks)
    out = {
        "manifest": _manifest(args, {args.family: digest}),
        "n": fam.n,
        "k": args.k,
        "which": args.which,
        "checks": checks,
        "holds": holds,
    }
    _emit(out, args.out)
    return 0 if holds else 1


def _cmd_search(args: argparse.Namespace) -> int:
    cert = f_exact(
        args.n,
        args.k,
        args.l,
        use_symmetry=not args.no_symmetry,
        collect_witnesses=not args.no_witnesses,
        seed_construction=args.seed_construction,
        time_budget=args.budget,
    )
    conjecture = conjecture_report(args.n, args.k, args.l, certificate=cert)
    uniqueness = None
    if args.uniqueness:
        if args.l != args.n - 1 or not 2 <= args.k <= args.n:
            raise ValueError(
                "--uniqueness needs l = n - 1 and 2 <= k <= n, "
                f"got n={args.n} k={args.k} l={args.l}"
            )
        uniqueness = uniqueness_report(args.n, args.k, certificate=cert).to_jsonable()
    out = {
        "manifest": _manifest(args, {}),
        "certificate": cert.to_jsonable(),
        "conjecture": conjecture.to_jsonable(),
        "uniqueness": uniqueness,
    }
    _emit(out, args.out)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trace-sperner",
        description="exact computations for trace-Sperner set families",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--out", help="write the JSON document here instead of stdout")
        p.add_argument("--seed", type=int, default=0, help="run seed recorded in the manifest")

    p = sub.add_parser("check", help="decide the trace property for a family or certificate")
    p.add_argument("family", help="family JSON file, or a search certificate")
    p.add_argument("--l", type=int, default=None, help="trace window size")
    p.add_argument("--k", type=int, default=None, help="longest allowed trace chain")
    common(p)
    p.set_defaults(fn=_cmd_check)

    p = sub.add_parser("construct", help="build a named family and print it as JSON")
    p.add_argument("--kind", required=True, choices=("band", "band-low", "erdos"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--l", type=int, default=None, help="omitted element count (band kinds)")
    p.add_argument("--variant", choices=("upper", "lower"), default="upper")
    common(p)
    p.set_defaults(fn=_cmd_construct)

    p = sub.add_parser("census", help="count maximal chains by family members met")
    p.add_argument("family")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--engine", choices=("direct", "ie", "both"), default="both")
    p.add_argument("--csv", default=None, help="also write the counts as CSV")
    common(p)
    p.set_defaults(fn=_cmd_census)

    p = sub.add_parser("verify", help="run the chain-counting verifications")
    p.add_argument("family")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--which", choices=VERIFY_CHOICES, default="all")
    common(p)
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("search", help="exact maximum family size with certificate")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--l", type=int, required=True, help="trace window size")
    p.add_argument("--budget", type=float, default=None, help="time budget in seconds")
    p.add_argument(
        "--seed-construction",
        choices=("greedy", "band", "none"),
        default="greedy",
        help="how to seed the initial lower bound",
    )
    p.add_argument("--no-symmetry", action="store_true")
    p.add_argument("--no-witnesses", action="store_true")
    p.add_argument("--uniqueness", action="store_true", help="compare witnesses to the bands")
    common(p)
    p.set_defaults(fn=_cmd_search)
    return parser


def main(argv: list[str] | None = None) -> int:
    raw = list(sys.argv[1:]) if argv is None else list(argv)
    parser = _build_parser()
    args = parser.parse_args(raw)
    args.raw_argv = raw
    try:
        return args.fn(args)
    except (ValueError, PreconditionError, CapacityError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
