"""Command-line interface.

Exit status: 0 success, 1 verification failure, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .approximation import ApproximationSpace
from .builtin import example_space
from .errors import RoughMatroidError
from .lattice import FiniteLattice
from .matroid import LatticeMatroid
from .relation import BinaryRelation
from .relfile import format_relation, parse_relation
from .sets import SetFamily, Subset, enumerate_bits
from .verification import (
    DEFAULT_DENSITIES,
    DESCRIPTIONS,
    PROPOSITION_IDS,
    Instance,
    derive_closed_sets,
    run_campaign,
    summarize,
    verify_all,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def jsonable(obj):
    if isinstance(obj, Subset):
        return obj.labels()
    if isinstance(obj, SetFamily):
        return obj.label_lists()
    if isinstance(obj, BinaryRelation):
        return relation_json(obj)
    if isinstance(obj, (list, tuple)):
        return [jsonable(x) for x in obj]
    if isinstance(obj, dict):
        return {k: jsonable(v) for k, v in obj.items()}
    return obj


def relation_json(rel: BinaryRelation) -> dict:
    labels = rel.universe.labels
    return {
        "universe": list(labels),
        "pairs": [[labels[x], labels[y]] for x, y in rel.pairs()],
        "matrix": [[int(v) for v in row] for row in rel.matrix()],
    }


def _text_value(obj) -> str:
    if isinstance(obj, (list, tuple)):
        return "(" + ", ".join(_text_value(x) for x in obj) + ")"
    return str(obj)


def _family_text(fam: SetFamily) -> str:
    return str(fam)


def _dump_json(data) -> str:
    return json.dumps(jsonable(data), indent=2, ensure_ascii=False) + "\n"


def _emit(args, text: str | None = None, data=None, dot: str | None = None) -> None:
    fmt = getattr(args, "format", "text")
    if fmt == "json":
        out = _dump_json(data)
    elif fmt == "dot":
        out = dot
    else:
        out = text if text.endswith("\n") else text + "\n"
    target = getattr(args, "out", None)
    if target:
        Path(target).write_text(out, encoding="utf-8")
    else:
        sys.stdout.write(out)


def _load(args) -> ApproximationSpace:
    path = Path(args.relation)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise RoughMatroidError(f"cannot read {path}: {exc.strerror}") from None
    return parse_relation(text, source=str(path))


# -- subcommands --------------------------------------------------------

def cmd_check(args) -> int:
    space = _load(args)
    rel = space.relation
    flags = {
        "serial": rel.is_serial(),
        "transitive": rel.is_transitive(),
        "reflexive": rel.is_reflexive(),
        "symmetric": rel.is_symmetric(),
    }
    lines = ["universe: " + " ".join(space.universe.labels)]
    lines += [f"{k}: {str(v).lower()}" for k, v in flags.items()]
    _emit(args, "\n".join(lines), {"universe": list(space.universe.labels), **flags})
    return EXIT_OK


def cmd_regular(args) -> int:
    space = _load(args)
    reg = space.enumerate_regular_sets()
    text = f"Reg(U, R) = {_family_text(reg)}\n{len(reg)} regular sets"
    _emit(args, text, {"universe": list(space.universe.labels), "regular_sets": reg})
    return EXIT_OK


def lattice_json(lat: FiniteLattice) -> dict:
    return {
        "elements": lat.elements,
        "hasse": [[a, b] for a, b in lat.hasse],
        "atoms": lat.atoms(),
        "heights": [{"set": e, "height": h} for e, h in zip(lat.elements, lat.heights)],
        "heights_well_defined": lat.heights_well_defined,
        "modular": lat.is_modular(),
        "distributive": lat.is_distributive(),
        "semimodular": lat.is_semimodular(),
    }


def lattice_text(lat: FiniteLattice) -> str:
    lines = ["elements (height):"]
    lines += [f"  {e}  h={h}" for e, h in zip(lat.elements, lat.heights)]
    lines.append("hasse edges:")
    lines += [f"  {a} < {b}" for a, b in lat.hasse]
    lines.append(f"atoms: {_family_text(lat.atoms())}")
    lines.append(f"modular: {str(lat.is_modular()).lower()}")
    lines.append(f"distributive: {str(lat.is_distributive()).lower()}")
    lines.append(f"semimodular: {str(lat.is_semimodular()).lower()}")
    if not lat.heights_well_defined:
        lines.append("warning: maximal chains differ in length; heights are longest-chain lengths")
    return "\n".join(lines)


def cmd_lattice(args) -> int:
    space = _load(args)
    lat = space.regular_lattice()
    _emit(args, lattice_text(lat), {"universe": list(space.universe.labels), **lattice_json(lat)}, lat.to_dot("reg"))
    return EXIT_OK


def cmd_matroid(args) -> int:
    space = _load(args)
    m = LatticeMatroid.from_space(space)
    u = space.universe
    indep = m.enumerate_independent_sets()
    ranks = [(Subset(u, b), m.rank_bits(b)) for b in enumerate_bits(u.size)]
    rep = m.verify_axioms()
    axioms = {
        "I1": rep.i1,
        "I2": rep.i2,
        "I3": rep.i3,
        "counterexamples": [["I2", *p] for p in rep.i2_failures] + [["I3", *t] for t in rep.i3_failures],
    }
    data = {
        "universe": list(u.labels),
        "independent_sets": indep,
        "bases": m.bases(),
        "circuits": m.circuits(),
        "rank": [{"set": x, "rank": r} for x, r in ranks],
        "axioms": axioms,
    }
    lines = [
        f"independent sets ({len(indep)}): {_family_text(indep)}",
        f"bases: {_family_text(m.bases())}",
        f"circuits: {_family_text(m.circuits())}",
        "rank:",
    ]
    lines += [f"  r({x}) = {r}" for x, r in ranks]
    lines.append("axioms: " + ", ".join(f"{k} {'pass' if axioms[k] else 'fail'}" for k in ("I1", "I2", "I3")))
    for ce in axioms["counterexamples"]:
        lines.append(f"  counterexample {_text_value(ce)}")
    _emit(args, "\n".join(lines), data)
    return EXIT_OK if rep.passed else EXIT_FAIL


def derivation_json(d) -> dict:
    return {
        "step1": d.step1,
        "step2": d.step2,
        "excluded": d.excluded,
        "candidate": d.candidate,
    }


def cmd_closed(args) -> int:
    space = _load(args)
    inst = Instance(space)
    d = derive_closed_sets(inst.lattice, inst.matroid)
    data = {
        "universe": list(space.universe.labels),
        "oracle": d.oracle,
        "derivation": derivation_json(d),
        "discrepancy": d.discrepancy,
    }
    text = "\n".join([
        f"closed sets (brute force): {_family_text(d.oracle)}",
        f"step 1 (singletons outside atoms): {_family_text(d.step1)}",
        f"step 2 (regular sets): {_family_text(d.step2)}",
        f"step 3 (excluded sandwiched sets): {_family_text(d.excluded)}",
        f"closed sets (three-step): {_family_text(d.candidate)}",
        f"discrepancy: {_family_text(d.discrepancy) if len(d.discrepancy) else 'none'}",
    ])
    _emit(args, text, data, inst.closed_lattice.to_dot("closed"))
    return EXIT_OK if not len(d.discrepancy) else EXIT_FAIL


def report_json(rep, with_relation: bool = False) -> dict:
    out = {
        "id": rep.id,
        "description": DESCRIPTIONS[rep.id],
        "verdict": rep.verdict,
        "counterexamples": rep.counterexamples,
        "instance": rep.instance,
    }
    if with_relation or not rep.passed:
        out["relation"] = rep.relation
    return out


def _parse_size(text: str) -> tuple[int, int]:
    for sep in ("..", "-", ":"):
        if sep in text:
            lo, hi = text.split(sep, 1)
            return int(lo), int(hi)
    n = int(text)
    return n, n


def cmd_verify(args) -> int:
    if args.relation:
        space = _load(args)
        inst = Instance(space)
        reports = verify_all(inst)
        d = derive_closed_sets(inst.lattice, inst.matroid)
        data = {
            "universe": list(space.universe.labels),
            "instance": space.relation.fingerprint(),
            "reports": [report_json(r) for r in reports],
            "derivation": {**derivation_json(d), "oracle": d.oracle, "discrepancy": d.discrepancy,
                           "candidate_subset_of_oracle": not len(d.spurious)},
        }
        lines = [f"instance {space.relation.fingerprint()}"]
        for r in reports:
            lines.append(f"{r.id:5} {r.verdict:4}  {DESCRIPTIONS[r.id]}")
            lines += [f"      counterexample {_text_value(ce)}" for ce in r.counterexamples[:10]]
        lines.append(_derivation_line(d))
        _emit(args, "\n".join(lines), data)
        ok = all(r.passed for r in reports) and not len(d.spurious)
        return EXIT_OK if ok else EXIT_FAIL

    if args.random is None or args.size is None or args.seed is None:
        raise _Usage("verify needs --relation FILE, or --random COUNT --size N --seed S")
    sizes = _parse_size(args.size)
    densities = (args.density,) if args.density is not None else DEFAULT_DENSITIES
    results = run_campaign(args.random, sizes, densities, args.seed, workers=args.workers)
    summary = summarize(results)
    samples = []
    for res in results:
        entry = {
            "index": res.index,
            "size": res.size,
            "density": res.density,
            "seed": res.seed,
            "instance": res.relation.fingerprint(),
            "reports": [report_json(r) for r in res.reports],
            "discrepancy": res.derivation.discrepancy,
            "candidate_subset_of_oracle": not len(res.derivation.spurious),
        }
        if not res.passed or len(res.derivation.discrepancy):
            entry["relation"] = res.relation
        samples.append(entry)
    data = {
        "campaign": {"count": args.random, "sizes": list(sizes), "densities": list(densities), "seed": args.seed},
        "summary": summary,
        "samples": samples,
    }
    lines = [
        f"campaign: {args.random} samples, sizes {sizes[0]}..{sizes[1]}, "
        f"densities {','.join(str(d) for d in densities)}, seed {args.seed}"
    ]
    for pid in PROPOSITION_IDS:
        counts = summary["propositions"].get(pid, {"pass": 0, "fail": 0})
        verdict = "pass" if counts["fail"] == 0 else "FAIL"
        lines.append(f"{pid:5} {verdict:4}  {counts['pass']}/{counts['pass'] + counts['fail']}")
    lines.append(f"failed samples: {summary['failed_samples']}")
    lines.append(
        f"three-step derivation: {summary['spurious_candidates']} non-closed candidates; "
        f"{summary['discrepancy_instances']} instances where it misses closed sets "
        f"({summary['missing_closed_sets']} sets in total)"
    )
    for res in results:
        if res.passed and not len(res.derivation.discrepancy):
            continue
        lines.append(f"sample {res.index} (n={res.size}, density={res.density}, seed={res.seed}):")
        for r in res.reports:
            if not r.passed:
                lines.append(f"  {r.id} fail: {_text_value(r.counterexamples[0])}")
        if len(res.derivation.missing):
            lines.append(f"  missed closed sets: {_family_text(res.derivation.missing)}")
        if len(res.derivation.spurious):
            lines.append(f"  non-closed candidates: {_family_text(res.derivation.spurious)}")
        lines += ["    " + ln for ln in format_relation(res.relation).splitlines()]
    _emit(args, "\n".join(lines), data)
    return EXIT_OK if summary["failed_samples"] == 0 else EXIT_FAIL


def _derivation_line(d) -> str:
    subset = "yes" if not len(d.spurious) else "NO"
    disc = _family_text(d.discrepancy) if len(d.discrepancy) else "none"
    return f"three-step derivation: candidate within oracle: {subset}; discrepancy: {disc}"


def cmd_example(args) -> int:
    space = example_space()
    inst = Instance(space)
    u = space.universe
    which = args.which
    data = {"universe": list(u.labels)}
    lines = []
    if which in (None, "3.5"):
        reg = space.enumerate_regular_sets()
        indep = inst.matroid.enumerate_independent_sets()
        data["example_3.5"] = {
            "relation": space.relation,
            "neighborhoods": {u.labels[x]: nb for x, nb in enumerate(space.neighborhoods)},
            "regular_sets": reg,
            "hasse": [[a, b] for a, b in inst.lattice.hasse],
            "independent_sets": indep,
        }
        lines += [
            "Example 3.5",
            "R = {" + ", ".join(f"({u.labels[x]}, {u.labels[y]})" for x, y in space.relation.pairs()) + "}",
        ]
        lines += [f"R_s({u.labels[x]}) = {nb}" for x, nb in enumerate(space.neighborhoods)]
        lines.append(f"Reg(U, R) = {_family_text(reg)}")
        lines.append(f"I(Reg(U, R); h) = {_family_text(indep)}")
    if which in (None, "4.8"):
        d = derive_closed_sets(inst.lattice, inst.matroid)
        data["example_4.8"] = {
            "closed_sets": d.oracle,
            "derivation": derivation_json(d),
            "discrepancy": d.discrepancy,
            "hasse": [[a, b] for a, b in inst.closed_lattice.hasse],
        }
        if lines:
            lines.append("")
        lines += [
            "Example 4.8",
            f"step 1: {_family_text(d.step1)}",
            f"step 2: {_family_text(d.step2)}",
            f"L(M(Reg(U, R))) = {_family_text(d.oracle)}",
            f"discrepancy with brute force: {_family_text(d.discrepancy) if len(d.discrepancy) else 'none'}",
        ]
    _emit(args, "\n".join(lines), data)
    return EXIT_OK


class _Usage(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="roughmatroid",
        description="Regular sets of a serial transitive relation, their lattice and induced matroid.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def with_relation(sp, required=True):
        sp.add_argument("--relation", required=required, metavar="FILE", help="relation file")

    sp = sub.add_parser("check", help="seriality/transitivity/reflexivity/symmetry")
    with_relation(sp)
    sp.add_argument("--format", choices=["text", "json"], default="text")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("regular", help="list the regular sets")
    with_relation(sp)
    sp.add_argument("--format", choices=["text", "json"], default="text")
    sp.set_defaults(func=cmd_regular)

    sp = sub.add_parser("lattice", help="lattice of regular sets")
    with_relation(sp)
    sp.add_argument("--format", choices=["text", "json", "dot"], default="text")
    sp.add_argument("--out", metavar="FILE")
    sp.set_defaults(func=cmd_lattice)

    sp = sub.add_parser("matroid", help="induced matroid")
    with_relation(sp)
    sp.add_argument("--format", choices=["text", "json"], default="text")
    sp.set_defaults(func=cmd_matroid)

    sp = sub.add_parser("closed", help="closed sets: brute force vs three-step derivation")
    with_relation(sp)
    sp.add_argument("--format", choices=["text", "json", "dot"], default="text")
    sp.add_argument("--out", metavar="FILE")
    sp.set_defaults(func=cmd_closed)

    sp = sub.add_parser("verify", help="check every proposition on one relation or a random campaign")
    with_relation(sp, required=False)
    sp.add_argument("--random", type=int, metavar="COUNT")
    sp.add_argument("--size", metavar="N|LO..HI")
    sp.add_argument("--density", type=float)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--format", choices=["text", "json"], default="text")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("example", help="reproduce the built-in worked example")
    sp.add_argument("--which", choices=["3.5", "4.8"])
    sp.add_argument("--format", choices=["text", "json"], default="text")
    sp.set_defaults(func=cmd_example)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "verify" and args.relation and args.random is not None:
            raise _Usage("--relation and --random are mutually exclusive")
        return args.func(args)
    except (_Usage, RoughMatroidError, ValueError) as exc:
        print(f"roughmatroid {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
