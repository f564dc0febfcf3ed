"""Batch command line front end.

    linmonoid dims       --monoid M.json [--in idempotents.json]
    linmonoid classify   --monoid M.json --in pairs.json
    linmonoid sample     --monoid M.json --in requests.json
    linmonoid regularity --monoid M.json --trials 200
    linmonoid verify     [--monoid M.json] --trials 20

``--monoid`` takes a JSON file or a shorthand ``full:N`` / ``blocks:1,2``.
A table goes to stdout; ``--out`` receives the JSON document.  Exit status:
0 all verdicts pass, 1 mathematical failure, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
from pathlib import Path

from .green import classify_pair, l_related, r_related, h_related, d_related, sample_class
from .idempotent import idempotent_from_json, standard_idempotents
from .lie import dimension_report
from .linalg import matrix_from_json, matrix_to_json
from .monoid import (
    MonoidError,
    MonoidFamily,
    NotInMonoidError,
    make_block_diagonal,
    make_full,
    monoid_from_json,
    monoid_to_json,
    spot_check_regularity,
)
from .properties import run_suite

log = logging.getLogger("linmonoid")

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

COMMANDS = ("dims", "classify", "verify", "sample", "regularity")


class InputError(Exception):
    pass


def substream(seed: int, command: str, index: int = 0) -> random.Random:
    """Independent RNG per (seed, command, input index); string seeding is stable across runs."""
    return random.Random(f"{seed}:{command}:{index}")


def load_monoid(source: str) -> MonoidFamily:
    path = Path(source)
    try:
        if path.exists():
            return monoid_from_json(json.loads(path.read_text()))
        kind, _, arg = source.partition(":")
        if kind == "full" and arg:
            return make_full(int(arg))
        if kind == "blocks" and arg:
            return make_block_diagonal([int(x) for x in arg.split(",")])
    except (MonoidError, ValueError, KeyError, TypeError) as exc:
        raise InputError(f"invalid monoid {source!r}: {exc}") from exc
    raise InputError(f"monoid {source!r} is neither a file nor full:N / blocks:a,b,...")


def load_input(path: str | None):
    if path is None:
        return None
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read input {path!r}: {exc}") from exc


def _unwrap(data, key):
    if isinstance(data, dict):
        return data.get(key, [])
    return data


def _matrix(obj, where: str):
    try:
        return matrix_from_json(obj)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise InputError(f"{where}: {exc}") from exc


# -- commands ----------------------------------------------------------------


def cmd_dims(monoid: MonoidFamily, data, args) -> tuple[dict, list[str], int]:
    if data is None:
        points = standard_idempotents(monoid)
    else:
        points = []
        for i, obj in enumerate(_unwrap(data, "idempotents")):
            try:
                points.append(idempotent_from_json(obj))
            except (ValueError, TypeError, KeyError, ZeroDivisionError) as exc:
                raise InputError(f"idempotent #{i}: {exc}") from exc
    reports = []
    for i, p in enumerate(points):
        if p.matrix not in monoid:
            raise InputError(f"idempotent #{i} is not in the monoid")
        reports.append(dimension_report(monoid, p))
    header = f"{'#':>3} {'rank':>4} " + " ".join(
        f"{k:>7}" for k in ("dim_G", "dim_C", "dim_Cl", "dim_Cr", "dim_E_D", "dim_E_L", "dim_E_R", "dim_Gl", "dim_Gr")
    ) + "  dual  add"
    lines = [header]
    for i, r in enumerate(reports):
        vals = " ".join(f"{v:>7}" for v in r.fields().values())
        lines.append(f"{i:>3} {r.idempotent.rank:>4} {vals}  {_yn(r.duality_holds):>4} {_yn(r.additivity_holds):>4}")
    ok = all(r.duality_holds and r.additivity_holds for r in reports)
    doc = {"reports": [r.to_json() for r in reports], "all_pass": ok}
    return doc, lines, EXIT_OK if ok else EXIT_FAIL


def cmd_classify(monoid: MonoidFamily, data, args) -> tuple[dict, list[str], int]:
    if data is None:
        raise InputError("classify needs --in with a list of [a, b] pairs")
    pairs = _unwrap(data, "pairs")
    results = []
    lines = [f"{'#':>3}  L  R  H  D  D(M_n)"]
    status = EXIT_OK
    for i, pair in enumerate(pairs):
        if not (isinstance(pair, list) and len(pair) == 2):
            raise InputError(f"pair #{i}: expected [a, b]")
        a = _matrix(pair[0], f"pair #{i} a")
        b = _matrix(pair[1], f"pair #{i} b")
        try:
            v = classify_pair(monoid, a, b, trials=args.trials, seed=substream(args.seed, "classify", i))
        except (NotInMonoidError, ValueError) as exc:
            results.append({"index": i, "error": str(exc)})
            lines.append(f"{i:>3}  error: {exc}".splitlines()[0])
            status = EXIT_INPUT
            continue
        entry = {"index": i, **{k: v[k] for k in ("L", "R", "H", "D", "D_ambient")}}
        entry["witness"] = matrix_to_json(v["witness"]) if v["witness"] is not None else None
        entry["witness_space_dim"] = v["solution_dim"]
        results.append(entry)
        lines.append(
            f"{i:>3}  " + "  ".join(_tf(v[k]) for k in ("L", "R", "H", "D")) + f"  {_tf(v['D_ambient'])}"
        )
    return {"verdicts": results}, lines, status


def cmd_sample(monoid: MonoidFamily, data, args) -> tuple[dict, list[str], int]:
    if data is None:
        raise InputError("sample needs --in with {element, relation, count} requests")
    requests = data if isinstance(data, list) else [data]
    deciders = {"L": l_related, "R": r_related, "H": h_related}
    out = []
    lines = []
    status = EXIT_OK
    for i, req in enumerate(requests):
        try:
            a = _matrix(req["element"], f"request #{i}")
            relation = req.get("relation", "L")
            count = int(req.get("count", 10))
        except (KeyError, TypeError, AttributeError) as exc:
            raise InputError(f"request #{i}: {exc}") from exc
        if a not in monoid:
            raise InputError(f"request #{i}: element is not in the monoid")
        if relation not in ("L", "R", "H", "D"):
            raise InputError(f"request #{i}: unknown relation {relation!r}")
        rng = substream(args.seed, "sample", i)
        samples = sample_class(monoid, a, relation, count, rng)
        checks = []
        for s in samples:
            if relation == "D":
                checks.append(d_related(monoid, a, s.matrix, trials=args.trials, seed=rng))
            else:
                checks.append(deciders[relation](monoid, a, s.matrix))
        if not all(checks):
            status = EXIT_FAIL
        out.append(
            {
                "index": i,
                "relation": relation,
                "samples": [{"matrix": matrix_to_json(s.matrix), "verified": c} for s, c in zip(samples, checks)],
            }
        )
        lines.append(f"request {i}: {relation}-class, {len(samples)} samples, {sum(checks)} verified")
    return {"samples": out}, lines, status


def cmd_regularity(monoid: MonoidFamily, data, args) -> tuple[dict, list[str], int]:
    report = spot_check_regularity(monoid, args.trials, substream(args.seed, "regularity"))
    lines = [f"{report.regular}/{report.trials} sampled elements regular ({100 * report.fraction:.1f}%)"]
    status = EXIT_OK if report.regular == report.trials else EXIT_FAIL
    return report.to_json(), lines, status


DEFAULT_VERIFY_FAMILIES = ("full:2", "full:3", "blocks:1,2", "blocks:2,2")


def cmd_verify(monoid: MonoidFamily | None, data, args) -> tuple[dict, list[str], int]:
    families = [monoid] if monoid is not None else [load_monoid(s) for s in DEFAULT_VERIFY_FAMILIES]
    if args.trials == 0:
        log.warning("trials=0: every property passes vacuously")
    suites = []
    lines = []
    ok = True
    for idx, fam in enumerate(families):
        results = run_suite(fam, args.trials, substream(args.seed, "verify", idx))
        suites.append({"monoid": monoid_to_json(fam), "properties": results})
        for r in results:
            ok &= r["passed"]
            lines.append(f"{fam!r:<48} {r['property']:<30} {'PASS' if r['passed'] else 'FAIL'}")
            if not r["passed"]:
                lines.append(f"    {r['detail']}".splitlines()[0])
    return {"suites": suites, "all_pass": ok, "vacuous": args.trials == 0}, lines, EXIT_OK if ok else EXIT_FAIL


HANDLERS = {
    "dims": cmd_dims,
    "classify": cmd_classify,
    "sample": cmd_sample,
    "regularity": cmd_regularity,
    "verify": cmd_verify,
}


def _yn(b: bool) -> str:
    return "yes" if b else "NO"


def _tf(b: bool) -> str:
    return "T" if b else "F"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="linmonoid",
        description="Green's relations and idempotent manifold dimensions in linear matrix monoids.",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--monoid", help="monoid JSON file, or full:N / blocks:a,b,...")
    parser.add_argument("--in", dest="input", help="input JSON file")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--trials", type=int, default=None)
    parser.add_argument("--out", help="write the JSON result here")
    parser.add_argument("--json", action="store_true", help="print JSON to stdout instead of the table")
    return parser


DEFAULT_TRIALS = {"dims": 0, "classify": 16, "sample": 16, "regularity": 100, "verify": 10}


def main(argv=None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    if args.trials is None:
        args.trials = DEFAULT_TRIALS[args.command]
    if args.trials < 0:
        print("error: --trials must be non-negative", file=sys.stderr)
        return EXIT_INPUT
    try:
        monoid = load_monoid(args.monoid) if args.monoid else None
        if monoid is None and args.command != "verify":
            raise InputError(f"{args.command} needs --monoid")
        data = load_input(args.input)
        doc, lines, status = HANDLERS[args.command](monoid, data, args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    result = {"command": args.command, "seed": args.seed, "trials": args.trials}
    if monoid is not None:
        result["monoid"] = monoid_to_json(monoid)
    result.update(doc)
    text = json.dumps(result, indent=2, sort_keys=False)
    if args.out:
        Path(args.out).write_text(text + "\n")
    if args.json:
        print(text)
    else:
        print("\n".join(lines))
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
