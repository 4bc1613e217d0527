"""Command line front door for the experiment pipelines.

Subcommands generate structures, run colorings and witness experiments,
self-test the measure algebra and verify previously written reports.
Reports are canonical JSON (sorted keys, exact rationals); a fixed argv
and seed reproduce the bytes exactly.  Exit codes: 0 all certifications
hold, 2 a certification failed (the report is still written), 1 usage or
input error.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .coloring import (brute_best, greedy_coloring, guarantee_value,
                       weight_of)
from .logic import FragmentError, ParseError, parse_phi
from .measures import SELFTEST_CHECKS, measure_algebra_selftest
from .serialize import (FormatError, atomic_write_text, canonical_dumps,
                        digest, load_json, load_structure, load_weighted,
                        parse_rational, parse_structure_spec,
                        rational_from_json, rational_to_json,
                        structure_digest, structure_to_json, weighted_to_json)
from .structures import (Feq2Structure, FreenessViolation, Hypergraph,
                         alpha_s, build_tp2_grid, is_free, is_maximal_free)
from .witnesses import (REQUIRED_INPUTS, Certified, EmbeddingNotFound,
                        GridTooSmall, PreconditionFailed, WitnessReport,
                        adversary_witness, fam_witness, order_witness,
                        recompute_certified, sat_probe, tp2_witness)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CERT = 2


class _Parser(argparse.ArgumentParser):
    """argparse maps usage errors to exit code 2 by default; this CLI
    reserves 2 for failed certifications, so remap to 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


@dataclass(frozen=True)
class RunConfig:
    """Validated invocation parameters, echoed verbatim into the report."""

    subcommand: str
    options: dict = field(default_factory=dict)
    threads: Optional[int] = None

    def to_json_dict(self) -> dict:
        out = {"subcommand": self.subcommand}
        out.update(self.options)
        if self.threads is not None:
            out["threads"] = self.threads
        return out


def _config(subcommand: str, threads: Optional[int], **options) -> RunConfig:
    kept = {key: value for key, value in options.items() if value is not None}
    return RunConfig(subcommand, kept, threads)


def _threads_from_env() -> Optional[int]:
    # accepted and echoed for reproducibility; all pipelines currently run
    # on one worker, which trivially honours any cap
    raw = os.environ.get("KEISLER_LAB_THREADS")
    if raw is None:
        return None
    try:
        value = int(raw)
    except ValueError:
        raise FormatError(
            f"KEISLER_LAB_THREADS must be an integer, got {raw!r}") from None
    if value < 1:
        raise FormatError("KEISLER_LAB_THREADS must be positive")
    return value


def _flag(name: str, ok: bool) -> Certified:
    return Certified(name, "==", Fraction(1 if ok else 0), Fraction(1))


def _emit(text: str, output: Optional[str]) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        atomic_write_text(output, text)


def _envelope(config: RunConfig, report: WitnessReport) -> str:
    return canonical_dumps({"config": config.to_json_dict(),
                            **report.to_json_dict()})


def _exit_for(report: WitnessReport) -> int:
    return EXIT_OK if report.all_hold else EXIT_CERT


def _source_entry(spec: str, structure) -> dict:
    return {"kind": structure_to_json(structure)["kind"],
            "digest": structure_digest(structure),
            "source": spec}


def _run_witness(config: RunConfig, output: Optional[str], theorem: str,
                 sources: dict, builder) -> int:
    """Run a witness builder, mapping PreconditionFailed to a written
    report with the failed inequality and exit code 2."""
    try:
        report = builder()
    except PreconditionFailed as exc:
        payload = {"precondition_failed": exc.name, "op": exc.op,
                   "lhs": rational_to_json(exc.lhs),
                   "rhs": rational_to_json(exc.rhs)}
        report = WitnessReport(
            theorem=theorem,
            inputs={name: _source_entry(spec, obj)
                    for name, (spec, obj) in sources.items()},
            witness=payload,
            certified=(Certified(exc.name, exc.op, exc.lhs, exc.rhs),),
            log=(str(exc),))
        _emit(_envelope(config, report), output)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CERT
    for name, (spec, _) in sources.items():
        report.inputs[name]["source"] = spec
    _emit(_envelope(config, report), output)
    return _exit_for(report)


# ---------------------------------------------------------------------------
# gen
# ---------------------------------------------------------------------------

def _gen_certified(spec: str, structure, recorded_digest: str,
                   embedded: dict) -> list[Certified]:
    certs = [
        _flag("digest-match", structure_digest(structure) == recorded_digest),
        _flag("embedded-match", digest(embedded) == recorded_digest),
    ]
    head = spec.split(":", 1)[0]
    if head == "gen":
        s = int(spec.split(":")[3])
        certs.append(_flag("free", is_free(structure, s)))
        certs.append(_flag("maximal-free", is_maximal_free(structure, s)))
    elif head == "searchalpha":
        fields = spec.split(":")
        s, target = int(fields[2]), int(fields[3])
        certs.append(_flag("free", is_free(structure, s)))
        certs.append(Certified("alpha-target", "<=",
                               Fraction(alpha_s(structure, s).value),
                               Fraction(target)))
    return certs


def _describe(structure) -> str:
    j = structure_to_json(structure)
    if j["kind"] == "hypergraph":
        return (f"hypergraph with n={j['n']}, r={j['r']} "
                f"and {len(j['edges'])} edges")
    if j["kind"] == "tournament":
        return f"tournament on {j['n']} vertices"
    return (f"parameterized equivalence with {j['objects']} objects "
            f"and {j['parameters']} parameters")


def _cmd_gen(args, threads) -> int:
    structure = parse_structure_spec(args.spec)
    sjson = structure_to_json(structure)
    sdigest = digest(sjson)
    config = _config("gen", threads, spec=args.spec, output=args.output,
                     structure_out=args.structure_out)
    report = WitnessReport(
        theorem="gen",
        inputs={},
        witness={"spec": args.spec, "digest": sdigest, "structure": sjson},
        certified=tuple(_gen_certified(args.spec, structure, sdigest, sjson)),
        log=(f"resolved {args.spec} to a {_describe(structure)}",))
    if args.structure_out is not None:
        atomic_write_text(args.structure_out, canonical_dumps(sjson))
    _emit(_envelope(config, report), args.output)
    return _exit_for(report)


def _verify_gen(witness: dict, inputs: dict) -> list[Certified]:
    structure = parse_structure_spec(witness["spec"])
    return _gen_certified(witness["spec"], structure, witness["digest"],
                          witness["structure"])


# ---------------------------------------------------------------------------
# color
# ---------------------------------------------------------------------------

def _color_certified(wh, coloring, with_brute: bool):
    weight = weight_of(wh, coloring)
    bound = guarantee_value(wh)
    certs = [Certified("greedy-bound", ">=", weight, bound)]
    brute_payload = None
    if with_brute:
        result = brute_best(wh)
        brute_payload = {
            "best_coloring": list(result.best_coloring),
            "best_weight": rational_to_json(result.best_weight),
            "average_weight": rational_to_json(result.average_weight),
            "colorings": result.colorings,
        }
        certs.append(Certified("brute-ge-greedy", ">=",
                               result.best_weight, weight))
        certs.append(Certified("average-identity", "==",
                               result.average_weight, bound))
    return certs, weight, bound, brute_payload


def _cmd_color(args, threads) -> int:
    wh = load_weighted(args.input)
    coloring = greedy_coloring(wh)
    certs, weight, bound, brute_payload = _color_certified(
        wh, coloring, args.brute)
    config = _config("color", threads, input=args.input, brute=args.brute,
                     output=args.output)
    report = WitnessReport(
        theorem="coloring-bound",
        inputs={"weighted": {"kind": "weighted-hypergraph",
                             "digest": digest(weighted_to_json(wh)),
                             "source": args.input}},
        witness={"coloring": list(coloring),
                 "weight": rational_to_json(weight),
                 "guarantee": rational_to_json(bound),
                 "total_weight": rational_to_json(wh.total_weight),
                 "brute": brute_payload},
        certified=tuple(certs),
        log=(f"greedy colouring splits weight {weight} "
             f"of {wh.total_weight}",
             f"guarantee (r!/r^r)*w(V) = {bound}",))
    _emit(_envelope(config, report), args.output)
    return _exit_for(report)


def _verify_color(witness: dict, inputs: dict) -> list[Certified]:
    wh = inputs["weighted"]
    coloring = tuple(int(c) for c in witness["coloring"])
    certs, _, _, _ = _color_certified(wh, coloring,
                                      witness.get("brute") is not None)
    return certs


# ---------------------------------------------------------------------------
# check-measures
# ---------------------------------------------------------------------------

def _measures_certified(seed: int, cases: int):
    outcome = measure_algebra_selftest(seed, cases)
    certs = [Certified(check, "==", Fraction(outcome.passed[check]),
                       Fraction(cases))
             for check in SELFTEST_CHECKS]
    return certs, outcome


def _cmd_check_measures(args, threads) -> int:
    if args.cases < 1:
        raise FormatError("--cases must be positive")
    certs, outcome = _measures_certified(args.seed, args.cases)
    config = _config("check-measures", threads, seed=args.seed,
                     cases=args.cases, format=args.format,
                     output=args.output)
    if args.format == "csv":
        lines = ["check,passed,cases"]
        lines += [f"{check},{outcome.passed[check]},{args.cases}"
                  for check in SELFTEST_CHECKS]
        _emit("\n".join(lines) + "\n", args.output)
        return EXIT_OK if all(c.holds for c in certs) else EXIT_CERT
    report = WitnessReport(
        theorem="measure-algebra",
        inputs={},
        witness={"seed": args.seed, "cases": args.cases,
                 "passed": dict(outcome.passed)},
        certified=tuple(certs),
        log=(f"ran {args.cases} seeded random measure cases",))
    _emit(_envelope(config, report), args.output)
    return _exit_for(report)


def _verify_measures(witness: dict, inputs: dict) -> list[Certified]:
    certs, _ = _measures_certified(int(witness["seed"]),
                                   int(witness["cases"]))
    return certs


# ---------------------------------------------------------------------------
# witness subcommands
# ---------------------------------------------------------------------------

def _cmd_fam(args, threads) -> int:
    try:
        phi = parse_phi(args.phi)
    except ParseError as exc:
        raise FormatError(f"--phi: {exc}") from None
    epsilon = parse_rational(args.epsilon)
    graph = parse_structure_spec(args.graph)
    ambient = parse_structure_spec(args.ambient)
    if not isinstance(graph, Hypergraph) or not isinstance(ambient, Hypergraph):
        raise FormatError("fam needs hypergraph inputs")
    config = _config("fam", threads, phi=args.phi, epsilon=args.epsilon,
                     graph=args.graph, ambient=args.ambient, s=args.s,
                     budget=args.budget, output=args.output)
    sources = {"ambient": (args.ambient, ambient),
               "graph": (args.graph, graph)}
    return _run_witness(
        config, args.output, "famnotfim", sources,
        lambda: fam_witness(phi, epsilon, ambient, graph, args.s,
                            embed_budget=args.budget))


def _cmd_adversary(args, threads) -> int:
    ambient = parse_structure_spec(args.ambient)
    if not isinstance(ambient, Hypergraph):
        raise FormatError("adversary needs a hypergraph ambient")
    r = args.r if args.r is not None else ambient.r
    if r != ambient.r:
        raise FormatError(
            f"--r {r} does not match the ambient arity {ambient.r}")
    if args.n < 1:
        raise FormatError("--n must be positive")
    if ambient.n == 0:
        raise FormatError("ambient has no vertices to draw tuples from")
    rng = random.Random(args.seed)
    tuples = [tuple(rng.randrange(ambient.n) for _ in range(r - 1))
              for _ in range(args.n)]
    config = _config("adversary", threads, ambient=args.ambient, r=r,
                     s=args.s, n=args.n, seed=args.seed, output=args.output)
    sources = {"ambient": (args.ambient, ambient)}
    return _run_witness(config, args.output, "dfsnotfim-adversary", sources,
                        lambda: adversary_witness(tuples, ambient, args.s))


def _cmd_satprobe(args, threads) -> int:
    ambient = parse_structure_spec(args.ambient)
    if not isinstance(ambient, Hypergraph):
        raise FormatError("satprobe needs a hypergraph ambient")
    if not 1 <= args.m_size <= ambient.n:
        raise FormatError(
            f"--m-size must lie in 1..{ambient.n} for this ambient")
    rng = random.Random(args.seed)
    subset = sorted(rng.sample(range(ambient.n), args.m_size))
    aggregate = args.params is None
    if aggregate and args.n_params is None:
        raise FormatError("need --params or --n-params")
    if not aggregate and (args.trials is not None
                          or args.n_params is not None):
        raise FormatError("--params excludes --trials/--n-params")
    if args.format == "csv" and not aggregate:
        raise FormatError("csv output is only defined for aggregate mode")
    config = _config("satprobe", threads, ambient=args.ambient,
                     m_size=args.m_size, seed=args.seed, params=args.params,
                     trials=args.trials, n_params=args.n_params,
                     format=args.format, output=args.output)
    if aggregate:
        trials = args.trials if args.trials is not None else 1
        if trials < 1:
            raise FormatError("--trials must be positive")
        if args.n_params < 0:
            raise FormatError("--n-params must be nonnegative")
        probe_seed = rng.randrange(2 ** 63)
        report = sat_probe(ambient, subset, trials=trials,
                           n_params=args.n_params, seed=probe_seed)
    else:
        params = _parse_int_list(args.params, "--params")
        report = sat_probe(ambient, subset, params)
    report.inputs["ambient"]["source"] = args.ambient
    if args.format == "csv":
        lines = ["trial,found,witness"]
        for i, entry in enumerate(report.witness["results"]):
            found = entry["found"]
            cell = "-".join(str(v) for v in entry["witness"]) if found else ""
            lines.append(f"{i},{int(found)},{cell}")
        _emit("\n".join(lines) + "\n", args.output)
        return _exit_for(report)
    _emit(_envelope(config, report), args.output)
    return _exit_for(report)


def _cmd_tp2(args, threads) -> int:
    if args.input is not None:
        structure = load_structure(args.input)
        if not isinstance(structure, Feq2Structure):
            raise FormatError("tp2 needs a parameterized equivalence input")
        source = args.input
    else:
        structure = build_tp2_grid(args.k)
        source = f"tp2grid:{args.k}"
    if args.sample is not None and args.seed is None:
        raise FormatError("--sample requires --seed")
    config = _config("tp2", threads, k=args.k, input=args.input,
                     sample=args.sample, seed=args.seed, output=args.output)
    report = tp2_witness(structure, args.k, sample=args.sample,
                         seed=args.seed)
    report.inputs["structure"]["source"] = source
    _emit(_envelope(config, report), args.output)
    return _exit_for(report)


def _cmd_order(args, threads) -> int:
    ambient = parse_structure_spec(args.ambient)
    if not isinstance(ambient, Hypergraph):
        raise FormatError("order needs a hypergraph ambient")
    if args.q < 0:
        raise FormatError("--q must be nonnegative")
    config = _config("order", threads, ambient=args.ambient, s=args.s,
                     q=args.q, output=args.output)
    sources = {"ambient": (args.ambient, ambient)}
    return _run_witness(config, args.output, "order", sources,
                        lambda: order_witness(ambient, args.s, args.q))


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _verify_theorem(theorem: str):
    def handler(witness: dict, inputs: dict) -> list[Certified]:
        return recompute_certified(theorem, witness, inputs)
    return handler


_VERIFY_HANDLERS = {
    "gen": _verify_gen,
    "coloring-bound": _verify_color,
    "measure-algebra": _verify_measures,
    **{tag: _verify_theorem(tag) for tag in REQUIRED_INPUTS},
}

_VERIFY_INPUTS = {
    "gen": (),
    "coloring-bound": ("weighted",),
    "measure-algebra": (),
    **REQUIRED_INPUTS,
}


def _resolve_input(name: str, entry: dict, overrides: dict):
    if not isinstance(entry, dict) or "digest" not in entry \
            or "kind" not in entry:
        raise FormatError(f"input {name!r} entry is malformed")
    if name in overrides:
        source = overrides[name]
    elif "source" in entry:
        source = entry["source"]
    else:
        raise FormatError(
            f"input {name!r} has no recorded source; pass --input {name}=PATH")
    if entry["kind"] == "weighted-hypergraph":
        obj = load_weighted(source)
        actual = digest(weighted_to_json(obj))
    else:
        obj = parse_structure_spec(source)
        actual = structure_digest(obj)
        if structure_to_json(obj)["kind"] != entry["kind"]:
            raise FormatError(
                f"input {name!r} resolved to kind "
                f"{structure_to_json(obj)['kind']!r}, report says "
                f"{entry['kind']!r}")
    return obj, actual, entry["digest"]


def _cmd_verify(args, threads) -> int:
    overrides = {}
    for item in args.input or []:
        name, sep, path = item.partition("=")
        if not sep or not name or not path:
            raise FormatError(f"--input needs name=path, got {item!r}")
        overrides[name] = path
    data = load_json(args.report)
    if not isinstance(data, dict):
        raise FormatError("report must be a JSON object")
    for key in ("theorem", "inputs", "witness", "certified", "log"):
        if key not in data:
            raise FormatError(f"report is missing the {key!r} key")
    theorem = data["theorem"]
    if theorem not in _VERIFY_HANDLERS:
        raise FormatError(f"unknown theorem tag {theorem!r}")
    if not isinstance(data["inputs"], dict):
        raise FormatError("inputs must be an object")

    resolved = {}
    for name, entry in data["inputs"].items():
        obj, actual, recorded = _resolve_input(name, entry, overrides)
        if actual != recorded:
            print(f"digest mismatch on input {name!r}: report has "
                  f"{recorded}, resolved input has {actual}",
                  file=sys.stderr)
            return EXIT_CERT
        resolved[name] = obj
    missing = [n for n in _VERIFY_INPUTS[theorem] if n not in resolved]
    witness = data["witness"]
    if missing and not (isinstance(witness, dict)
                        and "precondition_failed" in witness):
        raise FormatError(f"report lacks required inputs: {missing}")

    if isinstance(witness, dict) and "precondition_failed" in witness:
        # failed-precondition reports carry the inequality verbatim; there
        # is no witness object to recompute from
        recomputed = [Certified(str(witness["precondition_failed"]),
                                str(witness["op"]),
                                rational_from_json(witness["lhs"]),
                                rational_from_json(witness["rhs"]))]
    else:
        try:
            recomputed = _VERIFY_HANDLERS[theorem](witness, resolved)
        except (KeyError, TypeError, IndexError, AttributeError) as exc:
            raise FormatError(
                f"report payload does not match the {theorem!r} schema "
                f"({exc!r})") from None
    fresh = [c.to_json_dict() for c in recomputed]
    if fresh != data["certified"]:
        recorded = data["certified"]
        for i, entry in enumerate(fresh):
            have = recorded[i] if i < len(recorded) else None
            if entry != have:
                print(f"certification {entry['name']!r} does not reproduce:"
                      f"\n  recorded   {have}\n  recomputed {entry}",
                      file=sys.stderr)
                break
        else:
            print(f"report records {len(recorded)} certifications, "
                  f"recomputation yields {len(fresh)}", file=sys.stderr)
        return EXIT_CERT
    if not all(c.holds for c in recomputed):
        print("report reproduces, but contains a failed certification",
              file=sys.stderr)
        return EXIT_CERT
    print(f"verified: {len(fresh)} certifications reproduced")
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser assembly and entry point
# ---------------------------------------------------------------------------

def _parse_int_list(text: str, what: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v != ""]
    except ValueError:
        raise FormatError(f"{what} needs comma-separated integers, "
                          f"got {text!r}") from None


def _build_parser() -> _Parser:
    parser = _Parser(prog="keisler-lab",
                     description="Finite-scale measure and witness "
                                 "experiments with verifiable reports.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("gen", help="resolve a structure spec and certify it")
    p.add_argument("spec", help="gen:n:r:s:seed=K | circulant:n:d1,d2 | "
                                "searchalpha:n:s:target:budget:seed=K | "
                                "tp2grid:k | file:PATH")
    p.add_argument("--output", help="report path (default stdout)")
    p.add_argument("--structure-out", help="also write the bare structure")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("color", help="greedy splitting colouring with the "
                                     "exact guarantee")
    p.add_argument("--input", required=True,
                   help="weighted hypergraph JSON file")
    p.add_argument("--brute", action="store_true",
                   help="also enumerate all colourings (small inputs)")
    p.add_argument("--output")
    p.set_defaults(func=_cmd_color)

    p = sub.add_parser("fam", help="average approximation of the isolated "
                                   "vertex type")
    p.add_argument("--phi", required=True, help="formula in the quantifier-"
                                                "free DSL")
    p.add_argument("--epsilon", required=True, help="rational a/b")
    p.add_argument("--graph", required=True, help="sample graph spec")
    p.add_argument("--ambient", required=True, help="ambient graph spec")
    p.add_argument("--s", type=int, default=3)
    p.add_argument("--budget", type=int, help="embedding search node budget")
    p.add_argument("--output")
    p.set_defaults(func=_cmd_fam)

    p = sub.add_parser("adversary", help="vertex falsifying the no-edge "
                                         "formula on a guaranteed fraction")
    p.add_argument("--ambient", required=True)
    p.add_argument("--n", type=int, required=True, help="number of tuples")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--r", type=int, help="must match the ambient arity")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--output")
    p.set_defaults(func=_cmd_adversary)

    p = sub.add_parser("satprobe", help="search a subset for a tuple with "
                                        "no edge through the parameters")
    p.add_argument("--ambient", required=True)
    p.add_argument("--m-size", type=int, required=True, dest="m_size",
                   help="size of the seeded designated subset")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--params", help="explicit parameters a,b,c")
    p.add_argument("--trials", type=int, help="aggregate mode trial count")
    p.add_argument("--n-params", type=int, dest="n_params",
                   help="aggregate mode parameters per trial")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--output")
    p.set_defaults(func=_cmd_satprobe)

    p = sub.add_parser("tp2", help="grid rows inconsistent, paths consistent")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--input", help="prebuilt structure JSON (default: "
                                   "constructor grid)")
    p.add_argument("--sample", type=int, help="check this many sampled paths")
    p.add_argument("--seed", type=int)
    p.add_argument("--output")
    p.set_defaults(func=_cmd_tp2)

    p = sub.add_parser("order", help="alternating link pattern witness")
    p.add_argument("--ambient", required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--s", type=int, default=3)
    p.add_argument("--output")
    p.set_defaults(func=_cmd_order)

    p = sub.add_parser("check-measures", help="seeded self-test of the "
                                              "measure algebra")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--cases", type=int, default=20)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--output")
    p.set_defaults(func=_cmd_check_measures)

    p = sub.add_parser("verify", help="recompute a report's certifications")
    p.add_argument("report", help="report JSON path")
    p.add_argument("--input", action="append",
                   help="override an input source as name=path")
    p.set_defaults(func=_cmd_verify)

    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Entry point; returns the process exit code."""
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        threads = _threads_from_env()
        return args.func(args, threads)
    except (FormatError, ParseError, FragmentError, GridTooSmall) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except EmbeddingNotFound as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FreenessViolation as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
