"""Finite-scale witness experiments and their certified reports.

Each experiment returns a WitnessReport: a payload describing the object
built, a list of certified exact inequalities, and a log.  Every
certified value can be recomputed from the payload and the input
structures alone, which is what the report verifier does.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Mapping, Optional, Sequence, Union

from .coloring import (greedy_coloring, guarantee_value, weight_of,
                       weighted_hypergraph)
from .logic import (And, Eq, Not, ObjectVar, ParamVar, PhiPartition, Rel,
                    analyze_phi, evaluate, format_formula, make_assignment,
                    parse_phi, residual_holds)
from .measures import IsolatedVertexOracle, sup_error
from .serialize import rational_from_json, rational_to_json, structure_digest
from .structures import (Feq2Structure, FreenessViolation, Hypergraph,
                         add_vertex_with_links, alpha_s, embed_search,
                         grid_object, grid_target, is_free,
                         is_induced_embedding)

_DOMAIN_CAP = 10 ** 6


class PreconditionFailed(Exception):
    """A stated precondition fails; carries the offending inequality."""

    def __init__(self, name: str, op: str, lhs: Fraction, rhs: Fraction):
        self.name = name
        self.op = op
        self.lhs = Fraction(lhs)
        self.rhs = Fraction(rhs)
        super().__init__(f"precondition {name}: {lhs} {op} {rhs} is false")


class EmbeddingNotFound(Exception):
    """No induced copy of the pattern was found in the ambient graph."""

    def __init__(self, exhausted: bool, nodes: int):
        self.exhausted = exhausted
        self.nodes = nodes
        reason = ("search budget exhausted" if exhausted
                  else "proven absent")
        super().__init__(f"no induced embedding ({reason}, {nodes} nodes)")


class GridTooSmall(ValueError):
    """The structure lacks the objects a k-grid witness needs."""

    def __init__(self, needed: int, actual: int):
        self.needed = needed
        self.actual = actual
        super().__init__(f"grid needs {needed} objects, structure has {actual}")


_OPS = {
    "<": lambda a, b: a < b,
    "<=": lambda a, b: a <= b,
    ">": lambda a, b: a > b,
    ">=": lambda a, b: a >= b,
    "==": lambda a, b: a == b,
}


@dataclass(frozen=True)
class Certified:
    """One exact inequality between recomputable rational values."""

    name: str
    op: str
    lhs: Fraction
    rhs: Fraction

    def __post_init__(self):
        if self.op not in _OPS:
            raise ValueError(f"unknown relation {self.op!r}")

    @property
    def holds(self) -> bool:
        return _OPS[self.op](self.lhs, self.rhs)

    def to_json_dict(self) -> dict:
        return {"name": self.name, "op": self.op,
                "lhs": rational_to_json(self.lhs),
                "rhs": rational_to_json(self.rhs),
                "holds": self.holds}


def _bool_cert(name: str, ok: bool) -> Certified:
    return Certified(name, "==", Fraction(1 if ok else 0), Fraction(1))


@dataclass(frozen=True)
class WitnessReport:
    theorem: str
    inputs: dict
    witness: dict
    certified: tuple[Certified, ...]
    log: tuple[str, ...]

    @property
    def all_hold(self) -> bool:
        return all(c.holds for c in self.certified)

    def to_json_dict(self) -> dict:
        return {"theorem": self.theorem,
                "inputs": self.inputs,
                "witness": self.witness,
                "certified": [c.to_json_dict() for c in self.certified],
                "log": list(self.log)}


def _input_entry(structure, source: Optional[str] = None) -> dict:
    from .serialize import structure_to_json
    entry = {"kind": structure_to_json(structure)["kind"],
             "digest": structure_digest(structure)}
    if source is not None:
        entry["source"] = source
    return entry


# ---------------------------------------------------------------------------
# Average approximation of the isolated-vertex type (graph case)
# ---------------------------------------------------------------------------

def _select_profile(analysis) -> int:
    """Among generic disjuncts prefer fewest forbidden edges, then fewest
    inequalities, so the certified violation bound is smallest."""
    generics = analysis.generic_indices
    if not generics:
        raise ValueError("no disjunct is satisfiable by an isolated vertex")
    return min(generics, key=lambda t: (len(analysis.profiles[t].neg_edge),
                                        len(analysis.profiles[t].neq), t))


def _fam_certified(phi: PhiPartition, negated: bool, epsilon: Fraction,
                   ambient: Hypergraph, graph: Hypergraph, s: int,
                   abar: Sequence[int]):
    """Certified values of the average-approximation experiment, computed
    from the embedded points alone; shared by the runner and the verifier."""
    work = (PhiPartition(Not(phi.formula), phi.object_arity, phi.param_arity)
            if negated else phi)
    analysis = analyze_phi(work)
    t_star = _select_profile(analysis)
    profile = analysis.profiles[t_star]
    k = len(profile.neg_edge)
    ell = len(profile.neq)
    n = graph.n
    alpha = alpha_s(graph, s)
    if not alpha.exact:
        raise ValueError("alpha_s did not finish exactly")
    m = work.param_arity
    if ambient.n ** m > _DOMAIN_CAP:
        raise ValueError(
            f"parameter domain of size {ambient.n}^{m} exceeds {_DOMAIN_CAP}")

    certified = [
        _bool_cert("ambient-free", is_free(ambient, s)),
        _bool_cert("pattern-free", is_free(graph, s)),
        _bool_cert("embedding-induced",
                   is_induced_embedding(graph, ambient, abar)),
        Certified("sample-size", ">", Fraction(n),
                  Fraction(2 * ell) / epsilon),
    ]
    if k > 0:
        certified.append(Certified("alpha-bound", "<", Fraction(alpha.value),
                                   epsilon * n / (2 * k)))

    z_cap = Fraction(ell + k * alpha.value)
    oracle = IsolatedVertexOracle()
    points = [(v,) for v in abar]
    scan = sup_error(
        oracle, ambient, points, work, epsilon=epsilon,
        certified_bound=(z_cap / n if not profile.residual else None))
    certified.append(Certified("sup-error", "<", scan.sup_error, epsilon))

    max_z = 0
    max_z_at: Optional[tuple[int, ...]] = None
    for b in itertools.product(range(ambient.n), repeat=m):
        if profile.residual and not residual_holds(ambient, profile, b):
            continue
        z = sum(1 for v in abar
                if not evaluate(ambient, work.formula,
                                make_assignment((v,), b)))
        if max_z_at is None or z > max_z or (z == max_z and b < max_z_at):
            max_z, max_z_at = z, b
    certified.append(Certified("violation-bound", "<=",
                               Fraction(max_z), z_cap))

    details = {
        "profile": {
            "index": t_star,
            "neg_edge": sorted(profile.neg_edge),
            "neq": sorted(profile.neq),
            "pos_edge": sorted(profile.pos_edge),
            "eq": sorted(profile.eq),
            "residual": (format_formula(And(tuple(
                lit.formula() for lit in profile.residual)))
                if profile.residual else None),
        },
        "k": k,
        "ell": ell,
        "alpha": {"value": alpha.value, "witness": sorted(alpha.witness)},
        "sup": scan.to_json_dict(),
        "violation_max": {"count": max_z,
                          "params": (list(max_z_at)
                                     if max_z_at is not None else None)},
    }
    return certified, details


def fam_witness(phi: PhiPartition, epsilon: Fraction, ambient: Hypergraph,
                graph: Hypergraph, s: int = 3, *,
                embed_budget: Optional[int] = None) -> WitnessReport:
    """Certify that the average over an embedded copy of the sample graph
    approximates the isolated-vertex type on the formula.

    The sample graph must be small-alpha relative to the requested
    accuracy: n > 2*ell/epsilon and alpha_s(graph) < (epsilon/2k) * n for
    the chosen disjunct, else PreconditionFailed.  When no disjunct of phi
    is satisfiable by an isolated vertex the experiment runs on the
    negation and certifies the complementary values.
    """
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if ambient.r != 2 or graph.r != 2:
        raise ValueError("experiment is defined over graphs (r = 2)")
    if s < 3:
        raise ValueError("s must be at least 3")
    if graph.n == 0:
        raise ValueError("sample graph needs at least one vertex")

    analysis = analyze_phi(phi)
    negated = not analysis.generic_indices
    work = (PhiPartition(Not(phi.formula), phi.object_arity, phi.param_arity)
            if negated else phi)
    if negated:
        analysis = analyze_phi(work)
    t_star = _select_profile(analysis)
    profile = analysis.profiles[t_star]
    k = len(profile.neg_edge)
    ell = len(profile.neq)
    n = graph.n

    lhs, rhs = Fraction(n), Fraction(2 * ell) / epsilon
    if not lhs > rhs:
        raise PreconditionFailed("sample-size", ">", lhs, rhs)
    alpha = alpha_s(graph, s)
    if not alpha.exact:
        raise ValueError("alpha_s did not finish exactly")
    if k > 0:
        lhs, rhs = Fraction(alpha.value), epsilon * n / (2 * k)
        if not lhs < rhs:
            raise PreconditionFailed("alpha-bound", "<", lhs, rhs)
    if not is_free(graph, s):
        raise PreconditionFailed("pattern-free", "==", Fraction(0), Fraction(1))
    if not is_free(ambient, s):
        raise PreconditionFailed("ambient-free", "==", Fraction(0), Fraction(1))

    embedding = embed_search(graph, ambient, budget=embed_budget)
    if embedding.mapping is None:
        raise EmbeddingNotFound(embedding.exhausted, embedding.nodes)
    abar = embedding.mapping

    certified, details = _fam_certified(phi, negated, epsilon, ambient,
                                        graph, s, abar)
    witness = {
        "phi": format_formula(phi.formula),
        "object_arity": phi.object_arity,
        "param_arity": phi.param_arity,
        "negated": negated,
        "epsilon": rational_to_json(epsilon),
        "s": s,
        "graph_n": graph.n,
        "embedding": list(abar),
        **details,
    }
    log = [
        f"formula splits into {len(analysis.profiles)} disjuncts, "
        f"{len(analysis.generic_indices)} generic",
        f"negation branch taken: {negated}",
        f"chose disjunct {details['profile']['index']} with k={k}, ell={ell}",
        f"alpha_s(pattern, {s}) = {alpha.value}",
        f"embedding found after {embedding.nodes} nodes",
        f"exhaustive scan of {details['sup']['samples_scanned']} "
        f"parameter tuples",
    ]
    return WitnessReport(
        theorem="famnotfim",
        inputs={"ambient": _input_entry(ambient),
                "graph": _input_entry(graph)},
        witness=witness,
        certified=tuple(certified),
        log=tuple(log),
    )


def _recompute_fam(witness: dict, inputs: Mapping[str, object]):
    phi = parse_phi(witness["phi"], witness["object_arity"],
                    witness["param_arity"])
    certified, _ = _fam_certified(
        phi, bool(witness["negated"]),
        rational_from_json(witness["epsilon"]),
        inputs["ambient"], inputs["graph"], int(witness["s"]),
        tuple(witness["embedding"]))
    return certified


# ---------------------------------------------------------------------------
# Order witness: an alternating link pattern over an independent chain
# ---------------------------------------------------------------------------

def _order_certified(ambient: Hypergraph, s: int, q: int):
    chain = list(range(ambient.n, ambient.n + 2 * q))
    extended = ambient
    for _ in range(2 * q):
        extended = add_vertex_with_links(extended, [], s)
    star: Optional[int] = None
    adjacency: list[bool] = []
    if q > 0:
        links = [(chain[i],) for i in range(2 * q) if (i + 1) % 2 == 0]
        extended = add_vertex_with_links(extended, links, s)
        star = extended.n - 1
        adjacency = [extended.has_edge((chain[i], star))
                     for i in range(2 * q)]
    matches = sum(1 for i in range(2 * q)
                  if adjacency[i] == ((i + 1) % 2 == 0))
    certified = [
        _bool_cert("ambient-free", is_free(ambient, s)),
        Certified("alternation", "==", Fraction(matches), Fraction(2 * q)),
        _bool_cert("extended-free", is_free(extended, s)),
    ]
    details = {"chain": chain, "witness_vertex": star,
               "adjacency": adjacency}
    return certified, details


def order_witness(ambient: Hypergraph, s: int, q: int) -> WitnessReport:
    """Extend the ambient graph by 2q pairwise non-adjacent vertices and a
    vertex linked to exactly the even-indexed ones, certifying the
    alternating pattern and that freeness survives.

    The added chain is independent, so for s >= 3 the freeness re-check
    cannot fail; if it ever did, FreenessViolation would propagate as an
    internal error.
    """
    if ambient.r != 2:
        raise ValueError("order witness is defined over graphs")
    if s < 3:
        raise ValueError("s must be at least 3")
    if q < 0:
        raise ValueError("q must be nonnegative")
    if not is_free(ambient, s):
        raise PreconditionFailed("ambient-free", "==", Fraction(0), Fraction(1))
    certified, details = _order_certified(ambient, s, q)
    witness = {"s": s, "q": q, "base_n": ambient.n, **details}
    log = ([f"added {2 * q} isolated vertices and one linked to the "
            f"{q} even positions"] if q > 0
           else ["q = 0: degenerate report, no extension made"])
    return WitnessReport(
        theorem="order",
        inputs={"ambient": _input_entry(ambient)},
        witness=witness,
        certified=tuple(certified),
        log=tuple(log),
    )


def _recompute_order(witness: dict, inputs: Mapping[str, object]):
    certified, _ = _order_certified(inputs["ambient"], int(witness["s"]),
                                    int(witness["q"]))
    return certified


# ---------------------------------------------------------------------------
# Adversary witness: one vertex falsifying the no-edge formula often
# ---------------------------------------------------------------------------

def adversary_fraction(r: int) -> Fraction:
    """Guaranteed violated fraction (r-1)! / (r-1)^(r-1); 1/2 at r = 3."""
    return Fraction(factorial(r - 1), (r - 1) ** (r - 1))


def _no_edge_formula(r: int) -> PhiPartition:
    xs = tuple(ObjectVar(i) for i in range(1, r))
    parts: list = [Not(Rel("R", xs + (ParamVar(1),)))]
    for i, j in itertools.combinations(range(r - 1), 2):
        parts.append(Not(Eq(xs[i], xs[j])))
    return PhiPartition(And(tuple(parts)), r - 1, 1)


def _adversary_certified(ambient: Hypergraph, s: int, tuples: Sequence[tuple],
                         coloring: Sequence[int], links: Sequence[tuple]):
    r = ambient.r
    arity = r - 1
    distinct = [t for t in tuples if len(set(t)) == arity]
    m = len(distinct)
    vertices = sorted({v for t in distinct for v in t})
    index = {v: i for i, v in enumerate(vertices)}
    weights: dict[tuple[int, ...], int] = {}
    for t in distinct:
        key = tuple(sorted(index[v] for v in t))
        weights[key] = weights.get(key, 0) + 1
    wh = weighted_hypergraph(len(vertices), arity,
                             ((key, Fraction(c)) for key, c in weights.items()))
    w_chi = weight_of(wh, coloring)
    target = adversary_fraction(r)

    extended = add_vertex_with_links(ambient, links, s)
    star = extended.n - 1
    phi = _no_edge_formula(r)
    violations = [
        not evaluate(extended, phi.formula, make_assignment(t, (star,)))
        for t in tuples]
    fraction = Fraction(sum(violations), len(tuples))

    certified = [
        _bool_cert("ambient-free", is_free(ambient, s)),
        Certified("coloring-weight", ">=", w_chi, target * m),
        _bool_cert("extended-free", is_free(extended, s)),
        Certified("violated-fraction", ">=", fraction, target),
    ]
    details = {"witness_vertex": star,
               "violations": [int(v) for v in violations],
               "fraction": rational_to_json(fraction),
               "coloring_weight": rational_to_json(w_chi),
               "distinct_count": m,
               "vertices": vertices}
    return certified, details


def adversary_witness(tuples: Sequence[Sequence[int]], ambient: Hypergraph,
                      s: int) -> WitnessReport:
    """Attach one fresh vertex whose links are the colour-split (r-1)-sets
    of a greedy colouring, so that the no-edge formula fails on at least
    the guaranteed fraction of the input tuples.

    Tuples with repeated entries count as violations outright.  The links
    cannot complete an s-clique (more pairwise distinct colours would be
    needed than exist), so a freeness failure is an internal error.
    """
    r = ambient.r
    if r < 3:
        raise ValueError("adversary construction needs arity at least 3; "
                         "the graph case is covered by the average "
                         "approximation experiment")
    if s <= r:
        raise ValueError("s must exceed the arity")
    if not tuples:
        raise ValueError("at least one input tuple is required")
    arity = r - 1
    clean: list[tuple[int, ...]] = []
    for t in tuples:
        t = tuple(int(v) for v in t)
        if len(t) != arity:
            raise ValueError(f"tuple {t} does not have arity {arity}")
        if any(not 0 <= v < ambient.n for v in t):
            raise ValueError(f"tuple {t} out of range")
        clean.append(t)
    if not is_free(ambient, s):
        raise PreconditionFailed("ambient-free", "==", Fraction(0), Fraction(1))

    distinct = [t for t in clean if len(set(t)) == arity]
    vertices = sorted({v for t in distinct for v in t})
    index = {v: i for i, v in enumerate(vertices)}
    weights: dict[tuple[int, ...], int] = {}
    for t in distinct:
        key = tuple(sorted(index[v] for v in t))
        weights[key] = weights.get(key, 0) + 1
    wh = weighted_hypergraph(len(vertices), arity,
                             ((key, Fraction(c)) for key, c in weights.items()))
    chi = greedy_coloring(wh)
    links = [tuple(vertices[i] for i in combo)
             for combo in itertools.combinations(range(len(vertices)), arity)
             if len({chi[i] for i in combo}) == arity]

    certified, details = _adversary_certified(ambient, s, clean, chi, links)
    witness = {
        "r": r, "s": s,
        "tuples": [list(t) for t in clean],
        "coloring": list(chi),
        "links": [list(l) for l in links],
        **details,
    }
    log = [
        f"{len(clean)} tuples, {details['distinct_count']} with distinct "
        f"entries over {len(vertices)} vertices",
        f"greedy colouring splits weight "
        f"{Fraction(details['coloring_weight']['num'], details['coloring_weight']['den'])} "
        f"of {details['distinct_count']}",
        f"witness vertex {details['witness_vertex']} linked to "
        f"{len(links)} split sets",
    ]
    return WitnessReport(
        theorem="dfsnotfim-adversary",
        inputs={"ambient": _input_entry(ambient)},
        witness=witness,
        certified=tuple(certified),
        log=tuple(log),
    )


def _recompute_adversary(witness: dict, inputs: Mapping[str, object]):
    certified, _ = _adversary_certified(
        inputs["ambient"], int(witness["s"]),
        [tuple(t) for t in witness["tuples"]],
        tuple(witness["coloring"]),
        [tuple(l) for l in witness["links"]])
    return certified


# ---------------------------------------------------------------------------
# Satisfiability probe for the no-edge formula
# ---------------------------------------------------------------------------

def _probe_once(ambient: Hypergraph, subset: Sequence[int],
                params: Sequence[int]) -> Optional[tuple[int, ...]]:
    arity = ambient.r - 1
    for combo in itertools.combinations(subset, arity):
        if all(not ambient.has_edge(combo + (b,)) for b in params):
            return combo
    return None


def sat_probe(ambient: Hypergraph, subset: Sequence[int],
              params: Optional[Sequence[int]] = None, *,
              trials: Optional[int] = None, n_params: Optional[int] = None,
              seed: Optional[int] = None) -> WitnessReport:
    """Search a designated vertex subset for a distinct (r-1)-tuple with no
    edge through any of the parameters.

    With explicit params a single exhaustive scan runs; a miss is an
    ordinary outcome at finite scale.  Aggregate mode (trials, n_params,
    seed) draws seeded random parameter sets and reports the success rate
    instead of asserting one.
    """
    subset = sorted({int(v) for v in subset})
    if any(not 0 <= v < ambient.n for v in subset):
        raise ValueError("subset out of range")
    arity = ambient.r - 1

    if params is not None:
        params = [int(b) for b in params]
        if any(not 0 <= b < ambient.n for b in params):
            raise ValueError("parameters out of range")
        found = _probe_once(ambient, subset, params)
        witness = {"mode": "single", "m_subset": subset,
                   "params": list(params),
                   "found": found is not None,
                   "witness": list(found) if found is not None else None}
        certified = []
        if found is not None:
            ok = all(not ambient.has_edge(found + (b,)) for b in params)
            certified.append(_bool_cert("witness-valid", ok))
            log = [f"witness {list(found)} avoids edges through "
                   f"{len(params)} parameters"]
        else:
            log = [f"no {arity}-tuple in a subset of {len(subset)} avoids "
                   f"all {len(params)} parameters; honest miss at this scale"]
        return WitnessReport(
            theorem="dfsnotfim-sat",
            inputs={"ambient": _input_entry(ambient)},
            witness=witness, certified=tuple(certified), log=tuple(log))

    if trials is None or n_params is None or seed is None:
        raise ValueError("aggregate mode needs trials, n_params and seed")
    if trials < 1 or n_params < 0:
        raise ValueError("trials must be positive and n_params nonnegative")
    if ambient.n == 0 and n_params > 0:
        raise ValueError("cannot draw parameters from an empty host")
    rng = random.Random(seed)
    results = []
    for _ in range(trials):
        draw = [rng.randrange(ambient.n) for _ in range(n_params)]
        found = _probe_once(ambient, subset, draw)
        results.append({"params": draw,
                        "found": found is not None,
                        "witness": list(found) if found is not None else None})
    hits = sum(1 for entry in results if entry["found"])
    witness = {"mode": "aggregate", "m_subset": subset, "trials": trials,
               "n_params": n_params, "seed": seed, "results": results,
               "success_rate": rational_to_json(Fraction(hits, trials))}
    valid = sum(
        1 for entry in results if entry["found"] and all(
            not ambient.has_edge(tuple(entry["witness"]) + (b,))
            for b in entry["params"]))
    certified = [Certified("witnesses-valid", "==", Fraction(valid),
                           Fraction(hits))]
    log = [f"{hits} of {trials} seeded parameter draws admit a witness"]
    return WitnessReport(
        theorem="dfsnotfim-sat",
        inputs={"ambient": _input_entry(ambient)},
        witness=witness, certified=tuple(certified), log=tuple(log))


def _recompute_sat(witness: dict, inputs: Mapping[str, object]):
    ambient: Hypergraph = inputs["ambient"]
    if witness["mode"] == "single":
        certified = []
        if witness["found"]:
            w = tuple(witness["witness"])
            ok = all(not ambient.has_edge(w + (b,))
                     for b in witness["params"])
            certified.append(_bool_cert("witness-valid", ok))
        return certified
    valid = 0
    hits = 0
    for entry in witness["results"]:
        if entry["found"]:
            hits += 1
            w = tuple(entry["witness"])
            if all(not ambient.has_edge(w + (b,)) for b in entry["params"]):
                valid += 1
    return [Certified("witnesses-valid", "==", Fraction(valid),
                      Fraction(hits))]


# ---------------------------------------------------------------------------
# Two-dimensional inconsistency grid over parameterized equivalences
# ---------------------------------------------------------------------------

def _tp2_certified(f: Feq2Structure, k: int, paths: Sequence[tuple]):
    row_pairs = 0
    row_failures = []
    for i in range(k):
        c = grid_target(k, i)
        for j1, j2 in itertools.combinations(range(k), 2):
            row_pairs += 1
            b1, b2 = grid_object(k, i, j1), grid_object(k, i, j2)
            for z in range(f.parameters):
                if f.same_class(z, b1, c) and f.same_class(z, b2, c):
                    row_failures.append([i, j1, j2, z])
                    break
    path_params: list[Optional[int]] = []
    for path in paths:
        witness_param = None
        for z in range(f.parameters):
            if all(f.same_class(z, grid_object(k, i, path[i]),
                                grid_target(k, i)) for i in range(k)):
                witness_param = z
                break
        path_params.append(witness_param)
    consistent = sum(1 for w in path_params if w is not None)
    certified = [
        Certified("rows-inconsistent", "==",
                  Fraction(row_pairs - len(row_failures)),
                  Fraction(row_pairs)),
        Certified("paths-consistent", "==", Fraction(consistent),
                  Fraction(len(paths))),
    ]
    details = {"row_pairs": row_pairs, "row_failures": row_failures,
               "path_params": path_params}
    return certified, details


def tp2_witness(f: Feq2Structure, k: int, sample: Optional[int] = None,
                seed: Optional[int] = None) -> WitnessReport:
    """Certify the two-dimensional pattern on a k-grid: cells of one row
    are pairwise 2-inconsistent relative to the row target, while every
    checked path through the grid is realized by a single parameter.

    sample=None checks all k^k paths; otherwise `sample` distinct paths
    are drawn with the seed.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if f.objects < k * k + k:
        raise GridTooSmall(k * k + k, f.objects)
    total = k ** k
    if sample is None:
        paths = list(itertools.product(range(k), repeat=k))
        sample_info = None
    else:
        if seed is None:
            raise ValueError("sampling paths requires a seed")
        if not 1 <= sample <= total:
            raise ValueError(f"sample must lie in 1..{total}")
        rng = random.Random(seed)
        chosen = sorted(rng.sample(range(total), sample))
        paths = []
        for code in chosen:
            digits = []
            for _ in range(k):
                code, d = divmod(code, k)
                digits.append(d)
            paths.append(tuple(reversed(digits)))
        sample_info = {"seed": seed, "count": sample}
    certified, details = _tp2_certified(f, k, paths)
    witness = {"k": k, "sample": sample_info,
               "checked_paths": [list(p) for p in paths], **details}
    log = [f"checked {details['row_pairs']} same-row pairs and "
           f"{len(paths)} of {total} paths"]
    return WitnessReport(
        theorem="tp2",
        inputs={"structure": _input_entry(f)},
        witness=witness, certified=tuple(certified), log=tuple(log))


def _recompute_tp2(witness: dict, inputs: Mapping[str, object]):
    certified, _ = _tp2_certified(
        inputs["structure"], int(witness["k"]),
        [tuple(p) for p in witness["checked_paths"]])
    return certified


# ---------------------------------------------------------------------------
# Recomputation dispatch
# ---------------------------------------------------------------------------

REQUIRED_INPUTS = {
    "famnotfim": ("ambient", "graph"),
    "order": ("ambient",),
    "dfsnotfim-adversary": ("ambient",),
    "dfsnotfim-sat": ("ambient",),
    "tp2": ("structure",),
}

_RECOMPUTERS = {
    "famnotfim": _recompute_fam,
    "order": _recompute_order,
    "dfsnotfim-adversary": _recompute_adversary,
    "dfsnotfim-sat": _recompute_sat,
    "tp2": _recompute_tp2,
}


def recompute_certified(theorem: str, witness: dict,
                        inputs: Mapping[str, object]) -> list[Certified]:
    """Re-derive the certified inequalities of a witness report from its
    payload and input structures; used by the verifier."""
    try:
        recompute = _RECOMPUTERS[theorem]
    except KeyError:
        raise ValueError(f"unknown theorem tag {theorem!r}") from None
    return list(recompute(witness, inputs))
