"""Top-level decision pipeline.

Classifies the input, routes it to the right engine (grid solver for the
propositional fragment, partition plus automaton for the temporal fragment
without standpoint-scoped temporal operators, bounded search otherwise) and
packages a checkable witness with every satisfiable verdict.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

from . import psl
from .automaton import (
    DEFAULT_STATE_LIMIT,
    Lasso,
    find_accepting_lasso,
)
from .semantics import (
    DEFAULT_NODE_LIMIT,
    SLTLModel,
    SearchBounds,
    UPTrace,
    bounded_search,
    evaluate,
    model_to_json,
)
from .syntax import (
    DiamondS,
    BoxS,
    Formula,
    Fragment,
    Standpoint,
    UNIVERSAL,
    classify,
    closure,
    simplify,
    to_text,
    vocab,
)
from .translate import Partition, apply_partition, iter_partitions, sltl_to_product


@dataclass
class SolveOptions:
    bounds: Optional[SearchBounds] = None
    fragment_strict: bool = False
    attach_translation: bool = False
    jobs: int = 1
    node_limit: int = DEFAULT_NODE_LIMIT
    state_limit: int = DEFAULT_STATE_LIMIT
    symmetry: bool = False


@dataclass
class Verdict:
    """Outcome of ``solve``; satisfiable verdicts carry a checked witness."""

    status: str  # sat | unsat | unknown | out_of_fragment
    fragment: Fragment
    engine: Optional[str] = None  # psl | automaton | oracle
    model: Optional[SLTLModel] = None
    designated: Optional[str] = None
    partition: Optional[Partition] = None
    bounds: Optional[SearchBounds] = None
    translation: Optional[str] = None
    psl_model: Optional[psl.PSLModel] = None

    @property
    def is_sat(self) -> bool:
        return self.status == "sat"


def check_witness(f: Formula, model: SLTLModel, trace_id: str) -> bool:
    """Does the model satisfy the formula at the designated trace, time 0?"""
    return evaluate(model, trace_id, 0, f)


# ---------------------------------------------------------------------------
# Witness construction from an accepting run

def _uniform_grid(phi_d: Formula, cl) -> tuple[psl.SFamily, int, int]:
    """Shared grid parameters for every position of a run.

    One label family from the positive sharpening atoms, and one width that
    dominates the per-position small-model requirement: every position's
    propositional conjunction draws from the closure, so it mentions at most
    all standpoints and can demand at most one witness per distinct diamond
    member.  Negated box members surface extra diamonds in normal form, so
    the fallback width also counts the box members.
    """
    voc = vocab(phi_d)
    universe = set(voc.standpoints) | {UNIVERSAL}
    rel = psl.sharpening_closure(voc.sharpenings, universe)
    family = psl.family_for(rel)
    n_dia = sum(1 for g in cl.formulas if isinstance(g, DiamondS))
    n = len(universe) + n_dia + 1
    n_box = sum(1 for g in cl.formulas if isinstance(g, BoxS))
    n_safe = len(universe) + n_dia + n_box + 1
    return family, n, n_safe


def witness_from_lasso(lasso: Lasso, phi_d: Formula) -> tuple[SLTLModel, str]:
    """Build a model from an accepting run.

    Every run position gets a grid model of its state's propositional
    members on one shared grid; the trace of a cell reads that cell's
    valuation across positions, and the standpoint extents follow the cell
    labels.  The designated trace is the first cell of the universal column.
    """
    cl = lasso.cycle[0].space.closure
    family, n, n_safe = _uniform_grid(phi_d, cl)
    states = list(lasso.stem) + list(lasso.cycle)

    def solve_positions(width: int) -> Optional[list[dict]]:
        cache: dict[int, Optional[psl.PSLModel]] = {}
        out = []
        for b in states:
            if b.mask not in cache:
                cache[b.mask] = psl.grid_model_for(b.psl_members(), family, width)
            model = cache[b.mask]
            if model is None:
                return None
            out.append(model.valuation)
        return out

    valuations = solve_positions(n)
    width = n
    if valuations is None:
        valuations = solve_positions(n_safe)
        width = n_safe
    if valuations is None:
        raise AssertionError("run state unexpectedly has no grid model")

    prefix_len, period_len = len(lasso.stem), len(lasso.cycle)
    cells = [(i, j) for i in range(len(family)) for j in range(1, width + 1)]
    traces: dict[str, UPTrace] = {}
    for idx, cell in enumerate(cells):
        column = [valuations[k][cell] for k in range(len(states))]
        traces[f"t{idx}"] = UPTrace(tuple(column[:prefix_len]), tuple(column[prefix_len:]))
    lam: dict[Standpoint, frozenset[str]] = {}
    universe = set(vocab(phi_d).standpoints) | {UNIVERSAL}
    for sp in universe:
        members = frozenset(
            f"t{idx}"
            for idx, (i, _) in enumerate(cells)
            if sp.is_universal or sp in family.sets[i]
        )
        lam[sp] = members
    model = SLTLModel(traces, lam, prefix_len, period_len)
    designated = "t0"
    if not check_witness(phi_d, model, designated):
        raise AssertionError("constructed witness fails the evaluator")
    return model, designated


# ---------------------------------------------------------------------------
# The pipeline

def _lift_psl_model(result: psl.SatResult, f: Formula) -> tuple[SLTLModel, str]:
    """A grid model becomes a one-position model with period one."""
    grid = result.model
    cells = grid.cells()
    traces = {
        f"t{idx}": UPTrace((), (grid.valuation[cell],)) for idx, cell in enumerate(cells)
    }
    lam: dict[Standpoint, frozenset[str]] = {}
    for sp in set(vocab(f).standpoints) | {UNIVERSAL}:
        lam[sp] = frozenset(
            f"t{idx}"
            for idx, (i, _) in enumerate(cells)
            if sp.is_universal or sp in grid.family.sets[i]
        )
    return SLTLModel(traces, lam, 0, 1), "t0"


def _solve_partition(f: Formula, part: Partition, state_limit: int) -> Optional[tuple[SLTLModel, str]]:
    # Constant folding can shrink the closure dramatically (dead Until
    # branches in particular); the folded formula is equivalent, so its
    # witnesses are witnesses of the partition formula.
    phi_d = simplify(apply_partition(f, part))
    cl = closure(phi_d)
    lasso = find_accepting_lasso(cl, phi_d, state_limit)
    if lasso is None:
        return None
    model, designated = witness_from_lasso(lasso, phi_d)
    return _cover_standpoints(model, f), designated


def _cover_standpoints(model: SLTLModel, f: Formula) -> SLTLModel:
    """Extend the assignment to standpoints folding eliminated from the
    partition formula; their extents no longer matter, so they cover
    everything."""
    missing = {
        sp for sp in vocab(f).standpoints if sp not in model.lam
    }
    if not missing:
        return model
    ids = frozenset(model.traces)
    lam = dict(model.lam)
    lam.update({sp: ids for sp in missing})
    return SLTLModel(model.traces, lam, model.prefix_len, model.period_len)


def solve(f: Formula, opts: Optional[SolveOptions] = None) -> Verdict:
    """Decide satisfiability where the fragment permits.

    Propositional inputs are decided by the grid solver, temporal inputs
    without standpoint-scoped temporal operators by the partition/automaton
    pipeline (complete in both directions), and everything else by the
    bounded search, which can say sat or unknown but never unsat.
    """
    opts = opts or SolveOptions()
    frag = classify(f)
    if frag is Fragment.PSL:
        result = psl.sat(f)
        if not result.is_sat:
            return Verdict("unsat", frag, engine="psl")
        model, designated = _lift_psl_model(result, f)
        if not check_witness(f, model, designated):
            raise AssertionError("lifted grid witness fails the evaluator")
        return Verdict(
            "sat", frag, engine="psl", model=model, designated=designated,
            psl_model=result.model,
        )
    if frag in (Fragment.PURE_LTL, Fragment.LTL_PSL):
        parts = list(iter_partitions(vocab(f).sharpenings))
        if opts.jobs > 1 and len(parts) > 1:
            with ThreadPoolExecutor(max_workers=opts.jobs) as pool:
                futures = [
                    pool.submit(_solve_partition, f, part, opts.state_limit)
                    for part in parts
                ]
                results = [fut.result() for fut in futures]
            for part, found in zip(parts, results):
                if found is not None:
                    model, designated = found
                    break
            else:
                return Verdict("unsat", frag, engine="automaton")
        else:
            for part in parts:
                found = _solve_partition(f, part, opts.state_limit)
                if found is not None:
                    model, designated = found
                    break
            else:
                return Verdict("unsat", frag, engine="automaton")
        if not check_witness(f, model, designated):
            raise AssertionError("automaton witness fails the evaluator on the input")
        return Verdict(
            "sat", frag, engine="automaton", model=model, designated=designated,
            partition=part,
        )
    # Full language: bounded search only, never an unsat claim.
    translation = to_text(sltl_to_product(f)) if opts.attach_translation else None
    if opts.fragment_strict:
        return Verdict("out_of_fragment", frag, translation=translation)
    bounds = opts.bounds or SearchBounds.for_formula(f, 3, 2, 3)
    found = bounded_search(f, bounds, symmetry=opts.symmetry, node_limit=opts.node_limit)
    if found is not None:
        model, designated = found
        if not check_witness(f, model, designated):
            raise AssertionError("search witness fails the evaluator")
        return Verdict(
            "sat", frag, engine="oracle", model=model, designated=designated,
            bounds=bounds,
        )
    return Verdict("unknown", frag, engine="oracle", bounds=bounds, translation=translation)


# ---------------------------------------------------------------------------
# Verdict serialization

def _partition_to_json(part: Partition) -> dict:
    return {
        "i_plus": sorted([str(a), str(b)] for (a, b) in part.i_plus),
        "i_minus": sorted([str(a), str(b)] for (a, b) in part.i_minus),
    }


def verdict_to_json(v: Verdict) -> dict:
    out: dict = {
        "status": v.status,
        "engine": v.engine,
        "fragment": v.fragment.value,
        "partition": _partition_to_json(v.partition) if v.partition else None,
        "witness": model_to_json(v.model, v.designated) if v.model else None,
    }
    if v.bounds is not None:
        out["bounds"] = {
            "max_traces": v.bounds.max_traces,
            "max_prefix": v.bounds.max_prefix,
            "max_period": v.bounds.max_period,
            "props": list(v.bounds.props),
        }
    if v.translation is not None:
        out["translation"] = v.translation
    if v.psl_model is not None:
        out["psl_witness"] = psl.psl_model_to_json(v.psl_model, (0, 1))
    return out
