"""Shared corpus generators and independent brute-force references.

The references here deliberately avoid the engines under test: temporal
satisfiability is checked by enumerating whole models and calling the
evaluator, and propositional standpoint satisfiability by enumerating
models up to bisimulation (a precisification is determined by its
standpoint profile and valuation, so a model is a non-empty set of such
types).
"""

from __future__ import annotations

import itertools
import random

from sltl.semantics import SLTLModel, UPTrace, evaluate
from sltl.syntax import (
    And,
    BOTTOM,
    BoxS,
    DiamondS,
    Formula,
    Next,
    Not,
    Or,
    Prop,
    Sharper,
    Standpoint,
    TOP,
    UNIVERSAL,
    Until,
    neg,
    vocab,
)

S = Standpoint("s")
T = Standpoint("t")


# ---------------------------------------------------------------------------
# Random formula corpus

def random_formula(
    rng: random.Random,
    depth: int,
    props=("p", "q"),
    sps=(S, T),
    mode: str = "sltl",
    max_sharpenings: int = 1,
) -> Formula:
    """Random AST of the requested fragment.

    Modes: ``psl`` (no temporal operators), ``ltl`` (no standpoint
    constructs), ``ltl_psl`` (temporal operators only outside modalities),
    ``sltl`` (anything), ``product`` (universal modality only, no
    sharpening atoms).
    """
    budget = [max_sharpenings]

    def leaf(m: str) -> Formula:
        choices = [Prop(p) for p in props] + [TOP]
        if m in ("psl", "ltl_psl", "sltl") and budget[0] > 0 and len(sps) >= 2 and rng.random() < 0.25:
            budget[0] -= 1
            a, b = rng.sample(list(sps), 2)
            return Sharper(a, b)
        return rng.choice(choices)

    def build(d: int, m: str) -> Formula:
        if d == 0 or rng.random() < 0.25:
            return leaf(m)
        ops = ["not", "and", "or"]
        if m in ("ltl", "ltl_psl", "sltl", "product"):
            ops += ["next", "until"]
        if m in ("psl", "ltl_psl", "sltl", "product"):
            ops += ["dia", "box"]
        op = rng.choice(ops)
        if op == "not":
            return neg(build(d - 1, m))
        if op == "and":
            return And(build(d - 1, m), build(d - 1, m))
        if op == "or":
            return Or(build(d - 1, m), build(d - 1, m))
        if op == "next":
            return Next(build(d - 1, m))
        if op == "until":
            return Until(build(d - 1, m), build(d - 1, m))
        sp = UNIVERSAL if m == "product" else rng.choice(list(sps) + [UNIVERSAL])
        inner_mode = "psl" if m == "ltl_psl" else m
        inner = build(d - 1, inner_mode)
        return DiamondS(sp, inner) if op == "dia" else BoxS(sp, inner)

    return build(depth, mode)


# ---------------------------------------------------------------------------
# Naive temporal reference: enumerate whole models, ask the evaluator

def iter_models(props, max_traces, max_prefix, max_period, sps):
    """Every model within the bounds (all shapes, valuations, extents)."""
    props = sorted(props)
    vals = [
        frozenset(c)
        for n in range(len(props) + 1)
        for c in itertools.combinations(props, n)
    ]
    for t_count in range(1, max_traces + 1):
        ids = [f"t{i}" for i in range(t_count)]
        subsets = [
            frozenset(ids[j] for j in range(t_count) if m >> j & 1)
            for m in range(1, 2 ** t_count)
        ]
        for prefix in range(max_prefix + 1):
            for period in range(1, max_period + 1):
                length = prefix + period
                for rows in itertools.product(
                    itertools.product(vals, repeat=length), repeat=t_count
                ):
                    traces = {
                        ids[i]: UPTrace(tuple(rows[i][:prefix]), tuple(rows[i][prefix:]))
                        for i in range(t_count)
                    }
                    for combo in itertools.product(subsets, repeat=len(sps)):
                        lam = dict(zip(sps, combo))
                        lam[UNIVERSAL] = frozenset(ids)
                        yield SLTLModel(traces, lam, prefix, period)


def naive_sat(f: Formula, max_traces: int, max_prefix: int, max_period: int) -> bool:
    voc = vocab(f)
    sps = sorted((s for s in voc.standpoints if not s.is_universal), key=lambda s: s.name)
    for model in iter_models(voc.props, max_traces, max_prefix, max_period, sps):
        for tid in model.traces:
            if evaluate(model, tid, 0, f):
                return True
    return False


# ---------------------------------------------------------------------------
# Propositional standpoint reference: models up to bisimulation

def psl_brute_sat(f: Formula) -> bool:
    """Enumerate models as non-empty sets of (standpoint profile, valuation)
    types; every model quotients to one, so this is a complete reference."""
    voc = vocab(f)
    sps = sorted((s for s in voc.standpoints if not s.is_universal), key=lambda s: s.name)
    props = sorted(voc.props)
    profiles = list(range(2 ** len(sps)))
    vals = list(range(2 ** len(props)))
    types = [(pm, vm) for pm in profiles for vm in vals]
    full = (1 << len(types)) - 1
    sp_masks = []
    for i in range(len(sps)):
        sp_masks.append(
            sum(1 << k for k, (pm, _) in enumerate(types) if pm >> i & 1)
        )
    prop_masks = {}
    for j, p in enumerate(props):
        prop_masks[p] = sum(1 << k for k, (_, vm) in enumerate(types) if vm >> j & 1)
    sp_index = {sp: i for i, sp in enumerate(sps)}

    def ext(sp: Standpoint, chosen: int) -> int:
        if sp.is_universal:
            return chosen
        return sp_masks[sp_index[sp]] & chosen

    def truth(g: Formula, chosen: int) -> int:
        if g == TOP:
            return full
        if g == BOTTOM:
            return 0
        if isinstance(g, Prop):
            return prop_masks[g.name]
        if isinstance(g, Sharper):
            return full if ext(g.left, chosen) & ~ext(g.right, chosen) == 0 else 0
        if isinstance(g, Not):
            return full ^ truth(g.operand, chosen)
        if isinstance(g, And):
            return truth(g.left, chosen) & truth(g.right, chosen)
        if isinstance(g, Or):
            return truth(g.left, chosen) | truth(g.right, chosen)
        if isinstance(g, DiamondS):
            return full if truth(g.operand, chosen) & ext(g.standpoint, chosen) else 0
        if isinstance(g, BoxS):
            return full if ext(g.standpoint, chosen) & ~truth(g.operand, chosen) == 0 else 0
        raise TypeError(f"not a propositional standpoint formula: {g!r}")

    for chosen in range(1, full + 1):
        if any(sp_masks[i] & chosen == 0 for i in range(len(sps))):
            continue
        if truth(f, chosen) & chosen:
            return True
    return False


# ---------------------------------------------------------------------------
# Exhaustive propositional corpus

def enumerate_psl_formulas(max_size: int, prop: str = "p"):
    """All propositional standpoint ASTs up to the size, over one
    proposition and the two fixed standpoints (double negation excluded)."""
    leaves: list[Formula] = [Prop(prop), TOP, BOTTOM, Sharper(S, T), Sharper(T, S)]
    by_size: dict[int, list[Formula]] = {1: leaves}
    modal_sps = [S, T, UNIVERSAL]
    for n in range(2, max_size + 1):
        out: list[Formula] = []
        for f in by_size[n - 1]:
            if not isinstance(f, Not) and f not in (TOP, BOTTOM):
                out.append(Not(f))
            for sp in modal_sps:
                out.append(DiamondS(sp, f))
                out.append(BoxS(sp, f))
        for k in range(1, n - 1):
            for a in by_size[k]:
                for b in by_size[n - 1 - k]:
                    out.append(And(a, b))
                    out.append(Or(a, b))
        by_size[n] = out
    for n in range(1, max_size + 1):
        yield from by_size[n]
