"""Formula-to-formula constructions.

Embeddings between the product logic and SLTL, the guarded translation of
standpoints into propositional variables, strict-until renaming, the
partition compilation of sharpening atoms, and the binary-counter formula
generators.  Everything here is pure and size-linear in its input.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .syntax import (
    And,
    BOTTOM,
    Bottom,
    BoxS,
    DiamondS,
    Formula,
    Fragment,
    Next,
    Not,
    Or,
    Prop,
    Sharper,
    Standpoint,
    TOP,
    Top,
    UNIVERSAL,
    Until,
    always,
    children,
    classify,
    conj,
    iff,
    implies,
    neg,
    vocab,
)
from .semantics import check_product_formula


@dataclass(frozen=True)
class Partition:
    """A guessed truth assignment to the sharpening atoms of a formula."""

    i_plus: frozenset[tuple[Standpoint, Standpoint]]
    i_minus: frozenset[tuple[Standpoint, Standpoint]]


def iter_partitions(
    pairs: Iterable[tuple[Standpoint, Standpoint]]
) -> Iterator[Partition]:
    """All partitions, fewest falsified atoms first, then by bitmask."""
    ordered = sorted(set(pairs), key=lambda p: (p[0].name, p[1].name))
    k = len(ordered)
    masks = sorted(range(1 << k), key=lambda m: (bin(m).count("1"), m))
    for mask in masks:
        minus = frozenset(ordered[i] for i in range(k) if mask >> i & 1)
        plus = frozenset(ordered) - minus
        yield Partition(plus, minus)


def sharpening_witnesses(
    pairs: Iterable[tuple[Standpoint, Standpoint]]
) -> dict[tuple[Standpoint, Standpoint], str]:
    """Fresh witness variable per falsified sharpening atom.

    Underscores in standpoint names can make two pairs collide on the plain
    scheme; a numeric suffix keeps the names distinct and deterministic.
    """
    names: dict[tuple[Standpoint, Standpoint], str] = {}
    used: set[str] = set()
    for a, b in pairs:
        base = f"$sh_{a.name}_{b.name}"
        name, k = base, 2
        while name in used:
            name = f"{base}_{k}"
            k += 1
        used.add(name)
        names[(a, b)] = name
    return names


def substitute_sharpenings(
    f: Formula, mapping: dict[tuple[Standpoint, Standpoint], Formula]
) -> Formula:
    """Replace every occurrence of the mapped sharpening atoms, purely
    syntactically (negations are rebuilt so constants fold)."""
    if isinstance(f, Sharper):
        return mapping.get((f.left, f.right), f)
    if isinstance(f, Not):
        return neg(substitute_sharpenings(f.operand, mapping))
    if isinstance(f, And):
        return And(substitute_sharpenings(f.left, mapping), substitute_sharpenings(f.right, mapping))
    if isinstance(f, Or):
        return Or(substitute_sharpenings(f.left, mapping), substitute_sharpenings(f.right, mapping))
    if isinstance(f, DiamondS):
        return DiamondS(f.standpoint, substitute_sharpenings(f.operand, mapping))
    if isinstance(f, BoxS):
        return BoxS(f.standpoint, substitute_sharpenings(f.operand, mapping))
    if isinstance(f, Next):
        return Next(substitute_sharpenings(f.operand, mapping))
    if isinstance(f, Until):
        return Until(substitute_sharpenings(f.left, mapping), substitute_sharpenings(f.right, mapping))
    return f


# ---------------------------------------------------------------------------
# Product logic <-> SLTL

def product_to_sltl(f: Formula) -> Formula:
    """Embed a product-logic formula into SLTL.

    Plain modalities are represented with the universal standpoint in the
    shared AST, so after the sublanguage guard this is the identity; the
    embedding replaces every plain diamond and box by its universal twin.
    """
    check_product_formula(f)
    return f


def guard_prop(sp: Standpoint) -> Prop:
    """The propositional variable standing for membership in a standpoint."""
    return Prop("@" + sp.name)


def rigidity_guard(standpoints: Iterable[Standpoint]) -> Formula:
    """Every listed standpoint is inhabited and trace-rigid.

    The conjunction of one witness diamond per standpoint and one box over
    the per-trace rigidity disjunctions; the empty list yields true.  The
    universal standpoint needs no guard and must not be listed.
    """
    sps = list(standpoints)
    if any(sp.is_universal for sp in sps):
        raise ValueError("the universal standpoint is not guarded")
    if not sps:
        return TOP
    inhabited = conj([DiamondS(UNIVERSAL, guard_prop(sp)) for sp in sps])
    rigid = conj([Or(always(guard_prop(sp)), always(neg(guard_prop(sp)))) for sp in sps])
    return And(inhabited, BoxS(UNIVERSAL, rigid))


def _occurring_standpoints(f: Formula) -> list[Standpoint]:
    """Non-universal standpoints in first-occurrence order."""
    seen: list[Standpoint] = []

    def walk(g: Formula) -> None:
        sps: tuple[Standpoint, ...] = ()
        if isinstance(g, (DiamondS, BoxS)):
            sps = (g.standpoint,)
        elif isinstance(g, Sharper):
            sps = (g.left, g.right)
        for sp in sps:
            if not sp.is_universal and sp not in seen:
                seen.append(sp)
        for c in children(g):
            walk(c)

    walk(f)
    return seen


def translate_standpoints_away(f: Formula) -> Formula:
    """Compile standpoint constructs into guard variables.

    Homomorphic on Boolean and temporal connectives; universal modalities
    become plain ones, named modalities guard their operand with the
    standpoint's variable, and sharpening atoms become a global implication
    between guard variables.  Atoms involving the universal standpoint fold
    to their semantic value instead of guarding it.
    """
    if isinstance(f, (Top, Bottom, Prop)):
        return f
    if isinstance(f, Sharper):
        if f.right.is_universal:
            return TOP
        if f.left.is_universal:
            return BoxS(UNIVERSAL, guard_prop(f.right))
        return BoxS(UNIVERSAL, implies(guard_prop(f.left), guard_prop(f.right)))
    if isinstance(f, Not):
        return neg(translate_standpoints_away(f.operand))
    if isinstance(f, And):
        return And(translate_standpoints_away(f.left), translate_standpoints_away(f.right))
    if isinstance(f, Or):
        return Or(translate_standpoints_away(f.left), translate_standpoints_away(f.right))
    if isinstance(f, Next):
        return Next(translate_standpoints_away(f.operand))
    if isinstance(f, Until):
        return Until(translate_standpoints_away(f.left), translate_standpoints_away(f.right))
    if isinstance(f, DiamondS):
        inner = translate_standpoints_away(f.operand)
        if f.standpoint.is_universal:
            return DiamondS(UNIVERSAL, inner)
        return DiamondS(UNIVERSAL, And(guard_prop(f.standpoint), inner))
    if isinstance(f, BoxS):
        inner = translate_standpoints_away(f.operand)
        if f.standpoint.is_universal:
            return BoxS(UNIVERSAL, inner)
        return BoxS(UNIVERSAL, implies(guard_prop(f.standpoint), inner))
    raise TypeError(f"not a formula: {f!r}")


def sltl_to_product(f: Formula) -> Formula:
    """Satisfiability-preserving translation into the product logic: the
    rigidity guard for the occurring standpoints conjoined with the
    guard-variable compilation of the formula."""
    return And(rigidity_guard(_occurring_standpoints(f)), translate_standpoints_away(f))


def psl_to_s5(f: Formula) -> Formula:
    """Guarded S5 translation of a propositional standpoint formula.

    The output is temporal-free and uses the universal modality as the
    plain S5 one: each occurring standpoint gets an inhabitation diamond,
    and the body is the guard-variable compilation.
    """
    if classify(f) is not Fragment.PSL:
        raise ValueError("only propositional standpoint formulas translate to S5")
    guard = conj([DiamondS(UNIVERSAL, guard_prop(sp)) for sp in _occurring_standpoints(f)])
    return And(guard, translate_standpoints_away(f))


# ---------------------------------------------------------------------------
# Strict-until renaming

def until_to_strict(f: Formula) -> Formula:
    """Rename Until subformulas through fresh variables.

    Each distinct Until gets a variable and one globally propagated
    equivalence unfolding it through the strict-until form (encoded as a
    next step into the Until over the renamed operands), keeping the output
    linear in the input.  Formulas without Until are returned unchanged.
    """
    check_product_formula(f)
    defs: list[Formula] = []
    renamed: dict[Formula, Prop] = {}

    def ren(g: Formula) -> Formula:
        if isinstance(g, (Top, Bottom, Prop, Sharper)):
            return g
        if isinstance(g, Not):
            return neg(ren(g.operand))
        if isinstance(g, And):
            return And(ren(g.left), ren(g.right))
        if isinstance(g, Or):
            return Or(ren(g.left), ren(g.right))
        if isinstance(g, Next):
            return Next(ren(g.operand))
        if isinstance(g, DiamondS):
            return DiamondS(g.standpoint, ren(g.operand))
        if isinstance(g, BoxS):
            return BoxS(g.standpoint, ren(g.operand))
        if isinstance(g, Until):
            a, b = ren(g.left), ren(g.right)
            key = Until(a, b)
            if key not in renamed:
                var = Prop(f"$u{len(renamed)}")
                renamed[key] = var
                strict = Next(Until(a, b))
                defs.append(BoxS(UNIVERSAL, always(iff(var, Or(b, And(a, strict))))))
            return renamed[key]
        raise TypeError(f"not a formula: {g!r}")

    top = ren(f)
    if not defs:
        return f
    return conj([top] + defs)


# ---------------------------------------------------------------------------
# Partition compilation

def apply_partition(f: Formula, part: Partition) -> Formula:
    """Substitute the partitioned sharpening atoms and conjoin the global
    constraint that enforces the guess.

    True atoms are asserted always; false ones get a fresh witness variable
    conceivable for the finer standpoint but not the coarser one.
    """
    atoms = vocab(f).sharpenings
    if part.i_plus | part.i_minus != atoms or part.i_plus & part.i_minus:
        raise ValueError("partition does not cover the sharpening atoms of the formula")
    plus = sorted(part.i_plus, key=lambda p: (p[0].name, p[1].name))
    minus = sorted(part.i_minus, key=lambda p: (p[0].name, p[1].name))
    mapping: dict[tuple[Standpoint, Standpoint], Formula] = {p: TOP for p in plus}
    mapping.update({p: BOTTOM for p in minus})
    witnesses = sharpening_witnesses(minus)
    constraints: list[Formula] = [Sharper(a, b) for (a, b) in plus]
    for (a, b) in minus:
        w = Prop(witnesses[(a, b)])
        constraints.append(And(DiamondS(a, w), neg(DiamondS(b, w))))
    return And(substitute_sharpenings(f, mapping), always(conj(constraints)))


# ---------------------------------------------------------------------------
# Binary counter generators

def _bit(i: int) -> Prop:
    return Prop(f"p{i}")


def counter_formula(n: int) -> Formula:
    """A binary counter over ``p1..pn`` (``p1`` most significant).

    Starts at zero, increments by one at every step and wraps around after
    the maximum, so the value at position ``j`` is ``j`` modulo ``2**n``.
    """
    if n < 1:
        raise ValueError("the counter needs at least one bit")
    bits = [_bit(i) for i in range(1, n + 1)]
    start = conj([neg(b) for b in bits])
    wrap = always(implies(conj(bits), Next(conj([neg(b) for b in bits]))))
    steps: list[Formula] = []
    for i in range(1, n + 1):
        low_ones = conj([_bit(k) for k in range(i + 1, n + 1)])
        cond = conj([x for x in [neg(_bit(i)), low_ones] if x != TOP])
        effect_parts: list[Formula] = [Next(neg(_bit(k))) for k in range(i + 1, n + 1)]
        effect_parts.append(Next(_bit(i)))
        effect_parts.extend(iff(_bit(k), Next(_bit(k))) for k in range(1, i))
        steps.append(always(implies(cond, conj(effect_parts))))
    return conj([start, wrap] + steps)


def recurring_counter_formula(n: int) -> Formula:
    """At every instant some trace of the standpoint starts a fresh counter
    run marked by a flag that never returns.

    Any model must keep producing new such traces, so no finite set of
    traces can host one.
    """
    if n < 1:
        raise ValueError("the counter needs at least one bit")
    flag = Prop("p")
    body = conj([counter_formula(n), flag, Next(always(neg(flag)))])
    return always(DiamondS(Standpoint("s"), body))
