import io
import random

import pytest

from conftest import random_formula

from sltl.automaton import (
    AutomatonLimitError,
    Lasso,
    StateSpace,
    acceptance_family,
    dump_state_graph,
    find_accepting_lasso,
    initial_states,
    successors,
)
from sltl.semantics import SearchBounds, bounded_search
from sltl.syntax import (
    Next,
    Not,
    Prop,
    TOP,
    Until,
    classify,
    Fragment,
    closure,
    parse,
    to_text,
    vocab,
)
from sltl.translate import apply_partition, iter_partitions


def lasso_run_states(lasso: Lasso, horizon: int):
    return [lasso.state_at(k) for k in range(horizon)]


def test_initial_states_contain_the_formula():
    f = Prop("p")
    states = list(initial_states(closure(f), f))
    assert states
    assert all(f in b for b in states)


def test_initial_states_empty_for_contradiction():
    f = parse("p & !p")
    assert list(initial_states(closure(f), f)) == []


def test_initial_states_filtered_by_standpoint_consistency():
    f = parse("<@s> p & [@*] !p")
    assert list(initial_states(closure(f), f)) == []


def test_successors_respect_next_members():
    f = parse("X p | X !p")
    cl = closure(f)
    for b in initial_states(cl, f):
        for b2 in successors(b):
            assert (Next(Prop("p")) in b) == (Prop("p") in b2)


def test_successors_unconstrained_without_next_members():
    f = parse("p | q")
    cl = closure(f)
    some_state = next(initial_states(cl, f))
    succs = list(successors(some_state))
    space = some_state.space
    everything = list(space.enumerate([]))
    assert {b.mask for b in succs} == {b.mask for b in everything}
    assert len(succs) == 4  # free choice of p and q


def test_acceptance_family_examples():
    f = parse("p U q")
    cl = closure(f)
    fam = acceptance_family(cl)
    assert len(fam) == 1
    until = fam[0].until
    assert until == Until(Prop("p"), Prop("q"))
    good = next(b for b in initial_states(cl, f) if Prop("q") in b)
    assert fam[0](good)

    g = parse("G p")  # sugar over an Until of the negation
    fam_g = acceptance_family(closure(g))
    assert len(fam_g) == 1
    assert fam_g[0].until == Until(TOP, Not(Prop("p")))

    assert acceptance_family(closure(parse("p & q"))) == []


def test_lasso_for_always_p():
    f = parse("G p")
    cl = closure(f)
    lasso = find_accepting_lasso(cl, f)
    assert lasso is not None
    for b in lasso_run_states(lasso, len(lasso.stem) + len(lasso.cycle)):
        assert Prop("p") in b
        assert f in b


@pytest.mark.parametrize(
    "text",
    ["p & G !p", "F p & G !p", "(p U q) & G !q", "F G p & G F !p", "<@s> p & [@*] !p & X q"],
)
def test_no_lasso_for_contradictions(text):
    f = parse(text)
    assert find_accepting_lasso(closure(f), f) is None


def test_lasso_edges_and_acceptance():
    f = parse("(p U q) & G F p & X !q")
    cl = closure(f)
    lasso = find_accepting_lasso(cl, f)
    assert lasso is not None
    length = len(lasso.stem) + len(lasso.cycle)
    for k in range(2 * length):
        b, b2 = lasso.state_at(k), lasso.state_at(k + 1)
        for g in cl.next_members:
            assert (g in b) == (g.operand in b2)
    for pred in acceptance_family(cl):
        assert any(pred(b) for b in lasso.cycle)


def test_lasso_is_deterministic():
    f = parse("G F p & F q")
    cl = closure(f)
    l1 = find_accepting_lasso(cl, f)
    l2 = find_accepting_lasso(closure(f), f)
    assert [b.mask for b in l1.stem] == [b.mask for b in l2.stem]
    assert [b.mask for b in l1.cycle] == [b.mask for b in l2.cycle]


def test_every_enumerated_state_is_consistent():
    f = parse("<@s> p & (q U <@s> !p)")
    cl = closure(f)
    space = StateSpace(cl)
    from sltl import psl

    for b in space.enumerate([]):
        assert psl.standpoint_consistent(b.psl_members())


def test_agreement_with_bounded_search_on_corpus():
    rng = random.Random(101)
    done = 0
    while done < 40:
        f = random_formula(rng, 3, mode="ltl_psl", max_sharpenings=0)
        done += 1
        bounds = SearchBounds.for_formula(f, 2, 1, 2)
        if bounded_search(f, bounds) is not None:
            assert find_accepting_lasso(closure(f), f) is not None, to_text(f)


def test_partitioned_inputs_reach_the_automaton():
    rng = random.Random(103)
    done = 0
    while done < 15:
        f = random_formula(rng, 3, mode="ltl_psl", max_sharpenings=1)
        if not vocab(f).sharpenings:
            continue
        done += 1
        sat_somewhere = False
        for part in iter_partitions(vocab(f).sharpenings):
            phi_d = apply_partition(f, part)
            assert classify(phi_d) in (Fragment.LTL_PSL, Fragment.PURE_LTL, Fragment.PSL)
            if find_accepting_lasso(closure(phi_d), phi_d) is not None:
                sat_somewhere = True
                break
        bounds = SearchBounds.for_formula(f, 2, 1, 2)
        if bounded_search(f, bounds) is not None:
            assert sat_somewhere, to_text(f)


def _reference_has_accepting_run(cl, phi_d) -> bool:
    """Materialize the whole degeneralized product graph and look for a
    cycle through an accepting node; independent of the nested DFS."""
    space = StateSpace(cl, state_limit=10**6)
    states = list(space.enumerate([]))
    preds = acceptance_family(cl)
    k = max(1, len(preds))

    def holds(b, i):
        return preds[i](b) if preds else True

    succ = {}
    for b in states:
        succ[b.mask] = [
            b2
            for b2 in states
            if all((g in b) == (g.operand in b2) for g in cl.next_members)
        ]

    def prod_succ(node):
        b, i = node
        j = (i + 1) % k if holds(b, i) else i
        return [(b2.mask, j) for b2 in succ[b.mask]]

    by_mask = {b.mask: b for b in states}
    initials = [(b.mask, 0) for b in states if phi_d in b]
    reachable = set(initials)
    frontier = list(initials)
    while frontier:
        node = frontier.pop()
        for nxt in prod_succ((by_mask[node[0]], node[1])):
            if nxt not in reachable:
                reachable.add(nxt)
                frontier.append(nxt)
    accepting = [n for n in reachable if n[1] == 0 and holds(by_mask[n[0]], 0)]
    for target in accepting:
        seen = set()
        stack = list(prod_succ((by_mask[target[0]], target[1])))
        stack = [n for n in stack if n in reachable]
        while stack:
            node = stack.pop()
            if node == target:
                return True
            if node in seen:
                continue
            seen.add(node)
            stack.extend(
                n for n in prod_succ((by_mask[node[0]], node[1])) if n in reachable
            )
    return False


def test_emptiness_matches_whole_graph_reference():
    rng = random.Random(113)
    done = 0
    while done < 50:
        f = random_formula(rng, 2, props=("p", "q"), mode="ltl_psl", max_sharpenings=0)
        done += 1
        cl = closure(f)
        got = find_accepting_lasso(cl, f) is not None
        want = _reference_has_accepting_run(closure(f), f)
        assert got == want, to_text(f)


def test_state_limit_is_loud():
    f = parse("G F p & G F q & G F r")
    with pytest.raises(AutomatonLimitError):
        find_accepting_lasso(closure(f), f, state_limit=3)


def test_state_graph_dump_format():
    f = parse("p U q")
    out = io.StringIO()
    dump_state_graph(closure(f), f, out)
    lines = out.getvalue().splitlines()
    states = [ln for ln in lines if ln.startswith("state ")]
    edges = [ln for ln in lines if ln.startswith("edge ")]
    assert states and edges
    assert all("acc=" in ln and "props={" in ln for ln in states)
