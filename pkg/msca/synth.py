"""
Orchestration synthesis

:func:`synthesize` computes the most permissive orchestration of an
automaton by iterating a pruning step until nothing changes:

- transitions that are requests, or that lead into a forbidden state,
  are removed;

- the sources of lazy transitions (of the input) that are not
  controllable in what is left, and the dangling states of what is
  left, become forbidden.

Each step is computed on the whole sets, so the result and the trace do
not depend on any iteration order. Under ``mpc`` every necessary
transition is uncontrollable: a state is forbidden as soon as one of its
necessary transitions has been removed.

EXAMPLES::

    >>> from msca import corpus
    >>> from msca.compose import compose
    >>> from msca.synth import synthesize
    >>> client1 = corpus.load("client1")
    >>> O, trace = synthesize(compose([client1, client1]), "original")
    >>> O.states, O.finals
    (frozenset({('0', '0')}), frozenset({('0', '0')}))
    >>> sorted(O.transitions, key=lambda t: t.sort_key())
    [([0,0], [!b,-], [0,0], optional), ([0,0], [-,!b], [0,0], optional)]
    >>> client2 = corpus.load("client2")
    >>> synthesize(compose([client2, client2]), "original")[0]
    empty MSCA of rank 2
"""

#*****************************************************************************
#       Copyright (C) 2026 The msca developers
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 2 of the License, or
# (at your option) any later version.
#                  http://www.gnu.org/licenses/
#*****************************************************************************

import logging
from dataclasses import dataclass, field

import networkx as nx
from networkx.algorithms import isomorphism

from .core import (MSCA, TAU, Action, Label, Modality, Transition,
                   format_state, sorted_states, sorted_transitions, validate)
from .compose import principals as principals_of
from .control import ControllabilityChecker, Semantics
from .handle_error import SynthesisError
from .reach import Reachability

logger = logging.getLogger(__name__)

UNCONTROLLABLE = "uncontrollable"
DANGLING = "dangling"


@dataclass(frozen=True)
class Iteration:
    """
    One step of the synthesis.

    - ``index`` -- the iteration number, starting at 1

    - ``removed_transitions`` -- transitions pruned by this step

    - ``forbidden`` -- pairs ``(state, reason)`` of newly forbidden
      states, ``reason`` being ``"uncontrollable"`` or ``"dangling"``

    - ``uncontrollable`` -- the necessary transitions found
      uncontrollable by this step
    """
    index: int
    removed_transitions: tuple
    forbidden: tuple
    uncontrollable: tuple

    @property
    def forbidden_states(self):
        return frozenset(q for q, _ in self.forbidden)


@dataclass(frozen=True)
class FinalTrim:
    removed_states: tuple
    removed_transitions: tuple


@dataclass
class SynthesisTrace:
    """
    Record of a run of :func:`synthesize`.

    ``initial_forbidden`` are the dangling states of the input, forbidden
    before the first iteration. ``fixpoint_index`` is the first iteration
    that changed nothing.
    """
    semantics: Semantics
    initial_forbidden: tuple = ()
    iterations: list = field(default_factory=list)
    fixpoint_index: int = 0
    final_trim: FinalTrim = FinalTrim((), ())
    empty: bool = False

    def forbidden_at(self, q):
        """
        Return the iteration at which the state ``q`` became forbidden,
        ``0`` if it was dangling in the input, ``None`` if never.
        """
        q = tuple(q)
        if q in self.initial_forbidden:
            return 0
        for it in self.iterations:
            if q in it.forbidden_states:
                return it.index
        return None

    def forbidden_states(self):
        """
        Return all forbidden states in the order they were forbidden.
        """
        result = list(self.initial_forbidden)
        for it in self.iterations:
            result.extend(q for q, _ in it.forbidden)
        return result


def synthesize(a, semantics):
    """
    Return the orchestration of ``a`` and the trace of its computation.

    INPUT:

    - ``a`` -- a well-formed :class:`~msca.core.MSCA`; it must not have
      urgent transitions unless ``semantics`` is ``mpc``

    - ``semantics`` -- a :class:`~msca.control.Semantics` or its name

    OUTPUT: a pair ``(orchestration, trace)``; the orchestration is the
    empty automaton when none exists

    EXAMPLES::

        >>> from msca import corpus
        >>> from msca.compose import compose
        >>> from msca.synth import synthesize
        >>> A = compose([corpus.load(n) for n in ("server", "client2", "client2")])
        >>> O, trace = synthesize(A, "original")
        >>> O
        MSCA of rank 3 with 6 states and 12 transitions
        >>> trace.fixpoint_index
        3
        >>> for it in trace.iterations: print(it.index, it.removed_transitions)
        1 (([1,0,1], [-,?a,-], [1,1,1], lazy), ([1,1,0], [-,-,?a], [1,1,1], lazy))
        2 (([1,1,1], [!tau,-,-], [2,1,1], optional),)
        3 ()
        >>> trace.final_trim.removed_transitions
        (([2,1,1], [!a,-,-], [3,1,1], optional),)

    Under ``mpc`` lazy transitions are uncontrollable::

        >>> synthesize(A, "mpc")[0]
        empty MSCA of rank 3

    TESTS::

        >>> synthesize(compose([corpus.load(n) for n in ("server", "client2-urgent")]), "original")
        Traceback (most recent call last):
        ...
        msca.handle_error.SynthesisError: urgent transitions are only supported by the mpc semantics
    """
    sem = Semantics(semantics)
    violations = validate(a)
    if violations:
        raise SynthesisError("cannot synthesize an ill-formed automaton: {}".format(violations[0]),
                             violations)
    if sem is not Semantics.MPC and any(t.is_urgent for t in a.transitions):
        raise SynthesisError("urgent transitions are only supported by the mpc semantics")

    trace = SynthesisTrace(sem)
    if a.is_empty():
        trace.empty = True
        return a, trace

    if sem is Semantics.MPC:
        necessary = sorted_transitions(t for t in a.transitions if t.is_necessary)
    else:
        necessary = sorted_transitions(t for t in a.transitions if t.is_lazy)
    principals = None
    if sem is Semantics.FORALL:
        principals = principals_of(a)

    T = a.transitions
    R = Reachability(a).dangling
    trace.initial_forbidden = tuple(sorted_states(R))
    logger.info("synthesis (%s) of an automaton with %d states and %d transitions",
                sem, len(a.states), len(a.transitions))

    i = 0
    while True:
        i += 1
        removed = frozenset(t for t in T if t.target in R or t.label.is_request)
        T_next = T - removed
        K = a.restrict(T_next)
        checker = ControllabilityChecker(a, K, principals, check=False)

        if sem is Semantics.MPC:
            bad = [t for t in necessary if t not in T_next]
        else:
            bad = [t for t in necessary if not checker.verdict(t, sem)]
        reasons = {}
        for q in checker.reach.dangling - R:
            reasons[q] = DANGLING
        for t in bad:
            if t.source not in R:
                reasons[t.source] = UNCONTROLLABLE
        R_next = R | frozenset(reasons)

        trace.iterations.append(Iteration(
            i, tuple(sorted_transitions(removed)),
            tuple((q, reasons[q]) for q in sorted_states(reasons)),
            tuple(bad)))
        logger.debug("iteration %d: %d transitions removed, forbidden %s",
                     i, len(removed), ", ".join(format_state(q) for q in sorted_states(reasons)))

        if T_next == T and R_next == R:
            break
        T, R = T_next, R_next

    trace.fixpoint_index = i
    O = _finalize(a, T, R)
    kept = O.transitions
    trace.final_trim = FinalTrim(tuple(sorted_states(a.states - O.states)),
                                 tuple(sorted_transitions(t for t in T if t not in kept)))
    trace.empty = O.is_empty()
    logger.info("synthesis (%s) reached its fixpoint at iteration %d: %r", sem, i, O)
    return O, trace


def _finalize(a, T, R):
    """
    Remove the forbidden states ``R`` and keep the part reachable from
    the initial state.
    """
    if a.initial in R:
        return MSCA.empty(a.rank)
    g = nx.DiGraph()
    g.add_node(a.initial)
    g.add_edges_from((t.source, t.target) for t in T
                     if t.source not in R and t.target not in R)
    states = frozenset(nx.descendants(g, a.initial)) | {a.initial}
    return MSCA(a.rank, states, a.initial, a.finals & states,
                [t for t in T if t.source in states and t.target in states],
                a.operands)


def split_lazy(a):
    """
    Replace every lazy transition by an urgent silent step into a fresh
    intermediate state, followed by an optional copy of the original
    transition.

    The silent step is an offer of the reserved name ``τ`` performed by
    the requesting component. Intermediate states are not final; their
    requesting component is named after the source state and the
    position of the lazy transition in canonical order.

    EXAMPLES::

        >>> from msca import corpus
        >>> from msca.synth import split_lazy
        >>> adrian = corpus.load("adrian")
        >>> for t in sorted(split_lazy(adrian).transitions, key=lambda t: t.sort_key()): print(t)
        ([0], [!b], [0], optional)
        ([0], [!τ], [0#0], urgent)
        ([0#0], [?a], [1], optional)
        >>> split_lazy(corpus.load("client1")) == corpus.load("client1")
        True
    """
    violations = validate(a)
    if violations:
        raise SynthesisError("cannot split an ill-formed automaton: {}".format(violations[0]),
                             violations)
    if TAU in a.request_alphabet | a.offer_alphabet:
        raise SynthesisError("the reserved name {} is already used".format(TAU))

    lazy = sorted_transitions(t for t in a.transitions if t.is_lazy)
    states = set(a.states)
    transitions = set(a.transitions) - set(lazy)
    for k, t in enumerate(lazy):
        j = t.label.requester
        mid = list(t.source)
        mid[j] = "{}#{}".format(t.source[j], k)
        while tuple(mid) in states:
            mid[j] += "'"
        mid = tuple(mid)
        states.add(mid)
        transitions.add(Transition(t.source, Label.single(a.rank, j, Action.offer(TAU)),
                                   mid, Modality.URGENT))
        transitions.add(Transition(mid, t.label, t.target, Modality.OPTIONAL))
    return MSCA(a.rank, states, a.initial, a.finals, transitions, a.operands)


@dataclass(frozen=True)
class Diff:
    """
    Differences between two automata, as computed by :func:`compare`.
    """
    rank_mismatch: bool = False
    states_only_a: tuple = ()
    states_only_b: tuple = ()
    transitions_only_a: tuple = ()
    transitions_only_b: tuple = ()
    finals_only_a: tuple = ()
    finals_only_b: tuple = ()
    initial_differs: bool = False
    isomorphic: bool = True

    @property
    def identical(self):
        return not (self.rank_mismatch or self.states_only_a or self.states_only_b or
                    self.transitions_only_a or self.transitions_only_b or
                    self.finals_only_a or self.finals_only_b or self.initial_differs)

    def report(self):
        """
        Return a human readable list of lines describing the differences.
        """
        if self.rank_mismatch:
            return ["rank mismatch"]
        lines = []
        if self.initial_differs:
            lines.append("initial states differ")
        for title, items, fmt in [("state only in a", self.states_only_a, format_state),
                                  ("state only in b", self.states_only_b, format_state),
                                  ("final only in a", self.finals_only_a, format_state),
                                  ("final only in b", self.finals_only_b, format_state),
                                  ("transition only in a", self.transitions_only_a, str),
                                  ("transition only in b", self.transitions_only_b, str)]:
            lines.extend("{}: {}".format(title, fmt(x)) for x in items)
        if not self.identical:
            lines.append("isomorphic after renaming states: {}".format(
                "yes" if self.isomorphic else "no"))
        return lines


def compare(a, b):
    """
    Compare two automata of the same rank.

    EXAMPLES::

        >>> from msca import corpus
        >>> from msca.synth import compare
        >>> server_orch = corpus.load("server-orchestration")
        >>> compare(server_orch, server_orch).identical
        True
        >>> d = compare(corpus.load("client1"), corpus.load("client2"))
        >>> d.transitions_only_a, d.transitions_only_b
        ((([0], [?a], [1], optional),), (([0], [?a], [1], lazy),))
        >>> d.isomorphic
        False
        >>> compare(server_orch, corpus.load("client1")).report()
        ['rank mismatch']
    """
    if a.rank != b.rank:
        return Diff(rank_mismatch=True, isomorphic=False)
    return Diff(states_only_a=tuple(sorted_states(a.states - b.states)),
                states_only_b=tuple(sorted_states(b.states - a.states)),
                transitions_only_a=tuple(sorted_transitions(a.transitions - b.transitions)),
                transitions_only_b=tuple(sorted_transitions(b.transitions - a.transitions)),
                finals_only_a=tuple(sorted_states(a.finals - b.finals)),
                finals_only_b=tuple(sorted_states(b.finals - a.finals)),
                initial_differs=a.initial != b.initial,
                isomorphic=_isomorphic(a, b))


def _reachable_multigraph(a):
    g = nx.MultiDiGraph()
    states = Reachability(a).reachable
    for q in states:
        g.add_node(q, initial=(q == a.initial), final=(q in a.finals))
    for t in a.transitions:
        if t.source in states:
            g.add_edge(t.source, t.target, label=str(t.label), modality=t.modality.value)
    return g


def _isomorphic(a, b):
    if a.is_empty() or b.is_empty():
        return a.is_empty() and b.is_empty()
    return nx.is_isomorphic(
        _reachable_multigraph(a), _reachable_multigraph(b),
        node_match=isomorphism.categorical_node_match(["initial", "final"], [False, False]),
        edge_match=isomorphism.categorical_multiedge_match(["label", "modality"], [None, None]))
