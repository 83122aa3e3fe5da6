"""
Composition of automata and projection onto principals

The composition runs the operands side by side. Whenever a request of
one operand and an offer of another one, with the same name, are both
enabled, they must synchronise: the match is forced and neither action
may be performed on its own at that state.
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
from collections import deque

from .core import (MSCA, IDLE, Label, Modality, Transition,
                   combine_modalities, validate)
from .handle_error import CompositionError

logger = logging.getLogger(__name__)


def compose(operands):
    """
    Return the composition of ``operands``.

    Only the part reachable from the initial state is built. A state is
    final if every operand is in one of its final states.

    INPUT:

    - ``operands`` -- a non-empty list of well-formed automata

    OUTPUT: an :class:`~msca.core.MSCA` whose rank is the sum of the ranks
    of the operands and which remembers its operands

    EXAMPLES::

        >>> from msca import corpus
        >>> from msca.compose import compose
        >>> client1 = corpus.load("client1")
        >>> A = compose([client1, client1])
        >>> A
        MSCA of rank 2 with 4 states and 8 transitions
        >>> A.outgoing(("0", "0"))
        [([0,0], [!b,-], [0,0], optional), ([0,0], [-,!b], [0,0], optional), ([0,0], [-,?a], [0,1], optional), ([0,0], [?a,-], [1,0], optional)]

    A request and an offer enabled at the same time are forced to match::

        >>> A = compose([corpus.load("server"), corpus.load("client2"), corpus.load("client2")])
        >>> for t in A.outgoing(("0", "0", "0")): print(t)
        ([0,0,0], [!a,-,?a], [1,0,1], lazy)
        ([0,0,0], [!a,?a,-], [1,1,0], lazy)
        ([0,0,0], [-,!b,-], [0,0,0], optional)
        ([0,0,0], [-,-,!b], [0,0,0], optional)

    TESTS::

        >>> compose([])
        Traceback (most recent call last):
        ...
        msca.handle_error.CompositionError: cannot compose an empty list of automata
    """
    operands = list(operands)
    if not operands:
        raise CompositionError("cannot compose an empty list of automata")
    for k, op in enumerate(operands):
        if op.is_empty():
            raise CompositionError("operand {} is the empty automaton".format(k))
        violations = validate(op)
        if violations:
            raise CompositionError("operand {} is not well-formed: {}".format(k, violations[0]),
                                   violations)

    offsets = []
    rank = 0
    for op in operands:
        offsets.append(rank)
        rank += op.rank

    initial = tuple(x for op in operands for x in op.initial)
    states = {initial}
    transitions = set()
    todo = deque([initial])
    while todo:
        q = todo.popleft()
        for t in _moves(operands, offsets, rank, q):
            transitions.add(t)
            if t.target not in states:
                states.add(t.target)
                todo.append(t.target)

    finals = [q for q in states
              if all(q[off:off + op.rank] in op.finals for op, off in zip(operands, offsets))]
    logger.debug("composed %d operands: %d states, %d transitions",
                 len(operands), len(states), len(transitions))
    return MSCA(rank, states, initial, finals, transitions, operands)


def _place(rank, parts, q):
    """
    Build the global label and target obtained by letting each operand
    transition in ``parts`` (a list of ``(offset, transition)``) move.
    """
    actions = [IDLE] * rank
    target = list(q)
    for off, t in parts:
        n = len(t.label)
        actions[off:off + n] = t.label.actions
        target[off:off + n] = t.target
    return Label(actions), tuple(target)


def _moves(operands, offsets, rank, q):
    enabled = []
    for k, (op, off) in enumerate(zip(operands, offsets)):
        for t in op.outgoing(q[off:off + op.rank]):
            enabled.append((k, t))

    # operand transitions performing a single request or offer
    singles = []
    for e, (k, t) in enumerate(enabled):
        acts = t.label.non_idle()
        if len(acts) == 1:
            singles.append((e, k, acts[0][1]))

    matched = set()
    for x, (e1, k1, a1) in enumerate(singles):
        for e2, k2, a2 in singles[x + 1:]:
            if k1 == k2 or not a1.matches(a2):
                continue
            matched.add(e1)
            matched.add(e2)
            t1 = enabled[e1][1]
            t2 = enabled[e2][1]
            label, target = _place(rank, [(offsets[k1], t1), (offsets[k2], t2)], q)
            yield Transition(q, label, target, combine_modalities(t1.modality, t2.modality))

    for e, (k, t) in enumerate(enabled):
        if e in matched:
            continue
        label, target = _place(rank, [(offsets[k], t)], q)
        yield Transition(q, label, target, t.modality)


def project(a, j):
    """
    Return the principal of ``a`` at component ``j``.

    Offers of the principal are optional, as in any well-formed
    principal; requests keep the modality of the transition they come
    from.

    EXAMPLES::

        >>> from msca import corpus
        >>> from msca.compose import compose, project
        >>> client1 = corpus.load("client1")
        >>> project(compose([client1, client1]), 0) == client1
        True
        >>> A = compose([corpus.load("server"), corpus.load("client2"), corpus.load("client2")])
        >>> sorted(project(A, 1).transitions, key=lambda t: t.sort_key())
        [([0], [!b], [0], optional), ([0], [?a], [1], lazy)]

    TESTS::

        >>> project(client1, 1)
        Traceback (most recent call last):
        ...
        msca.handle_error.CompositionError: component index 1 out of range for rank 1
    """
    if not 0 <= j < a.rank:
        raise CompositionError("component index {} out of range for rank {}".format(j, a.rank))
    if a.is_empty():
        return MSCA.empty(1)
    transitions = set()
    for t in a.transitions:
        x = t.label[j]
        if x.is_idle:
            continue
        modality = Modality.OPTIONAL if x.is_offer else t.modality
        transitions.add(Transition((t.source[j],), Label([x]), (t.target[j],), modality))
    return MSCA(1, [(q[j],) for q in a.states], (a.initial[j],),
                [(q[j],) for q in a.finals], transitions)


def principals(a):
    """
    Return the list of the ``a.rank`` principals of ``a``.

    The operands ``a`` was composed of are used when available (and
    flattened when they are themselves composed); otherwise each
    principal is obtained by :func:`project`.

    EXAMPLES::

        >>> from msca import corpus
        >>> from msca.compose import compose, principals
        >>> bob = corpus.load("bob")
        >>> A = compose([corpus.load("alice"), bob, corpus.load("carl")])
        >>> principals(A)[1] is bob
        True
    """
    if a.rank == 1:
        return [a]
    if a.operands:
        result = []
        for op in a.operands:
            result.extend(principals(op))
        if len(result) == a.rank:
            return result
    return [project(a, j) for j in range(a.rank)]
