"""
Random and scripted walks

A walk follows outgoing transitions from the initial state and reports
whether it ever performed an unmatched request and whether it ends in,
or can still reach within the remaining steps, a final state.

Random walks draw uniformly among the outgoing transitions of the
current state, in canonical order, with a ``random.Random(seed)``
generator (Mersenne Twister). A scripted walk instead gives, for each
step, the index of the transition to take in that order.
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
import random
from dataclasses import dataclass

import networkx as nx

from .core import format_state
from .handle_error import SimulationError
from .reach import Reachability

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Verdict:
    """
    - ``requests_seen`` -- number of request transitions taken

    - ``ended_in_final`` -- whether the last state is final, or a final
      state is reachable from it in the steps left

    - ``visited_coreachable`` -- whether a final state is reachable from
      every visited state
    """
    requests_seen: int
    ended_in_final: bool
    visited_coreachable: bool


@dataclass(frozen=True)
class Walk:
    seed: int
    policy: object
    transitions: tuple
    states: tuple
    verdict: Verdict


def walk(a, steps, seed=0, policy="random"):
    """
    Walk through ``a`` for at most ``steps`` steps.

    INPUT:

    - ``a`` -- a non-empty :class:`~msca.core.MSCA`

    - ``steps`` -- a non-negative integer

    - ``seed`` -- (default: 0) seed of the random generator

    - ``policy`` -- (default: ``"random"``) either ``"random"`` or a list
      of indices into the canonically ordered outgoing transitions

    The walk stops early at a state without outgoing transitions, or
    when the script is exhausted.

    EXAMPLES::

        >>> from msca import corpus
        >>> from msca.compose import compose
        >>> from msca.simulate import walk
        >>> A = compose([corpus.load(n) for n in ("server", "client2", "client2")])
        >>> w = walk(A, 5, policy=[0, 0])
        >>> w.transitions
        (([0,0,0], [!a,-,?a], [1,0,1], lazy), ([1,0,1], [!tau,-,-], [2,0,1], optional))
        >>> w.verdict
        Verdict(requests_seen=0, ended_in_final=True, visited_coreachable=True)
        >>> walk(A, 2, policy=[0, 2]).verdict.requests_seen
        1
        >>> walk(A, 0).verdict.ended_in_final
        True
        >>> walk(A, 10, seed=3) == walk(A, 10, seed=3)
        True

    TESTS::

        >>> walk(A, 3, policy=[7])
        Traceback (most recent call last):
        ...
        msca.handle_error.SimulationError: step 0: no outgoing transition with index 7 at [0,0,0]
    """
    if a.is_empty():
        raise SimulationError("cannot walk through the empty automaton")
    if steps < 0:
        raise SimulationError("the number of steps must be non-negative")
    if policy == "random":
        script = None
        rng = random.Random(seed)
    elif isinstance(policy, str):
        raise SimulationError("unknown policy {!r}".format(policy))
    else:
        script = [int(x) for x in policy]
        policy = list(script)

    q = a.initial
    states = [q]
    taken = []
    for k in range(steps):
        out = a.outgoing(q)
        if script is not None:
            if k >= len(script):
                break
            if not 0 <= script[k] < len(out):
                raise SimulationError("step {}: no outgoing transition with index {} at {}".format(
                    k, script[k], format_state(q)))
            t = out[script[k]]
        else:
            if not out:
                break
            t = out[rng.randrange(len(out))]
        taken.append(t)
        q = t.target
        states.append(q)

    R = Reachability(a)
    left = steps - len(taken)
    distances = nx.single_source_shortest_path_length(R.graph, q, cutoff=left)
    verdict = Verdict(requests_seen=sum(1 for t in taken if t.label.is_request),
                      ended_in_final=any(p in a.finals for p in distances),
                      visited_coreachable=all(p in R.coreachable for p in states))
    logger.debug("walk of %d steps: %s", len(taken), verdict)
    return Walk(seed, policy, tuple(taken), tuple(states), verdict)
