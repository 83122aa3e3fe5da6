"""
Reachability, co-reachability and dangling states
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

import networkx as nx

from .core import MSCA, sorted_transitions

logger = logging.getLogger(__name__)


def transition_graph(a):
    """
    Return the ``networkx.DiGraph`` of the states and transitions of ``a``.
    """
    g = nx.DiGraph()
    g.add_nodes_from(a.states)
    g.add_edges_from((t.source, t.target) for t in a.transitions)
    return g


class Reachability(object):
    """
    Reachability facts about one automaton, computed once and shared by
    all queries.

    Idle graphs and the sets of states reachable through them are cached
    per component index.

    EXAMPLES::

        >>> from msca.core import MSCA, transition
        >>> from msca.reach import Reachability
        >>> a = MSCA(2, [("0", "0"), ("1", "0"), ("1", "1")], ("0", "0"), [("1", "1")],
        ...          [transition("[0,0]", "[!a,-]", "[1,0]"),
        ...           transition("[1,0]", "[-,?b]", "[1,1]")])
        >>> R = Reachability(a)
        >>> sorted(R.idle_reachable_states(("0", "0"), 1))
        [('0', '0'), ('1', '0')]
        >>> R.idle_path(("0", "0"), transition("[1,0]", "[-,?b]", "[1,1]"), 1)
        (([0,0], [!a,-], [1,0], optional), ([1,0], [-,?b], [1,1], optional))
    """
    def __init__(self, a):
        self.automaton = a
        self.graph = transition_graph(a)
        if a.is_empty():
            self.reachable = frozenset()
            self.coreachable = frozenset()
        else:
            self.reachable = frozenset(nx.descendants(self.graph, a.initial)) | {a.initial}
            finals = a.finals & a.states
            if finals:
                dist = nx.multi_source_dijkstra_path_length(
                    self.graph.reverse(copy=False), set(finals))
                self.coreachable = frozenset(dist)
            else:
                self.coreachable = frozenset()
        self.dangling = a.states - (self.reachable & self.coreachable)
        logger.debug("%d reachable, %d co-reachable, %d dangling states",
                     len(self.reachable), len(self.coreachable), len(self.dangling))
        self._idle_graphs = {}
        self._idle_reach = {}

    def idle_graph(self, j, forbidden=frozenset()):
        """
        Graph of the transitions idle at component ``j`` between states
        that are neither dangling nor forbidden.

        Each edge stores the least transition (in canonical order)
        producing it in its ``transition`` attribute.
        """
        forbidden = frozenset(forbidden)
        key = (j, forbidden)
        g = self._idle_graphs.get(key)
        if g is None:
            blocked = self.dangling | forbidden
            g = nx.DiGraph()
            g.add_nodes_from(q for q in sorted(self.automaton.states) if q not in blocked)
            for t in sorted_transitions(self.automaton.transitions):
                if (t.label[j].is_idle and t.source not in blocked and
                        t.target not in blocked and not g.has_edge(t.source, t.target)):
                    g.add_edge(t.source, t.target, transition=t)
            self._idle_graphs[key] = g
        return g

    def idle_reachable_states(self, q, j, forbidden=frozenset()):
        """
        States reachable from ``q`` through transitions idle at ``j``,
        avoiding dangling and forbidden states (``q`` included if allowed).
        """
        forbidden = frozenset(forbidden)
        key = (q, j, forbidden)
        result = self._idle_reach.get(key)
        if result is None:
            g = self.idle_graph(j, forbidden)
            if q in g:
                result = frozenset(nx.descendants(g, q)) | {q}
            else:
                result = frozenset()
            self._idle_reach[key] = result
        return result

    def reachable_via_idle(self, q, j, forbidden=frozenset()):
        """
        See :func:`reachable_via_idle`.
        """
        blocked = self.dangling | frozenset(forbidden)
        sources = self.idle_reachable_states(q, j, forbidden)
        return frozenset(t for t in self.automaton.transitions
                         if t.source in sources and t.target not in blocked)

    def idle_path(self, q, t, j, forbidden=frozenset()):
        """
        Return a shortest sequence of transitions idle at ``j`` leading
        from ``q`` to the source of ``t``, followed by ``t`` itself, or
        ``None`` if there is none.
        """
        g = self.idle_graph(j, forbidden)
        if q not in g or t.source not in g or t.target not in g:
            return None
        try:
            nodes = nx.shortest_path(g, q, t.source)
        except nx.NetworkXNoPath:
            return None
        steps = [g.edges[u, v]["transition"] for u, v in zip(nodes, nodes[1:])]
        return tuple(steps) + (t,)


def reachable(a):
    """
    Return the set of states reachable from the initial state.
    """
    return Reachability(a).reachable


def coreachable(a):
    """
    Return the set of states from which a final state is reachable.
    """
    return Reachability(a).coreachable


def dangling(a):
    """
    Return the states of ``a`` that are unreachable or cannot reach a
    final state.

    EXAMPLES::

        >>> from msca.core import MSCA, transition
        >>> from msca.reach import dangling
        >>> a = MSCA(1, [("0",), ("1",), ("2",)], ("0",), [("2",)],
        ...          [transition("[0]", "[!a]", "[1]")])
        >>> sorted(dangling(a))
        [('0',), ('1',), ('2',)]
        >>> b = MSCA(1, [("0",), ("1",)], ("0",), [("0",)],
        ...          [transition("[0]", "[!a]", "[1]")])
        >>> sorted(dangling(b))
        [('1',)]
        >>> dangling(MSCA.empty(2))
        frozenset()
    """
    return Reachability(a).dangling


def reachable_via_idle(a, source, j, forbidden=frozenset()):
    """
    Return the transitions of ``a`` that can be reached from ``source``
    by a (possibly empty) sequence of transitions idle at component
    ``j``, all visited states being neither dangling nor forbidden.

    The last transition itself need not be idle at ``j``.

    INPUT:

    - ``a`` -- an :class:`~msca.core.MSCA`

    - ``source`` -- a state of ``a``

    - ``j`` -- a component index

    - ``forbidden`` -- (default: empty) states to avoid
    """
    return Reachability(a).reachable_via_idle(tuple(source), j, forbidden)


def trim(a):
    """
    Return the sub-automaton of ``a`` on the states that are both
    reachable and co-reachable; the empty automaton if there is none.

    EXAMPLES::

        >>> from msca.core import MSCA, transition
        >>> from msca.reach import trim
        >>> a = MSCA(1, [("0",), ("1",), ("2",)], ("0",), [("1",)],
        ...          [transition("[0]", "[!a]", "[1]"),
        ...           transition("[0]", "[!b]", "[2]")])
        >>> trim(a).transitions
        frozenset({([0], [!a], [1], optional)})
        >>> trim(MSCA(1, [("0",)], ("0",), [], []))
        empty MSCA of rank 1
    """
    R = Reachability(a)
    keep = a.states - R.dangling
    if a.is_empty() or a.initial not in keep:
        return MSCA.empty(a.rank)
    return MSCA(a.rank, keep, a.initial, a.finals & keep,
                [t for t in a.transitions if t.source in keep and t.target in keep],
                a.operands)
