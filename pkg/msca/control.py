"""
Controllability of transitions

Optional transitions are controllable and urgent ones are not, whatever
the semantics. Lazy transitions are *semi-controllable*: whether the
orchestrator may disable a lazy request depends on whether the request
can be matched elsewhere, and the four :class:`Semantics` differ in
where "elsewhere" may be:

- ``original``: some necessary match of the same service in the same
  local state performs the same request, anywhere in the sub-automaton;

- ``refined``: such a lazy match must be reachable from the source of
  the transition while the requesting service stays idle;

- ``forall``: from a single anchor state, every lazy request of the
  service in that local state must be reachable in that way;

- ``mpc``: lazy transitions count as urgent.
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

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .core import Modality, Transition, sorted_states, sorted_transitions
from .compose import principals as principals_of
from .handle_error import ControllabilityError
from .reach import Reachability


class Semantics(Enum):
    ORIGINAL = "original"
    REFINED = "refined"
    FORALL = "forall"
    MPC = "mpc"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Witness:
    """
    Why a lazy transition is controllable.

    - ``transitions`` -- the matches ``t'`` (one per request name under
      ``forall``, a single one otherwise)

    - ``anchor`` -- the anchor state (``forall`` only)

    - ``paths`` -- for each match, the idle path leading to it, ending
      with the match itself (``refined`` and ``forall`` only)
    """
    transitions: tuple
    anchor: Optional[tuple] = None
    paths: tuple = ()


@dataclass(frozen=True)
class ControllabilityVerdict:
    transition: Transition
    semantics: Semantics
    controllable: bool
    witness: Optional[Witness] = None

    def __bool__(self):
        return self.controllable


class ControllabilityChecker(object):
    """
    Decide controllability of transitions of ``a`` within the
    sub-automaton ``a_prime``.

    All the reachability work on ``a_prime`` is shared between the
    queries, so that asking about many transitions is cheap.

    INPUT:

    - ``a`` -- the original automaton

    - ``a_prime`` -- an automaton whose transitions are transitions of ``a``

    - ``principals`` -- (optional) the principals of ``a``, only used by
      the ``forall`` semantics; derived from ``a`` when omitted

    EXAMPLES::

        >>> from msca import corpus
        >>> from msca.core import transition
        >>> from msca.compose import compose
        >>> from msca.control import ControllabilityChecker
        >>> A = compose([corpus.load(n) for n in ("alice", "bob", "carl")])
        >>> C = ControllabilityChecker(A, A)
        >>> t = transition("[a1,b0,c0]", "[-,?d,-]", "[a1,b2,c0]", "lazy")
        >>> C.verdict(t, "original").witness.transitions
        (([a2,b0,c0], [!d,?d,-], [a4,b2,c0], lazy),)
        >>> C.verdict(t, "refined").controllable
        False
        >>> v = C.verdict(t, "forall")
        >>> v.controllable, v.witness.anchor
        (True, ('a0', 'b0', 'c0'))
        >>> C.verdict(t, "mpc").controllable
        False
    """
    def __init__(self, a, a_prime, principals=None, check=True):
        if check:
            if not a_prime.transitions <= a.transitions:
                raise ControllabilityError("the transitions of the sub-automaton are not transitions of the automaton")
            if not a_prime.states <= a.states:
                raise ControllabilityError("the states of the sub-automaton are not states of the automaton")
        if principals is not None:
            principals = list(principals)
            if len(principals) != a.rank or any(p.rank != 1 for p in principals):
                raise ControllabilityError("expected {} principals of rank 1".format(a.rank))
        self.a = a
        self.a_prime = a_prime
        self.reach = Reachability(a_prime)
        self._principals = principals

        # necessary matches with non-dangling endpoints, indexed by
        # (requesting component, its local state, request name)
        self._matches = {}
        dangling = self.reach.dangling
        for t in sorted_transitions(a_prime.transitions):
            if (t.is_necessary and t.label.is_match and
                    t.source not in dangling and t.target not in dangling):
                j = t.label.requester
                self._matches.setdefault((j, t.source[j], t.label[j].name), []).append(t)
        self._cache = {}

    @property
    def principals(self):
        if self._principals is None:
            self._principals = principals_of(self.a)
        return self._principals

    def _candidates(self, j, local, name, lazy_only):
        found = self._matches.get((j, local, name), ())
        if lazy_only:
            return [t for t in found if t.is_lazy]
        return found

    def verdict(self, t, semantics):
        """
        Return the :class:`ControllabilityVerdict` of ``t``.
        """
        sem = Semantics(semantics)
        if t not in self.a.transitions:
            raise ControllabilityError("{} is not a transition of the automaton".format(t))
        if t.modality is Modality.OPTIONAL:
            return ControllabilityVerdict(t, sem, True)
        if t.modality is Modality.URGENT or sem is Semantics.MPC:
            return ControllabilityVerdict(t, sem, False)

        j = t.label.requester
        if j is None:
            return ControllabilityVerdict(t, sem, False)
        local = t.source[j]
        name = t.label[j].name

        if sem is Semantics.ORIGINAL:
            key = (sem, j, local, name)
        elif sem is Semantics.REFINED:
            key = (sem, j, t.source, name)
        else:
            key = (sem, j, local)
        witness = self._cache.get(key, False)
        if witness is False:
            if sem is Semantics.ORIGINAL:
                witness = self._original(j, local, name)
            elif sem is Semantics.REFINED:
                witness = self._refined(j, t.source, name)
            else:
                witness = self._forall(j, local)
            self._cache[key] = witness
        return ControllabilityVerdict(t, sem, witness is not None, witness)

    def _original(self, j, local, name):
        found = self._candidates(j, local, name, False)
        if found:
            return Witness((found[0],))
        return None

    def _refined(self, j, source, name):
        states = self.reach.idle_reachable_states(source, j)
        for c in self._candidates(j, source[j], name, True):
            if c.source in states:
                return Witness((c,), None, (self.reach.idle_path(source, c, j),))
        return None

    def _forall(self, j, local):
        principal = self.principals[j]
        names = sorted({t.label[0].name for t in principal.transitions
                        if t.source == (local,) and t.is_lazy and t.label[0].is_request})
        for anchor in sorted_states(self.a_prime.states - self.reach.dangling):
            states = self.reach.idle_reachable_states(anchor, j)
            chosen = []
            for x in names:
                found = [c for c in self._candidates(j, local, x, True) if c.source in states]
                if not found:
                    break
                chosen.append(found[0])
            else:
                paths = tuple(self.reach.idle_path(anchor, c, j) for c in chosen)
                return Witness(tuple(chosen), anchor, paths)
        return None


def is_controllable(t, a, a_prime, principals=None, sem=Semantics.ORIGINAL):
    """
    Decide whether the transition ``t`` of ``a`` is controllable in the
    sub-automaton ``a_prime`` under the semantics ``sem``.

    INPUT:

    - ``t`` -- a transition of ``a``

    - ``a`` -- an :class:`~msca.core.MSCA`

    - ``a_prime`` -- an automaton whose transitions are transitions of ``a``

    - ``principals`` -- (optional) principals of ``a`` for ``forall``

    - ``sem`` -- a :class:`Semantics` or its name

    OUTPUT: a :class:`ControllabilityVerdict`, which is true iff ``t`` is
    controllable

    EXAMPLES::

        >>> from msca import corpus
        >>> from msca.core import transition
        >>> from msca.compose import compose
        >>> from msca.control import is_controllable
        >>> A = compose([corpus.load("server"), corpus.load("client2"), corpus.load("client2")])
        >>> t1 = transition("[1,0,1]", "[-,?a,-]", "[1,1,1]", "lazy")
        >>> K1 = A.restrict(t for t in A.transitions if not t.label.is_request)
        >>> v = is_controllable(t1, A, K1, sem="original")
        >>> v.controllable, v.witness.transitions
        (True, (([0,0,0], [!a,?a,-], [1,1,0], lazy),))
        >>> bool(is_controllable(t1, A, K1, sem="mpc"))
        False

    TESTS::

        >>> is_controllable(t1, K1, A)
        Traceback (most recent call last):
        ...
        msca.handle_error.ControllabilityError: the transitions of the sub-automaton are not transitions of the automaton
    """
    return ControllabilityChecker(a, a_prime, principals).verdict(t, sem)
