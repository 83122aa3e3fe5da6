"""
Modal service contract automata

An automaton of rank `n` describes `n` services running side by side.
Its states and labels are vectors with one entry per service. Each entry
of a label is an action: a request ``?x``, an offer ``!x`` or idle
``-``. Transitions carry a modality: optional transitions can be
disabled by an orchestrator, urgent and lazy transitions (together the
*necessary* ones) must be honoured.

The textual notation used in docstrings and tests mirrors the usual
pictures of such automata::

    >>> from msca.core import transition
    >>> transition("[0,0,0]", "[!a,?a,-]", "[1,1,0]", "lazy")
    ([0,0,0], [!a,?a,-], [1,1,0], lazy)
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

import re
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .handle_error import ClassificationError


#: Reserved offer name of the silent step inserted by
#: :func:`msca.synth.split_lazy`. It is the only offer allowed to be urgent.
TAU = "τ"

name_re = re.compile(r"^\w+$")


class ActionKind(Enum):
    REQUEST = "?"
    OFFER = "!"
    IDLE = "-"


class LabelClass(Enum):
    REQUEST = "request"
    OFFER = "offer"
    MATCH = "match"


class Modality(Enum):
    """
    Modality of a transition.

    EXAMPLES::

        >>> from msca.core import Modality
        >>> Modality("lazy").is_necessary
        True
        >>> Modality.OPTIONAL.is_necessary
        False
    """
    OPTIONAL = "optional"
    URGENT = "urgent"
    LAZY = "lazy"

    @property
    def is_necessary(self):
        return self is not Modality.OPTIONAL

    @property
    def order(self):
        return _modality_order[self]

    def __str__(self):
        return self.value


_modality_order = {Modality.OPTIONAL: 0, Modality.URGENT: 1, Modality.LAZY: 2}


def combine_modalities(m1, m2):
    """
    Modality of a match built from two transitions with modalities
    ``m1`` and ``m2``: urgent beats lazy, lazy beats optional.

    EXAMPLES::

        >>> from msca.core import Modality, combine_modalities
        >>> combine_modalities(Modality.OPTIONAL, Modality.LAZY).value
        'lazy'
        >>> combine_modalities(Modality.LAZY, Modality.URGENT).value
        'urgent'
    """
    if Modality.URGENT in (m1, m2):
        return Modality.URGENT
    if Modality.LAZY in (m1, m2):
        return Modality.LAZY
    return Modality.OPTIONAL


@dataclass(frozen=True)
class Action:
    """
    A single action: ``?x``, ``!x`` or the idle action ``-``.

    EXAMPLES::

        >>> from msca.core import Action
        >>> a = Action.parse("?a")
        >>> a, a.kind.name, a.name
        (?a, 'REQUEST', 'a')
        >>> a.matches(Action.parse("!a"))
        True
        >>> a.matches(Action.parse("?a"))
        False
        >>> Action.parse("-").is_idle
        True

    TESTS::

        >>> Action.parse("a")
        Traceback (most recent call last):
        ...
        ValueError: invalid action 'a'
    """
    kind: ActionKind
    name: Optional[str] = None

    def __post_init__(self):
        if self.kind is ActionKind.IDLE:
            if self.name is not None:
                raise ValueError("the idle action has no name")
        elif not isinstance(self.name, str) or not name_re.match(self.name):
            raise ValueError("invalid action name {!r}".format(self.name))

    @classmethod
    def request(cls, name):
        return cls(ActionKind.REQUEST, name)

    @classmethod
    def offer(cls, name):
        return cls(ActionKind.OFFER, name)

    @classmethod
    def idle(cls):
        return IDLE

    @classmethod
    def parse(cls, text):
        text = text.strip()
        if text in ("-", "•"):
            return IDLE
        kind = {"?": ActionKind.REQUEST, "!": ActionKind.OFFER}.get(text[:1])
        if kind is None or not name_re.match(text[1:]):
            raise ValueError("invalid action {!r}".format(text))
        return cls(kind, text[1:])

    @property
    def is_idle(self):
        return self.kind is ActionKind.IDLE

    @property
    def is_request(self):
        return self.kind is ActionKind.REQUEST

    @property
    def is_offer(self):
        return self.kind is ActionKind.OFFER

    def matches(self, other):
        """
        Return whether ``self`` and ``other`` are a request and an offer
        of the same name.
        """
        return (self.name is not None and self.name == other.name and
                {self.kind, other.kind} == {ActionKind.REQUEST, ActionKind.OFFER})

    def __str__(self):
        if self.is_idle:
            return "-"
        return self.kind.value + self.name

    __repr__ = __str__


IDLE = Action(ActionKind.IDLE)


@dataclass(frozen=True)
class Label:
    """
    A vector of actions, one per service.

    A well-formed label is a request, an offer or a match: see
    :func:`classify_label`. Ill-formed labels can still be built so that
    :func:`validate` can report them.

    EXAMPLES::

        >>> from msca.core import Label
        >>> l = Label.parse("[!a,?a,-,-]")
        >>> l, len(l), l.requester, l.offerer
        ([!a,?a,-,-], 4, 1, 0)
        >>> l.is_match, l.is_request
        (True, False)
        >>> Label.parse("[?a,-]").requester
        0
    """
    actions: tuple

    def __post_init__(self):
        object.__setattr__(self, "actions", tuple(self.actions))
        # computed once, outside the compared fields
        try:
            label_class = classify_label(self)
        except ClassificationError:
            label_class = None
        object.__setattr__(self, "_label_class", label_class)

    @classmethod
    def parse(cls, text):
        text = text.strip()
        if not (text.startswith("[") and text.endswith("]")):
            raise ValueError("invalid label {!r}".format(text))
        return cls(Action.parse(x) for x in text[1:-1].split(","))

    @classmethod
    def single(cls, rank, j, action):
        """
        The label of rank ``rank`` with ``action`` at index ``j`` and idle
        actions everywhere else.
        """
        actions = [IDLE] * rank
        actions[j] = action
        return cls(actions)

    def __len__(self):
        return len(self.actions)

    def __iter__(self):
        return iter(self.actions)

    def __getitem__(self, i):
        return self.actions[i]

    def non_idle(self):
        """
        Return the list of pairs ``(index, action)`` of non-idle actions.
        """
        return [(i, x) for i, x in enumerate(self.actions) if not x.is_idle]

    @property
    def label_class(self):
        """
        The class of the label, or ``None`` if it is ill-formed.
        """
        return self._label_class

    @property
    def is_request(self):
        return self.label_class is LabelClass.REQUEST

    @property
    def is_offer(self):
        return self.label_class is LabelClass.OFFER

    @property
    def is_match(self):
        return self.label_class is LabelClass.MATCH

    @property
    def requester(self):
        """
        Index of the requesting component, or ``None``.
        """
        for i, x in enumerate(self.actions):
            if x.is_request:
                return i
        return None

    @property
    def offerer(self):
        """
        Index of the offering component, or ``None``.
        """
        for i, x in enumerate(self.actions):
            if x.is_offer:
                return i
        return None

    def sort_key(self):
        return tuple(str(x) for x in self.actions)

    def __str__(self):
        return "[" + ",".join(str(x) for x in self.actions) + "]"

    __repr__ = __str__


def classify_label(label):
    """
    Return whether ``label`` is a request, an offer or a match.

    INPUT:

    - ``label`` -- a :class:`Label`

    OUTPUT: a :class:`LabelClass`

    EXAMPLES::

        >>> from msca.core import Label, classify_label
        >>> classify_label(Label.parse("[!a,?a,-,-]")).value
        'match'
        >>> classify_label(Label.parse("[?a,-]")).value
        'request'
        >>> classify_label(Label.parse("[-,!b]")).value
        'offer'

    TESTS::

        >>> classify_label(Label.parse("[-,-]"))
        Traceback (most recent call last):
        ...
        msca.handle_error.ClassificationError: no non-idle action
        >>> classify_label(Label.parse("[!a,!a]"))
        Traceback (most recent call last):
        ...
        msca.handle_error.ClassificationError: two non-idle actions that do not match: !a and !a
        >>> classify_label(Label.parse("[!a,?a,?b]"))
        Traceback (most recent call last):
        ...
        msca.handle_error.ClassificationError: more than two non-idle actions
    """
    acts = [x for x in label.actions if not x.is_idle]
    if not acts:
        raise ClassificationError("no non-idle action")
    if len(acts) == 1:
        return LabelClass.REQUEST if acts[0].is_request else LabelClass.OFFER
    if len(acts) > 2:
        raise ClassificationError("more than two non-idle actions")
    if not acts[0].matches(acts[1]):
        raise ClassificationError(
            "two non-idle actions that do not match: {} and {}".format(*acts))
    return LabelClass.MATCH


def parse_state(text):
    """
    Parse a state vector written as ``[q1,...,qn]``.

    EXAMPLES::

        >>> from msca.core import parse_state, format_state
        >>> parse_state("[a1, b0,c0]")
        ('a1', 'b0', 'c0')
        >>> format_state(('a1', 'b0', 'c0'))
        '[a1,b0,c0]'
    """
    if isinstance(text, tuple):
        return text
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ValueError("invalid state {!r}".format(text))
    return tuple(x.strip() for x in text[1:-1].split(","))


def format_state(q):
    return "[" + ",".join(q) + "]"


@dataclass(frozen=True)
class Transition:
    """
    A transition ``(source, label, target, modality)``.

    ``source`` and ``target`` are tuples of basic states.
    """
    source: tuple
    label: Label
    target: tuple
    modality: Modality = Modality.OPTIONAL

    def __post_init__(self):
        object.__setattr__(self, "source", tuple(self.source))
        object.__setattr__(self, "target", tuple(self.target))
        object.__setattr__(self, "modality", Modality(self.modality))

    @property
    def is_necessary(self):
        return self.modality.is_necessary

    @property
    def is_lazy(self):
        return self.modality is Modality.LAZY

    @property
    def is_urgent(self):
        return self.modality is Modality.URGENT

    def sort_key(self):
        return (self.source, self.label.sort_key(), self.target, self.modality.order)

    def __str__(self):
        return "({}, {}, {}, {})".format(format_state(self.source), self.label,
                                         format_state(self.target), self.modality)

    __repr__ = __str__


def transition(source, label, target, modality=Modality.OPTIONAL):
    """
    Build a :class:`Transition` from its textual notation.

    EXAMPLES::

        >>> from msca.core import transition
        >>> t = transition("[1,0,1]", "[-,?a,-]", "[1,1,1]", "lazy")
        >>> t.source, t.is_lazy
        (('1', '0', '1'), True)
    """
    if isinstance(label, str):
        label = Label.parse(label)
    return Transition(parse_state(source), label, parse_state(target), Modality(modality))


def sorted_states(states):
    return sorted(states)


def sorted_transitions(transitions):
    return sorted(transitions, key=Transition.sort_key)


class MSCA(object):
    """
    A modal service contract automaton.

    Instances are immutable: all operations build new automata. The
    automaton without states stands for "no orchestration"; see
    :meth:`empty`.

    INPUT:

    - ``rank`` -- number of services

    - ``states`` -- iterable of state vectors (tuples of strings)

    - ``initial`` -- initial state vector (``None`` only for the empty
      automaton)

    - ``finals`` -- iterable of final state vectors

    - ``transitions`` -- iterable of :class:`Transition`

    - ``operands`` -- (optional) the automata this one was composed of

    EXAMPLES::

        >>> from msca.core import MSCA, transition
        >>> client1 = MSCA(1, [("0",), ("1",)], ("0",), [("0",), ("1",)],
        ...                [transition("[0]", "[!b]", "[0]"),
        ...                 transition("[0]", "[?a]", "[1]")])
        >>> client1
        MSCA of rank 1 with 2 states and 2 transitions
        >>> sorted(client1.request_alphabet), sorted(client1.offer_alphabet)
        (['a'], ['b'])
        >>> client1.outgoing(("0",))
        [([0], [!b], [0], optional), ([0], [?a], [1], optional)]
        >>> MSCA.empty(3)
        empty MSCA of rank 3
    """
    def __init__(self, rank, states, initial, finals, transitions, operands=()):
        self.rank = rank
        self.states = frozenset(tuple(q) for q in states)
        self.initial = None if initial is None else tuple(initial)
        self.finals = frozenset(tuple(q) for q in finals)
        self.transitions = frozenset(transitions)
        self.operands = tuple(operands)
        self._outgoing = None

    @classmethod
    def empty(cls, rank):
        return cls(rank, (), None, (), ())

    def is_empty(self):
        return not self.states

    @property
    def request_alphabet(self):
        return frozenset(x.name for t in self.transitions for x in t.label if x.is_request)

    @property
    def offer_alphabet(self):
        return frozenset(x.name for t in self.transitions for x in t.label if x.is_offer)

    def outgoing(self, q):
        """
        Return the transitions leaving ``q``, in canonical order.
        """
        if self._outgoing is None:
            out = {}
            for t in sorted_transitions(self.transitions):
                out.setdefault(t.source, []).append(t)
            self._outgoing = out
        return list(self._outgoing.get(tuple(q), ()))

    def restrict(self, transitions):
        """
        Return the automaton with the same states but only ``transitions``.
        """
        return MSCA(self.rank, self.states, self.initial, self.finals,
                    transitions, self.operands)

    def _key(self):
        return (self.rank, self.states, self.initial, self.finals, self.transitions)

    def __eq__(self, other):
        if not isinstance(other, MSCA):
            return NotImplemented
        return self._key() == other._key()

    def __ne__(self, other):
        if not isinstance(other, MSCA):
            return NotImplemented
        return self._key() != other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        if self.is_empty():
            return "empty MSCA of rank {}".format(self.rank)
        return "MSCA of rank {} with {} states and {} transitions".format(
            self.rank, len(self.states), len(self.transitions))


@dataclass(frozen=True)
class Violation:
    """
    One violated well-formedness condition.

    ``subject`` is the offending state, transition or value.
    """
    message: str
    subject: object = None

    def __str__(self):
        if self.subject is None:
            return self.message
        if isinstance(self.subject, tuple):
            return "{}: {}".format(self.message, format_state(self.subject))
        return "{}: {}".format(self.message, self.subject)


def validate(a):
    """
    Check all well-formedness conditions of ``a``.

    OUTPUT: a list of :class:`Violation`, empty iff ``a`` is well-formed

    EXAMPLES::

        >>> from msca.core import MSCA, transition, validate
        >>> a = MSCA(1, [("0",), ("1",)], ("0",), [("1",)],
        ...          [transition("[0]", "[!b]", "[0]", "lazy")])
        >>> for v in validate(a): print(v)
        offer must be optional: ([0], [!b], [0], lazy)
        >>> b = MSCA(2, [("0", "0"), ("1", "1")], ("0", "0"), [],
        ...          [transition("[0,0]", "[-,?a]", "[1,1]")])
        >>> for v in validate(b): print(v)
        idle component must not change state (index 0): ([0,0], [-,?a], [1,1], optional)
        >>> validate(MSCA.empty(2))
        []
    """
    violations = []

    def fail(message, subject=None):
        violations.append(Violation(message, subject))

    if not isinstance(a.rank, int) or a.rank < 1:
        fail("rank must be a positive integer", a.rank)
        return violations

    if a.is_empty():
        if a.initial is not None:
            fail("the empty automaton has no initial state", a.initial)
        if a.finals:
            fail("the empty automaton has no final states")
        if a.transitions:
            fail("the empty automaton has no transitions")
        return violations

    for q in sorted_states(a.states):
        if len(q) != a.rank:
            fail("state has wrong length", q)
    if a.initial is None:
        fail("initial state is missing")
    elif a.initial not in a.states:
        fail("initial state is not a state", a.initial)
    for q in sorted_states(a.finals - a.states):
        fail("final state is not a state", q)

    for t in sorted_transitions(a.transitions):
        if t.source not in a.states:
            fail("source is not a state", t)
        if t.target not in a.states:
            fail("target is not a state", t)
        if len(t.label) != a.rank:
            fail("label has wrong length", t)
            continue
        try:
            cls = classify_label(t.label)
        except ClassificationError as err:
            fail("ill-formed label ({})".format(err), t)
            continue
        for i, x in enumerate(t.label):
            if x.is_idle and (i >= len(t.source) or i >= len(t.target) or
                              t.source[i] != t.target[i]):
                fail("idle component must not change state (index {})".format(i), t)
        if (cls is LabelClass.OFFER and t.modality is not Modality.OPTIONAL
                and t.label[t.label.offerer].name != TAU):
            fail("offer must be optional", t)
    return violations
