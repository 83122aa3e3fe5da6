"""
Reading and writing automata, traces and DOT pictures

Automata are stored as JSON documents (extension ``.msca.json``)::

    {
      "format_version": 1,
      "rank": 1,
      "states": [["0"], ["1"]],
      "initial": ["0"],
      "finals": [["1"]],
      "transitions": [
        {"source": ["0"], "label": ["?a"], "target": ["1"], "modality": "lazy"}
      ]
    }

and may embed the documents of the automata they were composed of under
``operands``. Output is canonical: states and transitions are sorted,
indentation is two spaces and the text ends with a newline, so that
saving the same automaton always produces the same bytes.
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

import json
import logging
import os

import pydot

from .core import (MSCA, Label, Modality, Transition, format_state,
                   sorted_states, sorted_transitions, validate)
from .control import Semantics
from .handle_error import FormatError
from .synth import DANGLING, UNCONTROLLABLE, FinalTrim, Iteration, SynthesisTrace

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1

AUTOMATON_EXTENSION = ".msca.json"
TRACE_EXTENSION = ".trace.json"
DOT_EXTENSION = ".dot"


def dumps(doc):
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def transition_to_document(t):
    return {"source": list(t.source),
            "label": [str(x) for x in t.label],
            "target": list(t.target),
            "modality": t.modality.value}


def to_document(a):
    """
    Return the JSON-compatible document describing ``a``.
    """
    doc = {"format_version": FORMAT_VERSION,
           "rank": a.rank,
           "states": [list(q) for q in sorted_states(a.states)],
           "initial": None if a.initial is None else list(a.initial),
           "finals": [list(q) for q in sorted_states(a.finals)],
           "transitions": [transition_to_document(t) for t in sorted_transitions(a.transitions)]}
    if a.operands:
        doc["operands"] = [to_document(op) for op in a.operands]
    return doc


def save(a):
    """
    Return the canonical JSON text of ``a``.

    EXAMPLES::

        >>> from msca import corpus
        >>> from msca.io import save
        >>> print(save(corpus.load("bob")), end="")
        {
          "format_version": 1,
          "rank": 1,
          "states": [
            [
              "b0"
            ],
        ...
          "transitions": [
            {
              "source": [
                "b0"
              ],
              "label": [
                "?c"
              ],
              "target": [
                "b1"
              ],
              "modality": "lazy"
            },
        ...
    """
    return dumps(to_document(a))


def _expect(doc, key, types, where):
    if not isinstance(doc, dict) or key not in doc:
        raise FormatError("missing field", field=where + key)
    value = doc[key]
    if not isinstance(value, types) or isinstance(value, bool) and bool not in _as_tuple(types):
        raise FormatError("expected {}".format(_type_names(types)), field=where + key)
    return value


def _as_tuple(types):
    return types if isinstance(types, tuple) else (types,)


def _type_names(types):
    names = {list: "a list", int: "an integer", str: "a string", dict: "an object",
             type(None): "null"}
    return " or ".join(names.get(t, t.__name__) for t in _as_tuple(types))


def _state(value, field):
    if not isinstance(value, list) or not all(isinstance(x, str) for x in value):
        raise FormatError("expected a list of strings", field=field)
    return tuple(value)


def _transition(doc, field):
    source = _state(_expect(doc, "source", list, field + "."), field + ".source")
    target = _state(_expect(doc, "target", list, field + "."), field + ".target")
    actions = _expect(doc, "label", list, field + ".")
    try:
        label = Label.parse("[" + ",".join(actions) + "]")
    except (TypeError, ValueError) as err:
        raise FormatError(str(err), field=field + ".label")
    modality = _expect(doc, "modality", str, field + ".")
    try:
        modality = Modality(modality)
    except ValueError:
        raise FormatError("unknown modality {!r}".format(modality), field=field + ".modality")
    return Transition(source, label, target, modality)


def from_document(doc, where="", check=True):
    """
    Build an automaton from a JSON-compatible document.

    Unless ``check`` is false the automaton is validated; violations
    raise :class:`FormatError`.
    """
    version = _expect(doc, "format_version", int, where)
    if version != FORMAT_VERSION:
        raise FormatError("unsupported format version {}".format(version),
                          field=where + "format_version")
    rank = _expect(doc, "rank", int, where)
    states = [_state(q, "{}states[{}]".format(where, i))
              for i, q in enumerate(_expect(doc, "states", list, where))]
    initial = _expect(doc, "initial", (list, type(None)), where)
    if initial is not None:
        initial = _state(initial, where + "initial")
    finals = [_state(q, "{}finals[{}]".format(where, i))
              for i, q in enumerate(_expect(doc, "finals", list, where))]
    transitions = [_transition(t, "{}transitions[{}]".format(where, i))
                   for i, t in enumerate(_expect(doc, "transitions", list, where))]
    operands = []
    if "operands" in doc:
        operands = [from_document(op, "{}operands[{}].".format(where, i), check)
                    for i, op in enumerate(_expect(doc, "operands", list, where))]
    a = MSCA(rank, states, initial, finals, transitions, operands)
    violations = validate(a) if check else ()
    if violations:
        raise FormatError("; ".join(str(v) for v in violations),
                          field=where.rstrip(".") or "automaton", violations=violations)
    return a


def decode(data):
    """
    Return the bytes ``data`` decoded as UTF-8.

    EXAMPLES::

        >>> from msca.io import decode
        >>> decode(b'{"rank": 1}')
        '{"rank": 1}'
        >>> decode(b'{"rank": \\xff}')
        Traceback (most recent call last):
        ...
        msca.handle_error.FormatError: invalid UTF-8 at byte 9: invalid start byte
    """
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as err:
        raise FormatError("invalid UTF-8 at byte {}: {}".format(err.start, err.reason))


def load(text, check=True):
    """
    Read an automaton from its JSON text.

    EXAMPLES::

        >>> from msca.io import load
        >>> bob = load('''{"format_version": 1, "rank": 1,
        ...   "states": [["b0"], ["b1"], ["b2"]], "initial": ["b0"],
        ...   "finals": [["b1"], ["b2"]],
        ...   "transitions": [
        ...     {"source": ["b0"], "label": ["?c"], "target": ["b1"], "modality": "lazy"},
        ...     {"source": ["b0"], "label": ["?d"], "target": ["b2"], "modality": "lazy"}]}''')
        >>> bob
        MSCA of rank 1 with 3 states and 2 transitions

    Errors locate the problem::

        >>> load('{"format_version": 1, "rank": }')
        Traceback (most recent call last):
        ...
        msca.handle_error.FormatError: line 1, column 31: Expecting value
        >>> load('{"format_version": 1, "rank": 1, "states": [["0"]], "initial": ["0"], '
        ...      '"finals": [], "transitions": [{"source": ["0"], "label": ["!b"], '
        ...      '"target": ["0"], "modality": "lazy"}]}')
        Traceback (most recent call last):
        ...
        msca.handle_error.FormatError: automaton: offer must be optional: ([0], [!b], [0], lazy)
        >>> load('{"format_version": 1, "rank": 1, "states": {}}')
        Traceback (most recent call last):
        ...
        msca.handle_error.FormatError: states: expected a list
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise FormatError(err.msg, line=err.lineno, column=err.colno)
    return from_document(doc, check=check)


def write_text(text, filename):
    """
    Write ``text`` to ``filename`` through a temporary file, so that the
    file is either untouched or completely written.
    """
    tmp = filename + ".tmp"
    with open(tmp, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)
    os.replace(tmp, filename)


def save_file(a, filename):
    logger.debug("writing %s", filename)
    write_text(save(a), filename)


def load_file(filename, check=True):
    logger.debug("reading %s", filename)
    with open(filename, "rb") as f:
        return load(decode(f.read()), check)


def trace_to_document(trace):
    """
    Return the JSON-compatible document of a
    :class:`~msca.synth.SynthesisTrace`.
    """
    return {
        "format_version": FORMAT_VERSION,
        "kind": "synthesis",
        "semantics": trace.semantics.value,
        "initial_forbidden": [list(q) for q in trace.initial_forbidden],
        "iterations": [
            {"index": it.index,
             "removed_transitions": [transition_to_document(t) for t in it.removed_transitions],
             "forbidden": [{"state": list(q), "reason": reason} for q, reason in it.forbidden],
             "uncontrollable": [transition_to_document(t) for t in it.uncontrollable]}
            for it in trace.iterations],
        "fixpoint_index": trace.fixpoint_index,
        "final_trim": {
            "removed_states": [list(q) for q in trace.final_trim.removed_states],
            "removed_transitions": [transition_to_document(t)
                                    for t in trace.final_trim.removed_transitions]},
        "empty": trace.empty,
    }


def trace_to_json(trace):
    return dumps(trace_to_document(trace))


def _states(values, field):
    return tuple(_state(q, "{}[{}]".format(field, i)) for i, q in enumerate(values))


def _transitions(values, field):
    return tuple(_transition(t, "{}[{}]".format(field, i)) for i, t in enumerate(values))


def trace_from_document(doc):
    """
    Rebuild a :class:`~msca.synth.SynthesisTrace` from its document.

    EXAMPLES::

        >>> from msca import corpus
        >>> from msca.compose import compose
        >>> from msca.io import trace_from_json, trace_to_json
        >>> from msca.synth import synthesize
        >>> A = compose([corpus.load(n) for n in ("server", "client2", "client2")])
        >>> _, trace = synthesize(A, "original")
        >>> trace_from_json(trace_to_json(trace)) == trace
        True
        >>> trace_from_json('{"format_version": 1, "kind": "walk"}')
        Traceback (most recent call last):
        ...
        msca.handle_error.FormatError: kind: expected 'synthesis', got 'walk'
    """
    version = _expect(doc, "format_version", int, "")
    if version != FORMAT_VERSION:
        raise FormatError("unsupported format version {}".format(version),
                          field="format_version")
    kind = _expect(doc, "kind", str, "")
    if kind != "synthesis":
        raise FormatError("expected 'synthesis', got {!r}".format(kind), field="kind")
    semantics = _expect(doc, "semantics", str, "")
    try:
        semantics = Semantics(semantics)
    except ValueError:
        raise FormatError("unknown semantics {!r}".format(semantics), field="semantics")
    iterations = []
    for i, it in enumerate(_expect(doc, "iterations", list, "")):
        where = "iterations[{}].".format(i)
        forbidden = []
        for k, entry in enumerate(_expect(it, "forbidden", list, where)):
            field = "{}forbidden[{}]".format(where, k)
            q = _state(_expect(entry, "state", list, field + "."), field + ".state")
            reason = _expect(entry, "reason", str, field + ".")
            if reason not in (UNCONTROLLABLE, DANGLING):
                raise FormatError("unknown reason {!r}".format(reason), field=field + ".reason")
            forbidden.append((q, reason))
        iterations.append(Iteration(
            _expect(it, "index", int, where),
            _transitions(_expect(it, "removed_transitions", list, where),
                         where + "removed_transitions"),
            tuple(forbidden),
            _transitions(_expect(it, "uncontrollable", list, where), where + "uncontrollable")))
    trim = _expect(doc, "final_trim", dict, "")
    final_trim = FinalTrim(
        _states(_expect(trim, "removed_states", list, "final_trim."),
                "final_trim.removed_states"),
        _transitions(_expect(trim, "removed_transitions", list, "final_trim."),
                     "final_trim.removed_transitions"))
    return SynthesisTrace(
        semantics,
        _states(_expect(doc, "initial_forbidden", list, ""), "initial_forbidden"),
        iterations,
        _expect(doc, "fixpoint_index", int, ""),
        final_trim,
        _expect(doc, "empty", bool, ""))


def trace_from_json(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise FormatError(err.msg, line=err.lineno, column=err.colno)
    return trace_from_document(doc)


def load_trace(filename):
    logger.debug("reading %s", filename)
    with open(filename, "rb") as f:
        return trace_from_json(decode(f.read()))


def walk_to_document(w):
    """
    Return the JSON-compatible document of a :class:`~msca.simulate.Walk`.
    """
    return {
        "format_version": FORMAT_VERSION,
        "kind": "walk",
        "seed": w.seed,
        "policy": w.policy,
        "steps": [transition_to_document(t) for t in w.transitions],
        "states": [list(q) for q in w.states],
        "verdict": {"requests_seen": w.verdict.requests_seen,
                    "ended_in_final": w.verdict.ended_in_final,
                    "visited_coreachable": w.verdict.visited_coreachable},
    }


def walk_to_json(w):
    return dumps(walk_to_document(w))


def edge_label(t):
    """
    Label of the edge drawn for ``t``: the action vector, followed by a
    box and ``u`` or ``l`` for urgent and lazy transitions.

    EXAMPLES::

        >>> from msca.core import transition
        >>> from msca.io import edge_label
        >>> edge_label(transition("[0,0,0]", "[!a,?a,-]", "[1,1,0]", "lazy"))
        '[!a,?a,-]□l'
        >>> edge_label(transition("[0]", "[!b]", "[0]"))
        '[!b]'
    """
    suffix = {Modality.OPTIONAL: "", Modality.URGENT: "□u", Modality.LAZY: "□l"}
    return str(t.label) + suffix[t.modality]


def to_pydot(a):
    """
    Return a ``pydot.Dot`` graph drawing ``a``.

    States are the nodes ``q0``, ``q1``, ... in canonical order, final
    states have a double border and an arrow from the point ``start``,
    kept in the subgraph ``initial``, points at the initial state.

    EXAMPLES::

        >>> from msca import corpus
        >>> from msca.core import MSCA
        >>> from msca.io import to_pydot
        >>> G = to_pydot(corpus.load("client1"))
        >>> sorted(n.get_name() for n in G.get_nodes())
        ['q0', 'q1']
        >>> len(G.get_edges())
        2
        >>> [e.get_destination() for e in G.get_subgraphs()[0].get_edges()]
        ['q0']
        >>> G = to_pydot(MSCA.empty(2))
        >>> G.get_nodes(), "empty orchestration" in G.to_string()
        ([], True)
    """
    if a.is_empty():
        return pydot.Dot("msca", graph_type="digraph", comment="empty orchestration")
    graph = pydot.Dot("msca", graph_type="digraph", rankdir="LR")
    names = {}
    for k, q in enumerate(sorted_states(a.states)):
        names[q] = "q{}".format(k)
        attrs = {"label": format_state(q),
                 "shape": "doublecircle" if q in a.finals else "circle"}
        graph.add_node(pydot.Node(names[q], **attrs))
    initial = pydot.Subgraph("initial")
    initial.add_node(pydot.Node("start", shape="point"))
    initial.add_edge(pydot.Edge("start", names[a.initial]))
    graph.add_subgraph(initial)
    for t in sorted_transitions(a.transitions):
        graph.add_edge(pydot.Edge(names[t.source], names[t.target], label=edge_label(t)))
    return graph


def export_dot(a):
    """
    Return the DOT text drawing ``a``.
    """
    return to_pydot(a).to_string()


def check_dot(text):
    """
    Return whether ``text`` parses as a DOT graph.

    EXAMPLES::

        >>> from msca import corpus
        >>> from msca.io import check_dot, export_dot
        >>> check_dot(export_dot(corpus.load("server")))
        True
    """
    try:
        graphs = pydot.graph_from_dot_data(text)
    except Exception:
        # pydot reports parse errors either by raising or by returning None
        return False
    return bool(graphs)
