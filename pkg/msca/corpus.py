"""
The bundled corpus

The automata of the worked examples (clients and server, Alice, Bob and
Carl, the card game, Adrian and Bruce) and the orchestrations expected
from them are shipped as ``.msca.json`` files in ``msca/data``.

Set the environment variable ``MSCA_DATA`` to read them from another
directory.

EXAMPLES::

    >>> from msca import corpus
    >>> corpus.names()[:3]
    ('client1', 'client2', 'client2-urgent')
    >>> corpus.load("server")
    MSCA of rank 1 with 4 states and 3 transitions
    >>> corpus.load("server-orchestration")
    MSCA of rank 3 with 6 states and 12 transitions
    >>> corpus.load("nobody")
    Traceback (most recent call last):
    ...
    msca.handle_error.MSCAError: unknown corpus entry 'nobody'
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

import os

from .handle_error import MSCAError
from .io import AUTOMATON_EXTENSION, load_file

PRINCIPALS = ("client1", "client2", "client2-urgent", "server",
              "alice", "bob", "carl", "dealer", "player", "adrian", "bruce")

EXPECTED = ("clients-orchestration", "server-orchestration",
            "alice-bob-carl-orchestration", "card-game-orchestration")


def data_dir():
    return os.environ.get("MSCA_DATA") or os.path.join(os.path.dirname(__file__), "data")


def names():
    return PRINCIPALS + EXPECTED


def path(name):
    if name not in names():
        raise MSCAError("unknown corpus entry {!r}".format(name))
    return os.path.join(data_dir(), name + AUTOMATON_EXTENSION)


def load(name):
    return load_file(path(name))
