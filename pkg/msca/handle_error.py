"""
Errors raised by msca
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


class MSCAError(Exception):
    """
    Base class for all errors raised by msca.

    Errors caused by ill-formed automata carry the list of
    :class:`~msca.core.Violation` found by :func:`~msca.core.validate`
    in the attribute ``violations``.

    EXAMPLES::

        >>> from msca.handle_error import MSCAError
        >>> err = MSCAError("something went wrong")
        >>> print(err)
        something went wrong
        >>> err.violations
        ()
    """
    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = tuple(violations)


class ClassificationError(MSCAError):
    """
    A label is neither a request, an offer nor a match.
    """


class CompositionError(MSCAError):
    """
    Composition or projection was given invalid operands.
    """


class ControllabilityError(MSCAError):
    """
    A controllability question was asked about inconsistent inputs.
    """


class SynthesisError(MSCAError):
    """
    Synthesis (or one of its transformations) cannot handle its input.
    """


class SimulationError(MSCAError):
    """
    A walk cannot be performed.
    """


class FormatError(MSCAError):
    """
    A document could not be read.

    The attributes ``line`` and ``column`` locate syntax errors, the
    attribute ``field`` names the offending field for schema errors.

    EXAMPLES::

        >>> from msca.handle_error import FormatError
        >>> err = FormatError("expected a list", field="states")
        >>> print(err)
        states: expected a list
        >>> err = FormatError("Expecting value", line=3, column=7)
        >>> print(err)
        line 3, column 7: Expecting value
    """
    def __init__(self, message, line=None, column=None, field=None, violations=()):
        if field is not None:
            message = "{}: {}".format(field, message)
        elif line is not None:
            message = "line {}, column {}: {}".format(line, column, message)
        super().__init__(message, violations)
        self.line = line
        self.column = column
        self.field = field
