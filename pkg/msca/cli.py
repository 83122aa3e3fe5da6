"""
Command line interface

Run ``msca --help`` (or ``python -m msca --help``) for the list of
subcommands. Exit status:

- 0 -- success (for ``check`` and ``diff``: well-formed, identical)
- 1 -- an error in the input, or a negative answer of ``check``/``diff``
- 2 -- ``synth`` found no orchestration
- 64 -- wrong command line usage, including input files that do not exist
- 74 -- a file could not be read or written

EXAMPLES::

    >>> from msca.cli import main
    >>> main(["corpus", "emit", "bob"])
    {
      "format_version": 1,
      "rank": 1,
    ...
    0
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

import argparse
import logging
import os
import sys

from cysignals.alarm import AlarmInterrupt, alarm, cancel_alarm

from . import __version__, corpus, io
from .compose import compose, project
from .control import Semantics
from .core import LabelClass, format_state, validate
from .handle_error import MSCAError
from .reach import dangling
from .simulate import walk
from .synth import compare, synthesize

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_EMPTY = 2
EXIT_USAGE = 64
EXIT_IOERR = 74


class UsageError(Exception):
    pass


class ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError("{}: error: {}".format(self.prog, message))


def use_colour(stream):
    if "MSCA_NO_COLOR" in os.environ:
        return False
    return hasattr(stream, "isatty") and stream.isatty()


def colour(text, code, stream):
    if not use_colour(stream):
        return text
    return "\033[{}m{}\033[0m".format(code, text)


def read_stdin():
    stream = getattr(sys.stdin, "buffer", None)
    if stream is None:
        return sys.stdin.read()
    return io.decode(stream.read())


def read_automaton(filename, check=True):
    if filename == "-":
        return io.load(read_stdin(), check)
    try:
        return io.load_file(filename, check)
    except FileNotFoundError:
        raise UsageError("no such file: {}".format(filename))


def write_output(text, filename):
    if filename is None or filename == "-":
        sys.stdout.write(text)
    else:
        io.write_text(text, filename)


def cmd_compose(args):
    automaton = compose([read_automaton(f) for f in args.inputs])
    write_output(io.save(automaton), args.output)
    return EXIT_OK


def cmd_synth(args):
    a = read_automaton(args.input)
    if args.timeout:
        alarm(args.timeout)
    try:
        result, trace = synthesize(a, args.semantics)
    finally:
        if args.timeout:
            cancel_alarm()
    if args.trace:
        io.write_text(io.trace_to_json(trace), args.trace)
        logger.info("trace written to %s", args.trace)
    if result.is_empty():
        print(colour("no orchestration ({} semantics)".format(args.semantics), 31, sys.stderr),
              file=sys.stderr)
        return EXIT_EMPTY
    write_output(io.save(result), args.output)
    return EXIT_OK


def cmd_check(args):
    a = read_automaton(args.input, check=False)
    violations = validate(a)
    out = sys.stdout
    if violations:
        print(colour("ill-formed", 31, out), file=out)
        for v in violations:
            print("  " + str(v), file=out)
        return EXIT_ERROR
    print(colour("well-formed", 32, out), file=out)
    print("rank: {}".format(a.rank), file=out)
    print("states: {}".format(len(a.states)), file=out)
    counts = {c: 0 for c in LabelClass}
    for t in a.transitions:
        counts[t.label.label_class] += 1
    print("transitions: {} ({} requests, {} offers, {} matches)".format(
        len(a.transitions), counts[LabelClass.REQUEST], counts[LabelClass.OFFER],
        counts[LabelClass.MATCH]), file=out)
    print("urgent: {}, lazy: {}".format(sum(1 for t in a.transitions if t.is_urgent),
                                        sum(1 for t in a.transitions if t.is_lazy)), file=out)
    bad = sorted(dangling(a))
    print("dangling: {}".format(", ".join(format_state(q) for q in bad) if bad else "none"),
          file=out)
    return EXIT_OK


def cmd_project(args):
    a = read_automaton(args.input)
    write_output(io.save(project(a, args.index)), args.output)
    return EXIT_OK


def cmd_dot(args):
    a = read_automaton(args.input)
    write_output(io.export_dot(a), args.output)
    return EXIT_OK


def cmd_diff(args):
    d = compare(read_automaton(args.a), read_automaton(args.b))
    if d.identical:
        print(colour("identical", 32, sys.stdout))
        return EXIT_OK
    for line in d.report():
        print(line)
    return EXIT_ERROR


def cmd_simulate(args):
    a = read_automaton(args.input)
    policy = "random"
    if args.script is not None:
        try:
            policy = [int(x) for x in args.script.split(",") if x.strip()]
        except ValueError:
            raise UsageError("--script expects comma separated integers")
    logger.info("simulating %d steps (policy %s)", args.steps, policy)
    w = walk(a, args.steps, args.seed, policy)
    write_output(io.walk_to_json(w), args.output)
    return EXIT_OK


def cmd_corpus(args):
    if args.action == "list":
        for name in corpus.names():
            print(name)
        return EXIT_OK
    if args.output is None:
        if args.name is None:
            raise UsageError("corpus emit: a corpus entry name is required without -o")
        sys.stdout.write(io.save(corpus.load(args.name)))
        return EXIT_OK
    os.makedirs(args.output, exist_ok=True)
    for name in corpus.names() if args.name is None else [args.name]:
        io.write_text(io.save(corpus.load(name)),
                      os.path.join(args.output, name + io.AUTOMATON_EXTENSION))
    return EXIT_OK


def build_parser():
    parser = ArgumentParser(prog="msca",
                            description="Compose modal service contract automata "
                                        "and synthesize their orchestrations.")
    parser.add_argument("--version", action="version", version="%(prog)s " + __version__)
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="log progress (repeat for debugging output)")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    p = sub.add_parser("compose", help="compose automata")
    p.add_argument("inputs", nargs="+", metavar="IN")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("synth", help="synthesize the orchestration")
    p.add_argument("input", metavar="IN")
    p.add_argument("-o", "--output")
    p.add_argument("--semantics", default="original", choices=[s.value for s in Semantics])
    p.add_argument("--trace", metavar="FILE", help="write the synthesis trace to FILE")
    p.add_argument("--timeout", type=float, metavar="SECONDS",
                   help="give up after SECONDS seconds")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("check", help="check well-formedness")
    p.add_argument("input", metavar="IN")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("project", help="project onto one principal")
    p.add_argument("-j", dest="index", type=int, required=True)
    p.add_argument("input", metavar="IN")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("dot", help="export to DOT")
    p.add_argument("input", metavar="IN")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_dot)

    p = sub.add_parser("diff", help="compare two automata")
    p.add_argument("a", metavar="A")
    p.add_argument("b", metavar="B")
    p.set_defaults(func=cmd_diff)

    p = sub.add_parser("simulate", help="walk through an automaton")
    p.add_argument("input", metavar="IN")
    p.add_argument("--steps", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--script", metavar="I,J,...",
                   help="indices of the outgoing transitions to take")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("corpus", help="list or write the bundled automata")
    p.add_argument("action", choices=["list", "emit"])
    p.add_argument("name", nargs="?", choices=corpus.names())
    p.add_argument("-o", "--output", metavar="DIR")
    p.set_defaults(func=cmd_corpus)
    return parser


def main(argv=None):
    """
    Run the command line ``argv`` (default: ``sys.argv[1:]``) and
    return the exit status.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as err:
        print(err, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as err:
        # --help and --version
        return err.code or EXIT_OK

    level = logging.WARNING
    if args.verbose == 1:
        level = logging.INFO
    elif args.verbose > 1:
        level = logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr,
                        format="%(levelname)s:%(name)s:%(message)s")

    try:
        return args.func(args)
    except UsageError as err:
        print("msca: error: {}".format(err), file=sys.stderr)
        return EXIT_USAGE
    except AlarmInterrupt:
        print("msca: error: timed out", file=sys.stderr)
        return EXIT_ERROR
    except MSCAError as err:
        print("msca: error: {}".format(err), file=sys.stderr)
        return EXIT_ERROR
    except OSError as err:
        print("msca: error: {}".format(err), file=sys.stderr)
        return EXIT_IOERR
