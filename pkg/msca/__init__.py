"""
Modal service contract automata: composition, controllability and
orchestration synthesis.
"""

from importlib.metadata import PackageNotFoundError, version as _version

try:
    __version__ = _version("msca")
except PackageNotFoundError:
    __version__ = "unknown"

from .handle_error import (MSCAError, ClassificationError, CompositionError,
                           ControllabilityError, SynthesisError, FormatError,
                           SimulationError)
from .core import (TAU, Action, Label, LabelClass, Modality, Transition, MSCA,
                   Violation, classify_label, transition, validate)
from .compose import compose, principals, project
from .reach import coreachable, dangling, reachable, reachable_via_idle, trim
from .control import (ControllabilityChecker, ControllabilityVerdict, Semantics,
                      Witness, is_controllable)
from .synth import Diff, SynthesisTrace, compare, split_lazy, synthesize
from .io import export_dot, load, load_file, save, save_file
from .simulate import walk
