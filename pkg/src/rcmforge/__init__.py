"""Requirement capturing, validation and temporal-logic compilation."""

__version__ = "0.1.0"

from .canonical import dump_canonical, load_canonical
from .coverage import Approach, builtin_approaches, complexity_histogram, coverage_matrix, covers
from .dsl import parse_corpus, parse_dsl, render_dsl
from .errors import (
    DSLSyntaxError,
    EligibilityError,
    NotExpressibleError,
    RCMError,
    SchemaError,
    UnboundFrameError,
)
from .frames import FrameDatabase, VerbFrame, bind_predicate, bind_time, default_frames, register_frame
from .model import (
    Component,
    Kind,
    Leaf,
    Node,
    Operand,
    Predicate,
    PrimitiveRequirement,
    Requirement,
    Scope,
    TimeSpec,
    complete_predicate,
    property_profile,
    validate_primitive,
)
from .tl import render_ctl, render_mtl
from .transform import Target, capability_report, transform

__all__ = [
    "Approach", "Component", "DSLSyntaxError", "EligibilityError", "FrameDatabase", "Kind", "Leaf",
    "Node", "NotExpressibleError", "Operand", "Predicate", "PrimitiveRequirement", "RCMError",
    "Requirement", "SchemaError", "Scope", "Target", "TimeSpec", "UnboundFrameError", "VerbFrame",
    "bind_predicate", "bind_time", "builtin_approaches", "capability_report", "complete_predicate",
    "complexity_histogram", "coverage_matrix", "covers", "default_frames", "dump_canonical",
    "load_canonical", "parse_corpus", "parse_dsl", "property_profile", "register_frame",
    "render_ctl", "render_dsl", "render_mtl", "transform", "validate_primitive",
]
