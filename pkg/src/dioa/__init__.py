"""Dynamic I/O automata: signature I/O automata, configuration automata and bounded checks."""

from .core import (ExtSig, ModelError, Signature, Sioa, ValidationReport, Violation,
                   enabled_steps, make_sioa, validate_sioa)
from .algebra import (compatible_signatures, compatible_sioa, compose_signatures,
                      compose_sioa, hide_sioa, rename_sioa)
from .behavior import (Execution, action_projection, paste_check, project_execution,
                       reduce_pretrace, stutter_equiv, trace_of, trace_text, zip_check,
                       zips_check)
from .explorer import check_theorem, enumerate_traces, trace_inclusion

__all__ = [
    "ExtSig", "ModelError", "Signature", "Sioa", "ValidationReport", "Violation",
    "enabled_steps", "make_sioa", "validate_sioa",
    "compatible_signatures", "compatible_sioa", "compose_signatures", "compose_sioa",
    "hide_sioa", "rename_sioa",
    "Execution", "action_projection", "paste_check", "project_execution",
    "reduce_pretrace", "stutter_equiv", "trace_of", "trace_text", "zip_check", "zips_check",
    "check_theorem", "enumerate_traces", "trace_inclusion",
]
