"""Global type inference for untyped Java-like classes."""

from ._txinfer import CompileError, Unit, infer, parse_and_print, run

__all__ = ["CompileError", "Unit", "infer", "parse_and_print", "run"]
