from ._lambdabuildings import Instance, ParseError, axioms, generate, load, loads

__all__ = ["Instance", "ParseError", "axioms", "generate", "load", "loads"]
