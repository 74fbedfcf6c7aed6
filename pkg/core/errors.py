"""
core/errors.py
Exception hierarchy shared by every package.
Check outcomes are Verdict values (core/report.py); these are for calls that cannot return.
"""

from typing import Any, Optional


class OrdkitError(Exception):
    """Base class. `witness` is always JSON-friendly (ints, strings, lists, dicts)."""

    def __init__(self, message: str, witness: Optional[Any] = None):
        super().__init__(message)
        self.witness = witness


class PosetAxiomError(OrdkitError):
    def __init__(self, axiom: str, witness: tuple):
        super().__init__(f"{axiom} fails at {witness}", witness=list(witness))
        self.axiom = axiom


class SizeGuardError(OrdkitError):
    def __init__(self, operation: str, size: int, bound: int):
        super().__init__(
            f"{operation}: size {size} exceeds bound {bound} (raise ORDKIT_MAX_SIZE to allow)",
            witness={"operation": operation, "size": size, "bound": bound},
        )
        self.operation = operation
        self.size = size
        self.bound = bound


class NotALatticeError(OrdkitError):
    pass


class PreconditionError(OrdkitError):
    pass


class NoAdjointError(OrdkitError):
    pass


class NotAMorphismError(OrdkitError):
    def __init__(self, law: str, witness: Any):
        super().__init__(f"not a morphism: {law} fails at {witness}", witness=witness)
        self.law = law


class IncompatibleError(OrdkitError):
    pass


class VerificationError(OrdkitError):
    """A constructed object failed its own exact post-check."""


class UnsupportedInstance(OrdkitError):
    pass


class SchemaError(OrdkitError):
    def __init__(self, pointer: str, message: str):
        super().__init__(f"{pointer or '/'}: {message}", witness={"pointer": pointer or "/"})
        self.pointer = pointer or "/"
