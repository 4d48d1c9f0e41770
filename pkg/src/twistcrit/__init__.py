"""Exact computations for twisted modules of the affine algebra sl2 at the critical level."""
from .scalars import MultiPoly, Scalar
from .superalg import TwistedCharacter

__all__ = ["MultiPoly", "Scalar", "TwistedCharacter"]
