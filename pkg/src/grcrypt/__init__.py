"""Group-ring cryptography over small prime fields.

Elements of a finite group ring Z_p[G] embed into n x n matrices by
their action on the group's listing; the embedding is a ring
isomorphism onto the matrices it produces, so a whole matrix protocol
can ride on first rows and convolutions.  This package provides the
field and matrix layer, the group ring with its named listings, fast
multiplication transforms, samplers for singular and invertible
elements, orthogonal idempotent splits, cyclic codes, and the transport
/ key agreement / public key / authentication protocols built on top.
"""

from . import coding, constructions, ffield, groupring, idempotents, protocols, transforms
from .errors import GrcError

__version__ = "0.1.0"

__all__ = [
    "GrcError",
    "__version__",
    "coding",
    "constructions",
    "ffield",
    "groupring",
    "idempotents",
    "protocols",
    "transforms",
]
