"""Commutative metrised algebras of cubic forms.

Thin wrapper around the compiled ``_cubal`` extension: idempotent search on
the unit sphere, extremality certificates, Peirce spectra and idempotent
decompositions, plus the built-in algebra families.
"""

from ._cubal import *  # noqa: F401,F403
from ._cubal import __doc__ as _core_doc  # noqa: F401

__all__ = [name for name in dir() if not name.startswith("_")]
