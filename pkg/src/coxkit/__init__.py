"""coxkit: exact computation with finite complex reflection groups.

The package enumerates matrix reflection groups over cyclotomic fields and
verifies, at desk scale, the structural facts about their regular elements:
Coxeter-class counting against the field of definition, eigenvalue spectra,
noncrossing partition lattices, Hurwitz transitivity, and generalized Coxeter
presentations checked by coset enumeration.
"""

from .errors import CoxkitError, IntegrityError, ResourceCapError, UsageError

__version__ = "0.1.0"

__all__ = [
    "CoxkitError",
    "IntegrityError",
    "ResourceCapError",
    "UsageError",
    "__version__",
]
