"""Exact computations for complex structures on Lie algebra extensions.

The package works over the rationals throughout.  Modules:

- ``linalg``: exact matrices, row reduction, kernels, determinants
- ``lie``: Lie algebras by structure constants, the 3-dimensional catalog, subspaces
- ``cohomology``: representations, cochains and the coboundary maps
- ``extension``: extensions of k by h from a representation and a 2-cocycle
- ``complex_structures``: Nijenhuis tensor, cocycle constructions of J, ideal criteria
- ``bilinear``: metrics and 2-forms compatible with J, generalized complex structures
- ``solver``: the cocycle search on 6-dimensional extensions and the existence tables
"""

from .lie import LieAlgebra, Subspace, catalog
from .linalg import Matrix

__version__ = "0.1.0"

__all__ = ["LieAlgebra", "Subspace", "catalog", "Matrix", "__version__"]
