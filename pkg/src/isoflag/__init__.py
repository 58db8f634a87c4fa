"""Exact-arithmetic toolkit for unipotent isometries adapted to isotropic flags.

Layers, bottom up:

* :mod:`isoflag.fields` -- rational square-root towers and finite fields.
* :mod:`isoflag.linalg` -- exact dense matrices, rank, linear solving, Jordan data.
* :mod:`isoflag.shapes` -- shape sequences, the sign function psi, level windows,
  Jordan-type predictions and the binomial generating-series identities.
* :mod:`isoflag.gram` -- canonical pairing tables for both form modes.
* :mod:`isoflag.model` -- reconstruction of the space, form and unipotent isometry
  from a pairing table, with flag and intertwiner verification.
* :mod:`isoflag.counting` -- small classical groups over GF(q), isotropic flag
  enumeration, and fixed-point pair counting.
* :mod:`isoflag.cli` -- batch command surface.
"""

__version__ = "0.1.0"
