"""
Frozen sign convention for the generator braids.

``SIGMA_TAU_SIGN`` is the sign of the single crossing in the braids of the
generators ``sigma_i`` and ``tau_i``.  With the letter convention of
:mod:`bvgroup.braids` (``+i``: the strand from position ``i`` passes over the
strand from ``i-1``), ``+1`` makes ``sigma_k ... sigma_1`` the braid in which
strand ``k`` passes over strands ``k-1, ..., 0`` in turn.

Both signs satisfy every relator of the finite and infinite presentations
(they differ by the global mirror); the test suite checks both and the
negative control shows that flipping a single generator breaks ``b2``.
"""

SIGMA_TAU_SIGN = 1
