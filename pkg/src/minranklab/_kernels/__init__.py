"""Hot kernels: compiled Cython core with a pure-Python fallback.

The backend is chosen once at import.  ``MINRANKLAB_PURE=1`` forces the
Python implementation; otherwise the compiled module is used when it can
be imported.  ``BACKEND`` names the active one, and both stay reachable as
``python`` and ``compiled`` (the latter is ``None`` when not built) so the
benchmark and the cross-check tests can compare them.
"""

from __future__ import annotations

import os

from . import _pykernels as python
from ._pykernels import FOUND, NONE, UNDECIDED

try:
    from . import _ckernels as compiled
except ImportError:  # extension not built
    compiled = None

if compiled is not None and os.environ.get("MINRANKLAB_PURE", "") not in ("1", "true", "yes"):
    _impl = compiled
    BACKEND = "compiled"
else:
    _impl = python
    BACKEND = "python"

gf2_rank = _impl.gf2_rank
gfq_rank = _impl.gfq_rank
gf2_minrank_search = _impl.gf2_minrank_search
nks_census = _impl.nks_census
# no compiled GF(q>2) search; the Python one serves every backend
gfq_minrank_search = python.gfq_minrank_search

__all__ = [
    "BACKEND", "FOUND", "NONE", "UNDECIDED", "compiled", "python",
    "gf2_rank", "gfq_rank", "gf2_minrank_search", "gfq_minrank_search", "nks_census",
]
