"""Row-reduction kernel backend selection.

The compiled extension is used when it imported cleanly at build time;
otherwise the pure-Python twin takes over.  Both expose the same
gf_rref / int_rref contract, and the test suite checks them against
each other when both are available.
"""

from __future__ import annotations

import os

from . import _pykern

if os.environ.get("NIL7_FORCE_PYTHON_KERNEL"):
    _impl = _pykern
else:
    try:
        from . import _ckern as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _pykern

BACKEND = _impl.BACKEND
gf_rref = _impl.gf_rref
int_rref = _impl.int_rref

py_gf_rref = _pykern.gf_rref
py_int_rref = _pykern.int_rref

try:
    from ._ckern import gf_rref as c_gf_rref, int_rref as c_int_rref
except ImportError:
    c_gf_rref = None
    c_int_rref = None
