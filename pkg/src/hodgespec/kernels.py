"""Backend dispatch for the integer matrix kernels.

Two interchangeable backends implement the hot kernels (Gaussian-integer
matmul and Bareiss rank):

* ``compiled`` -- the ``_speedups`` Cython extension, int64 arithmetic
  with overflow checks;
* ``pure`` -- ``_pure_kernels``, Python big ints.

The compiled backend is preferred when importable; any OverflowError it
raises (value too large for int64, or a checked operation overflowing)
is transparently retried on the pure backend, so exactness never
depends on which backend ran.  Set ``HODGESPEC_BACKEND=pure`` to force
the fallback, e.g. for benchmarking.
"""

from __future__ import annotations

import os

from . import _pure_kernels as _pure

try:
    from . import _speedups as _compiled
except ImportError:  # extension not built on this platform
    _compiled = None

_env = os.environ.get("HODGESPEC_BACKEND", "").strip().lower()
if _env == "pure":
    _active = None
elif _env in ("", "auto", "compiled"):
    _active = _compiled
    if _env == "compiled" and _compiled is None:
        raise ImportError("HODGESPEC_BACKEND=compiled but _speedups is not built")
else:
    raise ValueError(f"unknown HODGESPEC_BACKEND value {_env!r}")

#: number of compiled calls that overflowed int64 and were redone purely
fallback_count = 0


def backend_name() -> str:
    return "compiled" if _active is not None else "pure"


def has_compiled() -> bool:
    return _compiled is not None


def matmul(a_re, a_im, b_re, b_im):
    global fallback_count
    if _active is not None:
        try:
            return _active.matmul(a_re, a_im, b_re, b_im)
        except OverflowError:
            fallback_count += 1
    return _pure.matmul(a_re, a_im, b_re, b_im)


def rank(m_re, m_im) -> int:
    global fallback_count
    if _active is not None:
        try:
            return _active.rank(m_re, m_im)
        except OverflowError:
            fallback_count += 1
    return _pure.rank(m_re, m_im)
