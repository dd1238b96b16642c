"""Entropy-weighted sentence embeddings (WISSE)."""

try:
    from ._wisse import *  # noqa: F401,F403
    from ._wisse import __doc__ as _core_doc  # noqa: F401
except ImportError:  # build-tree layout: extension next to the package
    from _wisse import *  # noqa: F401,F403
