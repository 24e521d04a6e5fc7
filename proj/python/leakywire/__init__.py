"""Strong-coupling spectra of curve-supported singular interactions in 3D."""

try:
    from ._core import *  # installed-package layout
    from ._core import __doc__  # noqa: F401
except ImportError:  # build-tree layout used by the ctest smoke test
    from _core import *  # noqa: F401,F403
    from _core import __doc__  # noqa: F401
