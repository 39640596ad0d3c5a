"""Python interface to the decaying-potential random Schrodinger simulator."""

try:
    from ._core import *  # noqa: F401,F403
    from ._core import __version__  # noqa: F401
except ImportError:
    # in-tree builds put _core next to the build dir, not inside the package
    from _core import *  # noqa: F401,F403
    from _core import __version__  # noqa: F401
