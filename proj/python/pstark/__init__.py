try:
    from ._pstark import *  # noqa: F401,F403
except ImportError:  # development tree: extension built next to the package
    from _pstark import *  # noqa: F401,F403
