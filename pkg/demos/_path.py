"""Make the demos runnable from a fresh checkout without installing."""

import os
import sys

try:
    import oll  # noqa: F401
except ImportError:
    sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))
