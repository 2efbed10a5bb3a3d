import os
import sys

# Allow running the test suite from a fresh checkout without installing.
_SRC = os.path.join(os.path.dirname(__file__), "src")
try:
    import oll  # noqa: F401
except ImportError:
    sys.path.insert(0, _SRC)

try:
    from hypothesis import settings

    settings.register_profile("oll", derandomize=True, max_examples=60)
    settings.load_profile("oll")
except ImportError:
    pass
