"""smellvet: detect code smell candidates in Java sources and guide their human validation."""

__version__ = "0.1.0"

from smellvet.smells import Smell

__all__ = ["Smell", "__version__"]
