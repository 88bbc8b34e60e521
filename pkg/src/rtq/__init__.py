"""Quiver forms for the colored HOMFLY-PT homology of rational tangles."""
from .qlaurent import LaurentPoly3
from .tanglecore import Orientation, Role, TangleFraction, TangleState, TwistWord

__version__ = "0.1.0"

__all__ = ["LaurentPoly3", "Orientation", "Role", "TangleFraction", "TangleState", "TwistWord"]
