"""Binary polyhedral groups, their orbit polytopes and equivariant homology.

Everything is exact: coordinates live in Q(sqrt 2) or Q(sqrt 5), group rings
have integer coefficients, and homology comes from certified Smith normal
forms.
"""

__version__ = "0.1.0"

from .scalars import QuadScalar  # noqa: E402
from .quaternion import Quaternion  # noqa: E402
from .groups import get_group  # noqa: E402

__all__ = ["QuadScalar", "Quaternion", "get_group", "__version__"]
