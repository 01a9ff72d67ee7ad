"""Compare plane figures up to isometry in Euclidean, hyperbolic and elliptic models.

``A <= B`` holds when some isometry maps A into B; ``A ~ B`` when one maps A
onto B.  The package decides these relations for finite figures, checks
witnessed containments for symbolic figures, and re-verifies a catalog of
pairs with ``A <= B <= A`` but ``A`` not congruent to ``B``.
"""

from .catalog import ENTRY_IDS, ExampleReport, build_entry, list_entries, verify_all, verify_entry
from .comparator import (
    ComparisonVerdict,
    LambdaVerdict,
    equal_finite,
    lambda_compare,
    leq_finite,
    strongly_good_finite,
)
from .docio import dumps_figure, dumps_isometry, parse_figure, parse_isometry
from .errors import (
    DegenerateInputError,
    DocumentError,
    FigorderError,
    ModelMismatchError,
    NoIsometryError,
    SizeCapError,
    UnknownEntryError,
    UnsupportedImageError,
)
from .figures import (
    AngleWedge,
    Arc,
    Complement,
    Difference,
    Disc,
    FiniteFigure,
    HalfLine,
    HalfPlane,
    Line,
    OrbitFigure,
    Segment,
    SinglePoint,
    Union,
    finite,
    neighbor_signature,
    realize,
    structural_props,
)
from .geometry import DEFAULT_TOL, Geometry, Point, dist
from .isometry import (
    EllipticIsometry,
    EuclideanIsometry,
    HalfPlaneIsometry,
    Isometry1D,
    MobiusIsometry,
    identity,
)
from .subset import SubsetResult, check_leq_symbolic, check_subset

__all__ = [name for name in dir() if not name.startswith("_")]
