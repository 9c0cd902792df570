"""Real Pauli groups, binary symplectic geometry, and magic configurations.

The package exposes four layers: exact Pauli algebra (:mod:`bksgeom.pauli`),
GF(2) projective geometry (:mod:`bksgeom.geometry`), point-set
classification (:mod:`bksgeom.classify`), and Bell-Kochen-Specker
verification and search (:mod:`bksgeom.magic`, :mod:`bksgeom.search`),
with the built-in four-qubit rectangle in :mod:`bksgeom.rectangle` and a
command line front end in :mod:`bksgeom.cli`.
"""

from .classify import ClassificationLabel, classify_set, is_cap, projective_closure
from .geometry import (
    Subspace,
    SymplecticPoint,
    contains,
    enumerate_points,
    intersect,
    is_totally_isotropic,
    span,
    symplectic_form,
    third_point,
)
from .magic import (
    Context,
    ContextError,
    ContradictionCertificate,
    MagicConfiguration,
    complement_config,
    context_sign,
    exhaustive_nchv_check,
    intersection_lines,
    parity_witness,
    shared_point,
)
from .pauli import (
    ParseError,
    PauliObservable,
    commutes,
    format_observable,
    from_symplectic,
    multiply,
    parse_observable,
    product_of_set,
    to_symplectic,
)
from .rectangle import magic_rectangle, twin_rectangle
from .search import (
    SearchOptions,
    enumerate_caps,
    find_magic_rectangles,
    find_mermin_squares,
)

__version__ = "0.1.0"

__all__ = [
    "ClassificationLabel",
    "Context",
    "ContextError",
    "ContradictionCertificate",
    "MagicConfiguration",
    "ParseError",
    "PauliObservable",
    "SearchOptions",
    "Subspace",
    "SymplecticPoint",
    "classify_set",
    "commutes",
    "complement_config",
    "contains",
    "context_sign",
    "enumerate_caps",
    "enumerate_points",
    "exhaustive_nchv_check",
    "find_magic_rectangles",
    "find_mermin_squares",
    "format_observable",
    "from_symplectic",
    "intersect",
    "intersection_lines",
    "is_cap",
    "is_totally_isotropic",
    "magic_rectangle",
    "multiply",
    "parity_witness",
    "parse_observable",
    "product_of_set",
    "projective_closure",
    "shared_point",
    "span",
    "symplectic_form",
    "third_point",
    "to_symplectic",
    "twin_rectangle",
    "__version__",
]
