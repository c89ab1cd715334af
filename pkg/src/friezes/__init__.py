"""Conway-Coxeter friezes from polygon triangulations, and how they change under flips."""

from .polygon import (
    Arc,
    InvalidTriangulation,
    Quadrilateral,
    QuiverWithRelations,
    Triangulation,
    crosses,
    enumerate_triangulations,
    flip,
    mutate_quiver,
    quadrilateral,
    quiddity,
    quiver_of_triangulation,
    triangulation_from_quiddity,
    validate,
)
from .strings import (
    StringModule,
    StringShape,
    cc_entry,
    fit_admissibility,
    module_of_arc,
    shape,
    submodule_count,
    submodule_count_bruteforce,
    submodule_count_formula,
)
from .frieze import Frieze, FriezeError, frieze_from_quiddity, frieze_from_triangulation, render, verify
from .mutation import DeltaReport, classify, delta, mutate_frieze, project, rays, support_change_check

__version__ = "0.1.0"
