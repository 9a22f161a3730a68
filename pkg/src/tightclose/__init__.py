"""Exact tight closure and filtration computations over prime fields."""

from .filtrations import (
    Filtration,
    HilbertCoefficients,
    fit_hilbert_coefficients,
    hi_p_check,
    hilbert_values,
    hsp_coefficients,
)
from .idealops import Ideal, ideal_contains, ideal_equals, intersect, is_reduction
from .polyring import GREVLEX, LEX, PolyRing, Polynomial, block_order, buchberger, initial_ideal
from .quotient import QuotientRing, length_of_quotient
from .simplicial import SimplicialComplex, eulerian_equivalences, face_ring, fh_vectors
from .tightclosure import (
    DiagonalRing,
    f_rationality_probe,
    tight_closure_power_diagonal,
    tight_membership,
    tight_reduction_number,
    verify_closed_form,
)

__version__ = "0.1.0"
