"""Signless Laplacian spectra of apex joins of cycles and paths.

Exact (integer characteristic polynomials, Sturm sequences) and numeric
(Jacobi) spectral tools, closed forms for ``K1 ∨ (cycles ∪ qK2)``, and
cospectral-mate searches.
"""
from .errors import (CapabilityError, DomainError, Graph6Error, ModeError, NumericError,
                     PreconditionError, QSpecError, VerificationError)
from .exact import CharPoly, RootInterval, char_poly, exact_multiplicity, refine_root, sturm_count
from .familyspec import format_family, parse_family
from .graph6 import emit_graph6, parse_graph6
from .graph_core import ApexFamily, Multigraph, build_atom, q_matrix, realize
from .numeric import Spectrum, perron_vector, q_spectrum, spectra_close, sym_eigen
from .closed_form import matching_spectrum, sigma1_family, cubic_coeffs, p3_quintic
from .search import canonical_form, enumerate_all, family_scan, find_mates

__version__ = "0.1.0"
