"""Exact-arithmetic toolkit for distance-regular graph parameter analysis.

Submodules: params (intersection arrays), spectral (exact eigenvalues,
standard sequences, multiplicities), geometric (gamma sequences, inner
products, dual polar classifiers), families (named array generators),
graphlab (explicit graphs as a brute-force oracle), search (the
exhaustive case analysis), cli (command line entry point).
"""

from .params import (IntersectionArray, InvalidArray, Verdict, array_from_json,
                     basic_feasibility, complete_array)
from .spectral import (Spectrum, SpectrumEntry, StandardSequence, char_poly,
                       eigen_count_below, intersection_matrix, multiplicities_integral,
                       multiplicity, spectrum, standard_sequence)
from .geometric import (ClassifyResult, DualPolarClass, GeometricProfile, GramData,
                        NotGeometric, corollary1_classify, gamma_profile,
                        geometric_candidate, gram_data, near_polygon_check,
                        propagate_standard_sequence, s_closed_form, theorem1_classify)
from .families import (FamilySpec, Membership, b_array, conjecture_membership,
                       dual_polar_array, family_array, folded_cube_array,
                       hamming_array, johnson_array, odd_graph_array, polygon_array,
                       sporadic_27_array, two_a_array, witt_m24_array)
from .graphlab import (Graph, build, certify_drg, delsarte_clique_audit,
                       empirical_spectrum_and_gram, strongly_closed_closure)
from .search import (CASE_LIST, CandidateReport, CaseTemplate, SearchReport,
                     case_template, enumerate_case, evaluate_candidate, full_search)

__version__ = "0.1.0"
