"""Small cancellation rings: pieces, measures, charts, covers and witness constructions."""
from .words import Alphabet, Word, WordSyntaxError, is_proper_power
from .poly import Field, Poly, format_poly, parse_poly
from .relset import ClosureOverflow, Membership, RelSet, close, contains_up_to_scalar, in_mon
from .measure import INF, PieceTable, Verdict, is_small_piece, lambda_measure, small_pieces
from .cover import Chart, CoverReport, Occurrence, chart, maximal_occurrences, min_cov, occurrences
from .checker import AxiomReport, check_empty_chart_family, check_no_monomial_relations, check_sc_axiom
from .construct import (AmenabilityWitness, ConstructionError, FreePairWitness, build_amenability_witness,
                        build_free_pair, verify_free_pair, verify_product_measure_bound)
from .presentation import Presentation, PresentationError, load_presentation, parse_presentation
from .kernels import BACKEND

__version__ = "0.1.0"
