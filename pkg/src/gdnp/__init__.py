"""Exact kernel for free Novikov-Poisson style algebras: tableau normal
forms, the embedding into the free special admissible algebra, the direct
rewriting normalizer, the differential quotient, and bounded presentations.
"""

from .admissible import (CPoly, CWord, compare_ord, cword, derive, dot,
                         enumerate_cwords, leading, poly_add, poly_derive,
                         poly_mul, poly_scale, poly_word, star, weight)
from .differential import (DPoly, DWord, dderive, dgdnp_normalize, dmul,
                           dword, normal_word, theta)
from .embedding import (TableauCombo, circ as circ_poly, combo_phi, is_weight0,
                        normalize_embed, phi, phi_linear, tableau_leading,
                        word_to_tableau)
from .errors import (BadPosition, BadShape, BadWeight, EmptyMonomial,
                     GdnpError, InvalidWord, NoCirc, NotWeightZero, ParseError,
                     ZeroPolynomial)
from .presentations import (Bounds, PbwReport, Presentation, graded_dim,
                            ideal_span_c, ideal_span_gdnp0, member, pbw_check,
                            presentation, row_reduce)
from .rewriter import (RowForm, normalize_rewrite, phi_check, root1_expand,
                       root_max, row_interchange, split_circ, to_row_form)
from .shell import (Session, parse_linear, parse_term, print_cpoly,
                    print_dpoly, print_term, run, selftest)
from .terms import (Alphabet, Generator, Monomial, Row, Tableau, Term, UNIT,
                    as_tableau, circ, counts, deglex_compare, dot as dot_term,
                    enumerate_tableaux, enumerate_terms, leaf, monomial,
                    random_term, root, tableau, tableau_term)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
