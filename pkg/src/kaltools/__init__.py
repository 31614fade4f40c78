"""Marked concatenation of regular languages: automata, syntactic monoids
and Schützenberger products."""
from .automata import (CompleteDfa, accepts, equivalent, format_dfa, kal_construct,
                       left_derivative, make_alphabet, minimize, parse_dfa)
from .bpol import bpol1_bound, xi_image
from .constructions import (content_dfa, mod_count_dfa, prop2_K, prop2_L,
                            sl_free_monoid, star_dfa)
from .errors import InputError, SizeLimitError
from .monoids import (FiniteMonoid, GreenSummary, MonoidHom, RecognizedLanguage,
                      green_summary, kernel_equal, syntactic_monoid, syntactic_quotient)
from .schutzenberger import (SchutzElement, SchutzProductContext, mu_image, mu_of_word,
                             mu_recognizes, schutz_enumerate, schutz_mul)
from .verify import VerifyReport, verify_paper

__version__ = "0.1.0"
