"""Fox calculus, Magnus representations and Johnson homomorphisms for free groups.

Submodules: ``words`` (free-group words and endomorphisms), ``groupring``
(Z[F_n] and its abelianization), ``magnus`` (truncated Magnus expansion and
Lyndon coordinates), ``foxrep`` (Fox derivatives, Magnus representation),
``nilpotent`` (N_k and Aut N_k), ``johnson`` (J_k and its refinement),
``acyclic`` (acyclic systems over nilpotent groups), ``cli``.
"""

from ._kernels import BACKEND
from .errors import JcalcError, NotStabilized, ParseError, PreconditionError, RankError
from .words import Endomorphism, ReducedWord, boundary_word, parse_endomorphism, parse_word

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "Endomorphism", "ReducedWord", "boundary_word", "parse_endomorphism", "parse_word",
    "JcalcError", "NotStabilized", "ParseError", "PreconditionError", "RankError",
]
