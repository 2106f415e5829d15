"""Exact constructions of nonstandard models of weak arithmetic.

Submodules:

* ``exactmath``: rationals, univariate polynomials, Sturm root isolation, CRT.
* ``numberfield``: arithmetic, order and S-integrality in a real number field Q(lambda).
* ``puiseux``: Puiseux series, Newton-Puiseux root expansion, integer parts.
* ``models``: the localized polynomial ring, series integer parts, the F / Z-hat chain.
* ``axioms``: division, normality, gcd/Bezout and open-induction obstruction checks.
* ``cli``: the ``weakarith`` command and scenario runner.
"""

from .axioms import bezout_witness, normality_check, oi_obstruction, polyfield_gcd, zr_divide
from .exactmath import RatPoly, crt_combine, isolate_roots
from .models import MBConfig, chain_f_step, chain_init, chain_zhat_step, mb_admit
from .numberfield import QQ, NumberField, PrimeSet
from .puiseux import PuiseuxSeries, SeriesPoly, newton_puiseux, ps_floor

__version__ = "0.1.0"

__all__ = [
    "RatPoly",
    "crt_combine",
    "isolate_roots",
    "NumberField",
    "PrimeSet",
    "QQ",
    "PuiseuxSeries",
    "SeriesPoly",
    "newton_puiseux",
    "ps_floor",
    "MBConfig",
    "mb_admit",
    "chain_init",
    "chain_f_step",
    "chain_zhat_step",
    "zr_divide",
    "normality_check",
    "polyfield_gcd",
    "bezout_witness",
    "oi_obstruction",
]
