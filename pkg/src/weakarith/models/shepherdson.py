"""Series with non-negative exponents and integer constant term.

This is the integer part of the Puiseux field used for open-induction
models: every series has an integer part here (see ``ps_floor``).
"""

from __future__ import annotations

from dataclasses import dataclass

from ..numberfield import QQ, NumberField
from ..puiseux import PuiseuxSeries
from .mb import Rejection

__all__ = ["ShepElement", "shep_admit"]


@dataclass(frozen=True)
class ShepElement:
    series: PuiseuxSeries

    accepted = True

    def certificates(self) -> list[dict]:
        """Isolating-interval certificate per coefficient (rational ones need none)."""
        field = self.series.field
        out = []
        for e, c in self.series.sorted_terms():
            if field is QQ or (hasattr(c, "is_rational") and c.is_rational()):
                out.append({"exponent": str(e), "value": field.format(c), "rational": True})
            else:
                out.append(
                    {
                        "exponent": str(e),
                        "value": field.format(c),
                        "min_poly": [str(v) for v in field.min_poly.coeffs],
                        "embedding": [str(field.embedding.lo), str(field.embedding.hi)],
                    }
                )
        return out


def shep_admit(series: PuiseuxSeries):
    if not series.is_exact:
        return Rejection("series must be exact")
    field = series.field
    if not (field is QQ or isinstance(field, NumberField)):
        return Rejection("coefficients must be real algebraic (QQ or a number field)")
    for e, c in series.sorted_terms():
        if e < 0:
            return Rejection(f"negative exponent {e}", (e,), c)
    const = series.coeff(0)
    if not field.is_integer(const):
        return Rejection(f"constant coefficient {field.format(const)} is not an integer", (0,), const)
    return ShepElement(series)
