"""Named scalar functions applied to Laplacian spectra."""

import math
from typing import Callable, Dict

from posenc_wl.core.exceptions import EncodingError

ScalarFunction = Callable[[float], float]


def _inv(x: float) -> float:
    return 1.0 / x


def _exp(x: float) -> float:
    return math.exp(-x)


def _exp2(x: float) -> float:
    return math.exp(-2.0 * x)


def _sq(x: float) -> float:
    return x * x


def _id(x: float) -> float:
    return x


def _one(x: float) -> float:
    return 1.0


class ExtendedAtZero:
    """
    ``f`` on nonzero eigenvalues and ``at_zero`` on the null space.

    Which eigenvalues count as zero is decided by the spectral processor against its
    relative threshold, so scaled operators are treated alike.
    """

    def __init__(self, f: ScalarFunction, at_zero: float):
        self.f = f
        self.at_zero = float(at_zero)

    def __call__(self, x: float) -> float:
        return self.at_zero if x == 0.0 else self.f(x)

    def __repr__(self) -> str:
        return f"{getattr(self.f, '__name__', self.f)} with f(0)={self.at_zero:g}"


SPECTRAL_FUNCTIONS: Dict[str, ScalarFunction] = {
    "inv": _inv,
    "inv0": ExtendedAtZero(_inv, 0.0),
    "exp": _exp,
    "exp2": _exp2,
    "sq": _sq,
    "id": _id,
    "one": _one,
}


class HeatFunction:
    """``x -> exp(-t x)``; a class so it pickles across worker processes."""

    def __init__(self, t: float):
        self.t = float(t)

    def __call__(self, x: float) -> float:
        return math.exp(-self.t * x)

    def __repr__(self) -> str:
        return f"heat(t={self.t:g})"


def resolve_function(name: str) -> ScalarFunction:
    """Look up a named spectral function; ``heat@t`` builds ``exp(-t x)``."""
    if name.startswith("heat@"):
        try:
            return HeatFunction(float(name.split("@", 1)[1]))
        except ValueError:
            raise EncodingError(f"invalid heat time in {name!r}") from None
    try:
        return SPECTRAL_FUNCTIONS[name]
    except KeyError:
        raise EncodingError(
            f"unknown spectral function: {name}", {"known": sorted(SPECTRAL_FUNCTIONS)}
        ) from None
