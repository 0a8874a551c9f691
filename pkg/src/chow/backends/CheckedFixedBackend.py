import numpy as np

from src.chow.CoefficientBackendInterface import CoefficientBackendInterface
from src.exceptions import CoefficientOverflow


class CheckedFixedBackend(CoefficientBackendInterface):
    """
    Emulates a signed fixed-width integer type and refuses coefficients that would not
    fit, so results never silently saturate.
    """

    name = "checked"

    def __init__(self, bits: int = 64) -> None:
        if bits not in (64, 128):
            raise ValueError(f"unsupported width {bits}, use 64 or 128")
        self.bits = bits
        self.ceiling = (1 << (bits - 1)) - 1

    def check(self, coefficient: int) -> int:
        if coefficient > self.ceiling:
            raise CoefficientOverflow(
                f"coefficient {coefficient} exceeds the {self.bits}-bit range; use the arbitrary backend"
            )
        return coefficient

    def check_all(self, coefficients: np.ndarray) -> None:
        if len(coefficients):
            self.check(int(coefficients.max()))
