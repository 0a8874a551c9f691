import numpy as np

from src.chow.CoefficientBackendInterface import CoefficientBackendInterface


class ArbitraryPrecisionBackend(CoefficientBackendInterface):
    """
    Python integers; never overflows.
    """

    name = "arbitrary"

    def check(self, coefficient: int) -> int:
        return coefficient

    def check_all(self, coefficients: np.ndarray) -> None:
        return None
