import numpy as np


class CoefficientBackendInterface:
    """
    Interface for the integer arithmetic behind Schubert coefficients.
    You have to implement this method when you make a new backend class.
    """

    name: str = ""

    def check(self, coefficient: int) -> int:
        """
        Accept a freshly accumulated coefficient or reject it.

        Args:
            coefficient (int): exact nonnegative coefficient

        Returns:
            int: the coefficient, unchanged
        """
        pass

    def check_all(self, coefficients: np.ndarray) -> None:
        """
        Check a whole product at once. Backends with a cheaper vectorized test override this.
        """
        for c in coefficients:
            self.check(int(c))
