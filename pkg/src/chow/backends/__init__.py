from src.chow.CoefficientBackendInterface import CoefficientBackendInterface
from src.chow.backends.ArbitraryPrecisionBackend import ArbitraryPrecisionBackend
from src.chow.backends.CheckedFixedBackend import CheckedFixedBackend


def backend_for(name: str) -> CoefficientBackendInterface:
    if name == ArbitraryPrecisionBackend.name:
        return ArbitraryPrecisionBackend()
    if name == CheckedFixedBackend.name:
        return CheckedFixedBackend()
    if name == "checked128":
        return CheckedFixedBackend(bits=128)
    raise ValueError(f"unknown coefficient backend '{name}'")
