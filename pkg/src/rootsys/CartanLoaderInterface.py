from src.rootsys.CartanDatum import CartanDatum


class CartanLoaderInterface:
    """
    Interface for Cartan datum sources.
    You have to implement this method when you make a new loader class.
    """

    def load(self) -> CartanDatum:
        """
        Load a validated Cartan datum from its source (built-in table, file, etc.)

        Returns:
            CartanDatum: datum satisfying the finite-type invariants
        """
        pass

    def describe(self) -> str:
        """
        Human readable picture of the simple-root numbering used by this source.

        Returns:
            str: multi-line description, 1-based node numbers
        """
        pass
