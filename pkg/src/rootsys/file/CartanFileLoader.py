from pathlib import Path
from typing import List, Optional

from src.exceptions import InvalidCartanDatum
from src.rootsys.CartanDatum import CartanDatum
from src.rootsys.CartanLoaderInterface import CartanLoaderInterface


class CartanFileLoader(CartanLoaderInterface):
    """
    Reads a Cartan matrix from a plain text file:

        r
        C_11 ... C_1r
        ...
        C_r1 ... C_rr
        d: d_1 ... d_r        (optional; computed minimally when absent)

    Blank lines and lines starting with '#' are skipped.
    """

    def __init__(self, path: str) -> None:
        self.path = Path(path)
        self._datum: Optional[CartanDatum] = None

    def load(self) -> CartanDatum:
        if self._datum is None:
            with open(self.path, encoding="utf-8") as handle:
                self._datum = self.parse(handle.read())
        return self._datum

    @staticmethod
    def parse(text: str, label: Optional[str] = None) -> CartanDatum:
        lines = [line.strip() for line in text.splitlines()]
        lines = [line for line in lines if line and not line.startswith("#")]
        if not lines:
            raise InvalidCartanDatum("empty Cartan matrix file")

        try:
            rank = int(lines[0])
            rows: List[List[int]] = [[int(x) for x in line.split()] for line in lines[1:rank + 1]]
        except ValueError as error:
            raise InvalidCartanDatum(f"malformed Cartan matrix file: {error}") from error
        if len(rows) != rank:
            raise InvalidCartanDatum(f"expected {rank} matrix rows, found {len(rows)}")

        symmetrizer = None
        rest = lines[rank + 1:]
        if rest:
            head, _, values = rest[0].partition(":")
            if head.strip() != "d" or len(rest) > 1:
                raise InvalidCartanDatum(f"unexpected trailing content: {rest[0]!r}")
            try:
                symmetrizer = [int(x) for x in values.split()]
            except ValueError as error:
                raise InvalidCartanDatum(f"malformed symmetrizer line: {error}") from error

        return CartanDatum(rows, symmetrizer=symmetrizer, label=label)

    def describe(self) -> str:
        datum = self.load()
        bonds = []
        for i in range(datum.rank):
            for j in range(i + 1, datum.rank):
                a, b = datum.matrix[i][j], datum.matrix[j][i]
                if a == 0:
                    continue
                if a == b:
                    bonds.append(f"{i + 1} - {j + 1}")
                elif abs(a) < abs(b):
                    # i is the longer node; the arrow points to the shorter one
                    bonds.append(f"{i + 1} {'=' * (abs(b) - 1)}> {j + 1}")
                else:
                    bonds.append(f"{i + 1} <{'=' * (abs(a) - 1)} {j + 1}")
        return "\n".join(bonds) if bonds else "(no bonds)"
