from src.rootsys.CartanDatum import CartanDatum
from src.rootsys.CartanLoaderInterface import CartanLoaderInterface
from src.rootsys.CartanTypes import cartan_matrix, parse_label

EXCEPTIONAL_DIAGRAMS = {
    "E6": "1 - 3 - 4 - 5 - 6\n        |\n        2",
    "E7": "1 - 3 - 4 - 5 - 6 - 7\n        |\n        2",
    "E8": "1 - 3 - 4 - 5 - 6 - 7 - 8\n        |\n        2",
    "F4": "1 - 2 => 3 - 4   (1, 2 long; 3, 4 short)",
    "G2": "1 <= 2   (1 short, 2 long; triple bond)",
}


class LabeledCartanLoader(CartanLoaderInterface):
    """
    Built-in Cartan matrices of the finite types in Bourbaki numbering.
    """

    def __init__(self, label: str) -> None:
        self.family, self.rank = parse_label(label)
        self.label = f"{self.family}{self.rank}"

    def load(self) -> CartanDatum:
        return CartanDatum(cartan_matrix(self.family, self.rank), label=self.label)

    def describe(self) -> str:
        if self.label in EXCEPTIONAL_DIAGRAMS:
            return EXCEPTIONAL_DIAGRAMS[self.label]

        nodes = [str(i) for i in range(1, self.rank + 1)]
        if self.family == "A" or self.rank == 1:
            return " - ".join(nodes)
        if self.family == "B":
            return " - ".join(nodes[:-1]) + f" => {self.rank}   ({self.rank} short)"
        if self.family == "C":
            return " - ".join(nodes[:-1]) + f" <= {self.rank}   ({self.rank} long)"

        line = " - ".join(nodes[:-1])
        branch = line.rfind(nodes[-3]) if self.rank >= 3 else 0
        return f"{line}\n{' ' * branch}|\n{' ' * branch}{self.rank}"
