"""The worked example: U = {1, 2, 3, 4} with an 8-pair serial transitive relation."""
from .approximation import ApproximationSpace
from .sets import Universe

EXAMPLE_PAIRS = ((1, 1), (1, 3), (2, 1), (2, 3), (2, 4), (3, 1), (3, 3), (4, 4))

EXAMPLE_RELATION_TEXT = "universe 4\n" + "".join(f"{x} {y}\n" for x, y in EXAMPLE_PAIRS)


def example_space() -> ApproximationSpace:
    u = Universe(4)
    return ApproximationSpace.from_pairs(u, [(x - 1, y - 1) for x, y in EXAMPLE_PAIRS])
