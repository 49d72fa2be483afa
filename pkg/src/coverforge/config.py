from dataclasses import dataclass


@dataclass
class Limits:
    """Size limits shared by the search and enumeration routines.

    ``lattice`` bounds groups for which a Cayley table and subgroup lattice
    are built; ``elements`` bounds explicit element enumeration and
    generator-image search; ``cosets`` bounds coset enumeration.
    """

    lattice: int = 2048
    elements: int = 10000
    cosets: int = 20000


LIMITS = Limits()
