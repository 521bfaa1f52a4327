from lastfirst.synth.circle import bead_centers, gen_bumpy_circle, gen_necklace, gen_noisy_circle
from lastfirst.synth.lattice import LATTICE_SHAPE, gen_duplicated_lattice, lattice_pmf
from lastfirst.synth.sphere import gen_sphere, polar_angle

__all__ = [
    "LATTICE_SHAPE",
    "bead_centers",
    "gen_bumpy_circle",
    "gen_duplicated_lattice",
    "gen_necklace",
    "gen_noisy_circle",
    "gen_sphere",
    "lattice_pmf",
    "polar_angle",
]
