"""PL sphere recognition toolkit."""

from ._plsphere import (
    Error,
    SimplicialComplex,
    bistellar_simplify,
    boundary_of_simplex,
    homology,
    is_combinatorial_manifold,
    morse_spectrum,
    perturbed_sphere,
    pi1,
    random_discrete_morse,
    recognize,
    rp2_6,
    saw_blade,
    simplex,
    simplify_presentation,
    smith_normal_form,
    suspension,
)

__all__ = [
    "Error",
    "SimplicialComplex",
    "bistellar_simplify",
    "boundary_of_simplex",
    "homology",
    "is_combinatorial_manifold",
    "morse_spectrum",
    "perturbed_sphere",
    "pi1",
    "random_discrete_morse",
    "recognize",
    "rp2_6",
    "saw_blade",
    "simplex",
    "simplify_presentation",
    "smith_normal_form",
    "suspension",
]
