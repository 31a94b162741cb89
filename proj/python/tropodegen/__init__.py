"""Gluing equations, ideal points and degenerations of ideal triangulations."""

from ._tropodegen import (
    InputError,
    NumericError,
    Triangulation,
    boundary_slopes,
    degenerate_fig8_builtin,
    fig8,
    gluing_matrices,
    holonomy,
    load,
    lobachevsky,
    parse,
    pf_vertices,
    quads_to_xi,
    solve,
    volume,
    xi_to_quads,
)

__all__ = [
    "InputError",
    "NumericError",
    "Triangulation",
    "boundary_slopes",
    "degenerate_fig8_builtin",
    "fig8",
    "gluing_matrices",
    "holonomy",
    "load",
    "lobachevsky",
    "parse",
    "pf_vertices",
    "quads_to_xi",
    "solve",
    "volume",
    "xi_to_quads",
]
