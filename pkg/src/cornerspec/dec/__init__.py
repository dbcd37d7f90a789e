"""Discrete exterior calculus on triangulated compact faces."""

from cornerspec.dec.mesh import (Mesh, build_circle_mesh, build_sphere_mesh,
                                 build_torus_mesh, check_closed,
                                 load_off_mesh, mesh_from_top_cells,
                                 simplex_volume)
from cornerspec.dec.cochain import (CochainComplex, build_cochain_complex,
                                    coboundary, hodge_laplacian, SIZE_GUARD)
from cornerspec.dec.solve import (LaplacianSpectrum, ResolutionSettings,
                                  betti, betti_integer, eigenvalue_table_csv,
                                  face_base_spectrum, integer_rank,
                                  laplacian_spectrum, mesh_for_geometry,
                                  spectrum)

__all__ = [
    "Mesh", "CochainComplex", "LaplacianSpectrum", "ResolutionSettings",
    "build_circle_mesh", "build_torus_mesh", "build_sphere_mesh",
    "mesh_from_top_cells", "load_off_mesh", "check_closed", "simplex_volume",
    "build_cochain_complex", "coboundary", "hodge_laplacian", "SIZE_GUARD",
    "spectrum", "laplacian_spectrum", "betti", "betti_integer",
    "integer_rank", "face_base_spectrum", "mesh_for_geometry",
    "eigenvalue_table_csv",
]
