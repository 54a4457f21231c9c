"""Solvers for random homogeneous Gaussian polynomial systems on the sphere.

Thin Python layer over the compiled ``_core`` extension.  When the package is
installed (scikit-build-core places ``_core`` inside the package directory)
the relative import works; when running against a plain CMake build tree the
extension sits on ``PYTHONPATH`` as a top-level module.
"""

try:
    from ._core import (  # type: ignore[attr-defined]
        PolynomialSystem,
        certify,
        circle_roots,
        find_descent_direction,
        hd_solve,
        kac_rice_mean,
        mss_solve,
        newton_step,
        s_max_sq,
        s_min,
        sample_system,
        solve_auto,
    )
except ImportError:  # build-tree layout: _core is top-level
    from _core import (  # type: ignore[no-redef]
        PolynomialSystem,
        certify,
        circle_roots,
        find_descent_direction,
        hd_solve,
        kac_rice_mean,
        mss_solve,
        newton_step,
        s_max_sq,
        s_min,
        sample_system,
        solve_auto,
    )

__all__ = [
    "PolynomialSystem",
    "certify",
    "circle_roots",
    "find_descent_direction",
    "hd_solve",
    "kac_rice_mean",
    "mss_solve",
    "newton_step",
    "s_max_sq",
    "s_min",
    "sample_system",
    "solve_auto",
]

__version__ = "0.1.0"
