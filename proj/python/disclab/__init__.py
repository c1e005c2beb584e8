"""Numerical experiments around the disc multiplier in mixed norms.

The heavy lifting lives in the compiled ``_disclab`` module; this package
re-exports its surface.
"""

from _disclab import (  # noqa: F401
    BesselMethod,
    BesselValue,
    RadialGrid,
    RadialProfile,
    ShellSpec,
    a1_construct,
    ap_characteristic,
    apply_multiplier,
    apply_tkn,
    bessel_j,
    bessel_j_integer_all,
    bessel_j_prime,
    classify_regime,
    extension_mixed_norm,
    extension_profile,
    generate_brush,
    hl_max_1d,
    hl_max_all,
    kernel_k,
    kernel_split,
    make_grid,
    mixed_norm_grid,
    overlap_histogram,
    prodj_integral,
    read_profile_csv,
    run_suite,
    universal_kakeya_radial,
    vdc_bound,
    weighted_lp_norm,
    write_profile_csv,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
