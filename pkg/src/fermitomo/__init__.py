"""Spin-tomographic probability representation of finite fermion systems."""

from .fermi_symbols import (
    ClosedFormSymbol,
    antisymmetry_check,
    fermi_operator_symbol,
    fermi_symbol,
    omega,
    vacuum_tomogram,
)
from .jordan_wigner import FermionAlgebra, build_algebra, density_matrix, fock_state, vacuum
from .linalg import anticommutator, dagger, kron, matmul, trace
from .rotations import Direction, EulerAngles, SphereQuadrature, direction, euler_rotation, sphere_quadrature
from .star import kernel_closed_form, star, star_kernel
from .tomography import (
    CONVENTION,
    OperatorSymbol,
    PointSet,
    delta_kernel,
    dequantizer,
    multi_dequantizer,
    multi_quantizer,
    quantizer,
    reconstruct,
    reproduce,
    symbol,
    symbol_of,
    tomo_grid,
    tomogram,
)

__version__ = "0.1.0"
