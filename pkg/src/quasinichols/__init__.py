"""Nichols algebras over quasi-Hopf algebras of finite abelian groups."""

from __future__ import annotations

__version__ = "0.1.0"

from .exact_scalars import Cyclotomic, Phase
from .groups import FinAbGroup, GroupHom, hat_group
from .cocycles import (
    Cochain2,
    Cocycle3,
    NotCoboundary,
    coboundary,
    enumerate_cocycles,
    is_abelian,
    phi_tilde,
    pullback,
    solve_coboundary,
    verify_3cocycle,
)
from .ydmod import (
    Monomial,
    SimpleYDSpec,
    YDModule,
    change_base,
    classify_simple,
    direct_sum,
    has_standard_basis,
    make_simple,
    one_dim_module,
    twist_module,
)
from .dynkin_roots import (
    Bicharacter,
    dynkin_diagram,
    is_finite_type,
    root_system,
    bosonization_dimension,
)
from .nichols_oracle import (
    BudgetExceeded,
    TensorElement,
    graded_dim,
    hilbert_series_oracle,
    in_nichols_ideal,
)

__all__ = [name for name in dir() if not name.startswith("_")]
