"""Homotopy Mackey functors of the K-local sphere for finite abelian q-groups."""

__version__ = "0.1.0"

from .abgroup import AbGroupExpr
from .errors import (
    ConsistencyError,
    ContractError,
    DataError,
    InputError,
    KuSphereError,
    ParseError,
    ResourceError,
)
from .kulocal import HomotopyQuery, homotopy, homotopy_mackey, local_homotopy_mackey
from .mackey import (
    MackeyFunctor,
    check_mackey_axioms,
    coker_closed_form,
    coker_mackey,
    rq_mackey,
    ru_mackey,
    v_functor,
)
from .qgroups import AbelianQGroup, lattice, load_class_data, parse_group
from .repring import GreenFunctorRU, ru_functor

__all__ = [
    "AbGroupExpr", "AbelianQGroup", "ConsistencyError", "ContractError", "DataError",
    "GreenFunctorRU", "HomotopyQuery", "InputError", "KuSphereError", "MackeyFunctor",
    "ParseError", "ResourceError", "check_mackey_axioms", "coker_closed_form", "coker_mackey",
    "homotopy", "homotopy_mackey", "lattice", "load_class_data", "local_homotopy_mackey",
    "parse_group", "rq_mackey", "ru_functor", "ru_mackey", "v_functor",
]
