"""Operads, their morphisms, and exhaustive law checking."""

from .base import (MutatedOperad, Operad, OperadMorphism, Report, SubOperad, TruncationError,
                   Violation, check_axioms, check_morphism, identity_morphism)
from .dump import operad_from_json, operad_to_json
from .bar import (BarOperad, HopfOperadStructure, augmentation_to_S0, aw, aw_diagonal, bar_circ,
                  make_bar_operad, shuffle_paths)
from .examples import (S0, Coassoc, Susp, TableOperad, make_coassoc, make_S0, make_susp, s0_circ,
                       s0_gamma)
from .hom import CoEnd, End, coend_pair, coend_pairing, make_coend, make_end, shuffle_words
from .tensor import (TensorOperad, iterated_suspension, strip_key, suspension_layers,
                     tensor_operads, wrap_key)

__all__ = [
    "MutatedOperad", "Operad", "OperadMorphism", "Report", "SubOperad", "TruncationError", "Violation",
    "check_axioms", "check_morphism", "identity_morphism", "BarOperad", "HopfOperadStructure",
    "augmentation_to_S0", "aw", "aw_diagonal", "bar_circ", "make_bar_operad", "shuffle_paths",
    "S0", "Coassoc", "Susp", "TableOperad", "make_coassoc", "make_S0", "make_susp", "s0_circ",
    "s0_gamma", "CoEnd", "End", "coend_pair", "coend_pairing", "make_coend", "make_end", "shuffle_words",
    "TensorOperad", "tensor_operads", "iterated_suspension", "strip_key", "suspension_layers",
    "wrap_key", "operad_from_json", "operad_to_json",
]
