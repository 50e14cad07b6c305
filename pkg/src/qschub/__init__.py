"""Exact quantum Schubert calculus for Grassmannians of the classical types.

Subpackages by layer: :mod:`qschub.rootsystem` (Cartan data),
:mod:`qschub.weyl` (signed permutations and parabolic cosets),
:mod:`qschub.qhb` (quantum products in QH*(G/B)), :mod:`qschub.qhp`
(parabolic invariants via the degree-lifting comparison), :mod:`qschub.pieri`
(quantum Pieri formulas for the tautological subbundle classes and their
oracle checks), :mod:`qschub.shapes` (strict-partition labels of the
isotropic Schubert basis), and :mod:`qschub.cli` (command-line surface).
"""

__version__ = "0.1.0"

from .rootsystem import CurveDegree, RootSystem, build_root_system
from .weyl import WeylElement, from_word, weyl_group
from .qhb import QClass, flag_ring

__all__ = [
    "CurveDegree",
    "RootSystem",
    "build_root_system",
    "WeylElement",
    "from_word",
    "weyl_group",
    "QClass",
    "flag_ring",
    "__version__",
]
