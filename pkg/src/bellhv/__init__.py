"""Bell-type hidden-variable models of quantum measurement.

Modules
-------
spin            exact spin-1/2 predictions
dynamics        deterministic outcomes, the extension map, density evolution
singlet         singlet correlations, CHSH, contextual unit-square model
reconstruction  SVD reconstruction of the hypothetical CHSH joint distribution
ghz             Mermin-star GHZ contradiction and spin-1 identities
schmidt         Schmidt decomposition and entanglement measures
"""

from . import dynamics, ghz, reconstruction, schmidt, singlet, spin
from .dynamics import EnsembleConfig, RelaxationClock, SplitPoint
from .spin import Observable, SpinDirection

__version__ = "0.1.0"

__all__ = [
    "dynamics", "ghz", "reconstruction", "schmidt", "singlet", "spin",
    "EnsembleConfig", "RelaxationClock", "SplitPoint", "Observable", "SpinDirection",
]
