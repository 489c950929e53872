"""Clifford-orbit design toolkit.

Submodules
----------
f2lin     exact GF(2) symplectic linear algebra, Sp(2n,F_2) enumeration
pauli     phase-exact Pauli labels and characteristic functions
clifford  Clifford unitaries, symplectic actions, lifts, orbits
stabrep   the 4-copy stabilizer code and its exact decomposition data
designs   frame potentials, the deviation epsilon, closed forms
fiducial  exact 4-design constructions and basis cyclers
moments   Haar-moment identities and Monte-Carlo studies
cli       command-line interface (also exposed as `cliffdesigns`)
"""

__version__ = "0.1.0"

__all__ = [
    "f2lin",
    "pauli",
    "clifford",
    "stabrep",
    "designs",
    "fiducial",
    "moments",
    "cli",
]
