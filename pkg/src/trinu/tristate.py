"""Three-qubit occupation-number encoding of a flavor state.

Mapping: |nu_e> = |100>, |nu_mu> = |010>, |nu_tau> = |001>, with qubit A the
most significant bit.  The evolved state lives entirely in the
single-excitation subspace spanned by basis indices {4, 2, 1}.
"""

from dataclasses import dataclass

import numpy as np

from . import linalg
from .oscillation import FlavorAmplitudes

#: Basis indices of (|100>, |010>, |001>).
OCCUPATION_INDICES = (4, 2, 1)

NORM_TOL = 1e-10


@dataclass(frozen=True)
class TripartiteState:
    """Pure W-class state a_e|100> + a_mu|010> + a_tau|001>."""

    a_e: complex
    a_mu: complex
    a_tau: complex

    def __post_init__(self):
        norm = abs(self.a_e) ** 2 + abs(self.a_mu) ** 2 + abs(self.a_tau) ** 2
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state norm^2 is {norm!r}, expected 1 within {NORM_TOL}")

    def amplitudes(self):
        return (self.a_e, self.a_mu, self.a_tau)

    def probabilities(self):
        """Excitation probability of each qubit (A, B, C)."""
        return tuple(abs(a) ** 2 for a in self.amplitudes())

    def vector(self):
        """The state as a length-8 complex vector."""
        v = np.zeros(8, dtype=np.complex128)
        for idx, amp in zip(OCCUPATION_INDICES, self.amplitudes()):
            v[idx] = amp
        return v


def make_state(amps):
    """Build a TripartiteState from FlavorAmplitudes or a 3-tuple of amplitudes."""
    if isinstance(amps, FlavorAmplitudes):
        amps = amps.as_tuple()
    a_e, a_mu, a_tau = (complex(a) for a in amps)
    return TripartiteState(a_e, a_mu, a_tau)


def density(state):
    """8x8 density matrix |psi><psi| of a TripartiteState."""
    v = state.vector()
    return np.outer(v, v.conj())


def reduce(rho, keep):
    """Reduced density matrix on the qubits named in ``keep`` ("A".."BC")."""
    return linalg.partial_trace(rho, keep)
