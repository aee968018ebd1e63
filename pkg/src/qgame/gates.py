"""Built-in gate matrices.

Two-qubit gates are written in the |first operand, second operand> basis,
e.g. CNOT's control is the most significant index.
"""

import numpy as np

from .state import GateMatrix

_S = 1 / np.sqrt(2)


def qnot():
    return GateMatrix("QNOT", [[0, 1], [1, 0]])


def hadamard():
    return GateMatrix("HADAMARD", _S * np.array([[1, 1], [1, -1]]))


def srn():
    """Square root of NOT; squares to [[0, -1], [1, 0]], i.e. NOT up to phase."""
    return GateMatrix("SRN", _S * np.array([[1, -1], [1, 1]]))


def u_theta(theta):
    c, s = np.cos(theta), np.sin(theta)
    return GateMatrix("U-THETA", [[c, s], [-s, c]])


def u2(phi, theta, psi, alpha):
    """General single-qubit unitary from Euler angles and a global phase ``alpha``."""
    c, s = np.cos(theta), np.sin(theta)
    e = np.exp
    m = np.exp(1j * alpha) * np.array([
        [e(1j * (-phi / 2 - psi / 2)) * c, -e(1j * (-phi / 2 + psi / 2)) * s],
        [e(1j * (phi / 2 - psi / 2)) * s, e(1j * (phi / 2 + psi / 2)) * c],
    ])
    return GateMatrix("U2", m)


def cnot():
    return GateMatrix("CNOT", [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])


def cphase(alpha):
    return GateMatrix("CPHASE", np.diag([1, 1, 1, np.exp(1j * alpha)]))


def swap():
    return GateMatrix("SWAP", [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]])
