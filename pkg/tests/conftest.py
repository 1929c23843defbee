"""Shared test fixtures: seeded generic payloads and common Pauli matrices."""

import numpy as np
import pytest

from qftmcu.circuit import normalize_angle
from qftmcu.gate_algebra import random_unitary, zyz_decompose


def generic_u(seed: int = 0) -> np.ndarray:
    """A random U(2) whose ZYZ data is bounded away from every degeneracy.

    The frozen count and slot formulas assume a generic payload: nonzero
    determinant phase (else no phase ladder is needed), theta away from 0 and
    pi (else the Ry factor collapses), and alpha, beta, beta-alpha away from 0
    (else one of the A/B/C factors is the identity and is never emitted).
    """
    rng = np.random.default_rng(seed)
    while True:
        u = random_unitary(rng)
        d, a, t, b = zyz_decompose(u)
        if (
            abs(d) > 1e-3
            and abs(t) > 1e-3
            and abs(t - np.pi) > 1e-3
            and abs(a) > 1e-3
            and abs(b) > 1e-3
            and abs(normalize_angle(b - a)) > 2e-3
        ):
            return u


@pytest.fixture(scope="session")
def u_gen() -> np.ndarray:
    return generic_u(0)
