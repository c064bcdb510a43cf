"""Independent oracles shared by the test modules."""

import numpy as np


def composition_count(total: int, parts: int, head_min: int = 1) -> int:
    """Count integer vectors q >= 0 with sum(q) = total and q[0] >= head_min.

    Plain recursion, independent of the closed form under test.
    """
    if parts == 1:
        return 1 if total >= head_min else 0
    return sum(
        composition_count(total - head, parts - 1, 0)
        for head in range(head_min, total + 1)
    )


def pattern_energy(f: np.ndarray, npts: int = 40001) -> float:
    """(N_t / 2) * integral of |a(u)^H f|^2 over u = cos(theta) in [-1, 1]."""
    n_t = f.size
    u = np.linspace(-1.0, 1.0, npts)
    values = np.empty(npts)
    step = 4000
    for i in range(0, npts, step):
        block = np.exp(1j * np.pi * np.outer(u[i : i + step], np.arange(n_t)))
        values[i : i + step] = np.abs(block.conj() @ f) ** 2
    return n_t / 2.0 * np.trapezoid(values, u)
