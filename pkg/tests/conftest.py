import numpy as np
import pytest

from rkhs_lab import kernels as kc

SEED = 20240817


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(SEED)


def random_contractive_coeffs(rng, size=201, max_step=0.02):
    """a_0 = 1 and a_n nondecreasing: tilde coefficients a_n - a_(n-1) >= 0."""
    steps = rng.uniform(0.0, max_step, size - 1)
    return np.concatenate([[1.0], np.cumprod(1.0 + steps)])


def random_contractive_kernel(rng, size=201):
    return kc.SeriesKernel.disc(random_contractive_coeffs(rng, size))


def synthetic_normalized_gram(rng, m, n, cond_scale=1.0):
    """PSD Gram of a (m+1)-jet frame of rank n with top-left block I_n."""
    dim = (m + 1) * n
    B = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    G = B @ B.conj().T + cond_scale * np.eye(dim)
    # congruence by block-diag(h^-1/2, I) normalizes the top-left block
    from scipy.linalg import block_diag, fractional_matrix_power

    h = G[:n, :n]
    hinvs = fractional_matrix_power(h, -0.5)
    D = block_diag(hinvs, np.eye(dim - n))
    G = D @ G @ D.conj().T
    G[:n, :n] = np.eye(n)  # kill roundoff so the invariant holds exactly
    return G
