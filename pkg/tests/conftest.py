import numpy as np
import pytest


def random_hermitian(rng, d, complex_entries=True):
    a = rng.standard_normal((d, d))
    if complex_entries:
        a = a + 1j * rng.standard_normal((d, d))
    return (a + a.conj().T) / 2


def random_psd(rng, d, rank=None, complex_entries=True):
    rank = d if rank is None else rank
    g = rng.standard_normal((d, rank))
    if complex_entries:
        g = g + 1j * rng.standard_normal((d, rank))
    rho = g @ g.conj().T
    return (rho + rho.conj().T) / 2


def random_state(rng, d, **kw):
    rho = random_psd(rng, d, **kw)
    return rho / np.trace(rho).real


def random_unitary(rng, d):
    z = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


@pytest.fixture
def rng():
    return np.random.default_rng(20061)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
