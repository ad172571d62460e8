import numpy as np
import pytest

from sgrover.complex import generate_complex

Q = 1 / 4
T = 1 / 3
R = 1 / (2 * np.sqrt(3))

# reduced D_1^up on the tetrahedron boundary, rows/cols (01),(02),(12),(13),(23),(03)
SPHERE_D1_UP = np.array([
    [0, -Q, Q, Q, 0, -Q],
    [-Q, 0, -Q, 0, Q, -Q],
    [Q, -Q, 0, -Q, Q, 0],
    [Q, 0, -Q, 0, -Q, -Q],
    [0, Q, Q, -Q, 0, -Q],
    [-Q, -Q, 0, -Q, -Q, 0],
])
SPHERE_ORIENTATION = ["01", "02", "12", "13", "23", "03"]
SPHERE_THETA = [-1, 1, -1, 1, -1, -1]
SPHERE_SWAP = [(2, 5)]

# reduced D_2^down on the five-triangle example, rows/cols 012,214,134,013,213
FIG5_D2_DOWN = np.array([
    [0, -T, 0, T, -R],
    [-T, 0, -T, 0, R],
    [0, -T, 0, T, R],
    [T, 0, T, 0, R],
    [-R, R, R, R, 0],
])
FIG5_ORIENTATION = ["012", "214", "134", "013", "213"]
FIG5_THETA = [-1, -1, -1, -1, 1]
FIG5_SWAP = [(1, 3)]


@pytest.fixture
def sphere():
    return generate_complex("sphere")


@pytest.fixture
def fig5():
    return generate_complex("fig5")


def named_suite():
    """The generated complexes used across property checks."""
    out = [generate_complex("sphere"), generate_complex("fig5")]
    out += [generate_complex("cylinder-strip", m=m) for m in range(3, 9)]
    out += [generate_complex("moebius-strip", m=m) for m in range(3, 9)]
    for n in range(2, 6):
        out.append(generate_complex("simplex", n=n))
        out += [generate_complex("skeleton", n=n, k=k) for k in range(n - 1)]
    return out


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, msg = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {msg}")
