"""Three-qubit Freudenthal triple system.

A state is a length-8 complex vector ``a`` with ``a[4*A + 2*B + C]`` the
amplitude of ``|ABC>``.  Everything here is a pure function of numpy arrays.

Sign convention: the antisymmetric form is taken as

    {x, y} = eps^{A'A} eps^{B'B} eps^{C'C} x_{ABC} y_{A'B'C'},   eps^{01} = 1

With this choice the quartic form, the gamma-contraction formulas for the
triple product and for Upsilon, and the defining relation {T(x,y,z), w} =
q(x,y,z,w) all agree with one another.
"""

from __future__ import annotations

import numpy as np

EPS = np.array([[0.0, 1.0], [-1.0, 0.0]])

SUBSYSTEMS = ("A", "B", "C")

# {e^i, e^j}; kron(eps, eps, eps)[i, j] = eps^{AA'} eps^{BB'} eps^{CC'}
GRAM = -np.kron(np.kron(EPS, EPS), EPS)
_GRAM_T_INV = np.linalg.inv(GRAM.T)


def as_state(x) -> np.ndarray:
    """Coerce ``x`` to a finite complex vector of length 8."""
    a = np.asarray(x, dtype=complex)
    if a.shape == (2, 2, 2):
        a = a.reshape(8)
    if a.shape != (8,):
        raise ValueError(f"a three-qubit state needs 8 amplitudes, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("state amplitudes must be finite")
    return a


def basis(i: int) -> np.ndarray:
    e = np.zeros(8, dtype=complex)
    e[i] = 1.0
    return e


def ket(*terms) -> np.ndarray:
    """Build a state from ``(coefficient, "ABC")`` pairs or bare bit strings.

    >>> ket("011", "101", "110")  # W, unnormalised
    """
    a = np.zeros(8, dtype=complex)
    for term in terms:
        coeff, bits = (1.0, term) if isinstance(term, str) else term
        a[int(bits, 2)] += coeff
    return a


def bilinear_form(x, y) -> complex:
    return complex(as_state(x) @ GRAM @ as_state(y))


def _build_quartic_tensor() -> np.ndarray:
    # Six eps-contraction patterns over the four slots; each entry gives the
    # slot pairs for the A, B and C indices respectively.
    terms = [
        ([(0, 1), (2, 3)], [(0, 1), (2, 3)], [(0, 3), (1, 2)]),
        ([(0, 1), (3, 2)], [(0, 1), (3, 2)], [(0, 2), (1, 3)]),
        ([(0, 2), (1, 3)], [(0, 2), (1, 3)], [(0, 3), (2, 1)]),
        ([(0, 2), (3, 1)], [(0, 2), (3, 1)], [(0, 1), (2, 3)]),
        ([(0, 3), (1, 2)], [(0, 3), (1, 2)], [(0, 2), (3, 1)]),
        ([(0, 3), (2, 1)], [(0, 3), (2, 1)], [(0, 1), (3, 2)]),
    ]
    letters = ("abcd", "efgh", "ijkl")
    out = "".join(letters[p][s] for s in range(4) for p in range(3))
    total = np.zeros((2,) * 12)
    for term in terms:
        subs = [letters[p][u] + letters[p][v] for p in range(3) for u, v in term[p]]
        total += np.einsum(",".join(subs) + "->" + out, *([EPS] * 6))
    return (total / 6.0).reshape(8, 8, 8, 8)


QUARTIC = _build_quartic_tensor()


def quartic_form(x, y, z, w) -> complex:
    """Totally symmetric four-linear form q(x, y, z, w)."""
    return complex(np.einsum("ijkl,i,j,k,l->", QUARTIC,
                             as_state(x), as_state(y), as_state(z), as_state(w)))


def quartic_norm(x) -> complex:
    """q(x) = q(x, x, x, x)."""
    return quartic_form(x, x, x, x)


def hyperdeterminant(x) -> complex:
    """Cayley's hyperdeterminant of the 2x2x2 amplitude tensor."""
    a = as_state(x)
    return complex(
        a[0] ** 2 * a[7] ** 2 + a[1] ** 2 * a[6] ** 2
        + a[2] ** 2 * a[5] ** 2 + a[3] ** 2 * a[4] ** 2
        - 2 * (a[0] * a[1] * a[6] * a[7] + a[0] * a[2] * a[5] * a[7]
               + a[0] * a[4] * a[3] * a[7] + a[1] * a[2] * a[5] * a[6]
               + a[1] * a[3] * a[4] * a[6] + a[2] * a[3] * a[4] * a[5])
        + 4 * (a[0] * a[3] * a[5] * a[6] + a[1] * a[2] * a[4] * a[7])
    )


def _symmetric(d0, off, d1) -> np.ndarray:
    return np.array([[d0, off], [off, d1]], dtype=complex)


def gamma(x, subsystem: str) -> np.ndarray:
    """Symmetric 2x2 covariant gamma^A, gamma^B or gamma^C (quadratic in x)."""
    a = as_state(x)
    if subsystem == "A":
        return _symmetric(2 * (a[0] * a[3] - a[1] * a[2]),
                          a[0] * a[7] - a[1] * a[6] + a[4] * a[3] - a[5] * a[2],
                          2 * (a[4] * a[7] - a[5] * a[6]))
    if subsystem == "B":
        return _symmetric(2 * (a[0] * a[5] - a[4] * a[1]),
                          a[0] * a[7] - a[4] * a[3] + a[2] * a[5] - a[6] * a[1],
                          2 * (a[2] * a[7] - a[6] * a[3]))
    if subsystem == "C":
        return _symmetric(2 * (a[0] * a[6] - a[2] * a[4]),
                          a[0] * a[7] - a[2] * a[5] + a[1] * a[6] - a[3] * a[4],
                          2 * (a[1] * a[7] - a[3] * a[5]))
    raise ValueError(f"subsystem must be one of {SUBSYSTEMS}, got {subsystem!r}")


def gammas(x) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    return gamma(x, "A"), gamma(x, "B"), gamma(x, "C")


def triple_product_forms(x) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """T(x, x, x) computed through gamma^A, gamma^B and gamma^C separately."""
    a = as_state(x).reshape(2, 2, 2)
    gA, gB, gC = gammas(x)
    tA = np.einsum("ij,ibc,jk->kbc", EPS, a, gA)
    tB = np.einsum("ij,aic,jk->akc", EPS, a, gB)
    tC = np.einsum("ij,abi,jk->abk", EPS, a, gC)
    return tA.reshape(8), tB.reshape(8), tC.reshape(8)


def triple_product_diagonal(x) -> np.ndarray:
    a = as_state(x).reshape(2, 2, 2)
    return np.einsum("ij,ibc,jk->kbc", EPS, a, gamma(x, "A")).reshape(8)


def triple_product_full(x, y, z) -> np.ndarray:
    """Trilinear T(x, y, z), recovered from {T(x,y,z), e^i} = q(x, y, z, e^i)."""
    pairings = np.einsum("ijkl,i,j,k->l", QUARTIC, as_state(x), as_state(y), as_state(z))
    return _GRAM_T_INV @ pairings


def upsilon(x, y) -> np.ndarray:
    """Upsilon_x(y) = 3 T(x, x, y) + {x, y} x, via the gamma contractions."""
    b = as_state(y).reshape(2, 2, 2)
    gA, gB, gC = gammas(x)
    u = (np.einsum("ij,jbc,ai->abc", EPS, b, gA)
         + np.einsum("ij,ajc,bi->abc", EPS, b, gB)
         + np.einsum("ij,abj,ci->abc", EPS, b, gC))
    return -u.reshape(8)


def upsilon_matrix(x) -> np.ndarray:
    """Matrix of the linear map Upsilon_x; column i is Upsilon_x(e^i)."""
    return np.stack([upsilon(x, basis(i)) for i in range(8)], axis=1)


def apply_local(mats, x) -> np.ndarray:
    """(g_A ⊗ g_B ⊗ g_C) x for arbitrary 2x2 matrices."""
    gA, gB, gC = (np.asarray(m, dtype=complex) for m in mats)
    a = as_state(x).reshape(2, 2, 2)
    return np.einsum("ai,bj,ck,ijk->abc", gA, gB, gC, a).reshape(8)


def apply_local_sl(g, x, tol: float = 1e-10) -> np.ndarray:
    """Act with a triple of unit-determinant matrices on x."""
    mats = [np.asarray(m, dtype=complex) for m in g]
    if len(mats) != 3 or any(m.shape != (2, 2) for m in mats):
        raise ValueError("expected three 2x2 matrices")
    for name, m in zip(SUBSYSTEMS, mats):
        d = np.linalg.det(m)
        if abs(d - 1) > tol:
            raise ValueError(f"g_{name} has determinant {d}, not 1")
    return apply_local(mats, x)


def _as_permutation(p) -> tuple[int, int, int]:
    if isinstance(p, str):
        p = tuple(SUBSYSTEMS.index(c) for c in p.upper())
    p = tuple(int(i) for i in p)
    if sorted(p) != [0, 1, 2]:
        raise ValueError(f"not a permutation of the three qubits: {p!r}")
    return p


def permute_qubits(p, x) -> np.ndarray:
    """Relabel qubits: qubit k of the result is qubit ``p[k]`` of ``x``.

    ``p`` is a tuple of indices or a string such as ``"BAC"`` (swap A and B).
    """
    p = _as_permutation(p)
    return np.transpose(as_state(x).reshape(2, 2, 2), p).reshape(8)


def random_state(rng: np.random.Generator) -> np.ndarray:
    return rng.standard_normal(8) + 1j * rng.standard_normal(8)


def random_sl2(rng: np.random.Generator, min_det: float = 1e-6) -> np.ndarray:
    while True:
        m = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        d = np.linalg.det(m)
        if abs(d) >= min_det:
            return m / np.sqrt(d)


def random_local_sl(rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    return random_sl2(rng), random_sl2(rng), random_sl2(rng)


def random_unitary(rng: np.random.Generator) -> np.ndarray:
    """Haar-random 2x2 unitary."""
    z = (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def rel_residual(lhs, rhs) -> float:
    """Largest componentwise |lhs - rhs| / (1 + max(|lhs|, |rhs|))."""
    lhs = np.asarray(lhs, dtype=complex)
    rhs = np.asarray(rhs, dtype=complex)
    scale = 1.0 + np.maximum(np.abs(lhs), np.abs(rhs))
    return float(np.max(np.abs(lhs - rhs) / scale))

