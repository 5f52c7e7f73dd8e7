"""Reference computations that share no code path with the package under test."""

import itertools

import numpy as np

EPS = np.array([[0.0, 1.0], [-1.0, 0.0]])
QUESTIONS = ((0, 0, 0), (1, 1, 0), (1, 0, 1), (0, 1, 1))
SIGNS = (1.0, -1.0, -1.0, -1.0)
PAULIS = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)

W_OPTIMUM = 0.8807445007489743  # see-saw from the x-z grid optimum; see test_optimize


def gammas_by_contraction(x):
    """gamma^A,B,C as explicit eps contractions of two copies of the amplitude tensor."""
    a = np.asarray(x, dtype=complex).reshape(2, 2, 2)
    gA = np.einsum("be,cf,abc,def->ad", EPS, EPS, a, a)
    gB = np.einsum("cf,ad,abc,def->be", EPS, EPS, a, a)
    gC = np.einsum("ad,be,abc,def->cf", EPS, EPS, a, a)
    return gA, gB, gC


def hyperdeterminant_by_minors(x):
    """Det a = disc of the binary quadratic det(a_0.. + t a_1..) in Alice's index."""
    a = np.asarray(x, dtype=complex).reshape(2, 2, 2)
    m0, m1 = a[0], a[1]
    # det(m0 + t m1) = c0 + c1 t + c2 t^2
    c0 = np.linalg.det(m0)
    c2 = np.linalg.det(m1)
    c1 = m0[0, 0] * m1[1, 1] + m1[0, 0] * m0[1, 1] - m0[0, 1] * m1[1, 0] - m1[0, 1] * m0[1, 0]
    return c1 ** 2 - 4 * c0 * c2


def win_probability_by_projectors(psi, unitaries):
    """Win probability from 8x8 projectors; ``unitaries`` is (R0, R1, S0, S1, T0, T1)."""
    psi = np.asarray(psi, dtype=complex)
    R, S, T = unitaries[0:2], unitaries[2:4], unitaries[4:6]
    total = 0.0
    for r, s, t in QUESTIONS:
        target = int(r or s or t)
        for a, b, c in itertools.product((0, 1), repeat=3):
            if (a ^ b ^ c) != target:
                continue
            proj = [np.outer(u[k].conj(), u[k]) for u, k in ((R[r], a), (S[s], b), (T[t], c))]
            P = np.kron(np.kron(proj[0], proj[1]), proj[2])
            total += float(np.vdot(psi, P @ psi).real)
    return total / 4


def correlations(psi):
    psi = np.asarray(psi, dtype=complex)
    out = np.zeros((3, 3, 3))
    for i, j, k in itertools.product(range(3), repeat=3):
        M = np.kron(np.kron(PAULIS[i], PAULIS[j]), PAULIS[k])
        out[i, j, k] = float(np.vdot(psi, M @ psi).real)
    return out


def _value(corr, n):
    return sum(s * np.einsum("ijk,i,j,k->", corr, n[r], n[2 + u], n[4 + t])
               for s, (r, u, t) in zip(SIGNS, QUESTIONS))


def seesaw(corr, vectors, max_sweeps=5000, tol=1e-15):
    """Alternating exact maximisation over the six measurement Bloch vectors."""
    n = [np.asarray(v, float) / np.linalg.norm(v) for v in vectors]
    last = -np.inf
    for _ in range(max_sweeps):
        for slot in range(6):
            party, q = divmod(slot, 2)
            v = np.zeros(3)
            for s, (r, u, t) in zip(SIGNS, QUESTIONS):
                if (r, u, t)[party] != q:
                    continue
                if party == 0:
                    v += s * np.einsum("ijk,j,k->i", corr, n[2 + u], n[4 + t])
                elif party == 1:
                    v += s * np.einsum("ijk,i,k->j", corr, n[r], n[4 + t])
                else:
                    v += s * np.einsum("ijk,i,j->k", corr, n[r], n[2 + u])
            if np.linalg.norm(v) > 0:
                n[slot] = v / np.linalg.norm(v)
        e = _value(corr, n)
        if e - last < tol:
            break
        last = e
    return 0.5 + _value(corr, n) / 8


def grid_xz(corr, points=24):
    """Grid over x-z plane vectors for Bob and Charlie; Alice's best response exact.

    Returns (p, bloch vectors) of the best cell.
    """
    ang = np.arange(points) * 2 * np.pi / points
    V = np.stack([np.sin(ang), np.zeros(points), np.cos(ang)], axis=1)
    K = np.einsum("ijk,aj,bk->abi", corr, V, V)  # K[b, c] = corr . (b, c)
    best, arg = -np.inf, None
    for b0, b1 in itertools.product(range(points), repeat=2):
        v0 = K[b0][:, None, :] - K[b1][None, :, :]     # question 000 minus 011
        v1 = -K[b0][None, :, :] - K[b1][:, None, :]    # -(101) - (110)
        val = np.linalg.norm(v0, axis=2) + np.linalg.norm(v1, axis=2)
        c0, c1 = np.unravel_index(np.argmax(val), val.shape)
        if val[c0, c1] > best:
            best = val[c0, c1]
            a0, a1 = v0[c0, c1], v1[c0, c1]
            arg = [a0, a1, V[b0], V[b1], V[c0], V[c1]]
    return 0.5 + best / 8, arg


def oracle_optimum(psi, starts=30, seed=0):
    """Best of the see-saw run from the grid optimum and from random starts."""
    corr = correlations(psi)
    _, arg = grid_xz(corr)
    best = seesaw(corr, [v if np.linalg.norm(v) > 0 else np.array([0, 0, 1.0]) for v in arg])
    rng = np.random.default_rng(seed)
    for _ in range(starts):
        best = max(best, seesaw(corr, list(rng.standard_normal((6, 3)))))
    return best


def gamma_t_identity_residual(x, gammas, triple_product):
    """Residual of gA (x) gC against the two eps-contractions of the state with T."""
    a = np.asarray(x).reshape(2, 2, 2)
    t = triple_product(x).reshape(2, 2, 2)
    gA, _, gC = gammas(x)
    lhs = np.einsum("ij,kl->ijkl", gA, gC)  # indices A1 A2 C1 C2
    rhs = (np.einsum("ed,adc,bef->abcf", EPS, a, t)
           + np.einsum("de,bec,adf->abcf", EPS, a, t))
    return np.max(np.abs(lhs - rhs)) / (1 + max(np.max(np.abs(lhs)), np.max(np.abs(rhs))))
