"""Exact evaluation of the three-player parity game.

The referee sends rst uniformly from {000, 110, 101, 011}; the players win
when a XOR b XOR c equals r OR s OR t.  A quantum strategy rotates each qubit
by a question-dependent unitary and measures in the computational basis; the
outcome bits are the answers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import fts
from .errors import NotNormalized, NotUnitary

QUESTIONS = ((0, 0, 0), (1, 1, 0), (1, 0, 1), (0, 1, 1))

# sign of A_r B_s C_t in E: + for 000, - otherwise
_E_SIGNS = (1.0, -1.0, -1.0, -1.0)

IDENTITY = np.eye(2, dtype=complex)
HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)

NORM_TOL = 1e-12
UNITARY_TOL = 1e-10

# parity of each outcome index abc
_PARITY = np.array([bin(i).count("1") % 2 for i in range(8)])


def win_predicate(question, answer) -> bool:
    r, s, t = question
    if tuple(question) not in QUESTIONS:
        raise ValueError(f"illegal question {question!r}")
    a, b, c = answer
    return (r | s | t) == (a ^ b ^ c)


def classical_win_probability(strategy) -> float:
    """Win probability of the deterministic strategy (a0, a1, b0, b1, c0, c1)."""
    a0, a1, b0, b1, c0, c1 = strategy
    a, b, c = (a0, a1), (b0, b1), (c0, c1)
    wins = sum(win_predicate((r, s, t), (a[r], b[s], c[t])) for r, s, t in QUESTIONS)
    return wins / len(QUESTIONS)


def classical_value() -> float:
    """Best deterministic win probability, by enumerating all 64 strategies."""
    return max(classical_win_probability(s) for s in itertools.product((0, 1), repeat=6))


def _check_unitary(name, u):
    u = np.asarray(u, dtype=complex)
    if u.shape != (2, 2):
        raise NotUnitary(f"{name} must be 2x2, got shape {u.shape}")
    if np.max(np.abs(u.conj().T @ u - IDENTITY)) > UNITARY_TOL:
        raise NotUnitary(f"{name} is not unitary")
    return u


@dataclass(frozen=True)
class LocalStrategy:
    """Question-dependent rotations R_r (Alice), S_s (Bob), T_t (Charlie)."""

    R0: np.ndarray
    R1: np.ndarray
    S0: np.ndarray
    S1: np.ndarray
    T0: np.ndarray
    T1: np.ndarray

    def __post_init__(self):
        for name in ("R0", "R1", "S0", "S1", "T0", "T1"):
            object.__setattr__(self, name, _check_unitary(name, getattr(self, name)))

    @classmethod
    def uniform(cls, u0, u1) -> "LocalStrategy":
        """Every player applies u0 on question 0 and u1 on question 1."""
        return cls(u0, u1, u0, u1, u0, u1)

    @classmethod
    def canonical(cls) -> "LocalStrategy":
        """Computational basis on question 0, Hadamard basis on question 1."""
        return cls.uniform(IDENTITY, HADAMARD)

    def rotations(self, question) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        r, s, t = question
        return (self.R1 if r else self.R0,
                self.S1 if s else self.S0,
                self.T1 if t else self.T0)

    def observables(self):
        """A_r = R_r^dag Z R_r and likewise for Bob and Charlie."""
        obs = lambda u: u.conj().T @ PAULI_Z @ u
        return ((obs(self.R0), obs(self.R1)),
                (obs(self.S0), obs(self.S1)),
                (obs(self.T0), obs(self.T1)))

    def permuted(self, p) -> "LocalStrategy":
        """Strategy for ``permute_qubits(p, psi)``: player k plays old player p[k]."""
        pairs = ((self.R0, self.R1), (self.S0, self.S1), (self.T0, self.T1))
        new = [pairs[i] for i in fts._as_permutation(p)]
        return LocalStrategy(*new[0], *new[1], *new[2])


@dataclass(frozen=True)
class GameReport:
    per_question: tuple[float, float, float, float]  # in QUESTIONS order
    p_win: float
    expectation_E: float
    outcome_probabilities: tuple[tuple[float, ...], ...]

    def to_dict(self) -> dict:
        return {
            "questions": ["".join(map(str, q)) for q in QUESTIONS],
            "per_question": list(self.per_question),
            "p_win": self.p_win,
            "expectation_E": self.expectation_E,
            "outcome_probabilities": [list(p) for p in self.outcome_probabilities],
        }


def _check_normalized(psi) -> np.ndarray:
    psi = fts.as_state(psi)
    norm2 = float(np.vdot(psi, psi).real)
    if abs(norm2 - 1.0) > NORM_TOL:
        raise NotNormalized(f"state has squared norm {norm2!r}, expected 1")
    return psi


def quantum_win_probability(psi, strat: LocalStrategy) -> GameReport:
    psi = _check_normalized(psi)
    per_question, outcomes = [], []
    for question in QUESTIONS:
        rotated = fts.apply_local(strat.rotations(question), psi)
        probs = np.abs(rotated) ** 2
        target = int(any(question))
        per_question.append(float(probs[_PARITY == target].sum()))
        outcomes.append(tuple(float(p) for p in probs))
    p_win = sum(per_question) / len(QUESTIONS)

    (A, B, C) = strat.observables()
    expectation = 0.0
    for sign, (r, s, t) in zip(_E_SIGNS, QUESTIONS):
        op_psi = fts.apply_local((A[r], B[s], C[t]), psi)
        expectation += sign * float(np.vdot(psi, op_psi).real)

    if abs(p_win - (0.5 + expectation / 8)) > 1e-12:
        raise RuntimeError(
            f"inconsistent evaluation: p_win={p_win!r} but 1/2 + E/8 = {0.5 + expectation / 8!r}"
        )
    return GameReport(tuple(per_question), p_win, expectation, tuple(outcomes))


def gamma_phase_covariance_check(psi, strat: LocalStrategy) -> float:
    """Largest relative residual of the gamma covariance laws over all questions.

    Checks gamma^A(psi^rst) = det(S_s) det(T_t) R_r gamma^A(psi) R_r^T (and the
    B, C analogues), plus the cross-question consistency of the phase-stripped
    gammas for each player's fixed question.
    """
    psi = fts.as_state(psi)
    base = fts.gammas(psi)
    worst = 0.0
    stripped = {}
    for question in QUESTIONS:
        mats = strat.rotations(question)
        dets = [np.linalg.det(m) for m in mats]
        rotated = fts.gammas(fts.apply_local(mats, psi))
        for k in range(3):
            others = np.prod([dets[j] for j in range(3) if j != k])
            expected = others * mats[k] @ base[k] @ mats[k].T
            worst = max(worst, fts.rel_residual(rotated[k], expected))
            stripped[question, k] = rotated[k] / others
    # stripped gamma for player k depends only on that player's own question
    for k in range(3):
        for q1, q2 in itertools.combinations(QUESTIONS, 2):
            if q1[k] == q2[k]:
                worst = max(worst, fts.rel_residual(stripped[q1, k], stripped[q2, k]))
    return worst
