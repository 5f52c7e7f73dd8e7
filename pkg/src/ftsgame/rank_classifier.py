"""FTS rank and SLOCC class of a three-qubit state.

The rank conditions are tested from the top down: q, then T(x,x,x), then the
linear map Upsilon_x on the eight basis vectors, then x itself.  Each
covariant of degree k is compared with ``eps * |x|**k`` so the verdict does
not depend on the overall scale of x.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from . import fts
from .errors import AmbiguousRank

NULL, SEPARABLE, W, GHZ = "Null", "A-B-C", "W", "GHZ"
BISEPARABLE = ("A-BC", "B-CA", "C-AB")  # indexed by the subsystem whose gamma survives
CLASS_LABELS = (NULL, SEPARABLE, *BISEPARABLE, W, GHZ)

RANK_OF = {NULL: 0, SEPARABLE: 1, "A-BC": 2, "B-CA": 2, "C-AB": 2, W: 3, GHZ: 4}


def ghz(a: complex = 1.0) -> np.ndarray:
    """a|000> - |011> - |101> - |110>, with q = 8a."""
    return fts.ket((a, "000"), (-1, "011"), (-1, "101"), (-1, "110"))


REPRESENTATIVES = {
    NULL: np.zeros(8, dtype=complex),
    SEPARABLE: fts.ket("000"),
    "A-BC": fts.ket("000", "011"),
    "B-CA": fts.ket("000", "101"),
    "C-AB": fts.ket("000", "110"),
    W: fts.ket("011", "101", "110"),
    GHZ: ghz(1.0),
}


@dataclass(frozen=True)
class TolerancePolicy:
    eps: float = 1e-9
    # covariants within this factor of their threshold are reported as ambiguous
    margin: float = 10.0

    def __post_init__(self):
        if not self.eps > 0:
            raise ValueError("eps must be positive")
        if not self.margin >= 1:
            raise ValueError("margin must be at least 1")

    def thresholds(self, state_norm: float) -> tuple[float, float, float, float]:
        return tuple(self.eps * state_norm ** k for k in (1, 2, 3, 4))


@dataclass(frozen=True)
class RankCertificate:
    rank: int
    slocc_class: str
    q_value: complex
    t_norm: float
    upsilon_norms: tuple[float, ...]
    gamma_norms: tuple[float, float, float]
    thresholds: tuple[float, float, float, float]
    state_norm: float

    def to_dict(self) -> dict:
        d = asdict(self)
        d["q_value"] = [self.q_value.real, self.q_value.imag]
        d["upsilon_norms"] = list(self.upsilon_norms)
        d["gamma_norms"] = list(self.gamma_norms)
        d["thresholds"] = list(self.thresholds)
        return d


def _alive(value: float, threshold: float, policy: TolerancePolicy, what: str) -> bool:
    if value > policy.margin * threshold:
        return True
    if value < threshold / policy.margin:
        return False
    raise AmbiguousRank(
        f"{what} = {value:.3e} is within a factor {policy.margin:g} of its "
        f"threshold {threshold:.3e}; retry with a different eps"
    )


def classify(x, policy: TolerancePolicy | None = None) -> RankCertificate:
    policy = policy or TolerancePolicy()
    x = fts.as_state(x)
    n = float(np.linalg.norm(x))
    q = fts.quartic_norm(x)
    t_norm = float(np.linalg.norm(fts.triple_product_diagonal(x)))
    ups = tuple(float(v) for v in np.linalg.norm(fts.upsilon_matrix(x), axis=0))
    gam = tuple(float(np.linalg.norm(g)) for g in fts.gammas(x))
    thr = policy.thresholds(n)

    def cert(rank, label):
        return RankCertificate(rank, label, q, t_norm, ups, gam, thr, n)

    if n == 0.0:
        return cert(0, NULL)
    if _alive(abs(q), thr[3], policy, "|q|"):
        return cert(4, GHZ)
    if _alive(t_norm, thr[2], policy, "|T(x,x,x)|"):
        return cert(3, W)
    if _alive(max(ups), thr[1], policy, "max |Upsilon_x(e^i)|"):
        alive = [_alive(g, thr[1], policy, f"|gamma^{s}|") for g, s in zip(gam, fts.SUBSYSTEMS)]
        if sum(alive) != 1:
            raise AmbiguousRank(f"rank 2 state with {sum(alive)} surviving gammas")
        return cert(2, BISEPARABLE[alive.index(True)])
    return cert(1, SEPARABLE)


def classify_with_retry(x, eps_values=(1e-9, 1e-12, 1e-7)) -> RankCertificate:
    """Classify, moving to the next eps whenever the previous one is ambiguous.

    Long chains of SL(2,C) moves inflate the state norm while q stays put,
    which can push a GHZ-class state into the ambiguous band at eps=1e-9.
    """
    err = None
    for eps in eps_values:
        try:
            return classify(x, TolerancePolicy(eps=eps))
        except AmbiguousRank as exc:
            err = exc
    raise err


def permuted_label(label: str, p) -> str:
    """SLOCC class of ``permute_qubits(p, x)`` given the class of x."""
    if label not in BISEPARABLE:
        return label
    p = fts._as_permutation(p)
    return BISEPARABLE[p.index(BISEPARABLE.index(label))]


def random_state_of_rank(rank: int, seed: int, mode: str = "sl") -> np.ndarray:
    """The class representative of ``rank`` moved by a random local transformation.

    ``mode="sl"`` applies a random SL(2,C)^3 element; ``mode="unitary"``
    applies random local unitaries and normalises, giving a state fit for
    the game.  Rank-2 draws pick the biseparable split at random.
    """
    if rank not in (1, 2, 3, 4):
        raise ValueError(f"rank must be 1..4, got {rank}")
    if mode not in ("sl", "unitary"):
        raise ValueError(f"mode must be 'sl' or 'unitary', got {mode!r}")
    rng = np.random.default_rng(seed)
    if rank == 2:
        label = BISEPARABLE[int(rng.integers(3))]
    else:
        label = {1: SEPARABLE, 3: W, 4: GHZ}[rank]
    rep = REPRESENTATIVES[label]
    if mode == "sl":
        return fts.apply_local_sl(fts.random_local_sl(rng), rep)
    psi = fts.apply_local([fts.random_unitary(rng) for _ in range(3)], rep)
    return psi / np.linalg.norm(psi)
