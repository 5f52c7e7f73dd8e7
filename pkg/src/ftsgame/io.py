"""State files: JSON with eight ``[re, im]`` pairs in index order 4A + 2B + C."""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .errors import MalformedFile


def state_to_dict(psi, label: str | None = None) -> dict:
    psi = np.asarray(psi, dtype=complex)
    d = {"amplitudes": [[float(z.real), float(z.imag)] for z in psi]}
    if label is not None:
        d["label"] = label
    return d


def state_from_dict(d) -> tuple[np.ndarray, str | None]:
    if not isinstance(d, dict) or "amplitudes" not in d:
        raise MalformedFile('state file must be an object with an "amplitudes" key')
    amps = d["amplitudes"]
    if not isinstance(amps, list) or len(amps) != 8:
        n = len(amps) if isinstance(amps, list) else type(amps).__name__
        raise MalformedFile(f"expected exactly 8 amplitudes, got {n}")
    out = np.empty(8, dtype=complex)
    for i, pair in enumerate(amps):
        if (not isinstance(pair, list) or len(pair) != 2
                or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in pair)):
            raise MalformedFile(f"amplitude {i} must be a [re, im] pair of numbers")
        if not all(math.isfinite(v) for v in pair):
            raise MalformedFile(f"amplitude {i} is not finite")
        out[i] = complex(pair[0], pair[1])
    label = d.get("label")
    if label is not None and not isinstance(label, str):
        raise MalformedFile("label must be a string")
    return out, label


def read_state_file(path) -> tuple[np.ndarray, str | None]:
    try:
        d = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise MalformedFile(f"cannot read state file {path}: {exc}") from exc
    return state_from_dict(d)


def write_state_file(path, psi, label: str | None = None) -> None:
    Path(path).write_text(json.dumps(state_to_dict(psi, label), indent=2) + "\n")
