"""Access to the shipped reference matrices and braid words for k = 3..10."""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

from .braid import inverse_canonical, to_canonical
from .exact import Mat
from .monodromy import ReducedRepresentation, reduced_representation
from .stokes import factor, stokes_data

GOLDEN_KS = tuple(range(3, 11))


@lru_cache(maxsize=1)
def _load() -> dict:
    text = resources.files("artifact").joinpath("data/golden.json").read_text()
    return json.loads(text)["data"]


def golden_names(k: int) -> list[str]:
    return sorted(n for n, v in _load()[str(k)].items() if isinstance(v, list))


def golden_matrix(k: int, name: str) -> Mat:
    return Mat(_load()[str(k)][name])


def golden_word(k: int, which: str = "forward") -> str | None:
    return _load()[str(k)].get(f"word_{which}")


def computed_matrix(k: int, name: str) -> Mat:
    """The matrix called ``name`` in the reference tables, recomputed."""
    sd = stokes_data(k)
    simple = {"K_k2": sd.K_k2, "K_k3": sd.K_k3, "T": sd.T, "S": sd.S, "P": sd.P, "S_upper": sd.S_upper}
    if name in simple:
        return simple[name]
    if name == "K_0":
        return factor(k, 0)
    if name in ("A", "S_beta"):
        s_can, cert, _ = to_canonical(k)
        return cert.A if name == "A" else s_can
    if name in ("A_prime", "S_beta_prime"):
        s_can, cert, _ = inverse_canonical(k)
        return cert.A if name == "A_prime" else s_can
    if name == "T_reduced":
        return ReducedRepresentation.block(reduced_representation(k).t)
    raise KeyError(name)


def compare_all(ks=GOLDEN_KS) -> list[tuple[int, str, bool]]:
    out = []
    for k in ks:
        for name in golden_names(k):
            out.append((k, name, computed_matrix(k, name) == golden_matrix(k, name)))
    return out
