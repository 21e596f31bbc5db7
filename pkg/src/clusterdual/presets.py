"""Named exchange matrices used by the CLI and the test-suite.

Quivers are written as skew-symmetric matrices with ``b_ij = 1`` for an
arrow ``i -> j``.
"""

from __future__ import annotations

from .matrices import ExchangeMatrix

_PRESETS: dict[str, list[list[int]]] = {
    "a2": [[0, 1], [-1, 0]],
    # path quiver 1 -> 2 -> 3
    "a3": [[0, 1, 0], [-1, 0, 1], [0, -1, 0]],
    "b2": [[0, 1], [-2, 0]],
    "g2": [[0, 1], [-3, 0]],
    # once-punctured torus
    "markov": [[0, 2, -2], [-2, 0, 2], [2, -2, 0]],
    # annulus with 2 + 1 marked points: 1 -> 2 -> 3 and 1 -> 3
    "atilde21": [[0, 1, 1], [-1, 0, 1], [-1, -1, 0]],
    # annulus with 3 + 1 marked points: 1 -> 2 -> 3 -> 4 and 1 -> 4
    "atilde31": [[0, 1, 0, 1], [-1, 0, 1, 0], [0, -1, 0, 1], [-1, 0, -1, 0]],
    # star with centre 1, every leaf pointing into the centre
    "dtilde4": [
        [0, -1, -1, -1, -1],
        [1, 0, 0, 0, 0],
        [1, 0, 0, 0, 0],
        [1, 0, 0, 0, 0],
        [1, 0, 0, 0, 0],
    ],
}

PRESET_NAMES = tuple(_PRESETS)


def preset(name: str) -> ExchangeMatrix:
    try:
        return ExchangeMatrix(_PRESETS[name.lower()])
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; choose from {', '.join(PRESET_NAMES)}") from None
