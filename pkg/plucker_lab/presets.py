"""Named index pairs shared by the CLI and the tests."""

from typing import Dict

PAIR_PRESETS: Dict[str, Dict] = {
    "ws-six": {
        "m": 6,
        "n": 6,
        "I": [1, 2, 3, 4, 10, 11],
        "J": [5, 6, 7, 8, 9, 11],
        "r": 3,
        "note": "weakly separated, eta = 5, compatible sets of sizes 1, 2, 4, 5, 4, 2",
    },
    "layout-six": {
        "m": 6,
        "n": 6,
        "I": [1, 5, 3, 4, 10, 11],
        "J": [2, 6, 7, 8, 9, 11],
        "note": "unsorted tuple whose layout starts at 10",
    },
    "interleaved-two": {
        "m": 2,
        "n": 2,
        "I": [1, 3],
        "J": [2, 4],
        "r": 2,
        "note": "smallest pair that is not weakly separated",
    },
    "interleaved-three": {
        "m": 3,
        "n": 3,
        "I": [1, 3, 5],
        "J": [2, 4, 6],
        "r": 3,
        "note": "alternating colours around the hexagon",
    },
    "complement-three": {
        "m": 3,
        "n": 3,
        "I": [1, 2, 4],
        "J": [3, 5, 6],
        "r": 3,
        "note": "two compatible diagrams",
    },
    "prematch-seven": {
        "m": 7,
        "n": 7,
        "I": [1, 4, 5, 6, 8, 9, 10],
        "J": [5, 7, 8, 9, 10, 11, 13],
        "note": "pre-matching with three mandatory edges on s = 6",
    },
    "prematch-rect": {
        "m": 5,
        "n": 7,
        "I": [1, 2, 5, 7, 11],
        "J": [2, 3, 4, 6, 7],
        "note": "rectangular shape, s = 9, six mandatory edges",
    },
}

LAPLACE_PRESETS: Dict[str, Dict[str, int]] = {
    "laplace-three": {"n": 3, "d": 1},
    "laplace-seven": {"n": 7, "d": 4},
}
