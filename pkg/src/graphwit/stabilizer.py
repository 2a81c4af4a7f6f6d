"""Stabilizer generators and elements of graph states as symbolic Pauli words.

A word is stored as (x_mask, z_mask, phase_power): qubit q carries an X factor
iff bit q of x_mask is set, a Z factor iff bit q of z_mask is set, and the
whole operator is multiplied by i^phase_power.  Per-qubit factors are ordered
X-then-Z, so the matrix element is
    <r| W |c> = i^t * [r == c ^ x_mask] * (-1)^popcount(c & z_mask).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import GraphwitError
from .graphs import Bipartition, Graph


@dataclass(frozen=True)
class PauliWord:
    n: int
    x_mask: int
    z_mask: int
    phase_power: int  # power of i, mod 4

    def __mul__(self, other: "PauliWord") -> "PauliWord":
        if self.n != other.n:
            raise GraphwitError("qubit count mismatch")
        # reorder Z^z1 X^x2 -> (-1)^|z1 & x2| X^x2 Z^z1
        swaps = bin(self.z_mask & other.x_mask).count("1")
        phase = (self.phase_power + other.phase_power + 2 * (swaps & 1)) % 4
        return PauliWord(
            self.n, self.x_mask ^ other.x_mask, self.z_mask ^ other.z_mask, phase
        )

    @property
    def sign(self) -> int:
        """+1 or -1 for Hermitian words; raises if the phase is imaginary."""
        if self.phase_power == 0:
            return 1
        if self.phase_power == 2:
            return -1
        raise GraphwitError(f"word has imaginary phase i^{self.phase_power}")

    def y_mask(self) -> int:
        """Qubits carrying an XZ (= -iY) local factor."""
        return self.x_mask & self.z_mask

    def is_hermitian(self) -> bool:
        # XZ factors each contribute a -i; Hermiticity needs an even count
        # and a compensating real global phase.
        return (self.phase_power + bin(self.y_mask()).count("1")) % 2 == 0


def identity_word(n: int) -> PauliWord:
    return PauliWord(n, 0, 0, 0)


def generator_word(g: Graph, i: int) -> PauliWord:
    """g_i = X_i prod_{k in N(i)} Z_k."""
    g._check_vertex(i)
    return PauliWord(g.n, 1 << i, g.neighbor_masks[i], 0)


def stab_element(g: Graph, x: int) -> PauliWord:
    """Product of generator words over the set bits of x, phases tracked.

    Every graph-state stabilizer element normalizes to a real sign; a final
    imaginary phase would indicate a bookkeeping bug and raises.
    """
    word = identity_word(g.n)
    rest = x
    while rest:
        low = rest & -rest
        word = word * generator_word(g, low.bit_length() - 1)
        rest ^= low
    if word.phase_power % 2:
        raise GraphwitError(f"stabilizer element {x:#b} has non-real phase")
    return word


def pt_sign(g: Graph, x: int, part: Bipartition) -> int:
    """Sign of stab_element(g, x) under partial transposition on M.

    -1 iff an odd number of qubits in M carry a Y-type factor, i.e. have an X
    factor together with odd Z-parity from neighboring generators.
    """
    word = stab_element(g, x)
    k = bin(word.y_mask() & part.mask).count("1")
    return -1 if k & 1 else 1


def pt_sign_vector(g: Graph, part: Bipartition) -> np.ndarray:
    """pt_sign for all 2^n generator masks at once (float array of +-1)."""
    y = y_bit_table(g)
    f = np.zeros(1 << g.n, dtype=np.uint8)
    for q in part.members():
        f ^= y[q]
    return 1.0 - 2.0 * f


def y_bit_table(g: Graph) -> np.ndarray:
    """(n, 2^n) uint8 table: entry [q, x] = 1 iff stab_element(x) has Y on q."""
    cached = g.__dict__.get("_ytable")
    if cached is None:
        n = g.n
        x = np.arange(1 << n, dtype=np.uint64)
        nb = g.neighbor_masks
        cached = np.empty((n, 1 << n), dtype=np.uint8)
        for q in range(n):
            xq = (x >> np.uint64(q)) & np.uint64(1)
            zq = np.bitwise_count(x & np.uint64(nb[q])) & np.uint64(1)
            cached[q] = (xq & zq).astype(np.uint8)
        g.__dict__["_ytable"] = cached
    return cached


def flip_mask(g: Graph, k: int) -> tuple[int, int]:
    """Graph-basis index masks: (Z_k flip = bit k, neighborhood flip of k).

    Z_k maps |a> to |a XOR (1<<k)>; the product of Z over N(k) flips the
    neighborhood bits instead.
    """
    g._check_vertex(k)
    return 1 << k, g.neighbor_masks[k]


def eigenvalue_on_basis(x: int, a: int) -> int:
    """Eigenvalue of stab_element(x) on graph-basis vector |a>."""
    return -1 if bin(x & a).count("1") & 1 else 1
