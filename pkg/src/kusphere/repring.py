"""The representation ring Green functor RU of an abelian q-group.

RU(H) is free on the characters of H. Characters of a subgroup are indexed
through the subgroup's own invariant-factor decomposition, so a label is a
tuple b with 0 <= b_j < n_j and chi_b(g) = exp(2 pi i sum_j b_j z_j / n_j),
z the coordinates of g. Character indices are positions in lexicographic
order of labels.

Restriction along H <= K is a group homomorphism of dual groups, recorded
as an index map K^ -> H^; transfer is its transpose.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from . import arith
from .errors import InputError
from .exactla import IntMatrix, perm_cycles
from .qgroups import AbelianQGroup, Subgroup, SubgroupLattice, lattice, psi_permutation, whole_group

LETTERS = "xyzwuvabcdefghijkmnpqrst"


def _as_subgroup(H) -> Subgroup:
    if isinstance(H, Subgroup):
        return H
    if isinstance(H, AbelianQGroup):
        return whole_group(H)
    raise InputError(f"expected a subgroup, got {type(H).__name__}")


def monomial(label: Sequence[int], letters: Sequence[str]) -> str:
    parts = []
    for b, ch in zip(label, letters):
        if b == 1:
            parts.append(ch)
        elif b:
            parts.append(f"{ch}^{b}")
    return "".join(parts) or "1"


def character_labels(H, offset: int = 0) -> list[str]:
    """Monomial names for the characters of H, letters starting at ``offset``."""
    H = _as_subgroup(H)
    r = len(H.invariants)
    letters = [LETTERS[(offset + k) % len(LETTERS)] for k in range(r)]
    return [monomial(b, letters) for b in H.characters()]


def _radix(invariants):
    w, out = 1, []
    for n in reversed(invariants):
        out.append(w)
        w *= n
    return out[::-1]


def label_of(index: int, invariants: Sequence[int]) -> tuple[int, ...]:
    out = []
    for n in reversed(invariants):
        index, b = divmod(index, n)
        out.append(b)
    return tuple(reversed(out))


def restriction_coefficients(K: Subgroup, H: Subgroup) -> list[list[int]]:
    """Integer matrix A with res(chi_b) = chi_{A b mod n^H}."""
    if not H.is_subgroup_of(K):
        raise InputError(f"{H.label} is not a subgroup of {K.label}")
    nK, nH = K.invariants, H.invariants
    A = []
    for g, n in zip(H.basis, nH):
        z = K.coords(g)
        A.append([zk * n // m for zk, m in zip(z, nK)])
    return A


def restriction_map(K: Subgroup, H: Subgroup) -> array:
    """res as an index map: position i of K^ goes to position out[i] of H^."""
    A = restriction_coefficients(K, H)
    nK, nH = K.invariants, H.invariants
    out = [0] * K.order
    for j, (n, w) in enumerate(zip(nH, _radix(nH))):
        # j-th coordinate of A b over all labels b, in lexicographic order
        vals = [0]
        for a, m in zip(A[j], nK):
            steps = [a * c for c in range(m)]
            vals = [v + s for v in vals for s in steps]
        out = [o + (v % n) * w for o, v in zip(out, vals)]
    return array("l", out)


def restriction_matrix(K: Subgroup, H: Subgroup) -> IntMatrix:
    m = restriction_map(K, H)
    M = IntMatrix.zeros(H.order, K.order)
    for i, j in enumerate(m):
        M.data[j][i] = 1
    return M


def transfer_matrix(K: Subgroup, H: Subgroup) -> IntMatrix:
    """Induction: chi goes to the sum of all characters of K restricting to it."""
    return restriction_matrix(K, H).transpose()


def psi_map(H, ell: int, d: int = 0) -> tuple[list[int], Fraction]:
    """(S, l^d): S the permutation chi -> chi^l of character indices.

    The scalar is kept separate so negative d never produces a rational
    matrix; callers clear denominators as S - l^|d| I.
    """
    H = _as_subgroup(H)
    q = H.group.q
    if ell % q == 0:
        raise InputError(f"l = {ell} is not coprime to q = {q}")
    return psi_permutation(H.invariants, ell), Fraction(ell) ** d


def rq_orbit_basis(H, ell: int) -> list[dict]:
    """Orbit sums of psi^l, a basis of ker(psi^l - 1) = RQ(H)."""
    H = _as_subgroup(H)
    if not arith.is_primitive_mod(ell, H.order):
        raise InputError(f"l = {ell} is not primitive mod |H| = {H.order}")
    perm = psi_permutation(H.invariants, ell)
    return [{a: 1 for a in cyc} for cyc in perm_cycles(perm)]


def multiply(H, a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Product in RU(H): convolution over addition of character labels."""
    H = _as_subgroup(H)
    inv = H.invariants
    n = H.order
    if len(a) != n or len(b) != n:
        raise InputError(f"vectors must have length |H| = {n}")
    labels = H.characters()
    out = [0] * n
    for i, x in enumerate(a):
        if not x:
            continue
        li = labels[i]
        for j, y in enumerate(b):
            if y:
                s = tuple((u + v) % m for u, v, m in zip(li, labels[j], inv))
                out[H.char_index(s)] += x * y
    return out


def add_labels(a, b, invariants):
    return tuple((u + v) % n for u, v, n in zip(a, b, invariants))


@dataclass
class CoverData:
    """Restriction along a covering inclusion H < K, with a section for transfers."""

    sub: Subgroup
    sup: Subgroup
    res: array
    section: array
    kernel: tuple[tuple[int, ...], ...]

    def transfer_fiber(self, i: int) -> list[int]:
        """Indices of the characters of K restricting to character i of H."""
        inv = self.sup.invariants
        base = label_of(self.section[i], inv)
        return [self.sup.char_index(add_labels(base, k, inv)) for k in self.kernel]


def cover_data(K: Subgroup, H: Subgroup) -> CoverData:
    res = restriction_map(K, H)
    section = array("l", [-1]) * H.order
    kernel = []
    inv = K.invariants
    for i, j in enumerate(res):
        if section[j] < 0:
            section[j] = i
        if j == 0:
            kernel.append(label_of(i, inv))
    return CoverData(H, K, res, section, tuple(kernel))


class GreenFunctorRU:
    """RU on the full subgroup lattice of G, with restriction data per covering inclusion."""

    def __init__(self, G: AbelianQGroup, bound: int | None = None):
        self.group = G
        self.lattice: SubgroupLattice = lattice(G, bound)
        self._covers: dict = {}
        self._offset = {}
        top = G.order
        for H in self.lattice:
            self._offset[H] = arith.vq(top // H.order, G.q) if H.order < top else 0

    def labels(self, H: Subgroup) -> list[str]:
        return character_labels(H, self._offset[H])

    def cover(self, H: Subgroup, K: Subgroup) -> CoverData:
        key = (H, K)
        cd = self._covers.get(key)
        if cd is None:
            cd = self._covers[key] = cover_data(K, H)
        return cd

    @cached_property
    def all_covers(self) -> list[CoverData]:
        return [self.cover(H, K) for H, K in self.lattice.covers]

    def res_matrix(self, H: Subgroup, K: Subgroup) -> IntMatrix:
        return restriction_matrix(K, H)

    def tr_matrix(self, H: Subgroup, K: Subgroup) -> IntMatrix:
        return transfer_matrix(K, H)

    def level_rank(self, H: Subgroup) -> int:
        return H.order

    def as_mackey(self):
        from .mackey import ru_mackey

        return ru_mackey(self)


def ru_functor(G: AbelianQGroup, bound: int | None = None) -> GreenFunctorRU:
    return GreenFunctorRU(G, bound)


def transfer_of_one(K: Subgroup, H: Subgroup) -> list[int]:
    """tr_H^K(1) as a vector on the characters of K."""
    return [1 if j == 0 else 0 for j in restriction_map(K, H)]


__all__ = [
    "GreenFunctorRU",
    "character_labels",
    "cover_data",
    "multiply",
    "psi_map",
    "restriction_map",
    "restriction_matrix",
    "rq_orbit_basis",
    "transfer_matrix",
    "transfer_of_one",
]
