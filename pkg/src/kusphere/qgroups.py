"""Finite abelian q-groups, their subgroup lattices, and psi-orbits on characters.

A group is stored as its exponent vector (e_1 >= e_2 >= ...), meaning
Z/q^e_1 x Z/q^e_2 x ...; elements are coordinate tuples. A subgroup H
is identified with the lattice L = pi^{-1}(H) in Z^r, which contains the
relation lattice diag(q^e_i) Z^r, and is stored by the (upper triangular,
row-style) Hermite normal form of L.

Nonabelian q-groups are only accepted as conjugacy-class data: element
orders plus the l-th power map on classes.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import prod
from typing import Iterator, Sequence

from . import arith
from .errors import DataError, InputError, ParseError, ResourceError
from .exactla import IntMatrix, perm_cycles, smith_normal_form

DEFAULT_ORDER_BOUND = 3**6
# Subgroups up to this order are keyed by their sorted element list.
ELEMENT_KEY_CUTOFF = 27


@dataclass(frozen=True)
class AbelianQGroup:
    q: int
    exponents: tuple[int, ...]

    def __post_init__(self):
        if self.q < 3 or not arith.is_prime(self.q):
            raise InputError(f"q must be an odd prime, got {self.q}")
        exps = tuple(int(e) for e in self.exponents)
        if any(e < 1 for e in exps):
            raise InputError("exponents must be positive")
        object.__setattr__(self, "exponents", tuple(sorted(exps, reverse=True)))

    @classmethod
    def trivial(cls, q: int) -> AbelianQGroup:
        return cls(q, ())

    @property
    def rank(self) -> int:
        return len(self.exponents)

    @property
    def moduli(self) -> tuple[int, ...]:
        return tuple(self.q**e for e in self.exponents)

    @property
    def order(self) -> int:
        return self.q ** sum(self.exponents)

    @property
    def exponent(self) -> int:
        return self.q ** max(self.exponents, default=0)

    @property
    def is_cyclic(self) -> bool:
        return self.rank <= 1

    @property
    def name(self) -> str:
        return type_name(self.q, self.exponents)

    def __str__(self):
        return self.name

    def elements(self) -> Iterator[tuple[int, ...]]:
        return itertools.product(*(range(m) for m in self.moduli))

    def identity(self) -> tuple[int, ...]:
        return (0,) * self.rank

    def add(self, g, h):
        return tuple((a + b) % m for a, b, m in zip(g, h, self.moduli))

    def scale(self, k: int, g):
        return tuple(k * a % m for a, m in zip(g, self.moduli))

    def element_order(self, g) -> int:
        o = 1
        for a, m in zip(g, self.moduli):
            o = max(o, m // _gcd(a, m))
        return o


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def type_name(q: int, exponents: Sequence[int]) -> str:
    if not exponents:
        return "e"
    return "x".join(f"C{q**e}" for e in exponents)


_TOKEN = re.compile(r"C(\d+)")


def parse_group(spec: str) -> AbelianQGroup:
    """Parse ``C9``, ``C3xC3``, ``C27 x C3`` into a canonical group."""
    text = spec
    pos = 0
    s = spec.replace(" ", "")
    if not s:
        raise ParseError("empty group description", text, 0)
    orders = []
    while True:
        m = _TOKEN.match(s, pos)
        if m is None:
            raise ParseError(f"expected C<n> in {text!r}", text, pos)
        orders.append((int(m.group(1)), pos))
        pos = m.end()
        if pos == len(s):
            break
        if s[pos] != "x":
            raise ParseError(f"expected 'x' in {text!r}", text, pos)
        pos += 1
    q = None
    exps = []
    for n, at in orders:
        try:
            p, j = arith.prime_power_decomposition(n)
        except InputError:
            raise ParseError(f"C{n}: order is not a prime power", text, at) from None
        if j == 0:
            raise ParseError("C1 is not allowed; omit trivial factors", text, at)
        if p == 2:
            raise ParseError(f"C{n}: q must be odd", text, at)
        if q is None:
            q = p
        elif p != q:
            raise ParseError(f"C{n}: mixed primes {q} and {p}", text, at)
        exps.append(j)
    return AbelianQGroup(q, tuple(exps))


# --------------------------------------------------------------------------
# subgroups


class Subgroup:
    """A subgroup of an AbelianQGroup, stored by the HNF of its lattice."""

    __slots__ = ("group", "hnf", "order", "__dict__")

    def __init__(self, group: AbelianQGroup, hnf: tuple[tuple[int, ...], ...]):
        self.group = group
        self.hnf = hnf
        self.order = group.order // prod(hnf[i][i] for i in range(group.rank))

    def __eq__(self, other):
        return isinstance(other, Subgroup) and self.group == other.group and self.hnf == other.hnf

    def __hash__(self):
        return hash((self.group, self.hnf))

    def __repr__(self):
        return f"Subgroup({self.group.name}, {self.label})"

    @cached_property
    def generators(self) -> tuple[tuple[int, ...], ...]:
        """Rows of the HNF reduced mod the moduli, zero rows dropped."""
        mods = self.group.moduli
        out = []
        for row in self.hnf:
            g = tuple(a % m for a, m in zip(row, mods))
            if any(g):
                out.append(g)
        return tuple(out)

    @cached_property
    def canonical_key(self):
        if self.order <= ELEMENT_KEY_CUTOFF:
            return ("elements", tuple(sorted(self.elements())))
        return ("hnf", self.hnf)

    @cached_property
    def _decomposition(self):
        G = self.group
        r = G.rank
        mods = G.moduli
        if self.order == G.order:
            basis = [tuple(int(i == j) for j in range(r)) for i in range(r)]
            return tuple(mods), basis, None
        # X = diag(m) B^{-1}: rows express the relation lattice in the HNF basis
        X = [self._solve(tuple(mods[i] * (i == j) for j in range(r))) for i in range(r)]
        dec = smith_normal_form(IntMatrix(X).transpose())
        diag = list(dec.diagonal)
        comps = [k for k in range(r) if diag[k] != 1]
        comps.sort(key=lambda k: -diag[k])
        invariants = tuple(diag[k] for k in comps)
        basis = []
        for k in comps:
            y = [dec.uinv_cols[k].get(i, 0) for i in range(r)]
            x = [sum(y[i] * self.hnf[i][j] for i in range(r)) % mods[j] for j in range(r)]
            basis.append(tuple(x))
        coord_rows = [dec.u_rows[k] for k in comps]
        return invariants, basis, coord_rows

    def _solve(self, x) -> list[int] | None:
        """y with y B = x, or None if x is not in the lattice."""
        B = self.hnf
        y = []
        for j in range(len(x)):
            t = x[j] - sum(y[k] * B[k][j] for k in range(j))
            if t % B[j][j]:
                return None
            y.append(t // B[j][j])
        return y

    @property
    def invariants(self) -> tuple[int, ...]:
        """Invariant factors n_1 >= n_2 >= ... (> 1) of the abstract group."""
        return self._decomposition[0]

    @property
    def basis(self) -> list[tuple[int, ...]]:
        """Elements of G generating the cyclic factors of ``invariants``."""
        return self._decomposition[1]

    @cached_property
    def abstract(self) -> AbelianQGroup:
        q = self.group.q
        return AbelianQGroup(q, tuple(arith.vq(n, q) for n in self.invariants))

    @property
    def type_name(self) -> str:
        return self.abstract.name

    @property
    def is_cyclic(self) -> bool:
        return len(self.invariants) <= 1

    @property
    def exponent(self) -> int:
        return self.invariants[0] if self.invariants else 1

    @cached_property
    def label(self) -> str:
        gens = ",".join("(" + ",".join(map(str, g)) + ")" for g in self.generators)
        return f"{self.type_name}<{gens}>"

    def contains(self, g) -> bool:
        return self._solve(tuple(g)) is not None

    def coords(self, g) -> tuple[int, ...]:
        """Coordinates of g in the invariant-factor basis."""
        invariants, _, rows = self._decomposition
        if rows is None:
            if len(g) != len(invariants):
                raise InputError("element has the wrong length")
            return tuple(a % n for a, n in zip(g, invariants))
        y = self._solve(tuple(g))
        if y is None:
            raise InputError(f"{g} is not in {self.label}")
        return tuple(sum(c * y[i] for i, c in row.items()) % n for row, n in zip(rows, invariants))

    def elements(self) -> list[tuple[int, ...]]:
        G = self.group
        out = []
        for z in itertools.product(*(range(n) for n in self.invariants)):
            g = G.identity()
            for c, b in zip(z, self.basis):
                g = G.add(g, G.scale(c, b))
            out.append(g)
        return out

    def is_subgroup_of(self, other: Subgroup) -> bool:
        return self.order <= other.order and other.order % self.order == 0 and all(
            other.contains(g) for g in self.generators
        )

    def characters(self) -> list[tuple[int, ...]]:
        """Character labels in lexicographic order (index = position)."""
        return list(itertools.product(*(range(n) for n in self.invariants)))

    def char_index(self, b) -> int:
        i = 0
        for x, n in zip(b, self.invariants):
            i = i * n + x
        return i


def _hnf_lattices(q: int, exps: Sequence[int]) -> Iterator[tuple[tuple[int, ...], ...]]:
    """All HNF bases of lattices L with diag(q^e) Z^r <= L <= Z^r."""
    r = len(exps)
    mods = [q**e for e in exps]

    def contains_relation(i, rows):
        # rows[0] is row i, rows[1:] are rows i+1..r-1
        piv = rows[0][i]
        v = [mods[i] // piv * x for x in rows[0]]
        for t, row in enumerate(rows[1:], start=i + 1):
            c = v[t]
            p = row[t]
            if c % p:
                return False
            f = c // p
            if f:
                v = [a - f * b for a, b in zip(v, row)]
        return True

    def build(i, below, pivots):
        if i < 0:
            yield tuple(below)
            return
        for a in range(exps[i] + 1):
            piv = q**a
            ranges = [range(pivots[j]) for j in range(i + 1, r)]
            for tail in itertools.product(*ranges):
                row = (0,) * i + (piv,) + tail
                rows = [row] + below
                if contains_relation(i, rows):
                    yield from build(i - 1, rows, {**pivots, i: piv})

    yield from build(r - 1, [], {})


def _check_bound(G: AbelianQGroup, bound: int | None):
    bound = DEFAULT_ORDER_BOUND if bound is None else bound
    if G.order > bound:
        raise ResourceError(f"|G| = {G.order} exceeds the order bound {bound}")


@lru_cache(maxsize=64)
def _enumerate(G: AbelianQGroup) -> tuple[Subgroup, ...]:
    subs = [Subgroup(G, hnf) for hnf in _hnf_lattices(G.q, G.exponents)]
    subs.sort(key=lambda H: (H.order, H.canonical_key))
    return tuple(subs)


def enumerate_subgroups(G: AbelianQGroup, bound: int | None = None) -> list[Subgroup]:
    """Every subgroup once, sorted by (order, canonical_key)."""
    _check_bound(G, bound)
    return list(_enumerate(G))


def cyclic_subgroup_classes(G: AbelianQGroup, bound: int | None = None) -> list[Subgroup]:
    return [H for H in enumerate_subgroups(G, bound) if H.is_cyclic]


def cyclic_subgroup_counts(q: int, exponents: Sequence[int]) -> dict[int, int]:
    """{k: number of cyclic subgroups of order q^k} of prod Z/q^e_i, by element counting."""
    top = max(exponents, default=0)
    at_most = [prod(q ** min(e, k) for e in exponents) for k in range(top + 1)]
    out = {0: 1}
    for k in range(1, top + 1):
        exact = at_most[k] - at_most[k - 1]
        out[k] = exact // arith.euler_phi_prime_power(q, k)
    return out


class SubgroupLattice:
    """The subgroup poset of G with covering relations."""

    def __init__(self, G: AbelianQGroup, bound: int | None = None):
        self.group = G
        self.subgroups = enumerate_subgroups(G, bound)
        self.index = {H: i for i, H in enumerate(self.subgroups)}
        names = {}
        for H in self.subgroups:
            names.setdefault(H.type_name, []).append(H)
        self._display = {}
        for tname, Hs in names.items():
            for H in Hs:
                self._display[H] = tname if len(Hs) == 1 else H.label
        self.by_name = {v: k for k, v in self._display.items()}

    def __len__(self):
        return len(self.subgroups)

    def __iter__(self):
        return iter(self.subgroups)

    def name(self, H: Subgroup) -> str:
        return self._display[H]

    def generated_by(self, *gens) -> Subgroup:
        """The subgroup generated by the given elements of G."""
        key = lattice_hnf(self.group, [tuple(g) for g in gens])
        for H in self.subgroups:
            if H.hnf == key:
                return H
        raise InputError(f"no subgroup generated by {gens}")

    @property
    def top(self) -> Subgroup:
        return self.subgroups[-1]

    @property
    def bottom(self) -> Subgroup:
        return self.subgroups[0]

    @cached_property
    def maximal_subgroups(self) -> dict[Subgroup, list[Subgroup]]:
        """K -> subgroups of index q in K (the covering inclusions below K).

        These are the kernels of the nonzero maps K -> Z/q, one per line
        of Hom(K, Z/q) ~ F_q^s, read off K's invariant-factor basis.
        """
        G = self.group
        q = G.q
        by_hnf = {H.hnf: H for H in self.subgroups}
        out = {}
        for K in self.subgroups:
            s = len(K.invariants)
            found = []
            for c in _projective_points(q, s):
                i0 = next(i for i, x in enumerate(c) if x)
                gens = [G.scale(q, K.basis[i0])]
                for i in range(s):
                    if i != i0:
                        gens.append(G.add(K.basis[i], G.scale(-c[i], K.basis[i0])))
                found.append(by_hnf[lattice_hnf(G, gens)])
            found.sort(key=self.index.__getitem__)
            out[K] = found
        return out

    @cached_property
    def covers(self) -> list[tuple[Subgroup, Subgroup]]:
        """Covering pairs (H, K) with H maximal in K, in lattice order."""
        return [(H, K) for K in self.subgroups for H in self.maximal_subgroups[K]]

    def subgroups_of(self, K: Subgroup) -> list[Subgroup]:
        return [H for H in self.subgroups if H.order <= K.order and H.is_subgroup_of(K)]


def _projective_points(q: int, s: int) -> Iterator[tuple[int, ...]]:
    """Nonzero vectors of F_q^s whose first nonzero entry is 1."""
    for i0 in range(s):
        for tail in itertools.product(range(q), repeat=s - i0 - 1):
            yield (0,) * i0 + (1,) + tail


def lattice_hnf(G: AbelianQGroup, gens) -> tuple[tuple[int, ...], ...]:
    """HNF of the lattice spanned by ``gens`` and the relations of G."""
    r = G.rank
    mods = G.moduli
    rows = [list(g) for g in gens if any(g)]
    rows += [[m * (i == j) for j in range(r)] for i, m in enumerate(mods)]
    basis = []
    for j in range(r):
        active = [row for row in rows if row[j]]
        rest = [row for row in rows if not row[j]]
        while len(active) > 1:
            active.sort(key=lambda row: abs(row[j]))
            piv = active[0]
            nxt = [piv]
            for row in active[1:]:
                f = row[j] // piv[j]
                row = [a - f * b for a, b in zip(row, piv)]
                (nxt if row[j] else rest).append(row)
            active = nxt
        piv = active[0]
        if piv[j] < 0:
            piv = [-a for a in piv]
        basis.append(piv)
        rows = rest
    for j in range(1, r):
        p = basis[j][j]
        for i in range(j):
            f = basis[i][j] // p
            if f:
                basis[i] = [a - f * b for a, b in zip(basis[i], basis[j])]
    return tuple(tuple(row) for row in basis)


@lru_cache(maxsize=64)
def lattice(G: AbelianQGroup, bound: int | None = None) -> SubgroupLattice:
    return SubgroupLattice(G, bound)


# --------------------------------------------------------------------------
# psi-orbits


@dataclass(frozen=True)
class PsiOrbitPartition:
    """Cycles of chi -> chi^l on character labels, each led by its smallest label."""

    invariants: tuple[int, ...]
    ell: int
    orbits: tuple[tuple[tuple[int, ...], ...], ...]

    def __len__(self):
        return len(self.orbits)

    @property
    def sizes(self) -> list[int]:
        return [len(o) for o in self.orbits]

    def as_sets(self) -> set[frozenset]:
        return {frozenset(o) for o in self.orbits}


def _invariants_of(H) -> tuple[int, ...]:
    if isinstance(H, Subgroup):
        return H.invariants
    if isinstance(H, AbelianQGroup):
        return H.moduli
    raise InputError(f"expected a group or subgroup, got {type(H).__name__}")


def psi_permutation(invariants: Sequence[int], ell: int) -> list[int]:
    """Index permutation of b -> l*b on the lexicographically ordered labels."""
    labels = list(itertools.product(*(range(n) for n in invariants)))
    out = []
    for b in labels:
        i = 0
        for x, n in zip(b, invariants):
            i = i * n + (ell * x) % n
        out.append(i)
    return out


def psi_orbits(H, ell: int) -> PsiOrbitPartition:
    invariants = _invariants_of(H)
    q = _q_of(H)
    if ell % q == 0:
        raise InputError(f"l = {ell} is not coprime to q = {q}")
    labels = list(itertools.product(*(range(n) for n in invariants)))
    perm = psi_permutation(invariants, ell)
    orbits = tuple(tuple(labels[a] for a in cyc) for cyc in perm_cycles(perm))
    return PsiOrbitPartition(tuple(invariants), ell, orbits)


def _q_of(H) -> int:
    return H.group.q if isinstance(H, Subgroup) else H.q


# --------------------------------------------------------------------------
# class data for nonabelian q-groups


@dataclass(frozen=True)
class ClassData:
    q: int
    class_orders: tuple[int, ...]
    power_maps: dict
    identity_class: int
    name: str = "classdata"

    @property
    def exponent(self) -> int:
        return max(self.class_orders)

    def power_map(self, ell: int) -> tuple[int, ...]:
        if ell in self.power_maps:
            return self.power_maps[ell]
        # the power map only depends on l mod the exponent
        for k, pm in self.power_maps.items():
            if (k - ell) % self.exponent == 0:
                return pm
        raise DataError(f"no power map for l = {ell}", field="power_maps")


def load_class_data(source, name: str | None = None) -> ClassData:
    """Validate and build ClassData from a JSON string, path, or dict."""
    if isinstance(source, dict):
        raw = source
    else:
        text = str(source)
        if not text.lstrip().startswith("{"):
            name = name or text
            with open(text, encoding="utf-8") as fh:
                text = fh.read()
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DataError(f"invalid JSON: {exc}", field="<document>") from None
    q = raw.get("q")
    if not isinstance(q, int) or q < 3 or not arith.is_prime(q):
        raise DataError("must be an odd prime", field="q")
    classes = raw.get("classes")
    if not isinstance(classes, list) or not classes:
        raise DataError("must be a nonempty list", field="classes")
    orders = []
    for i, c in enumerate(classes):
        o = c.get("order") if isinstance(c, dict) else None
        if not isinstance(o, int) or o < 1:
            raise DataError("must be a positive integer", field=f"classes[{i}].order")
        p, _ = arith.prime_power_decomposition(o) if o > 1 else (q, 0)
        if p != q:
            raise DataError(f"{o} is not a power of {q}", field=f"classes[{i}].order")
        orders.append(o)
    ids = [i for i, o in enumerate(orders) if o == 1]
    if len(ids) != 1:
        raise DataError("exactly one class must have order 1", field="classes")
    n = len(orders)
    pms = raw.get("power_maps")
    if not isinstance(pms, dict) or not pms:
        raise DataError("must be a nonempty object", field="power_maps")
    power_maps = {}
    for key, pm in pms.items():
        fld = f"power_maps.{key}"
        try:
            ell = int(key)
        except ValueError:
            raise DataError("keys must be integers", field=fld) from None
        if ell % q == 0:
            raise DataError(f"{ell} is not coprime to {q}", field=fld)
        if not isinstance(pm, list) or sorted(pm) != list(range(n)):
            raise DataError("must be a permutation of the class indices", field=fld)
        if pm[ids[0]] != ids[0]:
            raise DataError("must fix the identity class", field=fld)
        power_maps[ell] = tuple(pm)
    return ClassData(q, tuple(orders), power_maps, ids[0], name or raw.get("name", "classdata"))


@dataclass(frozen=True)
class ClassOrbit:
    classes: tuple[int, ...]
    element_order: int


def class_orbits(data: ClassData, ell: int | None = None) -> list[ClassOrbit]:
    """Cycles of [g] -> [g^l]; each corresponds to a class of cyclic subgroups.

    Without ``ell`` the smallest declared power map is used.
    """
    if ell is None:
        ell = min(data.power_maps)
    pm = data.power_map(ell)
    out = []
    for cyc in perm_cycles(pm):
        os_ = {data.class_orders[c] for c in cyc}
        if len(os_) != 1:
            raise DataError(f"classes {cyc} share an orbit but have orders {sorted(os_)}",
                            field=f"power_maps.{ell}")
        out.append(ClassOrbit(tuple(cyc), os_.pop()))
    return out


def whole_group(G: AbelianQGroup) -> Subgroup:
    r = G.rank
    return Subgroup(G, tuple(tuple(int(i == j) for j in range(r)) for i in range(r)))
