"""Mackey functors on the subgroup lattice of a finite abelian q-group.

A functor stores one Level per subgroup (generator labels and one summand
token per generator) and sparse res/tr matrices for every covering
inclusion H < K (index q). Longer restrictions and transfers are composites
along chains. The functors built here all come from RU: RU itself, the
rational subring RQ, cokernels of psi^l - 1 on RU{beta^d}, and tensor
products of those with abelian groups.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import arith
from .abgroup import AbGroupExpr, hom_allowed, summand_modulus, tensor_summands
from .errors import ConsistencyError, DataError, InputError
from .exactla import (
    DEBUG,
    IntMatrix,
    QuotientPresentation,
    SparseMatrix,
    cokernel_presentation,
    induced_quotient_map_sparse,
    diagonal_form,
    orbit_cokernel,
    perm_cycles,
    psi_relation_matrix,
    rank_mod_p,
    smith_normal_form,
)
from .qgroups import (
    AbelianQGroup,
    ClassData,
    Subgroup,
    class_orbits,
    cyclic_subgroup_counts,
    psi_permutation,
    whole_group,
)
from .repring import GreenFunctorRU, label_of

SCHEMA_VERSION = "1"


@dataclass(frozen=True)
class Level:
    name: str
    order: int
    labels: tuple[str, ...]
    kinds: tuple[str, ...]

    def __post_init__(self):
        if len(self.labels) != len(self.kinds):
            raise InputError(f"level {self.name}: {len(self.labels)} labels for {len(self.kinds)} summands")

    @property
    def rank(self) -> int:
        return len(self.kinds)

    @property
    def value(self) -> AbGroupExpr:
        return AbGroupExpr.from_tokens(self.kinds)

    @property
    def moduli(self) -> tuple[int, ...]:
        return tuple(summand_modulus(k) for k in self.kinds)


class MackeyFunctor:
    """Levels in lattice order (bottom first) with res/tr on covering inclusions."""

    def __init__(self, group: str, q: int, levels: Sequence[Level],
                 covers: Sequence[tuple[str, str]], res: dict, tr: dict, meta: dict | None = None):
        self.group = group
        self.q = q
        self.levels = {L.name: L for L in levels}
        self.covers = [tuple(c) for c in covers]
        self.res = res
        self.tr = tr
        self.meta = dict(meta or {})
        self.below: dict[str, list[str]] = {n: [] for n in self.levels}
        for h, k in self.covers:
            self.below[k].append(h)

    # access

    @property
    def names(self) -> list[str]:
        return list(self.levels)

    @property
    def top(self) -> str:
        return self.names[-1]

    @property
    def bottom(self) -> str:
        return self.names[0]

    def level(self, name: str) -> Level:
        return self.levels[name]

    def level_name(self, H) -> str:
        """Level name of a Subgroup of the functor's group."""
        from .qgroups import lattice

        return lattice(H.group, H.group.order).name(H)

    def value(self, name: str) -> AbGroupExpr:
        return self.levels[name].value

    def values(self) -> dict[str, AbGroupExpr]:
        return {n: L.value for n, L in self.levels.items()}

    def res_matrix(self, h: str, k: str) -> IntMatrix:
        return self.res[(h, k)].dense()

    def tr_matrix(self, h: str, k: str) -> IntMatrix:
        return self.tr[(h, k)].dense()

    @property
    def is_zero(self) -> bool:
        return all(L.rank == 0 for L in self.levels.values())

    def summary(self) -> dict[str, str]:
        return {n: str(L.value) for n, L in self.levels.items()}

    def __eq__(self, other):
        if not isinstance(other, MackeyFunctor):
            return NotImplemented
        return (self.group == other.group and self.q == other.q and self.levels == other.levels
                and self.covers == other.covers and self.res == other.res and self.tr == other.tr
                and self.meta == other.meta)

    def __repr__(self):
        return f"MackeyFunctor({self.group}, {self.summary()})"

    # serialization

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "group": self.group,
            "q": self.q,
            "meta": self.meta,
            "levels": [
                {"subgroup": L.name, "order": L.order, "value": str(L.value),
                 "generators": list(L.labels), "summands": list(L.kinds)}
                for L in self.levels.values()
            ],
            "res": [_map_json(h, k, self.res[(h, k)]) for h, k in self.covers],
            "tr": [_map_json(h, k, self.tr[(h, k)]) for h, k in self.covers],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)

    @classmethod
    def from_json(cls, doc) -> MackeyFunctor:
        if isinstance(doc, str):
            doc = json.loads(doc)
        try:
            levels = [Level(x["subgroup"], x["order"], tuple(x["generators"]), tuple(x["summands"]))
                      for x in doc["levels"]]
            res, tr, covers = {}, {}, []
            for item in doc["res"]:
                key = (item["sub"], item["sup"])
                covers.append(key)
                res[key] = _map_from_json(item)
            for item in doc["tr"]:
                tr[(item["sub"], item["sup"])] = _map_from_json(item)
            return cls(doc["group"], doc["q"], levels, covers, res, tr, doc.get("meta", {}))
        except KeyError as exc:
            raise DataError("missing field", field=str(exc.args[0])) from None


def _map_json(h, k, M: SparseMatrix) -> dict:
    return {"sub": h, "sup": k, "shape": list(M.shape), "matrix": M.tolist()}


def _map_from_json(item) -> SparseMatrix:
    rows, cols = item["shape"]
    M = SparseMatrix.from_dense(IntMatrix(item["matrix"], cols) if rows else IntMatrix.zeros(0, cols))
    return M


def zero_functor_like(M: MackeyFunctor, meta: dict | None = None) -> MackeyFunctor:
    levels = [Level(L.name, L.order, (), ()) for L in M.levels.values()]
    maps = {c: SparseMatrix([], 0) for c in M.covers}
    return MackeyFunctor(M.group, M.q, levels, M.covers, maps, dict(maps), meta)


def direct_sum(A: MackeyFunctor, B: MackeyFunctor, meta: dict | None = None) -> MackeyFunctor:
    """Levelwise direct sum over the same lattice; A's generators come first."""
    if A.names != B.names or A.covers != B.covers:
        raise InputError("direct sum needs functors on the same lattice")
    levels = [Level(n, a.order, a.labels + b.labels, a.kinds + b.kinds)
              for n, a, b in ((n, A.levels[n], B.levels[n]) for n in A.names)]
    res, tr = {}, {}
    for h, k in A.covers:
        res[(h, k)] = _block_diag(A.res[(h, k)], B.res[(h, k)])
        tr[(h, k)] = _block_diag(A.tr[(h, k)], B.tr[(h, k)])
    return MackeyFunctor(A.group, A.q, levels, A.covers, res, tr, meta if meta is not None else {})


def _block_diag(X: SparseMatrix, Y: SparseMatrix) -> SparseMatrix:
    rows = [dict(r) for r in X.rows]
    rows += [{j + X.ncols: v for j, v in r.items()} for r in Y.rows]
    return SparseMatrix(rows, X.ncols + Y.ncols)


# --------------------------------------------------------------------------
# functors derived from RU


@lru_cache(maxsize=8)
def ru_functor(G: AbelianQGroup, bound: int | None = None) -> GreenFunctorRU:
    return GreenFunctorRU(G, bound)


def _level_names(ru: GreenFunctorRU):
    return [(ru.lattice.name(H), H) for H in ru.lattice]


def _cover_names(ru: GreenFunctorRU):
    lat = ru.lattice
    return [(lat.name(H), lat.name(K), H, K) for H, K in lat.covers]


def ru_mackey(ru: GreenFunctorRU) -> MackeyFunctor:
    """RU with its character bases, as a Mackey functor of free abelian groups."""
    levels = [Level(n, H.order, tuple(ru.labels(H)), ("Z",) * H.order) for n, H in _level_names(ru)]
    res, tr = {}, {}
    covers = []
    for h, k, H, K in _cover_names(ru):
        cd = ru.cover(H, K)
        cols = [{j: 1} for j in cd.res]
        R = SparseMatrix.from_columns(cols, H.order)
        covers.append((h, k))
        res[(h, k)] = R
        tr[(h, k)] = R.transpose()
    return MackeyFunctor(ru.group.name, ru.group.q, levels, covers, res, tr, {"functor": "RU"})


def rq_mackey(G: AbelianQGroup, ell: int, bound: int | None = None) -> MackeyFunctor:
    """RQ = ker(psi^l - 1) in the basis of psi-orbit sums, labeled by orbit representatives."""
    _require_primitive(ell, G.order)
    ru = ru_functor(G, bound)
    bases = {}
    levels = []
    for n, H in _level_names(ru):
        cycles = perm_cycles(psi_permutation(H.invariants, ell))
        where = {}
        for k, cyc in enumerate(cycles):
            for a in cyc:
                where[a] = k
        labels = ru.labels(H)
        bases[H] = (cycles, where)
        levels.append(Level(n, H.order, tuple(labels[c[0]] for c in cycles), ("Z",) * len(cycles)))
    res, tr, covers = {}, {}, []
    for h, k, H, K in _cover_names(ru):
        cd = ru.cover(H, K)
        cyc_H, where_H = bases[H]
        cyc_K, where_K = bases[K]
        # res of an orbit sum, read off at the representatives of H's orbits
        rcols = []
        for cyc in cyc_K:
            acc: dict = {}
            for a in cyc:
                b = cd.res[a]
                acc[b] = acc.get(b, 0) + 1
            rcols.append({t: acc[c[0]] for t, c in enumerate(cyc_H) if acc.get(c[0])})
        tcols = []
        for cyc in cyc_H:
            acc = {}
            for b in cyc:
                for a in cd.transfer_fiber(b):
                    acc[a] = acc.get(a, 0) + 1
            tcols.append({t: acc[c[0]] for t, c in enumerate(cyc_K) if acc.get(c[0])})
        covers.append((h, k))
        res[(h, k)] = SparseMatrix.from_columns(rcols, len(cyc_H))
        tr[(h, k)] = SparseMatrix.from_columns(tcols, len(cyc_K))
    return MackeyFunctor(G.name, G.q, levels, covers, res, tr, {"functor": "RQ", "ell": ell})


def _require_primitive(ell: int, m: int):
    q, _ = arith.prime_power_decomposition(m)
    if m > 1 and ell % q == 0:
        raise InputError(f"l = {ell} is divisible by q = {q}")
    if not arith.is_primitive_mod(ell, m):
        raise InputError(f"l = {ell} is not primitive mod {m}")


# --------------------------------------------------------------------------
# cokernels of psi^l - 1


def _kind(order: int, mode: str, q: int) -> str:
    if order:
        return f"Z/{order}"
    return f"Z{q}^" if mode == "q_complete" else "Z"


def coker_closed_form(source, ell: int, d: int, mode: str = "q_complete") -> AbGroupExpr:
    """One summand per (conjugacy class of) cyclic subgroup C:

    Z/q^{nu_q(l^{d phi(|C|)} - 1)} for d != 0, a q-adic integer (or Z) for d = 0.
    """
    if mode not in ("q_complete", "integral"):
        raise InputError(f"unknown mode {mode!r}")
    if isinstance(source, ClassData):
        q = source.q
        _require_primitive(ell, source.exponent)
        orders = [o.element_order for o in class_orbits(source, ell)]
        exps = [arith.vq(o, q) for o in orders]
    else:
        if isinstance(source, Subgroup):
            source = source.abstract
        if not isinstance(source, AbelianQGroup):
            raise InputError("expected a group, subgroup or class data")
        q = source.q
        _require_primitive(ell, source.order)
        exps = [k for k, c in cyclic_subgroup_counts(q, source.exponents).items() for _ in range(c)]
    if d == 0:
        n = len(exps)
        return AbGroupExpr.padic(q) * n if mode == "q_complete" else AbGroupExpr.free(n)
    if mode == "integral" and d < 0:
        raise InputError("negative degrees need l inverted; use q_complete mode")
    orders = {}
    for k in set(exps):
        e = d * arith.euler_phi_prime_power(q, k)
        if mode == "q_complete":
            orders[k] = q ** arith.nu_q_unit_power_minus_one(ell, e, q)
        else:
            orders[k] = ell**e - 1
    return AbGroupExpr(cyclic=tuple(orders[k] for k in exps))


def level_presentation(invariants: Sequence[int], q: int, ell: int, d: int, labels: Sequence[str],
                       mode: str = "q_complete", method: str = "closed") -> QuotientPresentation:
    """Cokernel of psi^l - 1 on RU(H){beta^d} for H with the given invariants."""
    perm = psi_permutation(invariants, ell)
    if method == "snf":
        return cokernel_presentation(psi_relation_matrix(perm, ell, d), mode=mode, q=q, labels=labels)
    return orbit_cokernel(perm, ell, d, labels, mode=mode, q=q)


def presentation_value(P: QuotientPresentation) -> AbGroupExpr:
    q = P.q
    return AbGroupExpr.from_tokens(_kind(o, P.mode, q) for o in P.orders)


def snf_level_value(invariants: Sequence[int], q: int, ell: int, d: int,
                    mode: str = "q_complete") -> AbGroupExpr:
    """Cokernel summands read off a diagonalization of the relation matrix alone.

    Any diagonal form presents the same group, so the multiset of
    prime-power summands needs no divisibility chain.
    """
    M = psi_relation_matrix(psi_permutation(invariants, ell), ell, d)
    diag = [v for v in diagonal_form(M) if v != 1]
    zeros = diag.count(0)
    finite = tuple(v for v in diag if v)
    if mode == "q_complete":
        return AbGroupExpr(profinite=(q,) * zeros, cyclic=tuple(arith.q_part(v, q) for v in finite))
    return AbGroupExpr(free_rank=zeros, cyclic=finite)


def coker_signature(G: AbelianQGroup, ell: int, d: int, mode: str = "q_complete") -> tuple:
    """Everything the assembled cokernel functor depends on.

    Characters and their psi-cycles depend on l mod exp(G). A cycle of
    length t contributes a generator whose order and lift depend only on
    (t, l^{dt} - 1, l^{-d}), and since l is primitive, t = phi(q^k) for
    a character of order q^k. Two (l, d) with equal signatures give
    identical functors.
    """
    q, e = G.q, arith.vq(G.exponent, G.q)
    blocks = []
    for k in range(e + 1):
        t = arith.euler_phi_prime_power(q, k) if k else 1
        if d == 0:
            blocks.append((t, 0, 0))
            continue
        if mode == "integral":
            order = ell ** (d * t) - 1
        else:
            order = q ** arith.nu_q_unit_power_minus_one(ell, d * t, q)
        blocks.append((t, order, pow(ell, -d, order) if order > 1 else 0))
    return (G, mode, ell % G.exponent, tuple(blocks))


def _prod(xs):
    out = 1
    for x in xs:
        out *= x
    return out


def coker_mackey(G: AbelianQGroup, ell: int, d: int, method: str = "closed",
                 mode: str = "q_complete", bound: int | None = None) -> MackeyFunctor:
    """The Mackey functor coker(psi^l - 1) on RU{beta^d}, levelwise.

    ``closed`` uses one generator per psi-orbit (its representative), which
    reproduces the labeled bases of the hand computations; ``snf`` takes
    generators from a Smith normal form; ``both`` builds the orbit version
    and checks every level against the Smith normal form first.
    """
    if method not in ("closed", "snf", "both"):
        raise InputError(f"unknown method {method!r}")
    _require_primitive(ell, G.order)
    ru = ru_functor(G, bound if bound is not None else None)
    build = "snf" if method == "snf" else "closed"
    pres: dict = {}
    levels = []
    for n, H in _level_names(ru):
        key = (H.invariants, ru._offset[H])
        P = pres.get(key)
        if P is None:
            P = pres[key] = level_presentation(H.invariants, G.q, ell, d, ru.labels(H), mode, build)
            value = presentation_value(P)
            closed = coker_closed_form(H.abstract, ell, d, mode)
            if value != closed:
                raise ConsistencyError(f"level {n}: presentation {value} != closed form {closed}")
            if method == "both":
                oracle = snf_level_value(H.invariants, G.q, ell, d, mode)
                if oracle != value:
                    raise ConsistencyError(f"level {n}: closed form {value} != SNF {oracle}")
        pres[H] = P
        levels.append(Level(n, H.order, P.labels, tuple(_kind(o, mode, G.q) for o in P.orders)))
    check = DEBUG or build == "snf"
    res, tr, covers = {}, {}, []
    for h, k, H, K in _cover_names(ru):
        cd = ru.cover(H, K)
        PH, PK = pres[H], pres[K]
        # descent is automatic once res and tr commute with psi (checked on RU)
        res[(h, k)] = induced_quotient_map_sparse(lambda i, cd=cd: {cd.res[i]: 1}, PK, PH, check)
        tr[(h, k)] = induced_quotient_map_sparse(
            lambda i, cd=cd: {a: 1 for a in cd.transfer_fiber(i)}, PH, PK, check)
        covers.append((h, k))
    meta = {"functor": "coker", "ell": ell, "d": d, "mode": mode, "method": method}
    return MackeyFunctor(G.name, G.q, levels, covers, res, tr, meta)


# --------------------------------------------------------------------------
# tensor products


def tensor_with(M: MackeyFunctor, A: AbGroupExpr, meta: dict | None = None) -> MackeyFunctor:
    """Levelwise M (x) A; structure maps act blockwise, reduced in finite summands."""
    tokens = A.tokens()
    distinct = len(set(tokens)) == len(tokens)
    plan = {}
    levels = []
    for n, L in M.levels.items():
        keep = []
        for i, t in enumerate(tokens):
            for g, kind in enumerate(L.kinds):
                prod_ = tensor_summands(kind, t)
                if prod_.is_zero:
                    continue
                toks = prod_.tokens()
                if len(toks) != 1:
                    raise InputError(f"{kind} (x) {t} is not a single summand")
                keep.append((g, i, toks[0]))
        plan[n] = keep
        if len(tokens) == 1:
            labels = tuple(L.labels[g] for g, _, _ in keep)
        elif distinct:
            labels = tuple(f"{L.labels[g]}[{tokens[i]}]" for g, i, _ in keep)
        else:
            labels = tuple(f"{L.labels[g]}[{tokens[i]}#{i + 1}]" for g, i, _ in keep)
        levels.append(Level(n, L.order, labels, tuple(k for _, _, k in keep)))
    new = {L.name: L for L in levels}

    def transport(X: SparseMatrix, src: str, dst: str) -> SparseMatrix:
        col_of = {(g, i): j for j, (g, i, _) in enumerate(plan[src])}
        rows = []
        for g, i, _ in plan[dst]:
            row = {}
            for j, v in X.rows[g].items():
                c = col_of.get((j, i))
                if c is not None:
                    row[c] = v
            rows.append(row)
        return SparseMatrix(rows, len(plan[src])).reduce_rows(new[dst].moduli)

    res, tr = {}, {}
    for h, k in M.covers:
        res[(h, k)] = transport(M.res[(h, k)], k, h)
        tr[(h, k)] = transport(M.tr[(h, k)], h, k)
    info = dict(M.meta)
    info["tensor"] = str(A)
    if meta:
        info.update(meta)
    return MackeyFunctor(M.group, M.q, levels, M.covers, res, tr, info)


# --------------------------------------------------------------------------
# V_H and the transfer ideal


@dataclass
class VValue:
    """V_H after localizing at p, with how it was decided."""

    value: AbGroupExpr
    presentation: QuotientPresentation
    certificate: str

    @property
    def rank(self) -> int:
        """Rank over the p-adic integers."""
        return self.value.free_rank + len(self.value.profinite)


def _level_transfers(M, H) -> tuple[list[dict], Level]:
    if isinstance(M, GreenFunctorRU):
        lat = M.lattice
        level = Level(lat.name(H), H.order, tuple(M.labels(H)), ("Z",) * H.order)
        cols = []
        for K in lat.maximal_subgroups[H]:
            cd = M.cover(K, H)
            cols.extend({a: 1 for a in cd.transfer_fiber(i)} for i in range(K.order))
        return cols, level
    name = H if isinstance(H, str) else M.level_name(H)
    level = M.levels[name]
    cols = []
    for k in M.below[name]:
        cols.extend(M.tr[(k, name)].transpose().rows)
    # finite summands contribute their own relations
    cols.extend({i: m} for i, m in enumerate(level.moduli) if m)
    if any(k not in ("Z",) and summand_modulus(k) == 0 for k in level.kinds):
        raise InputError(f"level {name} is not a finitely generated group")
    return cols, level


def v_functor(M, H, p: int) -> VValue:
    """M(H) modulo transfers from proper subgroups, localized at p.

    ``M`` is RU (a GreenFunctorRU) or a MackeyFunctor with finitely
    generated levels; ``H`` a subgroup or level name. When the transfer
    images already span M(H) mod p, the localized quotient vanishes, and
    that rank certificate avoids a large Smith form.
    """
    if not arith.is_prime(p):
        raise InputError(f"{p} is not prime")
    cols, level = _level_transfers(M, H)
    n = level.rank
    if n == 0 or (cols and rank_mod_p(cols, p, n, stop_at=n) == n):
        P = QuotientPresentation((), (), [dict() for _ in range(n)], [], cols, level.labels, "q_complete", p)
        return VValue(AbGroupExpr(), P, f"F_{p}-rank of transfer images = {n}")
    A = SparseMatrix.from_columns(cols, n)
    P = cokernel_presentation(A, mode="q_complete", q=p, labels=level.labels)
    value = AbGroupExpr(profinite=(p,) * P.free_rank, cyclic=P.torsion)
    return VValue(value, P, "smith normal form")


@dataclass
class IdealCertificate:
    """Membership answer; when true, elt = sum of coeff * tr_K(1) * chi over terms."""

    member: bool
    terms: list[tuple[str, str, int]] = field(default_factory=list)
    recombined: list[int] = field(default_factory=list)

    def __bool__(self):
        return self.member


def transfer_ideal_contains(H: Subgroup, elt, ru: GreenFunctorRU | None = None) -> IdealCertificate:
    """Is elt in the ideal of RU(H) generated by tr_K(1), K maximal in H?

    The ideal is the span of tr_K(1) * chi over all characters chi; that
    integer system is solved through a Smith normal form. An int ``elt``
    means that multiple of the trivial character.
    """
    if isinstance(H, AbelianQGroup):
        H = whole_group(H)
    if ru is None:
        ru = ru_functor(H.group, H.group.order)
    n = H.order
    target = [elt] + [0] * (n - 1) if isinstance(elt, int) else list(elt)
    if len(target) != n:
        raise InputError(f"element must have length |H| = {n}")
    labels = ru.labels(H)
    lat = ru.lattice
    cols, names, seen = [], [], set()
    for K in lat.maximal_subgroups[H]:
        fib = ru.cover(K, H).transfer_fiber(0)
        inv = H.invariants
        for c in range(n):
            lc = label_of(c, inv)
            v = frozenset(H.char_index(tuple((x + y) % m for x, y, m in zip(label_of(a, inv), lc, inv)))
                          for a in fib)
            if v in seen:
                continue
            seen.add(v)
            cols.append({i: 1 for i in v})
            names.append((lat.name(K), labels[c]))
    if not cols:
        return IdealCertificate(all(x == 0 for x in target))
    A = SparseMatrix.from_columns(cols, n)
    dec = smith_normal_form(A)
    y = [sum(c * target[i] for i, c in row.items()) for row in dec.u_rows]
    r = dec.rank
    if any(y[i] % dec.diagonal[i] for i in range(r)) or any(y[i] for i in range(r, n)):
        return IdealCertificate(False)
    coeffs: dict = {}
    for i in range(r):
        zi = y[i] // dec.diagonal[i]
        for j, v in dec.v_cols[i].items():
            coeffs[j] = coeffs.get(j, 0) + v * zi
    recombined = [0] * n
    for j, c in coeffs.items():
        for i in cols[j]:
            recombined[i] += c
    if recombined != target:
        raise ConsistencyError("ideal certificate does not recombine to the target")
    terms = [(names[j][0], names[j][1], c) for j, c in sorted(coeffs.items()) if c]
    return IdealCertificate(True, terms, recombined)


# --------------------------------------------------------------------------
# axiom checks


@dataclass
class AxiomFailure:
    identity: str
    inclusion: str
    witness: str

    def __str__(self):
        return f"{self.identity} at {self.inclusion}: {self.witness}"


@dataclass
class AxiomReport:
    checked: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def tick(self, identity: str, n: int = 1):
        self.checked[identity] = self.checked.get(identity, 0) + n

    def fail(self, identity: str, inclusion: str, witness: str):
        self.failures.append(AxiomFailure(identity, inclusion, witness))

    def merge(self, other: AxiomReport):
        for k, v in other.checked.items():
            self.tick(k, v)
        self.failures.extend(other.failures)

    def summary(self) -> str:
        counts = ", ".join(f"{k}: {v}" for k, v in sorted(self.checked.items()))
        status = "ok" if self.ok else f"{len(self.failures)} failures"
        return f"{status} ({counts})"


def _dense(X: SparseMatrix) -> np.ndarray:
    out = np.zeros(X.shape, dtype=np.int64)
    for i, r in enumerate(X.rows):
        for j, v in r.items():
            out[i, j] = v
    return out


class _Reducer:
    """Entrywise reduction of a matrix whose rows live in a level's summands."""

    def __init__(self, level: Level):
        m = np.array(level.moduli, dtype=np.int64).reshape(-1, 1)
        self.finite = m > 0
        self.all_free = not self.finite.any()
        self.mod = np.where(self.finite, m, 1)

    def __call__(self, X: np.ndarray) -> np.ndarray:
        if self.all_free:
            return X
        return np.where(self.finite, X % self.mod, X)


def _first_difference(X: np.ndarray, Y: np.ndarray, row_labels, col_labels) -> str:
    j = int(np.nonzero((X != Y).any(axis=0))[0][0])
    got = {row_labels[i]: int(v) for i, v in enumerate(X[:, j]) if v}
    want = {row_labels[i]: int(v) for i, v in enumerate(Y[:, j]) if v}
    return f"generator {col_labels[j]}: {got} != {want}"


def check_mackey_axioms(M, double_coset: bool = False) -> AxiomReport:
    """Check structure maps, chain functoriality and res o tr = [K:H] on covers.

    ``M`` is a MackeyFunctor or a GreenFunctorRU (checked through its index
    maps, including psi-commutation and reciprocity). ``double_coset``
    adds res_H' tr_H = tr res through H n H' for distinct maximal H, H'.
    Composites are compared after reducing entries in finite summands.
    """
    if isinstance(M, GreenFunctorRU):
        return _check_ru(M)
    rep = AxiomReport()
    q = M.q
    ru_derived = M.meta.get("functor") in ("RU", "RQ", "coker") or "tensor" in M.meta

    def shape_ok(X: SparseMatrix, rows: Level, cols: Level, name, inc):
        rep.tick("shape")
        if X.shape != (rows.rank, cols.rank):
            rep.fail("shape", inc, f"{name} has shape {X.shape}, expected {(rows.rank, cols.rank)}")
            return False
        for i, r in enumerate(X.rows):
            for j, v in r.items():
                if not hom_allowed(cols.kinds[j], rows.kinds[i], v):
                    rep.fail("well-defined", inc,
                             f"{name} entry {v} from {cols.labels[j]} ({cols.kinds[j]}) to "
                             f"{rows.labels[i]} ({rows.kinds[i]})")
        return True

    res, tr = {}, {}
    for h, k in M.covers:
        inc = f"{h} < {k}"
        if (h, k) not in M.res or (h, k) not in M.tr:
            rep.fail("presence", inc, "missing res or tr")
            continue
        LH, LK = M.levels[h], M.levels[k]
        a = shape_ok(M.res[(h, k)], LH, LK, "res", inc)
        b = shape_ok(M.tr[(h, k)], LK, LH, "tr", inc)
        if a and b:
            res[(h, k)] = _dense(M.res[(h, k)])
            tr[(h, k)] = _dense(M.tr[(h, k)])
    red = {n: _Reducer(L) for n, L in M.levels.items()}

    # functoriality: all chains H < X < K give the same composite
    for k in M.names:
        chains: dict[str, list[str]] = {}
        for m in M.below[k]:
            for h in M.below[m]:
                chains.setdefault(h, []).append(m)
        for h, mids in chains.items():
            ok = [m for m in mids if (m, k) in res and (h, m) in res]
            if len(ok) < 2:
                continue
            LH, LK = M.levels[h], M.levels[k]
            if LH.rank == 0 or LK.rank == 0:
                rep.tick("res chains", len(ok) - 1)
                rep.tick("tr chains", len(ok) - 1)
                continue
            m0 = ok[0]
            r0 = red[h](res[(h, m0)] @ res[(m0, k)])
            t0 = red[k](tr[(m0, k)] @ tr[(h, m0)])
            for m in ok[1:]:
                rep.tick("res chains")
                rep.tick("tr chains")
                r1 = red[h](res[(h, m)] @ res[(m, k)])
                if not np.array_equal(r1, r0):
                    rep.fail("res chains", f"{h} < {m} < {k} vs via {m0}",
                             _first_difference(r1, r0, LH.labels, LK.labels))
                t1 = red[k](tr[(m, k)] @ tr[(h, m)])
                if not np.array_equal(t1, t0):
                    rep.fail("tr chains", f"{h} < {m} < {k} vs via {m0}",
                             _first_difference(t1, t0, LK.labels, LH.labels))

    if ru_derived:
        for h, k in M.covers:
            if (h, k) not in res:
                continue
            LH = M.levels[h]
            rep.tick("res o tr = index")
            got = red[h](res[(h, k)] @ tr[(h, k)])
            want = red[h](q * np.eye(LH.rank, dtype=np.int64))
            if not np.array_equal(got, want):
                rep.fail("res o tr = index", f"{h} < {k}",
                         _first_difference(got, want, LH.labels, LH.labels))

    if double_coset:
        for k in M.names:
            maxes = [m for m in M.below[k] if (m, k) in res]
            for a in maxes:
                below_a = set(M.below[a])
                for b in maxes:
                    if a == b:
                        continue
                    common = [x for x in M.below[b] if x in below_a]
                    if len(common) != 1:
                        continue
                    c = common[0]
                    if (c, a) not in res or (c, b) not in res:
                        continue
                    rep.tick("double coset")
                    lhs = red[b](res[(b, k)] @ tr[(a, k)])
                    rhs = red[b](tr[(c, b)] @ res[(c, a)])
                    if not np.array_equal(lhs, rhs):
                        rep.fail("double coset", f"{a}, {b} < {k}",
                                 _first_difference(lhs, rhs, M.levels[b].labels, M.levels[a].labels))
    return rep


def _check_ru(ru: GreenFunctorRU, ell: int | None = None) -> AxiomReport:
    """RU through its index maps: fibers, psi-commutation, chains, reciprocity."""
    rep = AxiomReport()
    G = ru.group
    lat = ru.lattice
    q = G.q
    if ell is None:
        ell = arith.smallest_primitive_root(G.order)
    perms = {}
    for H in lat:
        perms[H] = psi_permutation(H.invariants, ell)
    for H, K in lat.covers:
        cd = ru.cover(H, K)
        inc = f"{lat.name(H)} < {lat.name(K)}"
        # res o tr = q id: every character of H has exactly q preimages
        rep.tick("res o tr = index")
        counts = [0] * H.order
        for j in cd.res:
            counts[j] += 1
        bad = [i for i, c in enumerate(counts) if c != q]
        if bad:
            rep.fail("res o tr = index", inc, f"character {ru.labels(H)[bad[0]]} has {counts[bad[0]]} preimages")
        rep.tick("tr = res transpose")
        for i in range(H.order):
            fib = cd.transfer_fiber(i)
            if len(set(fib)) != q or any(cd.res[a] != i for a in fib):
                rep.fail("tr = res transpose", inc, f"fiber of {ru.labels(H)[i]} is {fib}")
                break
        rep.tick("psi commutes with res")
        pK, pH = perms[K], perms[H]
        for a in range(K.order):
            if cd.res[pK[a]] != pH[cd.res[a]]:
                rep.fail("psi commutes with res", inc, f"character {ru.labels(K)[a]}")
                break
        rep.tick("res is a ring map")
        invK, invH = K.invariants, H.invariants
        units = [K.char_index(tuple(int(i == j) for j in range(len(invK)))) for i in range(len(invK))]
        for a in units + [0]:
            for b in units:
                la, lb = label_of(a, invK), label_of(b, invK)
                s = K.char_index(tuple((x + y) % n for x, y, n in zip(la, lb, invK)))
                ra, rb = label_of(cd.res[a], invH), label_of(cd.res[b], invH)
                rs = H.char_index(tuple((x + y) % n for x, y, n in zip(ra, rb, invH)))
                if cd.res[s] != rs:
                    rep.fail("res is a ring map", inc, f"characters {ru.labels(K)[a]}, {ru.labels(K)[b]}")
        rep.tick("Frobenius reciprocity")
        # tr(a * res b) = tr(a) * b on basis characters a of H, b of K
        for i in range(min(H.order, 4)):
            for b in units:
                li, lb = label_of(i, invH), label_of(b, invK)
                rb = label_of(cd.res[b], invH)
                prod_ = H.char_index(tuple((x + y) % n for x, y, n in zip(li, rb, invH)))
                lhs = sorted(cd.transfer_fiber(prod_))
                rhs = sorted(K.char_index(tuple((x + y) % n for x, y, n in zip(label_of(a, invK), lb, invK)))
                             for a in cd.transfer_fiber(i))
                if lhs != rhs:
                    rep.fail("Frobenius reciprocity", inc, f"characters {ru.labels(H)[i]}, {ru.labels(K)[b]}")
    # chains: composites of restrictions agree on the basis characters of K
    for K in lat:
        invK = K.invariants
        units = [K.char_index(tuple(int(i == j) for j in range(len(invK)))) for i in range(len(invK))]
        chains: dict = {}
        for M in lat.maximal_subgroups[K]:
            for H in lat.maximal_subgroups[M]:
                chains.setdefault(H, []).append(M)
        for H, mids in chains.items():
            if len(mids) < 2:
                continue
            ref = [ru.cover(H, mids[0]).res[ru.cover(mids[0], K).res[a]] for a in units]
            for M in mids[1:]:
                rep.tick("res chains")
                got = [ru.cover(H, M).res[ru.cover(M, K).res[a]] for a in units]
                if got != ref:
                    rep.fail("res chains", f"{lat.name(H)} < {lat.name(M)} < {lat.name(K)}",
                             f"basis images {got} != {ref}")
    return rep


check_ru_axioms = _check_ru
