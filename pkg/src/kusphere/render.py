"""Text diagrams for Mackey functors and text/DOT forms of subgroup lattices."""

from __future__ import annotations

from .abgroup import _cyclic_key, _kind
from .mackey import Level, MackeyFunctor
from .qgroups import SubgroupLattice

_KIND_RANK = {"free": 0, "padic": 1, "cyclic": 2, "rational": 3, "qz": 4, "prufer": 5}


def _kind_key(token: str):
    k, v = _kind(token)
    if k == "cyclic":
        return _KIND_RANK[k], _cyclic_key(v)
    return _KIND_RANK[k], (v or 0, 0)


def display_order(level: Level) -> list[int]:
    """Generator positions grouped by summand type, stable within a type."""
    return sorted(range(level.rank), key=lambda i: (_kind_key(level.kinds[i]), i))


def format_level(level: Level) -> str:
    """Summands grouped by type, with generator labels, e.g. Z/3{x^3} + Z/9{x}."""
    if not level.rank:
        return "0"
    groups: dict[str, list[str]] = {}
    for i in display_order(level):
        groups.setdefault(level.kinds[i], []).append(level.labels[i])
    return " + ".join(f"{k}{{{','.join(v)}}}" for k, v in groups.items())


def format_matrix(M, rows_order=None, cols_order=None) -> str:
    nrows, ncols = M.shape
    if nrows == 0 or ncols == 0:
        return f"0 ({nrows}x{ncols})"
    data = M.tolist()
    rows_order = rows_order or range(nrows)
    cols_order = cols_order or range(ncols)
    body = (", ".join(str(data[i][j]) for j in cols_order) for i in rows_order)
    return "[" + ", ".join(f"[{r}]" for r in body) + "]"


def _header(M: MackeyFunctor) -> str:
    keys = ("functor", "n", "p", "ell", "d", "mode", "method", "tensor", "away", "provenance")
    parts = [f"{k}={M.meta[k]}" for k in keys if k in M.meta]
    return f"# {M.group}  " + "  ".join(parts)


def render_text(M: MackeyFunctor, header: bool = True) -> str:
    """Levels from the top down; under each level, res and tr along its covers."""
    if M.is_zero:
        return "0\n"
    width = max(len(n) for n in M.names)
    lines = [_header(M)] if header else []
    order = {n: display_order(L) for n, L in M.levels.items()}
    for k in reversed(M.names):
        lines.append(f"{k.ljust(width)} : {format_level(M.levels[k])}")
        for h in M.below[k]:
            res = format_matrix(M.res[(h, k)], order[h], order[k])
            tr = format_matrix(M.tr[(h, k)], order[k], order[h])
            lines.append(f"    res {k} -> {h}: {res}")
            lines.append(f"    tr  {h} -> {k}: {tr}")
    return "\n".join(lines) + "\n"


def lattice_text(lat: SubgroupLattice) -> str:
    q = lat.group.q
    top = lat.top.order
    lines = []
    for H in reversed(lat.subgroups):
        depth = 0
        n = top // H.order
        while n > 1:
            n //= q
            depth += 1
        above = [lat.name(K) for K in lat.subgroups if H in lat.maximal_subgroups[K]]
        flag = "cyclic" if H.is_cyclic else "noncyclic"
        tail = f"  < {', '.join(above)}" if above else ""
        lines.append(f"{'  ' * depth}{lat.name(H)}  order {H.order}  {flag}{tail}")
    return "\n".join(lines) + "\n"


def lattice_dot(lat: SubgroupLattice) -> str:
    lines = [f'digraph "{lat.group.name}" {{', "  rankdir=BT;"]
    for H in lat.subgroups:
        flag = "cyclic" if H.is_cyclic else "noncyclic"
        lines.append(f'  "{lat.name(H)}" [label="{lat.name(H)}\\n|H|={H.order}, {flag}"];')
    for H, K in lat.covers:
        lines.append(f'  "{lat.name(H)}" -> "{lat.name(K)}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
