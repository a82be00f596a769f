"""Brute-force class data for the two extraspecial groups of order 27."""

from itertools import product


def heisenberg(a, b):
    # upper unitriangular 3x3 matrices over F_3 as (x, y, z)
    return (a[0] + b[0]) % 3, (a[1] + b[1]) % 3, (a[2] + b[2] + a[0] * b[1]) % 3


def metacyclic(a, b):
    # C9 x| C3 with the generator of C3 acting on C9 by x -> 4x
    x, s = a
    y, t = b
    return (x + pow(4, s, 9) * y) % 9, (s + t) % 3


GROUPS = {
    "extraspecial27": (list(product(range(3), repeat=3)), heisenberg),
    "extraspecial27_exp9": (list(product(range(9), range(3))), metacyclic),
}


def power(g, k, mul, e):
    out = e
    for _ in range(k):
        out = mul(out, g)
    return out


def class_data(name, ells=(2, 5)):
    elements, mul = GROUPS[name]
    e = next(g for g in elements if all(mul(g, h) == h for h in elements))
    inverse = {g: next(h for h in elements if mul(g, h) == e) for g in elements}
    classes, seen = [], set()
    for g in elements:
        if g in seen:
            continue
        cls = sorted({mul(mul(h, g), inverse[h]) for h in elements})
        seen.update(cls)
        classes.append(cls)
    where = {g: i for i, cls in enumerate(classes) for g in cls}

    def order(g):
        k, x = 1, g
        while x != e:
            x, k = mul(x, g), k + 1
        return k

    cyclic = set()
    for g in elements:
        gen = frozenset(power(g, k, mul, e) for k in range(order(g)))
        conj = frozenset(frozenset(mul(mul(h, x), inverse[h]) for x in gen) for h in elements)
        cyclic.add(conj)
    return {
        "name": name,
        "q": 3,
        "classes": [{"order": order(c[0]), "size": len(c), "representative": list(c[0])} for c in classes],
        "cyclic_subgroup_classes": len(cyclic),
        "power_maps": {str(l): [where[power(c[0], l, mul, e)] for c in classes] for l in ells},
    }
