"""Brute-force references shared by the module tests and the acceptance suite."""
import itertools

from lineinv.polytopes import enumerate_lattice


def compositions(total, min_n=2):
    for n in range(min_n, total + 1):
        for cuts in itertools.combinations(range(1, total), n - 1):
            b = (0,) + cuts + (total,)
            yield tuple(b[i + 1] - b[i] for i in range(n))


def all_dmatrices(r, max_degree):
    """Every ordered list of degree-1/2 lattice points of total degree 1..max_degree."""
    pools = {1: [tuple(p.d) for p in enumerate_lattice(r, 1)], 2: [tuple(p.d) for p in enumerate_lattice(r, 2)]}

    def rec(left):
        if left == 0:
            yield []
            return
        for deg in (1, 2):
            if deg > left:
                continue
            for v in pools[deg]:
                for rest in rec(left - deg):
                    yield [(v, deg)] + rest

    for degree in range(1, max_degree + 1):
        yield from rec(degree)


def column_sum(cols):
    return tuple(map(sum, zip(*(v for v, _ in cols))))


def minkowski(*sets):
    out = {()}
    for s in sets:
        out = {tuple(x + y for x, y in zip(a, b)) if a else b for a in out for b in s}
    return out
