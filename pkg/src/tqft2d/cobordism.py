"""Oriented 2D cobordisms between ordered unions of circles.

A cobordism ``m -> n`` is a list of connected components. Each component is
a genus together with the positions of the input circles and output circles
it touches. Composition glues output ``k`` of the first cobordism to input
``k`` of the second; genera of the glued pieces follow from additivity of the
Euler characteristic.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import ArityMismatch
from .linalg import kron


@dataclass(frozen=True, order=True)
class Component:
    genus: int
    ins: tuple
    outs: tuple

    @property
    def boundary(self):
        return len(self.ins) + len(self.outs)

    @property
    def euler(self):
        return 2 - 2 * self.genus - self.boundary

    @property
    def shape(self):
        return (self.genus, len(self.ins), len(self.outs))


class Generator(Enum):
    UNIT = "unit"
    COUNIT = "counit"
    MUL = "mul"
    COMUL = "comul"
    ID = "id"
    SWAP = "swap"


@dataclass(frozen=True)
class Cobordism:
    components: tuple
    n_in: int
    n_out: int

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        ins = sorted(i for c in comps for i in c.ins)
        outs = sorted(o for c in comps for o in c.outs)
        if ins != list(range(self.n_in)) or outs != list(range(self.n_out)):
            raise ValueError("every boundary circle must belong to exactly one component")
        for c in comps:
            if c.genus < 0:
                raise AssertionError(f"negative genus {c.genus}: gluing bookkeeping is broken")

    @property
    def arity(self):
        return (self.n_in, self.n_out)

    @property
    def euler(self):
        return sum(c.euler for c in self.components)

    def __eq__(self, other):
        if not isinstance(other, Cobordism):
            return NotImplemented
        return normal_form(self) == normal_form(other)

    def __hash__(self):
        return hash(normal_form(self))


def generator(g):
    g = Generator(g)
    c = Component
    table = {
        Generator.UNIT: ((c(0, (), (0,)),), 0, 1),
        Generator.COUNIT: ((c(0, (0,), ()),), 1, 0),
        Generator.MUL: ((c(0, (0, 1), (0,)),), 2, 1),
        Generator.COMUL: ((c(0, (0,), (0, 1)),), 1, 2),
        Generator.ID: ((c(0, (0,), (0,)),), 1, 1),
        Generator.SWAP: ((c(0, (0,), (1,)), c(0, (1,), (0,))), 2, 2),
    }
    comps, m, n = table[g]
    return Cobordism(comps, m, n)


def surface(genus, n_in, n_out):
    """A connected cobordism of given genus with ``n_in`` inputs and ``n_out`` outputs."""
    if genus < 0 or n_in < 0 or n_out < 0:
        raise ValueError("genus and arities must be non-negative")
    return Cobordism((Component(genus, tuple(range(n_in)), tuple(range(n_out))),), n_in, n_out)


def identity(n):
    return Cobordism(tuple(Component(0, (k,), (k,)) for k in range(n)), n, n)


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def compose(m1, m2):
    """Glue the outputs of ``m1`` to the inputs of ``m2`` (diagram order)."""
    if m1.n_out != m2.n_in:
        raise ArityMismatch(f"cannot glue {m1.n_out} outputs into {m2.n_in} inputs")
    c1, c2 = list(m1.components), list(m2.components)
    parts = c1 + c2
    offset = len(c1)
    out_owner = {o: i for i, c in enumerate(c1) for o in c.outs}
    in_owner = {i_: offset + j for j, c in enumerate(c2) for i_ in c.ins}

    uf = _UnionFind(len(parts))
    for k in range(m1.n_out):
        uf.union(out_owner[k], in_owner[k])
    glues = {}
    for k in range(m1.n_out):
        root = uf.find(out_owner[k])
        glues[root] = glues.get(root, 0) + 1

    groups = {}
    for idx in range(len(parts)):
        groups.setdefault(uf.find(idx), []).append(idx)

    merged = []
    for root, members in groups.items():
        chi = sum(parts[i].euler for i in members)
        ins = tuple(sorted(i for m in members if m < offset for i in parts[m].ins))
        outs = tuple(sorted(o for m in members if m >= offset for o in parts[m].outs))
        b = len(ins) + len(outs)
        assert (2 - chi - b) % 2 == 0, "Euler characteristic parity broken"
        genus = (2 - chi - b) // 2
        assert genus >= 0, f"negative genus {genus} after gluing"
        # each glue inside one piece adds a handle; joining pieces sums genera
        assert genus == sum(parts[i].genus for i in members) + glues.get(root, 0) - len(members) + 1
        merged.append(Component(genus, ins, outs))

    result = Cobordism(tuple(sorted(merged, key=_component_key)), m1.n_in, m2.n_out)
    assert result.euler == m1.euler + m2.euler
    return result


def tensor(m1, m2):
    """Disjoint union; the circles of ``m2`` are numbered after those of ``m1``."""
    shifted = tuple(
        Component(c.genus, tuple(i + m1.n_in for i in c.ins), tuple(o + m1.n_out for o in c.outs))
        for c in m2.components
    )
    return Cobordism(m1.components + shifted, m1.n_in + m2.n_in, m1.n_out + m2.n_out)


def reverse(m):
    """The same surface read backwards: inputs and outputs exchanged."""
    return Cobordism(
        tuple(Component(c.genus, c.outs, c.ins) for c in m.components), m.n_out, m.n_in
    )


def _component_key(c):
    # closed components have no circles, so sort them after the rest by genus
    return (c.ins[:1] or (float("inf"),), c.outs[:1] or (float("inf"),), c.genus, c.ins, c.outs)


def normal_form(m):
    """Canonical, hashable description of ``m`` independent of component order."""
    return (m.n_in, m.n_out, tuple(sorted(m.components)))


def _merge_map(a, p):
    if p == 0:
        return a.unit.reshape(-1, 1)
    out = np.eye(a.dim, dtype=complex)
    for _ in range(p - 1):
        out = a.mul_matrix @ kron(out, np.eye(a.dim))
    return out


def _split_map(a, q):
    if q == 0:
        return a.counit.reshape(1, -1)
    out = np.eye(a.dim, dtype=complex)
    for _ in range(q - 1):
        out = kron(out, np.eye(a.dim)) @ a.comul_matrix
    return out


def component_map(a, genus, p, q):
    """``split_q . H^genus . merge_p`` for a connected component."""
    h = np.linalg.matrix_power(a.handle_matrix, genus)
    return _split_map(a, q) @ h @ _merge_map(a, p)


def evaluate(a, m):
    """Linear map ``V^{(x) n_in} -> V^{(x) n_out}`` assigned to ``m`` by the algebra ``a``."""
    d = a.dim
    comps = m.components
    block = kron(*(component_map(a, *c.shape) for c in comps)) if comps else np.ones((1, 1))
    out_order = [o for c in comps for o in c.outs]
    in_order = [i for c in comps for i in c.ins]
    q, p = len(out_order), len(in_order)
    t = block.reshape((d,) * (q + p))
    axes = [out_order.index(k) for k in range(q)] + [q + in_order.index(k) for k in range(p)]
    t = np.transpose(t, axes)
    return t.reshape(d**q, d**p)
