"""Randomly coloured random graphs and digraphs.

Vertices are 0-indexed.  Colours are integers in [1, kappa]; the sentinel
colour 0 marks an uncoloured arc (used by d-out samples before colouring).
Edge probability p splits into an arc probability p1 with
(1 - p1)**2 = 1 - p, so that sampling each ordered pair with probability
p1 and forgetting orientation reproduces the undirected model.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

UNCOLOURED = 0


@dataclass(frozen=True)
class ColouredGraph:
    """Undirected edge-coloured graph: edges are (u, v, colour) with u < v."""

    n: int
    kappa: int
    edges: tuple[tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"need n >= 1, got {self.n}")
        seen = set()
        for u, v, c in self.edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < v < self.n):
                raise ValueError(f"bad edge endpoints ({u}, {v}) for n={self.n}")
            if (u, v) in seen:
                raise ValueError(f"duplicate edge ({u}, {v})")
            if not (c == UNCOLOURED or 1 <= c <= self.kappa):
                raise ValueError(f"colour {c} outside [1, {self.kappa}]")
            seen.add((u, v))

    @property
    def edge_set(self) -> frozenset[tuple[int, int, int]]:
        return frozenset(self.edges)

    @property
    def pair_set(self) -> frozenset[tuple[int, int]]:
        return frozenset((u, v) for u, v, _ in self.edges)


@dataclass(frozen=True)
class ColouredDigraph:
    """Directed edge-coloured graph: arcs are (tail, head, colour).

    Arcs are stored as a tuple so samplers can preserve a meaningful order
    (d-out samples keep each vertex's choices in choice order).
    """

    n: int
    kappa: int
    arcs: tuple[tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"need n >= 1, got {self.n}")
        seen = set()
        for t, h, c in self.arcs:
            if t == h:
                raise ValueError(f"self-loop at vertex {t}")
            if not (0 <= t < self.n and 0 <= h < self.n):
                raise ValueError(f"bad arc ({t}, {h}) for n={self.n}")
            if (t, h) in seen:
                raise ValueError(f"duplicate arc ({t}, {h})")
            if not (c == UNCOLOURED or 1 <= c <= self.kappa):
                raise ValueError(f"colour {c} outside [1, {self.kappa}]")
            seen.add((t, h))

    @property
    def arc_set(self) -> frozenset[tuple[int, int, int]]:
        return frozenset(self.arcs)

    def out_degrees(self) -> list[int]:
        degs = [0] * self.n
        for t, _, _ in self.arcs:
            degs[t] += 1
        return degs

    def arcs_by_tail(self) -> list[list[tuple[int, int]]]:
        """Per-tail list of (head, colour), in stored arc order."""
        out: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for t, h, c in self.arcs:
            out[t].append((h, c))
        return out


@dataclass(frozen=True)
class ProbabilitySplit:
    """Edge probability p and the arc probability p1 with (1-p1)^2 = 1-p."""

    p: float
    p1: float

    def __post_init__(self) -> None:
        if abs((1.0 - self.p1) ** 2 - (1.0 - self.p)) > 1e-12:
            raise ValueError(f"inconsistent split p={self.p}, p1={self.p1}")


@dataclass(frozen=True)
class PermutationFamily:
    """One bijection pi_v of [n] \\ {v} per vertex v.

    perms[v] has length n with perms[v][v] == v (a fixed point standing in
    for the excluded element); all other entries are a permutation of the
    remaining vertices.
    """

    perms: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.perms)
        for v, pi in enumerate(self.perms):
            if len(pi) != n or pi[v] != v or sorted(pi) != list(range(n)):
                raise ValueError(f"perms[{v}] is not a bijection fixing {v}")

    @property
    def n(self) -> int:
        return len(self.perms)

    def inverse(self) -> "PermutationFamily":
        inv = []
        for pi in self.perms:
            ipi = [0] * len(pi)
            for w, x in enumerate(pi):
                ipi[x] = w
            inv.append(tuple(ipi))
        return PermutationFamily(tuple(inv))


def split_probability(p: float) -> ProbabilitySplit:
    """Solve (1 - p1)^2 = 1 - p for p1 in [0, 1).

    p = 1 is rejected: no p1 < 1 satisfies the identity.
    """
    if not 0.0 <= p < 1.0:
        raise ValueError(f"p must lie in [0, 1), got {p}")
    p1 = 1.0 - math.sqrt(1.0 - p)
    return ProbabilitySplit(p=p, p1=p1)


def _check_colour_params(kappa: int) -> None:
    if kappa < 1:
        raise ValueError(f"need kappa >= 1, got {kappa}")


def sample_coloured_graph(
    n: int, p: float, kappa: int, rng: np.random.Generator
) -> ColouredGraph:
    """Each unordered pair appears independently with probability p; each
    present edge gets an independent uniform colour from [1, kappa]."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    _check_colour_params(kappa)
    edges = []
    for u in range(n - 1):
        mask = rng.random(n - 1 - u) < p
        heads = np.nonzero(mask)[0] + u + 1
        if len(heads):
            colours = rng.integers(1, kappa + 1, size=len(heads))
            edges.extend((u, int(v), int(c)) for v, c in zip(heads, colours))
    return ColouredGraph(n=n, kappa=kappa, edges=tuple(edges))


def sample_coloured_digraph(
    n: int, p1: float, kappa: int, rng: np.random.Generator
) -> ColouredDigraph:
    """Each of the n(n-1) ordered pairs is an arc independently with
    probability p1, coloured uniformly from [1, kappa]."""
    if not 0.0 <= p1 <= 1.0:
        raise ValueError(f"p1 must lie in [0, 1], got {p1}")
    _check_colour_params(kappa)
    arcs = []
    for t in range(n):
        mask = rng.random(n) < p1
        mask[t] = False
        heads = np.nonzero(mask)[0]
        if len(heads):
            colours = rng.integers(1, kappa + 1, size=len(heads))
            arcs.extend((t, int(h), int(c)) for h, c in zip(heads, colours))
    return ColouredDigraph(n=n, kappa=kappa, arcs=tuple(arcs))


def coalesce_orientation(
    d: ColouredDigraph, rng: np.random.Generator
) -> ColouredGraph:
    """Forget orientation.  Where both (u,v) and (v,u) are present the edge
    colour is a uniform choice between the two arc colours."""
    by_pair: dict[tuple[int, int], list[int]] = {}
    for t, h, c in d.arcs:
        key = (t, h) if t < h else (h, t)
        by_pair.setdefault(key, []).append(c)
    edges = []
    for (u, v), colours in sorted(by_pair.items()):
        if len(colours) == 2 and rng.random() < 0.5:
            edges.append((u, v, colours[1]))
        else:
            edges.append((u, v, colours[0]))
    return ColouredGraph(n=d.n, kappa=d.kappa, edges=tuple(edges))


def sample_d_out(n: int, d: int, rng: np.random.Generator) -> ColouredDigraph:
    """Every vertex picks d distinct uniform out-neighbours from the other
    n-1 vertices.  Heads are stored in choice order (arcs grouped by tail);
    the coupling module consumes that order.  Arcs are uncoloured."""
    if not 1 <= d <= n - 1:
        raise ValueError(f"need 1 <= d <= n-1, got d={d}, n={n}")
    # A random key argsort per row is a uniform random ordering of the
    # n-1 candidate heads; the first d entries are a uniform d-arrangement.
    order = np.argsort(rng.random((n, n - 1)), axis=1)[:, :d]
    arcs = []
    for v in range(n):
        for idx in order[v]:
            h = int(idx) if idx < v else int(idx) + 1
            arcs.append((v, h, UNCOLOURED))
    return ColouredDigraph(n=n, kappa=0, arcs=tuple(arcs))


def random_permutation_family(n: int, rng: np.random.Generator) -> PermutationFamily:
    """Independent uniform permutations pi_v of [n] \\ {v}."""
    # one argsort per vertex row gives a uniform permutation of its n-1
    # candidate images
    order = np.argsort(rng.random((n, n - 1)), axis=1)
    perms = []
    for v in range(n):
        others = [w for w in range(n) if w != v]
        pi = [0] * n
        pi[v] = v
        for w, idx in zip(others, order[v]):
            pi[w] = others[idx]
        perms.append(tuple(pi))
    return PermutationFamily(tuple(perms))


def identity_permutation_family(n: int) -> PermutationFamily:
    return PermutationFamily(tuple(tuple(range(n)) for _ in range(n)))


def apply_permutations(
    d: ColouredDigraph, f: PermutationFamily, invert: bool = False
) -> ColouredDigraph:
    """Map every arc (v, w, c) to (v, pi_v(w), c), or pi_v^{-1} if invert.

    Colours and out-degrees are unchanged; arc order is preserved.
    """
    if f.n != d.n:
        raise ValueError(f"family covers {f.n} vertices, digraph has {d.n}")
    fam = f.inverse() if invert else f
    arcs = tuple((t, fam.perms[t][h], c) for t, h, c in d.arcs)
    return ColouredDigraph(n=d.n, kappa=d.kappa, arcs=arcs)
