"""Congruence closure with explanations.

The e-graph keeps one node per distinct term, a union-find over the nodes and
a signature table for congruence detection.  Next to the union-find it keeps a
proof forest: every successful merge links two *original* nodes with an edge
labelled by its justification, either an input equality or a congruence.
The forest is never path-compressed, so the unique tree path between two
equal terms is always available to :meth:`EGraph.explain`.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .logic import App, Eq, Term


@dataclass(frozen=True)
class External:
    equation: Eq


@dataclass(frozen=True)
class Congruence:
    left: Term
    right: Term


Justification = Union[External, Congruence]


@dataclass(frozen=True)
class Edge:
    lhs: Term
    rhs: Term
    justification: Justification

    @property
    def is_congruence(self) -> bool:
        return isinstance(self.justification, Congruence)


class NotCongruent(ValueError):
    pass


class EGraph:
    def __init__(self) -> None:
        self.terms: list = []
        self.ids: dict = {}
        self._parent: list = []
        self._rank: list = []
        self._uses: list = []
        self._sig: dict = {}
        self._proof: list = []

    def __len__(self) -> int:
        return len(self.terms)

    def find(self, i: int) -> int:
        root = i
        while self._parent[root] != root:
            root = self._parent[root]
        while self._parent[i] != root:
            self._parent[i], i = root, self._parent[i]
        return root

    def _signature(self, i: int) -> tuple:
        t = self.terms[i]
        return (t.symbol, tuple(self.find(self.ids[a]) for a in t.args))

    def add_term(self, t: Term) -> int:
        """Node id of ``t``; ``t`` and its subterms are added when missing."""
        known = self.ids.get(t)
        if known is not None:
            return known
        children = [self.add_term(a) for a in t.args] if isinstance(t, App) else []
        i = len(self.terms)
        self.terms.append(t)
        self.ids[t] = i
        self._parent.append(i)
        self._rank.append(0)
        self._uses.append([])
        self._proof.append(None)
        if children:
            for c in {self.find(c) for c in children}:
                self._uses[c].append(i)
            sig = self._signature(i)
            other = self._sig.get(sig)
            if other is None:
                self._sig[sig] = i
            else:
                self._propagate([(i, other, Congruence(t, self.terms[other]))])
        return i

    def merge(self, t: Term, u: Term, justification: Justification) -> None:
        """Union the classes of ``t`` and ``u`` and close under congruence."""
        a, b = self.add_term(t), self.add_term(u)
        self._propagate([(a, b, justification)])

    def assert_equal(self, eq: Eq) -> None:
        self.merge(eq.lhs, eq.rhs, External(eq))

    def _propagate(self, pending: list) -> None:
        while pending:
            a, b, just = pending.pop()
            ra, rb = self.find(a), self.find(b)
            if ra == rb:
                continue
            self._link(a, b, just)
            # union by rank; ties keep the lower id as root
            if self._rank[ra] < self._rank[rb] or (self._rank[ra] == self._rank[rb] and rb < ra):
                ra, rb = rb, ra
            self._parent[rb] = ra
            if self._rank[ra] == self._rank[rb]:
                self._rank[ra] += 1
            moved, self._uses[rb] = self._uses[rb], []
            for p in moved:
                sig = self._signature(p)
                q = self._sig.get(sig)
                if q is None:
                    self._sig[sig] = p
                elif self.find(q) != self.find(p):
                    pending.append((p, q, Congruence(self.terms[p], self.terms[q])))
                self._uses[ra].append(p)

    def _link(self, a: int, b: int, just: Justification) -> None:
        # make a the root of its proof tree, then hang it below b
        prev: Optional[int] = None
        prev_just: Optional[Justification] = None
        cur = a
        while True:
            nxt = self._proof[cur]
            self._proof[cur] = None if prev is None else (prev, prev_just)
            if nxt is None:
                break
            prev, prev_just = cur, nxt[1]
            cur = nxt[0]
        self._proof[a] = (b, just)

    def congruent(self, t: Term, u: Term) -> bool:
        return self.find(self.add_term(t)) == self.find(self.add_term(u))

    def explain(self, t: Term, u: Term) -> list:
        """Path of justified edges leading from ``t`` to ``u``.

        Congruence edges are not expanded; explain their argument pairs with
        further calls.
        """
        if t not in self.ids or u not in self.ids:
            raise NotCongruent(f"{t} or {u} is not in the e-graph")
        a, b = self.ids[t], self.ids[u]
        if self.find(a) != self.find(b):
            raise NotCongruent(f"{t} and {u} are not congruent")
        if a == b:
            return []
        up_a = self._path_to_root(a)
        on_a = {node: k for k, (node, _, _) in enumerate(up_a)}
        up_b = []
        for node, parent, just in self._path_to_root(b):
            if node in on_a:
                lca_pos = on_a[node]
                break
            up_b.append((node, parent, just))
        else:  # pragma: no cover - same class implies same tree
            raise AssertionError("proof forest out of sync")
        edges = [
            Edge(self.terms[x], self.terms[y], j) for x, y, j in up_a[:lca_pos]
        ]
        edges += [Edge(self.terms[y], self.terms[x], j) for x, y, j in reversed(up_b)]
        return edges

    def _path_to_root(self, i: int) -> list:
        """Triples (node, parent, justification) from ``i`` up; root has parent None."""
        out = []
        cur = i
        while True:
            link = self._proof[cur]
            if link is None:
                out.append((cur, None, None))
                return out
            out.append((cur, link[0], link[1]))
            cur = link[0]

    def classes(self) -> list:
        groups: dict = {}
        for i, t in enumerate(self.terms):
            groups.setdefault(self.find(i), []).append(t)
        return list(groups.values())

    def class_count(self) -> int:
        return sum(1 for i in range(len(self.terms)) if self.find(i) == i)


def explanation_size(eg: EGraph, t: Term, u: Term) -> int:
    """Total number of edges in the fully expanded explanation of ``t = u``."""
    total = 0
    for edge in eg.explain(t, u):
        total += 1
        if edge.is_congruence:
            for x, y in zip(edge.lhs.args, edge.rhs.args):
                if x != y:
                    total += explanation_size(eg, x, y)
    return total
