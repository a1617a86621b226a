"""Small union-find over hashable keys, with deterministic class extraction."""
from __future__ import annotations


class UnionFind:
    def __init__(self):
        self.parent = {}
        self.rank = {}

    def find(self, x):
        p = self.parent
        if x not in p:
            p[x] = x
            self.rank[x] = 0
            return x
        # path halving
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1
        return True

    def same(self, a, b) -> bool:
        return self.find(a) == self.find(b)

    def classes(self) -> dict:
        """Root -> sorted member list is not imposed here; values keep insertion order."""
        out = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return out
