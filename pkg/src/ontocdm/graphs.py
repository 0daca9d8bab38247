"""Small directed-graph helpers used by the validators and the refiner."""
from __future__ import annotations

from collections import defaultdict, deque
from typing import Iterable, Hashable


def _adjacency(edges: Iterable[tuple[Hashable, Hashable]]) -> dict:
    adj = defaultdict(set)
    for u, v in edges:
        adj[u].add(v)
        adj.setdefault(v, set())
    return adj


def strongly_connected_components(edges: Iterable[tuple[Hashable, Hashable]]) -> list[set]:
    """Iterative Tarjan. Returns every SCC, including singletons."""
    adj = _adjacency(edges)
    index: dict = {}
    lowlink: dict = {}
    on_stack: set = set()
    stack: list = []
    components: list[set] = []
    counter = 0

    for start in sorted(adj, key=str):
        if start in index:
            continue
        work = [(start, iter(sorted(adj[start], key=str)))]
        index[start] = lowlink[start] = counter
        counter += 1
        stack.append(start)
        on_stack.add(start)
        while work:
            node, children = work[-1]
            advanced = False
            for child in children:
                if child not in index:
                    index[child] = lowlink[child] = counter
                    counter += 1
                    stack.append(child)
                    on_stack.add(child)
                    work.append((child, iter(sorted(adj[child], key=str))))
                    advanced = True
                    break
                if child in on_stack:
                    lowlink[node] = min(lowlink[node], index[child])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                lowlink[parent] = min(lowlink[parent], lowlink[node])
            if lowlink[node] == index[node]:
                comp = set()
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.add(w)
                    if w == node:
                        break
                components.append(comp)
    return components


def cycles(edges: Iterable[tuple[Hashable, Hashable]]) -> list[set]:
    """SCCs that actually contain a cycle (size > 1, or a self-loop)."""
    edge_set = set(edges)
    out = []
    for comp in strongly_connected_components(edge_set):
        if len(comp) > 1 or any((n, n) in edge_set for n in comp):
            out.append(comp)
    return out


def is_reachable(adj: dict, src, dst) -> bool:
    if src == dst:
        return True
    seen = set()
    queue = deque([src])
    while queue:
        node = queue.popleft()
        for nxt in adj.get(node, ()):
            if nxt == dst:
                return True
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return False


def transitive_reduction(edges: Iterable[tuple[Hashable, Hashable]]) -> set:
    """Minimal edge set with the same reachability. Input must be acyclic;
    on a DAG the reduction is unique, so removal order does not matter."""
    adj = {u: set(vs) for u, vs in _adjacency(edges).items()}
    for u, v in sorted(set(edges), key=lambda e: (str(e[0]), str(e[1]))):
        adj[u].discard(v)
        if not is_reachable(adj, u, v):
            adj[u].add(v)
    return {(u, v) for u, vs in adj.items() for v in vs}
