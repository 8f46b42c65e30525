"""
Subclosure - Graph Helpers
Strongly connected components and reachability over small directed graphs
"""

import itertools
from typing import Callable, Dict, Hashable, Iterable, List, Set, TypeVar

V = TypeVar("V", bound=Hashable)


def tarjan(vertices: Iterable[V], neighbours: Callable[[V], Iterable[V]]) -> List[List[V]]:
    """Strongly connected components in reverse-topological order (sinks first).

    Iterative variant of Tarjan's algorithm, so deep grammars do not hit the
    recursion limit. Members keep the order in which vertices were given.
    """
    vertices = list(vertices)
    position = {v: i for i, v in enumerate(vertices)}
    indices = itertools.count()
    index: Dict[V, int] = {}
    lowlink: Dict[V, int] = {}
    stack: List[V] = []
    on_stack: Set[V] = set()
    components: List[List[V]] = []

    for root in vertices:
        if root in index:
            continue
        index[root] = lowlink[root] = next(indices)
        stack.append(root)
        on_stack.add(root)
        work = [(root, iter(neighbours(root)))]
        while work:
            v, successors = work[-1]
            advanced = False
            for w in successors:
                if w not in index:
                    index[w] = lowlink[w] = next(indices)
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(neighbours(w))))
                    advanced = True
                    break
                if w in on_stack:
                    lowlink[v] = min(lowlink[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                lowlink[parent] = min(lowlink[parent], lowlink[v])
            if lowlink[v] == index[v]:
                component = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    component.append(w)
                    if w == v:
                        break
                component.sort(key=lambda u: position.get(u, len(position)))
                components.append(component)
    return components


def reachable(roots: Iterable[V], neighbours: Callable[[V], Iterable[V]]) -> Set[V]:
    """All vertices reachable from roots, roots included"""
    seen: Set[V] = set(roots)
    frontier = list(seen)
    while frontier:
        v = frontier.pop()
        for w in neighbours(v):
            if w not in seen:
                seen.add(w)
                frontier.append(w)
    return seen
