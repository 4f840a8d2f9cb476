#!/usr/bin/env python3
"""Regenerate the graph corpora under tests/fixtures.

connected_n5_m8.ilg   every connected graph on at most 5 vertices with at most 8 edges
connected_n6_m9.ilg   every connected graph on 6 vertices with at most 9 edges
outerplanar_n12.ilg   every maximal outerplanar graph on 5..12 vertices

Graphs are unique up to isomorphism and written with all-zero labels.
"""

import itertools
import pathlib
import sys

import networkx as nx
from networkx.generators.atlas import graph_atlas_g

OUT = pathlib.Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def ilg(g):
    g = nx.convert_node_labels_to_integers(g, ordering="sorted")
    edges = sorted((min(u, v), max(u, v)) for u, v in g.edges())
    lines = [f"{g.number_of_nodes()} {len(edges)}"]
    lines += [f"{u} {v} 0" for u, v in edges]
    return "\n".join(lines) + "\n"


def atlas(pred):
    return [g for g in graph_atlas_g() if g.number_of_nodes() > 0 and nx.is_connected(g) and pred(g)]


def triangulations(poly):
    """Diagonal sets of all triangulations of the convex polygon with vertices poly."""
    if len(poly) < 3:
        yield ()
        return
    a, b = poly[0], poly[-1]
    for i in range(1, len(poly) - 1):
        apex = poly[i]
        left = poly[: i + 1]
        right = poly[i:]
        for dl in triangulations(left):
            for dr in triangulations(right):
                extra = []
                if i > 1:
                    extra.append((a, apex))
                if i < len(poly) - 2:
                    extra.append((apex, b))
                yield tuple(extra) + dl + dr


def maximal_outerplanar(n):
    reps = {}
    for diags in triangulations(list(range(n))):
        g = nx.cycle_graph(n)
        g.add_edges_from(diags)
        key = nx.weisfeiler_lehman_graph_hash(g, iterations=4)
        bucket = reps.setdefault(key, [])
        if not any(nx.is_isomorphic(g, h) for h in bucket):
            bucket.append(g)
    out = [g for b in reps.values() for g in b]
    out.sort(key=lambda g: sorted(g.edges()))
    return out


def write(name, graphs):
    path = OUT / name
    path.write_text("".join(ilg(g) for g in graphs))
    print(f"{path.name}: {len(graphs)} graphs", file=sys.stderr)


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    write("connected_n5_m8.ilg", atlas(lambda g: g.number_of_nodes() <= 5 and g.number_of_edges() <= 8))
    write("connected_n6_m9.ilg", atlas(lambda g: g.number_of_nodes() == 6 and g.number_of_edges() <= 9))
    mops = list(itertools.chain.from_iterable(maximal_outerplanar(n) for n in range(5, 13)))
    write("outerplanar_n12.ilg", mops)


if __name__ == "__main__":
    main()
