#!/usr/bin/env python3
# Copyright 2026 The Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Writes the test corpus under corpus/.

Decompositions are assembled from small glue matroids; J1 and J2 are
derived from the children's ground sets so every file is consistent.
"""

import json
import os
import sys


def graphic(edges):
    return {"type": "graphic",
            "edges": {str(e): [u, v] for e, (u, v) in sorted(edges.items())}}


def linear(p, cols):
    dim = len(next(iter(cols.values()))) if cols else 0
    return {"type": "linear", "field": p, "dimension": dim,
            "columns": {str(e): v for e, v in sorted(cols.items())}}


def empty():
    return {"type": "explicit", "elements": [], "rank": {"": 0}}


def triangle(a, b, c):
    return graphic({a: (0, 1), b: (1, 2), c: (0, 2)})


def u24(a, b, c, d):
    return linear(3, {a: [1, 0], b: [0, 1], c: [1, 1], d: [1, 2]})


def k4(ids):
    pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    return graphic(dict(zip(ids, pairs)))


def ground(m):
    if m["type"] == "graphic":
        return {int(e) for e in m["edges"]}
    if m["type"] == "linear":
        return {int(e) for e in m["columns"]}
    return set(m["elements"])


def restrict(m, keep):
    if m["type"] == "graphic":
        return graphic({int(e): tuple(uv) for e, uv in m["edges"].items()
                        if int(e) in keep})
    if m["type"] == "linear":
        return linear(m["field"], {int(e): v for e, v in m["columns"].items()
                                   if int(e) in keep})
    raise ValueError("restrict needs a graphic or linear matroid")


class Builder:
    def __init__(self):
        self.nodes = {}
        self.grounds = {}

    def leaf(self, name, m):
        assert len(ground(m)) <= 1
        self.nodes[name] = {"children": [], "K": m, "J1": [], "J2": [],
                            "D": []}
        self.grounds[name] = ground(m)
        return name

    def glue(self, name, c1, c2, k, d=()):
        ek = ground(k)
        self.nodes[name] = {
            "children": [c1, c2], "K": k,
            "J1": sorted(self.grounds[c1] & ek),
            "J2": sorted(self.grounds[c2] & ek),
            "D": sorted(d)}
        self.grounds[name] = (self.grounds[c1] | self.grounds[c2] | ek) - set(d)
        return name

    def single(self, name, m, e):
        return self.leaf(name, restrict(m, {e}))

    def done(self, root):
        return {"nodes": self.nodes, "root": root}


def comb(name, m):
    """Trivial decomposition: K = m glued onto two of its elements."""
    b = Builder()
    ids = sorted(ground(m))
    b.single("l1", m, ids[0])
    b.single("l2", m, ids[1])
    b.glue(name, "l1", "l2", m)
    return b.done(name)


def direct_sum_of_leaves(leaves):
    """Balanced tree of leaves glued with an empty K."""
    b = Builder()
    names = [b.leaf("l%d" % i, m) for i, m in enumerate(leaves)]
    count = 0
    while len(names) > 1:
        nxt = []
        for i in range(0, len(names) - 1, 2):
            count += 1
            nxt.append(b.glue("n%d" % count, names[i], names[i + 1], empty()))
        if len(names) % 2:
            nxt.append(names[-1])
        names = nxt
    return b.done(names[0])


def triangle_chain(n, delete=True):
    """n triangles chained by 2-sums (a cycle of length n + 2), or by
    parallel connections when delete is False."""
    assert n >= 2
    b = Builder()
    a, bb = 1, 2
    p = 1000
    b.leaf("la", graphic({a: (0, 1)}))
    b.leaf("lb", graphic({bb: (0, 1)}))
    cur = b.glue("t1", "la", "lb", triangle(a, bb, p + 1))
    nxt_id = 3
    for i in range(2, n):
        x = nxt_id
        nxt_id += 1
        b.leaf("l%d" % x, graphic({x: (0, 1)}))
        cur = b.glue("t%d" % i, cur, "l%d" % x,
                     triangle(p + i - 1, x, p + i),
                     [p + i - 1] if delete else [])
    y, z = nxt_id, nxt_id + 1
    b.leaf("l%d" % y, graphic({y: (0, 1)}))
    cur = b.glue("t%d" % n, cur, "l%d" % y, triangle(p + n - 1, y, z),
                 [p + n - 1] if delete else [])
    return b.done(cur)


def two_sum_pair(m1, m2, p, delete=True):
    """Combs for m1 and m2 (sharing element p) glued along K = {p}."""
    b = Builder()
    for side, m in (("a", m1), ("b", m2)):
        ids = sorted(ground(m) - {p})
        b.single(side + "1", m, ids[0])
        b.single(side + "2", m, ids[1])
        b.glue(side, side + "1", side + "2", m)
    b.glue("root", "a", "b", restrict(m1, {p}), [p] if delete else [])
    return b.done("root")


def two_k4_on_triangle(delete):
    m1 = k4([1, 2, 3, 4, 5, 6])
    # Second K4 shares the triangle on edges 1, 2, 4 (vertices 0, 1, 2).
    m2 = graphic({1: (0, 1), 2: (0, 2), 4: (1, 2), 20: (0, 9), 21: (1, 9),
                  22: (2, 9)})
    b = Builder()
    b.single("a1", m1, 3)
    b.single("a2", m1, 5)
    b.glue("a", "a1", "a2", m1)
    b.single("b1", m2, 20)
    b.single("b2", m2, 21)
    b.glue("b", "b1", "b2", m2)
    b.glue("root", "a", "b", restrict(m1, {1, 2, 4}),
           [1, 2, 4] if delete else [])
    return b.done("root")


def fan(n):
    """Chain of n triangles glued along edges without deletion."""
    return triangle_chain(n, delete=False)


def mixed_fields():
    """U_{2,4} over GF(3) parallel-connected with a graphic triangle, then
    direct sum with a GF(2) line."""
    m1 = u24(1, 2, 3, 50)
    m2 = triangle(4, 5, 50)
    b = Builder()
    b.single("a1", m1, 1)
    b.single("a2", m1, 2)
    b.glue("a", "a1", "a2", m1)
    b.single("b1", m2, 4)
    b.single("b2", m2, 5)
    b.glue("b", "b1", "b2", m2)
    b.glue("ab", "a", "b", restrict(m1, {50}))
    line = linear(2, {7: [1, 0], 8: [0, 1], 9: [1, 1]})
    b.single("c1", line, 7)
    b.single("c2", line, 8)
    b.glue("c", "c1", "c2", line)
    b.glue("root", "ab", "c", empty())
    return b.done("root")


def parallel_pairs():
    b = Builder()
    pair1 = linear(2, {1: [1], 2: [1]})
    pair2 = linear(3, {3: [1], 4: [2]})
    b.single("a1", pair1, 1)
    b.single("a2", pair1, 2)
    b.glue("a", "a1", "a2", pair1)
    b.single("b1", pair2, 3)
    b.single("b2", pair2, 4)
    b.glue("b", "b1", "b2", pair2)
    b.glue("root", "a", "b", empty())
    return b.done("root")


def k4_minus_edge():
    return comb("root", graphic({1: (0, 1), 2: (0, 2), 3: (0, 3), 4: (1, 2),
                                 5: (1, 3)}))


DECOMPOSITIONS = {
    "free4": lambda: direct_sum_of_leaves(
        [graphic({i: (i, i + 10)}) for i in range(1, 5)]),
    "loops_coloops5": lambda: direct_sum_of_leaves(
        [graphic({1: (0, 0)}), graphic({2: (0, 1)}), graphic({3: (5, 5)}),
         linear(3, {4: [0, 0]}), linear(2, {5: [1, 1]})]),
    "parallel_pairs": parallel_pairs,
    "triangle": lambda: comb("root", triangle(1, 2, 3)),
    "u24": lambda: comb("root", u24(1, 2, 3, 4)),
    "k4_minus_edge": k4_minus_edge,
    "k4": lambda: comb("root", k4([1, 2, 3, 4, 5, 6])),
    "two_sum_triangles": lambda: two_sum_pair(
        triangle(1, 2, 100), triangle(3, 4, 100), 100),
    "parallel_triangles": lambda: two_sum_pair(
        triangle(1, 2, 100), triangle(3, 4, 100), 100, delete=False),
    "two_sum_u24": lambda: two_sum_pair(
        u24(1, 2, 3, 100), u24(5, 6, 7, 100), 100),
    "mixed_fields": mixed_fields,
    "two_k4_triangle": lambda: two_k4_on_triangle(False),
    "two_k4_triangle_deleted": lambda: two_k4_on_triangle(True),
    "cycle5": lambda: triangle_chain(3),
    "cycle8": lambda: triangle_chain(6),
    "cycle14": lambda: triangle_chain(12),
    "fan4": lambda: fan(4),
    "fan6": lambda: fan(6),
}


def fano():
    return linear(2, {i: [i & 1, (i >> 1) & 1, (i >> 2) & 1]
                      for i in range(1, 8)})


def caterpillar(elements):
    """Cubic tree with leaves labelled in order (internal nodes 100..)."""
    n = len(elements)
    labels = {i: e for i, e in enumerate(elements)}
    if n == 1:
        return {"tree": [], "leaf_labels": {"0": elements[0]}}
    if n == 2:
        return {"tree": [[0, 1]], "leaf_labels": {"0": elements[0],
                                                 "1": elements[1]}}
    spine = [100 + i for i in range(n - 2)]
    edges = [[0, spine[0]], [1, spine[0]]]
    for i in range(1, n - 2):
        edges.append([spine[i - 1], spine[i]])
        edges.append([i + 1, spine[i]])
    edges.append([n - 1, spine[-1]])
    return {"tree": edges,
            "leaf_labels": {str(k): v for k, v in labels.items()}}


def cycle_gf2(n):
    # Cycle C_n over GF(2): unit vectors e_1..e_{n-1} and their sum.
    cols = {}
    for i in range(n - 1):
        v = [0] * (n - 1)
        v[i] = 1
        cols[i + 1] = v
    cols[n] = [1] * (n - 1)
    return linear(2, cols)


BRANCH = {
    # name: (matroid, branch decomposition, branch width)
    "free4_gf2": (linear(2, {1: [1, 0, 0, 0], 2: [0, 1, 0, 0],
                             3: [0, 0, 1, 0], 4: [0, 0, 0, 1]}),
                  caterpillar([1, 2, 3, 4]), 1),
    "u24_gf3": (u24(1, 2, 3, 4), caterpillar([1, 2, 3, 4]), 3),
    "triangle_gf3": (linear(3, {1: [1, 0], 2: [0, 1], 3: [1, 2]}),
                     caterpillar([1, 2, 3]), 2),
    "cycle4_gf2": (cycle_gf2(4), caterpillar([1, 2, 3, 4]), 2),
    "cycle6_gf2": (cycle_gf2(6), caterpillar([1, 2, 3, 4, 5, 6]), 2),
    "k4_gf2": (linear(2, {1: [1, 0, 0], 2: [0, 1, 0], 3: [0, 0, 1],
                          4: [1, 1, 0], 5: [1, 0, 1], 6: [0, 1, 1]}),
               {"tree": [[0, 10], [1, 10], [10, 12], [2, 11], [3, 11],
                         [11, 12], [12, 13], [4, 13], [5, 13]],
                "leaf_labels": {"0": 1, "1": 4, "2": 2, "3": 6, "4": 3,
                                "5": 5}}, 3),
    "fano_gf2": (fano(),
                 # Center 20 splits E into {2, 4}, {1, 7} and the line
                 # {3, 5, 6}.
                 {"tree": [[0, 10], [1, 10], [10, 20], [2, 11], [3, 11],
                           [11, 20], [20, 12], [12, 4], [12, 13], [13, 5],
                           [13, 6]],
                  "leaf_labels": {"0": 2, "1": 4, "2": 1, "3": 7, "4": 3,
                                  "5": 5, "6": 6}}, 3),
}


GPC_PAIRS = {
    "triangles_edge": (triangle(1, 2, 10), triangle(3, 4, 10)),
    "k4_triangle": (k4([1, 2, 3, 4, 5, 6]),
                    graphic({1: (0, 1), 2: (0, 2), 4: (1, 2), 20: (0, 9),
                             21: (1, 9), 22: (2, 9)})),
    "fano_line": (fano(), linear(2, {1: [1, 0, 0], 2: [0, 1, 0],
                                     3: [1, 1, 0], 20: [1, 0, 1],
                                     21: [0, 1, 1]})),
    "u24_point": (u24(1, 2, 3, 10), triangle(4, 5, 10)),
    "disjoint": (u24(1, 2, 3, 4), triangle(5, 6, 7)),
    "fano_point_u24": (fano(), linear(3, {7: [1, 0], 20: [0, 1], 21: [1, 1],
                                          22: [1, 2]})),
    "contained": (k4([1, 2, 3, 4, 5, 6]), triangle(1, 2, 4)),
}

# K together with two matroids meeting it in modular semiflats.
GLUE_TRIPLES = {
    "fano_two_lines": (fano(),
                       linear(2, {1: [1, 0, 0], 2: [0, 1, 0], 3: [1, 1, 0],
                                  20: [1, 0, 1], 21: [0, 1, 1]}),
                       linear(2, {1: [1, 0, 0], 4: [0, 0, 1], 5: [1, 0, 1],
                                  30: [1, 1, 0], 31: [0, 1, 1]})),
    "triangle_two_points": (triangle(1, 2, 3), triangle(1, 20, 21),
                            triangle(2, 30, 31)),
    "k4_triangle_point": (k4([1, 2, 3, 4, 5, 6]),
                          graphic({1: (0, 1), 2: (0, 2), 4: (1, 2),
                                   20: (0, 9), 21: (1, 9), 22: (2, 9)}),
                          triangle(6, 30, 31)),
}

TWO_SUM_PAIRS = {
    "triangles": (triangle(1, 2, 100), triangle(3, 4, 100), 100),
    "u24_u24": (u24(1, 2, 3, 100), u24(5, 6, 7, 100), 100),
    "k4_triangle": (k4([1, 2, 3, 4, 5, 100]), triangle(7, 8, 100), 100),
    "fano_u24": (linear(2, {i: [i & 1, (i >> 1) & 1, (i >> 2) & 1]
                            for i in range(1, 7)} | {100: [1, 1, 1]}),
                 u24(8, 9, 10, 100), 100),
    "cycle_parallel": (cycle_gf2(4), linear(3, {4: [1], 9: [2]}), 4),
}


FORMULAS = {
    "has_circuit": "exists C is_circuit(C)",
    "hamiltonian": "exists H exists e (is_circuit(H) & is_base(H \\ {e}))",
    "has_loop": "exists e (e in cl({}))",
    "has_coloop": "exists e forall B (is_base(B) -> e in B)",
    "has_parallel_pair":
        "exists e exists f (e != f & indep({e}) & e in cl({f}))",
    "connected":
        "forall a forall b (a = b | exists C (is_circuit(C) & a in C & b in C))",
    "free": "exists B (is_base(B) & forall e (e in B))",
    "rank_at_least_2": "exists a exists b (a != b & indep({a, b}))",
    "simple": "forall a forall b (a = b | indep({a, b}))",
    "has_triangle":
        "exists C (is_circuit(C) & exists a exists b exists c "
        "(a != b & a != c & b != c & "
        "forall d (d in C <-> (d = a | d = b | d = c))))",
    "rank_exactly_2":
        "exists B (is_base(B) & exists a exists b "
        "(a != b & forall d (d in B <-> (d = a | d = b))))",
    "redundant_spanning":
        "exists X exists Y (X != Y & cl(X) = cl(Y))",
}


def write(path, data):
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w") as f:
        json.dump(data, f, indent=1, sort_keys=False)
        f.write("\n")


def main(out):
    for name, make in DECOMPOSITIONS.items():
        write(os.path.join(out, "decompositions", name + ".json"), make())
    for name, (m, tree, width) in BRANCH.items():
        write(os.path.join(out, "branch", name + ".json"),
              {"matroid": m, "branch": tree, "branch_width": width})
    for name, (m1, m2) in GPC_PAIRS.items():
        write(os.path.join(out, "gpc", name + ".json"), {"m1": m1, "m2": m2})
    for name, (k, m1, m2) in GLUE_TRIPLES.items():
        write(os.path.join(out, "glue", name + ".json"),
              {"K": k, "m1": m1, "m2": m2})
    for name, (m1, m2, p) in TWO_SUM_PAIRS.items():
        write(os.path.join(out, "two_sum", name + ".json"),
              {"m1": m1, "m2": m2, "p": p})
    for name, text in FORMULAS.items():
        path = os.path.join(out, "formulas", name + ".mso")
        os.makedirs(os.path.dirname(path), exist_ok=True)
        with open(path, "w") as f:
            f.write(text + "\n")
    for n in (4, 8, 16, 32, 64):
        write(os.path.join(out, "scaling", "chain%d.json" % n),
              triangle_chain(n))


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else
         os.path.join(os.path.dirname(__file__), "..", "corpus"))
