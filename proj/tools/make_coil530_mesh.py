#!/usr/bin/env python3
# Copyright 2026 The hystfem Authors
# SPDX-License-Identifier: Apache-2.0
"""Writes an unstructured-looking base mesh with 530 nodes and 978 triangles.

A 20x20 grid of the unit square (441 nodes, 800 triangles) gets a centroid node
in every ninth triangle; each insertion adds one node and two triangles.
"""
import sys

N = 20
EVERY = 9


def main(path):
    nodes = [(i / N, j / N) for j in range(N + 1) for i in range(N + 1)]
    tris = []
    for j in range(N):
        for i in range(N):
            a = j * (N + 1) + i
            b, c, d = a + 1, a + N + 2, a + N + 1
            tris += [(a, b, c), (a, c, d)]
    out = []
    for k, (a, b, c) in enumerate(tris):
        if k % EVERY:
            out.append((a, b, c))
            continue
        g = len(nodes)
        nodes.append(tuple(sum(nodes[v][q] for v in (a, b, c)) / 3 for q in (0, 1)))
        out += [(a, b, g), (b, c, g), (c, a, g)]

    def tag(t):
        x = sum(nodes[v][0] for v in t) / 3
        y = sum(nodes[v][1] for v in t) / 3
        return "cu" if 0.25 < x < 0.75 and 0.25 < y < 0.75 else "fe"

    with open(path, "w") as f:
        f.write("# 20x20 grid with centroid refinement of every ninth triangle\n")
        f.write(f"nodes {len(nodes)}\n")
        for k, (x, y) in enumerate(nodes):
            f.write(f"{k} {x!r} {y!r}\n")
        f.write(f"elements {len(out)}\n")
        for k, t in enumerate(out):
            f.write(f"{k} {t[0]} {t[1]} {t[2]} {tag(t)}\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "coil530.mesh")
