#!/usr/bin/env python3
"""One-time conversion of the bundled real-world networks to plain edge lists.

The toolkit reads whitespace-separated edge lists ("u v [weight]"), so the
published datasets are converted once with this script and the results are
committed under data/. Sources (see data/NOTES.md for details):

  karate, karate_weighted   Zachary (1977); shipped with networkx, weights are
                            the original interaction strengths.
  dolphins, football,       M. Newman's collection
  polbooks, polblogs        (http://www-personal.umich.edu/~mejn/netdata/),
                            GML files; polblogs is reduced to the largest
                            connected component of its undirected simple
                            version; football drops the five independent
                            teams that belong to no conference.
  GAMA.DAT                  Read (1954) Gahuku-Gama alliance/opposition
                            matrices, UCINET DL file
                            (http://vlado.fmf.uni-lj.si/pub/networks/data/ucinet/ucidata.htm).
  Stranke94.net             Kropivnik & Mrvar (1996) Slovene parliamentary
                            party network, Pajek matrix file
                            (http://vlado.fmf.uni-lj.si/pub/networks/data/soc/Samo/Stranke94.htm).

Usage: prepare_datasets.py --raw-dir RAW --out-dir ../data
"""

import argparse
import os
import re
import sys


def parse_gml(path):
    """Minimal GML reader: returns (node ids, node 'value' attrs, edge list)."""
    text = open(path, encoding="utf-8", errors="replace").read()
    tokens = re.findall(r"\[|\]|\"[^\"]*\"|[^\s\[\]]+", text)
    pos = 0

    def parse_block():
        nonlocal pos
        obj = []
        while pos < len(tokens):
            tok = tokens[pos]
            if tok == "]":
                pos += 1
                return obj
            key = tok
            pos += 1
            if tokens[pos] == "[":
                pos += 1
                obj.append((key, parse_block()))
            else:
                val = tokens[pos]
                pos += 1
                obj.append((key, val.strip('"')))
        return obj

    top = parse_block()
    graph = dict(top).get("graph")
    nodes, values, edges = [], {}, []
    for key, val in graph:
        if key == "node":
            d = dict(val)
            nid = int(d["id"])
            nodes.append(nid)
            if "value" in d:
                values[nid] = d["value"]
            elif "gt" in d:
                values[nid] = d["gt"]
        elif key == "edge":
            d = dict(val)
            edges.append((int(d["source"]), int(d["target"]),
                          float(d.get("weight", 1.0))))
    return nodes, values, edges


def simple_undirected(nodes, edges):
    """Collapse directions and duplicates, drop self-loops, weight 1."""
    seen = set()
    for u, v, _ in edges:
        if u == v:
            continue
        seen.add((min(u, v), max(u, v)))
    return sorted(seen)


def largest_component(nodes, pairs):
    adj = {u: [] for u in nodes}
    for u, v in pairs:
        adj[u].append(v)
        adj[v].append(u)
    best, visited = [], set()
    for start in nodes:
        if start in visited:
            continue
        comp, stack = [], [start]
        visited.add(start)
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in adj[u]:
                if w not in visited:
                    visited.add(w)
                    stack.append(w)
        if len(comp) > len(best):
            best = comp
    keep = set(best)
    return sorted(keep), [(u, v) for u, v in pairs if u in keep and v in keep]


def write_edges(path, pairs, weights=None):
    with open(path, "w") as f:
        for i, (u, v) in enumerate(pairs):
            if weights is None:
                f.write(f"{u} {v}\n")
            else:
                w = weights[i]
                t = int(w)
                f.write(f"{u} {v} {t if t == w else w}\n")
    print(f"{path}: {len(pairs)} edges")


def convert_gml(raw, out, name, drop_value=None, lcc=False):
    nodes, values, edges = parse_gml(os.path.join(raw, f"{name}.gml"))
    pairs = simple_undirected(nodes, edges)
    if drop_value is not None:
        keep = {u for u in nodes if values.get(u) != drop_value}
        nodes = sorted(keep)
        pairs = [(u, v) for u, v in pairs if u in keep and v in keep]
    if lcc:
        nodes, pairs = largest_component(nodes, pairs)
    print(f"{name}: n={len(nodes)}", end="  ")
    write_edges(os.path.join(out, f"{name}.txt"), pairs)


def convert_karate(out):
    import networkx as nx
    g = nx.karate_club_graph()
    pairs = sorted((min(u, v), max(u, v)) for u, v in g.edges())
    write_edges(os.path.join(out, "karate.txt"), pairs)
    weights = [g[u][v]["weight"] for u, v in pairs]
    write_edges(os.path.join(out, "karate_weighted.txt"), pairs, weights)


def convert_gama(raw, out):
    lines = [l.strip() for l in open(os.path.join(raw, "GAMA.DAT"))]
    start = lines.index("DATA:") + 1
    rows = [[int(x) for x in l.split()] for l in lines[start:] if l]
    pos, neg = rows[:16], rows[16:32]
    names = lines[lines.index("ROW LABELS:") + 1:lines.index("ROW LABELS:") + 17]
    pairs, weights = [], []
    for i in range(16):
        for j in range(i + 1, 16):
            assert pos[i][j] == pos[j][i] and neg[i][j] == neg[j][i]
            assert not (pos[i][j] and neg[i][j])
            if pos[i][j]:
                pairs.append((names[i], names[j]))
                weights.append(1)
            elif neg[i][j]:
                pairs.append((names[i], names[j]))
                weights.append(-1)
    write_edges(os.path.join(out, "gahuku_gama.txt"), pairs, weights)


def convert_stranke(raw, out):
    lines = [l.rstrip() for l in open(os.path.join(raw, "Stranke94.net"),
                                      encoding="latin-1")]
    iv = next(i for i, l in enumerate(lines) if l.startswith("*Vertices"))
    n = int(lines[iv].split()[1])
    names = [lines[iv + 1 + i].split()[1] for i in range(n)]
    im = next(i for i, l in enumerate(lines) if l.startswith("*Matrix"))
    mat = [[float(x) for x in lines[im + 1 + i].split()] for i in range(n)]
    pairs, weights = [], []
    for i in range(n):
        for j in range(i + 1, n):
            assert mat[i][j] == mat[j][i]
            if mat[i][j] != 0:
                pairs.append((names[i], names[j]))
                weights.append(mat[i][j])
    write_edges(os.path.join(out, "slovene.txt"), pairs, weights)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--raw-dir", required=True)
    ap.add_argument("--out-dir", required=True)
    args = ap.parse_args()
    os.makedirs(args.out_dir, exist_ok=True)

    convert_karate(args.out_dir)
    convert_gml(args.raw_dir, args.out_dir, "dolphins")
    convert_gml(args.raw_dir, args.out_dir, "football", drop_value="5")
    convert_gml(args.raw_dir, args.out_dir, "polbooks")
    convert_gml(args.raw_dir, args.out_dir, "polblogs", lcc=True)
    convert_gama(args.raw_dir, args.out_dir)
    convert_stranke(args.raw_dir, args.out_dir)


if __name__ == "__main__":
    sys.exit(main())
