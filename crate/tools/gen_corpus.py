#!/usr/bin/env python3
"""Regenerate the graph6 fixture corpora used by the test suites.

Isomorph rejection is delegated to nauty (through the `pynauty` bindings);
the graph6 writer is cross-checked against networkx on every record.

Outputs (under crates/core/tests/fixtures/):
  connected_le7.g6        all connected graphs, 1 <= n <= 7 (networkx atlas)
  cubic_le14.g6           all connected cubic graphs, 4 <= n <= 14
  clawfree_nNN.g6         all connected claw-free graphs on NN vertices, NN <= 11
  classA_le12.g6          all class-A graphs (connected, max degree <= 3, every
                          vertex of degree 2 or 3 in exactly one triangle,
                          exactly three leaves), n <= 12

Usage: python3 tools/gen_corpus.py [--max-clawfree 11] [--max-cubic 14]
"""

import argparse
import os
import random
import sys

import networkx as nx
import pynauty

# Known isomorphism-class counts (OEIS A001349, A002851, A022562).
CONNECTED = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853}
CUBIC = {4: 1, 6: 2, 8: 5, 10: 19, 12: 85, 14: 509}
CLAW_FREE = {1: 1, 2: 1, 3: 2, 4: 5, 5: 14, 6: 50, 7: 191, 8: 881, 9: 4494,
             10: 26389, 11: 184749}

FIXTURES = os.path.join(os.path.dirname(__file__), "..", "crates", "core",
                        "tests", "fixtures")


def graph6(adj):
    n = len(adj)
    assert n <= 62
    bits = []
    for j in range(1, n):
        for i in range(j):
            bits.append((adj[i] >> j) & 1)
    while len(bits) % 6:
        bits.append(0)
    out = [chr(n + 63)]
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k:k + 6]:
            val = (val << 1) | b
        out.append(chr(val + 63))
    return "".join(out)


def to_nx(adj):
    g = nx.Graph()
    g.add_nodes_from(range(len(adj)))
    for u in range(len(adj)):
        for v in range(u + 1, len(adj)):
            if (adj[u] >> v) & 1:
                g.add_edge(u, v)
    return g


def check_encoding(adj):
    ref = nx.to_graph6_bytes(to_nx(adj), header=False).decode().strip()
    mine = graph6(adj)
    assert ref == mine, (ref, mine)
    return mine


def nauty_graph(adj):
    n = len(adj)
    d = {u: [v for v in range(n) if (adj[u] >> v) & 1] for u in range(n)}
    return pynauty.Graph(n, directed=False, adjacency_dict=d)


def canonical(adj):
    """Return (certificate, canonically relabelled adjacency)."""
    g = nauty_graph(adj)
    cert = pynauty.certificate(g)
    lab = pynauty.canon_label(g)  # lab[new] = old
    inv = [0] * len(adj)
    for new, old in enumerate(lab):
        inv[old] = new
    out = [0] * len(adj)
    for u in range(len(adj)):
        m = adj[u]
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            out[inv[u]] |= 1 << inv[v]
    return cert, out


def dedup(candidates):
    seen = {}
    for adj in candidates:
        cert, canon = canonical(adj)
        if cert not in seen:
            seen[cert] = canon
    return sorted(seen.values(), key=graph6)


def write(name, graphs):
    path = os.path.join(FIXTURES, name)
    with open(path, "w") as fh:
        for adj in graphs:
            fh.write(check_encoding(adj) + "\n")
    print(f"wrote {len(graphs)} graphs to {path}", file=sys.stderr)


def connected_small():
    out = []
    for g in nx.graph_atlas_g():
        n = g.number_of_nodes()
        if n == 0 or not nx.is_connected(g):
            continue
        adj = [0] * n
        for u, v in g.edges():
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        out.append(adj)
    by_n = {}
    for adj in dedup(out):
        by_n.setdefault(len(adj), []).append(adj)
    for n, want in CONNECTED.items():
        assert len(by_n.get(n, [])) == want, (n, len(by_n.get(n, [])))
    return [adj for n in sorted(by_n) for adj in by_n[n]]


def edges_of(adj):
    return [(u, v) for u in range(len(adj)) for v in range(u + 1, len(adj))
            if (adj[u] >> v) & 1]


def random_cubic(n, rng):
    stubs = [v for v in range(n) for _ in range(3)]
    rng.shuffle(stubs)
    adj = [0] * n
    for k in range(0, len(stubs), 2):
        a, b = stubs[k], stubs[k + 1]
        if a == b or (adj[a] >> b) & 1:
            return None
        adj[a] |= 1 << b
        adj[b] |= 1 << a
    return adj


def is_connected(adj):
    seen, stack = 1, [0]
    while stack:
        v = stack.pop()
        m = adj[v] & ~seen
        seen |= m
        while m:
            u = (m & -m).bit_length() - 1
            m &= m - 1
            stack.append(u)
    return seen == (1 << len(adj)) - 1


def cubic_connected(max_n):
    k4 = [0b1110, 0b1101, 0b1011, 0b0111]
    levels = {4: [k4]}
    for n in range(6, max_n + 1, 2):
        cands = []
        for parent in levels[n - 2]:
            es = edges_of(parent)
            for i in range(len(es)):
                for j in range(i + 1, len(es)):
                    adj = parent + [0, 0]
                    x, y = n - 2, n - 1
                    for (a, b), w in ((es[i], x), (es[j], y)):
                        adj[a] &= ~(1 << b)
                        adj[b] &= ~(1 << a)
                        adj[a] |= 1 << w
                        adj[b] |= 1 << w
                        adj[w] |= (1 << a) | (1 << b)
                    adj[x] |= 1 << y
                    adj[y] |= 1 << x
                    cands.append(adj)
        # diamond insertion: subdivide an edge a-b by a copy of K4 - e
        for parent in levels.get(n - 4, []):
            for (a, b) in edges_of(parent):
                adj = parent + [0, 0, 0, 0]
                p, q, r, t = n - 4, n - 3, n - 2, n - 1
                adj[a] &= ~(1 << b)
                adj[b] &= ~(1 << a)
                for u, v in ((a, p), (p, q), (p, r), (q, r), (q, t), (r, t),
                             (t, b)):
                    adj[u] |= 1 << v
                    adj[v] |= 1 << u
                cands.append(adj)
        found = {}
        for adj in cands:
            cert, canon = canonical(adj)
            found.setdefault(cert, canon)
        # A few classes are unreachable by the two insertions above; fill
        # them by uniform random pairings until the known count is reached.
        rng = random.Random(n)
        while len(found) < CUBIC[n]:
            adj = random_cubic(n, rng)
            if adj is not None and is_connected(adj):
                cert, canon = canonical(adj)
                found.setdefault(cert, canon)
        levels[n] = sorted(found.values(), key=graph6)
        assert len(levels[n]) == CUBIC[n], (n, len(levels[n]))
        print(f"cubic n={n}: {len(levels[n])}", file=sys.stderr)
    return [adj for n in sorted(levels) for adj in levels[n]]


def is_clique(adj, mask):
    m = mask
    while m:
        v = (m & -m).bit_length() - 1
        m &= m - 1
        if mask & ~adj[v] & ~(1 << v):
            return False
    return True


def extensions(adj):
    """Neighbourhoods S for a new vertex keeping the graph claw-free."""
    n = len(adj)
    out = []

    def rec(v, s):
        if v == n:
            if s == 0:
                return
            m = s
            while m:
                u = (m & -m).bit_length() - 1
                m &= m - 1
                if not is_clique(adj, adj[u] & ~s):
                    return
            out.append(s)
            return
        rec(v + 1, s)
        # vertices of s not adjacent to v must form a clique
        if is_clique(adj, s & ~adj[v]):
            rec(v + 1, s | (1 << v))

    rec(0, 0)
    return out


def claw_free_connected(max_n):
    levels = {1: [[0]]}
    for n in range(2, max_n + 1):
        seen = {}
        for parent in levels[n - 1]:
            for s in extensions(parent):
                adj = parent + [s]
                for u in range(n - 1):
                    if (s >> u) & 1:
                        adj[u] |= 1 << (n - 1)
                cert, canon = canonical(adj)
                if cert not in seen:
                    seen[cert] = canon
        levels[n] = sorted(seen.values(), key=graph6)
        assert len(levels[n]) == CLAW_FREE[n], (n, len(levels[n]))
        print(f"claw-free n={n}: {len(levels[n])}", file=sys.stderr)
    return levels


def is_class_a(adj):
    n = len(adj)
    if not is_connected(adj):
        return False
    deg = [bin(a).count("1") for a in adj]
    if max(deg) > 3 or deg.count(1) != 3:
        return False
    for v in range(n):
        if deg[v] >= 2:
            tri = sum(1 for u, w in edges_of(adj)
                      if (adj[v] >> u) & 1 and (adj[v] >> w) & 1)
            if tri != 1:
                return False
    return True


def read_fixture(name):
    with open(os.path.join(FIXTURES, name)) as fh:
        for line in fh:
            g = nx.from_graph6_bytes(line.strip().encode())
            adj = [0] * g.number_of_nodes()
            for u, v in g.edges():
                adj[u] |= 1 << v
                adj[v] |= 1 << u
            yield adj


def class_a_le12(levels):
    """Class-A members up to 12 vertices. Deleting a non-cut vertex keeps a
    connected claw-free graph of maximum degree <= 3 in that family, so the
    n = 12 members are one-vertex extensions of the n = 11 ones."""
    out = [adj for n in sorted(levels) for adj in levels[n] if is_class_a(adj)]
    subcubic = [adj for adj in levels[11]
                if is_connected(adj) and max(bin(a).count("1") for a in adj) <= 3]
    seen = {}
    for parent in subcubic:
        for s in extensions(parent):
            if bin(s).count("1") > 3:
                continue
            if any((s >> u) & 1 and bin(parent[u]).count("1") == 3
                   for u in range(11)):
                continue
            adj = parent + [s]
            for u in range(11):
                if (s >> u) & 1:
                    adj[u] |= 1 << 11
            cert, canon = canonical(adj)
            seen.setdefault(cert, canon)
    out.extend(adj for adj in sorted(seen.values(), key=graph6)
               if is_class_a(adj))
    print(f"class A n<=12: {len(out)} ({len(subcubic)} subcubic n=11 parents, "
          f"{len(seen)} subcubic n=12)", file=sys.stderr)
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-clawfree", type=int, default=11)
    ap.add_argument("--max-cubic", type=int, default=14)
    ap.add_argument("--class-a-only", action="store_true",
                    help="rebuild classA_le12.g6 from existing claw-free fixtures")
    args = ap.parse_args()
    os.makedirs(FIXTURES, exist_ok=True)
    if args.class_a_only:
        levels = {n: list(read_fixture(f"clawfree_n{n:02}.g6"))
                  for n in range(1, 12)}
        write("classA_le12.g6", class_a_le12(levels))
        return
    write("connected_le7.g6", connected_small())
    write("cubic_le14.g6", cubic_connected(args.max_cubic))
    levels = claw_free_connected(args.max_clawfree)
    for n, graphs in levels.items():
        write(f"clawfree_n{n:02}.g6", graphs)
    if args.max_clawfree >= 11:
        write("classA_le12.g6", class_a_le12(levels))


if __name__ == "__main__":
    main()
