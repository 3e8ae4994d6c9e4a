"""Independent Kauffman bracket: literal state sum, loops counted with networkx.

Shares nothing with the library beyond reading the PD tuples.
"""

import itertools

import networkx as nx


def _pmul(p, q):
    out = {}
    for a, x in p.items():
        for b, y in q.items():
            out[a + b] = out.get(a + b, 0) + x * y
    return {k: v for k, v in out.items() if v}


def _padd(p, q):
    out = dict(p)
    for k, v in q.items():
        out[k] = out.get(k, 0) + v
    return {k: v for k, v in out.items() if v}


def _delta_pow(n):
    out = {0: 1}
    for _ in range(n):
        out = _pmul(out, {2: -1, -2: -1})
    return out


def bracket_dict(crossings, free_loops=0):
    """Normalized bracket as {exponent: coefficient}."""
    total = {}
    n = len(crossings)
    for state in itertools.product((0, 1), repeat=n):
        g = nx.Graph()
        for c, (a, b, cc, d) in enumerate(crossings):
            slots = [(c, k) for k in range(4)]
            g.add_nodes_from(slots)
            if state[c] == 0:  # A: a-b, c-d
                g.add_edge(slots[0], slots[1])
                g.add_edge(slots[2], slots[3])
            else:  # B: a-d, b-c
                g.add_edge(slots[0], slots[3])
                g.add_edge(slots[1], slots[2])
        by_label = {}
        for c, x in enumerate(crossings):
            for k, lab in enumerate(x):
                by_label.setdefault(lab, []).append((c, k))
        for ends in by_label.values():
            g.add_edge(*ends)
        loops = nx.number_connected_components(g) + free_loops
        a = state.count(0)
        term = {a - (n - a): 1}
        total = _padd(total, _pmul(term, _delta_pow(loops - 1)))
    return total


def jones_dict(crossings, signs, free_loops=0):
    w = sum(signs)
    br = bracket_dict(crossings, free_loops)
    unit = -1 if w % 2 else 1
    return {e - 3 * w: unit * c for e, c in br.items()}
