#!/usr/bin/env python3
"""Regenerate the bundled group fixtures in crates/core/catalog/.

Each group is built concretely (permutations, or matrices over a small
prime field turned into a regular representation), then normal subgroups
of interest are expressed as words in the generators.
"""
import json
import itertools
import os
import sys
from collections import deque

OUT = os.path.join(os.path.dirname(__file__), "..", "crates", "core", "catalog")


def closure(gens, mul, ident):
    elems = [ident]
    seen = {ident: 0}
    i = 0
    while i < len(elems):
        for g in gens:
            h = mul(elems[i], g)
            if h not in seen:
                seen[h] = len(elems)
                elems.append(h)
        i += 1
    return elems, seen


def pmul(a, b):
    # apply a, then b
    return tuple(b[a[i]] for i in range(len(a)))


def pinv(a):
    r = [0] * len(a)
    for i, x in enumerate(a):
        r[x] = i
    return tuple(r)


def cycles(n, *cyc):
    p = list(range(n))
    for c in cyc:
        for i in range(len(c)):
            p[c[i] - 1] = c[(i + 1) % len(c)] - 1
    return tuple(p)


def mat_mul(p):
    def mul(a, b):
        n = int(len(a) ** 0.5)
        return tuple(
            sum(a[i * n + k] * b[k * n + j] for k in range(n)) % p
            for i in range(n)
            for j in range(n)
        )
    return mul


def ident_mat(n):
    return tuple(1 if i == j else 0 for i in range(n) for j in range(n))


def regular(gens, mul, ident):
    elems, index = closure(gens, mul, ident)
    perms = []
    for g in gens:
        perms.append(tuple(index[mul(e, g)] for e in elems))
    return perms


def on_vectors(gens, p, dim):
    vecs = [v for v in itertools.product(range(p), repeat=dim) if any(v)]
    index = {v: i for i, v in enumerate(vecs)}
    perms = []
    for g in gens:
        # row vector times matrix
        img = []
        for v in vecs:
            w = tuple(sum(v[k] * g[k * dim + j] for k in range(dim)) % p for j in range(dim))
            img.append(index[w])
        perms.append(tuple(img))
    return perms


def direct_sum(pa, pb):
    na, nb = len(pa[0]), len(pb[0])
    ida, idb = tuple(range(na)), tuple(range(nb))
    out = [tuple(list(g) + [na + x for x in idb]) for g in pa]
    out += [tuple(list(ida) + [na + x for x in g]) for g in pb]
    return out


class Group:
    def __init__(self, gens):
        self.gens = gens
        n = len(gens[0])
        self.ident = tuple(range(n))
        self.elems, self.index = closure(gens, pmul, self.ident)
        self.order = len(self.elems)
        # shortest words by BFS over generators and inverses
        self.word = {self.ident: []}
        q = deque([self.ident])
        steps = []
        for i, g in enumerate(gens):
            steps.append((i + 1, g))
            steps.append((-(i + 1), pinv(g)))
        while q:
            e = q.popleft()
            for s, g in steps:
                h = pmul(e, g)
                if h not in self.word:
                    self.word[h] = self.word[e] + [s]
                    q.append(h)

    def subgroup(self, elems):
        return closure(list(elems), pmul, self.ident)[0] if elems else [self.ident]

    def center(self):
        return [z for z in self.elems if all(pmul(z, g) == pmul(g, z) for g in self.gens)]

    def derived(self, members=None):
        members = members if members is not None else self.elems
        comms = set()
        for a in members:
            for b in members:
                comms.add(pmul(pmul(pinv(a), pinv(b)), pmul(a, b)))
        return self.subgroup(sorted(comms))

    def is_normal(self, members):
        s = set(members)
        return all(pmul(pmul(pinv(g), m), g) in s for m in members for g in self.gens)

    def gen_words(self, members):
        s = set(members)
        chosen = []
        current = {self.ident}
        for m in sorted(members, key=lambda e: (len(self.word[e]), self.word[e])):
            if m not in current:
                chosen.append(m)
                current = set(self.subgroup(chosen))
            if current == s:
                break
        return [self.word[m] for m in chosen]


def emit(fname, name, gens, normals, slow=False):
    G = Group(gens)
    declared = []
    seen = set()
    for nname, members in normals(G):
        key = frozenset(members)
        if key in seen or len(members) in (1, G.order):
            continue
        assert G.is_normal(members), (name, nname)
        seen.add(key)
        declared.append({"name": nname, "generators": G.gen_words(members)})
    doc = {
        "name": name,
        "presentation": "permutation",
        "degree": len(gens[0]),
        "generators": [[x + 1 for x in g] for g in gens],
        "normal_subgroups": declared,
    }
    if slow:
        doc["slow"] = True
    with open(os.path.join(OUT, fname), "w") as f:
        f.write(json_dump(doc))
    print(f"{fname}: {name} order {G.order}, normal {[ (d['name']) for d in declared]}")


def json_dump(doc):
    # one generator per line keeps the files diffable
    lines = ["{"]
    lines.append(f'  "name": {json.dumps(doc["name"])},')
    if doc.get("slow"):
        lines.append('  "slow": true,')
    lines.append(f'  "presentation": "permutation",')
    lines.append(f'  "degree": {doc["degree"]},')
    lines.append('  "generators": [')
    gl = [f"    {json.dumps(g, separators=(',', ':'))}" for g in doc["generators"]]
    lines.append(",\n".join(gl))
    lines.append("  ],")
    lines.append('  "normal_subgroups": [')
    nl = [
        f'    {{"name": {json.dumps(d["name"])}, "generators": {json.dumps(d["generators"], separators=(",", ":"))}}}'
        for d in doc["normal_subgroups"]
    ]
    lines.append(",\n".join(nl))
    lines.append("  ]")
    lines.append("}")
    return "\n".join(lines) + "\n"


def std_normals(extra=()):
    def f(G):
        out = [("Z", G.center())]
        d = G.derived()
        out.append(("D", d))
        out.append(("DD", G.derived(d)))
        for nm, fn in extra:
            out.append((nm, fn(G)))
        return out
    return f


def named(*pairs):
    """pairs of (name, fn(G) -> members); tried first so they win the name."""
    def f(G):
        out = [(nm, fn(G)) for nm, fn in pairs]
        out += std_normals()(G)
        return out
    return f


def gen_by(*words):
    def fn(G):
        els = []
        for w in words:
            e = G.ident
            for s in w:
                g = G.gens[abs(s) - 1]
                e = pmul(e, g if s > 0 else pinv(g))
            els.append(e)
        return G.subgroup(els)
    return fn


def order_elems(G, k):
    out = []
    for e in G.elems:
        x, o = e, 1
        while x != G.ident:
            x, o = pmul(x, e), o + 1
        if o == k:
            out.append(e)
    return out


def two_a8():
    """2.A8 inside the even Clifford group of R^8.

    Transpositions (a b) lift to (g_a - g_b)/sqrt2 for eight anticommuting
    real 16x16 involutions g_i; even products have dyadic entries. The group
    acts faithfully on the orbit of a half-spinor, which has 240 points.
    """
    import numpy as np
    paulis = {
        "I": np.eye(2),
        "X": np.array([[0.0, 1.0], [1.0, 0.0]]),
        "Z": np.array([[1.0, 0.0], [0.0, -1.0]]),
        "J": np.array([[0.0, -1.0], [1.0, 0.0]]),
    }
    cands = []
    for word in itertools.product("IXZJ", repeat=4):
        if word.count("J") % 2 or all(c == "I" for c in word):
            continue
        m = paulis[word[0]]
        for c in word[1:]:
            m = np.kron(m, paulis[c])
        cands.append(m)

    def search(chosen, start):
        if len(chosen) == 8:
            return chosen
        for i in range(start, len(cands)):
            c = cands[i]
            if all(np.array_equal(c @ d, -(d @ c)) for d in chosen):
                r = search(chosen + [c], i + 1)
                if r:
                    return r
        return None

    gam = search([], 0)
    assert gam is not None

    def t(a, b):
        return (gam[a] - gam[b]) / np.sqrt(2.0)

    def prod(ms):
        r = np.eye(16)
        for m in ms:
            r = r @ m
        return np.round(r * 256) / 256

    # lifts of (1,2,3) and of the 7-cycle (2,...,8)
    g1 = prod([t(0, 1), t(1, 2)])
    g2 = prod([t(1, 2), t(2, 3), t(3, 4), t(4, 5), t(5, 6), t(6, 7)])

    def key(v):
        return tuple(int(x) for x in np.round(v * 1024))

    def orbit(v):
        pts = [v]
        idx = {key(v): 0}
        i = 0
        while i < len(pts):
            for g in (g1, g2):
                w = pts[i] @ g
                k = key(w)
                if k not in idx:
                    idx[k] = len(pts)
                    pts.append(w)
            i += 1
        return pts, idx

    vol = np.eye(16)
    for g in gam:
        vol = vol @ g
    half = (np.eye(16) + vol) / 2
    pts, idx = orbit(np.eye(16)[0] @ half)
    assert len(pts) == 240, len(pts)
    return [tuple(idx[key(p @ g)] for p in pts) for g in (g1, g2)]


def main():
    os.makedirs(OUT, exist_ok=True)
    only = sys.argv[1:]

    def want(f):
        return not only or f in only

    if want("c2.group"):
        emit("c2.group", "C2", [cycles(2, (1, 2))], std_normals())
    if want("c4.group"):
        emit("c4.group", "C4", [cycles(4, (1, 2, 3, 4))], named(("C2", gen_by([1, 1]))))
    if want("c6.group"):
        emit("c6.group", "C6", [cycles(6, (1, 2, 3, 4, 5, 6))],
             named(("C2", gen_by([1, 1, 1])), ("C3", gen_by([1, 1]))))
    if want("s3.group"):
        emit("s3.group", "S3", [cycles(3, (1, 2, 3)), cycles(3, (1, 2))], named(("C3", gen_by([1]))))
    if want("d8.group"):
        emit("d8.group", "D8", [cycles(4, (1, 2, 3, 4)), cycles(4, (2, 4))],
             named(("Z", lambda G: G.center()), ("C4", gen_by([1])), ("V4", gen_by([1, 1], [2]))))
    F3 = mat_mul(3)
    q8_mats = [(0, 1, 2, 0), (1, 1, 1, 2)]  # in SL(2,3)
    if want("q8.group"):
        emit("q8.group", "Q8", on_vectors(q8_mats, 3, 2),
             named(("Z", lambda G: G.center()), ("C4", gen_by([1]))))
    if want("d12.group"):
        emit("d12.group", "D12", [cycles(6, (1, 2, 3, 4, 5, 6)), cycles(6, (2, 6), (3, 5))],
             named(("Z", lambda G: G.center()), ("C3", gen_by([1, 1])), ("C6", gen_by([1]))))
    if want("a4.group"):
        emit("a4.group", "A4", [cycles(4, (1, 2, 3)), cycles(4, (1, 2), (3, 4))], named(("V4", lambda G: G.derived())))
    sl23 = [(1, 1, 0, 1), (0, 1, 2, 0)]
    if want("sl23.group"):
        emit("sl23.group", "SL(2,3)", on_vectors(sl23, 3, 2),
             named(("Z", lambda G: G.center()), ("Q8", lambda G: G.derived())))
    if want("s4.group"):
        emit("s4.group", "S4", [cycles(4, (1, 2, 3, 4)), cycles(4, (1, 2))],
             named(("A4", lambda G: G.derived()), ("V4", lambda G: G.derived(G.derived()))))
    gl23 = [(1, 1, 0, 1), (0, 1, 2, 0), (2, 0, 0, 1)]
    if want("gl23.group"):
        emit("gl23.group", "GL(2,3)", on_vectors(gl23, 3, 2),
             named(("Z", lambda G: G.center()), ("SL", lambda G: G.derived()),
                   ("Q8", lambda G: G.derived(G.derived()))))
    F17 = mat_mul(17)
    w = 2  # order 8 mod 17
    if want("q16.group"):
        a = (w, 0, 0, pow(w, 7, 17))
        b = (0, 16, 1, 0)
        emit("q16.group", "Q16", regular([a, b], F17, ident_mat(2)),
             named(("Z", lambda G: G.center()), ("C8", gen_by([1])), ("C4", gen_by([1, 1]))))
    if want("sd16.group"):
        a = (w, 0, 0, pow(w, 3, 17))
        b = (0, 1, 1, 0)
        emit("sd16.group", "SD16", regular([a, b], F17, ident_mat(2)),
             named(("Z", lambda G: G.center()), ("C8", gen_by([1])), ("C4", gen_by([1, 1])),
                   ("D8", gen_by([1, 1], [2])), ("Q8", gen_by([1, 1], [2, 1]))))
    if want("d16.group"):
        emit("d16.group", "D16", [cycles(8, (1, 2, 3, 4, 5, 6, 7, 8)), cycles(8, (2, 8), (3, 7), (4, 6))],
             named(("Z", lambda G: G.center()), ("C8", gen_by([1])), ("C4", gen_by([1, 1]))))
    if want("c2xq8.group"):
        q8 = on_vectors(q8_mats, 3, 2)
        emit("c2xq8.group", "C2xQ8", direct_sum(q8, [cycles(2, (1, 2))]),
             named(("Z", lambda G: G.center()), ("Q8", gen_by([1], [2])), ("C2", gen_by([3]))))
    if want("s3xc4.group"):
        emit("s3xc4.group", "S3xC4", direct_sum([cycles(3, (1, 2, 3)), cycles(3, (1, 2))], [cycles(4, (1, 2, 3, 4))]),
             named(("Z", lambda G: G.center()), ("C3", gen_by([1])), ("S3", gen_by([1], [2])), ("C4", gen_by([3]))))
    if want("a5.group"):
        emit("a5.group", "A5", [cycles(5, (1, 2, 3, 4, 5)), cycles(5, (1, 2, 3))], std_normals())
    if want("s5.group"):
        emit("s5.group", "S5", [cycles(5, (1, 2, 3, 4, 5)), cycles(5, (1, 2))], named(("A5", lambda G: G.derived())))
    F5 = mat_mul(5)
    X = (0, 1, 1, 0)
    Zm = (1, 0, 0, 4)
    I = (1, 0, 0, 1)

    def kron(a, b):
        return tuple(a[(i // 2) * 2 + (j // 2)] * b[(i % 2) * 2 + (j % 2)] % 5 for i in range(4) for j in range(4))

    if want("es32p.group"):
        gens = [kron(X, I), kron(Zm, I), kron(I, X), kron(I, Zm)]
        emit("es32p.group", "2^(1+4)+", regular(gens, F5, ident_mat(4)), named(("Z", lambda G: G.center())))
    if want("es32m.group"):
        iX = tuple(2 * x % 5 for x in X)
        iZ = tuple(2 * x % 5 for x in Zm)
        gens = [kron(iX, I), kron(iZ, I), kron(I, X), kron(I, Zm)]
        emit("es32m.group", "2^(1+4)-", regular(gens, F5, ident_mat(4)), named(("Z", lambda G: G.center())))
    if want("2a8.group"):
        gens = two_a8()
        emit("2a8.group", "2.A8", gens, lambda G: [("Z", G.center())], slow=True)


if __name__ == "__main__":
    main()
