#!/usr/bin/env python3
"""Dense rank oracle for the invariant complex of a model file.

Written independently of the C++ library: its own exterior algebra, its own
parser for the `d fk = ...` lines, and exact ranks over Q(i) by realification
(rank_C(A) = rank_Q([[Re A, -Im A], [Im A, Re A]]) / 2).

Usage: dense_rank_oracle.py OUT_DIR MODEL...
       dense_rank_oracle.py --check GOLDEN_DIR MODEL...
Writes OUT_DIR/<model name>.json with Betti, Dolbeault, Bott-Chern, Aeppli
and E_2 numbers, or compares against existing files and exits 1 on mismatch.
"""

import itertools
import json
import re
import sys
from fractions import Fraction


class C:
    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    def __add__(self, o):
        return C(self.re + o.re, self.im + o.im)

    def __mul__(self, o):
        return C(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    def conj(self):
        return C(self.re, -self.im)

    def zero(self):
        return self.re == 0 and self.im == 0


def parse_coeff(text):
    text = text.strip().replace(" ", "")
    if text in ("", "+"):
        return C(1)
    if text == "-":
        return C(-1)
    if text.endswith("i"):
        body = text[:-1].rstrip("*")
        if body in ("", "+"):
            return C(0, 1)
        if body == "-":
            return C(0, -1)
        return C(0, Fraction(body))
    return C(Fraction(text))


def parse_model(path):
    name, n, d = None, None, {}
    for raw in open(path):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("model"):
            name = line.split()[1]
        elif re.match(r"n\s", line):
            n = int(line.split()[1])
        elif line.startswith("d "):
            lhs, rhs = line[2:].split("=", 1)
            k = int(lhs.strip()[1:]) - 1
            terms = []
            rhs = rhs.strip()
            if rhs != "0":
                for sign, body in re.findall(r"([+-]?)\s*([^+-]+)", rhs):
                    body = body.strip()
                    if "*" in body and re.search(r"[fg]\d", body.split("*")[-1]):
                        coeff_text, mono = body.rsplit("*", 1)
                    else:
                        coeff_text, mono = "", body
                    coeff = parse_coeff(coeff_text) * (C(-1) if sign == "-" else C(1))
                    gens = [(0 if g[0] == "f" else 1, int(g[1:]) - 1) for g in mono.split("^")]
                    terms.append((coeff, gens))
            d[k] = terms
    return name, n, d


def gen_index(n, kind, k):
    return k if kind == 0 else n + k


def sort_sign(idx):
    idx = list(idx)
    sign = 1
    for i in range(len(idx)):
        for j in range(len(idx) - 1 - i):
            if idx[j] > idx[j + 1]:
                idx[j], idx[j + 1] = idx[j + 1], idx[j]
                sign = -sign
    if len(set(idx)) != len(idx):
        return 0, None
    return sign, tuple(idx)


def build_d(n, d):
    """d on generators as dict monomial -> C, generators 0..2n-1 (f then g)."""
    dg = {}
    for k in range(n):
        fwd, bwd = {}, {}
        for coeff, gens in d.get(k, []):
            idx = [gen_index(n, kind, j) for kind, j in gens]
            s, mono = sort_sign(idx)
            if s:
                fwd[mono] = fwd.get(mono, C()) + coeff * C(s)
            cidx = [gen_index(n, 1 - kind, j) for kind, j in gens]
            s, mono = sort_sign(cidx)
            if s:
                bwd[mono] = bwd.get(mono, C()) + coeff.conj() * C(s)
        dg[k] = fwd
        dg[n + k] = bwd
    return dg


def d_monomial(mono, dg):
    out = {}
    for pos, g in enumerate(mono):
        sign = -1 if pos % 2 else 1
        for img, c in dg[g].items():
            s, m = sort_sign(mono[:pos] + img + mono[pos + 1:])
            if s:
                out[m] = out.get(m, C()) + c * C(sign * s)
    return {m: c for m, c in out.items() if not c.zero()}


def bideg(n, mono):
    p = sum(1 for g in mono if g < n)
    return p, len(mono) - p


def basis(n, p, q):
    if p < 0 or q < 0 or p > n or q > n:
        return []
    return [tuple(a) + tuple(n + b for b in bb)
            for a in itertools.combinations(range(n), p)
            for bb in itertools.combinations(range(n), q)]


def total_basis(n, k):
    return [m for m in itertools.combinations(range(2 * n), k)]


def matrix(src, tgt, image):
    """Columns: images of src monomials restricted to tgt."""
    index = {m: i for i, m in enumerate(tgt)}
    cols = []
    for m in src:
        col = [C() for _ in tgt]
        for t, c in image(m).items():
            if t in index:
                col[index[t]] = col[index[t]] + c
        cols.append(col)
    return cols  # list of columns


def rank(cols):
    if not cols or not cols[0]:
        return 0
    rows = len(cols[0])
    real = []
    for col in cols:
        real.append([c.re for c in col] + [c.im for c in col])
        real.append([-c.im for c in col] + [c.re for c in col])
    m = [list(r) for r in real]  # rows of the transpose; rank is the same
    r = 0
    width = 2 * rows
    for c in range(width):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c] / m[r][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
    assert r % 2 == 0
    return r // 2


def part(image, n, p, q):
    return {m: c for m, c in image.items() if bideg(n, m) == (p, q)}


def analyze(path):
    name, n, d = parse_model(path)
    dg = build_d(n, d)
    dm = {}

    def D(m):
        if m not in dm:
            dm[m] = d_monomial(m, dg)
        return dm[m]

    def dl(m):
        p, q = bideg(n, m)
        return part(D(m), n, p + 1, q)

    def dbar(m):
        p, q = bideg(n, m)
        return part(D(m), n, p, q + 1)

    def ddbar(m):
        out = {}
        for t, c in dbar(m).items():
            for u, e in dl(t).items():
                out[u] = out.get(u, C()) + c * e
        return out

    for k in range(2 * n + 1):
        for m in total_basis(n, k):
            img = D(m)
            for t, c in img.items():
                p, q = bideg(n, m)
                if bideg(n, t) not in ((p + 1, q), (p, q + 1)):
                    raise SystemExit(f"{name}: structure is not integrable")
            dd = {}
            for t, c in img.items():
                for u, e in D(t).items():
                    dd[u] = dd.get(u, C()) + c * e
            if any(not c.zero() for c in dd.values()):
                raise SystemExit(f"{name}: d^2 != 0")

    betti = []
    for k in range(2 * n + 1):
        src = total_basis(n, k)
        ker = len(src) - rank(matrix(src, total_basis(n, k + 1), D))
        im = rank(matrix(total_basis(n, k - 1), src, D)) if k > 0 else 0
        betti.append(ker - im)

    hodge, bc, aeppli, e2 = {}, {}, {}, {}
    for p in range(n + 1):
        for q in range(n + 1):
            key = f"{p},{q}"
            src = basis(n, p, q)
            kdbar = len(src) - rank(matrix(src, basis(n, p, q + 1), dbar))
            idbar = rank(matrix(basis(n, p, q - 1), src, dbar))
            hodge[key] = kdbar - idbar

            both = basis(n, p + 1, q) + basis(n, p, q + 1)
            kboth = len(src) - rank(matrix(src, both, lambda m: {**dl(m), **dbar(m)}))
            iddbar = rank(matrix(basis(n, p - 1, q - 1), src, ddbar))
            bc[key] = kboth - iddbar

            kdd = len(src) - rank(matrix(src, basis(n, p + 1, q + 1), ddbar))
            sum_cols = matrix(basis(n, p - 1, q), src, dl) + matrix(basis(n, p, q - 1), src, dbar)
            aeppli[key] = kdd - rank(sum_cols)

            # E_2: x with dbar x = 0 and del x in Im dbar, modulo Im dbar + del(ker dbar).
            y_src = basis(n, p + 1, q - 1)
            tgt1, tgt2 = basis(n, p, q + 1), basis(n, p + 1, q)
            big = []
            for col in matrix(src, tgt1, dbar):
                big.append(col)
            dcols = matrix(src, tgt2, dl)
            big = [a + b for a, b in zip(big, dcols)]
            for col in matrix(y_src, tgt2, dbar):
                big.append([C() for _ in tgt1] + col)
            kbig = len(src) + len(y_src) - rank(big)
            ky = len(y_src) - rank(matrix(y_src, basis(n, p + 1, q), dbar))
            numerator = kbig - ky
            # del(ker dbar on (p-1,q)): kernel basis by brute elimination on columns.
            prev = basis(n, p - 1, q)
            kernel = kernel_basis(matrix(prev, basis(n, p - 1, q + 1), dbar))
            del_cols = matrix(prev, src, dl)
            imgs = []
            for vec in kernel:
                col = [C() for _ in src]
                for j, c in enumerate(vec):
                    if not c.zero():
                        col = [a + b * c for a, b in zip(col, del_cols[j])]
                imgs.append(col)
            denominator = rank(matrix(basis(n, p, q - 1), src, dbar) + imgs)
            e2[key] = numerator - denominator
    return name, {"model": name, "n": n, "betti": betti, "hodge": hodge, "bott_chern": bc,
                  "aeppli": aeppli, "e2": e2}


def kernel_basis(cols):
    """Kernel of the matrix with the given columns, over Q(i)."""
    if not cols:
        return []
    rows = len(cols[0])
    ncols = len(cols)
    m = [[cols[j][i] for j in range(ncols)] for i in range(rows)]

    def div(a, b):
        den = b.re * b.re + b.im * b.im
        return a * C(b.re / den, -b.im / den)

    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, rows) if not m[i][c].zero()), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = div(C(1), m[r][c])
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and not m[i][c].zero():
                f = m[i][c]
                m[i] = [a + C(-1) * f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for fcol in free:
        vec = [C() for _ in range(ncols)]
        vec[fcol] = C(1)
        for row, pc in enumerate(pivots):
            vec[pc] = C(-1) * m[row][fcol]
        out.append(vec)
    return out


def main():
    if len(sys.argv) < 3:
        raise SystemExit(__doc__)
    if sys.argv[1] == "--check":
        golden_dir, failures = sys.argv[2], 0
        for path in sys.argv[3:]:
            name, data = analyze(path)
            with open(f"{golden_dir}/{name}.json") as fh:
                ok = json.load(fh) == data
            print(name, "matches" if ok else "DIFFERS")
            failures += not ok
        sys.exit(1 if failures else 0)
    out_dir = sys.argv[1]
    for path in sys.argv[2:]:
        name, data = analyze(path)
        with open(f"{out_dir}/{name}.json", "w") as fh:
            json.dump(data, fh, indent=2, sort_keys=True)
            fh.write("\n")
        print(name, data["betti"])


if __name__ == "__main__":
    main()
