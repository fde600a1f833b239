"""Independent brute-force evaluators used to freeze expected test values.

Everything here works on plain nested lists of Q scalars with explicit
index loops; none of the engine's composition or elimination machinery is
used, so these can serve as independent cross-checks of derived maps.
"""

from braidcalc.scalars import Q


def mat(rows):
    "Nested lists of Q from ints/strings/Fractions."
    out = []
    for row in rows:
        out.append([x if isinstance(x, Q) else Q.parse(x) if isinstance(x, str) else Q(x) for x in row])
    return out


def mat_vec(rows, vec):
    return [sum((rows[i][j] * vec[j] for j in range(len(vec))), Q(0)) for i in range(len(rows))]


def vec_tensor(x, y):
    return [a * b for a in x for b in y]


def basis(n, i):
    return [Q(1 if t == i else 0) for t in range(n)]


def mat_mul(a, b):
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    return [
        [sum((a[i][k] * b[k][j] for k in range(inner)), Q(0)) for j in range(cols)]
        for i in range(rows)
    ]


def kron(a, b):
    ra, ca = len(a), len(a[0]) if a else 0
    rb, cb = len(b), len(b[0]) if b else 0
    out = [[Q(0)] * (ca * cb) for _ in range(ra * rb)]
    for i in range(ra):
        for j in range(ca):
            for k in range(rb):
                for t in range(cb):
                    out[i * rb + k][j * cb + t] = a[i][j] * b[k][t]
    return out


def group_tables(g):
    "Structure tensors of a group record as plain coefficient tables."
    n = g.dim
    mult = [[[g.mult.entry(k, i * n + j) for k in range(n)] for j in range(n)] for i in range(n)]
    cop = [[[g.coproduct.entry(a * n + b, i) for b in range(n)] for a in range(n)] for i in range(n)]
    eps = [g.counit.entry(0, i) for i in range(n)]
    kap = [[g.antipode.entry(i, j) for i in range(n)] for j in range(n)]  # kap[j] = image of e_j
    sig = [
        [[[g.braiding.entry(a * n + b, i * n + j) for b in range(n)] for a in range(n)] for j in range(n)]
        for i in range(n)
    ]
    unit = [g.unit.entry(i, 0) for i in range(n)]
    return {"n": n, "mult": mult, "cop": cop, "eps": eps, "kap": kap, "sig": sig, "unit": unit}


def oracle_tau_column(g, i, j):
    """tau(e_i (x) e_j) by direct expansion of its first defining expression.

    Loops: apply sigma, then the coproduct on the second leg, then the
    inverse braiding on the first two legs, then the counit on leg one.
    """
    t = group_tables(g)
    n = t["n"]
    sig_inv = _invert_braiding(g)
    out = [Q(0)] * (n * n)
    for a in range(n):
        for b in range(n):
            c1 = t["sig"][i][j][a][b]
            if not c1:
                continue
            for p in range(n):
                for q in range(n):
                    c2 = t["cop"][b][p][q]
                    if not c2:
                        continue
                    for u in range(n):
                        for v in range(n):
                            c3 = sig_inv[a][p][u][v]
                            if not c3:
                                continue
                            out[v * n + q] += c1 * c2 * c3 * t["eps"][u]
    return out


def _invert_braiding(g):
    "Inverse braiding coefficients via the engine's exact inverse (matrix only)."
    n = g.dim
    s_inv = g.braiding.inverse()
    return [
        [[[s_inv.entry(a * n + b, i * n + j) for b in range(n)] for a in range(n)] for j in range(n)]
        for i in range(n)
    ]


def oracle_adjoint_column(g, i):
    "ad(e_i) by direct expansion: double coproduct, tau on legs 1-2, antipode, product."
    t = group_tables(g)
    n = t["n"]
    tau = [
        [[[g.tau.entry(a * n + b, p * n + q) for b in range(n)] for a in range(n)] for q in range(n)]
        for p in range(n)
    ]
    out = [Q(0)] * (n * n)
    for p in range(n):
        for q in range(n):
            c1 = t["cop"][i][p][q]
            if not c1:
                continue
            for r in range(n):
                for s in range(n):
                    c2 = t["cop"][q][r][s]
                    if not c2:
                        continue
                    for a in range(n):
                        for b in range(n):
                            c3 = tau[p][r][a][b]
                            if not c3:
                                continue
                            for kpp in range(n):
                                ck = t["kap"][b][kpp]
                                if not ck:
                                    continue
                                for w in range(n):
                                    cm = t["mult"][kpp][s][w]
                                    if cm:
                                        out[a * n + w] += c1 * c2 * c3 * ck * cm
    return out


def oracle_pointwise_product(fx, fy):
    "Pointwise product of two function-algebra coordinate vectors."
    return [a * b for a, b in zip(fx, fy)]


def residual_of_witness(lhs_rows, rhs_rows, witness_input):
    "Recompute the residual a report witness claims, from raw matrices."
    vec = [Q.parse(x) for x in witness_input]
    lhs = mat_vec(lhs_rows, vec)
    rhs = mat_vec(rhs_rows, vec)
    return [a - b for a, b in zip(lhs, rhs)]
