"""Independent oracles for frozen expected values in the C++ unit tests.

Uses sympy Groebner-basis normal forms and brute-force enumeration; nothing
here shares code with the C++ implementation.  Run: python3 derive_expected.py
"""
import itertools
from sympy import symbols, Poly, expand, GF, groebner, reduced, Matrix

u, v, x0, x1, x2, x3 = symbols("u v x0 x1 x2 x3")


def F(p, r, a, b):
    out = 1
    for i in range(r + 1):
        out *= a ** (p ** i) - b ** (p ** (r - i))
    return expand(out)


def sigma(n):
    return sum(d for d in range(1, n + 1) if n % d == 0)


print("F_{2^1}(u,v) mod 2:", Poly(F(2, 1, u, v), u, v, modulus=2).as_expr())
print("F_{2^2}(u,v) mod 2 terms:", sorted(Poly(F(2, 2, u, v), u, v, modulus=2).terms()))


def normal_form(expr, p, rs):
    xs = [x0, x1, x2, x3][: len(rs) + 1]
    rels = [F(p, r, xs[i], xs[i + 1]) for i, r in enumerate(rs)]
    # lex with highest-index variable largest: leading terms are pure powers.
    gens = list(reversed(xs))
    G = groebner(rels, *gens, order="lex", modulus=p)
    _, rem = reduced(expr, G.exprs, *gens, order="lex", modulus=p)
    return Poly(rem, *gens, modulus=p)


print("x1^3 in A_1 (p=2):", normal_form(x1 ** 3, 2, [1]).as_expr())
print("x2^3 in A_{1,1} (p=2):", sorted(normal_form(x2 ** 3, 2, [1, 1]).terms()))
print("x2^4 in A_{1,1} (p=3):", sorted(normal_form(x2 ** 4, 3, [1, 1]).terms()))


def rank_mod(rows, p):
    M = [list(r) for r in rows]
    rank, col = 0, 0
    ncols = len(M[0]) if M else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(M)) if M[i][col] % p), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = pow(M[rank][col], p - 2, p)
        M[rank] = [(e * inv) % p for e in M[rank]]
        for i in range(len(M)):
            if i != rank and M[i][col] % p:
                f = M[i][col]
                M[i] = [(a - f * b) % p for a, b in zip(M[i], M[rank])]
        rank += 1
    return rank


def socle_rank(p, r):
    # u_1 : A_{r+1} (x) k -> A_{1,r} (x) k with x0 = 0, x1 -> x2
    s_big, s1, sr = sigma(p ** (r + 1)), p + 1, sigma(p ** r)
    rows = []
    for j in range(s_big):
        nf = normal_form(x2 ** j, p, [1, r])
        vec = [0] * (s1 * sr)
        for (e2, e1, e0), c in nf.terms():
            if e0 == 0:
                vec[e1 * sr + e2] = int(c) % p
        rows.append(vec)
    return rank_mod(rows, p), s_big, s1 * sr


print("socle p=2 r=1:", socle_rank(2, 1))
print("socle p=2 r=2:", socle_rank(2, 2))
print("socle p=3 r=1:", socle_rank(3, 1))

# Fano configuration: subgroups of (Z/2)^3 by brute-force closure of subsets.
elems = list(itertools.product(range(2), repeat=3))
subs = set()
for mask in range(1 << 8):
    S = frozenset(e for i, e in enumerate(elems) if mask >> i & 1)
    if (0, 0, 0) not in S:
        continue
    if all(tuple((a + b) % 2 for a, b in zip(s, t)) in S for s in S for t in S):
        subs.add(S)
proper = [S for S in subs if 1 < len(S) < 8]
edges = sum(1 for A in proper for B in proper if A < B)
print("P_(Z/2)^3 vertices/edges:", len(proper), edges)

# Subgroups of (Z/4)^2 of order 4, brute-force.
elems = list(itertools.product(range(4), repeat=2))
def closure(gens):
    S = {(0, 0)}
    frontier = list(S)
    changed = True
    while changed:
        changed = False
        for s in list(S):
            for g in gens:
                t = ((s[0] + g[0]) % 4, (s[1] + g[1]) % 4)
                if t not in S:
                    S.add(t); changed = True
    return frozenset(S)
subs4 = {closure([a, b]) for a in elems for b in elems}
order4 = [S for S in subs4 if len(S) == 4]
elem4 = [S for S in order4 if all(((2 * a) % 4, (2 * b) % 4) == (0, 0) for a, b in S)]
print("(Z/4)^2 order-4 subgroups:", len(order4), "elementary:", len(elem4))

# Category D(Z/4): F_2(2,2), F_4(2,2) mod 4.
def Fm(m, a, b, n):
    out = 1
    for d in range(1, m + 1):
        if m % d == 0:
            out *= a ** d - b ** (m // d)
    return out % n
print("Z/4: F_2(2,2) =", Fm(2, 2, 2, 4), " F_4(2,2) =", Fm(4, 2, 2, 4))

# (f(T)-1)^q coefficients, p=3: T^3, q=2.
from sympy import series, Symbol
T = Symbol("T")
f = sum(sigma(3 ** k) * T ** k for k in range(0, 8))
print("p=3 coeff T^3 of (f-1)^2:", Poly(expand((f - 1) ** 2), T).coeff_monomial(T ** 3))

# Smith normal form of the full-triangle boundary (edges -> vertices, augmented).
from sympy.matrices.normalforms import smith_normal_form
from sympy import ZZ
d1 = Matrix([[-1, -1, 0], [1, 0, -1], [0, 1, 1]])
print("SNF triangle d1:", smith_normal_form(d1, domain=ZZ))

# F_4(x, y) = (x - y^4)(x^2 - y^2)(x^4 - y)
_x, _y = symbols("x y")
print("F_4 terms:", Poly(expand((_x - _y**4) * (_x**2 - _y**2) * (_x**4 - _y)), _x, _y).terms())
