"""Branching series of SL_4 irreducibles restricted to a finite subgroup.

The vector of generating functions is assembled class by class,

    P = T . Delta . T^{-1} . J . e_0,

where T is the character table, J the polynomial matrix built from the
tensor matrices, and Delta the diagonal of the reciprocals of three
univariate polynomials per class (in t, u and w).  Every coefficient of the
resulting numerators must come out rational; anything else aborts.
"""
from dataclasses import dataclass, field
from fractions import Fraction

from .chartab import inverse_table
from .exactnum import Cyclotomic
from .matgroup import natural_character
from .polyrat import (MultiPoly, RatFun, FactoredDen, Factor, cancel,
                      merge_conjugates, series_coeffs, simplify_scalar,
                      parse_univariate, split_roots_of_unity)
from .tensorrep import exterior_square_character

PIPELINE_VERSION = "1"

T_, U_, W_ = 0, 1, 2


class BranchingError(ArithmeticError):
    """The pipeline produced something the theory rules out."""


def build_J(M):
    """Polynomial matrix
    (1-u^2)((1+ut^2)(1+uw^2) - tw(1+u^2)) I + twu(1-u^2) A2
      - tu(1+uw^2)(A3 - u A1) - wu(1+ut^2)(A1 - u A3)."""
    t, u, w = MultiPoly.var("t"), MultiPoly.var("u"), MultiPoly.var("w")
    one = MultiPoly.const(1)
    scalar = (one - u * u) * ((one + u * t * t) * (one + u * w * w) - t * w * (one + u * u))
    c2 = t * w * u * (one - u * u)
    c_t = t * u * (one + u * w * w)
    c_w = w * u * (one + u * t * t)
    n = M.size
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            entry = scalar if i == j else MultiPoly()
            a1, a2, a3 = M.A1[i][j], M.A2[i][j], M.A3[i][j]
            if a2:
                entry = entry + c2.scale(a2)
            # A3 - u A1 and A1 - u A3
            if a3 or a1:
                entry = entry - c_t * (MultiPoly.const(a3) - u.scale(a1))
                entry = entry - c_w * (MultiPoly.const(a1) - u.scale(a3))
            row.append(entry)
        out.append(row)
    return out


def quartic_t(d1, d2, d3):
    """Coefficients of 1 - d1 t + d2 t^2 - d3 t^3 + t^4."""
    return [1, -d1, d2, -d3, 1]


def quartic_w(d1, d2, d3):
    return [1, -d3, d2, -d1, 1]


def sextic_u(d1, d2, d3):
    """(1+u^2)(1-u^2)^2 - u(1-u^2)^2 d2 + u^2 (d1 - u d3)(d3 - u d1)."""
    p = d1 * d3
    return [simplify_scalar(c) for c in
            (1, -d2, p - 1, 2 * d2 - d1 * d1 - d3 * d3, p - 1, -d2, 1)]


def f_factor(d1, d2, d3, root_order):
    """1 / (quartic_t * quartic_w * sextic_u) with each polynomial split into
    linear factors over the ``root_order``-th roots of unity."""
    d1, d2, d3 = (simplify_scalar(x) for x in (d1, d2, d3))
    factors = {}
    for var, coeffs in ((T_, quartic_t(d1, d2, d3)), (W_, quartic_w(d1, d2, d3)),
                        (U_, sextic_u(d1, d2, d3))):
        linear, rest = split_roots_of_unity(var, coeffs, root_order)
        if var != U_ and rest is not None:
            raise BranchingError(
                f"characteristic polynomial {coeffs} does not split over the "
                f"{root_order}-th roots of unity")
        for f, m in linear.items():
            factors[f] = factors.get(f, 0) + m
        if rest is not None:
            factors[rest] = factors.get(rest, 0) + 1
    return RatFun(1, FactoredDen(factors))


@dataclass
class BranchingSeries:
    coords: list                       # RatFun per irreducible gamma_i
    irrep_order: list                  # labels chi_0 .. chi_l
    degrees: list
    group: str = "group"
    version: str = PIPELINE_VERSION
    checked_degree: int = -1
    notes: list = field(default_factory=list)

    @property
    def common_denominator(self):
        den = FactoredDen()
        for c in self.coords:
            den = den.lcm(c.den)
        return den

    def specialize(self, assignment):
        return [c.subs(assignment) for c in self.coords]


def _rational_poly(p, where):
    out = {}
    for k, c in p.terms.items():
        c = simplify_scalar(c)
        if isinstance(c, Cyclotomic):
            raise BranchingError(f"{where}: coefficient of {k} is not rational ({c})")
        out[k] = c
    return MultiPoly(out)


def _separable_multiply(p, den):
    """p times the expansion of den, one variable at a time."""
    for var in (T_, U_, W_):
        coeffs = den.univariate_product(var)
        if len(coeffs) > 1:
            p = p * MultiPoly.univariate(var, coeffs)
    return p


def compute_series(T, M, G=None, check_degree=5, name="group"):
    """The branching series of the group with character table ``T`` and
    tensor matrices ``M``."""
    n = T.size
    J = build_J(M)
    y = [J[i][0] for i in range(n)]
    Tinv = inverse_table(T)
    orders = T.class_orders
    contributions = []
    common = FactoredDen()
    for j in range(n):
        z = MultiPoly()
        for k in range(n):
            c = simplify_scalar(Tinv[j][k])
            if c:
                z = z + y[k].scale(c)
        delta = f_factor(M.L1[j], M.L2[j], M.L3[j], orders[j])
        contributions.append((z, delta.den))
        common = common.lcm(delta.den)

    weighted = []
    for z, den in contributions:
        weighted.append(_separable_multiply(z, common.quotient(den)))

    merged = merge_conjugates(common)
    if not merged.is_rational():
        raise BranchingError(f"common denominator is not rational: {merged}")
    coords = []
    for i in range(n):
        num = MultiPoly()
        for j in range(n):
            c = simplify_scalar(T.table[i][j])
            if c:
                num = num + weighted[j].scale(c)
        num = _rational_poly(num, f"coordinate {i}")
        coords.append(cancel(RatFun(num, merged)))

    S = BranchingSeries(coords=coords, irrep_order=[f"chi_{i}" for i in range(n)],
                        degrees=list(T.degrees), group=name)
    if check_degree >= 0:
        extract_multiplicities(S, check_degree)
        S.checked_degree = check_degree
    return S


def extract_multiplicities(S, N):
    """{(p, q, r): [m_0, ..., m_l]} for p + q + r <= N, asserting every entry
    is a nonnegative integer."""
    per_coord = [series_coeffs(c, N) for c in S.coords]
    out = {}
    for key in per_coord[0]:
        vec = []
        for i, coeffs in enumerate(per_coord):
            v = coeffs[key]
            if isinstance(v, Cyclotomic):
                raise BranchingError(f"coefficient {key} of coordinate {i} is not rational: {v}")
            if Fraction(v).denominator != 1 or v < 0:
                raise BranchingError(
                    f"coefficient {key} of coordinate {i} is {v}, not a nonnegative integer")
            vec.append(int(v))
        out[key] = vec
    if out[(0, 0, 0)] != [1] + [0] * (len(S.coords) - 1):
        raise BranchingError("constant terms differ from e_0")
    return out


def molien_series(G, chi=None):
    """(1/|G|) sum_j |C_j| / det(1 - t g_j) computed from traces."""
    chi = chi or natural_character(G)
    wedge = exterior_square_character(G, chi)
    total = RatFun(0)
    for j in range(G.num_classes):
        c = simplify_scalar(chi[j])
        cb = simplify_scalar(chi[j].conjugate())
        w2 = simplify_scalar(wedge[j])
        coeffs = [1, -c, w2, -cb, 1]
        linear, rest = split_roots_of_unity(T_, coeffs, G.class_order(j))
        den = dict(linear)
        if rest is not None:
            den[rest] = den.get(rest, 0) + 1
        total = total + RatFun(Fraction(G.class_sizes[j], G.order), FactoredDen(den))
    den = merge_conjugates(total.den)
    return cancel(RatFun(_rational_poly(total.num, "Molien series"), den))


def typeII_invariant_series():
    """Known Poincare series of the invariant ring of the built-in type II group."""
    num = parse_univariate("t^8-t^6+t^4-t^2+1", T_)
    den = parse_univariate(
        "t^12-2*t^10-t^9+t^8+t^7+t^5+t^4-t^3-2*t^2+1", T_)
    return RatFun(MultiPoly.univariate(T_, num), FactoredDen({Factor.make(T_, den): 1}))
