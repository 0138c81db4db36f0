"""Sparse polynomials in t, u, w and rational functions whose denominators
are products of univariate factors.

Coefficients are exact scalars: ``int``, ``Fraction`` or
:class:`~sl4branch.exactnum.Cyclotomic`.  A denominator factor always has
constant term 1, so every rational function here is a formal power series.
"""
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .exactnum import Cyclotomic, cyclotomic_poly, format_scalar, parse_scalar

VARS = ("t", "u", "w")


def simplify_scalar(c):
    """Collapse a rational Cyclotomic to int/Fraction."""
    if isinstance(c, Cyclotomic):
        r = c.as_rational()
        if r is None:
            return c
        c = r
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _nonzero(c):
    return bool(c)


class MultiPoly:
    """Polynomial in (t, u, w) as ``{(e_t, e_u, e_w): coeff}`` without zeros."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {k: v for k, v in (terms or {}).items() if _nonzero(v)}

    @classmethod
    def const(cls, c):
        return cls({(0, 0, 0): c})

    @classmethod
    def var(cls, name, power=1):
        e = [0, 0, 0]
        e[VARS.index(name)] = power
        return cls({tuple(e): 1})

    @classmethod
    def univariate(cls, var, coeffs):
        """``sum coeffs[k] * var^k`` with ``var`` an index 0..2."""
        terms = {}
        for k, c in enumerate(coeffs):
            e = [0, 0, 0]
            e[var] = k
            terms[tuple(e)] = c
        return cls(terms)

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.const(other)
        if self.terms.keys() != other.terms.keys():
            return False
        return all(self.terms[k] == other.terms[k] for k in self.terms)

    __hash__ = None

    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.const(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            prev = out.get(k)
            out[k] = v if prev is None else prev + v
        return MultiPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return MultiPoly.const(other) - self

    def scale(self, c):
        if not c:
            return MultiPoly()
        return MultiPoly({k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        out = {}
        small, big = (self, other) if len(self.terms) <= len(other.terms) else (other, self)
        for (a, b, c), x in small.terms.items():
            for (d, e, f), y in big.terms.items():
                key = (a + d, b + e, c + f)
                prev = out.get(key)
                out[key] = x * y if prev is None else prev + x * y
        return MultiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        result = MultiPoly.const(1)
        for _ in range(k):
            result = result * self
        return result

    def map_coeffs(self, fn):
        return MultiPoly({k: fn(v) for k, v in self.terms.items()})

    def degree(self, var=None):
        if not self.terms:
            return -1
        if var is None:
            return max(sum(k) for k in self.terms)
        return max(k[var] for k in self.terms)

    def coeff(self, key):
        return self.terms.get(tuple(key), 0)

    def constant_term(self):
        return self.terms.get((0, 0, 0), 0)

    def subs(self, assignment):
        """Substitute exact scalar values, e.g. ``{1: 0, 2: 0}`` for u=w=0."""
        out = {}
        for key, v in self.terms.items():
            e = list(key)
            for var, val in assignment.items():
                if e[var]:
                    v = v * (val ** e[var])
                    e[var] = 0
            if not v:
                continue
            k = tuple(e)
            prev = out.get(k)
            out[k] = v if prev is None else prev + v
        return MultiPoly(out)

    def rename(self, mapping):
        """Permute variables: ``mapping[old] = new`` (indices 0..2)."""
        out = {}
        for key, v in self.terms.items():
            e = [0, 0, 0]
            for var, x in enumerate(key):
                e[mapping.get(var, var)] += x
            k = tuple(e)
            out[k] = out[k] + v if k in out else v
        return MultiPoly(out)

    def sorted_terms(self):
        # graded lexicographic, t > u > w, highest first
        return sorted(self.terms.items(), key=lambda kv: (-sum(kv[0]), [-x for x in kv[0]]))

    def __repr__(self):
        return f"MultiPoly({self})"

    def __str__(self):
        return format_poly(self)


def _monomial(key):
    parts = []
    for name, e in zip(VARS, key):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_poly(p):
    if p.is_zero():
        return "0"
    out = ""
    for key, c in p.sorted_terms():
        mono = _monomial(key)
        c = simplify_scalar(c)
        if isinstance(c, Cyclotomic):
            body = f"({format_scalar(c)})"
            sign = "+"
        else:
            sign = "-" if c < 0 else "+"
            body = str(abs(c))
        if mono:
            body = mono if body == "1" else f"{body}*{mono}"
        if not out:
            out = body if sign == "+" else "-" + body
        else:
            out += f" {sign} {body}"
    return out


# -- univariate helpers -----------------------------------------------------

def upoly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] = out[i + j] + x * y
    return out


def upoly_divmod(a, b):
    """Long division of coefficient lists (lowest degree first)."""
    a = list(a)
    while len(b) > 1 and not b[-1]:
        b = b[:-1]
    db = len(b) - 1
    lead = b[-1]
    if len(a) - 1 < db:
        return [0], a
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        if not c:
            continue
        f = c / lead if isinstance(lead, Cyclotomic) or isinstance(c, Cyclotomic) else Fraction(c) / lead
        f = simplify_scalar(f)
        q[k - db] = f
        for i, bi in enumerate(b):
            if bi:
                a[k - db + i] = a[k - db + i] - f * bi
    return q, a[:db]


def upoly_series_inverse(coeffs, n):
    """First n+1 coefficients of 1 / poly, poly having constant term 1."""
    s = [1] + [0] * n
    for k in range(1, n + 1):
        acc = 0
        for i in range(1, min(k, len(coeffs) - 1) + 1):
            ci = coeffs[i]
            if ci and s[k - i]:
                acc = acc + ci * s[k - i]
        s[k] = simplify_scalar(-acc) if acc else 0
    return s


# -- factored denominators --------------------------------------------------

def _canon_scalar(c):
    c = simplify_scalar(c)
    if isinstance(c, Cyclotomic):
        c = c.normalize()
        return ("cyc", c.order, c.num, c.den)
    return ("q", Fraction(c))


def _root_of_unity(x):
    """``(d, a)`` with x = zeta_d^a, or None."""
    if not isinstance(x, Cyclotomic):
        return {1: (1, 0), -1: (2, 1)}.get(x)
    x = x.normalize()
    m = x.order
    for a in range(m):
        if Cyclotomic.zeta(m, a) == x:
            return (m, a)
    if m % 2:
        for a in range(2 * m):
            if Cyclotomic.zeta(2 * m, a) == x:
                return (2 * m, a)
    return None


@dataclass(frozen=True)
class Factor:
    """Univariate polynomial with constant term 1 in variable ``var``.

    ``root`` is ``(d, a)`` for the linear factor ``1 - zeta_d^a * var`` and
    ``None`` otherwise."""
    var: int
    coeffs: tuple
    root: tuple = None

    @classmethod
    def make(cls, var, coeffs):
        coeffs = [simplify_scalar(c) for c in coeffs]
        while len(coeffs) > 1 and not coeffs[-1]:
            coeffs.pop()
        if coeffs[0] != 1:
            raise ValueError("denominator factors need constant term 1")
        if len(coeffs) == 2:
            root = _root_of_unity(-coeffs[1])
            if root is not None:
                return cls.linear(var, *root)
        return cls(var, tuple(coeffs))

    @classmethod
    def linear(cls, var, d, a):
        a %= d
        g = gcd(a, d)
        d, a = d // g, a // g
        if d == 1:
            x = 1
        elif d == 2:
            x = -1
        else:
            x = Cyclotomic.zeta(d, a)
        return cls(var, (1, simplify_scalar(-x)), (d, a))

    @property
    def key(self):
        return (self.var,) + tuple(_canon_scalar(c) for c in self.coeffs)

    def __eq__(self, other):
        return isinstance(other, Factor) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_rational(self):
        return all(not isinstance(simplify_scalar(c), Cyclotomic) for c in self.coeffs)

    def poly(self):
        return MultiPoly.univariate(self.var, self.coeffs)

    def __str__(self):
        # ascending powers, so linear factors read as (1 - t)
        name = VARS[self.var]
        out = "1"
        for k, c in enumerate(self.coeffs[1:], 1):
            c = simplify_scalar(c)
            if not c:
                continue
            mono = name if k == 1 else f"{name}^{k}"
            if isinstance(c, Cyclotomic):
                out += f" + ({format_scalar(c)})*{mono}"
            else:
                body = mono if abs(c) == 1 else f"{abs(c)}*{mono}"
                out += f" {'-' if c < 0 else '+'} {body}"
        return out


class FactoredDen:
    """Multiset of :class:`Factor` as an insertion-ordered ``{factor: mult}``."""

    __slots__ = ("factors",)

    def __init__(self, factors=None):
        merged = {}
        for f, m in (factors.items() if isinstance(factors, dict) else (factors or ())):
            if m:
                merged[f] = merged.get(f, 0) + m
        self.factors = merged

    def items(self):
        return self.factors.items()

    def __mul__(self, other):
        out = dict(self.factors)
        for f, m in other.factors.items():
            out[f] = out.get(f, 0) + m
        return FactoredDen(out)

    def lcm(self, other):
        out = dict(self.factors)
        for f, m in other.factors.items():
            out[f] = max(out.get(f, 0), m)
        return FactoredDen(out)

    def quotient(self, other):
        """self / other for a sub-multiset ``other``."""
        out = dict(self.factors)
        for f, m in other.factors.items():
            have = out.get(f, 0)
            if have < m:
                raise ValueError("denominator is not a sub-multiset")
            out[f] = have - m
        return FactoredDen(out)

    def expand(self):
        result = MultiPoly.const(1)
        for f, m in self.sorted_items():
            for _ in range(m):
                result = result * f.poly()
        return result

    def univariate_product(self, var):
        """Coefficients of the product of all factors in ``var``."""
        out = [1]
        for f, m in self.sorted_items():
            if f.var == var:
                for _ in range(m):
                    out = upoly_mul(out, list(f.coeffs))
        return out

    def degree(self, var):
        return sum(f.degree * m for f, m in self.factors.items() if f.var == var)

    def sorted_items(self):
        return sorted(self.factors.items(),
                      key=lambda fm: (fm[0].var, fm[0].degree, str(fm[0].key)))

    def is_rational(self):
        return all(f.is_rational() for f in self.factors)

    def __eq__(self, other):
        return isinstance(other, FactoredDen) and self.factors == other.factors

    def __str__(self):
        if not self.factors:
            return "1"
        parts = []
        for f, m in self.sorted_items():
            s = f"({f})"
            parts.append(s if m == 1 else f"{s}^{m}")
        return "*".join(parts)


# -- rational functions -------------------------------------------------------

class RatFun:
    """``num / den`` with ``den`` a :class:`FactoredDen`."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        self.num = num if isinstance(num, MultiPoly) else MultiPoly.const(num)
        self.den = den if den is not None else FactoredDen()

    def __add__(self, other):
        if not isinstance(other, RatFun):
            other = RatFun(other)
        common = self.den.lcm(other.den)
        a = multiply_by_factors(self.num, common.quotient(self.den))
        b = multiply_by_factors(other.num, common.quotient(other.den))
        return RatFun(a + b, common)

    __radd__ = __add__

    def __neg__(self):
        return RatFun(-self.num, self.den)

    def __sub__(self, other):
        if not isinstance(other, RatFun):
            other = RatFun(other)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, RatFun):
            if isinstance(other, MultiPoly):
                return RatFun(self.num * other, self.den)
            return RatFun(self.num.scale(other), self.den)
        return RatFun(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __eq__(self, other):
        return equal(self, other)

    __hash__ = None

    def subs(self, assignment):
        """Specialize variables to exact values; factors that become
        constants are folded into the numerator."""
        num = self.num.subs(assignment)
        keep = {}
        scale = 1
        for f, m in self.den.items():
            if f.var in assignment:
                val = assignment[f.var]
                fv = 0
                for k, c in enumerate(f.coeffs):
                    fv = fv + c * (val ** k) if k else c
                if not fv:
                    raise ZeroDivisionError(f"specialization hits a pole of {f}")
                scale = scale * fv ** m
            else:
                keep[f] = m
        if scale != 1:
            num = num.scale(_inv(scale))
        return RatFun(num, FactoredDen(keep))

    def rename(self, mapping):
        """Rename variables in numerator and denominator alike."""
        den = FactoredDen({Factor(mapping.get(f.var, f.var), f.coeffs, f.root): m
                           for f, m in self.den.items()})
        return RatFun(self.num.rename(mapping), den)

    def __str__(self):
        if not self.den.factors:
            return format_poly(self.num)
        return f"({format_poly(self.num)}) / ({self.den})"

    def __repr__(self):
        return f"RatFun({self})"


def _inv(x):
    if isinstance(x, Cyclotomic):
        return simplify_scalar(x.inverse())
    return simplify_scalar(Fraction(1) / x)


def multiply_by_factors(p, den):
    for f, m in den.sorted_items():
        fp = f.poly()
        for _ in range(m):
            p = p * fp
    return p


def ratfun_arith(a, b, op):
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def divide_by_univariate(p, var, coeffs):
    """Exact quotient of MultiPoly ``p`` by a polynomial in one variable,
    or ``None`` when the division leaves a remainder."""
    groups = {}
    for key, c in p.terms.items():
        rest = key[:var] + key[var + 1:]
        groups.setdefault(rest, {})[key[var]] = c
    out = {}
    for rest, col in groups.items():
        dense = [0] * (max(col) + 1)
        for e, c in col.items():
            dense[e] = c
        q, r = upoly_divmod(dense, list(coeffs))
        if any(r):
            return None
        for e, c in enumerate(q):
            if c:
                key = list(rest)
                key.insert(var, e)
                out[tuple(key)] = c
    return MultiPoly(out)


def cancel(a):
    """Divide out denominator factors that divide the numerator exactly."""
    num = a.num
    den = dict(a.den.factors)
    for f in sorted(den, key=lambda f: (f.var, f.degree, str(f.key))):
        while den[f]:
            q = divide_by_univariate(num, f.var, f.coeffs)
            if q is None:
                break
            num = q
            den[f] -= 1
    return RatFun(num, FactoredDen(den))


def equal(a, b):
    """Decide a == b by cross-multiplication."""
    if not isinstance(a, RatFun):
        a = RatFun(a)
    if not isinstance(b, RatFun):
        b = RatFun(b)
    common = a.den.lcm(b.den)
    lhs = multiply_by_factors(a.num, common.quotient(a.den))
    rhs = multiply_by_factors(b.num, common.quotient(b.den))
    return (lhs - rhs).is_zero()


def series_coeffs(a, N):
    """Taylor coefficients of ``a`` at all (p, q, r) with p + q + r <= N."""
    inv = []
    for var in range(3):
        prod = a.den.univariate_product(var)
        inv.append(upoly_series_inverse(prod, N))
    out = {}
    for (p0, q0, r0), c in a.num.terms.items():
        d0 = p0 + q0 + r0
        if d0 > N:
            continue
        for i in range(N - d0 + 1):
            si = inv[0][i]
            if not si:
                continue
            ci = c * si
            for j in range(N - d0 - i + 1):
                sj = inv[1][j]
                if not sj:
                    continue
                cj = ci * sj
                for k in range(N - d0 - i - j + 1):
                    sk = inv[2][k]
                    if not sk:
                        continue
                    key = (p0 + i, q0 + j, r0 + k)
                    prev = out.get(key)
                    val = cj * sk
                    out[key] = val if prev is None else prev + val
    full = {}
    for p in range(N + 1):
        for q in range(N + 1 - p):
            for r in range(N + 1 - p - q):
                full[(p, q, r)] = simplify_scalar(out.get((p, q, r), 0))
    return full


# -- splitting over roots of unity -----------------------------------------

def split_roots_of_unity(var, coeffs, order):
    """Factor a univariate polynomial with constant term 1 into linear
    factors ``1 - x var`` with x an ``order``-th root of unity, by trial and
    deflation.  Returns ``(linear, rest)`` where ``linear`` maps
    :class:`Factor` to multiplicity and ``rest`` is the unsplit cofactor."""
    coeffs = [simplify_scalar(c) for c in coeffs]
    linear = {}
    for a in range(order):
        x = Cyclotomic.zeta(order, a)
        while len(coeffs) > 1:
            # 1 - x var divides P iff P(1/x) = 0; deflate Q_k = c_k + x Q_{k-1}
            q = [coeffs[0]]
            for c in coeffs[1:-1]:
                q.append(simplify_scalar(c + x * q[-1]))
            rem = simplify_scalar(coeffs[-1] + x * q[-1])
            if rem:
                break
            f = Factor.linear(var, order, a)
            linear[f] = linear.get(f, 0) + 1
            coeffs = q
    rest = Factor.make(var, coeffs) if len(coeffs) > 1 else None
    return linear, rest


def merge_conjugates(den):
    """Combine linear factors over full Galois orbits of primitive d-th roots
    into the rational factor prod (1 - zeta var) = Phi_d(var) (d > 1)."""
    lin = {}
    out = {}
    for f, m in den.items():
        if f.root is None:
            out[f] = out.get(f, 0) + m
        else:
            lin[f] = m
    groups = {}
    for f, m in lin.items():
        d, a = f.root
        groups.setdefault((f.var, d), {})[a] = (f, m)
    for (var, d), members in groups.items():
        orbit = [a for a in range(d) if gcd(a, d) == 1] if d > 1 else [0]
        common = min(members[a][1] if a in members else 0 for a in orbit)
        if common:
            if d == 1:
                fac = Factor.linear(var, 1, 0)
            else:
                phi = list(cyclotomic_poly(d))
                fac = Factor.make(var, phi)
            out[fac] = out.get(fac, 0) + common
        for a, (f, m) in members.items():
            if m - common > 0:
                out[f] = out.get(f, 0) + m - common
    return FactoredDen(out)


def parse_univariate(text, var):
    """Parse a polynomial in one variable like ``t^8 - t^6 + 1``."""
    name = VARS[var]
    body = text.replace(" ", "").replace("-", "+-")
    coeffs = {}
    for term in body.split("+"):
        if not term:
            continue
        sign = -1 if term.startswith("-") else 1
        term = term.lstrip("-")
        if name in term:
            head, _, tail = term.partition(name)
            e = int(tail[1:]) if tail.startswith("^") else 1
            head = head.rstrip("*")
            c = parse_scalar(head) if head else 1
        else:
            e, c = 0, parse_scalar(term)
        coeffs[e] = coeffs.get(e, 0) + sign * simplify_scalar(c)
    top = max(coeffs)
    return [simplify_scalar(coeffs.get(k, 0)) for k in range(top + 1)]
