"""Exact arithmetic in cyclotomic fields Q(zeta_m).

An element of order ``m`` is stored in the power basis
``zeta_m^0 .. zeta_m^(phi(m)-1)`` as a tuple of integer numerators over one
positive common denominator, reduced modulo the m-th cyclotomic polynomial.
Mixed-order operands are lifted to the lcm of their orders; nothing is ever
descended automatically (see :meth:`Cyclotomic.normalize`).
"""
import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd
import re


__all__ = [
    "Cyclotomic", "E", "sqrt_integer", "as_rational", "conjugate",
    "cyc_arith", "parse_scalar", "cyclotomic_poly", "euler_phi",
    "ScalarParseError",
]


def _lcm(a, b):
    return a // gcd(a, b) * b


# -- coefficient-vector kernels ---------------------------------------------

def _mulmod(a, b, n, phi_nz):
    """Product of two coefficient vectors of length ``n`` reduced modulo a
    monic polynomial of degree ``n`` whose lower nonzero terms are
    ``phi_nz = ((i, c_i), ...)``."""
    c = [0] * (2 * n - 1)
    for i in range(n):
        ai = a[i]
        if ai:
            for j in range(n):
                bj = b[j]
                if bj:
                    c[i + j] += ai * bj
    for k in range(2 * n - 2, n - 1, -1):
        q = c[k]
        if q:
            base = k - n
            for i, p in phi_nz:
                c[base + i] -= q * p
    return c[:n]


def _reduce_poly(c, n, phi_nz):
    """Reduce an arbitrary-length coefficient list modulo the same kind of
    monic polynomial. Returns a list of length ``n``."""
    c = list(c)
    if len(c) < n:
        return c + [0] * (n - len(c))
    for k in range(len(c) - 1, n - 1, -1):
        q = c[k]
        if q:
            base = k - n
            for i, p in phi_nz:
                c[base + i] -= q * p
    return c[:n]


def _scale_add(acc, a, s):
    """In place ``acc[i] += s * a[i]``."""
    for i in range(len(a)):
        ai = a[i]
        if ai:
            acc[i] += s * ai
    return acc


def factorize(n):
    """Prime factorization by trial division as ``{p: e}``."""
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def euler_phi(n):
    result = n
    for p in factorize(n):
        result = result // p * (p - 1)
    return result


def _poly_divexact(a, b):
    # integer polynomials, low degree first, b monic
    a = list(a)
    db = len(b) - 1
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        if c:
            q[k - db] = c
            for i, bi in enumerate(b):
                a[k - db + i] -= c * bi
    assert not any(a), "inexact cyclotomic division"
    return q


@lru_cache(maxsize=None)
def cyclotomic_poly(m):
    """Coefficients of Phi_m, lowest degree first."""
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            num = _poly_divexact(num, cyclotomic_poly(d))
    return tuple(num)


class _Field:
    """Per-order constants: degree, sparse modulus, reduced powers of zeta."""

    def __init__(self, m):
        self.m = m
        phi = cyclotomic_poly(m)
        self.n = len(phi) - 1
        self.phi_nz = tuple((i, c) for i, c in enumerate(phi[:-1]) if c)
        self._powers = None

    @property
    def powers(self):
        # powers[e] = coefficient vector of zeta_m^e, 0 <= e < m
        if self._powers is None:
            n = self.n
            cur = [1] + [0] * (n - 1)
            table = []
            for _ in range(self.m):
                table.append(tuple(cur))
                top = cur[-1]
                cur = [0] + cur[:-1]
                if top:
                    for i, c in self.phi_nz:
                        cur[i] -= top * c
            self._powers = table
        return self._powers


@lru_cache(maxsize=None)
def _field(m):
    return _Field(m)


@lru_cache(maxsize=None)
def _lift_matrix(m, big):
    """Images of zeta_m^i (i < phi(m)) as vectors at order ``big``."""
    k = big // m
    pw = _field(big).powers
    return tuple(pw[(k * i) % big] for i in range(_field(m).n))


@lru_cache(maxsize=None)
def _normalized_trace_weights(m):
    # trace(zeta_m^i) / phi(m) for each basis index; field-independent value
    out = []
    for i in range(_field(m).n):
        d = m // gcd(i, m)
        mu = _mobius(d)
        out.append(Fraction(mu, euler_phi(d)))
    return tuple(out)


def _mobius(n):
    f = factorize(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


class Cyclotomic:
    """Immutable element of Q(zeta_m)."""

    __slots__ = ("order", "num", "den", "_hash")

    def __init__(self, order, num, den=1):
        # trusted constructor: callers pass canonical data or use _make
        self.order = order
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def _make(cls, order, num, den=1):
        if den < 0:
            num = [-c for c in num]
            den = -den
        g = gcd(den, *num)
        if g == 0:
            return cls(order, tuple(num), 1)
        if g != 1:
            num = [c // g for c in num]
            den //= g
        return cls(order, tuple(num), den)

    @classmethod
    def rational(cls, value, order=1):
        value = Fraction(value)
        n = _field(order).n
        return cls(order, (value.numerator,) + (0,) * (n - 1), value.denominator)

    @classmethod
    def zeta(cls, m, power=1):
        return cls(m, _field(m).powers[power % m], 1)

    @classmethod
    def from_coeffs(cls, order, coeffs):
        """Build from rational coefficients in the power basis; longer inputs
        are reduced modulo Phi_order."""
        fr = [Fraction(c) for c in coeffs]
        den = 1
        for c in fr:
            den = _lcm(den, c.denominator)
        ints = [c.numerator * (den // c.denominator) for c in fr]
        f = _field(order)
        return cls._make(order, _reduce_poly(ints, f.n, f.phi_nz), den)

    # -- basic properties -------------------------------------------------

    @property
    def coeffs(self):
        """Power-basis coefficients as Fractions."""
        return tuple(Fraction(c, self.den) for c in self.num)

    def is_zero(self):
        return not any(self.num)

    def is_rational(self):
        return not any(self.num[1:])

    def as_rational(self):
        """The rational value, or ``None`` when the element is not in Q."""
        if any(self.num[1:]):
            return None
        return Fraction(self.num[0], self.den)

    def lift(self, order):
        """Same element written at an order divisible by ``self.order``."""
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError(f"cannot lift order {self.order} to {order}")
        rows = _lift_matrix(self.order, order)
        acc = [0] * _field(order).n
        for c, row in zip(self.num, rows):
            if c:
                _scale_add(acc, row, c)
        return Cyclotomic(order, tuple(acc), self.den)

    def galois(self, k):
        """Apply the automorphism zeta_m -> zeta_m^k (k coprime to m)."""
        m = self.order
        if gcd(k, m) != 1:
            raise ValueError("Galois exponent must be coprime to the order")
        pw = _field(m).powers
        acc = [0] * len(self.num)
        for i, c in enumerate(self.num):
            if c:
                _scale_add(acc, pw[(i * k) % m], c)
        return Cyclotomic(m, tuple(acc), self.den)

    def conjugate(self):
        if self.order <= 2:
            return self
        return self.galois(self.order - 1)

    def normalized_trace(self):
        """trace / degree, which does not depend on the ambient order."""
        w = _normalized_trace_weights(self.order)
        return sum((c * x for c, x in zip(self.num, w) if c), Fraction(0)) / self.den

    def normalize(self):
        """Descend to the smallest cyclotomic field containing the element."""
        cur = self
        if cur.is_rational():
            return Cyclotomic.rational(cur.as_rational())
        progress = True
        while progress and cur.order > 1:
            progress = False
            for p in sorted(factorize(cur.order)):
                sub = cur._descend(cur.order // p)
                if sub is not None:
                    cur = sub
                    progress = True
                    break
        return cur

    def _descend(self, small):
        rows = _lift_matrix(small, self.order)
        n_small, n_big = len(rows), len(self.num)
        # solve sum_i b_i rows[i] = num over Q
        aug = [[Fraction(rows[i][r]) for i in range(n_small)] + [Fraction(self.num[r])]
               for r in range(n_big)]
        piv_cols = []
        row = 0
        for col in range(n_small):
            sel = next((r for r in range(row, n_big) if aug[r][col]), None)
            if sel is None:
                continue
            aug[row], aug[sel] = aug[sel], aug[row]
            pv = aug[row][col]
            aug[row] = [x / pv for x in aug[row]]
            for r in range(n_big):
                if r != row and aug[r][col]:
                    f = aug[r][col]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[row])]
            piv_cols.append(col)
            row += 1
        if any(aug[r][-1] for r in range(row, n_big)):
            return None
        sol = [Fraction(0)] * n_small
        for r, col in enumerate(piv_cols):
            sol[col] = aug[r][-1]
        return Cyclotomic.from_coeffs(small, [s / self.den for s in sol])

    def __complex__(self):
        z = cmath.exp(2j * cmath.pi / self.order)
        return sum(c * z ** i for i, c in enumerate(self.num)) / self.den

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Cyclotomic):
            a, b = self, other
        elif isinstance(other, (int, Fraction)):
            b = Cyclotomic.rational(other, self.order)
            return self, b
        else:
            return None
        if a.order != b.order:
            # rationals live in every field; avoid lifting them
            if b.is_rational():
                b = Cyclotomic(a.order, (b.num[0],) + (0,) * (len(a.num) - 1), b.den)
            elif a.is_rational():
                a = Cyclotomic(b.order, (a.num[0],) + (0,) * (len(b.num) - 1), a.den)
            else:
                m = _lcm(a.order, b.order)
                a, b = a.lift(m), b.lift(m)
        return a, b

    def __add__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        if a.den == b.den:
            return Cyclotomic._make(a.order, [x + y for x, y in zip(a.num, b.num)], a.den)
        return Cyclotomic._make(
            a.order, [x * b.den + y * a.den for x, y in zip(a.num, b.num)], a.den * b.den)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.order, tuple(-x for x in self.num), self.den)

    def __sub__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a + (-b)

    def __rsub__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return b + (-a)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return Cyclotomic._make(self.order, [x * other.numerator for x in self.num],
                                    self.den * other.denominator)
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        if a.is_rational():
            a, b = b, a
        if b.is_rational():
            return Cyclotomic._make(a.order, [x * b.num[0] for x in a.num], a.den * b.den)
        f = _field(a.order)
        return Cyclotomic._make(a.order, _mulmod(a.num, b.num, f.n, f.phi_nz),
                                a.den * b.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("cyclotomic division by zero")
        if self.is_rational():
            return Cyclotomic.rational(1 / self.as_rational(), self.order)
        m = self.order
        # product of the non-identity conjugates, then divide by the norm
        acc = None
        for k in range(2, m):
            if gcd(k, m) == 1:
                g = self.galois(k)
                acc = g if acc is None else acc * g
        norm = (self * acc).as_rational()
        assert norm is not None and norm != 0
        return acc * (1 / norm)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("cyclotomic division by zero")
            return self * (1 / Fraction(other))
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return self.inverse() * other

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = Cyclotomic.rational(1, self.order)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a.den == b.den and a.num == b.num

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.normalized_trace())
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"Cyclotomic({format_scalar(self)})"

    def __str__(self):
        return format_scalar(self)


def E(m):
    """Primitive m-th root of unity exp(2 pi i / m)."""
    return Cyclotomic.zeta(m)


def as_rational(a):
    if isinstance(a, Cyclotomic):
        return a.as_rational()
    return Fraction(a)


def conjugate(a):
    if isinstance(a, Cyclotomic):
        return a.conjugate()
    return a


def cyc_arith(a, b, op):
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def _is_squarefree(n):
    return all(e == 1 for e in factorize(n).values())


@lru_cache(maxsize=None)
def sqrt_integer(n):
    """Positive real square root of a squarefree positive integer."""
    if n <= 0:
        raise ValueError("sqrt_integer needs a positive integer")
    if not _is_squarefree(n):
        raise ValueError(f"{n} is not squarefree")
    result = Cyclotomic.rational(1)
    for p in sorted(factorize(n)):
        if p == 2:
            r = E(8) - E(8) ** 3
        else:
            g = sum((Cyclotomic.zeta(p, a * a) for a in range(p)), Cyclotomic.rational(0))
            r = g if p % 4 == 1 else g * Cyclotomic.zeta(4, 3)
        result = result * r
    return result


# -- text form ---------------------------------------------------------------

def format_scalar(a, descend=True):
    """Render as a sum of rational multiples of powers of E(m); the output
    parses back with :func:`parse_scalar`."""
    if not isinstance(a, Cyclotomic):
        return str(Fraction(a))
    if descend:
        a = a.normalize()
    if a.is_rational():
        return str(a.as_rational())
    parts = []
    for i, c in enumerate(a.coeffs):
        if not c:
            continue
        if i == 0:
            mono = None
        elif i == 1:
            mono = f"E({a.order})"
        else:
            mono = f"E({a.order})^{i}"
        if mono is None:
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}*{mono}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        text += sign + body
    return text


class ScalarParseError(ValueError):
    pass


_TOKEN = re.compile(r"\s*(?:(\d+)|(E|Sqrt)|(.))")


def _tokenize(text):
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.group(1):
            tokens.append(("int", int(m.group(1))))
        elif m.group(2):
            tokens.append(("name", m.group(2)))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ScalarParseError(f"unexpected character {ch!r} in {text!r}")
            tokens.append(("op", ch))
        pos = m.end()
    return tokens


def _sqrt_any(n):
    if n < 0:
        return E(4) * _sqrt_any(-n)
    if n == 0:
        return Cyclotomic.rational(0)
    square, free = 1, 1
    for p, e in factorize(n).items():
        square *= p ** (e // 2)
        if e % 2:
            free *= p
    return sqrt_integer(free) * square


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            raise ScalarParseError(f"cannot parse {self.text!r}: expected {value or kind}")
        self.i += 1
        return tok

    def parse(self):
        val = self.expr()
        if self.i != len(self.tokens):
            raise ScalarParseError(f"trailing input in {self.text!r}")
        return val

    def expr(self):
        val = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self.unary()
            if op == "*":
                val = val * rhs
            else:
                if rhs.is_zero():
                    raise ScalarParseError(f"division by zero in {self.text!r}")
                val = val / rhs
        return val

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            sign = 1
            if self.peek() == ("op", "-"):
                self.take()
                sign = -1
            k = self.take("int")[1]
            base = base ** (sign * k)
        return base

    def atom(self):
        kind, val = self.peek()
        if kind == "int":
            self.take()
            return Cyclotomic.rational(val)
        if kind == "name":
            self.take()
            self.take("op", "(")
            negative = val == "Sqrt" and self.peek() == ("op", "-")
            if negative:
                self.take()
            arg = self.take("int")[1] * (-1 if negative else 1)
            self.take("op", ")")
            if val == "E":
                if arg < 1:
                    raise ScalarParseError("E(m) needs m >= 1")
                return E(arg)
            return _sqrt_any(arg)
        if (kind, val) == ("op", "("):
            self.take()
            inner = self.expr()
            self.take("op", ")")
            return inner
        raise ScalarParseError(f"cannot parse {self.text!r}")


def parse_scalar(text):
    """Parse a scalar literal: integers, ``a/b``, ``E(m)``, ``Sqrt(n)``,
    ``+ - * / ^`` and parentheses."""
    return _Parser(text).parse()
