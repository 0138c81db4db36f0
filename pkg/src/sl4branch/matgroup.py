"""Finite subgroups of SL_4 given by generator matrices.

The group is enumerated once by breadth-first closure.  After that every
element is an index into ``GroupData.elements`` and products are computed on
indices: each element carries a shortest word in the generators, and
right-multiplication by a generator is a lookup table.
"""
from dataclasses import dataclass, field
import logging
from math import gcd

from .exactnum import Cyclotomic, format_scalar, parse_scalar, ScalarParseError, _lcm

log = logging.getLogger(__name__)

DIM = 4
DEFAULT_CAP = 20000


class GroupError(ValueError):
    """Bad generators or an enumeration that does not terminate."""


class GroupInputError(GroupError):
    pass


def _cyc(x):
    return x if isinstance(x, Cyclotomic) else Cyclotomic.rational(x)


def matmul(a, b):
    n = len(a)
    out = []
    for i in range(n):
        row = a[i]
        new = []
        for j in range(n):
            acc = None
            for k in range(n):
                x = row[k]
                if x.is_zero():
                    continue
                y = b[k][j]
                if y.is_zero():
                    continue
                acc = x * y if acc is None else acc + x * y
            new.append(acc if acc is not None else Cyclotomic.rational(0, row[0].order))
        out.append(tuple(new))
    return tuple(out)


def det(a):
    """Determinant by cofactor expansion along the first row."""
    n = len(a)
    if n == 1:
        return a[0][0]
    total = Cyclotomic.rational(0)
    for j in range(n):
        if a[0][j].is_zero():
            continue
        minor = tuple(tuple(r[:j] + r[j + 1:]) for r in a[1:])
        term = a[0][j] * det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def trace(a):
    total = a[0][0]
    for i in range(1, len(a)):
        total = total + a[i][i]
    return total


def _key(mat):
    return tuple((x.num, x.den) for row in mat for x in row)


@dataclass(eq=False)
class GroupData:
    elements: list
    words: list
    gen_index: list
    right: list               # right[k][i] = index of elements[i] * gen_k
    class_of: list
    class_reps: list
    class_sizes: list
    element_orders: list
    inverse: list
    rep_powers: list          # rep_powers[j][n] = class of g_j^n, n < order(g_j)
    exponent: int
    name: str = "group"
    classes: list = field(default_factory=list)

    @property
    def order(self):
        return len(self.elements)

    @property
    def num_classes(self):
        return len(self.class_reps)

    def mul(self, i, j):
        """Index of elements[i] * elements[j]."""
        for k in self.words[j]:
            i = self.right[k][i]
        return i

    def power_class(self, j, n):
        pw = self.rep_powers[j]
        return pw[n % len(pw)]

    def class_order(self, j):
        return self.element_orders[self.class_reps[j]]

    def rep_matrix(self, j):
        return self.elements[self.class_reps[j]]


def closure(generators, cap=DEFAULT_CAP, name="group"):
    """Enumerate <generators> and compute its conjugacy classes."""
    gens = []
    for g in generators:
        mat = tuple(tuple(_cyc(x) for x in row) for row in g)
        if len(mat) != DIM or any(len(r) != DIM for r in mat):
            raise GroupError("generators must be 4x4 matrices")
        d = det(mat)
        if d.is_zero():
            raise GroupError("generator is not invertible")
        if d != 1:
            raise GroupError(f"generator has determinant {d}, not 1")
        gens.append(mat)

    order = 1
    for mat in gens:
        for row in mat:
            for x in row:
                order = _lcm(order, x.order)
    gens = [tuple(tuple(x.lift(order) for x in row) for row in mat) for mat in gens]
    one = Cyclotomic.rational(1, order)
    zero = Cyclotomic.rational(0, order)
    identity = tuple(tuple(one if i == j else zero for j in range(DIM)) for i in range(DIM))

    elements = [identity]
    words = [()]
    index = {_key(identity): 0}
    right = [[] for _ in gens]
    frontier = 0
    while frontier < len(elements):
        cur = elements[frontier]
        for k, g in enumerate(gens):
            prod = matmul(cur, g)
            key = _key(prod)
            idx = index.get(key)
            if idx is None:
                if len(elements) >= cap:
                    raise GroupError(f"closure exceeded cap of {cap} elements")
                idx = len(elements)
                index[key] = idx
                elements.append(prod)
                words.append(words[frontier] + (k,))
            right[k].append(idx)
        frontier += 1

    gen_index = [index[_key(g)] for g in gens]
    data = GroupData(elements=elements, words=words, gen_index=gen_index, right=right,
                     class_of=[], class_reps=[], class_sizes=[], element_orders=[],
                     inverse=[], rep_powers=[], exponent=1, name=name)
    _orders_and_inverses(data)
    _conjugacy_classes(data)
    return data


def _orders_and_inverses(G):
    n = G.order
    orders = [0] * n
    inverse = [0] * n
    for x in range(n):
        if orders[x]:
            continue
        powers = [0]
        cur = x
        while cur != 0:
            powers.append(cur)
            cur = G.mul(cur, x)
        o = len(powers)
        orders[x] = o
        inverse[x] = powers[-1] if o > 1 else 0
        # powers of x coprime to o share the order; fill what we can
        for e in range(1, o):
            y = powers[e]
            if not orders[y]:
                if gcd(e, o) == 1:
                    orders[y] = o
                    inverse[y] = powers[(o - e) % o]
    G.element_orders = orders
    G.inverse = inverse
    ex = 1
    for o in set(orders):
        ex = _lcm(ex, o)
    G.exponent = ex


def _conjugacy_classes(G):
    n = G.order
    owner = [-1] * n
    raw = []
    for x in range(n):
        if owner[x] >= 0:
            continue
        cid = len(raw)
        orbit = [x]
        owner[x] = cid
        pos = 0
        while pos < len(orbit):
            y = orbit[pos]
            pos += 1
            for gi in G.gen_index:
                z = G.mul(G.mul(gi, y), G.inverse[gi])
                if owner[z] < 0:
                    owner[z] = cid
                    orbit.append(z)
        raw.append(sorted(orbit))

    def sort_key(members):
        rep = members[0]
        tr = trace(G.elements[rep])
        return (rep != 0, G.element_orders[rep], len(members), tr.coeffs, rep)

    raw.sort(key=sort_key)
    class_of = [0] * n
    for cid, members in enumerate(raw):
        for x in members:
            class_of[x] = cid
    G.classes = raw
    G.class_of = class_of
    G.class_reps = [members[0] for members in raw]
    G.class_sizes = [len(members) for members in raw]
    rep_powers = []
    for rep in G.class_reps:
        pw = [0]
        cur = rep
        while cur != 0:
            pw.append(cur)
            cur = G.mul(cur, rep)
        rep_powers.append([class_of[y] for y in pw])
    G.rep_powers = rep_powers


def class_mult_coeffs(G, i):
    """Matrix c[j][k] = #{(a, b) in C_i x C_j : a b = g_k}."""
    r = G.num_classes
    out = [[0] * r for _ in range(r)]
    for k, gk in enumerate(G.class_reps):
        for a in G.classes[i]:
            b = G.mul(G.inverse[a], gk)
            out[G.class_of[b]][k] += 1
    return out


def natural_character(G):
    return [trace(G.rep_matrix(j)).normalize() for j in range(G.num_classes)]


# -- built-in groups and file input ----------------------------------------

def _diag(*xs):
    xs = [parse_scalar(x) if isinstance(x, str) else _cyc(x) for x in xs]
    return [[xs[i] if i == j else Cyclotomic.rational(0) for j in range(DIM)]
            for i in range(DIM)]


def _scaled(rows, den):
    return [[parse_scalar(x) / den for x in row] for row in rows]


def _builtin_generators(name):
    if name == "trivial":
        return [_diag(1, 1, 1, 1)]
    if name == "cyclic4":
        return [_diag("E(4)", "-E(4)", "E(4)", "-E(4)")]
    if name == "typeII":
        f1 = _diag(1, 1, "E(3)", "E(3)^2")
        f2 = _scaled([["3", "0", "0", "0"],
                      ["0", "-1", "2", "2"],
                      ["0", "2", "-1", "2"],
                      ["0", "2", "2", "-1"]], 3)
        f3 = _scaled([["-1", "Sqrt(15)", "0", "0"],
                      ["Sqrt(15)", "1", "0", "0"],
                      ["0", "0", "0", "4"],
                      ["0", "0", "4", "0"]], 4)
        return [f1, f2, f3]
    raise KeyError(name)


BUILTIN_GROUPS = ("trivial", "cyclic4", "typeII")


def builtin_group(name, cap=DEFAULT_CAP):
    try:
        gens = _builtin_generators(name)
    except KeyError:
        raise GroupInputError(f"unknown built-in group {name!r}") from None
    return closure(gens, cap=cap, name=name)


def parse_matrix(text):
    """``a,b,c,d; e,f,g,h; ...`` -> 4x4 list of Cyclotomic."""
    rows = [r for r in text.split(";")]
    if len(rows) != DIM:
        raise GroupInputError(f"expected {DIM} rows separated by ';', got {len(rows)}")
    out = []
    for r in rows:
        cells = r.split(",")
        if len(cells) != DIM:
            raise GroupInputError(f"expected {DIM} entries in row {r.strip()!r}")
        out.append([parse_scalar(c) for c in cells])
    return out


def format_matrix(mat):
    return "; ".join(", ".join(format_scalar(x) for x in row) for row in mat)


def read_generators(path):
    """Read a group file: first line an order hint (integer, 0 if unknown),
    then one generator per line.  ``#`` starts a comment."""
    hint = None
    gens = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                if hint is None:
                    hint = int(line)
                else:
                    gens.append(parse_matrix(line))
            except (ValueError, ScalarParseError) as exc:
                raise GroupInputError(f"{path}:{lineno}: {exc}") from None
    if hint is None or not gens:
        raise GroupInputError(f"{path}: no generators found")
    return hint, gens


def load_group(path, cap=DEFAULT_CAP):
    hint, gens = read_generators(path)
    G = closure(gens, cap=cap, name=str(path))
    if hint and hint != G.order:
        log.warning("%s: order hint %d but closure has %d elements", path, hint, G.order)
    return G


def write_generators(path, gens, order_hint=0):
    with open(path, "w") as fh:
        fh.write(f"{order_hint}\n")
        for g in gens:
            fh.write(format_matrix(g) + "\n")
