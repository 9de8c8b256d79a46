"""Unital commutative quantales with exact arithmetic.

Two families are supported.  Finite quantales (``bool2``, chains, arbitrary
``finite-table`` lattices, ``lukasiewicz-grid(n)``) are table driven, so every
law can be checked by full enumeration.  The cost quantales ``cost-plus`` and
``cost-max`` live on ``[0, inf]`` with the order reversed: smaller cost means
larger quantale value, bottom is ``inf`` and top is ``0``.  Their residuation
uses closed forms over exact rationals; no floating point appears anywhere,
because downstream closure and structure computations are compared for exact
equality.

The reversed numeric order of the cost quantales is never exposed: all
comparisons go through :meth:`Quantale.leq`.
"""

from fractions import Fraction
from functools import lru_cache

from .errors import (
    QuantaleMismatchError,
    StructuralError,
    UnsupportedOperationError,
)
from .validation import ValidationReport


class _Infinity:
    """Singleton marker for the infinite cost."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "inf"


INF = _Infinity()


def _num_leq(a, b):
    # numeric order on [0, inf]
    if a is INF:
        return b is INF
    if b is INF:
        return True
    return a <= b


def _num_add(a, b):
    if a is INF or b is INF:
        return INF
    return a + b


def _num_max(a, b):
    return b if _num_leq(a, b) else a


def _num_min(a, b):
    return a if _num_leq(a, b) else b


class Value:
    """A scalar tagged with the quantale it belongs to.

    The payload is an index into the carrier for finite quantales and a
    nonnegative ``Fraction`` or ``INF`` for the cost quantales.
    """

    __slots__ = ("quantale", "payload")

    def __init__(self, quantale, payload):
        self.quantale = quantale
        self.payload = payload

    def __eq__(self, other):
        if not isinstance(other, Value):
            return NotImplemented
        return self.quantale is other.quantale and self.payload == other.payload

    def __hash__(self):
        return hash((id(self.quantale), self.payload))

    def __repr__(self):
        return self.quantale.value_token(self)

    @property
    def token(self):
        return self.quantale.value_token(self)


class Quantale:
    """Common interface of all quantale kinds."""

    kind = None

    def _check(self, *values):
        for v in values:
            if not isinstance(v, Value) or v.quantale is not self:
                raise QuantaleMismatchError(
                    f"value {v!r} does not belong to quantale {self.describe()}"
                )

    # subclasses implement: tensor, hom, leq, meet, join over iterables,
    # bottom/top/unit, value_token, parse_value, cache_key

    def join(self, values):
        out = self.bottom
        for v in values:
            self._check(v)
            out = self.join2(out, v)
        return out

    def meet_all(self, values, start=None):
        out = self.top if start is None else start
        for v in values:
            self._check(v)
            out = self.meet(out, v)
        return out

    def eq(self, u, v):
        self._check(u, v)
        return u.payload == v.payload

    @property
    def is_finite(self):
        return False

    def carrier_values(self):
        raise UnsupportedOperationError(
            f"quantale kind {self.kind!r} has no finite carrier enumeration"
        )

    def describe(self):
        return self.kind

    def __repr__(self):
        return f"<quantale {self.describe()}>"


class FiniteQuantale(Quantale):
    """Table-driven quantale on an explicitly listed carrier.

    Construction is tolerant: derived tables (joins, meets, residuals) may be
    partial when the supplied order is not a complete lattice, or when the
    tensor breaks a law.  Using a missing entry raises ``StructuralError``;
    :func:`validate_quantale` reports every broken law with a witness instead.
    """

    def __init__(self, kind, labels, leq_table, tensor_table, unit_index,
                 tokens=None):
        n = len(labels)
        if len(set(labels)) != n:
            raise StructuralError("carrier labels must be distinct")
        if len(leq_table) != n or any(len(row) != n for row in leq_table):
            raise StructuralError("order table is not square")
        if len(tensor_table) != n or any(len(row) != n for row in tensor_table):
            raise StructuralError("tensor table is not square")
        for row in tensor_table:
            for x in row:
                if not (0 <= x < n):
                    raise StructuralError(f"tensor table index {x} out of range")
        if not (0 <= unit_index < n):
            raise StructuralError(f"unit index {unit_index} out of range")
        self.kind = kind
        self.labels = tuple(labels)
        self._tokens = tuple(tokens) if tokens is not None else self.labels
        self._leq = tuple(tuple(bool(x) for x in row) for row in leq_table)
        self._tensor = tuple(tuple(row) for row in tensor_table)
        self._unit_index = unit_index
        self._values = tuple(Value(self, i) for i in range(n))
        self._join2 = self._derive_bound_table(upper=True)
        self._meet2 = self._derive_bound_table(upper=False)
        self._bottom_index = self._extremum(bottom=True)
        self._top_index = self._extremum(bottom=False)
        self._hom = self._derive_residual(self._tensor)
        self._heyting = self._derive_residual(self._meet2)

    # -- table derivation -------------------------------------------------

    def _derive_bound_table(self, upper):
        n = len(self.labels)
        table = []
        for i in range(n):
            row = []
            for j in range(n):
                if upper:
                    bounds = [k for k in range(n)
                              if self._leq[i][k] and self._leq[j][k]]
                    best = [k for k in bounds
                            if all(self._leq[k][m] for m in bounds)]
                else:
                    bounds = [k for k in range(n)
                              if self._leq[k][i] and self._leq[k][j]]
                    best = [k for k in bounds
                            if all(self._leq[m][k] for m in bounds)]
                row.append(best[0] if len(best) == 1 else None)
            table.append(tuple(row))
        return tuple(table)

    def _extremum(self, bottom):
        n = len(self.labels)
        for i in range(n):
            if bottom and all(self._leq[i][j] for j in range(n)):
                return i
            if not bottom and all(self._leq[j][i] for j in range(n)):
                return i
        return None

    def _derive_residual(self, op_table):
        # residual(u, v) = join of { w | op(w, u) <= v }, None when undefined
        n = len(self.labels)
        table = []
        for i in range(n):
            row = []
            for j in range(n):
                candidates = [w for w in range(n)
                              if op_table[w][i] is not None
                              and self._leq[op_table[w][i]][j]]
                out = self._fold_join(candidates)
                row.append(out)
            table.append(tuple(row))
        return tuple(table)

    def _fold_join(self, indices):
        out = self._bottom_index
        for i in indices:
            if out is None:
                return None
            out = self._join2[out][i]
        return out

    def _lookup(self, table, u, v, what):
        self._check(u, v)
        out = table[u.payload][v.payload]
        if out is None:
            raise StructuralError(
                f"{what} undefined in quantale {self.describe()}: the order "
                "is not a complete lattice (run validate_quantale)"
            )
        return self._values[out]

    # -- operations --------------------------------------------------------

    def tensor(self, u, v):
        self._check(u, v)
        return self._values[self._tensor[u.payload][v.payload]]

    def join2(self, u, v):
        return self._lookup(self._join2, u, v, "join")

    def meet(self, u, v):
        return self._lookup(self._meet2, u, v, "meet")

    def hom(self, u, v):
        return self._lookup(self._hom, u, v, "hom")

    def heyting(self, u, v):
        return self._lookup(self._heyting, u, v, "Heyting implication")

    def leq(self, u, v):
        self._check(u, v)
        return self._leq[u.payload][v.payload]

    @property
    def bottom(self):
        if self._bottom_index is None:
            raise StructuralError("order has no bottom element")
        return self._values[self._bottom_index]

    @property
    def top(self):
        if self._top_index is None:
            raise StructuralError("order has no top element")
        return self._values[self._top_index]

    @property
    def unit(self):
        return self._values[self._unit_index]

    @property
    def is_finite(self):
        return True

    def carrier_values(self):
        return list(self._values)

    @property
    def integral(self):
        return self._top_index == self._unit_index

    @property
    def lean(self):
        top = self._top_index
        bot = self._bottom_index
        if top is None or bot is None:
            return False
        n = len(self.labels)
        for u in range(n):
            for v in range(n):
                if self._join2[u][v] == top and self._tensor[u][v] == bot:
                    if u != top and v != top:
                        return False
        return True

    @property
    def totally_ordered(self):
        n = len(self.labels)
        return all(self._leq[i][j] or self._leq[j][i]
                   for i in range(n) for j in range(n))

    # -- tokens ------------------------------------------------------------

    def value_token(self, v):
        self._check(v)
        return self._tokens[v.payload]

    def parse_value(self, token):
        try:
            return self._values[self._tokens.index(token)]
        except ValueError:
            raise StructuralError(
                f"{token!r} is not an element of quantale {self.describe()}"
            ) from None

    def by_label(self, label):
        return self.parse_value(label)

    def cache_key(self):
        return (self.kind, self.labels, self._tensor, self._leq,
                self._unit_index)

    def describe(self):
        if self.kind == "finite-table":
            return f"finite-table({','.join(self.labels)})"
        return self.kind


class CostQuantale(Quantale):
    """The quantales on ``[0, inf]`` with reversed order.

    ``cost-plus`` tensors by addition, ``cost-max`` by binary maximum; in both
    the unit is ``0``, which is also the top element, and ``inf`` is bottom.
    """

    def __init__(self, flavor):
        assert flavor in ("plus", "max")
        self.kind = "cost-plus" if flavor == "plus" else "cost-max"
        self._flavor = flavor
        self._zero = Value(self, Fraction(0))
        self._inf = Value(self, INF)

    def _coerce(self, raw):
        if raw is INF:
            return self._inf
        f = Fraction(raw)
        if f < 0:
            raise StructuralError(f"cost values must be nonnegative, got {f}")
        return Value(self, f)

    def value(self, raw):
        return self._coerce(raw)

    def tensor(self, u, v):
        self._check(u, v)
        if self._flavor == "plus":
            return Value(self, _num_add(u.payload, v.payload))
        return Value(self, _num_max(u.payload, v.payload))

    def join2(self, u, v):
        self._check(u, v)
        return Value(self, _num_min(u.payload, v.payload))

    def meet(self, u, v):
        self._check(u, v)
        return Value(self, _num_max(u.payload, v.payload))

    def hom(self, u, v):
        # largest w (smallest cost) with w (x) u <= v in the quantale order
        self._check(u, v)
        a, b = u.payload, v.payload
        if self._flavor == "plus":
            if _num_leq(b, a):
                return self._zero
            return self._inf if b is INF else Value(self, b - a)
        if _num_leq(b, a):
            return self._zero
        return Value(self, b)

    def heyting(self, u, v):
        # meet is numeric max for both flavors, so the implication coincides
        # with the cost-max residual
        self._check(u, v)
        if _num_leq(v.payload, u.payload):
            return self._zero
        return Value(self, v.payload)

    def _hom_payload(self, a, b):
        if _num_leq(b, a):
            return self._zero.payload
        if self._flavor == "plus":
            return INF if b is INF else b - a
        return b

    def leq(self, u, v):
        self._check(u, v)
        return _num_leq(v.payload, u.payload)

    @property
    def bottom(self):
        return self._inf

    @property
    def top(self):
        return self._zero

    @property
    def unit(self):
        return self._zero

    integral = True
    lean = True
    totally_ordered = True

    def value_token(self, v):
        self._check(v)
        return "inf" if v.payload is INF else str(v.payload)

    def parse_value(self, token):
        if token == "inf":
            return self._inf
        try:
            return self._coerce(Fraction(token))
        except (ValueError, ZeroDivisionError):
            raise StructuralError(f"malformed rational {token!r}") from None

    def cache_key(self):
        return (self.kind,)


# -- constructors ------------------------------------------------------------


@lru_cache(maxsize=None)
def bool2():
    """The two-element quantale: carrier {bot, top}, tensor = meet."""
    return FiniteQuantale(
        "bool2",
        labels=("0", "1"),
        leq_table=[[1, 1], [0, 1]],
        tensor_table=[[0, 0], [0, 1]],
        unit_index=1,
    )


@lru_cache(maxsize=None)
def chain(n, tensor="meet"):
    """A totally ordered quantale with n elements ``c0 < ... < c{n-1}``.

    The default tensor is the binary minimum, which makes the chain an
    integral Heyting quantale.
    """
    if n < 1:
        raise StructuralError("a chain needs at least one element")
    labels = tuple(f"c{i}" for i in range(n))
    leq = [[1 if i <= j else 0 for j in range(n)] for i in range(n)]
    if tensor == "meet":
        tens = [[min(i, j) for j in range(n)] for i in range(n)]
        unit = n - 1
    else:
        raise StructuralError(f"unknown chain tensor {tensor!r}")
    return FiniteQuantale("finite-table", labels, leq, tens, unit)


@lru_cache(maxsize=None)
def lukasiewicz_grid(n):
    """The Lukasiewicz tensor on the grid {0, 1/n, ..., 1}.

    ``u (*) v = max(0, u + v - 1)`` keeps grid points on the grid, as does
    the residual ``min(1, 1 - u + v)``.
    """
    if n < 1:
        raise StructuralError("grid resolution must be positive")
    tokens = tuple(str(Fraction(i, n)) for i in range(n + 1))
    leq = [[1 if i <= j else 0 for j in range(n + 1)] for i in range(n + 1)]
    tens = [[max(0, i + j - n) for j in range(n + 1)] for i in range(n + 1)]
    q = FiniteQuantale("lukasiewicz-grid", tokens, leq, tens,
                       unit_index=n, tokens=tokens)
    q.grid_resolution = n
    return q


@lru_cache(maxsize=None)
def cost_plus():
    """Nonnegative extended costs under addition (generalized metrics)."""
    return CostQuantale("plus")


@lru_cache(maxsize=None)
def cost_max():
    """Nonnegative extended costs under maximum (ultrametrics)."""
    return CostQuantale("max")


def finite_table(labels, leq_table, tensor_table, unit_index):
    """Build a finite quantale from explicit tables.

    ``leq_table[i][j]`` is truthy when element i is below element j;
    ``tensor_table`` holds carrier indices.  Laws are not enforced here, so
    deliberately broken tables can be fed to :func:`validate_quantale`.
    """
    return FiniteQuantale("finite-table", tuple(labels),
                          leq_table, tensor_table, unit_index)


# -- spec-level operation wrappers -------------------------------------------


def tensor(u, v):
    return u.quantale.tensor(u, v)


def join(quantale, values):
    return quantale.join(values)


def hom(u, v):
    return u.quantale.hom(u, v)


def leq(u, v):
    return u.quantale.leq(u, v)


# -- generated value sets -----------------------------------------------------


def generated_values(quantale, seeds, cap=10000):
    """Close a finite seed set under meet, join and hom.

    Used to bound the quantifiers of the exponentiability test on the cost
    quantales, whose carriers are infinite.  The closure always contains
    bottom, top and the unit.  Tensor is deliberately excluded: under
    ``cost-plus`` it generates unboundedly many sums, while the meet, join
    and residual closure of rationals with a common denominator is finite
    and contains every comparison breakpoint of the tests that use it.
    Exceeding ``cap`` raises ``UnsupportedOperationError``.
    """
    if quantale.is_finite:
        return quantale.carrier_values()
    for s in seeds:
        quantale._check(s)
    # frontier closure on raw payloads: meet and join of a chain add
    # nothing new, so only the residual produces fresh values
    current = {quantale.bottom.payload, quantale.top.payload,
               quantale.unit.payload}
    current.update(s.payload for s in seeds)
    frontier = set(current)
    while frontier:
        new = set()
        for u in frontier:
            for v in current:
                for w in (quantale._hom_payload(u, v),
                          quantale._hom_payload(v, u)):
                    if w not in current:
                        new.add(w)
        current.update(new)
        if len(current) > cap:
            raise UnsupportedOperationError(
                f"generated value set exceeds the cap of {cap} elements"
            )
        frontier = new
    return [Value(quantale, p)
            for p in sorted(current, key=lambda p: (p is INF,
                                                    0 if p is INF else p))]


# -- validation ---------------------------------------------------------------


def validate_quantale(q):
    """Check every quantale law by enumeration on a finite table.

    The analytic cost kinds return a trusted-axiomatic report: their laws
    hold by the closed forms and are exercised separately by sampled tests.
    """
    if not q.is_finite:
        return ValidationReport(notes=(
            "analytic kind: laws hold by closed form (trusted-axiomatic)",))

    violations = []
    vals = q.carrier_values()
    lab = q.value_token

    # order laws
    for u in vals:
        if not q.leq(u, u):
            violations.append(("order-reflexive", (lab(u),)))
    for u in vals:
        for v in vals:
            if u is not v and q.leq(u, v) and q.leq(v, u):
                violations.append(("order-antisymmetric", (lab(u), lab(v))))
            for w in vals:
                if q.leq(u, v) and q.leq(v, w) and not q.leq(u, w):
                    violations.append(("order-transitive",
                                       (lab(u), lab(v), lab(w))))

    # complete lattice: bottom plus all binary joins (finite case)
    if q._bottom_index is None:
        violations.append(("complete-lattice", ("no bottom element",)))
    for u in vals:
        for v in vals:
            if q._join2[u.payload][v.payload] is None:
                violations.append(("complete-lattice",
                                   (lab(u), lab(v), "no join")))
            if q._meet2[u.payload][v.payload] is None:
                violations.append(("complete-lattice",
                                   (lab(u), lab(v), "no meet")))
    if violations:
        # derived tables are unreliable; stop before using them
        return ValidationReport.collect(violations)

    for u in vals:
        for v in vals:
            if not q.eq(q.tensor(u, v), q.tensor(v, u)):
                violations.append(("tensor-commutative", (lab(u), lab(v))))
            for w in vals:
                lhs = q.tensor(q.tensor(u, v), w)
                rhs = q.tensor(u, q.tensor(v, w))
                if not q.eq(lhs, rhs):
                    violations.append(("tensor-associative",
                                       (lab(u), lab(v), lab(w))))
        if not q.eq(q.tensor(q.unit, u), u):
            violations.append(("tensor-unit", (lab(u),)))

    # distributivity over finite joins, including the empty join
    for u in vals:
        if not q.eq(q.tensor(u, q.bottom), q.bottom):
            violations.append(("tensor-join-distributive",
                               (lab(u), "empty join")))
        for v in vals:
            for w in vals:
                lhs = q.tensor(u, q.join2(v, w))
                rhs = q.join2(q.tensor(u, v), q.tensor(u, w))
                if not q.eq(lhs, rhs):
                    violations.append(("tensor-join-distributive",
                                       (lab(u), lab(v), lab(w))))

    # hom adjunction: u (x) v <= w iff u <= hom(v, w)
    for u in vals:
        for v in vals:
            for w in vals:
                left = q.leq(q.tensor(u, v), w)
                right = q.leq(u, q.hom(v, w))
                if left != right:
                    violations.append(("hom-adjunction",
                                       (lab(u), lab(v), lab(w))))

    # Heyting: meet has a right adjoint
    for u in vals:
        for v in vals:
            sup = q.heyting(u, v)
            if not q.leq(q.meet(sup, u), v):
                violations.append(("heyting", (lab(u), lab(v))))

    # flag consistency
    if q.integral != q.eq(q.unit, q.top):
        violations.append(("integral-flag", ()))
    lean_holds = True
    lean_witness = None
    for u in vals:
        for v in vals:
            if (q.eq(q.join2(u, v), q.top) and q.eq(q.tensor(u, v), q.bottom)
                    and not q.eq(u, q.top) and not q.eq(v, q.top)):
                lean_holds = False
                lean_witness = (lab(u), lab(v))
    if q.lean != lean_holds:
        violations.append(("lean-flag", lean_witness or ()))
    total = all(q.leq(u, v) or q.leq(v, u) for u in vals for v in vals)
    if q.totally_ordered != total:
        violations.append(("totally-ordered-flag", ()))

    notes = ()
    if q.is_finite:
        notes = ("complete distributivity not checked beyond the Heyting "
                 "condition",)
    return ValidationReport.collect(violations, notes)
