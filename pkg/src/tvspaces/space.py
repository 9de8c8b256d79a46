"""Generalized spaces on finite carriers and their structural operations.

A space is a carrier together with a structure relation from the monad image
of the carrier back to the carrier, satisfying the lax reflexivity and
transitivity inequalities.  This module validates those axioms, decides
continuity, builds subspaces, products, coproducts, initial and final
liftings, and decides the compactness, Hausdorff, separatedness and
exponentiability predicates, plus function spaces for instances whose monad
is carrier-isomorphic to the identity.

Structure equality is exact entrywise value equality; there are no
tolerances anywhere.
"""

import itertools

from .errors import (
    CarrierMismatchError,
    PreconditionError,
    StructuralError,
    UnsupportedOperationError,
)
from .quantale import generated_values
from .validation import ValidationReport
from .vrel import (
    Carrier,
    MapArrow,
    VRel,
    from_map,
    reflexive_transitive_closure,
    transpose,
)


class Space:
    """A finite carrier with a reflexive, transitive structure relation."""

    __slots__ = ("carrier", "monad", "quantale", "structure", "_t_carrier")

    def __init__(self, carrier, monad, quantale, structure):
        t_carrier = monad.apply_carrier(carrier)
        if structure.dom != t_carrier or structure.cod != carrier:
            raise StructuralError(
                "structure shape does not match the monad image of the "
                f"carrier: expected {len(t_carrier)}x{len(carrier)}")
        if structure.quantale is not quantale:
            raise StructuralError("structure uses a different quantale")
        self.carrier = carrier
        self.monad = monad
        self.quantale = quantale
        self.structure = structure
        self._t_carrier = t_carrier

    @property
    def t_carrier(self):
        return self._t_carrier

    def square(self):
        """The structure restricted along the unit, as a square relation."""
        e = self.monad.unit(self.carrier)
        return VRel.build(self.carrier, self.carrier, self.quantale,
                          lambda x, y: self.structure.get(e(x), y))

    @staticmethod
    def from_square(carrier, monad, quantale, square):
        """Rebuild a structure from its square form along the retraction.

        Only meaningful for monads isomorphic to the identity, where the
        unit is a bijection on points.
        """
        if not monad.identity_isomorphic:
            raise UnsupportedOperationError(
                "square transport needs an identity-isomorphic monad")
        retract = monad.retraction(carrier)
        t_carrier = monad.apply_carrier(carrier)
        return Space(carrier, monad, quantale, VRel.build(
            t_carrier, carrier, quantale,
            lambda tx, y: square.get(retract(tx), y)))

    def cache_key(self):
        return (self.quantale.cache_key(), self.monad.name,
                self.carrier.labels, self.structure.tokens())

    def __eq__(self, other):
        return (isinstance(other, Space)
                and self.carrier == other.carrier
                and self.monad is other.monad
                and self.quantale is other.quantale
                and self.structure == other.structure)

    def __hash__(self):
        return hash(self.cache_key())

    def __repr__(self):
        return (f"Space({list(self.carrier.labels)}, {self.monad.name}, "
                f"{self.structure!r})")


def _check_compatible(*spaces):
    base = spaces[0]
    for s in spaces[1:]:
        if s.monad is not base.monad:
            raise CarrierMismatchError("spaces use different monads")
        if s.quantale is not base.quantale:
            raise CarrierMismatchError("spaces use different quantales")


# -- validation ----------------------------------------------------------------


def validate_space(space):
    """Check lax reflexivity and transitivity entrywise, with witnesses."""
    q = space.quantale
    a = space.structure
    monad = space.monad
    violations = []

    e = monad.unit(space.carrier)
    k = q.unit
    for x in space.carrier.labels:
        if not q.leq(k, a.get(e(x), x)):
            violations.append(("reflexivity", (x, a.get(e(x), x).token)))

    t_carrier = space.t_carrier
    tt_carrier = monad.apply_carrier(t_carrier)
    lifted = monad.lift_relation(a)
    m = monad.mult(space.carrier)
    for big in tt_carrier.labels:
        for x in space.carrier.labels:
            lhs = q.join(q.tensor(lifted.get(big, tx), a.get(tx, x))
                         for tx in t_carrier.labels)
            rhs = a.get(m(big), x)
            if not q.leq(lhs, rhs):
                violations.append(("transitivity",
                                   (big, x, lhs.token, rhs.token)))
    return ValidationReport.collect(violations)


# -- morphisms -----------------------------------------------------------------


def continuity_witness(f, x_space, y_space):
    """None when continuous, else the offending ``(tx, x)`` pair."""
    _check_compatible(x_space, y_space)
    if f.dom != x_space.carrier or f.cod != y_space.carrier:
        raise CarrierMismatchError("map endpoints do not match the spaces")
    q = x_space.quantale
    a, b = x_space.structure, y_space.structure
    tf = x_space.monad.apply_map(f)
    for tx in x_space.t_carrier.labels:
        for x in x_space.carrier.labels:
            if not q.leq(a.get(tx, x), b.get(tf(tx), f(x))):
                return (tx, x)
    return None


def is_continuous(f, x_space, y_space):
    return continuity_witness(f, x_space, y_space) is None


def is_fully_faithful(f, x_space, y_space):
    """Strict commutation: the structure equals its pullback along f."""
    _check_compatible(x_space, y_space)
    if f.dom != x_space.carrier or f.cod != y_space.carrier:
        raise CarrierMismatchError("map endpoints do not match the spaces")
    a, b = x_space.structure, y_space.structure
    tf = x_space.monad.apply_map(f)
    return all(
        a.get(tx, x) == b.get(tf(tx), f(x))
        for tx in x_space.t_carrier.labels
        for x in x_space.carrier.labels)


def all_maps(dom, cod):
    """Every total map between two carriers, in deterministic order."""
    for images in itertools.product(cod.labels, repeat=len(dom)):
        yield MapArrow(dom, cod, dict(zip(dom.labels, images)))


def continuous_maps(x_space, y_space):
    return [f for f in all_maps(x_space.carrier, y_space.carrier)
            if is_continuous(f, x_space, y_space)]


# -- liftings and constructions ------------------------------------------------


def subspace(space, labels):
    """Restrict to a subset of the carrier; the inclusion is fully faithful."""
    labels = list(labels)
    for x in labels:
        if x not in space.carrier:
            raise StructuralError(f"label {x!r} is not in the carrier")
    sub = Carrier(labels)
    incl = MapArrow(sub, space.carrier, {x: x for x in labels})
    t_incl = space.monad.apply_map(incl)
    t_sub = space.monad.apply_carrier(sub)
    structure = VRel.build(
        t_sub, sub, space.quantale,
        lambda tx, y: space.structure.get(t_incl(tx), incl(y)))
    return Space(sub, space.monad, space.quantale, structure), incl


def initial_structure(carrier, source, monad, quantale):
    """Greatest structure making every map of the source continuous.

    ``source`` is a list of ``(map, target_space)`` pairs sharing ``carrier``
    as domain; the empty source yields the indiscrete space.
    """
    for f, y in source:
        if f.dom != carrier:
            raise CarrierMismatchError("source map domain mismatch")
        if f.cod != y.carrier:
            raise CarrierMismatchError("source map codomain mismatch")
        if y.monad is not monad or y.quantale is not quantale:
            raise CarrierMismatchError("source space monad/quantale mismatch")
    t_carrier = monad.apply_carrier(carrier)
    lifted = [(monad.apply_map(f), f, y) for f, y in source]

    def entry(tx, x):
        return quantale.meet_all(
            y.structure.get(tf(tx), f(x)) for tf, f, y in lifted)

    return Space(carrier, monad, quantale,
                 VRel.build(t_carrier, carrier, quantale, entry))


def final_structure(carrier, sink, monad, quantale):
    """Least structure making every map of the sink continuous.

    Computed as the reflexive-transitive closure of the joined pushforward
    relations; restricted to identity-isomorphic monads and integral
    quantales, where the closure is exact.  The empty sink gives the
    discrete space.
    """
    if not monad.identity_isomorphic:
        raise UnsupportedOperationError(
            "final structures need an identity-isomorphic monad")
    for f, x in sink:
        if f.cod != carrier:
            raise CarrierMismatchError("sink map codomain mismatch")
        if f.dom != x.carrier:
            raise CarrierMismatchError("sink map domain mismatch")
        if x.monad is not monad or x.quantale is not quantale:
            raise CarrierMismatchError("sink space monad/quantale mismatch")
    bot = quantale.bottom
    rows = {x: {y: bot for y in carrier.labels} for x in carrier.labels}
    for f, x_space in sink:
        sq = x_space.square()
        for x1 in x_space.carrier.labels:
            for x2 in x_space.carrier.labels:
                tgt = rows[f(x1)]
                tgt[f(x2)] = quantale.join2(tgt[f(x2)], sq.get(x1, x2))
    joined = VRel(carrier, carrier, quantale,
                  [[rows[x][y] for y in carrier.labels]
                   for x in carrier.labels])
    closed = reflexive_transitive_closure(joined)
    return Space.from_square(carrier, monad, quantale, closed)


def product(x_space, y_space):
    """Binary product: initial lifting along the two projections."""
    _check_compatible(x_space, y_space)
    labels = [f"({x},{y})" for x in x_space.carrier.labels
              for y in y_space.carrier.labels]
    carrier = Carrier(labels)
    table1, table2 = {}, {}
    for x in x_space.carrier.labels:
        for y in y_space.carrier.labels:
            table1[f"({x},{y})"] = x
            table2[f"({x},{y})"] = y
    p1 = MapArrow(carrier, x_space.carrier, table1)
    p2 = MapArrow(carrier, y_space.carrier, table2)
    space = initial_structure(carrier, [(p1, x_space), (p2, y_space)],
                              x_space.monad, x_space.quantale)
    return space, (p1, p2)


def pairing(f, g, product_carrier):
    """The map ``x -> (f(x), g(x))`` into a product carrier."""
    if f.dom != g.dom:
        raise CarrierMismatchError("pairing needs a shared domain")
    return MapArrow(f.dom, product_carrier,
                    {x: f"({f(x)},{g(x)})" for x in f.dom.labels})


def coproduct_many(spaces):
    """Disjoint union with componentwise structure, bottom across summands."""
    if not spaces:
        raise PreconditionError("coproduct of an empty family: use a carrier")
    _check_compatible(*spaces)
    monad, quantale = spaces[0].monad, spaces[0].quantale
    if not monad.identity_isomorphic:
        raise UnsupportedOperationError(
            "coproducts need an identity-isomorphic monad")
    labels = [f"{i}:{x}" for i, s in enumerate(spaces)
              for x in s.carrier.labels]
    carrier = Carrier(labels)
    injections = [
        MapArrow(s.carrier, carrier, {x: f"{i}:{x}" for x in s.carrier.labels})
        for i, s in enumerate(spaces)]
    bot = quantale.bottom
    squares = [s.square() for s in spaces]

    def entry(p, r):
        i, x = p.split(":", 1)
        j, y = r.split(":", 1)
        if i != j:
            return bot
        return squares[int(i)].get(x, y)

    sq = VRel.build(carrier, carrier, quantale, entry)
    return Space.from_square(carrier, monad, quantale, sq), injections


def coproduct(x_space, y_space):
    space, injections = coproduct_many([x_space, y_space])
    return space, (injections[0], injections[1])


def copairing(maps, coproduct_carrier):
    """The map out of a disjoint union induced by one map per summand."""
    table = {}
    for i, f in enumerate(maps):
        for x in f.dom.labels:
            table[f"{i}:{x}"] = f(x)
    return MapArrow(coproduct_carrier, maps[0].cod, table) if maps else None


# -- predicates ----------------------------------------------------------------


def compactness_witness(space):
    """None when compact, else an element of TX missing a convergence point."""
    q = space.quantale
    a = space.structure
    for tx in space.t_carrier.labels:
        total = q.join(q.tensor(a.get(tx, x), a.get(tx, x))
                       for x in space.carrier.labels)
        if not q.leq(q.unit, total):
            return (tx,)
    return None


def is_compact(space):
    return compactness_witness(space) is None


def hausdorff_witness(space):
    """None when Hausdorff, else ``(x, y, tx)`` with a double convergence."""
    q = space.quantale
    a = space.structure
    bot, k = q.bottom, q.unit
    for x in space.carrier.labels:
        for y in space.carrier.labels:
            for tx in space.t_carrier.labels:
                value = q.tensor(a.get(tx, x), a.get(tx, y))
                if x != y and not q.eq(value, bot):
                    return (x, y, tx)
                if x == y and not q.leq(value, k):
                    return (x, y, tx)
    return None


def is_hausdorff(space):
    return hausdorff_witness(space) is None


def point_order_leq(space, y1, y2):
    """The induced preorder on points: unit below the unit-restricted value."""
    e = space.monad.unit(space.carrier)
    return space.quantale.leq(space.quantale.unit,
                              space.structure.get(e(y1), y2))


def separatedness_witness(space):
    """None when the point preorder is antisymmetric, else the cycle pair."""
    for y1 in space.carrier.labels:
        for y2 in space.carrier.labels:
            if y1 != y2 and point_order_leq(space, y1, y2) \
                    and point_order_leq(space, y2, y1):
                return (y1, y2)
    return None


def is_separated(space):
    return separatedness_witness(space) is None


def map_order_leq(f, g, x_space, y_space):
    """Pointwise order on parallel continuous maps into ``y_space``."""
    if f.dom != g.dom or f.cod != g.cod:
        raise CarrierMismatchError("maps are not parallel")
    if f.dom != x_space.carrier or f.cod != y_space.carrier:
        raise CarrierMismatchError("map endpoints do not match the spaces")
    q = y_space.quantale
    e = y_space.monad.unit(y_space.carrier)
    b = y_space.structure
    return all(q.leq(q.unit, b.get(e(f(x)), g(x)))
               for x in x_space.carrier.labels)


# -- canonical spaces ----------------------------------------------------------


def discrete_space(carrier, monad, quantale):
    """The least structure: the transposed unit embedding."""
    e_rel = from_map(monad.unit(carrier), quantale)
    return Space(carrier, monad, quantale, transpose(e_rel))


def indiscrete_space(carrier, monad, quantale):
    """The greatest structure: constantly top."""
    t_carrier = monad.apply_carrier(carrier)
    return Space(carrier, monad, quantale,
                 VRel.constant(t_carrier, carrier, quantale, quantale.top))


def sierpinski_space(quantale, monad, grid=None):
    """The quantale carrier with the residuation structure.

    For finite quantales the carrier is the whole quantale; analytic kinds
    need an explicit finite ``grid`` of values.  The structure entry at
    ``(tu, v)`` is ``hom(xi(tu), v)``, where the algebra ``xi`` is the
    retraction of the principal identification.
    """
    if quantale.is_finite:
        values = quantale.carrier_values()
    else:
        if not grid:
            raise StructuralError(
                "analytic quantales need an explicit value grid")
        values = list(grid)
        for v in values:
            quantale._check(v)
        if len(set(values)) != len(values):
            raise StructuralError("grid values must be distinct")
    tokens = [quantale.value_token(v) for v in values]
    carrier = Carrier(tokens)
    by_token = dict(zip(tokens, values))
    sq = VRel.build(carrier, carrier, quantale,
                    lambda u, v: quantale.hom(by_token[u], by_token[v]))
    return Space.from_square(carrier, monad, quantale, sq)


# -- exponentiability and exponentials ------------------------------------------


def exponentiability_witness(space, cap=10000):
    """Search the exponentiability inequality for a counterexample.

    Quantifies the pair of free values over the whole carrier when the
    quantale is finite, and over the meet/join/hom closure of the structure
    entries otherwise.  Returns ``(big, x, u, v)`` on failure, else None.
    """
    q = space.quantale
    a = space.structure
    monad = space.monad
    entries = [v for row in a.entries for v in row]
    values = generated_values(q, entries, cap)
    t_carrier = space.t_carrier
    tt_carrier = monad.apply_carrier(t_carrier)
    lifted = monad.lift_relation(a)
    m = monad.mult(space.carrier)
    for big in tt_carrier.labels:
        for x in space.carrier.labels:
            base = a.get(m(big), x)
            pairs = [(lifted.get(big, tx), a.get(tx, x))
                     for tx in t_carrier.labels]
            for u in values:
                for v in values:
                    rhs = q.meet(base, q.tensor(u, v))
                    lhs = q.join(q.tensor(q.meet(p, u), q.meet(s, v))
                                 for p, s in pairs)
                    if not q.leq(rhs, lhs):
                        return (big, x, u, v)
    return None


def is_exponentiable(space, cap=10000):
    return exponentiability_witness(space, cap) is None


def map_label(f):
    """Canonical carrier label of a map: its images in domain order."""
    return "[" + ",".join(f.graph()) + "]"


def function_space_join(quantale, pairs):
    """Largest value v with ``b /\\ v <= c`` for every pair ``(b, c)``.

    This is the join in the function-space structure; it equals the meet of
    the Heyting implications because meet distributes over joins here.
    """
    out = quantale.top
    for b, c in pairs:
        out = quantale.meet(out, quantale.heyting(b, c))
    return out


def exponential(y_space, z_space):
    """Function space on the continuous maps, for exponentiable ``y_space``.

    The structure between maps g, h is the largest value v such that
    ``b(y, y') /\\ v <= c(g(y), h(y'))`` for all points; only available for
    identity-isomorphic monads, where the defining condition collapses to
    point pairs.
    """
    _check_compatible(y_space, z_space)
    monad, q = y_space.monad, y_space.quantale
    if not monad.identity_isomorphic:
        raise UnsupportedOperationError(
            "exponentials need an identity-isomorphic monad")
    witness = exponentiability_witness(y_space)
    if witness is not None:
        raise PreconditionError(
            f"base space is not exponentiable, witness {witness}")
    maps = continuous_maps(y_space, z_space)
    carrier = Carrier(map_label(f) for f in maps)
    by_label = {map_label(f): f for f in maps}
    b, c = y_space.square(), z_space.square()
    points = y_space.carrier.labels

    def entry(gl, hl):
        g, h = by_label[gl], by_label[hl]
        return function_space_join(
            q, ((b.get(y1, y2), c.get(g(y1), h(y2)))
                for y1 in points for y2 in points))

    sq = VRel.build(carrier, carrier, q, entry)
    space = Space.from_square(carrier, monad, q, sq)
    return space, by_label


def evaluation_map(exp_space, by_label, y_space, z_space):
    """The evaluation out of ``exp x Y``, using the product label format."""
    prod, _ = product(exp_space, y_space)
    table = {}
    for gl in exp_space.carrier.labels:
        g = by_label[gl]
        for y in y_space.carrier.labels:
            table[f"({gl},{y})"] = g(y)
    return prod, MapArrow(prod.carrier, z_space.carrier, table)
