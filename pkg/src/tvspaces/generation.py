"""Class-generated structures: probes, coreflection, function spaces.

A probe class is a finite list of validated generating spaces.  The
coreflection replaces a structure by the final structure of all probes into
it; class-continuity, the function space of class-continuous maps, and the
specialization/expansion pair between plain quantale spaces and monad spaces
all live here.

Everything computed is an immutable value; the probe class keeps per-target
caches, so share one instance per thread or guard it externally when
parallelizing.
"""

import warnings

from .enumeration import compact_hausdorff_spaces, iso_canonical_key
from .errors import (
    BudgetExceededError,
    CarrierMismatchError,
    PreconditionError,
    StructuralError,
)
from .monad import identity_monad
from .space import (
    Space,
    all_maps,
    continuous_maps,
    exponential,
    exponentiability_witness,
    final_structure,
    initial_structure,
    is_continuous,
    map_label,
    product,
    sierpinski_space,
    validate_space,
)
from .vrel import Carrier, MapArrow, VRel

DEFAULT_MAP_BUDGET = 2_000_000


class ProbeSink:
    """A deduplicated list of probes: continuous maps out of class objects."""

    __slots__ = ("probes",)

    def __init__(self, probes):
        self.probes = tuple(probes)

    def __iter__(self):
        return iter(self.probes)

    def __len__(self):
        return len(self.probes)


class ProbeClass:
    """A finite generating class sharing one monad and quantale.

    Objects are validated at construction and deduplicated up to carrier
    relabeling, which leaves every final structure unchanged.  Probe sinks
    and coreflections are cached per target space.
    """

    def __init__(self, objects, mode="explicit", param=None):
        objects = list(objects)
        if not objects:
            raise PreconditionError("a probe class needs at least one object")
        monad, quantale = objects[0].monad, objects[0].quantale
        deduped, seen = [], set()
        for obj in objects:
            if obj.monad is not monad or obj.quantale is not quantale:
                raise CarrierMismatchError(
                    "probe class objects must share monad and quantale")
            report = validate_space(obj)
            if not report.passed:
                raise PreconditionError(
                    f"generating space is not a valid space: "
                    f"{report.violations[0]}")
            key = iso_canonical_key(obj)
            if key not in seen:
                seen.add(key)
                deduped.append(obj)
        if all(len(obj.carrier) == 0 for obj in deduped):
            raise PreconditionError(
                "a probe class needs a nonempty generating space")
        self.objects = tuple(deduped)
        self.mode = mode
        self.param = param
        self.monad = monad
        self.quantale = quantale
        self._probe_cache = {}
        self._coreflect_cache = {}
        self._exp_cache = {}
        self._hom_cache = {}

    # -- constructors -------------------------------------------------------

    @staticmethod
    def explicit(spaces):
        return ProbeClass(spaces, mode="explicit")

    @staticmethod
    def compact_hausdorff_upto(n, quantale, monad):
        objects = compact_hausdorff_spaces(quantale, monad, n)
        return ProbeClass(objects, mode="compact-hausdorff-upto", param=n)

    @staticmethod
    def sierpinski(quantale, monad, grid=None):
        return ProbeClass([sierpinski_space(quantale, monad, grid)],
                          mode="sierpinski")

    def spec_token(self):
        if self.mode == "compact-hausdorff-upto":
            return f"compact-hausdorff-upto:{self.param}"
        if self.mode == "sierpinski":
            return "sierpinski"
        return "explicit"

    # -- probes -------------------------------------------------------------

    def probes_into(self, space, budget=DEFAULT_MAP_BUDGET):
        """All probes over a space, deduplicated, in deterministic order.

        The candidate count is checked against the budget before anything is
        enumerated; overflowing raises instead of truncating.
        """
        key = space.cache_key()
        cached = self._probe_cache.get(key)
        if cached is not None:
            return cached
        n = len(space.carrier)
        total = sum(n ** len(obj.carrier) for obj in self.objects)
        if total > budget:
            raise BudgetExceededError(
                f"probe enumeration needs {total} candidate maps, "
                f"budget is {budget}")
        probes = []
        seen = set()
        for obj in self.objects:
            for f in all_maps(obj.carrier, space.carrier):
                if is_continuous(f, obj, space):
                    dedup = (obj.cache_key(), f.graph())
                    if dedup not in seen:
                        seen.add(dedup)
                        probes.append((f, obj))
        sink = ProbeSink(probes)
        self._probe_cache[key] = sink
        return sink

    def homs(self, i, j):
        """Continuous maps between class objects, cached."""
        key = (i, j)
        if key not in self._hom_cache:
            self._hom_cache[key] = continuous_maps(self.objects[i],
                                                   self.objects[j])
        return self._hom_cache[key]

    def coreflect(self, space, budget=DEFAULT_MAP_BUDGET):
        key = space.cache_key()
        cached = self._coreflect_cache.get(key)
        if cached is None:
            sink = self.probes_into(space, budget)
            cached = final_structure(space.carrier, list(sink),
                                     space.monad, space.quantale)
            self._coreflect_cache[key] = cached
        return cached

    def exponential_with(self, i, z_space):
        key = (i, z_space.cache_key())
        cached = self._exp_cache.get(key)
        if cached is None:
            cached = exponential(self.objects[i], z_space)
            self._exp_cache[key] = cached
        return cached


def enumerate_probes(probe_class, space, budget=DEFAULT_MAP_BUDGET):
    return probe_class.probes_into(space, budget)


def c_generated_structure(space, probe_class, budget=DEFAULT_MAP_BUDGET):
    """The coreflection: final structure with respect to all probes."""
    return probe_class.coreflect(space, budget)


def is_c_generated(space, probe_class, budget=DEFAULT_MAP_BUDGET):
    return space.structure == probe_class.coreflect(space, budget).structure


def is_c_continuous(f, x_space, y_space, probe_class,
                    budget=DEFAULT_MAP_BUDGET):
    """Class-continuity, computed probe-by-probe.

    Cross-checked against the equivalent formulation through the
    coreflection; the two can only disagree if an invariant is broken.
    """
    probewise = all(
        is_continuous(p.then(f), src, y_space)
        for p, src in probe_class.probes_into(x_space, budget))
    coreflected = is_continuous(f, probe_class.coreflect(x_space, budget),
                                y_space)
    if probewise != coreflected:
        raise RuntimeError(
            "class-continuity mismatch between the probe test and the "
            "coreflection test; final-structure invariant is broken")
    return probewise


def check_ep(probe_class):
    """Report on condition (EP) for the class.

    Returns ``(non_exponentiable, non_generated_products)`` where the first
    lists indices of class objects that fail the exponentiability criterion
    and the second lists pairs whose binary product is not class-generated.
    """
    non_expo = []
    for i, obj in enumerate(probe_class.objects):
        if exponentiability_witness(obj) is not None:
            non_expo.append(i)
    bad_products = []
    for i in range(len(probe_class.objects)):
        for j in range(i, len(probe_class.objects)):
            prod, _ = product(probe_class.objects[i], probe_class.objects[j])
            if not is_c_generated(prod, probe_class):
                bad_products.append((i, j))
    return non_expo, bad_products


def cmap_space(y_space, z_space, probe_class, budget=DEFAULT_MAP_BUDGET):
    """Function space of class-continuous maps with the initial structure.

    Every class object must be exponentiable; the product half of condition
    (EP) is checked and surfaced as a warning when it fails.  Returns the
    space together with a label-to-map dictionary for its carrier.
    """
    for i, obj in enumerate(probe_class.objects):
        witness = exponentiability_witness(obj)
        if witness is not None:
            raise PreconditionError(
                f"class object #{i} ({list(obj.carrier.labels)}) is not "
                f"exponentiable, witness {witness}")
    _, bad_products = check_ep(probe_class)
    if bad_products:
        warnings.warn(
            f"products of class objects {bad_products} are not "
            "class-generated; the currying bijection may fail",
            stacklevel=2)
    y_core = probe_class.coreflect(y_space, budget)
    maps = continuous_maps(y_core, z_space)
    carrier = Carrier(map_label(f) for f in maps)
    by_label = {map_label(f): f for f in maps}
    source = []
    seen_targets = set()
    for probe, src in probe_class.probes_into(y_space, budget):
        i = probe_class.objects.index(src)
        exp_space, exp_labels = probe_class.exponential_with(i, z_space)
        table = {map_label(g): map_label(probe.then(g)) for g in maps}
        arrow = MapArrow(carrier, exp_space.carrier, table)
        dedup = (i, arrow.graph())
        if dedup not in seen_targets:
            seen_targets.add(dedup)
            source.append((arrow, exp_space))
    space = initial_structure(carrier, source, y_space.monad,
                              y_space.quantale)
    return space, by_label


def transpose_cmap(f, x_space, y_space, z_space, probe_class, cmap=None):
    """Curry ``f : X x Y -> Z`` into a map ``X -> CMap(Y, Z)``.

    The domain of ``f`` must be the canonical product carrier.  When ``f``
    is class-continuous every slice lands in the function-space carrier; a
    slice that is not class-continuous has no carrier point and raises.
    """
    if cmap is None:
        cmap = cmap_space(y_space, z_space, probe_class)
    cmap_sp, by_label = cmap
    prod, _ = product(x_space, y_space)
    if f.dom != prod.carrier:
        raise CarrierMismatchError(
            "transpose needs the canonical product carrier as domain")
    if f.cod != z_space.carrier:
        raise CarrierMismatchError("transpose codomain mismatch")
    table = {}
    for x in x_space.carrier.labels:
        slice_map = MapArrow(
            y_space.carrier, z_space.carrier,
            {y: f(f"({x},{y})") for y in y_space.carrier.labels})
        label = map_label(slice_map)
        if label not in cmap_sp.carrier:
            raise StructuralError(
                f"slice at {x!r} is not class-continuous; the transpose "
                "does not land in the function space")
        table[x] = label
    return MapArrow(x_space.carrier, cmap_sp.carrier, table)


def untranspose_cmap(g, x_space, y_space, z_space, probe_class, cmap=None):
    """Uncurry ``g : X -> CMap(Y, Z)`` onto the canonical product carrier."""
    if cmap is None:
        cmap = cmap_space(y_space, z_space, probe_class)
    cmap_sp, by_label = cmap
    if g.dom != x_space.carrier or g.cod != cmap_sp.carrier:
        raise CarrierMismatchError("untranspose endpoints mismatch")
    prod, _ = product(x_space, y_space)
    table = {}
    for x in x_space.carrier.labels:
        slice_map = by_label[g(x)]
        for y in y_space.carrier.labels:
            table[f"({x},{y})"] = slice_map(y)
    return MapArrow(prod.carrier, z_space.carrier, table)


# -- the specialization / expansion pair ----------------------------------------


def specialization(space):
    """Restrict a monad space to the plain quantale space on its points."""
    return Space(space.carrier, identity_monad(), space.quantale,
                 space.square())


def alexandroff_expansion(v_space, monad):
    """Freely expand a plain quantale space along a monad.

    The structure is the lifted relation evaluated against the unit; for the
    shipped principal instances this is inverse to :func:`specialization`.
    """
    if v_space.monad is not identity_monad():
        raise CarrierMismatchError(
            "expansion starts from an identity-monad space")
    lifted = monad.lift_relation(v_space.structure)
    e = monad.unit(v_space.carrier)
    t_carrier = monad.apply_carrier(v_space.carrier)
    structure = VRel.build(t_carrier, v_space.carrier, v_space.quantale,
                           lambda ty, y: lifted.get(ty, e(y)))
    return Space(v_space.carrier, monad, v_space.quantale, structure)


def is_alexandroff(space, grid=None, budget=DEFAULT_MAP_BUDGET):
    """Generated by the one-object class of the residuation space."""
    cls = ProbeClass.sierpinski(space.quantale, space.monad, grid)
    return is_c_generated(space, cls, budget)
