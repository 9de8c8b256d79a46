"""Exhaustive enumeration of structures, spaces and canonical forms.

Only finite quantales can be enumerated; all helpers here assume a monad
that is carrier-isomorphic to the identity, so a structure is determined by
its square form.
"""

import itertools

from .errors import UnsupportedOperationError
from .space import Space, discrete_space, is_compact, is_hausdorff
from .vrel import Carrier, VRel

_LETTERS = "abcdefghij"


def standard_carrier(size):
    return Carrier(_LETTERS[:size])


def square_is_lax_algebra(quantale, labels, cell):
    """Validity of a square matrix as a reflexive transitive relation."""
    k = quantale.unit
    for x in labels:
        if not quantale.leq(k, cell[x, x]):
            return False
    for x in labels:
        for y in labels:
            for z in labels:
                if not quantale.leq(quantale.tensor(cell[x, y], cell[y, z]),
                                    cell[x, z]):
                    return False
    return True


def all_valid_spaces(quantale, monad, carrier):
    """Every lax-algebra structure on the carrier, in deterministic order."""
    if not quantale.is_finite:
        raise UnsupportedOperationError(
            "cannot enumerate structures over an infinite quantale")
    if not monad.identity_isomorphic:
        raise UnsupportedOperationError(
            "enumeration needs an identity-isomorphic monad")
    labels = carrier.labels
    values = quantale.carrier_values()
    diag_choices = [v for v in values if quantale.leq(quantale.unit, v)]
    off_cells = [(x, y) for x in labels for y in labels if x != y]
    diag_cells = [(x, x) for x in labels]
    for diag in itertools.product(diag_choices, repeat=len(diag_cells)):
        for off in itertools.product(values, repeat=len(off_cells)):
            cell = dict(zip(diag_cells, diag))
            cell.update(zip(off_cells, off))
            if not square_is_lax_algebra(quantale, labels, cell):
                continue
            sq = VRel(carrier, carrier, quantale,
                      [[cell[x, y] for y in labels] for x in labels])
            yield Space.from_square(carrier, monad, quantale, sq)


def all_valid_spaces_upto(quantale, monad, max_size, include_empty=True):
    start = 0 if include_empty else 1
    for size in range(start, max_size + 1):
        yield from all_valid_spaces(quantale, monad, standard_carrier(size))


def iso_canonical_key(space):
    """Least token matrix of the square form over carrier permutations."""
    sq = space.square().tokens()
    n = len(space.carrier)
    best = None
    for perm in itertools.permutations(range(n)):
        candidate = tuple(tuple(sq[perm[i]][perm[j]] for j in range(n))
                          for i in range(n))
        if best is None or candidate < best:
            best = candidate
    return (n, best)


def compact_hausdorff_spaces(quantale, monad, max_size):
    """All compact Hausdorff spaces on 1..max_size points, up to isomorphism.

    Finite quantales are enumerated honestly and filtered; the analytic cost
    quantales use the fact that over an integral quantale with a principal
    monad the compact Hausdorff spaces are exactly the discrete ones.
    """
    result = []
    if quantale.is_finite:
        seen = set()
        for size in range(1, max_size + 1):
            for space in all_valid_spaces(quantale, monad,
                                          standard_carrier(size)):
                if not (is_compact(space) and is_hausdorff(space)):
                    continue
                key = iso_canonical_key(space)
                if key not in seen:
                    seen.add(key)
                    result.append(space)
    else:
        for size in range(1, max_size + 1):
            result.append(discrete_space(standard_carrier(size), monad,
                                         quantale))
    return result
