"""The incidence algebra of a finite poset over an exact field.

Elements are sparse coefficient maps on the standard basis {e_xy : x <= y};
the product is convolution, and the Lie bracket is the commutator.  The
canonical ordered basis puts the diagonal vectors e_x first (in element
order) followed by the strict pairs sorted lexicographically by index;
matrices elsewhere in the package always use this order.
"""

from __future__ import annotations

from . import linalg
from .errors import MismatchedContext, NotDiagonal, NotStrictlyComparable
from .fields import Field
from .poset import Poset


class AlgebraElement:
    """Sparse element of the incidence algebra.

    ``coeffs`` maps comparable pairs (x, y) to nonzero scalars; absent pairs
    are zero.  Instances are treated as immutable values.
    """

    __slots__ = ("poset", "field", "coeffs")

    def __init__(self, poset: Poset, field: Field, coeffs=None):
        self.poset = poset
        self.field = field
        clean = {}
        if coeffs:
            for pair, value in coeffs.items():
                if pair not in poset.pair_index:
                    raise NotStrictlyComparable(
                        f"pair {pair!r} is not a comparable pair of the poset"
                    )
                if value:
                    clean[pair] = value
        self.coeffs = clean

    # -- constructors ----------------------------------------------------

    @staticmethod
    def zero(poset: Poset, field: Field) -> "AlgebraElement":
        return AlgebraElement(poset, field)

    @staticmethod
    def delta(poset: Poset, field: Field) -> "AlgebraElement":
        one = field.one
        return AlgebraElement(poset, field, {(x, x): one for x in poset.elements})

    @staticmethod
    def basis(poset: Poset, field: Field, x, y) -> "AlgebraElement":
        return AlgebraElement(poset, field, {(x, y): field.one})

    @staticmethod
    def diagonal(poset: Poset, field: Field, values) -> "AlgebraElement":
        """Diagonal element from a mapping label -> scalar."""
        return AlgebraElement(poset, field, {(x, x): v for x, v in values.items()})

    # -- queries -----------------------------------------------------------

    def coefficient(self, x, y):
        return self.coeffs.get((x, y), self.field.zero)

    @property
    def support(self):
        idx = self.poset.pair_index
        return tuple(sorted(self.coeffs, key=idx.__getitem__))

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_diagonal(self) -> bool:
        return all(x == y for x, y in self.coeffs)

    def strict_support(self):
        idx = self.poset.pair_index
        return tuple(sorted((p for p in self.coeffs if p[0] != p[1]),
                            key=idx.__getitem__))

    # -- arithmetic --------------------------------------------------------

    def _check_context(self, other: "AlgebraElement"):
        if other.poset != self.poset or other.field != self.field:
            raise MismatchedContext(
                "operands live over different posets or fields"
            )

    def __add__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        self._check_context(other)
        out = dict(self.coeffs)
        for p, v in other.coeffs.items():
            s = out.get(p)
            out[p] = v if s is None else s + v
        return AlgebraElement(self.poset, self.field, out)

    def __sub__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return AlgebraElement(
            self.poset, self.field, {p: -v for p, v in self.coeffs.items()}
        )

    def scale(self, scalar) -> "AlgebraElement":
        return AlgebraElement(
            self.poset, self.field, {p: scalar * v for p, v in self.coeffs.items()}
        )

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return convolve(self, other)
        return self.scale(other)

    def __rmul__(self, scalar):
        return self.scale(scalar)

    def bracket(self, other) -> "AlgebraElement":
        return bracket(self, other)

    def diagonal_part(self) -> "AlgebraElement":
        return AlgebraElement(
            self.poset, self.field,
            {p: v for p, v in self.coeffs.items() if p[0] == p[1]},
        )

    def radical_part(self) -> "AlgebraElement":
        return AlgebraElement(
            self.poset, self.field,
            {p: v for p, v in self.coeffs.items() if p[0] != p[1]},
        )

    # -- coordinates -------------------------------------------------------

    def to_vector(self):
        zero = self.field.zero
        return [self.coeffs.get(p, zero) for p in self.poset.comparable_pairs]

    @staticmethod
    def from_vector(poset: Poset, field: Field, vector) -> "AlgebraElement":
        return AlgebraElement(
            poset, field,
            {p: v for p, v in zip(poset.comparable_pairs, vector)},
        )

    def __eq__(self, other):
        return (
            isinstance(other, AlgebraElement)
            and other.poset == self.poset
            and other.field == self.field
            and other.coeffs == self.coeffs
        )

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for x, y in self.support:
            v = self.coeffs[(x, y)]
            name = f"e({x})" if x == y else f"e({x},{y})"
            parts.append(name if v == self.field.one else f"{v}*{name}")
        return " + ".join(parts)


def convolve(f: AlgebraElement, g: AlgebraElement) -> AlgebraElement:
    """Convolution product: (fg)(x, y) = sum over x <= z <= y of
    f(x, z) g(z, y)."""
    f._check_context(g)
    by_left = {}
    for (z, y), b in g.coeffs.items():
        by_left.setdefault(z, []).append((y, b))
    out = {}
    for (x, z), a in f.coeffs.items():
        for y, b in by_left.get(z, ()):
            p = (x, y)
            s = out.get(p)
            prod = a * b
            out[p] = prod if s is None else s + prod
    return AlgebraElement(f.poset, f.field, out)


def bracket(f: AlgebraElement, g: AlgebraElement) -> AlgebraElement:
    """Lie bracket fg - gf."""
    return convolve(f, g) - convolve(g, f)


def split_diag_jacobson(f: AlgebraElement):
    """Split f = f_D + f_J into diagonal and strictly-upper parts."""
    return f.diagonal_part(), f.radical_part()


def centralizer_of_diagonal(d: AlgebraElement):
    """Basis of the centralizer of a diagonal element: all e_x together
    with the e_xy whose endpoints carry equal d-values."""
    if not d.is_diagonal():
        raise NotDiagonal(f"{d!r} has strictly-upper support")
    poset, field = d.poset, d.field
    basis = [AlgebraElement.basis(poset, field, x, x) for x in poset.elements]
    for x, y in poset.strict_pairs:
        if d.coefficient(x, x) == d.coefficient(y, y):
            basis.append(AlgebraElement.basis(poset, field, x, y))
    return basis


def radical_center_basis(poset: Poset):
    """Strict pairs spanning the center of the radical: minimal x below
    maximal y."""
    mins = set(poset.minimal_elements)
    maxs = set(poset.maximal_elements)
    return [(x, y) for x, y in poset.strict_pairs if x in mins and y in maxs]


def commutator_action_matrix(f: AlgebraElement):
    """Matrix of g -> [f, g] over the canonical basis (column j is the
    bracket of f with the j-th basis vector)."""
    poset, field = f.poset, f.field
    dim = len(poset.comparable_pairs)
    cols = []
    for p in poset.comparable_pairs:
        e = AlgebraElement.basis(poset, field, *p)
        cols.append(bracket(f, e).to_vector())
    return [[cols[j][i] for j in range(dim)] for i in range(dim)]


def centralizer_kernel_basis(f: AlgebraElement):
    """Centralizer of f computed as the exact kernel of g -> [f, g]."""
    poset, field = f.poset, f.field
    kernel = linalg.kernel_basis(field, commutator_action_matrix(f))
    return [AlgebraElement.from_vector(poset, field, v) for v in kernel]


def interval_centralizer_identity(poset: Poset, x, y, field: Field) -> bool:
    """Check that the intersection of the centralizers of all indicator
    idempotents e_Y with Y containing {x, y} equals the diagonal subalgebra
    plus the span of e_xy.

    Used as a self-test of the invariant-extraction machinery: the kernel
    intersection is computed by exact linear algebra and compared against
    the predicted spanning set.
    """
    if not poset.less(x, y):
        raise NotStrictlyComparable(f"{x!r} < {y!r} is required")
    others = [z for z in poset.elements if z not in (x, y)]
    stacked = []
    for mask in range(1 << len(others)):
        subset = {x, y} | {z for k, z in enumerate(others) if mask >> k & 1}
        e_subset = AlgebraElement(
            poset, field, {(z, z): field.one for z in subset}
        )
        stacked.extend(commutator_action_matrix(e_subset))
    kernel = linalg.kernel_basis(field, stacked)
    expected = [AlgebraElement.basis(poset, field, z, z) for z in poset.elements]
    expected.append(AlgebraElement.basis(poset, field, x, y))
    if len(kernel) != len(expected):
        return False
    for e in expected:
        image = linalg.mat_vec(field, stacked, e.to_vector())
        if any(image):
            return False
    return True


def center_basis(poset: Poset, field: Field):
    """Basis of the center of the incidence algebra (the scalar multiples
    of the identity, when the poset is connected)."""
    stacked = []
    for p in poset.comparable_pairs:
        e = AlgebraElement.basis(poset, field, *p)
        stacked.extend(commutator_action_matrix(e))
    kernel = linalg.kernel_basis(field, stacked)
    return [AlgebraElement.from_vector(poset, field, v) for v in kernel]
