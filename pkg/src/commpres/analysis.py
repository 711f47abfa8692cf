"""Linear endomorphisms of the incidence algebra and preserver analysis.

This module decides, exactly, whether a linear self-map preserves
commutativity, whether it does so strongly, and whether it preserves the
diagonal subalgebra; and it reads off the invariants (theta, sigma, nu, c)
of a bijective strong commutativity preserver that preserves diagonality.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field

from . import linalg
from .algebra import AlgebraElement, bracket
from .errors import (
    MismatchedContext,
    NotBijective,
    NotCommPreserver,
    NotPureDecomposable,
    ThetaNotBijective,
    ZeroC,
)
from .fields import Field
from .poset import Poset


class LinearEndomorphism:
    """A linear self-map of the incidence algebra, stored as a square
    matrix over the canonical ordered basis (column j holds the
    coordinates of the image of basis vector j)."""

    __slots__ = ("poset", "field", "matrix", "_images")

    def __init__(self, poset: Poset, field: Field, matrix):
        dim = len(poset.comparable_pairs)
        if len(matrix) != dim or any(len(row) != dim for row in matrix):
            raise MismatchedContext(
                f"matrix must be {dim}x{dim} for this poset"
            )
        self.poset = poset
        self.field = field
        self.matrix = [list(row) for row in matrix]
        self._images = None

    @staticmethod
    def identity(poset: Poset, field: Field) -> "LinearEndomorphism":
        dim = len(poset.comparable_pairs)
        return LinearEndomorphism(poset, field, linalg.identity_matrix(field, dim))

    @staticmethod
    def from_basis_images(poset: Poset, field: Field, images) -> "LinearEndomorphism":
        """Build from a mapping comparable pair -> AlgebraElement."""
        dim = len(poset.comparable_pairs)
        matrix = linalg.zeros_matrix(field, dim, dim)
        for j, pair in enumerate(poset.comparable_pairs):
            if pair not in images:
                raise MismatchedContext(f"missing image for basis pair {pair!r}")
            vec = images[pair].to_vector()
            for i in range(dim):
                matrix[i][j] = vec[i]
        return LinearEndomorphism(poset, field, matrix)

    def apply(self, f: AlgebraElement) -> AlgebraElement:
        if f.poset != self.poset or f.field != self.field:
            raise MismatchedContext("element and endomorphism contexts differ")
        vec = linalg.mat_vec(self.field, self.matrix, f.to_vector())
        return AlgebraElement.from_vector(self.poset, self.field, vec)

    def basis_images(self):
        """Images of all canonical basis vectors, cached."""
        if self._images is None:
            cols = {}
            for j, pair in enumerate(self.poset.comparable_pairs):
                vec = [row[j] for row in self.matrix]
                cols[pair] = AlgebraElement.from_vector(self.poset, self.field, vec)
            self._images = cols
        return self._images

    def image_of_basis(self, pair) -> AlgebraElement:
        return self.basis_images()[pair]

    def compose(self, other: "LinearEndomorphism") -> "LinearEndomorphism":
        """self after other."""
        if other.poset != self.poset or other.field != self.field:
            raise MismatchedContext("cannot compose maps over different contexts")
        return LinearEndomorphism(
            self.poset, self.field,
            linalg.mat_mul(self.field, self.matrix, other.matrix),
        )

    def rank(self) -> int:
        return linalg.rank(self.field, self.matrix)

    def is_bijective(self) -> bool:
        return self.rank() == len(self.poset.comparable_pairs)

    def inverse(self) -> "LinearEndomorphism":
        inv = linalg.inverse(self.field, self.matrix)
        if inv is None:
            raise NotBijective("endomorphism is singular")
        return LinearEndomorphism(self.poset, self.field, inv)

    def __eq__(self, other):
        return (
            isinstance(other, LinearEndomorphism)
            and other.poset == self.poset
            and other.field == self.field
            and other.matrix == self.matrix
        )

    def __repr__(self):
        return f"LinearEndomorphism(dim={len(self.matrix)}, field={self.field!r})"


@dataclass
class CommutativityReport:
    """Outcome of the basis-level commutativity-preservation test.

    ``pair_violations`` holds pairs ((x, y), (u, v)) of commuting basis
    vectors whose images fail to commute.  ``chain_violations`` holds
    triples (x, z, y): the bracket attached to the splitting of [x, y] at z
    differs from the reference bracket of (e_x, e_xy); z == y records a
    mismatch of the two endpoint brackets.
    """

    holds: bool
    pair_violations: list = dataclass_field(default_factory=list)
    chain_violations: list = dataclass_field(default_factory=list)


@dataclass
class StrongnessVerdict:
    strong: bool
    method: str  # "li-criterion" | "brute-force"
    witness: tuple | None = None


@dataclass
class PreserverInvariants:
    """Basis data of a bijective strong diagonality-preserving map:
    theta maps strict pairs bijectively, sigma holds the nonzero strict
    coefficients, nu the diagonal residues, and c the chain constants."""

    theta: dict
    sigma: dict
    nu: dict
    c: dict


def apply(endo: LinearEndomorphism, f: AlgebraElement) -> AlgebraElement:
    return endo.apply(f)


def is_diagonality_preserver(endo: LinearEndomorphism) -> bool:
    """True when every diagonal basis vector maps into the diagonal
    subalgebra."""
    images = endo.basis_images()
    return all(
        images[(x, x)].is_diagonal() for x in endo.poset.elements
    )


def _basis_brackets_commute(p, q) -> bool:
    # [e_ab, e_cd] = delta(b, c) e_ad - delta(d, a) e_cb; for distinct
    # comparable pairs this vanishes exactly when b != c and d != a.
    (a, b), (c, d) = p, q
    if p == q:
        return True
    return b != c and d != a


def check_commutativity_preserver(endo: LinearEndomorphism) -> CommutativityReport:
    """Evaluate the two basis-level conditions that characterize
    commutativity preservers.

    Condition one: images of commuting basis vectors commute.  Condition
    two: for every strict pair x < y, the brackets of the image pairs
    (e_x, e_xy), (e_xz, e_zy) for x < z < y, and (e_xy, e_y) all coincide.
    """
    poset = endo.poset
    images = endo.basis_images()
    pairs = poset.comparable_pairs
    report = CommutativityReport(holds=True)

    for i, p in enumerate(pairs):
        for q in pairs[i + 1:]:
            if not _basis_brackets_commute(p, q):
                continue
            if not bracket(images[p], images[q]).is_zero():
                report.holds = False
                report.pair_violations.append((p, q))

    for x, y in poset.strict_pairs:
        reference = bracket(images[(x, x)], images[(x, y)])
        if bracket(images[(x, y)], images[(y, y)]) != reference:
            report.holds = False
            report.chain_violations.append((x, y, y))
        for z in poset.interval(x, y)[1:-1]:
            if bracket(images[(x, z)], images[(z, y)]) != reference:
                report.holds = False
                report.chain_violations.append((x, z, y))
    return report


def _li_family_kernel(endo: LinearEndomorphism):
    """Kernel of w -> sum of w_xy [phi(e_x), phi(e_xy)] over strict pairs.

    An empty kernel means the bracket family is linearly independent.
    """
    poset, fld = endo.poset, endo.field
    images = endo.basis_images()
    columns = []
    for x, y in poset.strict_pairs:
        columns.append(bracket(images[(x, x)], images[(x, y)]).to_vector())
    dim = len(poset.comparable_pairs)
    matrix = [[columns[j][i] for j in range(len(columns))] for i in range(dim)]
    return linalg.kernel_basis(fld, matrix)


def _realizable_kernel_vector(endo: LinearEndomorphism, kernel):
    """Search for f, g with [f, g] nonzero inside the span of the kernel
    vectors.  Exhaustive over the finite field; returns (f, g) or None."""
    poset, fld = endo.poset, endo.field
    strict = poset.strict_pairs
    values = fld.elements()
    p = len(values)

    # Fast path: a kernel vector realizable through a diagonal separator.
    count = p ** len(kernel)
    for mask in range(1, count):
        coeffs = []
        m = mask
        for _ in kernel:
            coeffs.append(values[m % p])
            m //= p
        w = [fld.zero] * len(strict)
        for cf, vec in zip(coeffs, kernel):
            if cf:
                w = [a + cf * b for a, b in zip(w, vec)]
        if not any(w):
            continue
        target = AlgebraElement(poset, fld, dict(zip(strict, w)))
        witness = _realize_via_diagonal(poset, fld, target)
        if witness is not None:
            return witness

    # Complete scan: does the image of some ad_f meet the kernel span?
    from .algebra import commutator_action_matrix

    dim = len(poset.comparable_pairs)
    kernel_full = []
    for vec in kernel:
        as_map = dict(zip(strict, vec))
        kernel_full.append(
            AlgebraElement(poset, fld, as_map).to_vector()
        )
    for fmask in range(p ** dim):
        coeffs = []
        m = fmask
        for _ in range(dim):
            coeffs.append(values[m % p])
            m //= p
        if not any(coeffs):
            continue
        f = AlgebraElement.from_vector(poset, fld, coeffs)
        ad = commutator_action_matrix(f)
        augmented = [
            ad[i] + [kv[i] for kv in kernel_full] for i in range(dim)
        ]
        null = linalg.kernel_basis(fld, augmented)
        for vec in null:
            if any(vec[dim:]):
                # ad_f(g) = -(kernel combination) is a nonzero commutator
                # annihilated by the bracket family.
                g = AlgebraElement.from_vector(poset, fld, vec[:dim])
                if not bracket(f, g).is_zero():
                    return (f, g)
    return None


def _realize_via_diagonal(poset: Poset, fld: Field, target: AlgebraElement):
    n = poset.n
    values = fld.elements()
    for mask in range(len(values) ** n):
        assignment = {}
        m = mask
        for x in poset.elements:
            assignment[x] = values[m % len(values)]
            m //= len(values)
        if not all(assignment[x] != assignment[y] for x, y in target.strict_support()):
            continue
        d = AlgebraElement.diagonal(poset, fld, assignment)
        g_coeffs = {}
        for (x, y), v in target.coeffs.items():
            g_coeffs[(x, y)] = v / (assignment[y] - assignment[x])
        g = AlgebraElement(poset, fld, g_coeffs)
        if bracket(g, d) == target:
            return (g, d)
    return None


def is_strong_preserver(endo: LinearEndomorphism) -> StrongnessVerdict:
    """Decide strongness of a commutativity preserver.

    Over the rationals, or whenever the field has at least as many elements
    as the poset, strongness is equivalent to linear independence of the
    family {[phi(e_x), phi(e_xy)] : x < y}: every strictly-upper
    coefficient vector arises as a commutator with an injective diagonal,
    so a dependence yields a witness pair.  Over smaller fields linear
    independence is still sufficient, but a dependent family is settled by
    exhaustive search, and the verdict records which method decided.
    """
    if not check_commutativity_preserver(endo).holds:
        raise NotCommPreserver("map does not preserve commutativity")
    fld = endo.field
    kernel = _li_family_kernel(endo)
    if not kernel:
        return StrongnessVerdict(strong=True, method="li-criterion")
    if fld.is_rational or fld.size >= endo.poset.n:
        return StrongnessVerdict(strong=False, method="li-criterion")
    witness = _realizable_kernel_vector(endo, kernel)
    if witness is None:
        return StrongnessVerdict(strong=True, method="brute-force")
    return StrongnessVerdict(strong=False, method="brute-force", witness=witness)


def bijective_via_unit_image(endo: LinearEndomorphism) -> bool:
    """Injectivity test for strong preservers through the image of the
    identity element; cross-validated against the rank test."""
    delta = AlgebraElement.delta(endo.poset, endo.field)
    return not endo.apply(delta).is_zero()


def extract_invariants(endo: LinearEndomorphism) -> PreserverInvariants:
    """Read off (theta, sigma, nu, c) from a bijective strong
    diagonality-preserving commutativity preserver.

    The image of each strict basis vector must be one nonzero strict-pair
    term plus a diagonal element; anything else signals that the
    hypotheses fail and raises a diagnostic error instead of projecting.
    """
    poset, fld = endo.poset, endo.field
    images = endo.basis_images()

    for x in poset.elements:
        img = images[(x, x)]
        if not img.is_diagonal():
            raise NotPureDecomposable(
                f"image of e_{x} is not diagonal; diagonality is not preserved"
            )

    theta, sigma, nu = {}, {}, {}
    seen = {}
    for pair in poset.strict_pairs:
        img = images[pair]
        strict = img.strict_support()
        if len(strict) != 1:
            raise NotPureDecomposable(
                f"image of e_{pair} has {len(strict)} strict-pair terms, expected 1"
            )
        target = strict[0]
        if target in seen:
            raise ThetaNotBijective(
                f"strict pairs {seen[target]} and {pair} both map onto {target}"
            )
        seen[target] = pair
        theta[pair] = target
        sigma[pair] = img.coefficient(*target)
        nu[pair] = img.diagonal_part()

    c = {}
    for pair in poset.strict_pairs:
        u, v = theta[pair]
        x = pair[0]
        img_x = images[(x, x)]
        value = img_x.coefficient(u, u) - img_x.coefficient(v, v)
        if not value:
            raise ZeroC(
                f"chain constant at {pair} vanished; the map is not a strong "
                f"diagonality-preserving commutativity preserver"
            )
        c[pair] = value
    return PreserverInvariants(theta=theta, sigma=sigma, nu=nu, c=c)
