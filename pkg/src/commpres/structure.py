"""Structural predicates and builders on preserver data.

This module works with the simple maps attached to a preserver: a
bijection of the strict-pair basis (theta), scaling factors (sigma), chain
constants (c), and diagonal-valued shift data (alpha).  It decides
monotonicity on maximal chains, c-compatibility, chain constancy and
closed-walk admissibility, and it validates and builds shift maps S_alpha.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field

from .algebra import AlgebraElement
from .analysis import LinearEndomorphism
from .errors import (
    AdjacencyTransportViolation,
    InconsistentTriples,
    InvalidAlpha,
    MismatchedContext,
    NotDiagonalValued,
    ThetaNotBijective,
    ZeroC,
)
from .fields import Field
from .poset import Poset, Walk


class BasisBijection:
    """A bijection of the strict-pair basis, stored pair to pair."""

    __slots__ = ("poset", "forward", "backward")

    def __init__(self, poset: Poset, mapping):
        strict = set(poset.strict_pairs)
        forward = dict(mapping)
        if set(forward) != strict:
            raise ThetaNotBijective("domain must be exactly the strict pairs")
        if set(forward.values()) != strict:
            raise ThetaNotBijective("image must be exactly the strict pairs")
        self.poset = poset
        self.forward = forward
        self.backward = {v: k for k, v in forward.items()}

    @staticmethod
    def identity(poset: Poset) -> "BasisBijection":
        return BasisBijection(poset, {p: p for p in poset.strict_pairs})

    def __getitem__(self, pair):
        return self.forward[pair]

    def inverse_of(self, pair):
        return self.backward[pair]

    def items(self):
        return self.forward.items()

    def __eq__(self, other):
        return (
            isinstance(other, BasisBijection)
            and other.poset == self.poset
            and other.forward == self.forward
        )

    def __repr__(self):
        moved = {k: v for k, v in self.forward.items() if k != v}
        return f"BasisBijection({moved})" if moved else "BasisBijection(identity)"


class ShiftData:
    """A linear map into the diagonal subalgebra, stored as the diagonal
    images of all canonical basis vectors."""

    __slots__ = ("poset", "field", "images")

    def __init__(self, poset: Poset, field: Field, images=None):
        self.poset = poset
        self.field = field
        self.images = {}
        images = images or {}
        zero = AlgebraElement.zero(poset, field)
        for pair in poset.comparable_pairs:
            img = images.get(pair, zero)
            if img.poset != poset or img.field != field:
                raise MismatchedContext("shift image context mismatch")
            if not img.is_diagonal():
                raise NotDiagonalValued(
                    f"image of basis pair {pair!r} is not diagonal"
                )
            self.images[pair] = img

    @staticmethod
    def zero(poset: Poset, field: Field) -> "ShiftData":
        return ShiftData(poset, field)

    def image_of(self, pair) -> AlgebraElement:
        return self.images[pair]

    def apply(self, f: AlgebraElement) -> AlgebraElement:
        out = AlgebraElement.zero(self.poset, self.field)
        for pair, value in f.coeffs.items():
            out = out + self.images[pair].scale(value)
        return out

    def delta_image(self) -> AlgebraElement:
        out = AlgebraElement.zero(self.poset, self.field)
        for x in self.poset.elements:
            out = out + self.images[(x, x)]
        return out

    def __neg__(self) -> "ShiftData":
        return ShiftData(
            self.poset, self.field, {p: -img for p, img in self.images.items()}
        )

    def is_zero(self) -> bool:
        return all(img.is_zero() for img in self.images.values())

    def __eq__(self, other):
        return (
            isinstance(other, ShiftData)
            and other.poset == self.poset
            and other.field == self.field
            and other.images == self.images
        )


@dataclass
class ChainVerdict:
    chain: tuple
    direction: str | None  # "increasing" | "decreasing" | None
    image_chain: tuple | None


@dataclass
class MonotonicityReport:
    monotone: bool
    per_chain: list


@dataclass
class CompatibilityResult:
    compatible: bool
    c: dict | None
    conflict: tuple | None  # ((x,y,z), value, (x,y',z), value')


@dataclass
class ChainConstancyReport:
    constant: bool
    witness: tuple | None  # (chain, pair_a, pair_b)


@dataclass
class WalkSums:
    s_plus: object
    s_minus: object
    t_plus: object
    t_minus: object

    def balanced(self) -> bool:
        return self.s_plus - self.s_minus == self.t_plus - self.t_minus


@dataclass
class AdmissibilityReport:
    admissible: bool
    witness: tuple | None = None  # (Walk, z, WalkSums)


@dataclass
class AlphaReport:
    comm_preserver: bool
    strong: bool
    bijective: bool
    violations: dict = dataclass_field(default_factory=dict)


def theta_is_monotone(poset: Poset, theta: BasisBijection) -> MonotonicityReport:
    """Check that theta acts on every maximal chain as an order-preserving
    or order-reversing relabeling onto another maximal chain."""
    verdicts = []
    ok = True
    for chain in poset.maximal_chains():
        direction, image = None, None
        for reverse in (False, True):
            candidate = _image_chain(poset, theta, chain, reverse)
            if candidate is not None:
                direction = "decreasing" if reverse else "increasing"
                image = candidate
                break
        if direction is None:
            ok = False
        verdicts.append(ChainVerdict(tuple(chain), direction, image))
    return MonotonicityReport(monotone=ok, per_chain=verdicts)


def _image_chain(poset: Poset, theta: BasisBijection, chain, reverse: bool):
    m = len(chain)
    consecutive = [theta[(chain[i], chain[i + 1])] for i in range(m - 1)]
    ordered = list(reversed(consecutive)) if reverse else consecutive
    seq = [ordered[0][0], ordered[0][1]]
    for a, b in ordered[1:]:
        if a != seq[-1]:
            return None
        seq.append(b)
    if not poset.is_maximal_chain(seq):
        return None
    for i in range(m):
        for j in range(i + 1, m):
            expected = (
                (seq[m - 1 - j], seq[m - 1 - i]) if reverse else (seq[i], seq[j])
            )
            if theta[(chain[i], chain[j])] != expected:
                return None
    return tuple(seq)


def _pair_product(p, q):
    # e_ab e_cd = e_ad when b == c, else 0.
    return (p[0], q[1]) if p[1] == q[0] else None


def triple_sign(theta: BasisBijection, x, y, z):
    """+1 when theta(e_xz) is the product theta(e_xy) theta(e_yz), -1 for
    the opposite order; anything else breaks adjacency transport."""
    t_xy, t_yz, t_xz = theta[(x, y)], theta[(y, z)], theta[(x, z)]
    if _pair_product(t_xy, t_yz) == t_xz:
        return 1
    if _pair_product(t_yz, t_xy) == t_xz:
        return -1
    raise AdjacencyTransportViolation(
        f"neither composition order of the images of ({x},{y}) and ({y},{z}) "
        f"yields the image of ({x},{z})"
    )


def required_c(theta: BasisBijection, sigma, x, y, z):
    """The value of c(x, z) forced by the triple x < y < z."""
    sign = triple_sign(theta, x, y, z)
    value = sigma[(x, y)] * sigma[(y, z)] / sigma[(x, z)]
    return value if sign == 1 else -value


def check_c_compatibility(
    poset: Poset, theta: BasisBijection, sigma, cover_values=None
) -> CompatibilityResult:
    """Decide whether sigma is c-compatible with theta and produce the c.

    Triples x < y < z pin c(x, z); pairs of interval length one are not
    constrained, so each cover inherits the value of a constrained pair on
    a common maximal chain, and covers forming a bare two-element maximal
    chain stay free (caller-supplied, default one).
    """
    for pair in poset.strict_pairs:
        if not sigma[pair]:
            raise ZeroC(f"sigma{pair} must be nonzero")
    constrained = {}
    origin = {}
    for x, z in poset.strict_pairs:
        middles = poset.interval(x, z)[1:-1]
        for y in middles:
            value = required_c(theta, sigma, x, y, z)
            if not value:
                raise ZeroC(f"triple ({x},{y},{z}) forces c({x},{z}) = 0")
            if (x, z) in constrained and constrained[(x, z)] != value:
                return CompatibilityResult(
                    compatible=False,
                    c=None,
                    conflict=(origin[(x, z)], constrained[(x, z)], (x, y, z), value),
                )
            if (x, z) not in constrained:
                constrained[(x, z)] = value
                origin[(x, z)] = (x, y, z)

    c = dict(constrained)
    cover_values = cover_values or {}
    for cover in poset.covers:
        if cover in c:
            continue
        inherited = None
        for chain in poset.chains_through_pair(*cover):
            pairs = [
                (chain[i], chain[j])
                for i in range(len(chain))
                for j in range(i + 1, len(chain))
            ]
            for pair in pairs:
                if pair in constrained:
                    inherited = constrained[pair]
                    break
            if inherited is not None:
                break
        if inherited is not None:
            c[cover] = inherited
        else:
            c[cover] = cover_values.get(cover, _one_like(poset, sigma))
    return CompatibilityResult(compatible=True, c=c, conflict=None)


def _one_like(poset: Poset, sigma):
    sample = sigma[poset.strict_pairs[0]]
    return sample / sample


def require_c_compatible(poset: Poset, theta: BasisBijection, sigma, cover_values=None):
    result = check_c_compatibility(poset, theta, sigma, cover_values)
    if not result.compatible:
        t1, v1, t2, v2 = result.conflict
        raise InconsistentTriples(
            f"triple {t1} forces {v1} but triple {t2} forces {v2}"
        )
    return result.c


def check_c_constant_on_chains(poset: Poset, c) -> ChainConstancyReport:
    """True when all c-values on each maximal chain coincide."""
    for chain in poset.maximal_chains():
        pairs = [
            (chain[i], chain[j])
            for i in range(len(chain))
            for j in range(i + 1, len(chain))
        ]
        first = pairs[0]
        for pair in pairs[1:]:
            if c[pair] != c[first]:
                return ChainConstancyReport(False, (tuple(chain), first, pair))
    return ChainConstancyReport(True, None)


def walk_sums(poset: Poset, theta: BasisBijection, c, walk: Walk, z) -> WalkSums:
    """The four one-sided sums of chain constants attached to a closed walk
    and an element z.

    For each step of the walk, the cover it traverses is pulled back
    through theta; a preimage pair with lower endpoint z contributes to the
    s-sums and one with upper endpoint z to the t-sums, split by the
    direction of the step.
    """
    zero = _zero_like(poset, c)
    s_plus = s_minus = t_plus = t_minus = zero
    for a, b in walk.steps():
        ascending = poset.less(a, b)
        edge = (a, b) if ascending else (b, a)
        v, w = theta.inverse_of(edge)
        if v == z:
            if ascending:
                s_plus = s_plus + c[(z, w)]
            else:
                s_minus = s_minus + c[(z, w)]
        elif w == z:
            if ascending:
                t_plus = t_plus + c[(v, z)]
            else:
                t_minus = t_minus + c[(v, z)]
    return WalkSums(s_plus, s_minus, t_plus, t_minus)


def _zero_like(poset: Poset, c):
    sample = c[next(iter(c))]
    return sample - sample


def check_admissible(poset: Poset, theta: BasisBijection, c) -> AdmissibilityReport:
    """Closed-walk balance on a fundamental cycle basis.

    Each step of a walk contributes a value that depends only on the
    directed Hasse edge it traverses and flips sign under reversal, so the
    balance holds for every closed walk exactly when it holds on the
    fundamental cycles of the Hasse graph.
    """
    for cycle in poset.fundamental_cycles():
        for z in poset.elements:
            sums = walk_sums(poset, theta, c, cycle, z)
            if not sums.balanced():
                return AdmissibilityReport(False, (cycle, z, sums))
    return AdmissibilityReport(True, None)


def shift_condition_rows(poset: Poset, field: Field):
    """Homogeneous linear conditions on shift data, over unknowns indexed
    by (basis pair, element): the value of the image of the basis vector
    at that diagonal position.

    Rows encode: images of strict basis vectors centralize every other
    strict basis vector; images of e_z centralize e_xy whenever z is not
    an endpoint or the interval is longer than a cover; and the endpoint
    images act oppositely across each cover.
    """
    pairs = poset.comparable_pairs
    n = poset.n
    index = {}
    for k, pair in enumerate(pairs):
        for i, x in enumerate(poset.elements):
            index[(pair, x)] = k * n + i
    width = len(pairs) * n
    rows = []

    def blank():
        return [field.zero] * width

    one = field.one
    for p in poset.strict_pairs:
        for u, v in poset.strict_pairs:
            if (u, v) == p:
                continue
            row = blank()
            row[index[(p, u)]] = one
            row[index[(p, v)]] = -one
            rows.append(row)
    for z in poset.elements:
        for x, y in poset.strict_pairs:
            if z in (x, y) and poset.interval_length(x, y) == 1:
                continue
            row = blank()
            row[index[((z, z), x)]] = one
            row[index[((z, z), y)]] = -one
            rows.append(row)
    for x, y in poset.strict_pairs:
        if poset.interval_length(x, y) != 1:
            continue
        row = blank()
        row[index[((x, x), x)]] = row[index[((x, x), x)]] + one
        row[index[((x, x), y)]] = row[index[((x, x), y)]] - one
        row[index[((y, y), x)]] = row[index[((y, y), x)]] + one
        row[index[((y, y), y)]] = row[index[((y, y), y)]] - one
        rows.append(row)
    return rows, index


def validate_alpha(poset: Poset, alpha: ShiftData) -> AlphaReport:
    """Evaluate the five shift-map conditions exactly.

    The first three decide whether S_alpha preserves commutativity; given
    that, the fourth decides strongness and, given strongness, the fifth
    decides bijectivity.  All verdicts and the individual violations are
    reported.
    """
    field = alpha.field
    violations = {"centralize": [], "off_pair": [], "cover_balance": [],
                  "strongness": [], "unit": []}

    for p in poset.strict_pairs:
        img = alpha.image_of(p)
        for q in poset.strict_pairs:
            if q == p:
                continue
            u, v = q
            if img.coefficient(u, u) != img.coefficient(v, v):
                violations["centralize"].append((p, q))

    for z in poset.elements:
        img = alpha.image_of((z, z))
        for x, y in poset.strict_pairs:
            if z in (x, y) and poset.interval_length(x, y) == 1:
                continue
            if img.coefficient(x, x) != img.coefficient(y, y):
                violations["off_pair"].append((z, (x, y)))

    for x, y in poset.strict_pairs:
        if poset.interval_length(x, y) != 1:
            continue
        ax = alpha.image_of((x, x))
        ay = alpha.image_of((y, y))
        lhs = ax.coefficient(x, x) - ax.coefficient(y, y)
        rhs = ay.coefficient(y, y) - ay.coefficient(x, x)
        if lhs != rhs:
            violations["cover_balance"].append((x, y))
        if lhs == -field.one:
            violations["strongness"].append((x, y))

    if alpha.delta_image() == -AlgebraElement.delta(poset, field):
        violations["unit"].append("alpha(delta) = -delta")

    comm = not (
        violations["centralize"] or violations["off_pair"]
        or violations["cover_balance"]
    )
    strong = comm and not violations["strongness"]
    bijective = strong and not violations["unit"]
    return AlphaReport(comm, strong, bijective, violations)


def shift_endomorphism(poset: Poset, alpha: ShiftData) -> LinearEndomorphism:
    """The raw linear map f -> f + alpha(f), without validation."""
    images = {}
    for pair in poset.comparable_pairs:
        e = AlgebraElement.basis(poset, alpha.field, *pair)
        images[pair] = e + alpha.image_of(pair)
    return LinearEndomorphism.from_basis_images(poset, alpha.field, images)


def build_shift(poset: Poset, alpha: ShiftData) -> LinearEndomorphism:
    """The shift map S_alpha; requires the commutation conditions.

    When alpha additionally satisfies the unit condition the inverse is
    the shift by -alpha.
    """
    report = validate_alpha(poset, alpha)
    if not report.comm_preserver:
        raise InvalidAlpha(
            f"shift conditions violated: {_first_violation(report)}"
        )
    return shift_endomorphism(poset, alpha)


def _first_violation(report: AlphaReport):
    for key in ("centralize", "off_pair", "cover_balance"):
        if report.violations[key]:
            return f"{key} at {report.violations[key][0]}"
    return "unknown"
