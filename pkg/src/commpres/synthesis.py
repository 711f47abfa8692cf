"""Synthesis and decomposition of diagonality-preserving strong
commutativity preservers.

``build_tau`` constructs the pure preserver attached to a quadruple
(theta, sigma, c, kappa) by propagating diagonal values along walks of the
Hasse graph; ``decompose`` factors a bijective strong diagonality
preserver into a shift map composed with such a pure preserver;
``is_lie_type`` recognizes the maps that split as a scalar multiple of a
Lie automorphism plus a central-valued map; and ``explore_conjecture``
searches for a shift and an inner conjugation turning an arbitrary
bijective strong preserver into a diagonality preserver.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .algebra import AlgebraElement, bracket, convolve
from .analysis import (
    LinearEndomorphism,
    check_commutativity_preserver,
    extract_invariants,
    is_diagonality_preserver,
    is_strong_preserver,
)
from .errors import (
    HypothesesNotMet,
    PreconditionFailed,
    WellDefinednessViolation,
)
from .fields import Field
from .poset import Poset
from .structure import (
    BasisBijection,
    ShiftData,
    build_shift,
    check_admissible,
    check_c_constant_on_chains,
    required_c,
    shift_condition_rows,
    shift_endomorphism,
    theta_is_monotone,
    validate_alpha,
)


@dataclass
class Decomposition:
    """Shift-then-pure factorization data: the input map equals the shift
    by alpha composed with the pure preserver of (theta, sigma, c, kappa)."""

    alpha: ShiftData
    theta: BasisBijection
    sigma: dict
    c: dict
    kappa: tuple


@dataclass
class LieTypeVerdict:
    lie_type: bool
    k: object | None = None
    psi: LinearEndomorphism | None = None
    xi: LinearEndomorphism | None = None
    reasons: tuple = ()


@dataclass
class ConjectureSearchResult:
    found: bool
    alpha: ShiftData | None = None
    conjugator: AlgebraElement | None = None


def validate_kappa(field: Field, kappa, n: int):
    kappa = tuple(field.of(k) if isinstance(k, int) else k for k in kappa)
    if len(kappa) != n:
        raise PreconditionFailed("kappa", f"expected {n} entries, got {len(kappa)}")
    total = field.zero
    for k in kappa:
        total = total + k
    if not total:
        raise PreconditionFailed("kappa", "entries must not sum to zero")
    return kappa


def _propagated_offsets(poset: Poset, theta: BasisBijection, c, walk):
    """Per-element offset of diagonal values accumulated along a walk.

    Each step pulls its cover back through theta to a pair (v, w); the
    offset of v drops by c(v, w) and the offset of w rises by it when the
    step ascends, and conversely when it descends.
    """
    zero = c[next(iter(c))] - c[next(iter(c))]
    offsets = {z: zero for z in poset.elements}
    for a, b in walk.steps():
        ascending = poset.less(a, b)
        edge = (a, b) if ascending else (b, a)
        v, w = theta.inverse_of(edge)
        value = c[(v, w)]
        if ascending:
            offsets[v] = offsets[v] - value
            offsets[w] = offsets[w] + value
        else:
            offsets[v] = offsets[v] + value
            offsets[w] = offsets[w] - value
    return offsets


def build_tau(
    poset: Poset,
    theta: BasisBijection,
    sigma,
    c,
    kappa,
    field: Field | None = None,
) -> LinearEndomorphism:
    """The pure preserver with radical action sigma * theta and diagonal
    action seeded by kappa at the first element.

    Preconditions are all verified: theta monotone on maximal chains,
    sigma c-compatible with theta for the supplied c, c nonzero and
    constant on maximal chains, (theta, c) admissible, and kappa summing
    to a nonzero scalar.  The diagonal part is propagated from the first
    element along canonical BFS walks; a second walk family rooted at the
    last element re-derives it as a guard against walk dependence, and the
    finished map is checked to be a strong bijective diagonality-preserving
    commutativity preserver before it is returned.
    """
    if field is None:
        field = _infer_field(sigma, c, kappa)
    kappa = validate_kappa(field, kappa, poset.n)

    for pair in poset.strict_pairs:
        if pair not in sigma or not sigma[pair]:
            raise PreconditionFailed("sigma", f"nonzero value required at {pair}")
        if pair not in c or not c[pair]:
            raise PreconditionFailed("c", f"nonzero value required at {pair}")

    mono = theta_is_monotone(poset, theta)
    if not mono.monotone:
        bad = [v.chain for v in mono.per_chain if v.direction is None]
        raise PreconditionFailed("theta monotone on maximal chains", bad)

    for x, z in poset.strict_pairs:
        for y in poset.interval(x, z)[1:-1]:
            if c[(x, z)] != required_c(theta, sigma, x, y, z):
                raise PreconditionFailed(
                    "sigma c-compatible with theta",
                    f"triple ({x},{y},{z}) forces c({x},{z}) = "
                    f"{required_c(theta, sigma, x, y, z)}, got {c[(x, z)]}",
                )

    constancy = check_c_constant_on_chains(poset, c)
    if not constancy.constant:
        raise PreconditionFailed("c constant on maximal chains", constancy.witness)

    admissible = check_admissible(poset, theta, c)
    if not admissible.admissible:
        cycle, z, sums = admissible.witness
        raise PreconditionFailed(
            "(theta, c) admissible",
            f"walk {list(cycle.vertices)} unbalanced at z={z}",
        )

    root = poset.elements[0]
    diag_values = {}
    for v in poset.elements:
        offsets = _propagated_offsets(poset, theta, c, poset.find_walk(root, v))
        for i, z in enumerate(poset.elements):
            diag_values[(z, v)] = kappa[i] + offsets[z]

    other_root = poset.elements[-1]
    for v in poset.elements:
        walk = poset.tree_walk(other_root, root, v)
        offsets = _propagated_offsets(poset, theta, c, walk)
        for i, z in enumerate(poset.elements):
            if diag_values[(z, v)] != kappa[i] + offsets[z]:
                raise WellDefinednessViolation(
                    f"diagonal value of e_{z} at {v} depends on the walk; "
                    f"the admissibility reduction is broken"
                )

    images = {}
    for i, z in enumerate(poset.elements):
        images[(z, z)] = AlgebraElement(
            poset, field,
            {(v, v): diag_values[(z, v)] for v in poset.elements},
        )
    for pair in poset.strict_pairs:
        images[pair] = AlgebraElement.basis(poset, field, *theta[pair]).scale(
            sigma[pair]
        )
    tau = LinearEndomorphism.from_basis_images(poset, field, images)

    if not tau.is_bijective():
        raise RuntimeError("synthesized map is not bijective; internal error")
    if not is_diagonality_preserver(tau):
        raise RuntimeError("synthesized map does not preserve diagonality")
    report = check_commutativity_preserver(tau)
    if not report.holds:
        raise RuntimeError(
            f"synthesized map is not a commutativity preserver: "
            f"{report.pair_violations[:1]}{report.chain_violations[:1]}"
        )
    if not is_strong_preserver(tau).strong:
        raise RuntimeError("synthesized map is not strong; internal error")
    return tau


def _infer_field(sigma, c, kappa):
    from fractions import Fraction

    from .fields import prime_field, rationals

    for value in list(sigma.values()) + list(c.values()) + list(kappa):
        if isinstance(value, Fraction):
            return rationals()
        p = getattr(value, "p", None)
        if p is not None:
            return prime_field(p)
    return rationals()


def _require_hypotheses(endo: LinearEndomorphism):
    if not endo.is_bijective():
        raise HypothesesNotMet("bijective", "the map is singular")
    report = check_commutativity_preserver(endo)
    if not report.holds:
        raise HypothesesNotMet(
            "commutativity preserver",
            (report.pair_violations or report.chain_violations)[0],
        )
    verdict = is_strong_preserver(endo)
    if not verdict.strong:
        raise HypothesesNotMet("strong", f"decided by {verdict.method}")


def decompose(endo: LinearEndomorphism) -> Decomposition:
    """Factor a bijective strong diagonality-preserving commutativity
    preserver as a shift map composed with a pure preserver.

    The shift's images on the transported basis are the diagonal residues
    scaled by the inverse radical coefficients; the pure factor is rebuilt
    from the extracted invariants and the factorization is verified to
    reproduce the input exactly.
    """
    _require_hypotheses(endo)
    if not is_diagonality_preserver(endo):
        raise HypothesesNotMet("diagonality preserver",
                               "some diagonal image has strict support")
    poset, field = endo.poset, endo.field
    invariants = extract_invariants(endo)
    theta = BasisBijection(poset, invariants.theta)

    alpha_images = {}
    for pair in poset.strict_pairs:
        target = invariants.theta[pair]
        alpha_images[target] = invariants.nu[pair].scale(
            field.one / invariants.sigma[pair]
        )
    alpha = ShiftData(poset, field, alpha_images)

    shift = build_shift(poset, alpha)
    unshift = shift_endomorphism(poset, -alpha)
    pure = unshift.compose(endo)
    root = poset.elements[0]
    kappa = tuple(
        pure.image_of_basis((z, z)).coefficient(root, root)
        for z in poset.elements
    )

    tau = build_tau(poset, theta, invariants.sigma, invariants.c, kappa, field)
    if shift.compose(tau) != endo:
        raise RuntimeError("shift-then-pure factorization failed to reproduce "
                           "the input map; internal error")
    return Decomposition(alpha=alpha, theta=theta, sigma=invariants.sigma,
                         c=invariants.c, kappa=kappa)


def is_lie_type(endo: LinearEndomorphism) -> LieTypeVerdict:
    """Decide whether the map is a nonzero scalar multiple of a Lie
    automorphism plus a central-valued map.

    Equivalent, through the factorization, to the shift datum being
    central-valued and the chain constants being a single scalar; when
    that holds the Lie automorphism and the central summand are built and
    verified exactly.
    """
    decomposition = decompose(endo)
    poset, field = endo.poset, endo.field
    reasons = []

    delta = AlgebraElement.delta(poset, field)
    for pair in poset.comparable_pairs:
        img = decomposition.alpha.image_of(pair)
        if img != delta.scale(img.coefficient(poset.elements[0], poset.elements[0])):
            reasons.append("alpha not central-valued")
            break

    c_values = {decomposition.c[p] for p in poset.strict_pairs}
    if len(c_values) != 1:
        reasons.append("c non-constant")

    if reasons:
        return LieTypeVerdict(lie_type=False, reasons=tuple(reasons))

    k = next(iter(c_values))
    k_inv = field.one / k
    psi_images = {}
    xi_images = {}
    zero = AlgebraElement.zero(poset, field)
    for x in poset.elements:
        psi_images[(x, x)] = endo.image_of_basis((x, x)).scale(k_inv)
        xi_images[(x, x)] = zero
    for pair in poset.strict_pairs:
        target = decomposition.theta[pair]
        psi_images[pair] = AlgebraElement.basis(poset, field, *target).scale(
            k_inv * decomposition.sigma[pair]
        )
        xi_images[pair] = decomposition.alpha.image_of(target).scale(
            decomposition.sigma[pair]
        )
    psi = LinearEndomorphism.from_basis_images(poset, field, psi_images)
    xi = LinearEndomorphism.from_basis_images(poset, field, xi_images)

    for p in poset.comparable_pairs:
        for q in poset.comparable_pairs:
            lhs = bracket(psi.image_of_basis(p), psi.image_of_basis(q))
            rhs = psi.apply(
                bracket(
                    AlgebraElement.basis(poset, field, *p),
                    AlgebraElement.basis(poset, field, *q),
                )
            )
            if lhs != rhs:
                raise RuntimeError(
                    f"constructed Lie automorphism fails on ({p}, {q}); "
                    f"internal error"
                )
    recombined = [
        [k * psi.matrix[i][j] + xi.matrix[i][j] for j in range(len(psi.matrix))]
        for i in range(len(psi.matrix))
    ]
    if recombined != endo.matrix:
        raise RuntimeError("k * psi + xi does not reproduce the map; internal error")
    return LieTypeVerdict(lie_type=True, k=k, psi=psi, xi=xi)


# --- conjecture search -----------------------------------------------------


class _AffineSpace:
    """Solution set {particular + span(basis)} of a linear system."""

    def __init__(self, field, particular, basis):
        self.field = field
        self.particular = particular
        self.basis = basis

    @staticmethod
    def solve(field, rows, rhs, width):
        if not rows:
            return _AffineSpace(field, [field.zero] * width,
                                linalg.kernel_basis(field, [[field.zero] * width]))
        particular = linalg.solve(field, rows, rhs)
        if particular is None:
            return None
        return _AffineSpace(field, particular, linalg.kernel_basis(field, rows))

    def evaluate(self, functional_coeffs, constant):
        """Value of an affine functional on the particular point plus its
        gradient along each basis direction."""
        base = constant
        for cf, x in zip(functional_coeffs, self.particular):
            if cf and x:
                base = base + cf * x
        grads = []
        for vec in self.basis:
            g = self.field.zero
            for cf, x in zip(functional_coeffs, vec):
                if cf and x:
                    g = g + cf * x
            grads.append(g)
        return base, grads


def _alpha_search_system(endo: LinearEndomorphism):
    """Affine data of the idempotent-image search.

    Unknowns are the diagonal entries of the shift images of all basis
    vectors.  Returns (rows, rhs, width, diag_exprs) where diag_exprs[x][u]
    is the affine expression for the (u, u) entry of (S_alpha L)(e_x).
    """
    poset, field = endo.poset, endo.field
    rows, index = shift_condition_rows(poset, field)
    width = len(poset.comparable_pairs) * poset.n
    rhs = [field.zero] * len(rows)
    rows = [row[:] for row in rows]

    images = {x: endo.image_of_basis((x, x)) for x in poset.elements}
    diag_exprs = {}
    for x in poset.elements:
        img = images[x]
        per_element = {}
        for u in poset.elements:
            coeffs = [field.zero] * width
            for pair, value in img.coeffs.items():
                coeffs[index[(pair, u)]] = coeffs[index[(pair, u)]] + value
            constant = img.coefficient(u, u)
            per_element[u] = (coeffs, constant)
        diag_exprs[x] = per_element

    elements = poset.elements
    strict = poset.strict_pairs

    # Pairwise commutation of the adjusted images: the radical parts are
    # fixed, so each strict coordinate gives one affine equation.
    radicals = {x: images[x].radical_part() for x in elements}
    for i, x in enumerate(elements):
        for y in elements[i + 1:]:
            jx, jy = radicals[x], radicals[y]
            base = bracket(jx, jy)
            for u, v in strict:
                coeffs = [field.zero] * width
                constant = base.coefficient(u, v)
                cf_x = jx.coefficient(u, v)
                cf_y = jy.coefficient(u, v)
                # [J_x, d_y] contributes J_x(u,v) (d_y(v) - d_y(u));
                # [d_x, J_y] contributes J_y(u,v) (d_x(u) - d_x(v)).
                ey_v, ky_v = diag_exprs[y][v]
                ey_u, ky_u = diag_exprs[y][u]
                ex_v, kx_v = diag_exprs[x][v]
                ex_u, kx_u = diag_exprs[x][u]
                for idx in range(width):
                    coeffs[idx] = (
                        cf_x * (ey_v[idx] - ey_u[idx])
                        + cf_y * (ex_u[idx] - ex_v[idx])
                    )
                constant = constant + cf_x * (ky_v - ky_u) + cf_y * (kx_u - kx_v)
                rows.append(coeffs)
                rhs.append(-constant)

    # Strict part of the idempotency of each adjusted image.
    for x in elements:
        jx = radicals[x]
        jx_sq = convolve(jx, jx)
        for u, v in strict:
            cf = jx.coefficient(u, v)
            ex_v, kx_v = diag_exprs[x][v]
            ex_u, kx_u = diag_exprs[x][u]
            coeffs = [cf * (ex_u[idx] + ex_v[idx]) for idx in range(width)]
            constant = jx_sq.coefficient(u, v) + cf * (kx_u + kx_v) - cf
            rows.append(coeffs)
            rhs.append(-constant)

    return rows, rhs, width, diag_exprs


def _boolean_conditions(poset, diag_exprs):
    conditions = []
    for x in poset.elements:
        for u in poset.elements:
            conditions.append((x, u, diag_exprs[x][u]))
    return conditions


def _search_alpha(endo: LinearEndomorphism):
    """Depth-first exact search over the affine solution set, branching on
    the value (one first, then zero) of each adjusted diagonal entry."""
    poset, field = endo.poset, endo.field
    rows, rhs, width, diag_exprs = _alpha_search_system(endo)
    conditions = _boolean_conditions(poset, diag_exprs)
    one, zero = field.one, field.zero

    def descend(rows, rhs):
        space = _AffineSpace.solve(field, rows, rhs, width)
        if space is None:
            return
        for x, u, (coeffs, constant) in conditions:
            base, grads = space.evaluate(coeffs, constant)
            if any(grads):
                for target in (one, zero):
                    yield from descend(
                        rows + [coeffs], rhs + [target - constant]
                    )
                return
            if base != one and base != zero:
                return
        yield space.particular, space.basis

    yield from descend(rows, rhs)


def _alpha_from_vector(poset, field, vector):
    n = poset.n
    images = {}
    for k, pair in enumerate(poset.comparable_pairs):
        values = {
            x: vector[k * n + i]
            for i, x in enumerate(poset.elements)
            if vector[k * n + i]
        }
        images[pair] = AlgebraElement.diagonal(poset, field, values)
    return ShiftData(poset, field, images)


def _diagonalizing_conjugator(poset, field, idempotents):
    """One inner conjugation sending a commuting idempotent family to its
    diagonal parts.

    The joint spectral projections are assembled by inclusion-exclusion;
    the conjugator is the sum over them of (diagonal part) * (projection),
    a unit of the form identity plus a strictly-upper correction.
    """
    delta = AlgebraElement.delta(poset, field)
    projections = []
    n = len(idempotents)
    for mask in range(1 << n):
        q = delta
        for i, m in enumerate(idempotents):
            factor = m if mask >> i & 1 else delta - m
            q = convolve(q, factor)
        if not q.is_zero():
            projections.append(q)
    u = AlgebraElement.zero(poset, field)
    for q in projections:
        u = u + convolve(q.diagonal_part(), q)
    return u


def explore_conjecture(endo: LinearEndomorphism) -> ConjectureSearchResult:
    """Best-effort search for a shift S_alpha and a conjugator g such that
    conjugation by g after S_alpha after the map preserves diagonality.

    Step one looks for shift data turning the images of the diagonal basis
    vectors into commuting idempotents: the shift conditions, pairwise
    commutation and the strict part of idempotency are affine in the
    unknown diagonal entries, and the remaining zero-or-one constraints are
    resolved by exact case analysis.  Step two conjugates the resulting
    family to its diagonal parts.  Not finding anything is reported, not
    raised: such maps are specimens worth inspecting.
    """
    _require_hypotheses(endo)
    poset, field = endo.poset, endo.field
    if is_diagonality_preserver(endo):
        return ConjectureSearchResult(
            found=True,
            alpha=ShiftData.zero(poset, field),
            conjugator=AlgebraElement.delta(poset, field),
        )

    for particular, basis in _search_alpha(endo):
        candidates = [particular]
        if basis:
            # Free directions are zeroed first; a few seeded combinations
            # guard against a zero choice violating the open conditions.
            for scale in (1, 2):
                shifted = particular[:]
                for vec in basis:
                    shifted = [a + field.of(scale) * b for a, b in zip(shifted, vec)]
                candidates.append(shifted)
        for vector in candidates:
            alpha = _alpha_from_vector(poset, field, vector)
            report = validate_alpha(poset, alpha)
            if not (report.comm_preserver and report.strong and report.bijective):
                continue
            shift = shift_endomorphism(poset, alpha)
            composed = shift.compose(endo)
            idempotents = [
                composed.image_of_basis((x, x)) for x in poset.elements
            ]
            if any(
                convolve(m, m) != m for m in idempotents
            ) or any(
                not bracket(a, b).is_zero()
                for i, a in enumerate(idempotents)
                for b in idempotents[i + 1:]
            ):
                continue
            g = _diagonalizing_conjugator(poset, field, idempotents)
            g_inv = _algebra_inverse(g)
            if g_inv is None:
                continue
            if all(
                convolve(convolve(g, m), g_inv).is_diagonal()
                for m in idempotents
            ):
                return ConjectureSearchResult(found=True, alpha=alpha, conjugator=g)
    return ConjectureSearchResult(found=False)


def _algebra_inverse(g: AlgebraElement):
    """Inverse of an algebra element with invertible diagonal, by exact
    geometric series on the strictly-upper part."""
    poset, field = g.poset, g.field
    d, j = g.diagonal_part(), g.radical_part()
    if any(not d.coefficient(x, x) for x in poset.elements):
        return None
    d_inv = AlgebraElement.diagonal(
        poset, field,
        {x: field.one / d.coefficient(x, x) for x in poset.elements},
    )
    # g = d (delta + d^{-1} j); invert the unipotent factor by the finite
    # geometric series (the radical is nilpotent).
    u = convolve(d_inv, j)
    delta = AlgebraElement.delta(poset, field)
    series = delta
    term = delta
    for _ in range(poset.n):
        term = convolve(term, u).scale(-field.one)
        if term.is_zero():
            break
        series = series + term
    return convolve(series, d_inv)
