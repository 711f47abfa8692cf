"""Seeded random generators for posets, maps and preserver data.

Everything takes an explicit ``random.Random`` so suites are reproducible;
generators that promise validity verify their output through the public
predicates and retry on the rare rejection.
"""

from __future__ import annotations

import random

from . import linalg
from .algebra import AlgebraElement
from .analysis import LinearEndomorphism
from .errors import CommPresError
from .fields import Field
from .poset import Poset
from .structure import (
    BasisBijection,
    ShiftData,
    check_admissible,
    check_c_constant_on_chains,
    required_c,
    shift_condition_rows,
    theta_is_monotone,
    validate_alpha,
)


def standard_posets(max_elements: int):
    """Named small posets used by oracle and verification suites."""
    out = [("chain2", chain_poset(2))]
    if max_elements >= 3:
        out += [
            ("chain3", chain_poset(3)),
            ("vee", Poset([1, 2, 3], [(1, 2), (1, 3)])),
            ("wedge", Poset([1, 2, 3], [(1, 3), (2, 3)])),
        ]
    if max_elements >= 4:
        out += [
            ("chain4", chain_poset(4)),
            ("zigzag", Poset([1, 2, 3, 4], [(1, 3), (2, 3), (2, 4)])),
            ("crown", Poset([1, 2, 3, 4], [(1, 3), (1, 4), (2, 3), (2, 4)])),
            ("diamond", Poset([1, 2, 3, 4], [(1, 2), (1, 3), (2, 4), (3, 4)])),
        ]
    if max_elements >= 5:
        out += [
            ("chain5", chain_poset(5)),
            ("twoarm", Poset([1, 2, 3, 4, 5], [(1, 2), (2, 3), (1, 4), (4, 5)])),
        ]
    return out


def chain_poset(n: int) -> Poset:
    return Poset(list(range(1, n + 1)), [(i, i + 1) for i in range(1, n)])


def random_connected_poset(rng: random.Random, max_elements: int = 5) -> Poset:
    """A random connected poset on 2..max_elements integer labels."""
    while True:
        n = rng.randint(2, max_elements)
        relation = [[False] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                if rng.random() < 0.45:
                    relation[i][j] = True
        for k in range(n):
            for i in range(n):
                if relation[i][k]:
                    for j in range(n):
                        if relation[k][j]:
                            relation[i][j] = True
        covers = []
        for i in range(n):
            for j in range(n):
                if relation[i][j] and not any(
                    relation[i][k] and relation[k][j] for k in range(n)
                ):
                    covers.append((i + 1, j + 1))
        try:
            return Poset(list(range(1, n + 1)), covers)
        except CommPresError:
            continue


def random_element(rng: random.Random, poset: Poset, field: Field,
                   density: float = 0.6) -> AlgebraElement:
    coeffs = {}
    for pair in poset.comparable_pairs:
        if rng.random() < density:
            coeffs[pair] = field.random(rng)
    return AlgebraElement(poset, field, coeffs)


def random_endomorphism(rng: random.Random, poset: Poset, field: Field,
                        diag_preserving: bool = False) -> LinearEndomorphism:
    dim = len(poset.comparable_pairs)
    n = poset.n
    matrix = [[field.random(rng) for _ in range(dim)] for _ in range(dim)]
    if diag_preserving:
        for j in range(n):
            for i in range(n, dim):
                matrix[i][j] = field.zero
    return LinearEndomorphism(poset, field, matrix)


def random_shift_data(rng: random.Random, poset: Poset, field: Field) -> ShiftData:
    """Unconstrained diagonal-valued data; usually not a valid shift."""
    images = {}
    for pair in poset.comparable_pairs:
        values = {x: field.random(rng) for x in poset.elements}
        images[pair] = AlgebraElement.diagonal(poset, field, values)
    return ShiftData(poset, field, images)


def random_valid_alpha(rng: random.Random, poset: Poset, field: Field,
                       attempts: int = 64) -> ShiftData | None:
    """Shift data passing all five conditions, sampled from the exact
    solution space of the linear ones; None if the open conditions keep
    failing (tiny fields over rigid posets)."""
    rows, index = shift_condition_rows(poset, field)
    kernel = linalg.kernel_basis(field, rows)
    n = poset.n
    for _ in range(attempts):
        vector = [field.zero] * (len(poset.comparable_pairs) * n)
        for base in kernel:
            scale = field.random(rng)
            if scale:
                vector = [a + scale * b for a, b in zip(vector, base)]
        images = {}
        for k, pair in enumerate(poset.comparable_pairs):
            values = {
                x: vector[k * n + i] for i, x in enumerate(poset.elements)
            }
            images[pair] = AlgebraElement.diagonal(poset, field, values)
        alpha = ShiftData(poset, field, images)
        report = validate_alpha(poset, alpha)
        if report.comm_preserver and report.strong and report.bijective:
            return alpha
    return None


def _chain_groups(poset: Poset):
    """Maximal chains grouped by shared strict pairs (chain constancy ties
    the value of c across such chains)."""
    chains = poset.maximal_chains()
    parent = list(range(len(chains)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        parent[find(i)] = find(j)

    pair_owner = {}
    for idx, chain in enumerate(chains):
        for i in range(len(chain)):
            for j in range(i + 1, len(chain)):
                pair = (chain[i], chain[j])
                if pair in pair_owner:
                    union(idx, pair_owner[pair])
                else:
                    pair_owner[pair] = idx
    groups = {}
    for idx in range(len(chains)):
        groups.setdefault(find(idx), []).append(idx)
    return chains, pair_owner, {p: find(o) for p, o in pair_owner.items()}


def random_monotone_theta(rng: random.Random, poset: Poset,
                          attempts: int = 32) -> BasisBijection:
    """A random bijection of the strict pairs that is monotone on maximal
    chains, built by permuting equal-length maximal chains and flipping
    directions; falls back to the identity."""
    chains = poset.maximal_chains()
    by_length = {}
    for idx, ch in enumerate(chains):
        by_length.setdefault(len(ch), []).append(idx)
    for _ in range(attempts):
        target = list(range(len(chains)))
        for indices in by_length.values():
            shuffled = indices[:]
            rng.shuffle(shuffled)
            for a, b in zip(indices, shuffled):
                target[a] = b
        mapping = {}
        ok = True
        for idx, chain in enumerate(chains):
            image = chains[target[idx]]
            m = len(chain)
            reverse = rng.random() < 0.5
            for i in range(m):
                for j in range(i + 1, m):
                    pair = (chain[i], chain[j])
                    value = (
                        (image[m - 1 - j], image[m - 1 - i])
                        if reverse
                        else (image[i], image[j])
                    )
                    if mapping.get(pair, value) != value:
                        ok = False
                        break
                    mapping[pair] = value
                if not ok:
                    break
            if not ok:
                break
        if not ok or len(set(mapping.values())) != len(poset.strict_pairs):
            continue
        theta = BasisBijection(poset, mapping)
        if theta_is_monotone(poset, theta).monotone:
            return theta
    return BasisBijection.identity(poset)


def random_admissible_c(rng: random.Random, poset: Poset, field: Field,
                        theta: BasisBijection, attempts: int = 48) -> dict | None:
    """Nonzero c, constant on maximal chains, with (theta, c) admissible.

    One unknown per group of chains linked through shared pairs; the
    closed-walk balance on each fundamental cycle is linear in those
    unknowns, so c is sampled from the exact solution space.  None when
    every sampled solution has a vanishing group value.
    """
    _, _, pair_group = _chain_groups(poset)
    group_ids = sorted(set(pair_group.values()))
    position = {g: i for i, g in enumerate(group_ids)}
    rows = []
    for cycle in poset.fundamental_cycles():
        for z in poset.elements:
            row = [field.zero] * len(group_ids)
            touched = False
            for a, b in cycle.steps():
                ascending = poset.less(a, b)
                edge = (a, b) if ascending else (b, a)
                v, w = theta.inverse_of(edge)
                if v == z:
                    col = position[pair_group[(z, w)]]
                    row[col] = row[col] + (field.one if ascending else -field.one)
                    touched = True
                elif w == z:
                    col = position[pair_group[(v, z)]]
                    row[col] = row[col] + (-field.one if ascending else field.one)
                    touched = True
            if touched and any(row):
                rows.append(row)
    if rows:
        basis = linalg.kernel_basis(field, rows)
    else:
        basis = [
            [field.one if i == j else field.zero for j in range(len(group_ids))]
            for i in range(len(group_ids))
        ]
    if not basis:
        return None
    for _ in range(attempts):
        values = [field.zero] * len(group_ids)
        for vec in basis:
            scale = field.random(rng)
            if scale:
                values = [a + scale * b for a, b in zip(values, vec)]
        if all(values):
            return {
                pair: values[position[pair_group[pair]]]
                for pair in poset.strict_pairs
            }
    return None


def random_compatible_sigma(rng: random.Random, poset: Poset, field: Field,
                            theta: BasisBijection, c: dict) -> dict | None:
    """Sigma that is c-compatible with theta, from a multiplicative gauge:
    sigma(x, y) = s * c(x, y) * mu(x) / mu(y), with the sign s flipped on
    chains where theta reverses.  Verified; None when the gauge form cannot
    satisfy the triples for this theta."""
    mono = theta_is_monotone(poset, theta)
    if not mono.monotone:
        return None
    direction = {}
    for verdict in mono.per_chain:
        chain = verdict.chain
        sign = -1 if verdict.direction == "decreasing" else 1
        for i in range(len(chain)):
            for j in range(i + 1, len(chain)):
                direction.setdefault((chain[i], chain[j]), sign)
    mu = {x: field.random_nonzero(rng) for x in poset.elements}
    sigma = {}
    for x, y in poset.strict_pairs:
        value = c[(x, y)] * mu[x] / mu[y]
        if direction.get((x, y), 1) == -1:
            value = -value
        sigma[(x, y)] = value
    for x, z in poset.strict_pairs:
        for y in poset.interval(x, z)[1:-1]:
            if required_c(theta, sigma, x, y, z) != c[(x, z)]:
                return None
    return sigma


def random_kappa(rng: random.Random, poset: Poset, field: Field) -> tuple:
    while True:
        kappa = tuple(field.random(rng) for _ in poset.elements)
        total = field.zero
        for k in kappa:
            total = total + k
        if total:
            return kappa


def random_valid_quadruple(rng: random.Random, poset: Poset, field: Field,
                           attempts: int = 200):
    """A quadruple (theta, sigma, c, kappa) satisfying every synthesis
    precondition, or None when sampling keeps failing."""
    for _ in range(attempts):
        theta = random_monotone_theta(rng, poset)
        c = random_admissible_c(rng, poset, field, theta)
        if c is None:
            continue
        sigma = random_compatible_sigma(rng, poset, field, theta, c)
        if sigma is None:
            continue
        if not check_c_constant_on_chains(poset, c).constant:
            continue
        if not check_admissible(poset, theta, c).admissible:
            continue
        return theta, sigma, c, random_kappa(rng, poset, field)
    return None


def random_closed_walk(rng: random.Random, poset: Poset, max_moves: int = 4):
    """A random closed walk: tree paths between random vertices with
    occasional non-tree cover hops, closed back to the start."""
    from .poset import Walk

    root = poset.elements[0]
    tree_parent = poset._bfs_tree(root)
    tree_edges = {
        frozenset((i, tree_parent[i])) for i in tree_parent
        if tree_parent[i] is not None
    }
    non_tree = [
        (a, b) for a, b in poset.covers
        if frozenset((poset.index[a], poset.index[b])) not in tree_edges
    ]
    start = rng.choice(poset.elements)
    vertices = [start]
    for _ in range(rng.randint(1, max_moves)):
        current = vertices[-1]
        hops = [
            pair for pair in non_tree if current in pair
        ]
        if hops and rng.random() < 0.6:
            a, b = rng.choice(hops)
            vertices.append(b if current == a else a)
        else:
            target = rng.choice(poset.elements)
            vertices.extend(poset.find_walk(current, target).vertices[1:])
    vertices.extend(poset.find_walk(vertices[-1], start).vertices[1:])
    return Walk(tuple(vertices))
