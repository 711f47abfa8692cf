"""Brute-force cross-validation over small prime fields.

The incidence algebra embeds into n-by-n matrices (an element is the array
of its coefficients), so the whole algebra over F_p can be enumerated and
all pairwise brackets batched through numpy integer arithmetic.  This
gives definition-level verdicts for "commutativity preserver" and
"strong" by literal quantification over every pair of elements, entirely
independent of the sparse exact route used by the analytic checkers.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dataclass_field

import numpy as np

from .algebra import AlgebraElement
from .analysis import (
    LinearEndomorphism,
    check_commutativity_preserver,
    is_strong_preserver,
)
from .fields import Field, prime_field
from .poset import Poset
from .sampling import (
    random_endomorphism,
    random_shift_data,
    random_valid_alpha,
    random_valid_quadruple,
    standard_posets,
)
from .structure import ShiftData, shift_endomorphism, validate_alpha

PAIR_BUDGET = 600_000


class BruteForcer:
    """Exhaustive pair enumeration for one poset over one prime field."""

    def __init__(self, poset: Poset, p: int):
        self.poset = poset
        self.p = p
        self.dim = len(poset.comparable_pairs)
        self.count = p ** self.dim
        n = poset.n
        index = poset.index
        self.positions = [
            (index[x], index[y]) for x, y in poset.comparable_pairs
        ]
        # Mixed-radix digit table: row k holds the coefficient vector of
        # the k-th element in canonical basis order.
        digits = np.zeros((self.count, self.dim), dtype=np.int16)
        ks = np.arange(self.count)
        for j in range(self.dim):
            digits[:, j] = ks % p
            ks = ks // p
        self.coeff_table = digits
        self.mats = self._to_matrices(digits)
        self._commute_cache = None

    def _to_matrices(self, coeff_rows: np.ndarray) -> np.ndarray:
        n = self.poset.n
        mats = np.zeros((coeff_rows.shape[0], n, n), dtype=np.int16)
        for j, (i, k) in enumerate(self.positions):
            mats[:, i, k] = coeff_rows[:, j]
        return mats

    def commuting_mask(self, mats: np.ndarray) -> np.ndarray:
        """Boolean (count, count) array: do elements i and j commute?"""
        prod = np.einsum("iab,jbc->ijac", mats, mats)
        diff = (prod - prod.transpose(1, 0, 2, 3)) % self.p
        return ~diff.any(axis=(2, 3))

    def original_commuting(self) -> np.ndarray:
        if self._commute_cache is None:
            self._commute_cache = self.commuting_mask(self.mats)
        return self._commute_cache

    def map_matrix(self, endo: LinearEndomorphism) -> np.ndarray:
        return np.array(
            [[int(s.value) for s in row] for row in endo.matrix], dtype=np.int64
        )

    def image_matrices(self, endo: LinearEndomorphism) -> np.ndarray:
        lm = self.map_matrix(endo)
        images = (self.coeff_table.astype(np.int64) @ lm.T) % self.p
        return self._to_matrices(images.astype(np.int16))

    def brute_comm_strong(self, endo: LinearEndomorphism):
        """Definition-level verdicts by full pair enumeration.

        Returns (comm, strong, witness_indices); strong is False whenever
        comm is, and the witness indexes the first offending pair.
        """
        orig = self.original_commuting()
        image_mats = self.image_matrices(endo)

        # Commuting pairs of originals only: enough for the forward
        # implication, and cheap for maps that are not preservers.
        idx_i, idx_j = np.nonzero(orig)
        keep = idx_i < idx_j
        idx_i, idx_j = idx_i[keep], idx_j[keep]
        a = image_mats[idx_i]
        b = image_mats[idx_j]
        diff = (np.matmul(a, b) - np.matmul(b, a)) % self.p
        bad = diff.any(axis=(1, 2))
        if bad.any():
            k = int(np.argmax(bad))
            return False, False, (int(idx_i[k]), int(idx_j[k]))

        img_mask = self.commuting_mask(image_mats)
        converse_bad = img_mask & ~orig
        if converse_bad.any():
            i, j = np.argwhere(converse_bad)[0]
            return True, False, (int(i), int(j))
        return True, True, None

    def brute_bijective(self, endo: LinearEndomorphism) -> bool:
        m = self.map_matrix(endo) % self.p
        return _modp_rank(m, self.p) == self.dim

    def element_from_index(self, field: Field, k: int) -> AlgebraElement:
        coeffs = {}
        row = self.coeff_table[k]
        for j, pair in enumerate(self.poset.comparable_pairs):
            if row[j]:
                coeffs[pair] = field.of(int(row[j]))
        return AlgebraElement(self.poset, field, coeffs)


def _modp_rank(matrix: np.ndarray, p: int) -> int:
    m = matrix.copy() % p
    rows, cols = m.shape
    r = 0
    for c in range(cols):
        pivot = None
        for i in range(r, rows):
            if m[i, c] % p:
                pivot = i
                break
        if pivot is None:
            continue
        m[[r, pivot]] = m[[pivot, r]]
        inv = pow(int(m[r, c]), -1, p)
        m[r] = m[r] * inv % p
        for i in range(rows):
            if i != r and m[i, c]:
                m[i] = (m[i] - m[i, c] * m[r]) % p
        r += 1
        if r == rows:
            break
    return r


@dataclass
class Disagreement:
    poset_name: str
    kind: str
    sample_index: int
    detail: str
    counterexample: dict | None = None


@dataclass
class ConfigReport:
    poset_name: str
    samples: int
    preservers_seen: int
    disagreements: list = dataclass_field(default_factory=list)


@dataclass
class OracleReport:
    field: str
    bound: int
    samples: int
    seed: int
    configs: list = dataclass_field(default_factory=list)

    @property
    def total_disagreements(self) -> int:
        return sum(len(c.disagreements) for c in self.configs)


def _compare_map(bf: BruteForcer, fld: Field, endo: LinearEndomorphism,
                 config: ConfigReport, kind: str, k: int):
    analytic = check_commutativity_preserver(endo)
    comm, strong, witness = bf.brute_comm_strong(endo)
    if analytic.holds != comm:
        config.disagreements.append(Disagreement(
            config.poset_name, kind, k,
            f"comm: analytic={analytic.holds} brute={comm}",
            _witness_dict(bf, fld, witness),
        ))
        return
    if comm:
        config.preservers_seen += 1
        verdict = is_strong_preserver(endo)
        if verdict.strong != strong:
            config.disagreements.append(Disagreement(
                config.poset_name, kind, k,
                f"strong: analytic={verdict.strong} ({verdict.method}) "
                f"brute={strong}",
                _witness_dict(bf, fld, witness),
            ))


def _witness_dict(bf: BruteForcer, fld: Field, witness):
    if witness is None:
        return None
    i, j = witness
    return {
        "f": repr(bf.element_from_index(fld, i)),
        "g": repr(bf.element_from_index(fld, j)),
    }


def _compare_alpha(bf: BruteForcer, fld: Field, poset: Poset, alpha: ShiftData,
                   config: ConfigReport, k: int):
    report = validate_alpha(poset, alpha)
    endo = shift_endomorphism(poset, alpha)
    comm, strong, witness = bf.brute_comm_strong(endo)
    if report.comm_preserver != comm:
        config.disagreements.append(Disagreement(
            config.poset_name, "alpha", k,
            f"shift comm: conditions={report.comm_preserver} brute={comm}",
            _witness_dict(bf, fld, witness),
        ))
        return
    if comm:
        config.preservers_seen += 1
        if report.strong != strong:
            config.disagreements.append(Disagreement(
                config.poset_name, "alpha", k,
                f"shift strong: condition={report.strong} brute={strong}",
                _witness_dict(bf, fld, witness),
            ))
        if strong and report.bijective != bf.brute_bijective(endo):
            config.disagreements.append(Disagreement(
                config.poset_name, "alpha", k,
                f"shift bijective: condition={report.bijective} "
                f"brute={bf.brute_bijective(endo)}",
            ))


def oracle_suite(bound: int, field: Field, samples: int = 500,
                 seed: int = 0) -> OracleReport:
    """Compare definition-level brute force against the analytic checkers.

    For every poset of the standard family within the pair budget, the
    suite samples random maps, diagonality-patterned maps, synthesized
    preservers and shift data, and records any verdict disagreement with a
    first-pair counterexample.
    """
    if field.is_rational or field.p not in (2, 3):
        raise ValueError("brute-force enumeration needs F_2 or F_3")
    if bound > 4:
        raise ValueError("bound must be at most 4")
    p = field.p
    report = OracleReport(field=repr(field), bound=bound, samples=samples,
                          seed=seed)
    for name, poset in standard_posets(bound):
        dim = len(poset.comparable_pairs)
        if (p ** dim) ** 2 > PAIR_BUDGET:
            continue
        rng = random.Random(f"{seed}:{name}:{p}")
        bf = BruteForcer(poset, p)

        n_alpha_valid = max(6, samples // 16)
        n_alpha_raw = max(12, samples // 8)
        n_built = max(8, samples // 16)
        n_diag = max(12, samples // 8)
        n_free = max(0, samples - n_alpha_valid - n_alpha_raw - n_built - n_diag)
        actual = n_free + n_diag + n_built + n_alpha_raw + n_alpha_valid
        config = ConfigReport(poset_name=name, samples=actual,
                              preservers_seen=0)

        k = 0
        for _ in range(n_free):
            endo = random_endomorphism(rng, poset, field)
            _compare_map(bf, field, endo, config, "random", k)
            k += 1
        for _ in range(n_diag):
            endo = random_endomorphism(rng, poset, field, diag_preserving=True)
            _compare_map(bf, field, endo, config, "diag-pattern", k)
            k += 1
        for _ in range(n_built):
            quad = random_valid_quadruple(rng, poset, field)
            if quad is None:
                endo = LinearEndomorphism.identity(poset, field)
            else:
                from .synthesis import build_tau

                theta, sigma, c, kappa = quad
                endo = build_tau(poset, theta, sigma, c, kappa, field)
                alpha = random_valid_alpha(rng, poset, field)
                if alpha is not None and rng.random() < 0.5:
                    endo = shift_endomorphism(poset, alpha).compose(endo)
            _compare_map(bf, field, endo, config, "synthesized", k)
            k += 1
        for _ in range(n_alpha_raw):
            alpha = random_shift_data(rng, poset, field)
            _compare_alpha(bf, field, poset, alpha, config, k)
            k += 1
        for _ in range(n_alpha_valid):
            alpha = random_valid_alpha(rng, poset, field)
            if alpha is None:
                alpha = ShiftData.zero(poset, field)
            _compare_alpha(bf, field, poset, alpha, config, k)
            k += 1
        report.configs.append(config)
    return report


def exhaustive_map_check(poset: Poset, p: int) -> OracleReport:
    """Every linear self-map over F_p (feasible only for tiny dimensions):
    analytic and brute verdicts must agree on all of them."""
    field = prime_field(p)
    dim = len(poset.comparable_pairs)
    total = p ** (dim * dim)
    bf = BruteForcer(poset, p)
    report = OracleReport(field=repr(field), bound=poset.n, samples=total,
                          seed=0)
    config = ConfigReport(poset_name="exhaustive", samples=total,
                          preservers_seen=0)
    for code in range(total):
        digits = []
        m = code
        for _ in range(dim * dim):
            digits.append(m % p)
            m //= p
        matrix = [
            [field.of(digits[r * dim + c]) for c in range(dim)]
            for r in range(dim)
        ]
        endo = LinearEndomorphism(poset, field, matrix)
        _compare_map(bf, field, endo, config, "exhaustive", code)
    report.configs.append(config)
    return report
