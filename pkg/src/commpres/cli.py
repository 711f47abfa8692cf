"""Command-line front end.

Exit codes: 0 for a true verdict or a successful construction, 1 for a
false verdict or unmet hypotheses, 2 for malformed input.  Every command
prints a one-line summary; ``--out`` writes the full JSON report.
"""

from __future__ import annotations

import sys

import click

from . import serialize
from .analysis import (
    check_commutativity_preserver,
    extract_invariants,
    is_diagonality_preserver,
    is_strong_preserver,
)
from .errors import CommPresError, SchemaError
from .oracle import oracle_suite
from .structure import (
    build_shift,
    check_admissible,
    validate_alpha,
)
from .synthesis import (
    build_tau,
    decompose,
    explore_conjecture,
    is_lie_type,
)

VERDICT_TRUE = 0
VERDICT_FALSE = 1
INPUT_ERROR = 2


def _load_context(poset_path, field_text):
    fld = serialize.parse_field_spec(field_text)
    poset = serialize.poset_from_json(serialize.load_json(poset_path), poset_path)
    return poset, fld


def _load_map(poset, fld, map_path):
    return serialize.endomorphism_from_json(
        poset, fld, serialize.load_json(map_path), map_path
    )


def _write_report(out, doc):
    if out:
        serialize.dump_json(out, doc)


def _fail_input(exc):
    click.echo(f"input error: {exc}", err=True)
    sys.exit(INPUT_ERROR)


class _Command(click.Command):
    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except SchemaError as exc:
            _fail_input(exc)
        except CommPresError as exc:
            _fail_input(exc)


@click.group()
def main():
    """Exact tools for commutativity preservers of incidence algebras."""


_poset_opt = click.option("--poset", "poset_path", required=True,
                          type=click.Path(), help="Poset JSON file.")
_field_opt = click.option("--field", "field_text", required=True,
                          help="Scalar field: Q or Fp:<p>.")
_out_opt = click.option("--out", default=None, type=click.Path(),
                        help="Write the JSON report here.")


@main.command(cls=_Command, name="check")
@_poset_opt
@_field_opt
@click.option("--map", "map_path", required=True, type=click.Path())
@_out_opt
def check_cmd(poset_path, field_text, map_path, out):
    """Report commutativity/strongness/diagonality verdicts for a map."""
    poset, fld = _load_context(poset_path, field_text)
    endo = _load_map(poset, fld, map_path)
    report = check_commutativity_preserver(endo)
    doc = {
        "commutativity_preserver": report.holds,
        "pair_violations": [
            [serialize.pair_key(p), serialize.pair_key(q)]
            for p, q in report.pair_violations
        ],
        "chain_violations": [list(map(str, v)) for v in report.chain_violations],
        "strong": None,
        "strongness_method": None,
        "bijective": endo.is_bijective(),
        "diagonality_preserver": is_diagonality_preserver(endo),
    }
    if report.holds:
        verdict = is_strong_preserver(endo)
        doc["strong"] = verdict.strong
        doc["strongness_method"] = verdict.method
    _write_report(out, doc)
    traits = []
    if report.holds:
        traits.append("commutativity preserver")
        if doc["strong"]:
            traits.append("strong")
    else:
        traits.append("not a commutativity preserver")
    if doc["bijective"]:
        traits.append("bijective")
    if doc["diagonality_preserver"]:
        traits.append("diagonality-preserving")
    click.echo(", ".join(traits))
    sys.exit(VERDICT_TRUE if report.holds else VERDICT_FALSE)


@main.command(cls=_Command, name="extract")
@_poset_opt
@_field_opt
@click.option("--map", "map_path", required=True, type=click.Path())
@_out_opt
def extract_cmd(poset_path, field_text, map_path, out):
    """Extract the invariants (theta, sigma, nu, c) of a map."""
    poset, fld = _load_context(poset_path, field_text)
    endo = _load_map(poset, fld, map_path)
    try:
        inv = extract_invariants(endo)
    except CommPresError as exc:
        click.echo(f"not extractable: {exc}")
        sys.exit(VERDICT_FALSE)
    doc = {
        "theta": {
            serialize.pair_key(p): serialize.pair_key(inv.theta[p])
            for p in poset.strict_pairs
        },
        "sigma": serialize.scalar_map_to_json(poset, inv.sigma),
        "nu": {
            serialize.pair_key(p): serialize.element_to_json(inv.nu[p])
            for p in poset.strict_pairs
        },
        "c": serialize.scalar_map_to_json(poset, inv.c),
    }
    _write_report(out, doc)
    identity = all(inv.theta[p] == p for p in poset.strict_pairs)
    click.echo(
        f"theta {'is the identity' if identity else 'permutes the basis'}; "
        f"sigma and c extracted on {len(poset.strict_pairs)} pairs"
    )
    sys.exit(VERDICT_TRUE)


@main.command(cls=_Command, name="decompose")
@_poset_opt
@_field_opt
@click.option("--map", "map_path", required=True, type=click.Path())
@_out_opt
def decompose_cmd(poset_path, field_text, map_path, out):
    """Factor a map as a shift composed with a pure preserver."""
    poset, fld = _load_context(poset_path, field_text)
    endo = _load_map(poset, fld, map_path)
    try:
        d = decompose(endo)
    except CommPresError as exc:
        click.echo(f"hypotheses not met: {exc}")
        sys.exit(VERDICT_FALSE)
    _write_report(out, serialize.decomposition_to_json(d))
    click.echo(
        f"decomposed: alpha {'zero' if d.alpha.is_zero() else 'nonzero'}, "
        f"kappa = {serialize.kappa_to_json(d.kappa)}"
    )
    sys.exit(VERDICT_TRUE)


@main.command(cls=_Command, name="synthesize")
@_poset_opt
@_field_opt
@click.option("--theta", "theta_path", required=True, type=click.Path())
@click.option("--sigma", "sigma_path", required=True, type=click.Path())
@click.option("--c", "c_path", required=True, type=click.Path())
@click.option("--kappa", "kappa_path", required=True, type=click.Path())
@_out_opt
def synthesize_cmd(poset_path, field_text, theta_path, sigma_path, c_path,
                   kappa_path, out):
    """Build the pure preserver of a quadruple (theta, sigma, c, kappa)."""
    poset, fld = _load_context(poset_path, field_text)
    theta = serialize.theta_from_json(
        poset, serialize.load_json(theta_path), theta_path
    )
    sigma = serialize.scalar_map_from_json(
        poset, fld, serialize.load_json(sigma_path), sigma_path
    )
    c = serialize.scalar_map_from_json(
        poset, fld, serialize.load_json(c_path), c_path
    )
    kappa = serialize.kappa_from_json(
        fld, serialize.load_json(kappa_path), kappa_path
    )
    try:
        tau = build_tau(poset, theta, sigma, c, kappa, fld)
    except CommPresError as exc:
        click.echo(f"preconditions not met: {exc}")
        sys.exit(VERDICT_FALSE)
    _write_report(out, serialize.endomorphism_to_json(tau))
    click.echo("synthesized a pure strong diagonality-preserving preserver")
    sys.exit(VERDICT_TRUE)


@main.command(cls=_Command, name="shift")
@_poset_opt
@_field_opt
@click.option("--alpha", "alpha_path", required=True, type=click.Path())
@_out_opt
def shift_cmd(poset_path, field_text, alpha_path, out):
    """Validate shift data and build S_alpha when it preserves
    commutativity."""
    poset, fld = _load_context(poset_path, field_text)
    alpha = serialize.alpha_from_json(
        poset, fld, serialize.load_json(alpha_path), alpha_path
    )
    report = validate_alpha(poset, alpha)
    doc = {
        "comm_preserver": report.comm_preserver,
        "strong": report.strong,
        "bijective": report.bijective,
        "violations": {
            key: [str(v) for v in vals]
            for key, vals in report.violations.items() if vals
        },
    }
    if report.comm_preserver:
        doc["map"] = serialize.endomorphism_to_json(build_shift(poset, alpha))
    _write_report(out, doc)
    click.echo(
        f"shift: comm={report.comm_preserver} strong={report.strong} "
        f"bijective={report.bijective}"
    )
    sys.exit(VERDICT_TRUE if report.comm_preserver else VERDICT_FALSE)


@main.command(cls=_Command, name="admissible")
@_poset_opt
@_field_opt
@click.option("--theta", "theta_path", required=True, type=click.Path())
@click.option("--c", "c_path", required=True, type=click.Path())
@_out_opt
def admissible_cmd(poset_path, field_text, theta_path, c_path, out):
    """Closed-walk admissibility of a pair (theta, c)."""
    poset, fld = _load_context(poset_path, field_text)
    theta = serialize.theta_from_json(
        poset, serialize.load_json(theta_path), theta_path
    )
    c = serialize.scalar_map_from_json(
        poset, fld, serialize.load_json(c_path), c_path
    )
    report = check_admissible(poset, theta, c)
    doc = {"admissible": report.admissible}
    if not report.admissible:
        walk, z, sums = report.witness
        doc["witness"] = {
            "walk": [str(v) for v in walk.vertices],
            "z": str(z),
            "sums": {
                "s_plus": serialize.scalar_to_json(sums.s_plus),
                "s_minus": serialize.scalar_to_json(sums.s_minus),
                "t_plus": serialize.scalar_to_json(sums.t_plus),
                "t_minus": serialize.scalar_to_json(sums.t_minus),
            },
        }
        click.echo(
            f"not admissible: witness z={z} on walk "
            f"{'-'.join(str(v) for v in walk.vertices)}"
        )
    else:
        click.echo("admissible")
    _write_report(out, doc)
    sys.exit(VERDICT_TRUE if report.admissible else VERDICT_FALSE)


@main.command(cls=_Command, name="lietype")
@_poset_opt
@_field_opt
@click.option("--map", "map_path", required=True, type=click.Path())
@_out_opt
def lietype_cmd(poset_path, field_text, map_path, out):
    """Decide whether a map is of Lie type."""
    poset, fld = _load_context(poset_path, field_text)
    endo = _load_map(poset, fld, map_path)
    try:
        verdict = is_lie_type(endo)
    except CommPresError as exc:
        click.echo(f"hypotheses not met: {exc}")
        sys.exit(VERDICT_FALSE)
    doc = {"lie_type": verdict.lie_type, "reasons": list(verdict.reasons)}
    if verdict.lie_type:
        doc["k"] = serialize.scalar_to_json(verdict.k)
        doc["psi"] = serialize.endomorphism_to_json(verdict.psi)
        doc["xi"] = serialize.endomorphism_to_json(verdict.xi)
        click.echo(f"lie type with k = {doc['k']}")
    else:
        click.echo(f"not lie type: {', '.join(verdict.reasons)}")
    _write_report(out, doc)
    sys.exit(VERDICT_TRUE if verdict.lie_type else VERDICT_FALSE)


@main.command(cls=_Command, name="explore")
@_poset_opt
@_field_opt
@click.option("--map", "map_path", required=True, type=click.Path())
@_out_opt
def explore_cmd(poset_path, field_text, map_path, out):
    """Search for a shift and conjugator that restore diagonality."""
    poset, fld = _load_context(poset_path, field_text)
    endo = _load_map(poset, fld, map_path)
    try:
        result = explore_conjecture(endo)
    except CommPresError as exc:
        click.echo(f"hypotheses not met: {exc}")
        sys.exit(VERDICT_FALSE)
    if result.found:
        doc = {
            "found": True,
            "alpha": serialize.alpha_to_json(result.alpha),
            "conjugator": serialize.element_to_json(result.conjugator),
        }
        click.echo("found a shift and conjugator restoring diagonality")
        _write_report(out, doc)
        sys.exit(VERDICT_TRUE)
    # A failed search on a genuine strong preserver is a specimen worth
    # keeping; serialize the full instance for later inspection.
    doc = {
        "found": False,
        "field": serialize.field_spec_string(fld),
        "poset": serialize.poset_to_json(poset),
        "map": serialize.endomorphism_to_json(endo),
    }
    _write_report(out, doc)
    click.echo("no shift/conjugator found; specimen serialized"
               if out else "no shift/conjugator found")
    sys.exit(VERDICT_FALSE)


@main.command(cls=_Command, name="oracle")
@click.option("--bound", default=4, type=int, help="Max poset size (<= 4).")
@_field_opt
@click.option("--samples", default=500, type=int)
@click.option("--seed", default=0, type=int)
@_out_opt
def oracle_cmd(bound, field_text, samples, seed, out):
    """Brute-force cross-validation of the analytic checkers."""
    fld = serialize.parse_field_spec(field_text)
    try:
        report = oracle_suite(bound, fld, samples=samples, seed=seed)
    except ValueError as exc:
        _fail_input(exc)
    doc = {
        "field": report.field,
        "bound": report.bound,
        "samples": report.samples,
        "seed": report.seed,
        "configs": [
            {
                "poset": c.poset_name,
                "samples": c.samples,
                "preservers_seen": c.preservers_seen,
                "disagreements": [
                    {
                        "kind": d.kind,
                        "sample": d.sample_index,
                        "detail": d.detail,
                        "counterexample": d.counterexample,
                    }
                    for d in c.disagreements
                ],
            }
            for c in report.configs
        ],
        "total_disagreements": report.total_disagreements,
    }
    _write_report(out, doc)
    click.echo(
        f"oracle: {len(report.configs)} configs, "
        f"{report.total_disagreements} disagreements"
    )
    sys.exit(VERDICT_TRUE if report.total_disagreements == 0 else VERDICT_FALSE)


if __name__ == "__main__":
    main()
