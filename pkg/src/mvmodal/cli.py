"""Command line front end.

Exit codes: 0 verified / success, 1 counterexample or violation found,
2 usage error, 3 enumeration cap exceeded.  Output is deterministic for
identical flags.
"""
from __future__ import annotations

import json
import sys

import click

from . import classical, decide, measures, proofs, translate as tr
from .errors import CapExceeded, FormulaSyntaxError, VariantMismatch
from .formula import DEFAULT_RESERVED, atoms_of, desugar, parse, to_text
from .kripke import load_model, model_to_dict, save_model
from .semantics import SemanticsVariant, eval_formula

VARIANTS = {v.value: v for v in SemanticsVariant}


def _parse_formula(text, n):
    try:
        return parse(text, n)
    except FormulaSyntaxError as exc:
        raise click.UsageError(f"cannot parse formula: {exc}")


def _atoms_opt(atoms):
    return tuple(a for a in atoms.split(",") if a) if atoms else None


def _print_countermodel(verdict):
    click.echo(json.dumps(model_to_dict(verdict.countermodel), indent=2))
    click.echo(f"world: {verdict.world_id}")
    click.echo(f"value: {verdict.value}")


class _Exit(click.ClickException):
    exit_code = 3

    def __init__(self, message):
        super().__init__(message)


def _guard(fn):
    try:
        return fn()
    except CapExceeded as exc:
        raise _Exit(str(exc))
    except (VariantMismatch, ValueError) as exc:
        raise click.UsageError(str(exc))


@click.group()
def main():
    """Workbench for finitely-valued modal and comparative-possibility logics."""


@main.command("eval")
@click.option("--formula", required=True)
@click.option("--model", "model_path", required=True, type=click.Path(exists=True))
@click.option("--world", required=True)
@click.option("--variant", type=click.Choice(sorted(VARIANTS)), default="mvs5")
def eval_cmd(formula, model_path, world, variant):
    """Value of a formula at a world of a model file."""
    model = load_model(model_path)
    f = _parse_formula(formula, model.n)
    value = _guard(lambda: eval_formula(f, model, world, VARIANTS[variant]))
    click.echo(str(value))


@main.command()
@click.option("--formula", required=True)
@click.option("--variant", type=click.Choice(sorted(VARIANTS)), default="mvs5")
@click.option("--atoms", default="")
@click.option("--n", default=3, show_default=True)
@click.option("--cap", default=1_000_000, show_default=True)
def taut(formula, variant, atoms, n, cap):
    """Decide 1-tautology by exhaustive canonical enumeration."""
    f = _parse_formula(formula, n)
    v = _guard(lambda: decide.is_one_tautology(
        f, VARIANTS[variant], _atoms_opt(atoms), n, cap))
    if v.is_tautology:
        click.echo(f"tautology ({v.models_checked} models)")
        return
    click.echo(f"not a tautology (first countermodel after {v.models_checked} models)")
    _print_countermodel(v)
    sys.exit(1)


@main.command()
@click.option("--formula", required=True)
@click.option("--variant", type=click.Choice(sorted(VARIANTS)), default="mvs5")
@click.option("--atoms", default="")
@click.option("--n", default=3, show_default=True)
@click.option("--cap", default=1_000_000, show_default=True)
@click.option("--out", type=click.Path(), default=None, help="write the model as JSON")
def countermodel(formula, variant, atoms, n, cap, out):
    """Search for a countermodel; exits 1 when one is found."""
    f = _parse_formula(formula, n)
    v = _guard(lambda: decide.is_one_tautology(
        f, VARIANTS[variant], _atoms_opt(atoms), n, cap))
    if v.is_tautology:
        click.echo("no countermodel")
        return
    _print_countermodel(v)
    if out:
        save_model(v.countermodel, out)
    sys.exit(1)


@main.command("translate")
@click.option("--formula", required=True)
@click.option("--target", type=click.Choice(["mvs5", "mvkd45"]), required=True)
@click.option("--double-star", is_flag=True)
@click.option("--n", default=3, show_default=True)
@click.option("--reserved", default=DEFAULT_RESERVED, show_default=True)
def translate_cmd(formula, target, double_star, n, reserved):
    """Print a comparative-possibility formula translated into a modal logic."""
    f = _parse_formula(formula, n)
    if target == "mvkd45":
        out = _guard(lambda: tr.star_mvkd45(f))
    elif double_star:
        out = _guard(lambda: tr.star_star_mvs5(f, n, reserved))
    else:
        out = _guard(lambda: tr.star_mvs5(f, reserved))
    click.echo(to_text(desugar(out, reserved)))


@main.command()
@click.option("--atoms", default="q", show_default=True)
@click.option("--n", default=3, show_default=True)
@click.option("--max-size", default=7, show_default=True)
@click.option("--sample", default=None, type=int,
              help="random sample size instead of the exhaustive sweep")
@click.option("--seed", default=0, show_default=True)
@click.option("--cap", default=1_000_000, show_default=True)
@click.option("--report-dir", type=click.Path(), default=None)
def faithfulness(atoms, n, max_size, sample, seed, cap, report_dir):
    """Check that both translations preserve tautology status over a family."""
    rep = _guard(lambda: tr.faithfulness_experiment(
        _atoms_opt(atoms) or ("q",), n, max_size, sample, seed, cap=cap))
    click.echo(f"{rep.total} formulas, {rep.tautologies} tautologies, "
               f"{len(rep.disagreements)} disagreements, "
               f"{rep.model_checks} model-level checks "
               f"({len(rep.model_failures)} failed)")
    if report_dir:
        from .report import write_faithfulness_report
        for path in write_faithfulness_report(rep, report_dir):
            click.echo(f"wrote {path}")
    for d in rep.disagreements:
        click.echo(f"disagreement: {to_text(d.formula)} "
                   f"(base {d.qfl2}, s5 {d.mvs5}, kd45 {d.mvkd45})")
    for msg in rep.model_failures:
        click.echo(f"model mismatch: {msg}")
    if not rep.ok:
        sys.exit(1)


@main.command()
@click.option("--system", type=click.Choice(sorted(proofs.CATALOG)), required=True)
@click.option("--n", default=3, show_default=True)
@click.option("--depth", default=2, show_default=True)
@click.option("--per-schema", default=4, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--cap", default=1_000_000, show_default=True)
@click.option("--report-dir", type=click.Path(), default=None)
def axioms(system, n, depth, per_schema, seed, cap, report_dir):
    """Soundness regression: decide every schema instance of a system."""
    rep = _guard(lambda: decide.axiom_suite(
        system, n, depth=depth, per_schema=per_schema, seed=seed, cap=cap))
    click.echo(f"{len(rep.items)} instances, {len(rep.failures)} failures, "
               f"{rep.models_checked} models checked")
    if report_dir:
        from .report import write_suite_report
        for path in write_suite_report(rep, report_dir):
            click.echo(f"wrote {path}")
    for it in rep.failures:
        click.echo(f"FAIL {it.schema_id}: {to_text(it.instance)} "
                   f"(value {it.verdict.value} at {it.verdict.world_id})")
    if rep.failures:
        sys.exit(1)


@main.group()
def measure():
    """Possibility assignments over maximal elementary conjunctions."""


@measure.command("check")
@click.option("--file", "path", required=True, type=click.Path(exists=True))
def measure_check(path):
    a = measures.load_assignment(path)
    rep = measures.check_measure(a)
    click.echo(f"{rep.checked} checks, {len(rep.violations)} violations")
    for v in rep.violations:
        click.echo(f"violation: {v}")
    if not rep.ok:
        sys.exit(1)


@measure.command("reconstruct")
@click.option("--file", "path", required=True, type=click.Path(exists=True))
@click.option("--out", required=True, type=click.Path())
def measure_reconstruct(path, out):
    a = measures.load_assignment(path)
    model = _guard(lambda: measures.reconstruct_model(a))
    save_model(model, out)
    click.echo(f"wrote {out} ({len(model.worlds)} worlds)")


@measure.command("from-model")
@click.option("--model", "model_path", required=True, type=click.Path(exists=True))
@click.option("--out", required=True, type=click.Path())
def measure_from_model(model_path, out):
    model = load_model(model_path)
    a = _guard(lambda: measures.measure_from_model(model))
    measures.save_assignment(a, out)
    click.echo(f"wrote {out} ({len(a.table)} mecs)")


@main.group()
def proof():
    """Hilbert-style proof files."""


@proof.command("check")
@click.option("--file", "path", required=True, type=click.Path(exists=True))
def proof_check(path):
    p = proofs.load_proof(path)
    result = proofs.check_proof(p)
    click.echo(str(result))
    if not result.ok:
        sys.exit(1)


@proof.command("spotcheck")
@click.option("--file", "path", required=True, type=click.Path(exists=True))
@click.option("--budget", default=2_000_000, show_default=True)
def proof_spotcheck(path, budget):
    p = proofs.load_proof(path)
    rep = _guard(lambda: proofs.soundness_spotcheck(p, budget))
    for idx, ok, models in rep.lines:
        click.echo(f"line {idx}: {'tautology' if ok else 'NOT a tautology'} "
                   f"({models} models)")
    if not rep.complete:
        raise _Exit("model budget exhausted before the last line")
    if not rep.all_tautologies:
        sys.exit(1)


@main.command("degenerate-n2")
@click.option("--system", type=click.Choice(["mvs5", "mvkd45", "both"]), default="both",
              show_default=True)
@click.option("--atoms", default="q,r", show_default=True)
@click.option("--depth", default=2, show_default=True)
def degenerate_n2(system, atoms, depth):
    """Compare n=2 verdicts with independent classical S5/KD45 oracles."""
    from .formula import formulas_by_depth, modal_ops

    names = _atoms_opt(atoms) or ("q", "r")
    unary, binary = modal_ops(2, with_modal=True, with_coef=False)
    family = list(formulas_by_depth(names, depth, unary, binary[:3]))
    bad = 0
    for sysname in (["mvs5", "mvkd45"] if system == "both" else [system]):
        rep = _guard(lambda: classical.degeneration_report(family, sysname, names))
        agree = sum(it.agree for it in rep.items)
        click.echo(f"{sysname}: {agree}/{len(rep.items)} formulas agree with the "
                   "classical oracle")
        for it in rep.items:
            if not it.agree:
                bad += 1
                click.echo(f"  mismatch on {to_text(it.formula)}: "
                           f"many-valued {it.many_valued}, classical {it.classical}")
    if bad:
        sys.exit(1)


@main.command("altbox-k")
@click.option("--n", default=3, show_default=True)
def altbox_k(n):
    """Show that the residuated box fails the distribution axiom."""
    f = _parse_formula("box(q -> r) -> (box q -> box r)", n)
    v = _guard(lambda: decide.is_one_tautology(
        f, SemanticsVariant.ALT_BOX, ("q", "r"), n))
    if v.is_tautology:
        click.echo("distribution holds under the alternative box")
        return
    click.echo(f"distribution fails (first countermodel after {v.models_checked} models)")
    _print_countermodel(v)
    sys.exit(1)


if __name__ == "__main__":
    main()
