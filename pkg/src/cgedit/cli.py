"""Command-line interface: ``cgedit recognize|mdtree|edit|gen|bench``.

Randomized commands take ``--seed``; without it they use seed 0.
"""

from __future__ import annotations

import sys

import click

from . import bench as benchmod
from .cograph import cograph_witness
from .editing import METHODS, edit, verify_edit_result
from .generate import generate_perturbed_cograph
from .io import FormatError, parse_graph, serialize_edit_set, serialize_graph, serialize_mdtree, serialize_trace
from .merge import NotModulePreserving, pairwise_merge_sequence
from .modules import modular_decomposition_tree

FORMATS = ("text",)


def _format_option(f):
    return click.option("--format", "fmt", type=click.Choice(FORMATS), default="text", show_default=True,
                        help="Input/output format (only 'text' for now).")(f)


def _load(graph_file) -> object:
    try:
        return parse_graph(graph_file.read())
    except FormatError as exc:
        raise click.ClickException(f"{graph_file.name}: {exc}") from None


@click.group()
@click.version_option(package_name="artifact")
def main():
    """Cograph editing by merging modules."""


@main.command()
@click.argument("graph_file", type=click.File("r"))
@_format_option
def recognize(graph_file, fmt):
    """Print 'cograph' (exit 0) or an induced P4 witness (exit 1)."""
    q = cograph_witness(_load(graph_file))
    if q is None:
        click.echo("cograph")
        return
    click.echo("not-cograph witness: " + " ".join(map(str, q)))
    sys.exit(1)


@main.command()
@click.argument("graph_file", type=click.File("r"))
@_format_option
def mdtree(graph_file, fmt):
    """Print the modular decomposition tree."""
    click.echo(serialize_mdtree(modular_decomposition_tree(_load(graph_file))))


@main.command("edit")
@click.argument("graph_file", type=click.File("r"))
@click.option("--method", type=click.Choice(METHODS), default="exact", show_default=True)
@click.option("--seed", type=int, default=0, show_default=True, help="Seed for randomized methods.")
@click.option("--trace", "trace_path", type=click.Path(dir_okay=False, writable=True),
              help="Write the pairwise merge trace here.")
@click.option("--verify", is_flag=True, help="Re-check the result; exit 1 on failure.")
@_format_option
def edit_cmd(graph_file, method, seed, trace_path, verify, fmt):
    """Print an edit set (one 'x y' pair per line); the cost goes to stderr."""
    g = _load(graph_file)
    try:
        r = edit(g, method, seed=seed)
    except (RuntimeError, ValueError) as exc:
        raise click.ClickException(str(exc)) from None
    click.echo(serialize_edit_set(r.edits), nl=False)
    click.echo(f"cost: {r.cost}", err=True)
    if trace_path:
        trace = r.trace
        if trace is None:
            try:
                trace = pairwise_merge_sequence(g, r.edits)
            except NotModulePreserving as exc:
                raise click.ClickException(f"no merge trace: {exc}") from None
        with open(trace_path, "w", encoding="utf-8") as fh:
            fh.write(serialize_trace(trace))
    if verify:
        report = verify_edit_result(g, r)
        click.echo(str(report), err=True)
        if not report.ok:
            sys.exit(1)


@main.command()
@click.option("--n", "n", type=int, required=True, help="Number of vertices.")
@click.option("--k", "k", type=int, required=True, help="Number of random pair flips.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--emit-planted", is_flag=True, help="Add the planted cotree and flips as comments.")
@_format_option
def gen(n, k, seed, emit_planted, fmt):
    """Print a random cograph with k planted flips."""
    try:
        inst = generate_perturbed_cograph(n, k, seed)
    except ValueError as exc:
        raise click.ClickException(str(exc)) from None
    comments = [f"generated n={n} k={k} seed={seed}"]
    if emit_planted:
        comments.append(f"planted-cotree: {serialize_mdtree(inst.planted)}")
        comments.extend(f"planted-edit: {x} {y}" for x, y in sorted(inst.edits))
    click.echo(serialize_graph(inst.graph, comments), nl=False)


@main.command("bench")
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), required=True,
              help="TOML file with sizes, ks, methods, reps, seed, workers.")
@click.option("--scaling", is_flag=True, help="Print the greedy phase-time table instead of CSV.")
@_format_option
def bench_cmd(config_path, scaling, fmt):
    """Run the benchmark; CSV on stdout, mean cost per method on stderr."""
    try:
        cfg = benchmod.load_config(config_path)
    except benchmod.ConfigError as exc:
        raise click.ClickException(str(exc)) from None
    if scaling:
        sizes = cfg.scaling_sizes or cfg.sizes
        click.echo(benchmod.format_scaling(benchmod.scaling_table(sizes, cfg.reps, cfg.seed)))
        return
    records = benchmod.write_csv(benchmod.run_benchmark(cfg), sys.stdout)
    for method, mean in benchmod.summary(records).items():
        click.echo(f"mean cost {method}: {mean:.3f}", err=True)


if __name__ == "__main__":  # pragma: no cover
    main()
