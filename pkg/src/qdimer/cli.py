"""Command-line driver.

Exit status: 0 success, 1 bad input or usage, 2 a computed result contradicts a
structural guarantee (for example Kdet != +-Z).
"""

from __future__ import annotations

import csv
import io
import json
import os
import random
import sys
import tempfile
import time

import click

from . import __version__
from .connection import DiagonalConnection, build_quantum_identity, random_monomial_connection
from .generators import FAMILIES, bigon, cycle, grid2xm, honeycomb_patch, square_grid, zigzag
from .kasteleyn import kdet, verify_kasteleyn
from .laurent import NotDivisible
from .multiweb import Multiweb, enumerate_multiwebs
from .pgraph import CiliatedPlanarGraph, GraphError, dimer_covers
from .qtrace import TraceConsistencyError, partition_function

CSV_SCHEMA = "qdimer-csv v1"


class ConsistencyFailure(Exception):
    """Raised inside a command when an internal check fails; maps to exit status 2."""


def write_output(text: str, path: str | None) -> None:
    """stdout, or an atomic write through a temporary file in the target directory."""
    if path is None or path == "-":
        click.echo(text, nl=not text.endswith("\n"))
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".qdimer-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def graph_options(fn):
    opts = [
        click.option("--family", type=click.Choice(sorted(FAMILIES)), help="generator family"),
        click.option("--graph", "graph_path", type=click.Path(exists=True, dir_okay=False), help="graph JSON file"),
        click.option("--N", "N", type=int, help="cycle size (2N vertices)"),
        click.option("--m", "m", type=int, help="length for grid2xm / zigzag"),
        click.option("--w", "w", type=int, help="square_grid width"),
        click.option("--h", "h", type=int, help="square_grid height"),
        click.option("--a", "a", type=int, help="honeycomb_patch width in hexagons"),
        click.option("--b", "b", type=int, help="honeycomb_patch height in hexagons"),
        click.option("--cilia", type=click.Choice(["default", "trivial", "positive", "outward", "mixed"]), default="default"),
    ]
    for opt in reversed(opts):
        fn = opt(fn)
    return fn


def _need(value, flag, family):
    if value is None:
        raise click.UsageError(f"--family {family} needs {flag}")
    return value


def build_graph(family, graph_path, N, m, w, h, a, b, cilia) -> CiliatedPlanarGraph:
    if graph_path:
        with open(graph_path) as fh:
            G = CiliatedPlanarGraph.loads(fh.read())
        if cilia == "positive":
            G = G.positive_ciliation_from_dimer(dimer_covers(G)[0])
        elif cilia not in ("default", "outward"):
            raise click.UsageError("--graph supports only --cilia default or positive")
        return G
    if family is None:
        raise click.UsageError("give --family or --graph")
    mode = {} if cilia == "default" else {"cilia": cilia}
    if family == "cycle":
        return cycle(_need(N, "--N", family), **mode)
    if family == "bigon":
        return bigon(**mode)
    if family == "grid2xm":
        return grid2xm(_need(m, "--m", family), **mode)
    if family == "zigzag":
        return zigzag(_need(m, "--m", family), **mode)
    if family == "square_grid":
        return square_grid(_need(w, "--w", family), _need(h, "--h", family), **mode)
    return honeycomb_patch(_need(a, "--a", family), _need(b, "--b", family), **mode)


def load_connection(G, n, path) -> DiagonalConnection:
    if path is None:
        return build_quantum_identity(G, n)
    with open(path) as fh:
        conn = DiagonalConnection.from_json(G, json.load(fh))
    if conn.n != n:
        raise click.UsageError(f"connection has rank {conn.n}, but --n is {n}")
    return conn


def _header(ctx_info: dict) -> str:
    return "# " + CSV_SCHEMA + " " + " ".join(f"{k}={v}" for k, v in ctx_info.items())


@click.group()
@click.version_option(__version__)
def main():
    """Quantum n-dimer model: partition functions, Kasteleyn checks, statistics."""


@main.command()
@graph_options
@click.option("--out", default=None, help="output path (default stdout)")
def gen(out, **gopts):
    """Emit a generated graph as JSON."""
    G = build_graph(**gopts)
    write_output(json.dumps(G.to_json(), sort_keys=True, indent=1) + "\n", out)


@main.command()
@graph_options
@click.option("--n", "n", type=int, required=True)
@click.option("--count", is_flag=True, help="print only the number of multiwebs")
@click.option("--out", default=None)
def webs(n, count, out, **gopts):
    """List n-multiwebs (one JSON object of edge multiplicities per line)."""
    G = build_graph(**gopts)
    ws = enumerate_multiwebs(G, n)
    if count:
        write_output(f"{len(ws)}\n", out)
        return
    lines = [json.dumps({str(k): v for k, v in m.as_dict(G).items()}, sort_keys=True) for m in ws]
    write_output("\n".join(lines) + "\n", out)


@main.command()
@graph_options
@click.option("--n", "n", type=int, required=True)
@click.option("--identity-q", is_flag=True, help="use the quantum identity connection (default)")
@click.option("--connection", "conn_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
def zq(n, identity_q, conn_path, fmt, **gopts):
    """Normalized quantum partition function Z_q."""
    if identity_q and conn_path:
        raise click.UsageError("--identity-q and --connection are exclusive")
    G = build_graph(**gopts)
    conn = load_connection(G, n, conn_path)
    Z = partition_function(conn, G, n)
    click.echo(json.dumps(Z.to_json()) if fmt == "json" else Z.to_text())


@main.command("kdet")
@graph_options
@click.option("--n", "n", type=int, required=True)
@click.option("--connection", "conn_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
def kdet_cmd(n, conn_path, fmt, **gopts):
    """Normalized quantum Kasteleyn determinant."""
    G = build_graph(**gopts)
    K = kdet(load_connection(G, n, conn_path), G)
    click.echo(json.dumps(K.to_json()) if fmt == "json" else K.to_text())


@main.command()
@graph_options
@click.option("--n", "n", type=int, required=True)
@click.option("--random-diagonal", is_flag=True, help="random diagonal monomial connections")
@click.option("--trials", type=int, default=1)
@click.option("--seed", type=int, default=0)
@click.option("--span", type=int, default=3, help="max |exponent| of random entries")
def verify(n, random_diagonal, trials, seed, span, **gopts):
    """Check Kdet_q = +-Z_q."""
    G = build_graph(**gopts)
    rng = random.Random(seed)
    click.echo(f"# seed={seed} graph={G.name} n={n}")
    failures = 0
    for t in range(trials if random_diagonal else 1):
        conn = random_monomial_connection(G, n, rng, span) if random_diagonal else build_quantum_identity(G, n)
        res = verify_kasteleyn(conn, G)
        status = "match" if res.match else "MISMATCH"
        click.echo(f"trial {t}: {status} sign {res.sign:+d}" + (f" {res.detail}" if res.detail else ""))
        failures += not res.match
    if failures:
        raise ConsistencyFailure(f"{failures} trial(s) violate Kdet = +-Z")


@main.command()
@graph_options
@click.option("--n", "n", type=int, required=True)
@click.option("--out", default=None)
def stats(n, out, **gopts):
    """Per-multiweb CSV of tr_1, X_n and probabilities, with a summary row."""
    from .stats import measure_report

    G = build_graph(**gopts)
    rep = measure_report(G, n)
    if not rep.consistent or not rep.probabilities_sum_to_one():
        raise ConsistencyFailure("expectation routes disagree or probabilities do not sum to 1")
    buf = io.StringIO()
    buf.write(_header({"graph": rep.graph, "n": n}) + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["multiweb", "tr1", "X", "P", "Pu"])
    for i, r in enumerate(rep.rows):
        writer.writerow([i, r.tr_one, r.twist, r.natural, r.uniform])
    writer.writerow(["summary", rep.z_one, f"E={rep.expected}", f"Eu={rep.expected_uniform}", ""])
    write_output(buf.getvalue(), out)


@main.command()
@click.option("--cutoff", type=int, default=300, show_default=True)
@click.option("--nodes", type=int, default=None, help="quadrature nodes per window")
@click.option("--table", "table_path", default=None, help="also dump the B[x,y] table as CSV")
def density(cutoff, nodes, table_path):
    """Honeycomb double-dimer loop density rho(R)."""
    from .density import green_table, rho_honeycomb

    start = time.perf_counter()
    res = rho_honeycomb(cutoff, nodes)
    click.echo(f"cutoff      {res.cutoff}")
    click.echo(f"constant    {res.constant:.15g}")
    click.echo(f"series      {res.series:.15g}")
    click.echo(f"rho         {res.rho:.15g}")
    click.echo(f"1/rho       {res.reciprocal:.10f}")
    click.echo(f"tail est.   {res.tail:.3e}  (extrapolated rho {res.extrapolated:.12g})")
    click.echo(f"table error {res.table_error:.2e}  backend {res.backend}  {time.perf_counter() - start:.1f} s")
    if table_path:
        table = green_table(cutoff, nodes)
        buf = io.StringIO()
        buf.write(_header({"cutoff": cutoff, "nodes": table.nodes}) + "\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["x", "y", "B"])
        for x, y, v in table.rows():
            writer.writerow([x, y, repr(v)])
        write_output(buf.getvalue(), table_path)


@main.group()
def rt():
    """Reshetikhin-Turaev diagram evaluation."""


@rt.command("eval")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--n", "n", type=int, required=True)
def rt_eval(path, n):
    """Evaluate a closed diagram written in the slice language."""
    from .rteval import WebDiagram, evaluate

    with open(path) as fh:
        d = WebDiagram.from_text(fh.read())
    click.echo(evaluate(d, n).to_text())


@rt.command("from-graph")
@graph_options
@click.option("--n", "n", type=int, required=True)
@click.option("--index", type=int, default=0, help="multiweb index in enumeration order")
@click.option("--web", "web_json", default=None, help="multiweb as JSON {edge: multiplicity}")
@click.option("--evaluate/--no-evaluate", default=True)
def rt_from_graph(n, index, web_json, evaluate, **gopts):
    """Sweep a multiweb into a diagram; print it and its trace."""
    from .rteval import from_multiweb, rt_trace
    from .qtrace import trace_diagonal

    G = build_graph(**gopts)
    if web_json:
        raw = json.loads(web_json)
        ids = {str(e.id): e.id for e in G.edges}
        m = Multiweb.from_mapping(G, n, {ids[k]: v for k, v in raw.items()})
    else:
        ws = enumerate_multiwebs(G, n)
        if not 0 <= index < len(ws):
            raise click.UsageError(f"index out of range (0..{len(ws) - 1})")
        m = ws[index]
    click.echo(from_multiweb(G, m).to_text())
    if evaluate:
        value = rt_trace(G, m)
        planar = trace_diagonal(build_quantum_identity(G, n), G, m)
        click.echo(f"# rt trace {value.to_text()}")
        if value != planar:
            raise ConsistencyFailure(f"rt trace differs from the coloring trace {planar.to_text()}")


@main.command("qalgebra-selftest")
@click.option("--trials", type=int, default=500, show_default=True, help="random confluence trials")
@click.option("--seed", type=int, default=0)
def qalgebra_selftest(trials, seed):
    """Identities of the quantum matrix and Grassmann algebras."""
    from .qalgebra import confluence_check, selftest

    results = selftest()
    results["confluence"] = confluence_check(trials=trials, seed=seed)
    bad = [k for k, v in results.items() if not v]
    for k, v in results.items():
        click.echo(f"{'ok  ' if v else 'FAIL'} {k}")
    if bad:
        raise ConsistencyFailure(f"{len(bad)} identities failed")


def run(argv=None) -> int:
    """Entry point with the documented exit codes."""
    try:
        main.main(args=argv, prog_name="qdimer", standalone_mode=False)
        return 0
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.exceptions.Abort:
        return 1
    except click.ClickException as exc:
        exc.show()
        return 1
    except (ConsistencyFailure, TraceConsistencyError, NotDivisible) as exc:
        click.echo(f"internal consistency failure: {exc}", err=True)
        return 2
    except (GraphError, ValueError, OSError, json.JSONDecodeError) as exc:
        click.echo(f"error: {exc}", err=True)
        return 1
    except ArithmeticError as exc:
        click.echo(f"internal consistency failure: {exc}", err=True)
        return 2


def entry() -> None:
    sys.exit(run())


if __name__ == "__main__":
    entry()
