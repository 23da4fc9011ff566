"""Command-line front end.

Machine-readable payloads (JSON documents, system/coloring files when no
output path is given) go to standard output; progress notes go to standard
error.  Exit codes partition the failure classes:

* 2 - construction-level failure (bad order, bad quasigroup)
* 3 - unreadable or invalid input file
* 4 - scheme/label mismatch (no labels, no hole, no bicoloring)
* 5 - parameter violation in random processes and experiments

JSON reports carry ``"schema": "sts-report/1"``; readers should tolerate
unknown fields.  Timing fields are rounded to whole seconds so identical
invocations produce byte-identical outputs (wall-clock-limited searches are
the documented exception: the clock may flip ``exact`` itself).
"""

from __future__ import annotations

import json
import os
import sys
import time

import click

from . import colorings as col
from . import constructions as cons
from . import io as sio
from . import randomized as rnd
from .core import (
    EdgeColoring,
    InvalidHole,
    MissingLabels,
    StsError,
    TripleSystem,
    is_steiner,
    largest_mono_component,
    mono_components,
    verify_hole,
)
from .search import SearchBudget, alpha_star, independence_number, mc_exact, mc_upper_from_coloring

REPORT_SCHEMA = "sts-report/1"


def _emit(doc: dict) -> None:
    click.echo(json.dumps(doc, indent=2, sort_keys=True))


def _fail(message: str, code: int) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("STS_JOBS", "1")))
    except ValueError:
        return 1


def _budget(max_nodes: int, max_seconds: float, jobs: int | None) -> SearchBudget:
    return SearchBudget(max_nodes=max_nodes, max_seconds=max_seconds,
                        parallelism=jobs or _default_jobs())


@click.group()
def cli():
    """Steiner triple systems: generate, analyze, color, simulate."""


# ---------------------------------------------------------------------------
# gen
# ---------------------------------------------------------------------------

@cli.command()
@click.option("--construction", type=click.Choice(["fano", "s9", "bose", "skolem"]),
              required=True)
@click.option("--n", "n", type=int, default=None, help="Vertex count (bose/skolem).")
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None,
              help="Output file; stdout when omitted.")
@click.option("--quasigroup", type=click.Choice(["default", "random"]), default="default",
              help="Quasigroup backing bose/skolem.")
@click.option("--qseed", type=int, default=0, help="Seed for --quasigroup random.")
def gen(construction: str, n: int | None, output: str | None, quasigroup: str, qseed: int):
    """Generate a Steiner triple system and emit the system file."""
    try:
        if construction == "fano":
            system = cons.fano()
        elif construction == "s9":
            system = cons.s9()
        elif construction == "bose":
            if n is None:
                raise StsError("--n is required for bose")
            q = None
            if quasigroup == "random":
                q = cons.random_idempotent_quasigroup(n // 3, qseed)
            system = cons.bose(n, q)
        else:
            if n is None:
                raise StsError("--n is required for skolem")
            if quasigroup == "random":
                raise StsError("randomized quasigroups are odd-order (Bose) only")
            system = cons.skolem(n)
    except (StsError, ValueError) as exc:
        _fail(str(exc), 2)
        return
    text = sio.format_system(system)
    if output:
        with open(output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        click.echo(f"wrote {system.m} triples on {system.n} vertices to {output}", err=True)
    else:
        click.echo(text, nl=False)


# ---------------------------------------------------------------------------
# analyze
# ---------------------------------------------------------------------------

def _read_system_or_exit(path: str) -> TripleSystem:
    try:
        return sio.read_system(path)
    except (OSError, sio.FormatError, StsError) as exc:
        _fail(f"cannot read system from {path}: {exc}", 3)
        raise AssertionError  # unreachable


def _candidate_upper_colorings(ts: TripleSystem,
                               hole_cert) -> list[tuple[str, EdgeColoring]]:
    """Colorings usable to seed/bound the mc search, best effort."""
    out: list[tuple[str, EdgeColoring]] = []
    try:
        labeled = cons.infer_labels(ts)
        if ts.n % 6 == 3:
            out.append(("bose_coloring", col.bose_coloring(labeled)))
        else:
            out.append(("skolem_coloring", col.skolem_coloring(labeled)))
    except (MissingLabels, StsError):
        pass
    if hole_cert is not None and hole_cert.a > 0:
        try:
            out.append(("hole_coloring", col.hole_coloring(ts, hole_cert)))
        except InvalidHole:
            pass
    return out


def _result_doc(res, certificate_doc) -> dict:
    return {
        "value": res.value,
        "exact": res.exact,
        "certificate": certificate_doc,
        "nodes": res.budget_spent.nodes,
    }


def _verdict(name: str, statement: str, ok: bool | None) -> dict:
    return {"name": name, "statement": statement, "pass": ok}


def _reverify_certificates(ts: TripleSystem, alpha_res, astar_res, mc_res) -> None:
    """Certificates re-verify through the core layer before a report goes out."""
    if alpha_res is not None:
        cert = alpha_res.lower_certificate
        if len(cert) != alpha_res.value or any(set(t) <= cert for t in ts.triples):
            raise RuntimeError("independent-set certificate failed re-verification")
    if astar_res is not None:
        hole = astar_res.lower_certificate
        if hole.a != astar_res.value or not verify_hole(ts, hole):
            raise RuntimeError("hole certificate failed re-verification")
    if mc_res is not None:
        if mc_upper_from_coloring(mc_res.lower_certificate) != mc_res.value:
            raise RuntimeError("coloring certificate failed re-verification")


@cli.command()
@click.option("-i", "--input", "in_path", type=click.Path(exists=False), required=True)
@click.option("--param", type=click.Choice(["alpha", "alpha-star3", "mc3", "all"]),
              default="all")
@click.option("--max-nodes", type=int, default=100_000_000)
@click.option("--max-seconds", type=float, default=60.0)
@click.option("--jobs", type=int, default=None, help="Worker count (STS_JOBS).")
def analyze(in_path: str, param: str, max_nodes: int, max_seconds: float, jobs: int | None):
    """Compute Ramsey-type parameters of a system file and report JSON."""
    t_start = time.monotonic()
    ts = _read_system_or_exit(in_path)
    budget = _budget(max_nodes, max_seconds, jobs)
    steiner = is_steiner(ts)
    want = {"alpha", "alpha-star3", "mc3"} if param == "all" else {param}

    parameters: dict = {}
    alpha_res = None
    astar_res = None
    mc_res = None

    if "alpha" in want:
        click.echo("searching independence number...", err=True)
        alpha_res = independence_number(ts, budget)
        parameters["alpha"] = _result_doc(alpha_res, sorted(alpha_res.lower_certificate))
    if "alpha-star3" in want:
        click.echo("searching 3-partite-hole number...", err=True)
        astar_res = alpha_star(ts, 3, budget)
        hole = astar_res.lower_certificate
        parameters["alpha_star3"] = _result_doc(
            astar_res, {"k": hole.k, "a": hole.a, "parts": [sorted(p) for p in hole.parts]})
    if "mc3" in want:
        click.echo("searching monochromatic-component number...", err=True)
        hole_cert = astar_res.lower_certificate if astar_res else None
        candidates = _candidate_upper_colorings(ts, hole_cert)
        initial = None
        initial_name = "search"
        best_ub = None
        for name, coloring in candidates:
            ub = mc_upper_from_coloring(coloring)
            if best_ub is None or ub < best_ub:
                best_ub, initial, initial_name = ub, coloring, name
        mc_res = mc_exact(ts, 3, budget, initial=initial)
        parameters["mc3"] = _result_doc(
            mc_res, {"r": 3, "colors": list(mc_res.lower_certificate.colors)})
        parameters["mc3"]["upper_bound_source"] = (
            "search" if mc_res.exact or initial is None
            or mc_res.value < best_ub else initial_name)

    _reverify_certificates(ts, alpha_res, astar_res, mc_res)
    n = ts.n
    a_exact = astar_res.value if (astar_res and astar_res.exact) else None
    bounds = col.closed_form_bounds(n, a_exact) if n >= 3 else None

    verdicts = []
    if steiner and n > 3:
        verdicts.append(_verdict(
            "alpha_star3_upper", "alpha*_3 <= floor(n/3) - 1",
            None if a_exact is None else a_exact <= n // 3 - 1))
        mc_exact_val = mc_res.value if (mc_res and mc_res.exact) else None
        verdicts.append(_verdict(
            "mc3_gyarfas_lower", "mc_3 >= ceil(2n/3) + 1",
            None if mc_exact_val is None else mc_exact_val >= -(-2 * n // 3) + 1))
        verdicts.append(_verdict(
            "mc3_hole_chain", "n - 2*alpha*_3 <= mc_3 <= n - alpha*_3",
            None if (a_exact is None or mc_exact_val is None)
            else (n - 2 * a_exact <= mc_exact_val <= n - a_exact)))
        hole_a = astar_res.lower_certificate.a if astar_res else None
        verdicts.append(_verdict(
            "mc3_le_n_minus_hole", "mc_3 <= n - a for the verified hole",
            None if (hole_a is None or hole_a == 0 or mc_exact_val is None)
            else mc_exact_val <= n - hole_a))

    construction = None
    if steiner:
        try:
            cons.infer_labels(ts)
            construction = "bose" if ts.n % 6 == 3 else "skolem"
        except (MissingLabels, StsError):
            pass
    report = {
        "schema": REPORT_SCHEMA,
        "input": {
            "path": in_path,
            "n": ts.n,
            "m": ts.m,
            "steiner": steiner,
            "degenerate": steiner and ts.n == 3,
            "construction": construction,
        },
        "parameters": parameters,
        "bounds": None if bounds is None else {
            "gyarfas": bounds.gyarfas,
            "alpha_upper": bounds.alpha_upper,
            "hole_upper": bounds.hole_upper,
            "hole_lower": bounds.hole_lower,
            "z2": round(bounds.z2, 6),
            "z2_exceeds_gyarfas": bounds.z2_exceeds_gyarfas,
        },
        "verdicts": verdicts,
        "timing": {"total_seconds": round(time.monotonic() - t_start)},
    }
    _emit(report)


# ---------------------------------------------------------------------------
# color
# ---------------------------------------------------------------------------

def _coloring_summary(coloring: EdgeColoring, scheme: str, bound: int | None) -> dict:
    comps = mono_components(coloring)
    size, color, witness = largest_mono_component(coloring)
    per_color = []
    for c in range(coloring.r):
        per_color.append({
            "color": c,
            "triples": len(coloring.class_indices(c)),
            "span": len(comps.spanned[c]),
            "component_sizes": sorted((len(x) for x in comps.components[c]), reverse=True),
        })
    return {
        "schema": REPORT_SCHEMA,
        "scheme": scheme,
        "colors": coloring.r,
        "per_color": per_color,
        "max_component": {"size": size, "color": color, "vertices": sorted(witness)},
        "guaranteed_bound": bound,
    }


@cli.command()
@click.option("-i", "--input", "in_path", required=True)
@click.option("--scheme", type=click.Choice(["hole", "bose", "skolem", "bicolor"]),
              required=True)
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None,
              help="Coloring file to write.")
@click.option("--hole-file", type=click.Path(dir_okay=False), default=None,
              help="Use this hole certificate instead of searching (scheme hole).")
@click.option("--max-nodes", type=int, default=100_000_000)
@click.option("--max-seconds", type=float, default=60.0)
def color(in_path: str, scheme: str, output: str | None, hole_file: str | None,
          max_nodes: int, max_seconds: float):
    """Build one of the explicit colorings and print its span/component table."""
    ts = _read_system_or_exit(in_path)
    bound: int | None = None
    try:
        if scheme == "bose":
            if ts.n % 6 != 3:
                raise MissingLabels(f"n={ts.n} is not a Bose order (need n = 3 mod 6)")
            coloring = col.bose_coloring(cons.infer_labels(ts))
            k = (ts.n - 3) // 6
            bound = 4 * k + 2 + -(-(2 * k + 1) // 3)
        elif scheme == "skolem":
            if ts.n % 6 != 1:
                raise MissingLabels(f"n={ts.n} is not a Skolem order (need n = 1 mod 6)")
            coloring = col.skolem_coloring(cons.infer_labels(ts))
            k = ts.n // 6
            bound = -(-k // 3) + 4 * k + 1
        elif scheme == "hole":
            if hole_file:
                try:
                    hole = sio.read_hole(hole_file)
                except (OSError, sio.FormatError) as exc:
                    _fail(f"cannot read hole file: {exc}", 3)
            else:
                click.echo("searching 3-partite hole...", err=True)
                hole = alpha_star(ts, 3, _budget(max_nodes, max_seconds, None)).lower_certificate
            if hole.a == 0:
                raise InvalidHole("no non-trivial hole available")
            coloring = col.hole_coloring(ts, hole)
            bound = ts.n - hole.a
        else:  # bicolor
            click.echo("searching bicoloring...", err=True)
            bi = col.bicoloring_search(ts)
            if bi is None:
                raise MissingLabels("system admits no bicoloring")
            hole, bicolor_bound = col.bicoloring_to_bound(bi)
            coloring = col.hole_coloring(ts, hole)
            bound = bicolor_bound
    except (MissingLabels, InvalidHole, StsError) as exc:
        _fail(str(exc), 4)
        return
    if output:
        sio.write_coloring(coloring, output)
        click.echo(f"wrote coloring to {output}", err=True)
    _emit(_coloring_summary(coloring, scheme, bound))


# ---------------------------------------------------------------------------
# random processes
# ---------------------------------------------------------------------------

@cli.command("random")
@click.option("--process", type=click.Choice(
    ["triangle-removal", "binomial", "linearized", "sts"]), required=True)
@click.option("--n", type=int, required=True)
@click.option("--m", type=int, default=None, help="Steps for triangle-removal.")
@click.option("--p", type=float, default=None, help="Triple probability for binomial/linearized.")
@click.option("--seed", type=int, required=True)
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None)
def random_cmd(process: str, n: int, m: int | None, p: float | None, seed: int,
               output: str | None):
    """Run one seeded random process and emit the resulting system file."""
    try:
        doc: dict = {"schema": REPORT_SCHEMA, "process": process, "n": n, "seed": seed}
        if process == "triangle-removal":
            if m is None:
                raise ValueError("--m is required for triangle-removal")
            outcome = rnd.triangle_removal(n, m, seed)
            if outcome.stuck:
                doc.update({"stuck": True, "m": m})
                _emit(doc)
                return
            system = outcome.system.to_triple_system()
            doc.update({"stuck": False, "m": m, "triples": system.m,
                        "linear": outcome.system.linear})
        elif process == "binomial":
            if p is None:
                raise ValueError("--p is required for binomial")
            system = rnd.binomial_3graph(n, p, seed)
            doc.update({"p": p, "triples": system.m})
        elif process == "linearized":
            if p is None:
                raise ValueError("--p is required for linearized")
            partial = rnd.linearize(rnd.binomial_3graph(n, p, seed))
            system = partial.to_triple_system()
            doc.update({"p": p, "triples": system.m, "linear": partial.linear})
        else:  # sts
            full = rnd.random_sts(n, seed)
            system = full.base
            doc.update({"triples": system.m, "steiner": True})
    except (StsError, ValueError) as exc:
        _fail(str(exc), 5)
        return
    if output:
        sio.write_system(system, output)
        doc["output"] = output
    else:
        doc["system"] = sio.format_system(system).splitlines()
    _emit(doc)


# ---------------------------------------------------------------------------
# experiments
# ---------------------------------------------------------------------------

@cli.group()
def experiment():
    """Seeded empirical experiments."""


@experiment.command()
@click.option("--n", type=int, required=True)
@click.option("--samples", type=int, required=True)
@click.option("--seed", type=int, required=True)
@click.option("--csv", "csv_path", type=click.Path(dir_okay=False), required=True)
@click.option("--max-nodes", type=int, default=100_000_000)
@click.option("--max-seconds", type=float, default=60.0)
def discrepancy(n: int, samples: int, seed: int, csv_path: str,
                max_nodes: int, max_seconds: float):
    """Measure alpha*_3 over partial and full random systems; write CSV."""
    try:
        rows, summary = rnd.experiment_discrepancy(
            n, samples, seed, SearchBudget(max_nodes=max_nodes, max_seconds=max_seconds))
    except (StsError, ValueError) as exc:
        _fail(str(exc), 5)
        return
    rnd.write_experiment_csv(rows, csv_path)
    summary["schema"] = REPORT_SCHEMA
    summary["csv"] = csv_path
    summary["rows"] = len(rows)
    _emit(summary)


@experiment.command()
@click.option("--kmax", type=int, required=True)
def cdr(kmax: int):
    """Evaluate the bicoloring growth recursion with exact rationals."""
    try:
        terms = col.cdr_sequence(kmax)
    except ValueError as exc:
        _fail(str(exc), 5)
        return
    # values square each step and quickly outgrow every consumer's integer
    # type, so the exact values travel as decimal strings; lift Python's own
    # int-to-decimal guard far enough to format them
    digits = max(t.n.bit_length() for t in terms) // 3 + 16
    if hasattr(sys, "set_int_max_str_digits") and digits > sys.get_int_max_str_digits():
        sys.set_int_max_str_digits(digits)
    table = [{"k": t.k, "M": str(t.m), "N": str(t.n),
              "r": f"{t.r.numerator}/{t.r.denominator}",
              "r_float": float(t.r)} for t in terms]
    _emit({"schema": REPORT_SCHEMA, "terms": table})


def main() -> None:
    cli()


if __name__ == "__main__":
    main()
