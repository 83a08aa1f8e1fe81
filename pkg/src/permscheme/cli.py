"""Command-line front end.

Subcommands: ``scheme find``, ``scheme verify``, ``count``, ``sequence``,
``guess``, ``oracle count``, ``oracle members``, ``compare``. Exit codes:
0 success, 1 honest negative result (no scheme, no recurrence, failed
cross-check), 2 usage or input error.
"""

from __future__ import annotations

import json
import os
import sys
from dataclasses import dataclass

import click

from . import counting, oracle, recurrence
from .perms import PatternSet, format_permutation, parse_pattern_set
from .scheme import (
    MODE_CERTIFIED,
    MODE_EMPIRICAL,
    Scheme,
    SchemeFormatError,
    deserialize,
    search,
    search_with_symmetries,
    serialize,
    validate,
)

SCHEMA_VERSION = 1


@dataclass
class RunConfig:
    threads: int


def _read_threads() -> int:
    raw = os.environ.get("WILF_THREADS")
    if raw is None:
        return 1
    try:
        threads = int(raw)
    except ValueError:
        raise click.UsageError(f"WILF_THREADS must be a positive integer, got {raw!r}")
    if threads < 1:
        raise click.UsageError(f"WILF_THREADS must be a positive integer, got {raw!r}")
    return threads


def _patterns_arg(text: str) -> PatternSet:
    try:
        return parse_pattern_set(text)
    except ValueError as exc:
        raise click.UsageError(str(exc))


def _load_scheme(path: str) -> Scheme:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise click.UsageError(f"cannot read scheme file {path}: {exc}")
    try:
        return deserialize(text)
    except SchemeFormatError as exc:
        raise click.UsageError(f"malformed scheme document {path}: {exc}")


def _emit_json(payload: dict) -> None:
    click.echo(json.dumps({"schema_version": SCHEMA_VERSION, **payload}, separators=(",", ":")))


@click.group()
@click.pass_context
def main(ctx: click.Context) -> None:
    """Discover and run prefix enumeration schemes for forbidden patterns."""
    ctx.obj = RunConfig(threads=_read_threads())


@main.group("scheme")
def scheme_group() -> None:
    """Discover, inspect, and verify scheme documents."""


@scheme_group.command("find")
@click.option("-p", "--patterns", "patterns_text", required=True, help='Pattern set, e.g. "123,132" or "[[1,2,3]]".')
@click.option("--max-depth", default=4, show_default=True, type=int, help="Largest prefix length to expand to.")
@click.option("--mode", default=MODE_CERTIFIED, show_default=True, type=click.Choice([MODE_CERTIFIED, MODE_EMPIRICAL]))
@click.option("--empirical-n", default=oracle.DEFAULT_HORIZON, show_default=True, type=int, help="Largest size checked in empirical mode.")
@click.option("--symmetries", is_flag=True, help="Also try reverse/inverse images of the pattern set.")
@click.option("--explain", is_flag=True, help="Emit the certification log as JSON lines on stderr.")
@click.option("-o", "--output", type=click.Path(dir_okay=False), help="Write the scheme document here instead of stdout.")
@click.pass_context
def scheme_find(
    ctx: click.Context,
    patterns_text: str,
    max_depth: int,
    mode: str,
    empirical_n: int,
    symmetries: bool,
    explain: bool,
    output: "str | None",
) -> None:
    """Search for a scheme and print its document."""
    patterns = _patterns_arg(patterns_text)
    if max_depth < 1:
        raise click.UsageError("--max-depth must be >= 1")
    if mode == MODE_EMPIRICAL and explain:
        raise click.UsageError("--explain requires --mode certified")
    if mode == MODE_EMPIRICAL and symmetries:
        raise click.UsageError("--symmetries requires --mode certified")
    log: "list[dict] | None" = [] if explain else None
    label = "identity"
    if mode == MODE_EMPIRICAL:
        if empirical_n < 1:
            raise click.UsageError("--empirical-n must be >= 1")
        found = oracle.empirical_scheme_search(patterns, max_depth, empirical_n)
    elif symmetries:
        hit = search_with_symmetries(patterns, max_depth)
        found = None if hit is None else hit[0]
        if hit is not None:
            label = hit[1]
    else:
        found = search(patterns, max_depth, log)
    if explain and log is not None:
        for record in log:
            click.echo(json.dumps(record, separators=(",", ":")), err=True)
    if found is None:
        _emit_json(
            {
                "result": "failure",
                "reason": "no scheme within depth bound",
                "patterns": [list(p) for p in patterns],
                "max_depth": max_depth,
            }
        )
        ctx.exit(1)
    if symmetries:
        click.echo(f"symmetry: {label}", err=True)
    document = serialize(found)
    if output:
        with open(output, "w", encoding="utf-8") as handle:
            handle.write(document)
    else:
        click.echo(document, nl=False)


@scheme_group.command("verify")
@click.option("--scheme", "scheme_path", required=True, type=click.Path(dir_okay=False))
@click.option("--check-n", default=oracle.DEFAULT_HORIZON, show_default=True, type=int, help="Cross-check counts against brute force up to this size.")
@click.pass_context
def scheme_verify(ctx: click.Context, scheme_path: str, check_n: int) -> None:
    """Validate a scheme document and cross-check it against brute force."""
    if check_n < 0:
        raise click.UsageError("--check-n must be >= 0")
    loaded = _load_scheme(scheme_path)
    click.echo("structure: ok")
    for n in range(1, check_n + 1):
        expected = oracle.count_avoiders(n, loaded.patterns)
        got = counting.count(loaded, n)
        if got != expected:
            click.echo(f"mismatch at n={n}: scheme {got}, brute force {expected}")
            ctx.exit(1)
    click.echo(f"counts match brute force for n <= {check_n}")


@main.command("count")
@click.option("--scheme", "scheme_path", required=True, type=click.Path(dir_okay=False))
@click.option("-n", "size", required=True, type=int)
@click.option("--format", "fmt", default="lines", show_default=True, type=click.Choice(["lines", "json"]))
def count_cmd(scheme_path: str, size: int, fmt: str) -> None:
    """Count avoiders of one size with a saved scheme."""
    if size < 0:
        raise click.UsageError("-n must be >= 0")
    loaded = _load_scheme(scheme_path)
    value = counting.count(loaded, size)
    if fmt == "json":
        _emit_json({"n": size, "count": value})
    else:
        click.echo(str(value))


@main.command("sequence")
@click.option("--scheme", "scheme_path", required=True, type=click.Path(dir_okay=False))
@click.option("-L", "--length", "length", required=True, type=int)
@click.option("--format", "fmt", default="lines", show_default=True, type=click.Choice(["lines", "json"]))
def sequence_cmd(scheme_path: str, length: int, fmt: str) -> None:
    """Print the counting sequence for n = 1..L."""
    if length < 1:
        raise click.UsageError("-L must be >= 1")
    loaded = _load_scheme(scheme_path)
    terms = counting.sequence(loaded, length)
    if fmt == "json":
        _emit_json({"length": length, "terms": terms})
    else:
        for term in terms:
            click.echo(str(term))


def _read_terms_file(path: str) -> list[int]:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise click.UsageError(f"cannot read terms file {path}: {exc}")
    text = text.strip()
    if not text:
        raise click.UsageError(f"terms file {path} is empty")
    if text.startswith("["):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise click.UsageError(f"terms file {path}: {exc}")
        if not isinstance(data, list) or not all(isinstance(v, int) for v in data):
            raise click.UsageError(f"terms file {path} must hold integers")
        return data
    try:
        return [int(line) for line in text.split()]
    except ValueError as exc:
        raise click.UsageError(f"terms file {path}: {exc}")


@main.command("guess")
@click.option("--scheme", "scheme_path", type=click.Path(dir_okay=False), help="Compute terms from this scheme.")
@click.option("--terms-file", type=click.Path(dir_okay=False), help="Read terms from a file instead.")
@click.option("-L", "--length", "length", type=int, help="How many terms to compute from the scheme.")
@click.option("--max-order", default=3, show_default=True, type=int)
@click.option("--max-degree", default=2, show_default=True, type=int)
@click.option("--guard", default=recurrence.DEFAULT_GUARD, show_default=True, type=int, help="Held-out terms a candidate must also annihilate.")
@click.option("--format", "fmt", default="lines", show_default=True, type=click.Choice(["lines", "json"]))
@click.pass_context
def guess_cmd(
    ctx: click.Context,
    scheme_path: "str | None",
    terms_file: "str | None",
    length: "int | None",
    max_order: int,
    max_degree: int,
    guard: int,
    fmt: str,
) -> None:
    """Conjecture a polynomial-coefficient linear recurrence for the counts."""
    if (scheme_path is None) == (terms_file is None):
        raise click.UsageError("provide exactly one of --scheme or --terms-file")
    if scheme_path is not None:
        if length is None:
            raise click.UsageError("--scheme requires -L to choose how many terms to compute")
        if length < 1:
            raise click.UsageError("-L must be >= 1")
        terms = counting.sequence(_load_scheme(scheme_path), length)
    else:
        terms = _read_terms_file(terms_file)
    try:
        candidate = recurrence.guess_recurrence(terms, max_order, max_degree, guard)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    if candidate is None:
        if fmt == "json":
            _emit_json(
                {"status": "no-recurrence", "max_order": max_order, "max_degree": max_degree}
            )
        else:
            click.echo(f"no recurrence found (order <= {max_order}, degree <= {max_degree})")
        ctx.exit(1)
    if fmt == "json":
        _emit_json(candidate.to_json())
    else:
        click.echo(f"CONJECTURE: {candidate.rendered()}")


@main.group("oracle")
def oracle_group() -> None:
    """Brute-force queries (exact, exponential; keep n small)."""


@oracle_group.command("count")
@click.option("-p", "--patterns", "patterns_text", required=True)
@click.option("-n", "size", required=True, type=int)
@click.option("--format", "fmt", default="lines", show_default=True, type=click.Choice(["lines", "json"]))
def oracle_count(patterns_text: str, size: int, fmt: str) -> None:
    """Count avoiders by exhaustive search."""
    if size < 0:
        raise click.UsageError("-n must be >= 0")
    patterns = _patterns_arg(patterns_text)
    value = oracle.count_avoiders(size, patterns)
    if fmt == "json":
        _emit_json({"n": size, "count": value})
    else:
        click.echo(str(value))


@oracle_group.command("members")
@click.option("-p", "--patterns", "patterns_text", required=True)
@click.option("-n", "size", required=True, type=int)
@click.option("--format", "fmt", default="lines", show_default=True, type=click.Choice(["lines", "json"]))
def oracle_members(patterns_text: str, size: int, fmt: str) -> None:
    """List every avoider of one size, lexicographically."""
    if size < 0:
        raise click.UsageError("-n must be >= 0")
    patterns = _patterns_arg(patterns_text)
    members = oracle.enumerate_avoiders(size, patterns)
    if fmt == "json":
        _emit_json({"n": size, "members": [list(p) for p in members]})
    else:
        for member in members:
            click.echo(format_permutation(member))


def _sequence_for(patterns: PatternSet, length: int, max_depth: int) -> tuple[list[int], str]:
    found = search(patterns, max_depth)
    if found is not None:
        return counting.sequence(found, length), "scheme"
    return [oracle.count_avoiders(n, patterns) for n in range(1, length + 1)], "brute-force"


@main.command("compare")
@click.option("-a", "patterns_a", required=True, help="First pattern set.")
@click.option("-b", "patterns_b", required=True, help="Second pattern set.")
@click.option("-L", "--length", "length", default=8, show_default=True, type=int)
@click.option("--max-depth", default=4, show_default=True, type=int)
@click.option("--format", "fmt", default="lines", show_default=True, type=click.Choice(["lines", "json"]))
def compare_cmd(patterns_a: str, patterns_b: str, length: int, max_depth: int, fmt: str) -> None:
    """Compare two counting sequences: empirical Wilf-equivalence evidence.

    Each side uses a discovered scheme when one exists and brute force
    otherwise. Agreement up to L is evidence, never a proof.
    """
    if length < 1:
        raise click.UsageError("-L must be >= 1")
    if max_depth < 1:
        raise click.UsageError("--max-depth must be >= 1")
    pats_a = _patterns_arg(patterns_a)
    pats_b = _patterns_arg(patterns_b)
    seq_a, method_a = _sequence_for(pats_a, length, max_depth)
    seq_b, method_b = _sequence_for(pats_b, length, max_depth)
    agree = seq_a == seq_b
    first_diff = next((n for n, (x, y) in enumerate(zip(seq_a, seq_b), start=1) if x != y), None)
    if fmt == "json":
        _emit_json(
            {
                "a": {"patterns": [list(p) for p in pats_a], "method": method_a, "terms": seq_a},
                "b": {"patterns": [list(p) for p in pats_b], "method": method_b, "terms": seq_b},
                "agree": agree,
                "first_difference": first_diff,
                "note": "empirical Wilf-equivalence evidence, not a proof",
            }
        )
        return
    click.echo("a: " + " ".join(str(t) for t in seq_a))
    click.echo("b: " + " ".join(str(t) for t in seq_b))
    if agree:
        click.echo(f"sequences agree (n <= {length}) -- empirical Wilf-equivalence evidence, not a proof")
    else:
        click.echo(f"sequences differ first at n = {first_diff}")


if __name__ == "__main__":
    main()
