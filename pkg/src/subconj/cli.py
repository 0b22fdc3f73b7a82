"""Command-line front end.

Exit status: 0 when every check passes, 1 when any check fails, 2 on usage
or input errors.  Output is deterministic for a given invocation; timings are
only printed with ``--timings``.
"""

from __future__ import annotations

import json
import sys
from dataclasses import replace
from typing import TextIO

import click

from . import audit, codec, group, subshift
from .alphabet import ParseError, format_word, parse_word
from .codec import RHO


class InputError(click.ClickException):
    """Malformed user input."""

    exit_code = 2


def _lines(stream: TextIO) -> list[str]:
    return stream.read().splitlines()


def _load_forbidden(path: str | None, stream: TextIO | None = None) -> subshift.ForbiddenSet:
    try:
        if path is not None:
            return subshift.load_forbidden(path)
        if stream is not None:
            return subshift.parse_forbidden(stream.read())
    except (ParseError, OSError) as exc:
        raise InputError(str(exc)) from None
    return subshift.ForbiddenSet()


def _gamma(text: str) -> group.GroupElement:
    try:
        return group.parse_element(text)
    except ParseError as exc:
        raise InputError(str(exc)) from None


def _flip(spec: str) -> codec.RhoTable:
    token, _, bit = spec.partition(":")
    try:
        (sym,) = parse_word(token)
        return RHO.flipped(sym, int(bit))
    except (ParseError, ValueError, IndexError):
        raise InputError(f"--flip-rho expects SYMBOL:BIT such as 'a1:3', got {spec!r}") from None


@click.group()
def main():
    """Verify the block-code constructions behind the binary one-sided subshift embedding."""


@main.command()
@click.option("--suite", "suites", multiple=True, type=click.Choice(list(audit.SUITES) + ["mutation"]),
              help="Run only these suites (repeatable). Default: every suite except mutation.")
@click.option("--max-len", type=click.IntRange(min=1), default=None, help="Cap every word-length bound.")
@click.option("--max-norm", type=click.IntRange(min=0), default=None, help="Cap the group normal-form bounds.")
@click.option("--forbidden", type=click.Path(dir_okay=False), default=None,
              help="Forbidden-set file to use instead of the default family.")
@click.option("--seed", type=int, default=audit.DEFAULT_SEED, show_default=True)
@click.option("--json", "as_json", is_flag=True, help="Emit one JSON object per check.")
@click.option("--timings", is_flag=True, help="Include wall-clock durations.")
@click.option("--flip-rho", default=None, hidden=True, help="Test hook: flip one code-table bit, e.g. 'a1:3'.")
def verify(suites, max_len, max_norm, forbidden, seed, as_json, timings, flip_rho):
    """Run the verification audit."""
    cfg = audit.AuditConfig(seed=seed).capped(max_len, max_norm)
    if forbidden is not None:
        cfg = replace(cfg, forbidden=(_load_forbidden(forbidden),))
    if flip_rho is not None:
        cfg = replace(cfg, rho=_flip(flip_rho))
    names = list(suites) or list(audit.SUITES)
    reports = audit.run_audit(cfg, [n for n in names if n != "mutation"])
    failed = 0
    total = 0

    def emit(rep):
        nonlocal failed, total
        total += 1
        failed += not rep.passed
        if as_json:
            click.echo(json.dumps(rep.as_dict(timings), sort_keys=True, default=str))
        else:
            click.echo(rep.line(timings))

    for rep in reports:
        emit(rep)
    if "mutation" in names:
        emit(audit.mutation_sensitivity(cfg.rho, cfg))
    if not as_json:
        click.echo(f"{total - failed}/{total} checks passed")
    sys.exit(1 if failed else 0)


@main.command()
@click.argument("input", type=click.File("r"), default="-")
def encode(input):
    """Encode one token word per line into its binary block string."""
    for lineno, line in enumerate(_lines(input), start=1):
        try:
            w = parse_word(line)
        except ParseError as exc:
            raise InputError(f"line {lineno}: {exc}") from None
        click.echo(codec.encode(w))


@main.command()
@click.argument("input", type=click.File("r"), default="-")
@click.option("--phase", type=click.IntRange(0, 21), default=None, help="Only report this phase.")
def decode(input, phase):
    """Decode binary lines; prints 'phase word lead trail' per consistent phase.

    Records for successive input lines are separated by a blank line.
    """
    for lineno, line in enumerate(_lines(input), start=1):
        try:
            y = codec.parse_bits(line)
        except ValueError as exc:
            raise InputError(f"line {lineno}: {exc}") from None
        if lineno > 1:
            click.echo("")
        for n, w, lead, trail in codec.decode(y):
            if phase is None or n == phase:
                click.echo(" ".join(str(x) for x in (n, format_word(w), lead, trail) if x != ""))


@main.command()
@click.option("--len", "length", type=click.IntRange(min=0), required=True, help="Word length.")
@click.option("--forbidden", type=click.Path(dir_okay=False), default=None)
def language(length, forbidden):
    """List the admissible words of one length, sorted."""
    R = _load_forbidden(forbidden)
    try:
        words = subshift.language(R, length)
    except subshift.BudgetExceeded as exc:
        raise InputError(str(exc)) from None
    for w in words:
        click.echo(format_word(w))


@main.command()
@click.option("--gamma", required=True, help="Group element such as '1 2 | 4'.")
@click.option("--forbidden", type=click.Path(dir_okay=False), default=None,
              help="Forbidden-set file (default: standard input).")
def act(gamma, forbidden):
    """Print the image of a forbidden set under a group element."""
    g = _gamma(gamma)
    R = _load_forbidden(forbidden, None if forbidden else click.get_text_stream("stdin"))
    click.echo(subshift.format_forbidden(subshift.act_on_R(g, R)), nl=False)


@main.command()
@click.option("--gamma", required=True, help="Non-identity group element such as '1 2 |'.")
@click.option("--count", type=click.IntRange(min=1), default=1, show_default=True)
def witness(gamma, count):
    """Print verified moved words as 'word -> image'."""
    g = _gamma(gamma)
    if g.is_identity:
        raise InputError("the identity moves no word")
    for v in group.moved_words(g, count):
        click.echo(f"{format_word(v)} -> {format_word(group.act(g, v))}")


@main.command("sync-window")
def sync_window_cmd():
    """Print the least synchronizing window and its minimality witness."""
    found = codec.sync_window()
    click.echo(f"length {found.length}")
    click.echo(f"witness {found.witness} phases {' '.join(map(str, found.witness_phases))}")


if __name__ == "__main__":
    main()
