"""Command-line interface: find, runs, repeats, verify, bench, gen.

Exit codes: 0 success, 1 I/O error, 2 usage error, 3 verification mismatch.
"""

from __future__ import annotations

import csv
import itertools
import json
import random
import sys
from fractions import Fraction

import click

from .errors import AlphabetError, DeltaRangeError, ParseError
from .word import RationalDelta, Word, generate, load_word

EXIT_IO, EXIT_USAGE, EXIT_MISMATCH = 1, 2, 3
DEFAULT_DELTAS = "1/10,1/3,1/2,3/4"


def decimal(num: int, den: int, digits: int = 6) -> str:
    """Exact rational rounded half-up to ``digits`` decimals."""
    scaled = (2 * num * 10**digits + den) // (2 * den)
    whole, frac = divmod(scaled, 10**digits)
    return f"{whole}.{frac:0{digits}d}"


def _read_word(path: str, ints: bool) -> Word:
    try:
        if path == "-":
            raw = sys.stdin.buffer.read()
        else:
            with open(path, "rb") as fh:
                raw = fh.read()
    except OSError as exc:
        click.echo(f"error: cannot read {path}: {exc.strerror}", err=True)
        sys.exit(EXIT_IO)
    try:
        if ints:
            return load_word(raw.decode("utf-8"), mode="ints")
        return load_word(raw.rstrip(b"\r\n"), mode="bytes")
    except (ParseError, AlphabetError, UnicodeDecodeError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_USAGE)


def _delta(delta: str | None, alpha: str | None, required: bool = True) -> RationalDelta | None:
    if delta is not None and alpha is not None:
        raise click.UsageError("give either --delta or --alpha, not both")
    try:
        if alpha is not None:
            a = Fraction(alpha)
            if a <= 1:
                raise DeltaRangeError(f"alpha {alpha} must exceed 1")
            return RationalDelta.of(1 / a)
        if delta is not None:
            return RationalDelta.of(delta)
    except (DeltaRangeError, ValueError, ZeroDivisionError) as exc:
        raise click.BadParameter(str(exc), param_hint="--delta/--alpha")
    if required:
        raise click.UsageError("--delta or --alpha is required")
    return None


def _emit(records: list[tuple[int, int, int, int, int]], fmt: str) -> None:
    """records: (beg, end, period, exponent numerator, exponent denominator)."""
    out = click.get_text_stream("stdout")
    if fmt == "json":
        out.write(json.dumps([
            {"beg": b, "end": e, "period": p, "exponent_num": en, "exponent_den": ed}
            for b, e, p, en, ed in records
        ]) + "\n")
        return
    out.write("".join(f"{b}\t{e}\t{p}\t{decimal(en, ed)}\n" for b, e, p, en, ed in records))


def _factor_records(items) -> list[tuple[int, int, int, int, int]]:
    out = []
    for x in items:
        ex = Fraction(x.end - x.beg + 1, x.period)
        out.append((x.beg, x.end, x.period, ex.numerator, ex.denominator))
    return out


_input = click.argument("input", default="-", type=str)
_ints = click.option("--ints", is_flag=True, help="Input is whitespace-separated integers.")
_fmt = click.option("--format", "fmt", type=click.Choice(["tsv", "json"]), default="tsv",
                    show_default=True)
_delta_opt = click.option("--delta", help="δ in (0,1), as num/den or decimal.")
_alpha_opt = click.option("--alpha", help="α = 1/δ > 1, as num/den or decimal.")


@click.group()
def main() -> None:
    """Maximal δ-subrepetitions, runs and α-gapped repeats of a word."""


@main.command("find")
@_input
@_delta_opt
@_alpha_opt
@_fmt
@_ints
def cmd_find(input, delta, alpha, fmt, ints):
    """Maximal δ-subrepetitions as beg, end, period, exponent."""
    from .stages import find_subrepetitions

    d = _delta(delta, alpha)
    w = _read_word(input, ints)
    _emit(_factor_records(find_subrepetitions(w, d)), fmt)


@main.command("runs")
@_input
@_fmt
@_ints
def cmd_runs(input, fmt, ints):
    """Maximal repetitions (runs) as beg, end, period, exponent."""
    from .runs import compute_runs

    w = _read_word(input, ints)
    runs = sorted(compute_runs(w), key=lambda r: (r.beg, r.period))
    _emit(_factor_records(runs), fmt)


@main.command("repeats")
@_input
@_delta_opt
@_alpha_opt
@_fmt
@_ints
def cmd_repeats(input, delta, alpha, fmt, ints):
    """Maximal α-gapped repeats as beg, period, copylen, end, gapped."""
    from .repeats import compute_gapped_repeats

    d = _delta(delta, alpha)
    w = _read_word(input, ints)
    reps = compute_gapped_repeats(w, None, d)
    out = click.get_text_stream("stdout")
    if fmt == "json":
        out.write(json.dumps([
            {"beg": r.beg, "period": r.period, "copylen": r.copylen, "end": r.end,
             "gapped": r.gapped} for r in reps]) + "\n")
        return
    out.write("".join(f"{r.beg}\t{r.period}\t{r.copylen}\t{r.end}\t{int(r.gapped)}\n"
                      for r in reps))


def _parse_deltas(text: str) -> list[RationalDelta]:
    try:
        return [RationalDelta.of(t) for t in text.split(",") if t.strip()]
    except DeltaRangeError as exc:
        raise click.BadParameter(str(exc), param_hint="--delta")


def _alphabet(sigma: int) -> list[int]:
    return list(range(97, 97 + sigma)) if sigma <= 26 else list(range(sigma))


def _word_stream(mode, sigma, max_n, count, seed, deltas):
    """Yield (word, δ) in a fixed order; exhaustive goes by increasing length."""
    letters = _alphabet(sigma)
    if mode == "exhaustive":
        for n in range(max_n + 1):
            for tup in itertools.product(letters, repeat=n):
                w = Word(tup)
                for d in deltas:
                    yield w, d
        return
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(0, max_n)
        w = Word([rng.choice(letters) for _ in range(n)])
        if deltas:
            d = rng.choice(deltas)
        else:
            while True:
                den = rng.randint(2, 1000)
                f = Fraction(rng.randint(1, den - 1), den)
                if Fraction(1, 20) < f < Fraction(19, 20):
                    break
            d = RationalDelta.of(f)
        yield w, d


def find_for_verify(w, d):
    from .stages import find_subrepetitions

    return find_subrepetitions(w, d)


@main.command("verify")
@click.option("--mode", type=click.Choice(["exhaustive", "random"]), default="random",
              show_default=True)
@click.option("--sigma", type=click.IntRange(1, 255), default=2, show_default=True)
@click.option("--max-n", type=click.IntRange(0), default=12, show_default=True)
@click.option("--count", type=click.IntRange(0), default=100, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--delta", "deltas", default=None,
              help=f"Comma-separated δ list (exhaustive default {DEFAULT_DELTAS}; "
                   "random default: a random rational per word).")
@click.option("--verbose", "-v", is_flag=True, help="Print one line per word and δ.")
def cmd_verify(mode, sigma, max_n, count, seed, deltas, verbose):
    """Compare the fast path with the brute-force oracle."""
    from .oracle import maximal_factors, select_delta

    if deltas is None:
        deltas = DEFAULT_DELTAS if mode == "exhaustive" else ""
    dl = _parse_deltas(deltas)
    checked = 0
    factors_of = {}
    for w, d in _word_stream(mode, sigma, max_n, count, seed, dl):
        if w not in factors_of:
            factors_of = {w: maximal_factors(w)}
        got = {(x.beg, x.end, x.period) for x in find_for_verify(w, d)}
        ok = got == select_delta(factors_of[w], d)
        checked += 1
        if verbose:
            click.echo(f"{'pass' if ok else 'FAIL'}\tdelta={d}\t{w.text()}")
        if not ok:
            click.echo(f"mismatch: word={w.text()!r} n={w.n} delta={d}")
            click.echo(f"checked {checked} cases before the failure")
            sys.exit(EXIT_MISMATCH)
    click.echo(f"pass: {checked} cases ({mode}, sigma={sigma}, max_n={max_n})")


@main.command("bench")
@click.option("--len", "lengths", default="65536",
              help="Comma-separated lengths; k-th powers of two may be written 2^k.")
@click.option("--delta", default="1/2", show_default=True)
@click.option("--gen", "kind", type=click.Choice(["random", "fibonacci", "thue_morse"]),
              default="random", show_default=True)
@click.option("--sigma", type=click.IntRange(1), default=2, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
def cmd_bench(lengths, delta, kind, sigma, seed):
    """CSV timings per stage with set sizes and the largest staircase."""
    from .stages import STAT_FIELDS, timed_stages

    d = _parse_deltas(delta)[0]
    sizes = []
    for tok in lengths.split(","):
        tok = tok.strip()
        if not tok:
            continue
        try:
            sizes.append(2 ** int(tok[2:]) if tok.startswith("2^") else int(tok))
        except ValueError:
            raise click.BadParameter(f"bad length {tok!r}", param_hint="--len")
    stages = ["index", "runs", "repeats", "pairs", "sweep", "output"]
    writer = csv.writer(click.get_text_stream("stdout"), lineterminator="\n")
    writer.writerow(["n", "delta"] + [f"t_{s}" for s in stages] + ["t_total"]
                    + list(STAT_FIELDS))
    if any(sizes):
        timed_stages(generate("random", 64, sigma=2, seed=seed), d)  # compile outside the clock
    for n in sizes:
        if n == 0:
            continue
        w = generate(kind, n, sigma=sigma, seed=seed)
        _, stats, times = timed_stages(w, d)
        row = [n, str(d)] + [f"{times.get(s, 0.0):.4f}" for s in stages]
        row.append(f"{sum(times.values()):.4f}")
        writer.writerow(row + list(stats))


@main.command("gen")
@click.argument("kind", type=click.Choice(["random", "fibonacci", "thue_morse"]))
@click.argument("n", type=click.IntRange(0))
@click.option("--sigma", type=click.IntRange(1), default=2, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
def cmd_gen(kind, n, sigma, seed):
    """Print a generated test word."""
    click.echo(generate(kind, n, sigma=sigma, seed=seed).text())


if __name__ == "__main__":
    main()
