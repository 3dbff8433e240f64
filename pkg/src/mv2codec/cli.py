"""Command-line front end.

Exit codes: 0 success (verification: every quantity matched or hit a known
erratum), 1 usage error, 2 corrupt or malformed data, 3 verification
regression.
"""

from __future__ import annotations

import json
import sys
from fractions import Fraction
from pathlib import Path

import click

from . import __version__
from ._backend import BACKEND
from . import analytics
from .clones import build_codebook
from .container import parse_container, serialize_container
from .errors import CapacityError, ContractError, DataError, DegenerateRatioError
from .pipeline import PipelineParams, decode_pipeline, emit, encode_pipeline, ingest
from .pitcore import DEFAULT_ENUMERATION_CAP
from .verify import run_verification

_radix = click.option("--radix", "-p", type=int, default=2, show_default=True,
                      help="Number of values one pit can take.")
_width = click.option("--width", "-n", type=int, required=True,
                      help="Pits per word.")
_cap = click.option("--cap", type=int, default=DEFAULT_ENUMERATION_CAP, show_default=True,
                    help="Alphabet enumeration cap on p**n; 0 disables it.")
_json_flag = click.option("--json", "as_json", is_flag=True, help="Machine-readable output.")


def _frac(x, places=6) -> str:
    x = Fraction(x)
    exact = str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return f"{exact} ≈ {analytics.format_decimal(x, places)}"


@click.group()
@click.version_option(__version__, message=f"%(prog)s %(version)s ({BACKEND} kernels)")
def cli():
    """Multi-radix recoding codec: three MV2 clone transforms, exact
    stream-length analytics, and a verification harness."""


@cli.command("encode")
@click.option("--clone", type=click.IntRange(1, 3), required=True,
              help="1 = strip leading zeros, 2 = MSB split, 3 = canonical codebook.")
@_radix
@_width
@click.option("--rounds", "-m", type=click.IntRange(1, 255), default=1, show_default=True,
              help="Recoding passes; each pass re-encodes the previous remainder.")
@click.option("--input-format", type=click.Choice(["bytes", "digits"]), default="bytes",
              show_default=True, help="bytes: 8 pits per byte (radix 2); digits: one pit per byte.")
@_cap
@click.argument("input_path", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.argument("output_path", type=click.Path(dir_okay=False, path_type=Path))
def cmd_encode(clone, radix, width, rounds, input_format, cap, input_path, output_path):
    """Encode INPUT_PATH into a container at OUTPUT_PATH."""
    params = PipelineParams(radix, width, clone, rounds, input_format)
    stream = ingest(input_path.read_bytes(), input_format, radix)
    container = encode_pipeline(stream, params, cap or None)
    blob = serialize_container(container)
    output_path.write_bytes(blob)

    click.echo(f"input: {len(stream)} pits (radix {radix}, width {width}, clone {clone})")
    for i, record in enumerate(container.rounds, start=1):
        msb = f", flag_msb {record.flag_msb_count}" if record.flag_msb_count else ""
        click.echo(f"round {i}: pad {record.pad_count}, flag_len {record.flag_len_count}{msb}")
    click.echo(f"final remainder: {len(container.remainder)} pits")
    click.echo(f"stored total: {container.stored_pit_count} pits"
               + (f" ({_frac(container.expansion)} of input)" if len(stream) else ""))
    if len(stream):
        ratio = Fraction(len(container.remainder), len(stream))
        click.echo(f"measured remainder ratio: {_frac(ratio)}")
    click.echo(f"container: {len(blob)} bytes -> {output_path}")


@cli.command("decode")
@click.argument("input_path", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.argument("output_path", type=click.Path(dir_okay=False, path_type=Path))
@_cap
def cmd_decode(input_path, output_path, cap):
    """Decode a container back to the original file."""
    container = parse_container(input_path.read_bytes())
    stream = decode_pipeline(container, cap or None)
    output_path.write_bytes(emit(stream, container.params.input_format))
    click.echo(f"decoded {len(stream)} pits "
               f"({container.params.input_format}) -> {output_path}")


@cli.command("verify")
@_radix
@_width
@click.option("--clone", "clones", type=click.IntRange(1, 3), multiple=True,
              help="Restrict to specific clones (default: all that apply).")
@click.option("--rounds", "-m", type=click.IntRange(0, 255), default=10, show_default=True,
              help="Also report multi-round growth at this round count (0 skips it).")
@_cap
@_json_flag
@click.pass_context
def cmd_verify(ctx, radix, width, clones, rounds, cap, as_json):
    """Measure the alphabet file and verdict every published quantity."""
    report = run_verification(radix, width, clones or None, rounds, cap or None)
    if as_json:
        click.echo(json.dumps(report.to_json_obj(), indent=2))
    else:
        click.echo(report.render_text())
    if not report.ok:
        ctx.exit(3)


@cli.command("analytics")
@_radix
@_width
@click.option("--rounds", "-m", type=click.IntRange(1, 255), default=10, show_default=True)
@_json_flag
def cmd_analytics(radix, width, rounds, as_json):
    """Evaluate every closed-form quantity exactly, plus the growth model."""
    fs = analytics.formula_set(radix, width)
    ratios = {1: fs.ratio_clone1, 2: fs.ratio_clone2, 3: fs.ratio_clone3}
    flags = {
        1: {"flag_len": fs.flag_clone1},
        2: {
            "flag_msb_len": fs.flags_clone2.msb,
            "flag_len_published": fs.flags_clone2.published,
            "flag_len_conserving": fs.flags_clone2.conserving,
        } if fs.flags_clone2 else None,
        3: {"flag_len_model": fs.flag_clone3},
    }
    growth = {}
    for clone, ratio in ratios.items():
        if ratio is None:
            growth[clone] = None
        elif ratio == 1:
            growth[clone] = "degenerate"
        else:
            growth[clone] = {m: analytics.growth_after_rounds(ratio, fs.expansion, m)
                             for m in range(1, rounds + 1)}

    if as_json:
        obj = {
            "radix": radix,
            "width": width,
            "expansion": _json_frac(fs.expansion),
            "delta_length": fs.delta_length,
            "clones": {
                str(c): None if ratios[c] is None else {
                    "ratio": _json_frac(ratios[c]),
                    **flags[c],
                    "growth": growth[c] if not isinstance(growth[c], dict) else {
                        str(m): _json_frac(g) for m, g in growth[c].items()},
                }
                for c in (1, 2, 3)
            },
        }
        click.echo(json.dumps(obj, indent=2))
        return

    click.echo(f"radix {radix}, width {width}")
    click.echo(f"expansion per pass: {_frac(fs.expansion)}   added pits: {fs.delta_length}")
    for c in (1, 2, 3):
        if ratios[c] is None:
            click.echo(f"clone {c}: undefined at width 1")
            continue
        click.echo(f"clone {c}: ratio {_frac(ratios[c])}")
        for name, value in flags[c].items():
            click.echo(f"  {name}: {value}")
        if growth[c] == "degenerate":
            click.echo("  growth: degenerate (ratio 1: the closed form divides by zero;"
                       " each pass only adds flag pits)")
        else:
            for m, g in growth[c].items():
                click.echo(f"  growth after {m} round(s): {_frac(g)}")


def _json_frac(x):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@cli.command("codebook")
@_radix
@_width
@click.option("--limit", type=int, default=32, show_default=True,
              help="Rows of the element table to print (0 for none).")
@_cap
@_json_flag
def cmd_codebook(radix, width, limit, cap, as_json):
    """Print the canonical codebook histogram and its first entries."""
    book = build_codebook(radix, width, cap or None)
    hist = book.histogram
    if as_json:
        obj = {
            "radix": radix,
            "width": width,
            "histogram": {str(k): v for k, v in hist.items()},
            "codes": [
                {"value": v, "length": L, "code": c, "digits": list(book.code_digits(L, c))}
                for v, L, c in book.codes(limit)
            ],
        }
        click.echo(json.dumps(obj, indent=2))
        return
    click.echo(" ".join(f"{L}:{hist[L]}" for L in sorted(hist)))
    for value, length, code_value in book.codes(limit):
        digits = "".join(f"{d:x}" if radix <= 16 else f"{d}," for d in book.code_digits(length, code_value))
        click.echo(f"{value}\t-> length {length}, code {code_value} [{digits.rstrip(',')}]")


def main(argv=None) -> int:
    """Entry point with the documented exit-code mapping."""
    try:
        # click swallows ctx.exit() in non-standalone mode and hands back the code
        rv = cli.main(args=argv, standalone_mode=False)
        if isinstance(rv, int):
            return rv
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.UsageError as exc:
        click.echo(f"usage error: {exc.format_message()}", err=True)
        return 1
    except click.ClickException as exc:
        exc.show()
        return 1
    except click.Abort:
        return 1
    except (ContractError, CapacityError, DegenerateRatioError) as exc:
        click.echo(f"usage error: {exc}", err=True)
        return 1
    except DataError as exc:
        click.echo(f"data error: {exc}", err=True)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
