"""Measured-versus-model verification with a compiled-in errata table.

Encodes the full alphabet file with each clone, measures every stream, and
compares against the closed-form model and the published reference figures.
One verdict per quantity:

  match          model == measurement (and the published figure, if any, agrees)
  paper_erratum  measurement matches the model this package treats as
                 normative but contradicts a published figure
  model_only     the published expression models a different encoding than
                 the implemented one; both values are reported, none asserted
  mismatch       model != measurement, i.e. a regression in this package

The errata table pins exactly which quantities may carry paper_erratum;
any other disagreement marks the report as a regression (CLI exit 3).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import analytics
from .clones import build_codebook, encode_clone1, encode_clone2, encode_clone3
from .errors import ContractError
from .pipeline import PipelineParams, encode_pipeline
from .pitcore import DEFAULT_ENUMERATION_CAP, main_file

VERDICT_MATCH = "match"
VERDICT_ERRATUM = "paper_erratum"
VERDICT_MODEL_ONLY = "model_only"
VERDICT_MISMATCH = "mismatch"

# Published worked figures, quoted verbatim, exist only for (p, n) = (2, 8).
_PUBLISHED_2_8 = {
    "clone1_ratio": "897/1024",
    "clone1_flag_len": "510",
    "clone2_ratio": "384/512",
    "clone2_flag_msb_len": "256",
    "clone3_ratio": "777/1024",
    "clone3_flag_len": "750",
}

#: Verdict the harness expects at (2, 8); anything else there is a regression.
EXPECTED_ERRATA_2_8 = frozenset({"clone2_ratio", "clone2_flag_len"})

#: Remainder-ratio ranking the published comparison claims at (2, 8).
EXPECTED_RANKING_2_8 = (2, 3, 1)


@dataclass(frozen=True)
class ReportEntry:
    quantity: str
    paper: str | int | None
    formula: int | Fraction | None
    measured: int | Fraction
    verdict: str


@dataclass
class VerificationReport:
    p: int
    n: int
    entries: list[ReportEntry]
    ranking: list[int]
    remainder_ratios: dict[int, Fraction]
    regressions: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.regressions

    def entry(self, quantity: str) -> ReportEntry:
        for e in self.entries:
            if e.quantity == quantity:
                return e
        raise KeyError(quantity)

    def to_json_obj(self) -> dict:
        return {
            "radix": self.p,
            "width": self.n,
            "entries": [
                {
                    "quantity": e.quantity,
                    "paper": _json_value(e.paper),
                    "formula": _json_value(e.formula),
                    "measured": _json_value(e.measured),
                    "verdict": e.verdict,
                }
                for e in self.entries
            ],
            "ranking": list(self.ranking),
        }

    def render_text(self) -> str:
        rows = [("quantity", "paper", "formula", "measured", "verdict")]
        for e in self.entries:
            rows.append((
                e.quantity,
                _text_value(e.paper),
                _text_value(e.formula),
                _text_value(e.measured),
                e.verdict,
            ))
        widths = [max(len(r[i]) for r in rows) for i in range(5)]
        lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip()
                 for row in rows]
        lines.append("")
        ranked = ", ".join(
            f"clone {c} ({self.remainder_ratios[c]} ≈ {analytics.format_decimal(self.remainder_ratios[c], 3)})"
            for c in self.ranking)
        lines.append(f"ranking by measured remainder ratio: {ranked}")
        if any(e.verdict == VERDICT_MODEL_ONLY for e in self.entries):
            lines.append("model_only entries are reported, not asserted: the formula is a"
                         " model (a different flag encoding, or constant-ratio multi-round"
                         " growth), not a measurement of this codec.")
        if self.regressions:
            lines.append("REGRESSIONS: " + ", ".join(self.regressions))
        else:
            lines.append("verdicts: all matches or known errata")
        return "\n".join(lines)


def _json_value(v):
    if v is None or isinstance(v, (int, str)):
        return v
    if isinstance(v, Fraction):
        if v.denominator == 1:
            return v.numerator
        return f"{v.numerator}/{v.denominator}"
    raise TypeError(f"unexpected report value {v!r}")


def _text_value(v) -> str:
    if v is None:
        return "-"
    return str(_json_value(v))


def _as_fraction(v) -> Fraction:
    if isinstance(v, str):
        return Fraction(v)
    return Fraction(v)


def _erratum_expected(quantity: str, p: int, n: int) -> bool:
    if quantity == "clone2_flag_len":
        return True  # the published expression disagrees with conservation everywhere
    return quantity == "clone2_ratio" and (p, n) == (2, 8)


def run_verification(p: int, n: int, clones=None, rounds: int = 10,
                     cap: int | None = DEFAULT_ENUMERATION_CAP) -> VerificationReport:
    """Measure the alphabet file under each requested clone and verdict every quantity.

    rounds > 0 additionally measures the multi-round pipeline against the
    constant-ratio growth model (reported model_only, never asserted).
    """
    if clones is None:
        clones = (1, 2, 3) if n >= 2 else (1, 3)
    clones = tuple(sorted(set(clones)))
    for c in clones:
        if c not in (1, 2, 3):
            raise ContractError(f"unknown clone {c}")
    if 2 in clones and n < 2:
        raise ContractError("clone 2 needs width >= 2")

    block = main_file(p, n, cap)
    original = n * len(block)
    published = _PUBLISHED_2_8 if (p, n) == (2, 8) else {}

    entries: list[ReportEntry] = []
    ratios: dict[int, Fraction] = {}
    regressions: list[str] = []

    def add(quantity, formula, measured, model_only=False):
        paper = published.get(quantity)
        if quantity == "clone2_flag_len":
            paper = analytics.flag_lens_clone2(p, n).published
        if model_only:
            verdict = VERDICT_MODEL_ONLY
        elif formula == measured:
            if paper is not None and _as_fraction(paper) != _as_fraction(measured):
                verdict = VERDICT_ERRATUM
                if not _erratum_expected(quantity, p, n):
                    regressions.append(f"{quantity}: unexpected erratum")
            else:
                verdict = VERDICT_MATCH
        else:
            verdict = VERDICT_MISMATCH
            regressions.append(f"{quantity}: formula {formula} != measured {measured}")
        entries.append(ReportEntry(quantity, paper, formula, measured, verdict))

    bundles = {}
    for clone in clones:
        if clone == 1:
            bundles[1] = encode_clone1(block)
        elif clone == 2:
            bundles[2] = encode_clone2(block)
        else:
            bundles[3] = encode_clone3(block, build_codebook(p, n, cap))

    for clone in clones:
        bundle = bundles[clone]
        measured_ratio = Fraction(len(bundle.remainder), original)
        ratios[clone] = measured_ratio
        if clone == 1:
            add("clone1_ratio", analytics.ratio_clone1(p, n), measured_ratio)
            add("clone1_flag_len", analytics.flag_len_clone1(p, n), len(bundle.flag_len))
        elif clone == 2:
            flags = analytics.flag_lens_clone2(p, n)
            add("clone2_ratio", analytics.ratio_clone2(p, n), measured_ratio)
            add("clone2_flag_msb_len", flags.msb, len(bundle.flag_msb))
            add("clone2_flag_len", flags.conserving, len(bundle.flag_len))
        else:
            add("clone3_ratio", analytics.ratio_clone3(p, n), measured_ratio)
            add("clone3_flag_len", analytics.flag_len_clone3(p, n),
                len(bundle.flag_len), model_only=(p != 2))

    if rounds:
        kf = analytics.expansion_factor(n)
        stream = block.flatten()
        for clone in clones:
            formula_ratio = {
                1: analytics.ratio_clone1,
                2: analytics.ratio_clone2,
                3: analytics.ratio_clone3,
            }[clone](p, n)
            if formula_ratio == 1:
                continue  # growth closed form is undefined at ratio 1
            model = analytics.growth_after_rounds(formula_ratio, kf, rounds)
            params = PipelineParams(p, n, clone, rounds)
            container = encode_pipeline(stream, params, cap)
            measured = Fraction(container.stored_pit_count, original)
            add(f"clone{clone}_growth_rounds{rounds}", model, measured, model_only=True)

    entries.sort(key=lambda e: e.quantity)
    ranking = sorted(ratios, key=lambda c: (ratios[c], c))

    if (p, n) == (2, 8) and set(clones) == {1, 2, 3}:
        errata = {e.quantity for e in entries if e.verdict == VERDICT_ERRATUM}
        if errata != set(EXPECTED_ERRATA_2_8):
            regressions.append(
                f"expected errata {sorted(EXPECTED_ERRATA_2_8)} at (2, 8), found {sorted(errata)}")
        if tuple(ranking) != EXPECTED_RANKING_2_8:
            regressions.append(f"expected ranking {EXPECTED_RANKING_2_8} at (2, 8), measured {ranking}")
        if not (ratios[2] < ratios[3] < ratios[1]):
            regressions.append("expected strict ratio ordering clone2 < clone3 < clone1 at (2, 8)")

    return VerificationReport(
        p=p, n=n, entries=entries, ranking=ranking,
        remainder_ratios=ratios, regressions=regressions)
