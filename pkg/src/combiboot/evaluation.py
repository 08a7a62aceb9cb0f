"""Known/unknown accuracy accounting, error reduction and report tables."""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal

from .columns import AnnotationColumn
from .corpus import Corpus
from .errors import AlignmentError, DomainError

UNDEFINED = "--"
LAYOUTS = ("baseline", "ablation", "reduction")


def _pct(correct, count):
    if count == 0:
        return None
    return 100.0 * correct / count


@dataclass(frozen=True)
class EvalReport:
    source_name: str
    total_count: int
    known_count: int
    unknown_count: int
    total_correct: int
    known_correct: int
    unknown_correct: int

    @property
    def total_acc(self):
        return _pct(self.total_correct, self.total_count)

    @property
    def known_acc(self):
        return _pct(self.known_correct, self.known_count)

    @property
    def unknown_acc(self):
        """``None`` when the test set holds no unknown tokens."""
        return _pct(self.unknown_correct, self.unknown_count)

    @property
    def unknown_pct(self):
        return _pct(self.unknown_count, self.total_count)

    def renamed(self, name: str) -> "EvalReport":
        return EvalReport(name, self.total_count, self.known_count, self.unknown_count,
                          self.total_correct, self.known_correct, self.unknown_correct)


def accuracy(pred: AnnotationColumn, gold: Corpus, train_vocab, source_name=None) -> EvalReport:
    """Score ``pred`` against the gold tags; unknown means the form is not in ``train_vocab``."""
    if len(pred) != gold.token_count:
        raise AlignmentError(
            f"prediction has {len(pred)} values for {gold.token_count} gold tokens",
            position=min(len(pred), gold.token_count),
        )
    kc = kn = uc = un = 0
    for p, (form, tag) in zip(pred.values, gold.tokens()):
        hit = p == tag
        if form in train_vocab:
            kn += 1
            kc += hit
        else:
            un += 1
            uc += hit
    name = source_name if source_name is not None else getattr(pred, "source_name", "pred")
    return EvalReport(name, kn + un, kn, un, kc + uc, kc, uc)


def error_reduction(baseline_acc: float, new_acc: float) -> float:
    """Relative change in error rate, in percent; negative means fewer errors."""
    for v in (baseline_acc, new_acc):
        if not 0 <= v <= 100:
            raise DomainError(f"accuracy {v} outside [0, 100]")
    base_err = 100.0 - baseline_acc
    if base_err == 0:
        raise DomainError("baseline accuracy of 100 leaves no error to reduce")
    return 100.0 * ((100.0 - new_acc) - base_err) / base_err


def fmt(value, places=2) -> str:
    """Round half away from zero; ``None`` renders as ``--``."""
    if value is None:
        return UNDEFINED
    q = Decimal(1).scaleb(-places)
    d = Decimal(repr(float(value)))
    rounded = d.copy_abs().quantize(q, rounding=ROUND_HALF_UP)
    if d < 0 and rounded != 0:
        rounded = -rounded
    return f"{rounded:.{places}f}"


def _grid(header, rows) -> str:
    widths = [max(len(r[i]) for r in [header, *rows]) for i in range(len(header))]
    lines = []
    for r in [header, *rows]:
        cells = [r[0].ljust(widths[0])] + [c.rjust(w) for c, w in zip(r[1:], widths[1:])]
        lines.append("  ".join(cells).rstrip())
    rule = "-" * len(lines[0])
    return "\n".join([lines[0], rule, *lines[1:]]) + "\n"


def _delta(base, new):
    if base is None or new is None or base >= 100:
        return UNDEFINED
    return fmt(error_reduction(base, new), 1)


def render_table(reports, layout="baseline") -> str:
    """Fixed-width text table.

    ``baseline``: u, k, t and the unknown percentage per row.
    ``ablation``: total accuracy only.
    ``reduction``: u, k, t per row plus a row with the error reduction of
    the last report relative to the first.
    """
    reports = list(reports)
    if not reports:
        raise ValueError("no reports to render")
    if layout not in LAYOUTS:
        raise ValueError(f"layout must be one of {LAYOUTS}, got {layout!r}")

    if layout == "ablation":
        rows = [[r.source_name, fmt(r.total_acc)] for r in reports]
        return _grid(["sources", "t"], rows)

    rows = [[r.source_name, fmt(r.unknown_acc), fmt(r.known_acc), fmt(r.total_acc)]
            for r in reports]
    if layout == "baseline":
        for row, r in zip(rows, reports):
            row.append(fmt(r.unknown_pct))
        return _grid(["tagger", "u", "k", "t", "%unknown"], rows)

    if len(reports) > 1:
        first, last = reports[0], reports[-1]
        rows.append([
            "delta error (%)",
            _delta(first.unknown_acc, last.unknown_acc),
            _delta(first.known_acc, last.known_acc),
            _delta(first.total_acc, last.total_acc),
        ])
    return _grid(["system", "u", "k", "t"], rows)


def report_tsv(report: EvalReport) -> str:
    """Machine-readable ``metric<TAB>value`` lines."""
    items = [
        ("source", report.source_name),
        ("total_acc", fmt(report.total_acc)),
        ("known_acc", fmt(report.known_acc)),
        ("unknown_acc", fmt(report.unknown_acc)),
        ("unknown_pct", fmt(report.unknown_pct)),
        ("total_count", str(report.total_count)),
        ("known_count", str(report.known_count)),
        ("unknown_count", str(report.unknown_count)),
        ("total_correct", str(report.total_correct)),
        ("known_correct", str(report.known_correct)),
        ("unknown_correct", str(report.unknown_correct)),
    ]
    return "".join(f"{k}\t{v}\n" for k, v in items)
