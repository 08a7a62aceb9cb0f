"""Command-line interface.

Exit status: 0 on success, 1 on usage or configuration errors, 2 on data,
format or alignment errors.
"""

from __future__ import annotations

import argparse
import pickle
import sys
from pathlib import Path

from . import mbl
from .columns import AnnotationColumn, read_column, write_column
from .config import ExperimentConfig, build_plan, build_sources, load_config, parse_source, with_overrides
from .corpus import make_folds, read_corpus, split_train_test, vocabulary, write_corpus
from .errors import CombiError, ConfigError
from .evaluation import accuracy, render_table, report_tsv
from .lexicon import annotate, read_lexicon
from .stacking import assemble_cases, columns_for_test, generate_level1_training, run_experiment_detailed
from .taggers import TAGGERS, make_tagger


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}\n{self.format_usage()}")


def _write(text: str, out) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    Path(out).parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _save_pickle(obj, out) -> None:
    Path(out).parent.mkdir(parents=True, exist_ok=True)
    with open(out, "wb") as fh:
        pickle.dump(obj, fh)


def _load_pickle(path):
    with open(path, "rb") as fh:
        return pickle.load(fh)


def _adhoc_config(args, base_dir=".") -> ExperimentConfig:
    if not args.source:
        raise UsageError("at least one --source name:kind:payload is required")
    sources = tuple(parse_source(s) for s in args.source)
    names = [s.name for s in sources]
    if len(set(names)) != len(names):
        raise ConfigError("duplicate --source names")
    return ExperimentConfig(train=args.train, test=getattr(args, "test", None),
                            folds=args.folds or 9, sources=sources, base_dir=base_dir)


def cmd_split(args):
    corpus = read_corpus(args.corpus)
    train, test = split_train_test(corpus, args.fraction, args.seed)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_corpus(train, out / "train.tsv")
    write_corpus(test, out / "test.tsv")
    print(f"train: {len(train)} sentences, {train.token_count} tokens")
    print(f"test: {len(test)} sentences, {test.token_count} tokens")


def cmd_train_tagger(args):
    model = make_tagger(args.tagger).train(read_corpus(args.train))
    _save_pickle(model, args.out)


def cmd_tag(args):
    model = _load_pickle(args.model)
    corpus = read_corpus(args.test)
    col = model.tag(corpus, args.name or Path(args.model).stem)
    _write(write_column(corpus, col), args.out)


def cmd_annotate_lexicon(args):
    lex = read_lexicon(args.lexicon)
    corpus = read_corpus(args.test)
    _write(write_column(corpus, annotate(lex, corpus)), args.out)


def cmd_stack_train_cases(args):
    cfg = _adhoc_config(args)
    train = read_corpus(cfg.train)
    sources = build_sources(cfg, train)
    cases = generate_level1_training(train, sources, make_folds(train, cfg.folds))
    _write(mbl.write_cases(cases), args.out)


def cmd_combine_train(args):
    cases = mbl.read_cases(args.cases)
    base = mbl.train(cases, mbl.ClassifierConfig(args.k or 1, args.weighting or "none"))
    _save_pickle(base, args.out)


def cmd_combine_apply(args):
    base = _load_pickle(args.base)
    test = read_corpus(args.test)
    if args.cases:
        cases = mbl.read_cases(args.cases)
    else:
        if not args.train:
            raise UsageError("combine-apply needs --cases or --train with --source")
        cfg = _adhoc_config(args)
        train = read_corpus(cfg.train)
        cases = assemble_cases(columns_for_test(train, test, build_sources(cfg, train, test)), test)
    config = mbl.ClassifierConfig(args.k, base.config.weighting) if args.k else None
    predicted = mbl.classify_many(base, [c.features for c in cases], config)
    col = AnnotationColumn(args.name, tuple(predicted))
    _write(write_column(test, col), args.out)


def cmd_eval(args):
    gold = read_corpus(args.gold)
    pred = read_column(gold, args.pred, Path(args.pred).stem)
    vocab = vocabulary(read_corpus(args.train_vocab_from))
    report = accuracy(pred, gold, vocab)
    _write(report_tsv(report) if args.tsv else render_table([report], "baseline"), args.out)


def cmd_pipeline(args):
    if args.config:
        cfg = load_config(args.config)
    elif args.train:
        cfg = _adhoc_config(args)
    else:
        raise UsageError("pipeline needs --config or --train with --source")
    extra = {}
    if args.config and args.source:
        extra["sources"] = tuple(parse_source(s) for s in args.source)
    cfg = with_overrides(cfg, train=args.train, test=args.test, folds=args.folds, k=args.k,
                         weighting=args.weighting, seed=args.seed, **extra)
    plan = build_plan(cfg)
    result = run_experiment_detailed(plan)

    parts = []
    if result.component_reports:
        parts.append(render_table(result.component_reports, "baseline"))
        best = max(result.component_reports, key=lambda r: (r.total_acc or 0.0))
        parts.append(render_table([best, result.report], "reduction"))
    else:
        parts.append(render_table([result.report], "baseline"))
    report_text = "\n".join(parts)
    sys.stdout.write(report_text)

    if args.out_dir:
        out = Path(args.out_dir)
        (out / "columns").mkdir(parents=True, exist_ok=True)
        _write(mbl.write_cases(result.train_cases), out / "level1_train.cases")
        _write(mbl.write_cases(result.test_cases), out / "test.cases")
        for col in result.test_columns:
            _write(write_column(plan.test, col), out / "columns" / f"{col.source_name}.col")
        _write(write_column(plan.test, result.column), out / "combined.col")
        _write(report_text, out / "report.txt")
        _write("".join(report_tsv(r) + "\n" for r in [*result.component_reports, result.report]),
               out / "report.tsv")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="combiboot", description="Stacked tagger combination for new tagsets.")
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("split", help="sentence-level train/test split")
    p.add_argument("--corpus", required=True)
    p.add_argument("--fraction", default="0.9")
    p.add_argument("--seed", type=int, default=None, help="shuffle sentences with this seed")
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("train-tagger", help="train a component tagger")
    p.add_argument("--tagger", choices=sorted(TAGGERS), required=True)
    p.add_argument("--train", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_train_tagger)

    p = sub.add_parser("tag", help="tag a corpus with a trained model")
    p.add_argument("--model", required=True)
    p.add_argument("--test", required=True)
    p.add_argument("--name")
    p.add_argument("--out")
    p.set_defaults(func=cmd_tag)

    p = sub.add_parser("annotate-lexicon", help="ambiguity-class column from a lexicon")
    p.add_argument("--lexicon", required=True)
    p.add_argument("--test", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_annotate_lexicon)

    p = sub.add_parser("stack-train-cases", help="cross-validated level-1 training cases")
    p.add_argument("--train", required=True)
    p.add_argument("--source", action="append", default=[])
    p.add_argument("--folds", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_stack_train_cases)

    p = sub.add_parser("combine-train", help="build the IB1 combiner from a case file")
    p.add_argument("--cases", required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--weighting", choices=mbl.WEIGHTINGS)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_combine_train)

    p = sub.add_parser("combine-apply", help="classify test cases with a trained combiner")
    p.add_argument("--base", required=True)
    p.add_argument("--test", required=True)
    p.add_argument("--cases")
    p.add_argument("--train")
    p.add_argument("--source", action="append", default=[])
    p.add_argument("--folds", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--name", default="combined")
    p.add_argument("--out")
    p.set_defaults(func=cmd_combine_apply)

    p = sub.add_parser("eval", help="known/unknown accuracy report")
    p.add_argument("--pred", required=True)
    p.add_argument("--gold", required=True)
    p.add_argument("--train-vocab-from", required=True)
    p.add_argument("--tsv", action="store_true", help="metric<TAB>value output")
    p.add_argument("--out")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("pipeline", help="full experiment from a config file")
    p.add_argument("--config")
    p.add_argument("--seed", type=int)
    p.add_argument("--out-dir")
    p.add_argument("--train")
    p.add_argument("--test")
    p.add_argument("--folds", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--weighting", choices=mbl.WEIGHTINGS)
    p.add_argument("--source", action="append", default=[])
    p.set_defaults(func=cmd_pipeline)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "command", None):
            raise UsageError(parser.format_usage())
        for flag in ("folds", "k"):
            v = getattr(args, flag, None)
            if v is not None and v < (2 if flag == "folds" else 1):
                raise UsageError(f"--{flag} is too small: {v}")
        args.func(args)
    except (UsageError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (CombiError, OSError, pickle.UnpicklingError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
