"""Unified command line: extract | augment | train | eval | quantize |
translate | content | serve."""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import service
from .augment import AugmentConfig, expand_dataset
from .content import ContentError, ContentRequest, NewsStore, build_bundle
from .evaluate import evaluate
from .landmarks import DatasetError, extract_features_batch, load_dataset, save_dataset, save_features
from .model import NetworkSpec, TrainConfig, train
from .preprocess import LabelCodec
from .quantize import ContainerError, load_model, quantize_model, save_model
from .service import ServiceError, load_config, serve
from .signplan import DictionaryError, load_dictionary, translate


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sanvaad")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extract", help="landmark JSONL -> binary feature dump")
    p.add_argument("--in", dest="inp", required=True, metavar="DATA.jsonl")
    p.add_argument("--out", required=True, metavar="FEATURES.snvf")

    p = sub.add_parser("augment", help="offline 3x dataset expansion")
    p.add_argument("--in", dest="inp", required=True, metavar="DATA.jsonl")
    p.add_argument("--out", required=True, metavar="DATA_AUG.jsonl")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sigma", type=float, default=0.02)
    p.add_argument("--dropout-prob", type=float, default=0.15)

    p = sub.add_parser("train", help="train the residual MLP")
    p.add_argument("--data", required=True, metavar="DATA.jsonl")
    p.add_argument("--out", required=True, metavar="MODEL.snvd")
    p.add_argument("--epochs", type=int, default=40)
    p.add_argument("--batch", type=int, default=64)
    p.add_argument("--lr", type=float, default=0.001)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-augment", action="store_true")
    p.add_argument("--no-residual", action="store_true")
    p.add_argument("--log", metavar="EPOCHS.csv", help="write the per-epoch log as CSV")

    p = sub.add_parser("eval", help="confusion matrix and classification report")
    p.add_argument("--model", required=True, metavar="MODEL.snvd")
    p.add_argument("--data", required=True, metavar="DATA.jsonl")
    p.add_argument("--report", metavar="OUT.json", help="write the report as JSON")
    p.add_argument("--confusion", metavar="OUT.csv", help="write the confusion matrix as CSV")

    p = sub.add_parser("quantize", help="weight-only int8 conversion")
    p.add_argument("--in", dest="inp", required=True, metavar="MODEL.snvd")
    p.add_argument("--out", required=True, metavar="MODEL.int8.snvd")

    p = sub.add_parser("translate", help="text -> sign plan JSON")
    p.add_argument("text")
    p.add_argument("--dict", dest="dictionary", metavar="MANIFEST.json")
    p.add_argument("--strict", action="store_true", help="warn on unspellable characters")

    p = sub.add_parser("content", help="topic news -> summaries and speech plans")
    p.add_argument("--lang", default="english")
    p.add_argument("--topic", required=True)
    p.add_argument("--store-dir", metavar="DIR")

    p = sub.add_parser("serve", help="run the streaming service")
    p.add_argument("--config", metavar="CONFIG.json")
    p.add_argument("--model", metavar="MODEL.snvd")
    p.add_argument("--host")
    p.add_argument("--port", type=int)

    return parser


def _cmd_extract(args) -> int:
    samples = load_dataset(args.inp)
    features = extract_features_batch([s.frame for s in samples])
    labels = LabelCodec().encode_all([s.label for s in samples])
    save_features(args.out, features, labels)
    print(f"wrote {len(samples)} rows to {args.out}")
    return 0


def _cmd_augment(args) -> int:
    cfg = AugmentConfig(noise_sigma=args.sigma, dropout_apply_prob=args.dropout_prob, seed=args.seed)
    samples = load_dataset(args.inp)
    expanded = expand_dataset(samples, cfg)
    save_dataset(expanded, args.out)
    print(f"expanded {len(samples)} -> {len(expanded)} samples ({args.out})")
    return 0


def _cmd_train(args) -> int:
    cfg = TrainConfig(
        learning_rate=args.lr, epochs=args.epochs, batch_size=args.batch, seed=args.seed
    )
    spec = NetworkSpec(residual=not args.no_residual)
    samples = load_dataset(args.data)
    model, log = train(samples, cfg, augment=not args.no_augment, spec=spec, verbose=True)
    save_model(model, args.out)
    if args.log:
        log.save_csv(args.log)
    print(f"best val acc {log.best_val_acc:.4f}; model saved to {args.out}")
    return 0


def _cmd_eval(args) -> int:
    model = load_model(args.model)
    samples = load_dataset(args.data)
    cm, report = evaluate(model, samples)
    print(report.to_text())
    if args.report:
        Path(args.report).write_text(report.to_json(indent=2), encoding="utf-8")
    if args.confusion:
        cm.save_csv(args.confusion)
    return 0


def _cmd_quantize(args) -> int:
    model = load_model(args.inp)
    save_model(quantize_model(model), args.out)
    before, after = Path(args.inp).stat().st_size, Path(args.out).stat().st_size
    print(f"{before} -> {after} bytes ({after / before:.0%})")
    return 0


def _cmd_translate(args) -> int:
    plan = translate(args.text, load_dictionary(args.dictionary), strict=args.strict)
    print(plan.to_json(indent=2))
    return 0


def _cmd_content(args) -> int:
    store = NewsStore(args.store_dir)
    bundle = build_bundle(store, ContentRequest(language=args.lang, topic=args.topic))
    print(bundle.to_json(indent=2))
    return 0


def _cmd_serve(args) -> int:
    # Flags act like the matching env overrides, but win over them.
    env = dict(os.environ)
    if args.model is not None:
        env[service.ENV_MODEL] = args.model
    if args.host is not None:
        env[service.ENV_HOST] = args.host
    if args.port is not None:
        env[service.ENV_PORT] = str(args.port)
    serve(load_config(args.config, env=env))
    return 0


_COMMANDS = {
    "extract": _cmd_extract,
    "augment": _cmd_augment,
    "train": _cmd_train,
    "eval": _cmd_eval,
    "quantize": _cmd_quantize,
    "translate": _cmd_translate,
    "content": _cmd_content,
    "serve": _cmd_serve,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (DatasetError, ContainerError, ContentError, DictionaryError, ServiceError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
