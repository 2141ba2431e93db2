"""Train the residual MLP on a synthetic separable dataset and read the
results: epoch log, classification report, confusion matrix.

The network is built from plain numpy: dense / ReLU / batch-norm / dropout
stages with additive shortcuts, softmax cross-entropy, Adam. Runs in about
twenty seconds on a laptop CPU.

Run: python3 demos/03_training.py
"""

from synthetic import blob_dataset

from sanvaad import LABELS, NetworkSpec, TrainConfig, evaluate, predict, train

samples = blob_dataset(30)
print(f"dataset: {len(samples)} samples across {len(LABELS)} classes")

# Smaller than the production network so the demo stays quick; drop the
# spec argument to train at full width.
spec = NetworkSpec(hidden_width=64, compress_width=32, residual_blocks=2)
cfg = TrainConfig(epochs=8, batch_size=64, learning_rate=0.003, seed=1)
model, log = train(samples, cfg, spec=spec, verbose=True)

print(f"\nbest validation accuracy: {log.best_val_acc:.4f}")
log.save_csv("/tmp/demo_epochs.csv")
print("epoch log written to /tmp/demo_epochs.csv")

cm, report = evaluate(model, samples)
print(f"\noverall accuracy {report.accuracy:.4f}, macro F1 {report.macro_f1:.4f}")
if report.zero_division_classes:
    print("classes with undefined metrics:", report.zero_division_classes)

p = predict(model, samples[0].frame)
print(f"\nsingle frame: true {samples[0].label!r} -> predicted {p.label!r} "
      f"({p.confidence:.3f}); top-3 {[(l, round(c, 3)) for l, c in p.top_k]}")
