"""Exercise the HTTP/WebSocket service in-process with a test client:
health, single-shot classification, translation, content, and the
frame-by-frame streaming loop.

For a real deployment run `sanvaad serve --model model.snvd` (or set
SANVAAD_MODEL / SANVAAD_PORT) instead of the in-process client used here.

Run: python3 demos/07_service.py
"""

import json
import warnings

# starlette's test client warns about its httpx shim; not our code
warnings.filterwarnings("ignore", message="Using `httpx`")
from starlette.testclient import TestClient

from sanvaad import NetworkSpec, TrainConfig, save_model, train
from sanvaad.service import ServiceConfig, create_app
from synthetic import blob_dataset

samples = blob_dataset(30)
spec = NetworkSpec(hidden_width=64, compress_width=32, residual_blocks=2)
model, _ = train(samples, TrainConfig(epochs=8, batch_size=64, learning_rate=0.003, seed=1), spec=spec)
save_model(model, "/tmp/demo_service_model.snvd")

app = create_app(ServiceConfig(model_path="/tmp/demo_service_model.snvd"))
client = TestClient(app)

health = client.get("/health").json()
print(f"/health -> status {health['status']}, {health['model']['classes']} classes, "
      f"{health['model']['precision']}")


def payload(sample, seq):
    msg = {"seq": seq}
    if sample.frame.left is not None:
        msg["left"] = sample.frame.left.points.tolist()
    if sample.frame.right is not None:
        msg["right"] = sample.frame.right.points.tolist()
    return msg


reply = client.post("/classify", json=payload(samples[0], seq=0)).json()
print(f"/classify -> true {samples[0].label!r}, predicted {reply['label']!r} "
      f"({reply['confidence']:.3f})")

plan = client.post("/translate", json={"text": "hello friend, goodbye"}).json()
kinds = [item["kind"] for item in plan["items"]]
print(f"/translate -> items {kinds}, terminal {plan['terminal']}")

bundle = client.get("/content", params={"lang": "marathi", "topic": "sports"}).json()
print(f"/content -> status {bundle['status']}, {len(bundle['items'])} articles")

# Streaming: strict request/reply per frame, replies come back in order.
print("\n/stream over 10 frames:")
with client.websocket_connect("/stream") as ws:
    for seq, sample in enumerate(samples[::100][:10]):
        ws.send_text(json.dumps(payload(sample, seq)))
        reply = ws.receive_json()
        print(f"  seq {reply['seq']}: true {sample.label!r} -> {reply['label']!r} "
              f"({reply['confidence']:.3f})")

    # Bad input gets an error reply; the connection stays usable.
    ws.send_text("{not json")
    print(f"  malformed frame -> {ws.receive_json()}")
    ws.send_text(json.dumps({"seq": 3}))
    print(f"  frame with no hands -> {ws.receive_json()}")
