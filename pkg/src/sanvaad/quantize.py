"""Post-training int8 weight quantization and the model container format.

Container layout (all little-endian): magic ``SNVD``, u32 version, u64
metadata length, UTF-8 JSON metadata, tensor blobs in metadata-declared
order, trailing CRC32 over all blobs. Dense weight matrices carry the int8
payload in quantized containers; biases, batch-norm tensors, and the scaler
stay f32.
"""

from __future__ import annotations

import json
import struct
import zlib
from dataclasses import dataclass

import numpy as np

from .model.network import NetworkSpec, init_network
from .model.training import ResidualMlpModel
from .preprocess import LabelCodec, ScalerParams

MAGIC = b"SNVD"
VERSION = 1
_HEADER = struct.Struct("<4sIQ")


class ContainerError(Exception):
    """Base class for model container failures."""


class BadMagicError(ContainerError):
    pass


class UnsupportedVersionError(ContainerError):
    pass


class ChecksumError(ContainerError):
    pass


@dataclass(frozen=True)
class QuantizedTensor:
    """Symmetric per-tensor int8 values: w ~= values * scale, zero point 0."""

    values: np.ndarray
    scale: float


def quantize_tensor(w: np.ndarray) -> QuantizedTensor:
    """Quantize to int8 with scale max|w|/127 (1.0 for an all-zero tensor)."""
    w = np.asarray(w, dtype=np.float64)
    amax = float(np.abs(w).max()) if w.size else 0.0
    scale = amax / 127.0 if amax > 0.0 else 1.0
    q = np.clip(np.rint(w / scale), -127, 127).astype(np.int8)
    return QuantizedTensor(values=q, scale=scale)


def dequantize_tensor(qt: QuantizedTensor) -> np.ndarray:
    return (qt.values.astype(np.float32) * np.float32(qt.scale)).astype(np.float32)


@dataclass
class ModelContainer:
    """Self-describing serialized model: JSON metadata plus ordered blobs."""

    metadata: dict
    blobs: list[bytes]

    @property
    def precision(self) -> str:
        return self.metadata["precision"]


def _is_dense_weight(name: str) -> bool:
    return name.endswith("dense.W") or name == "out.W"


def _model_tensors(model: ResidualMlpModel) -> dict[str, np.ndarray]:
    tensors = dict(model.net.state_tensors())
    tensors["scaler.mean"] = model.scaler.mean
    tensors["scaler.std"] = model.scaler.std
    return tensors


def container_from_model(model: ResidualMlpModel) -> ModelContainer:
    """Pack a trained model as an f32 container."""
    entries = []
    blobs = []
    for name, tensor in _model_tensors(model).items():
        data = np.ascontiguousarray(tensor, dtype="<f4")
        entries.append({"name": name, "shape": list(tensor.shape), "dtype": "f32"})
        blobs.append(data.tobytes())
    metadata = {
        "precision": "f32",
        "network": model.spec.to_dict(),
        "codec": list(model.codec.classes),
        "training": dict(model.meta),
        "tensors": entries,
    }
    return ModelContainer(metadata=metadata, blobs=blobs)


def quantize_model(model: ResidualMlpModel) -> ModelContainer:
    """Pack a trained model with per-tensor symmetric int8 dense weights."""
    entries = []
    blobs = []
    for name, tensor in _model_tensors(model).items():
        if _is_dense_weight(name):
            qt = quantize_tensor(tensor)
            entries.append({"name": name, "shape": list(tensor.shape), "dtype": "i8", "scale": qt.scale})
            blobs.append(np.ascontiguousarray(qt.values).tobytes())
        else:
            entries.append({"name": name, "shape": list(tensor.shape), "dtype": "f32"})
            blobs.append(np.ascontiguousarray(tensor, dtype="<f4").tobytes())
    metadata = {
        "precision": "int8",
        "network": model.spec.to_dict(),
        "codec": list(model.codec.classes),
        "training": dict(model.meta),
        "tensors": entries,
    }
    return ModelContainer(metadata=metadata, blobs=blobs)


def serialize_container(container: ModelContainer) -> bytes:
    meta = json.dumps(container.metadata).encode("utf-8")
    crc = 0
    for blob in container.blobs:
        crc = zlib.crc32(blob, crc)
    parts = [_HEADER.pack(MAGIC, VERSION, len(meta)), meta]
    parts.extend(container.blobs)
    parts.append(struct.pack("<I", crc & 0xFFFFFFFF))
    return b"".join(parts)


def parse_container(blob: bytes) -> ModelContainer:
    if len(blob) < _HEADER.size or blob[:4] != MAGIC:
        raise BadMagicError("not a model container (bad magic)")
    _, version, meta_len = _HEADER.unpack_from(blob)
    if version != VERSION:
        raise UnsupportedVersionError(f"container version {version} is not supported (expected {VERSION})")
    offset = _HEADER.size
    if len(blob) < offset + meta_len + 4:
        raise ChecksumError("container is truncated")
    try:
        metadata = json.loads(blob[offset : offset + meta_len].decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ChecksumError(f"container metadata is corrupt: {exc}") from exc
    offset += meta_len

    blobs = []
    crc = 0
    for entry in metadata.get("tensors", []):
        size = int(np.prod(entry["shape"], dtype=np.int64)) if entry["shape"] else 1
        nbytes = size * (1 if entry["dtype"] == "i8" else 4)
        if offset + nbytes > len(blob) - 4:
            raise ChecksumError("container is truncated")
        chunk = blob[offset : offset + nbytes]
        blobs.append(chunk)
        crc = zlib.crc32(chunk, crc)
        offset += nbytes
    if offset + 4 != len(blob):
        raise ChecksumError("container has trailing or missing bytes")
    (stored_crc,) = struct.unpack_from("<I", blob, offset)
    if stored_crc != crc & 0xFFFFFFFF:
        raise ChecksumError("container checksum mismatch")
    return ModelContainer(metadata=metadata, blobs=blobs)


def model_from_container(container: ModelContainer) -> ResidualMlpModel:
    """Rebuild a model; int8 tensors are dequantized to f32 on load."""
    meta = container.metadata
    spec = NetworkSpec(**meta["network"])
    tensors: dict[str, np.ndarray] = {}
    scales: dict[str, float] = {}
    # Network math runs in float64; loaded values are exact f32 casts, so a
    # snapped model (see training._snap_float32) round-trips bit for bit.
    for entry, blob in zip(meta["tensors"], container.blobs):
        shape = tuple(entry["shape"])
        if entry["dtype"] == "i8":
            values = np.frombuffer(blob, dtype=np.int8).reshape(shape)
            dq = dequantize_tensor(QuantizedTensor(values, float(entry["scale"])))
            tensors[entry["name"]] = dq.astype(np.float64)
            scales[entry["name"]] = float(entry["scale"])
        else:
            tensors[entry["name"]] = np.frombuffer(blob, dtype="<f4").reshape(shape).astype(np.float64)

    net = init_network(spec, seed=0)
    net.load_tensors({k: v for k, v in tensors.items() if not k.startswith("scaler.")})
    scaler = ScalerParams(mean=tensors["scaler.mean"], std=tensors["scaler.std"])
    codec = LabelCodec(tuple(meta["codec"]))
    training = dict(meta.get("training", {}))
    training["precision"] = meta["precision"]
    if scales:
        training["quantization_scales"] = scales
    return ResidualMlpModel(net=net, scaler=scaler, codec=codec, meta=training)


def save_model(model_or_container, path) -> None:
    """Write a model (packed as f32) or an existing container to disk."""
    container = model_or_container
    if isinstance(model_or_container, ResidualMlpModel):
        container = container_from_model(model_or_container)
    with open(path, "wb") as fh:
        fh.write(serialize_container(container))


def load_model(path) -> ResidualMlpModel:
    with open(path, "rb") as fh:
        return model_from_container(parse_container(fh.read()))
