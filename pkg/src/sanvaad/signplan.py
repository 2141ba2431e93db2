"""Text-to-sign planning: normalization, phrase-dictionary matching with
greedy longest match, and per-letter spelling fallback.

A plan is an ordered list of render items: a GIF reference for a matched
phrase, or a 1-second letter card per character of an unmatched token.
Encountering a stop keyword truncates the plan and marks it terminal.
"""

from __future__ import annotations

import json
import re
import warnings
from dataclasses import dataclass, field
from typing import Protocol

from ._assets import packaged_data_dir
from .landmarks import LABEL_TO_INDEX

LETTER_SECONDS = 1.0
DEFAULT_STOP_KEYWORDS = frozenset({"goodbye", "stop"})

# \w misses Devanagari combining marks, which would shatter Hindi/Marathi
# words into fragments; keep the whole block intact
_PUNCT = re.compile(r"[^\w\sऀ-ॿ]+", re.UNICODE)


class DictionaryError(ValueError):
    """Raised for invalid phrase manifests."""


@dataclass(frozen=True)
class GifItem:
    asset_id: str
    source_phrase: str

    def to_dict(self) -> dict:
        return {"kind": "gif", "asset_id": self.asset_id, "source_phrase": self.source_phrase}


@dataclass(frozen=True)
class LetterItem:
    character: str
    duration: float = LETTER_SECONDS

    def __post_init__(self):
        if self.character not in LABEL_TO_INDEX:
            raise ValueError(f"letter item must be one of the 35 class symbols, got {self.character!r}")

    def to_dict(self) -> dict:
        return {"kind": "letter", "character": self.character, "duration": self.duration}


@dataclass(frozen=True)
class SignPlan:
    items: tuple = ()
    terminal: bool = False

    def to_dict(self) -> dict:
        return {"items": [item.to_dict() for item in self.items], "terminal": self.terminal}

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_dict(), indent=indent)


class PhraseDictionary:
    """Normalized phrase -> gesture asset id, plus synonyms and stop words."""

    def __init__(
        self,
        phrases: dict[str, str],
        synonyms: dict[str, str] | None = None,
        stop_keywords=None,
    ):
        self.synonyms = {k.strip().lower(): v.strip().lower() for k, v in (synonyms or {}).items()}
        self.stop_keywords = frozenset(
            w.strip().lower() for w in (DEFAULT_STOP_KEYWORDS if stop_keywords is None else stop_keywords)
        )
        self.phrases: dict[tuple[str, ...], str] = {}
        for phrase, asset_id in phrases.items():
            tokens = tuple(normalize_text(phrase, self.synonyms))
            if not tokens:
                raise DictionaryError(f"phrase {phrase!r} normalizes to nothing")
            if not asset_id or not str(asset_id).strip():
                raise DictionaryError(f"phrase {phrase!r} maps to an empty asset id")
            if tokens in self.phrases:
                raise DictionaryError(f"duplicate phrase after normalization: {' '.join(tokens)!r}")
            self.phrases[tokens] = str(asset_id)
        self.max_phrase_len = max((len(t) for t in self.phrases), default=0)

    def __len__(self):
        return len(self.phrases)


def normalize_text(raw: str, synonyms: dict[str, str] | None = None) -> list[str]:
    """Lowercase, strip punctuation, split on whitespace, map synonyms."""
    cleaned = _PUNCT.sub(" ", (raw or "").lower())
    tokens = cleaned.split()
    if synonyms:
        tokens = [synonyms.get(t, t) for t in tokens]
    return tokens


def spell_token(token: str, strict: bool = False) -> list[LetterItem]:
    """Letter items for one token: letters upper-cased, digits 1-9 kept,
    anything unrepresentable skipped (warned about in strict mode)."""
    items = []
    for ch in token:
        symbol = ch.upper()
        if symbol in LABEL_TO_INDEX:
            items.append(LetterItem(symbol))
        elif strict:
            warnings.warn(f"character {ch!r} has no sign card and was skipped", stacklevel=2)
    return items


def translate(raw: str, dictionary: PhraseDictionary, strict: bool = False) -> SignPlan:
    """Plan a normalized utterance: greedy longest phrase match at each
    position, per-letter spelling for unmatched tokens, truncation at the
    first stop keyword."""
    tokens = normalize_text(raw, dictionary.synonyms)
    items: list = []
    terminal = False
    i = 0
    while i < len(tokens):
        if tokens[i] in dictionary.stop_keywords:
            terminal = True
            break
        matched = None
        longest = min(dictionary.max_phrase_len, len(tokens) - i)
        for n in range(longest, 0, -1):
            candidate = tuple(tokens[i : i + n])
            if candidate in dictionary.phrases:
                matched = candidate
                break
        if matched is not None:
            items.append(GifItem(asset_id=dictionary.phrases[matched], source_phrase=" ".join(matched)))
            i += len(matched)
        else:
            items.extend(spell_token(tokens[i], strict))
            i += 1
    return SignPlan(items=tuple(items), terminal=terminal)


def load_dictionary(path=None) -> PhraseDictionary:
    """Load a manifest: {"phrases": {...}, "synonyms": {...}, "stop_keywords": [...]}.
    With no path, loads the dictionary shipped with the package."""
    if path is None:
        path = packaged_data_dir() / "dictionary.json"
    with open(path, "r", encoding="utf-8") as fh:
        try:
            manifest = json.load(fh)
        except json.JSONDecodeError as exc:
            raise DictionaryError(f"{path}: invalid JSON ({exc.msg})") from exc
    if not isinstance(manifest, dict) or "phrases" not in manifest:
        raise DictionaryError(f"{path}: manifest needs a 'phrases' object")
    return PhraseDictionary(
        phrases=manifest["phrases"],
        synonyms=manifest.get("synonyms"),
        stop_keywords=manifest.get("stop_keywords"),
    )


class Transcriber(Protocol):
    """Boundary for speech capture; the engine itself only consumes text."""

    def transcribe(self, utterance: str) -> str: ...


class TextPassthrough:
    """Default transcriber: input already is text."""

    def transcribe(self, utterance: str) -> str:
        return utterance
