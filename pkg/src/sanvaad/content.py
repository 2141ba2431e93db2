"""News content pipeline: per-language stores, topic filtering, bounded
extractive summaries, and speech-rendering plans.

Summarization and synthesis are pluggable boundaries (Summarizer,
SpeechSynthesizer); the defaults shipped here are deterministic so the whole
pipeline runs offline. A "word" everywhere is a maximal whitespace-delimited
token, since all the bounds depend on that definition.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from datetime import date as _date
from pathlib import Path
from typing import Optional, Protocol

from ._assets import packaged_data_dir

LANGUAGES = ("english", "hindi", "marathi")
FALLBACK_LANGUAGE = "english"

_ALIASES = {
    "english": "english", "eng": "english", "en": "english",
    "hindi": "hindi", "hin": "hindi", "hi": "hindi",
    "marathi": "marathi", "mar": "marathi", "mr": "marathi",
}

STORE_FILES = {
    "english": "eng_news.json",
    "hindi": "hindi_news.json",
    "marathi": "marathi_news.json",
}

MAX_ARTICLES = 3
MIN_SUMMARY_WORDS = 20
MAX_SUMMARY_WORDS = 60
WORDS_PER_MINUTE = 150
PAUSE_SECONDS = 0.5

# Sentence boundary: whitespace after ASCII terminators or the Devanagari
# danda/double danda used by the Hindi and Marathi stores.
_SENTENCE_BOUNDARY = re.compile(r"(?<=[.!?।॥])\s+")


class ContentError(ValueError):
    """Raised for malformed news stores or bad pipeline inputs."""


def resolve_language(spoken_or_typed: str) -> str:
    """Fold a spoken/typed language name to a supported one; anything
    unrecognized falls back to english."""
    key = (spoken_or_typed or "").strip().lower()
    return _ALIASES.get(key, FALLBACK_LANGUAGE)


@dataclass(frozen=True)
class Article:
    title: str
    content: str
    date: str

    def __post_init__(self):
        if not self.content or not self.content.strip():
            raise ContentError(f"article {self.title!r} has empty content")
        try:
            _date.fromisoformat(self.date)
        except (TypeError, ValueError) as exc:
            raise ContentError(f"article {self.title!r} has unparseable date {self.date!r}") from exc

    @property
    def date_key(self) -> _date:
        return _date.fromisoformat(self.date)

    def to_dict(self) -> dict:
        return {"title": self.title, "content": self.content, "date": self.date}


@dataclass(frozen=True)
class ContentRequest:
    language: str
    topic: str

    def __post_init__(self):
        object.__setattr__(self, "language", resolve_language(self.language))
        object.__setattr__(self, "topic", (self.topic or "").strip().lower())

    def to_dict(self) -> dict:
        return {"language": self.language, "topic": self.topic}


class NewsStore:
    """Per-language topic → articles maps loaded from a directory of JSON
    files. Stores are immutable after load; a missing file is recorded as
    absent rather than raised. With no directory, uses the fixtures shipped
    with the package."""

    def __init__(self, store_dir=None):
        self.store_dir = Path(store_dir) if store_dir is not None else packaged_data_dir() / "news"
        self._topics: dict[str, Optional[dict[str, tuple[Article, ...]]]] = {}
        for language, filename in STORE_FILES.items():
            path = self.store_dir / filename
            self._topics[language] = _load_store_file(path) if path.exists() else None

    def has_language(self, language: str) -> bool:
        return self._topics.get(language) is not None

    def topics(self, language: str) -> dict[str, tuple[Article, ...]]:
        found = self._topics.get(language)
        return found if found is not None else {}


def _load_store_file(path: Path) -> dict[str, tuple[Article, ...]]:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ContentError(f"{path}: invalid JSON ({exc.msg})") from exc
    if not isinstance(raw, dict) or not isinstance(raw.get("topics"), dict):
        raise ContentError(f"{path}: store needs a 'topics' object")
    topics = {}
    for topic, entries in raw["topics"].items():
        try:
            articles = tuple(
                Article(title=e["title"], content=e["content"], date=e["date"]) for e in entries
            )
        except (KeyError, TypeError) as exc:
            raise ContentError(f"{path}: malformed article under topic {topic!r}") from exc
        except ContentError as exc:
            raise ContentError(f"{path}: {exc}") from exc
        topics[topic.strip().lower()] = articles
    return topics


@dataclass(frozen=True)
class FetchResult:
    articles: tuple
    status: str  # ok | no_topic | fallback_english | no_store


def fetch_articles(store: NewsStore, request: ContentRequest) -> FetchResult:
    """Up to 3 most recent articles for the topic, newest first, date ties
    broken by title so equal inputs never reorder non-deterministically."""
    language = request.language
    fallback = False
    if not store.has_language(language):
        if language == FALLBACK_LANGUAGE or not store.has_language(FALLBACK_LANGUAGE):
            return FetchResult(articles=(), status="no_store")
        language = FALLBACK_LANGUAGE
        fallback = True
    topics = store.topics(language)
    if request.topic not in topics:
        return FetchResult(articles=(), status="no_topic")
    ranked = sorted(topics[request.topic], key=lambda a: a.title)
    ranked = sorted(ranked, key=lambda a: a.date_key, reverse=True)
    status = "fallback_english" if fallback else "ok"
    return FetchResult(articles=tuple(ranked[:MAX_ARTICLES]), status=status)


def split_sentences(text: str) -> list[str]:
    parts = (p.strip() for p in _SENTENCE_BOUNDARY.split(text.strip()))
    return [p for p in parts if p]


def word_count(text: str) -> int:
    return len(text.split())


class Summarizer(Protocol):
    """Contract: output word count in [min_words, max_words] unless the
    input is shorter than min_words, in which case output == input."""

    def summarize(self, text: str, min_words: int, max_words: int) -> str: ...


class ExtractiveSummarizer:
    """Deterministic default: accumulate whole sentences in order until at
    least min_words, then cut at max_words on a word boundary.

    Idempotent on its own output whenever that output reaches min_words:
    accumulation stops at the same sentence, and any cut always lands inside
    the final accumulated sentence."""

    def summarize(self, text: str, min_words: int, max_words: int) -> str:
        if word_count(text) < min_words:
            return text
        picked = []
        total = 0
        for sentence in split_sentences(text):
            picked.append(sentence)
            total += word_count(sentence)
            if total >= min_words:
                break
        summary = " ".join(picked)
        words = summary.split()
        if len(words) > max_words:
            summary = " ".join(words[:max_words])
        return summary


def summarize(
    text: str,
    min_words: int = MIN_SUMMARY_WORDS,
    max_words: int = MAX_SUMMARY_WORDS,
    summarizer: Optional[Summarizer] = None,
) -> str:
    if not text or not text.strip():
        raise ContentError("cannot summarize empty text")
    if not (0 < min_words <= max_words):
        raise ContentError(f"bad word bounds [{min_words}, {max_words}]")
    return (summarizer or ExtractiveSummarizer()).summarize(text, min_words, max_words)


@dataclass(frozen=True)
class SpeechSegment:
    text: str
    word_count: int
    estimated_duration: float  # seconds, at 150 words/min
    pause_after: float = PAUSE_SECONDS

    def to_dict(self) -> dict:
        return {
            "text": self.text,
            "word_count": self.word_count,
            "estimated_duration": self.estimated_duration,
            "pause_after": self.pause_after,
        }


@dataclass(frozen=True)
class SpeechPlan:
    language: str
    segments: tuple

    @property
    def total_duration(self) -> float:
        return sum(s.estimated_duration + s.pause_after for s in self.segments)

    def to_dict(self) -> dict:
        return {
            "language": self.language,
            "segments": [s.to_dict() for s in self.segments],
            "total_duration": self.total_duration,
        }


def build_speech_plan(summary: str, language: str) -> SpeechPlan:
    """One segment per sentence at 150 words per minute, a 0.5 s pause after
    each; the language tag rides along for downstream synthesizers."""
    if not summary or not summary.strip():
        raise ContentError("cannot plan speech for empty summary")
    segments = []
    for sentence in split_sentences(summary):
        n = word_count(sentence)
        segments.append(
            SpeechSegment(text=sentence, word_count=n, estimated_duration=n * 60.0 / WORDS_PER_MINUTE)
        )
    return SpeechPlan(language=resolve_language(language), segments=tuple(segments))


@dataclass(frozen=True)
class BundleEntry:
    article: Article
    summary: str
    speech_plan: SpeechPlan

    def to_dict(self) -> dict:
        return {
            "article": self.article.to_dict(),
            "summary": self.summary,
            "speech_plan": self.speech_plan.to_dict(),
        }


@dataclass(frozen=True)
class ContentBundle:
    request: ContentRequest
    status: str
    entries: tuple

    def to_dict(self) -> dict:
        return {
            "request": self.request.to_dict(),
            "status": self.status,
            "items": [e.to_dict() for e in self.entries],
        }

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=indent)


def build_bundle(
    store: NewsStore, request: ContentRequest, summarizer: Optional[Summarizer] = None
) -> ContentBundle:
    fetched = fetch_articles(store, request)
    entries = []
    for article in fetched.articles:
        text = summarize(article.content, summarizer=summarizer)
        plan = build_speech_plan(text, request.language)
        entries.append(BundleEntry(article=article, summary=text, speech_plan=plan))
    return ContentBundle(request=request, status=fetched.status, entries=tuple(entries))


class SpeechSynthesizer(Protocol):
    """Boundary for audio rendering; nothing in the engine depends on it."""

    def synthesize(self, plan: SpeechPlan) -> bytes: ...


class CueSheetSynthesizer:
    """Deterministic default: renders the plan as a UTF-8 cue sheet instead
    of audio so tests never need a TTS backend."""

    def synthesize(self, plan: SpeechPlan) -> bytes:
        lines = [f"# language: {plan.language}"]
        at = 0.0
        for seg in plan.segments:
            lines.append(f"{at:010.3f} {seg.estimated_duration:07.3f} {seg.text}")
            at += seg.estimated_duration + seg.pause_after
        return "\n".join(lines).encode("utf-8")
