"""Walk the daily-content pipeline: pick articles from a news store,
summarize them into the 20-60 word band, and plan speech output with
per-sentence timing.

The packaged stores ship English, Hindi and Marathi fixtures so the demo
runs offline; point NewsStore at your own directory for live data.

Run: python3 demos/06_news_content.py
"""

from sanvaad import (
    ContentRequest,
    CueSheetSynthesizer,
    NewsStore,
    build_bundle,
    build_speech_plan,
    fetch_articles,
    summarize,
)
from sanvaad.content import word_count

store = NewsStore()  # packaged fixtures; pass a directory for live data
for lang in ("english", "hindi", "marathi"):
    topics = store.topics(lang)
    counts = {t: len(a) for t, a in topics.items()}
    print(f"{lang}: {counts}")

# Fetch keeps at most the 3 newest articles; ties on date break by title.
result = fetch_articles(store, ContentRequest(language="english", topic="technology"))
print(f"\nenglish/technology -> status {result.status!r}")
for a in result.articles:
    print(f"  {a.date}  {a.title} ({word_count(a.content)} words)")

# Summaries land in the 20-60 word band and are idempotent.
article = result.articles[0]
summary = summarize(article.content)
print(f"\nsummary ({word_count(summary)} words): {summary}")
print(f"idempotent: {summarize(summary) == summary}")

# Speech planning: 150 words per minute, 0.5 s pause after each sentence.
plan = build_speech_plan(summary, "english")
print(f"\nspeech plan: {len(plan.segments)} segments, {plan.total_duration:.2f}s total")
for seg in plan.segments:
    print(f"  {seg.estimated_duration:6.2f}s  {seg.text[:60]}")

# Devanagari stores flow through the same path; language names fold to
# the supported set ("hi" and "hin" both mean hindi).
bundle = build_bundle(store, ContentRequest(language="hi", topic="politics"))
print(f"\nhindi/politics -> {len(bundle.entries)} entries")
print(f"first headline: {bundle.entries[0].article.title}")

# The default synthesizer emits a timing cue sheet rather than audio.
sheet = CueSheetSynthesizer().synthesize(bundle.entries[0].speech_plan)
print("\ncue sheet:")
print(sheet.decode("utf-8"))
