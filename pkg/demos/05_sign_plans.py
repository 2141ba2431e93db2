"""Turn spoken or typed text into a sign plan: GIF cards for known
phrases, finger-spelling for everything else, and a hard stop on the
configured keywords.

Run: python3 demos/05_sign_plans.py
"""

from sanvaad import load_dictionary, translate

dictionary = load_dictionary()  # packaged manifest; pass a path for your own
print(f"packaged dictionary: {len(dictionary)} phrases, "
      f"{len(dictionary.synonyms)} synonyms, stop keywords {sorted(dictionary.stop_keywords)}")


def show(text):
    plan = translate(text, dictionary)
    print(f"\n{text!r}")
    for item in plan.items:
        d = item.to_dict()
        if d["kind"] == "gif":
            print(f"  [gif]    {d['asset_id']:<24} (matched {d['source_phrase']!r})")
        else:
            print(f"  [letter] {d['character']} ({d['duration']}s)")
    if plan.terminal:
        print("  -- stop keyword reached, playback ends here --")


# Greedy longest match: "thank you very much" wins over "thank you".
show("Thank you very much!")

# Unknown words fall back to spelling, letter by letter.
show("hello friend, gate 9")

# Synonyms are folded in before matching.
show("hi, thanks")

# Stop keywords cut the plan short no matter what follows.
show("see you tomorrow goodbye this is never signed")

print("\nplan as JSON:")
print(translate("hello friend", dictionary).to_json(indent=2))
