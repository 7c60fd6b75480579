#!/usr/bin/env python3
# Copyright (C) 2026 The svocomp Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#    http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Regenerates the bundled toy data under data/.

The corpus is a topic model over noun classes: every sentence is a
subject-verb-object frame wrapped in context words drawn from the
subject's and object's classes. `draw` has two argument-distinct senses
(attract-like with media subjects and attention objects, depict-like with
people drawing pictures), which the disambiguation datasets probe.
"""

import argparse
import collections
import os
import random

CLASSES = {
    "person": ["man", "woman", "child", "student", "teacher", "employee", "delegate", "author"],
    "artist": ["artist", "painter", "illustrator", "designer", "cartoonist"],
    "media": ["report", "article", "news", "campaign", "event", "show", "programme", "project",
              "service"],
    "attention": ["attention", "interest", "crowd", "support", "criticism", "visitor"],
    "picture": ["picture", "portrait", "map", "diagram", "sketch", "landscape"],
    "food": ["meal", "cake", "bread", "fruit", "soup", "rice"],
    "drink": ["water", "tea", "coffee", "wine", "milk", "juice"],
    "text": ["book", "letter", "novel", "poem", "essay"],
    "vehicle": ["car", "bus", "truck", "train", "bike"],
    "place": ["city", "museum", "village", "school", "office"],
    "goods": ["land", "house", "ticket", "shop", "product"],
    "body": ["hand", "arm", "flag"],
    "work": ["work", "job", "business", "career"],
    "help": ["help", "aid", "assistance", "advice"],
    "problem": ["problem", "difficulty", "challenge", "issue"],
    "animal": ["dog", "cat", "horse", "bird", "cow"],
}

CONTEXTS = {
    "person": ["people", "family", "young", "old", "friend", "life"],
    "artist": ["art", "creative", "studio", "style", "gallery", "talent"],
    "media": ["public", "television", "press", "media", "week", "story"],
    "attention": ["wide", "huge", "global", "popular", "many", "growing"],
    "picture": ["colour", "image", "drawing", "pencil", "canvas", "line"],
    "food": ["tasty", "kitchen", "hungry", "plate", "delicious", "dinner"],
    "drink": ["cup", "glass", "hot", "cold", "fresh", "bottle"],
    "text": ["page", "chapter", "written", "publish", "library", "word"],
    "vehicle": ["road", "fast", "engine", "wheel", "fuel", "garage"],
    "place": ["street", "town", "building", "local", "area", "centre"],
    "goods": ["price", "market", "cost", "sale", "money", "value"],
    "body": ["finger", "raise", "gesture", "greeting", "air", "slowly"],
    "work": ["employer", "salary", "daily", "hours", "task", "office_hours"],
    "help": ["need", "free", "community", "charity", "volunteer", "offer_of"],
    "problem": ["serious", "difficult", "solve", "major", "crisis", "risk"],
    "animal": ["farm", "wild", "pet", "fur", "field", "feed"],
}

# verb -> list of (subject class, object class, weight)
FRAMES = {
    "draw": [("media", "attention", 1.0), ("person", "picture", 0.6), ("artist", "picture", 0.6)],
    "attract": [("media", "attention", 1.0), ("place", "attention", 0.4)],
    "depict": [("artist", "picture", 1.0), ("person", "picture", 0.5)],
    "eat": [("person", "food", 1.0), ("animal", "food", 0.5)],
    "drink": [("person", "drink", 1.0), ("animal", "drink", 0.4)],
    "read": [("person", "text", 1.0)],
    "write": [("person", "text", 1.0)],
    "buy": [("person", "goods", 1.0), ("person", "food", 0.4)],
    "sell": [("person", "goods", 1.0), ("person", "food", 0.3)],
    "drive": [("person", "vehicle", 1.0)],
    "meet": [("person", "person", 1.0)],
    "visit": [("person", "place", 1.0)],
    "cook": [("person", "food", 1.0)],
    "build": [("person", "place", 1.0), ("person", "goods", 0.3)],
    "wave": [("person", "body", 1.0)],
    "start": [("person", "work", 1.0), ("media", "work", 0.3)],
    "offer": [("media", "help", 1.0), ("place", "help", 0.5)],
    "provide": [("media", "help", 1.0), ("place", "help", 0.5)],
    "face": [("media", "problem", 1.0), ("person", "problem", 0.6)],
    "present": [("media", "problem", 0.8), ("artist", "picture", 0.4)],
}

VERB_WEIGHT = {v: 1.0 for v in FRAMES}
VERB_WEIGHT.update({"draw": 1.6, "attract": 1.2, "depict": 1.2})


def noun_class(noun):
    for cls, nouns in CLASSES.items():
        if noun in nouns:
            return cls
    raise KeyError(noun)


def zipf_choice(rng, items):
    weights = [1.0 / (i + 1) for i in range(len(items))]
    return rng.choices(items, weights=weights, k=1)[0]


def make_corpus(rng, n_tokens):
    verbs = sorted(FRAMES)
    vweights = [VERB_WEIGHT[v] for v in verbs]
    sentences = []
    triples = collections.Counter()
    tokens = 0
    while tokens < n_tokens:
        verb = rng.choices(verbs, weights=vweights, k=1)[0]
        frames = FRAMES[verb]
        sc, oc, _ = rng.choices(frames, weights=[f[2] for f in frames], k=1)[0]
        subj = zipf_choice(rng, CLASSES[sc])
        obj = zipf_choice(rng, CLASSES[oc])
        while obj == subj:
            obj = zipf_choice(rng, CLASSES[oc])
        sent = [rng.choice(CONTEXTS[sc]), subj, verb, obj, rng.choice(CONTEXTS[oc])]
        if rng.random() < 0.5:
            sent.append(rng.choice(CONTEXTS[oc]))
        if rng.random() < 0.3:
            sent.insert(0, rng.choice(CONTEXTS[sc]))
        sentences.append(sent)
        triples[(subj, verb, obj)] += 1
        tokens += len(sent)
    return sentences, triples, tokens


def plausible(verb, sc, oc):
    return any(f[0] == sc and f[1] == oc for f in FRAMES[verb])


def ratings(rng, base, n=5):
    return [min(7, max(1, base + rng.choice([-1, 0, 0, 1]))) for _ in range(n)]


def make_gs(rng):
    """Verb disambiguation: subject and object fixed, verb vs landmark."""
    items = [
        # (verb, subject, object, landmark)
        ("draw", "report", "attention", "attract"), ("draw", "report", "attention", "depict"),
        ("draw", "campaign", "crowd", "attract"), ("draw", "campaign", "crowd", "depict"),
        ("draw", "event", "interest", "attract"), ("draw", "event", "interest", "depict"),
        ("draw", "news", "support", "attract"), ("draw", "news", "support", "depict"),
        ("draw", "show", "visitor", "attract"), ("draw", "show", "visitor", "depict"),
        ("draw", "child", "picture", "depict"), ("draw", "child", "picture", "attract"),
        ("draw", "artist", "portrait", "depict"), ("draw", "artist", "portrait", "attract"),
        ("draw", "student", "map", "depict"), ("draw", "student", "map", "attract"),
        ("draw", "painter", "landscape", "depict"), ("draw", "painter", "landscape", "attract"),
        ("draw", "man", "sketch", "depict"), ("draw", "man", "sketch", "attract"),
        ("present", "project", "problem", "face"), ("present", "project", "problem", "depict"),
        ("present", "report", "difficulty", "face"), ("present", "report", "difficulty", "depict"),
        ("present", "artist", "picture", "depict"), ("present", "artist", "picture", "face"),
        ("present", "painter", "portrait", "depict"), ("present", "painter", "portrait", "face"),
        ("offer", "service", "help", "provide"), ("offer", "service", "help", "build"),
        ("offer", "programme", "advice", "provide"), ("offer", "programme", "advice", "meet"),
        ("meet", "student", "teacher", "visit"), ("visit", "man", "city", "meet"),
        ("visit", "woman", "museum", "build"), ("cook", "woman", "meal", "eat"),
        ("cook", "man", "soup", "drive"), ("buy", "man", "land", "sell"),
        ("buy", "student", "ticket", "read"), ("write", "author", "book", "read"),
        ("write", "author", "letter", "drink"), ("drink", "child", "milk", "eat"),
        ("drink", "man", "wine", "wave"), ("start", "employee", "work", "face"),
        ("wave", "man", "hand", "write"),
    ]
    rows = []
    for verb, subj, obj, land in items:
        sc, oc = noun_class(subj), noun_class(obj)
        if plausible(land, sc, oc):
            base = 6
        elif verb in ("cook", "buy", "write", "drink", "meet", "visit") and \
                land in ("eat", "sell", "read", "visit", "meet"):
            base = 3
        else:
            base = 1
        pid = f"gs-{verb}-{subj}-{obj}-{land}"
        for a, r in enumerate(ratings(rng, base)):
            rows.append((pid, subj, verb, obj, subj, land, obj, f"a{a}", r))
    return rows


GROUP = {
    ("offer", "help"): "help", ("provide", "help"): "help",
    ("face", "problem"): "problem", ("present", "problem"): "problem",
    ("eat", "food"): "food", ("cook", "food"): "food",
    ("buy", "goods"): "trade", ("sell", "goods"): "trade",
    ("read", "text"): "text", ("write", "text"): "text",
    ("attract", "attention"): "attention", ("draw", "attention"): "attention",
    ("depict", "picture"): "picture", ("draw", "picture"): "picture",
    ("present", "picture"): "picture",
    ("meet", "person"): "social", ("visit", "place"): "social",
    ("drive", "vehicle"): "vehicle", ("wave", "body"): "body",
    ("start", "work"): "work", ("drink", "drink"): "drink",
    ("build", "place"): "build",
}


def make_ks(rng, triples):
    """Sentence similarity: all three words vary."""
    attested = sorted({t for t, c in triples.items() if c >= 2})
    rows = []
    seen = set()
    while len(seen) < 48:
        a = rng.choice(attested)
        b = rng.choice(attested)
        if a == b or (a, b) in seen or (b, a) in seen:
            continue
        ga = GROUP.get((a[1], noun_class(a[2])))
        gb = GROUP.get((b[1], noun_class(b[2])))
        if ga is None or gb is None:
            continue
        # Balance similar and dissimilar pairs.
        same = ga == gb
        want_same = len(seen) % 2 == 0
        if same != want_same:
            continue
        seen.add((a, b))
        base = 6 if same else (3 if noun_class(a[0]) == noun_class(b[0]) else 1)
        pid = f"ks-{len(seen):02d}"
        for k, r in enumerate(ratings(rng, base)):
            rows.append((pid, a[0], a[1], a[2], b[0], b[1], b[2], f"a{k}", r))
    return rows


def write_dataset(path, rows):
    with open(path, "w") as f:
        f.write("pair_id\tsubj1\tverb1\tobj1\tsubj2\tverb2\tobj2\tannotator_id\trating\n")
        for r in rows:
            f.write("\t".join(str(x) for x in r) + "\n")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=os.path.join(os.path.dirname(__file__), "..", "data"))
    ap.add_argument("--tokens", type=int, default=50000)
    ap.add_argument("--seed", type=int, default=2014)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    os.makedirs(args.out, exist_ok=True)

    sentences, triples, ntok = make_corpus(rng, args.tokens)
    with open(os.path.join(args.out, "mini_corpus.txt"), "w") as f:
        for s in sentences:
            f.write(" ".join(s) + "\n")
    with open(os.path.join(args.out, "triples.tsv"), "w") as f:
        for (s, v, o), c in sorted(triples.items()):
            f.write(f"{s}\t{v}\t{o}\t{c}\n")
    write_dataset(os.path.join(args.out, "gs_toy.tsv"), make_gs(rng))
    write_dataset(os.path.join(args.out, "ks_toy.tsv"), make_ks(rng, triples))
    print(f"{len(sentences)} sentences, {ntok} tokens, {len(triples)} distinct triples")


if __name__ == "__main__":
    main()
