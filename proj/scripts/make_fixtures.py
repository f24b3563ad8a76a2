#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
# Copyright 2026 The infgraph Authors
"""Regenerates the synthetic record fixtures under tests/data.

Output is deterministic; rerun after changing the record format and commit
the result.
"""

import argparse
import json
import random
from pathlib import Path

PAIRS = [
    ("C+", "S"), ("C-", "S"), ("S", "M-"), ("S", "M+"), ("S-", "M+"),
    ("M-", "H-"), ("M-", "H+"), ("M+", "H+"), ("M+", "H-"),
]
CLASS0 = ["hurts", "helps", "hurts", "helps", "hurts", "helps", "hurts", "helps", "hurts"]
CLASS1 = ["helps", "hurts"] + CLASS0[2:]

NOUNS = ["rain", "sunlight", "wind", "soil", "roots", "seeds", "ice", "rivers", "clouds",
         "bees", "flowers", "trees", "erosion", "salt", "heat", "snow", "fish", "algae",
         "sediment", "lava", "magma", "oxygen", "sugar", "minerals", "leaves", "fungi"]
VERBS = ["absorbed", "produced", "released", "formed", "melted", "carried", "grown",
         "deposited", "consumed", "collected", "heated", "cooled"]
ADJ = ["warmer", "colder", "wetter", "drier", "denser", "larger", "smaller", "faster"]


def phrase(rng, direction):
    return f"{direction} {rng.choice(NOUNS)} {rng.choice(VERBS)}"


def dot(labels, polarities):
    stmts = []
    for (src, dst), pol in zip(PAIRS, polarities):
        stmts.append(f'"{src} : {labels[src]}" -> "{dst} : {labels[dst]}" [label={pol}]; ')
    return "strict digraph { " + "".join(stmts) + "}"


def wiqa_example(rng, idx):
    outcome = f"{rng.choice(NOUNS)} {rng.choice(VERBS)}"
    labels = {
        "C+": f"{phrase(rng, 'less')} [OR] {rng.choice(ADJ)} {rng.choice(NOUNS)}",
        "C-": f"{phrase(rng, 'more')} [OR] {rng.choice(ADJ)} {rng.choice(NOUNS)}",
        "S": phrase(rng, "more"),
        "S-": phrase(rng, "less"),
        "M+": phrase(rng, "more"),
        "M-": f"{phrase(rng, 'less')} [OR] {phrase(rng, 'less')}",
        "H+": f"MORE {outcome}",
        "H-": f"LESS {outcome}",
    }
    sentences = [f"The {rng.choice(NOUNS)} is {rng.choice(VERBS)} when the {rng.choice(NOUNS)} "
                 f"is {rng.choice(ADJ)}." for _ in range(rng.randint(2, 4))]
    polarities = CLASS0 if rng.random() < 0.5 else CLASS1
    return {"id": f"wiqa-{idx:04d}", "passage": " ".join(sentences), "graph_dot": dot(labels, polarities)}


def write_jsonl(path, schema, records):
    with open(path, "w", encoding="utf-8") as f:
        f.write(json.dumps({"schema": schema, "version": 1}) + "\n")
        for r in records:
            f.write((r if isinstance(r, str) else json.dumps(r)) + "\n")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Path(__file__).resolve().parent.parent / "tests" / "data")
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    rng = random.Random(20211)

    synth = [wiqa_example(rng, i) for i in range(50)]
    write_jsonl(args.out / "wiqa_synth_50.jsonl", "infgraph/wiqa", synth)

    ten = [wiqa_example(rng, 100 + i) for i in range(10)]
    # Record 4 loses its S- node (dangling edges removed); record 8 has a
    # syntax error that repair would fix but strict ingestion rejects.
    bad = ten[3]["graph_dot"].split("; ")
    ten[3]["graph_dot"] = "; ".join(s for s in bad if '"S- :' not in s)
    ten[7]["graph_dot"] = ten[7]["graph_dot"].replace("strict digraph {", "digraph G {", 1)
    write_jsonl(args.out / "wiqa_fixture_10.jsonl", "infgraph/wiqa", ten)

    queries = []
    for i, source in enumerate(["snli", "social", "atomic", "snli", "social", "atomic"]):
        queries.append({
            "id": f"q-{i:03d}",
            "premise": f"A person walks past the {rng.choice(NOUNS)}.",
            "hypothesis": f"The person is near {rng.choice(NOUNS)}.",
            "update": f"The {rng.choice(NOUNS)} is {rng.choice(ADJ)}.",
            "label": rng.choice(["intensifies", "attenuates"]),
            "source": source,
        })
    del queries[2]["update"]
    write_jsonl(args.out / "defeasible_fixture.jsonl", "infgraph/defeasible", queries)

    manifest = {"entries": [
        {"dataset": "wiqa", "split": "train", "count": 50},
        {"dataset": "wiqa", "split": "test", "count": 8},
        {"dataset": "atomic", "split": "dev", "count": 5},
    ]}
    (args.out / "fixture_manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")


if __name__ == "__main__":
    main()
