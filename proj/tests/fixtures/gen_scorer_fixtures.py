#!/usr/bin/env python3
# Copyright 2026 The rttape Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Freezes scorer fixtures from sacreBLEU 1.2.20.

Writes three hypothesis/reference mini-corpora under scorer/, the scores
the reference implementation assigns them (scorer/expected.json), and a
tokenizer fuzz set with reference tokenizations (scorer/tokenizer_fuzz.jsonl).
The outputs are checked in; rerun only to extend them.

    pip install sacrebleu==1.2.20
    python3 tests/fixtures/gen_scorer_fixtures.py
"""

import json
import os
import random

import sacrebleu

assert sacrebleu.VERSION == "1.2.20", sacrebleu.VERSION

HERE = os.path.join(os.path.dirname(os.path.abspath(__file__)), "scorer")

NEWS_WORDS = (
    "Die Regierung hat am Dienstag neue Maßnahmen angekündigt , um die "
    "Inflation zu bekämpfen . Der Präsident sagte , dass die Lage ernst sei "
    "Obama empfängt Netanjahu im Weißen Haus Berlin München Hamburg Köln "
    "Polizei Zeugen Unfall Straße Autobahn Millionen Euro Prozent Jahr "
    "erhält bekommt gibt nimmt sieht geht kommt bleibt steht liegt "
    "the of and to in is was for on that with as by at from "
    "UN EU USA NATO Bundesliga FC Bayern Dortmund"
).split()

PUNCT = [",", ".", "!", "?", ":", ";", "-", "(", ")", "\"", "'", "„", "“", "«", "»",
         "…", "–", "\u2014", "/", "&", "%", "§"]
SYMBOLS = ["$", "€", "£", "+", "=", "<", ">", "°", "©", "^", "`", "|", "~", "±"]
EXOTIC = ["中国", "東京", "。", "、", "「", "」", "😀", "👍🏽", "Ωmega", "naïve", "Ελλάδα",
          "Москва", "\u2014", "¿Qué?", "¡Hola!", "é", " ", "Straße", "İstanbul",
          "١٢٣", "٣.١٤", "₂", "½", "ǅ", "\\", "a\\b", "x_y", "#tag", "@user"]


def number(r):
    kind = r.randrange(7)
    if kind == 0:
        return str(r.randint(0, 9999))
    if kind == 1:
        return f"{r.randint(1, 999)},{r.randint(0, 999):03d}"
    if kind == 2:
        return f"{r.randint(0, 99)}.{r.randint(0, 99)}"
    if kind == 3:
        return f"{r.randint(1, 99)}%"
    if kind == 4:
        return f"{r.randint(1, 28)}.{r.randint(1, 12)}.{r.randint(1990, 2030)}"
    if kind == 5:
        return f"${r.randint(1, 500)}"
    return f"({r.randint(1, 9)})"


def sentence(r, flavour):
    n = r.randint(1, 28)
    toks = []
    for _ in range(n):
        x = r.random()
        if flavour == "numeric" and x < 0.35:
            toks.append(number(r))
        elif flavour == "unicode" and x < 0.3:
            toks.append(r.choice(EXOTIC))
        elif x < 0.12:
            toks.append(r.choice(PUNCT))
        elif x < 0.16:
            toks.append(r.choice(SYMBOLS))
        elif x < 0.22:
            toks.append(number(r))
        else:
            w = r.choice(NEWS_WORDS)
            if r.random() < 0.1:
                w = w.upper() if r.random() < 0.5 else w.capitalize()
            toks.append(w)
    # glue some punctuation onto neighbours, as in real text
    out = toks[0]
    for t in toks[1:]:
        out += ("" if r.random() < 0.3 else " ") + t
    if r.random() < 0.6:
        out += r.choice([".", "!", "?", ".\"", "…", ""])
    return out


def perturb(r, ref):
    toks = ref.split(" ")
    out = []
    i = 0
    while i < len(toks):
        x = r.random()
        if x < 0.08:
            i += 1
            continue
        if x < 0.16:
            out.append(r.choice(NEWS_WORDS))
        elif x < 0.2 and i + 1 < len(toks):
            out.extend([toks[i + 1], toks[i]])
            i += 2
            continue
        elif x < 0.24:
            out.append(toks[i].lower())
        elif x < 0.27:
            out.append(toks[i] + r.choice(PUNCT))
        else:
            out.append(toks[i])
        if r.random() < 0.03:
            out.append(r.choice(NEWS_WORDS))
        i += 1
    hyp = " ".join(out)
    if r.random() < 0.05:
        hyp += r.choice([" ", "  ", "\t"])
    return hyp


CORPORA = [("news", "news", 120, 11), ("numeric", "numeric", 60, 22),
           ("unicode", "unicode", 200, 33)]


def build_corpus(flavour, n, seed):
    r = random.Random(seed)
    refs, hyps = [], []
    for i in range(n):
        ref = sentence(r, flavour)
        if i % 37 == 5:
            hyp = ref
        elif i % 41 == 7:
            hyp = sentence(r, flavour)
        elif i % 53 == 9:
            hyp = ""
        else:
            hyp = perturb(r, ref)
        refs.append(ref)
        hyps.append(hyp)
    return hyps, refs


def fuzz_lines(n, seed):
    r = random.Random(seed)
    pool = (list("abcXYZ0123456789 .,;:!?-_()[]{}'\"/\\@#$%^&*+=<>|~`") +
            [" ", " ", "　", "\x1c", "\x1f", "\x85", " ", "\t",
             "é", "ß", "Ω", "中", "。", "、", "「", "」", "«", "»", "„", "“", "…", "–",
             "\u2014", "€", "£", "°", "©", "😀", "́", "١", "٢", "٫", "¿", "¡", "½",
             "​", "﻿", "\U0001f3fd", "−", "·"])
    lines = []
    for _ in range(n):
        k = r.randint(0, 24)
        lines.append("".join(r.choice(pool) for _ in range(k)))
    return lines


def main():
    os.makedirs(HERE, exist_ok=True)
    expected = {"scorer": "sacrebleu", "version": sacrebleu.VERSION, "corpora": {}}
    for name, flavour, n, seed in CORPORA:
        hyps, refs = build_corpus(flavour, n, seed)
        for suffix, lines in (("hyp", hyps), ("ref", refs)):
            with open(os.path.join(HERE, f"{name}.{suffix}"), "w", encoding="utf-8",
                      newline="\n") as f:
                for line in lines:
                    assert "\n" not in line and "\r" not in line
                    f.write(line + "\n")
        b = sacrebleu.corpus_bleu(hyps, [refs], smooth="exp", tokenize="intl")
        expected["corpora"][name] = {
            "lines": n, "score": b.score, "precisions": list(b.precisions), "bp": b.bp,
            "hyp_len": b.sys_len, "ref_len": b.ref_len, "counts": list(b.counts),
            "totals": list(b.totals),
        }
    with open(os.path.join(HERE, "expected.json"), "w", encoding="utf-8") as f:
        json.dump(expected, f, indent=2, ensure_ascii=False)
        f.write("\n")
    with open(os.path.join(HERE, "tokenizer_fuzz.jsonl"), "w", encoding="utf-8") as f:
        for line in fuzz_lines(3000, 44):
            toks = sacrebleu.tokenize_v14_international(line).split()
            again = sacrebleu.tokenize_v14_international(" ".join(toks)).split()
            f.write(json.dumps({"in": line, "out": toks, "again": again},
                               ensure_ascii=False) + "\n")


if __name__ == "__main__":
    main()
