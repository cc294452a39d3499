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
"""Regenerates core/src/unicode_tables.inc.

Membership is read off the compiled character classes used by sacreBLEU
1.2.20's international tokenizer, so quirks of that class construction
(e.g. the backslash being swallowed as an escape) carry over verbatim.

    pip install sacrebleu==1.2.20
    python3 core/scripts/gen_unicode_tables.py > core/src/unicode_tables.inc
"""

import re
import sys
import unicodedata

import sacrebleu

assert sacrebleu.VERSION == "1.2.20", sacrebleu.VERSION

R = sacrebleu.UnicodeRegex
punct = re.compile("[" + R.punctuation + "]")
symbol = R.symbol_re
digit = re.compile(r"\d")


def ranges(pred):
    out = []
    start = None
    for cp in range(sys.maxunicode + 1):
        hit = pred(chr(cp))
        if hit and start is None:
            start = cp
        elif not hit and start is not None:
            out.append((start, cp - 1))
            start = None
    if start is not None:
        out.append((start, sys.maxunicode))
    return out


def emit(name, rs):
    print(f"constexpr CodepointRange {name}[] = {{")
    for lo, hi in rs:
        print(f"    {{0x{lo:04X}, 0x{hi:04X}}},")
    print("};")
    print()


print("// Generated by core/scripts/gen_unicode_tables.py. Do not edit.")
print(f'// Unicode {unicodedata.unidata_version}, sacreBLEU {sacrebleu.VERSION} tok.intl classes.')
print()
print(f'constexpr char kTableUnicodeVersion[] = "{unicodedata.unidata_version}";')
print()
emit("kPunctuation", ranges(lambda c: punct.fullmatch(c) is not None))
emit("kSymbol", ranges(lambda c: symbol.fullmatch(c) is not None))
emit("kDecimalDigit", ranges(lambda c: digit.fullmatch(c) is not None))
emit("kWhitespace", ranges(lambda c: c.isspace()))
