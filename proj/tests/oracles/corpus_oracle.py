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
"""Independent dedup + length-filter oracle.

Distinct lines are counted with `sort | uniq`; first-occurrence order and
the length caps are recomputed in plain Python (len() of the decoded line,
str.split() for tokens). With --rttape, the tool's dedup (both modes) and
filter-mono outputs are compared line by line against the oracle.
"""

import argparse
import json
import os
import subprocess
import sys

MAX_CHARS = 500
MAX_TOKENS = 70


def read_lines(path):
    with open(path, "rb") as f:
        data = f.read()
    if data.endswith(b"\n"):
        data = data[:-1]
    return [] if not data else [b.decode("utf-8") for b in data.split(b"\n")]


def distinct_by_sort_uniq(path):
    env = dict(os.environ, LC_ALL="C")
    out = subprocess.check_output(f"sort '{path}' | uniq | wc -l", shell=True, env=env)
    return int(out.strip())


def oracle(path):
    lines = read_lines(path)
    seen = set()
    first = []
    for line in lines:
        if line not in seen:
            seen.add(line)
            first.append(line)
    kept = [l for l in first if 0 < len(l) <= MAX_CHARS and len(l.split()) <= MAX_TOKENS]
    return lines, first, kept


def run(cmd):
    p = subprocess.run(cmd, capture_output=True, text=True)
    if p.returncode != 0:
        sys.exit(f"command failed ({p.returncode}): {' '.join(cmd)}\n{p.stderr}")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--fixture", required=True)
    ap.add_argument("--rttape")
    ap.add_argument("--work")
    ap.add_argument("--counts-only", action="store_true")
    args = ap.parse_args()

    lines, first, kept = oracle(args.fixture)
    distinct = distinct_by_sort_uniq(args.fixture)
    if distinct != len(first):
        sys.exit(f"sort|uniq counts {distinct} distinct lines, first-occurrence scan {len(first)}")
    counts = {"read": len(lines), "distinct": len(first), "duplicates": len(lines) - len(first),
              "kept_after_filter": len(kept)}
    if args.counts_only or not args.rttape:
        print(json.dumps(counts))
        return

    os.makedirs(args.work, exist_ok=True)
    dedup = os.path.join(args.work, "dedup.txt")
    exact = os.path.join(args.work, "dedup_exact.txt")
    final = os.path.join(args.work, "final.txt")
    run([args.rttape, "dedup", "--in", args.fixture, "--out", dedup,
         "--report", os.path.join(args.work, "dedup.json")])
    run([args.rttape, "dedup", "--exact", "--run-lines", "777", "--in", args.fixture,
         "--out", exact, "--report", os.path.join(args.work, "dedup_exact.json")])
    run([args.rttape, "--jobs", "3", "filter-mono", "--in", dedup, "--out", final,
         "--report", os.path.join(args.work, "filter.json")])

    failures = []
    if read_lines(dedup) != first:
        failures.append("fingerprint dedup output differs from oracle")
    if read_lines(exact) != first:
        failures.append("exact dedup output differs from oracle")
    if read_lines(final) != kept:
        failures.append("filter-mono output differs from oracle")
    with open(os.path.join(args.work, "filter.json")) as f:
        report = json.load(f)
    if report["read"] != len(first) or report["kept"] != len(kept):
        failures.append(f"filter report {report} disagrees with oracle")
    print(json.dumps(counts))
    if failures:
        sys.exit("\n".join(failures))


if __name__ == "__main__":
    main()
