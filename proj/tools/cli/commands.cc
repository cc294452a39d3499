// Copyright 2026 The rttape Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <filesystem>
#include <map>
#include <optional>
#include <utility>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "cli/cli_internal.h"
#include "rttape/analysis.h"
#include "rttape/backends.h"
#include "rttape/corpus.h"
#include "rttape/errors.h"
#include "rttape/io.h"
#include "rttape/pipeline.h"
#include "rttape/scoring.h"
#include "rttape/testset.h"

namespace rttape::cli {
namespace {

namespace fs = std::filesystem;

const std::map<std::string, SgmSide> kSides = {
    {"src", SgmSide::kSource}, {"ref", SgmSide::kReference}, {"hyp", SgmSide::kHypothesis}};
const std::map<std::string, MergeMode> kMergeModes = {
    {"all", MergeMode::kAll}, {"target-original-only", MergeMode::kTargetOriginalOnly}};
const std::map<std::string, ApeScope> kApeScopes = {
    {"all", ApeScope::kAll}, {"target-original-only", ApeScope::kTargetOriginalOnly}};
const std::map<std::string, PairDirection> kDirections = {
    {"normal", PairDirection::kNormal}, {"reverse", PairDirection::kReverse}};
const std::map<std::string, VocabTokenizer> kVocabTokenizers = {
    {"whitespace", VocabTokenizer::kWhitespace}, {"intl", VocabTokenizer::kIntl}};
const std::map<std::string, LengthUnit> kLengthUnits = {{"tokens", LengthUnit::kTokens},
                                                       {"chars", LengthUnit::kChars}};

bool IsSgmPath(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), ::tolower);
  return ext == ".sgm" || ext == ".sgml";
}

// Plain text (one sentence per line) or SGM, by extension.
std::vector<std::string> ReadSentences(Context& ctx, const fs::path& p, SgmSide side) {
  ctx.Input(p);
  if (!IsSgmPath(p)) return ReadLines(p);
  std::vector<std::string> out;
  for (auto& seg : ParseSgm(ReadFile(p), side)) out.push_back(std::move(seg.text));
  return out;
}

std::vector<std::string> ReadText(Context& ctx, const fs::path& p) {
  ctx.Input(p);
  return ReadLines(p);
}

std::string TsvField(const std::string& s, std::string_view what) {
  if (s.find('\t') != std::string::npos) {
    throw DataError(fmt::format(
        "{} contains a tab and cannot be written as TSV; use the two-file outputs", what));
  }
  return s;
}

std::pair<std::string, std::string> SplitTsv(const std::string& line, std::size_t line_no) {
  const std::size_t tab = line.find('\t');
  if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
    throw DataError(fmt::format("line {}: expected exactly two tab-separated fields", line_no));
  }
  return {line.substr(0, tab), line.substr(tab + 1)};
}

std::string Dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

void WriteReport(const std::string& path, const nlohmann::json& j, Context& ctx) {
  if (path.empty()) {
    ctx.err << j.dump() << "\n";
  } else {
    WriteFileAtomic(path, Dump(j));
  }
}

// ---- shared option groups ---------------------------------------------------

struct FilterArgs {
  FilterConfig cfg;
  std::string ratio_unit = "tokens";

  void AddMono(CLI::App* app) {
    app->add_option("--max-chars", cfg.max_chars, "Reject lines longer than this (code points)")
        ->capture_default_str()->check(CLI::PositiveNumber);
    app->add_option("--max-tokens", cfg.max_tokens, "Reject lines with more whitespace tokens")
        ->capture_default_str()->check(CLI::PositiveNumber);
  }
  void AddBitext(CLI::App* app) {
    app->add_option("--bitext-max-tokens", cfg.bitext_max_tokens,
                    "Reject pairs with a side longer than this (tokens)")
        ->capture_default_str()->check(CLI::PositiveNumber);
    app->add_option("--max-len-ratio", cfg.max_len_ratio,
                    "Reject pairs whose longer/shorter length ratio exceeds this")
        ->capture_default_str()->check(CLI::Range(1.0, 1e9));
    app->add_option("--ratio-unit", ratio_unit, "Length unit of the ratio test")
        ->capture_default_str()->check(CLI::IsMember({"tokens", "chars"}));
  }
  FilterConfig Resolve() {
    cfg.ratio_unit = kLengthUnits.at(ratio_unit);
    cfg.Validate();
    return cfg;
  }
};

struct BackendArgs {
  std::string cache_dir;
  bool no_cache = false;

  void Add(CLI::App* app) {
    app->add_option("--cache-dir", cache_dir,
                    "Output cache for command/http backends (default: $RTT_APE_CACHE or "
                    "~/.cache/rttape)");
    app->add_flag("--no-cache", no_cache, "Do not read or write the backend output cache");
  }
  TranslateOptions Options(const Globals& g) const {
    TranslateOptions t;
    t.jobs = g.jobs;
    if (!no_cache) t.cache_dir = cache_dir.empty() ? DefaultCacheDir() : fs::path(cache_dir);
    return t;
  }
};

// Accepts inline JSON, a JSON spec file, or a bare kind name ("identity").
BackendSpec LoadBackend(Context& ctx, const std::string& arg, const std::string& from,
                        const std::string& to) {
  nlohmann::json j;
  if (!arg.empty() && arg.front() == '{') {
    j = nlohmann::json::parse(arg, nullptr, false);
    if (j.is_discarded()) throw UsageError("backend spec is not valid JSON");
  } else if (fs::is_regular_file(arg)) {
    ctx.Input(arg);
    j = nlohmann::json::parse(ReadFile(arg), nullptr, false);
    if (j.is_discarded()) throw DataError(arg + " is not valid JSON");
  } else {
    j = {{"kind", arg}};
    if (arg != "identity") {
      throw UsageError(fmt::format(
          "backend '{}' needs a JSON spec (file or inline) with its configuration", arg));
    }
  }
  if (!j.contains("from") && !from.empty()) j["from"] = from;
  if (!j.contains("to") && !to.empty()) j["to"] = to;
  BackendSpec spec = BackendSpecFromJson(j);
  ctx.manifest_extra["backends"].push_back(
      {{"spec", ToJson(spec)}, {"fingerprint", spec.Fingerprint()}});
  return spec;
}

// Where a subcommand gets origin labels from.
struct OriginArgs {
  std::string split;
  std::string sgm;
  std::string origins;
  std::string src = "en";
  std::string tgt;

  void Add(CLI::App* app) {
    auto* s = app->add_option("--split", split, "Split JSON written by `rttape split`")
                  ->check(CLI::ExistingFile);
    auto* g = app->add_option("--sgm", sgm, "Source-side SGM with origlang attributes")
                  ->check(CLI::ExistingFile);
    auto* o = app->add_option("--origins", origins, "Origin-labels sidecar, one code per line")
                  ->check(CLI::ExistingFile);
    s->excludes(g)->excludes(o);
    g->excludes(o);
    app->add_option("--src", src, "Source language code")->capture_default_str();
    app->add_option("--tgt", tgt, "Target language code");
  }
  bool Given() const { return !split.empty() || !sgm.empty() || !origins.empty(); }

  SplitHalves Resolve(Context& ctx, std::size_t n) const {
    SplitHalves halves;
    if (!split.empty()) {
      ctx.Input(split);
      halves = SplitHalvesFromJson(nlohmann::json::parse(ReadFile(split)));
    } else {
      if (tgt.empty()) throw UsageError("--tgt is required with --sgm / --origins");
      std::vector<Segment> segs;
      if (!sgm.empty()) {
        ctx.Input(sgm);
        segs = ParseSgm(ReadFile(sgm), SgmSide::kSource);
      } else {
        for (auto& label : ReadText(ctx, origins)) {
          Segment s;
          s.orig_lang = NormalizeOrigin(label);
          segs.push_back(std::move(s));
        }
      }
      halves = SplitByOrigin(segs, src, tgt);
    }
    if (halves.total() != n) {
      throw DataError(fmt::format("origin information covers {} lines but the input has {}",
                                  halves.total(), n));
    }
    return halves;
  }
};

// ---- subcommands ------------------------------------------------------------

void AddParseSgm(CLI::App& app, std::vector<Command>& cmds) {
  struct Args {
    std::string in, side = "src", format = "text", origins_out, out;
  };
  auto a = std::make_shared<Args>();
  CLI::App* sub = app.add_subcommand("parse-sgm", "Extract segments from a WMT SGM file");
  sub->add_option("--in", a->in, "SGM file")->required()->check(CLI::ExistingFile);
  sub->add_option("--side", a->side, "Which side the file holds")
      ->capture_default_str()->check(CLI::IsMember({"src", "ref", "hyp"}));
  sub->add_option("--format", a->format, "text: one sentence per line; jsonl; sgm (canonical)")
      ->capture_default_str()->check(CLI::IsMember({"text", "jsonl", "sgm"}));
  sub->add_option("--origins-out", a->origins_out, "Also write the origin-labels sidecar");
  sub->add_option("--out,-o", a->out, "Output file (default stdout)");
  cmds.push_back({sub, &a->out, [a](Context& ctx) {
                    ctx.Input(a->in);
                    const SgmSide side = kSides.at(a->side);
                    SgmDocument doc = ParseSgmDocument(ReadFile(a->in), side);
                    Output out(a->out, ctx.out);
                    if (a->format == "sgm") {
                      out.Text(SerializeSgm(doc.segments, side, doc.set_id, doc.src_lang,
                                            doc.tgt_lang));
                    } else {
                      for (const auto& s : doc.segments) {
                        if (a->format == "text") {
                          out.Line(s.text);
                        } else {
                          out.Line(nlohmann::json{{"doc_id", s.doc_id},
                                                  {"seg_id", s.seg_id},
                                                  {"orig_lang", s.orig_lang},
                                                  {"text", s.text}}
                                       .dump());
                        }
                      }
                    }
                    out.Close();
                    if (!a->origins_out.empty()) {
                      std::vector<std::string> labels;
                      for (const auto& s : doc.segments) labels.push_back(s.orig_lang);
                      WriteLines(a->origins_out, labels);
                    }
                  }});
}

void AddSplit(CLI::App& app, std::vector<Command>& cmds) {
  struct Args {
    std::string sgm, origins, src = "en", tgt, out;
  };
  auto a = std::make_shared<Args>();
  CLI::App* sub = app.add_subcommand("split", "Split a test set by original language");
  auto* g = sub->add_option("--sgm", a->sgm, "Source-side SGM")->check(CLI::ExistingFile);
  auto* o = sub->add_option("--origins", a->origins, "Origin-labels sidecar")
                ->check(CLI::ExistingFile);
  g->excludes(o);
  sub->add_option("--src", a->src, "Source language")->capture_default_str();
  sub->add_option("--tgt", a->tgt, "Target language")->required();
  sub->add_option("--out,-o", a->out, "Output JSON (default stdout)");
  cmds.push_back({sub, &a->out, [a](Context& ctx) {
                    if (a->sgm.empty() == a->origins.empty()) {
                      throw UsageError("exactly one of --sgm / --origins is required");
                    }
                    OriginArgs origin;
                    origin.sgm = a->sgm;
                    origin.origins = a->origins;
                    origin.src = a->src;
                    origin.tgt = a->tgt;
                    std::size_t n = 0;
                    if (!a->sgm.empty()) {
                      n = ParseSgm(ReadFile(a->sgm), SgmSide::kSource).size();
                    } else {
                      n = ReadLines(a->origins).size();
                    }
                    const SplitHalves halves = origin.Resolve(ctx, n);
                    if (!halves.unknown.empty()) {
                      ctx.err << fmt::format("split: {} segment(s) of other/unknown origin excluded "
                                             "from both halves\n",
                                             halves.unknown.size());
                    }
                    nlohmann::json j = ToJson(halves);
                    j["src_lang"] = a->src;
                    j["tgt_lang"] = a->tgt;
                    Output out(a->out, ctx.out);
                    out.Text(Dump(j));
                    out.Close();
                  }});
}

void AddMerge(CLI::App& app, std::vector<Command>& cmds) {
  struct Args {
    std::string base, edited, mode = "target-original-only", out;
    OriginArgs origin;
  };
  auto a = std::make_shared<Args>();
  CLI::App* sub =
      app.add_subcommand("merge", "Combine base and post-edited output by original language");
  sub->add_option("--base", a->base, "Unedited hypothesis")->required()->check(CLI::ExistingFile);
  sub->add_option("--edited", a->edited, "Post-edited hypothesis")
      ->required()->check(CLI::ExistingFile);
  sub->add_option("--mode", a->mode, "all | target-original-only")
      ->capture_default_str()->check(CLI::IsMember({"all", "target-original-only"}));
  a->origin.Add(sub);
  sub->add_option("--out,-o", a->out, "Output file (default stdout)");
  cmds.push_back({sub, &a->out, [a](Context& ctx) {
                    const auto base = ReadText(ctx, a->base);
                    const auto edited = ReadText(ctx, a->edited);
                    const MergeMode mode = kMergeModes.at(a->mode);
                    SplitHalves halves;
                    if (mode == MergeMode::kTargetOriginalOnly) {
                      if (!a->origin.Given()) {
                        throw UsageError("--mode target-original-only needs --split, --sgm or --origins");
                      }
                      halves = a->origin.Resolve(ctx, base.size());
                    }
                    Output out(a->out, ctx.out);
                    for (const auto& l : MergeSelective(base, edited, halves, mode)) out.Line(l);
                    out.Close();
                  }});
}

void AddBleu(CLI::App& app, std::vector<Command>& cmds) {
  struct Args {
    std::string hyp, ref, lang = "en-de", set = "test", out;
  };
  auto a = std::make_shared<Args>();
  CLI::App* sub = app.add_subcommand("bleu", "Corpus BLEU (intl tokenization, exp smoothing)");
  sub->add_option("--hyp", a->hyp, "Hypothesis (text or SGM)")
      ->required()->check(CLI::ExistingFile);
  sub->add_option("--ref", a->ref, "Reference (text or SGM)")
      ->required()->check(CLI::ExistingFile);
  sub->add_option("--lang,-l", a->lang, "Language pair, e.g. en-de")
      ->capture_default_str()->check([](const std::string& s) {
        return s.find('-') == std::string::npos ? std::string("expected SRC-TGT") : std::string();
      });
  sub->add_option("--set,-t", a->set, "Test set name recorded in the signature")
      ->capture_default_str();
  sub->add_option("--out,-o", a->out, "Output JSON (default stdout)");
  cmds.push_back({sub, &a->out, [a](Context& ctx) {
                    const auto hyp = ReadSentences(ctx, a->hyp, SgmSide::kHypothesis);
                    const auto ref = ReadSentences(ctx, a->ref, SgmSide::kReference);
                    const std::size_t dash = a->lang.find('-');
                    BleuConfig cfg{a->lang.substr(0, dash), a->lang.substr(dash + 1), a->set};
                    const BleuScore score = CorpusBleu(hyp, ref, cfg, ctx.globals.jobs);
                    Output out(a->out, ctx.out);
                    out.Text(Dump(ToJson(score)));
                    out.Close();
                  }});
}

void AddFilterMono(CLI::App& app, std::vector<Command>& cmds) {
  struct Args {
    std::string in, out, report;
    FilterArgs filter;
  };
  auto a = std::make_shared<Args>();
  CLI::App* sub = app.add_subcommand("filter-mono", "Length-filter a monolingual corpus");
  sub->add_option("--in,-i", a->in, "Input (plain or .gz)")->required()->check(CLI::ExistingFile);
  sub->add_option("--out,-o", a->out, "Output (default stdout; .gz compresses)");
  sub->add_option("--report", a->report, "Counters JSON (default stderr)");
  a->filter.AddMono(sub);
  cmds.push_back({sub, &a->out, [a](Context& ctx) {
                    const FilterConfig cfg = a->filter.Resolve();
                    ctx.Input(a->in);
                    LineReader reader(a->in);
                    Output out(a->out, ctx.out);
                    FilterReport report;
                    std::vector<std::string> block;
                    auto flush = [&] {
                      const auto verdicts = ClassifyMonoBatch(block, cfg, ctx.globals.jobs);
                      for (std::size_t i = 0; i < block.size(); ++i) {
                        report.Count(verdicts[i]);
                        if (verdicts[i] == MonoVerdict::kKeep) out.Line(block[i]);
                      }
                      block.clear();
                    };
                    std::string line;
                    while (reader.Next(line)) {
                      block.push_back(line);
                      if (block.size() == (1u << 16)) flush();
                    }
                    flush();
                    out.Close();
                    nlohmann::json j = report.ToJson();
                    j["config"] = ToJson(cfg);
                    ctx.manifest_extra["report"] = j;
                    WriteReport(a->report, j, ctx);
                  }});
}

void AddFilterBitext(CLI::App& app, std::vector<Command>& cmds) {
  struct Args {
    std::string src, tgt, tsv, out, out_src, out_tgt, report;
    FilterArgs filter;
  };
  auto a = std::make_shared<Args>();
  CLI::App* sub = app.add_subcommand("filter-bitext", "Filter sentence pairs by length and ratio");
  auto* s = sub->add_option("--src", a->src, "Source side")->check(CLI::ExistingFile);
  auto* t = sub->add_option("--tgt", a->tgt, "Target side")->check(CLI::ExistingFile);
  auto* v = sub->add_option("--tsv", a->tsv, "Tab-separated pairs")->check(CLI::ExistingFile);
  s->needs(t);
  t->needs(s);
  v->excludes(s)->excludes(t);
  sub->add_option("--out,-o", a->out, "TSV output (default stdout)");
  sub->add_option("--out-src", a->out_src, "Source-side output");
  sub->add_option("--out-tgt", a->out_tgt, "Target-side output");
  sub->add_option("--report", a->report, "Counters JSON (default stderr)");
  a->filter.AddBitext(sub);
  cmds.push_back({sub, &a->out, [a](Context& ctx) {
                    if (a->tsv.empty() && a->src.empty()) {
                      throw UsageError("give --src/--tgt or --tsv");
                    }
                    if (a->out_src.empty() != a->out_tgt.empty()) {
                      throw UsageError("--out-src and --out-tgt go together");
                    }
                    const FilterConfig cfg = a->filter.Resolve();
                    std::vector<SentencePair> pairs;
                    if (!a->tsv.empty()) {
                      std::size_t n = 0;
                      for (const auto& l : ReadText(ctx, a->tsv)) {
                        auto [x, y] = SplitTsv(l, ++n);
                        pairs.push_back({std::move(x), std::move(y)});
                      }
                    } else {
                      auto xs = ReadText(ctx, a->src);
                      auto ys = ReadText(ctx, a->tgt);
                      if (xs.size() != ys.size()) {
                        throw DataError(fmt::format("--src has {} lines but --tgt has {}",
                                                    xs.size(), ys.size()));
                      }
                      for (std::size_t i = 0; i < xs.size(); ++i) {
                        pairs.push_back({std::move(xs[i]), std::move(ys[i])});
                      }
                    }
                    FilterReport report;
                    std::vector<const SentencePair*> kept;
                    for (const auto& p : pairs) {
                      const BitextVerdict v = ClassifyBitext(p, cfg);
                      report.Count(v);
                      if (v == BitextVerdict::kKeep) kept.push_back(&p);
                    }
                    if (!a->out_src.empty()) {
                      LineWriter ws(a->out_src), wt(a->out_tgt);
                      for (const auto* p : kept) {
                        ws.Write(p->source);
                        wt.Write(p->target);
                      }
                      ws.Close();
                      wt.Close();
                    } else {
                      Output out(a->out, ctx.out);
                      for (const auto* p : kept) {
                        out.Line(TsvField(p->source, "source") + "\t" + TsvField(p->target, "target"));
                      }
                      out.Close();
                    }
                    nlohmann::json j = report.ToJson();
                    j["config"] = ToJson(cfg);
                    ctx.manifest_extra["report"] = j;
                    WriteReport(a->report, j, ctx);
                  }});
}

void AddDedup(CLI::App& app, std::vector<Command>& cmds) {
  struct Args {
    std::string in, out, report, tmp_dir;
    bool exact = false;
    std::size_t run_lines = 1 << 20;
  };
  auto a = std::make_shared<Args>();
  CLI::App* sub = app.add_subcommand("dedup", "Drop repeated lines, keeping first occurrences");
  sub->add_option("--in,-i", a->in, "Input (plain or .gz)")->required()->check(CLI::ExistingFile);
  sub->add_option("--out,-o", a->out, "Output (default stdout)");
  sub->add_option("--report", a->report, "Counters JSON (default stderr)");
  sub->add_flag("--exact", a->exact, "Two-pass external sort instead of fingerprints");
  sub->add_option("--tmp-dir", a->tmp_dir, "Spill directory for --exact");
  sub->add_option("--run-lines", a->run_lines, "Lines per sorted run for --exact")
      ->capture_default_str()->check(CLI::PositiveNumber);
  cmds.push_back({sub, &a->out, [a](Context& ctx) {
                    ctx.Input(a->in);
                    DedupReport report;
                    if (a->exact) {
                      if (a->out.empty() || a->out == "-") {
                        throw UsageError("--exact needs --out (the input is read twice)");
                      }
                      const fs::path tmp = a->tmp_dir.empty()
                                               ? fs::path(a->out).concat(".dedup-tmp")
                                               : fs::path(a->tmp_dir);
                      report = DedupExternal(a->in, a->out, tmp, a->run_lines);
                      std::error_code ec;
                      if (a->tmp_dir.empty()) fs::remove_all(tmp, ec);
                    } else {
                      LineReader reader(a->in);
                      Output out(a->out, ctx.out);
                      Deduper d;
                      std::string line;
                      while (reader.Next(line)) {
                        if (d.Insert(line)) out.Line(line);
                      }
                      out.Close();
                      report = d.report();
                    }
                    nlohmann::json j = report.ToJson();
                    j["mode"] = a->exact ? "exact_external_sort" : "fingerprint128";
                    ctx.manifest_extra["report"] = j;
                    WriteReport(a->report, j, ctx);
                  }});
}

void AddSample(CLI::App& app, std::vector<Command>& cmds) {
  struct Args {
    std::string in, out;
    std::size_t n = 0;
  };
  auto a = std::make_shared<Args>();
  CLI::App* sub = app.add_subcommand("sample", "Uniform random subset of exactly N lines");
  sub->add_option("--in,-i", a->in, "Input (plain or .gz)")->required()->check(CLI::ExistingFile);
  sub->add_option("--n,-n", a->n, "Number of lines")->required()->check(CLI::NonNegativeNumber);
  sub->add_option("--out,-o", a->out, "Output (default stdout)");
  cmds.push_back({sub, &a->out, [a](Context& ctx) {
                    ctx.Input(a->in);
                    LineReader reader(a->in);
                    ReservoirSampler sampler(a->n, ctx.globals.seed);
                    std::string line;
                    while (reader.Next(line)) sampler.Offer(std::move(line));
                    const auto sample = std::move(sampler).Take();
                    Output out(a->out, ctx.out);
                    for (const auto& l : sample) out.Line(l);
                    out.Close();
                  }});
}

void WritePairs(const std::vector<SentencePair>& pairs, const std::string& out_path,
                const std::string& out_src, const std::string& out_tgt, Context& ctx) {
  if (!out_src.empty()) {
    LineWriter ws(out_src), wt(out_tgt);
    for (const auto& p : pairs) {
      ws.Write(p.source);
      wt.Write(p.target);
    }
    ws.Close();
    wt.Close();
    return;
  }
  Output out(out_path, ctx.out);
  for (const auto& p : pairs) {
    out.Line(TsvField(p.source, "source") + "\t" + TsvField(p.target, "target"));
  }
  out.Close();
}

void AddRttGen(CLI::App& app, std::vector<Command>& cmds) {
  struct Args {
    std::string in, y2x, x2y, lang = "de", pivot = "en", out, out_orig, out_rtt, pivot_out,
        report, emit_pairs = "none";
    bool no_rtt_filter = false;
    FilterArgs filter;
    BackendArgs backend;
  };
  auto a = std::make_shared<Args>();
  CLI::App* sub = app.add_subcommand(
      "rtt-gen", "Round-trip translate a monolingual corpus (Y -> X -> Y)");
  sub->add_option("--in,-i", a->in, "Deduplicated monolingual corpus in language Y")
      ->required()->check(CLI::ExistingFile);
  sub->add_option("--y2x", a->y2x, "Backend spec for Y -> X")->required();
  sub->add_option("--x2y", a->x2y, "Backend spec for X -> Y")->required();
  sub->add_option("--lang", a->lang, "Language Y")->capture_default_str();
  sub->add_option("--pivot", a->pivot, "Pivot language X")->capture_default_str();
  sub->add_option("--out,-o", a->out, "TSV output: original<TAB>round_trip (default stdout)");
  sub->add_option("--out-orig", a->out_orig, "Two-file output: originals");
  sub->add_option("--out-rtt", a->out_rtt, "Two-file output: round trips");
  sub->add_option("--pivot-out", a->pivot_out, "Also keep the pivot-language text");
  sub->add_option("--emit-pairs", a->emit_pairs,
                  "Emit training pairs directly: none | normal | reverse")
      ->capture_default_str()->check(CLI::IsMember({"none", "normal", "reverse"}));
  sub->add_flag("--no-rtt-filter", a->no_rtt_filter,
                "Apply the length filter to originals only");
  sub->add_option("--report", a->report, "Counters JSON (default stderr)");
  a->filter.AddMono(sub);
  a->filter.AddBitext(sub);
  a->backend.Add(sub);
  cmds.push_back({sub, &a->out, [a](Context& ctx) {
                    if (a->out_orig.empty() != a->out_rtt.empty()) {
                      throw UsageError("--out-orig and --out-rtt go together");
                    }
                    RttOptions opts;
                    opts.filter = a->filter.Resolve();
                    opts.filter_round_trip = !a->no_rtt_filter;
                    opts.translate = a->backend.Options(ctx.globals);
                    const BackendSpec y2x = LoadBackend(ctx, a->y2x, a->lang, a->pivot);
                    const BackendSpec x2y = LoadBackend(ctx, a->x2y, a->pivot, a->lang);
                    ctx.Input(a->in);
                    LineReader reader(a->in);

                    std::optional<Output> tsv;
                    std::optional<LineWriter> w_orig, w_rtt, w_pivot;
                    if (!a->out_orig.empty()) {
                      w_orig.emplace(a->out_orig);
                      w_rtt.emplace(a->out_rtt);
                    } else {
                      tsv.emplace(a->out, ctx.out);
                    }
                    if (!a->pivot_out.empty()) w_pivot.emplace(a->pivot_out);
                    const bool pairs = a->emit_pairs != "none";
                    const PairDirection dir =
                        pairs ? kDirections.at(a->emit_pairs) : PairDirection::kNormal;
                    FilterReport bitext;

                    const RttReport report = GenerateRtt(
                        [&](std::string& line) { return reader.Next(line); }, y2x, x2y, opts,
                        [&](const RttPair& p, std::string_view pivot) {
                          if (w_pivot) w_pivot->Write(pivot);
                          std::string first = p.original;
                          std::string second = p.round_trip;
                          if (pairs) {
                            SentencePair sp = ToTrainingPair(p, dir);
                            const BitextVerdict v = ClassifyBitext(sp, opts.filter);
                            bitext.Count(v);
                            if (v != BitextVerdict::kKeep) return;
                            first = std::move(sp.source);
                            second = std::move(sp.target);
                          }
                          if (w_orig) {
                            w_orig->Write(first);
                            w_rtt->Write(second);
                          } else {
                            tsv->Line(TsvField(first, "line") + "\t" + TsvField(second, "line"));
                          }
                        });
                    if (tsv) tsv->Close();
                    if (w_orig) {
                      w_orig->Close();
                      w_rtt->Close();
                    }
                    if (w_pivot) w_pivot->Close();
                    nlohmann::json j = report.ToJson();
                    if (pairs) j["bitext_filter"] = bitext.ToJson();
                    j["config"] = ToJson(opts.filter);
                    j["filter_round_trip"] = opts.filter_round_trip;
                    ctx.manifest_extra["report"] = j;
                    WriteReport(a->report, j, ctx);
                  }});
}

void AddMakePairs(CLI::App& app, std::vector<Command>& cmds) {
  struct Args {
    std::string in, orig, rtt, direction = "normal", out, out_src, out_tgt, report;
    FilterArgs filter;
  };
  auto a = std::make_shared<Args>();
  CLI::App* sub = app.add_subcommand("make-pairs", "Turn RTT pairs into APE training pairs");
  auto* i = sub->add_option("--in,-i", a->in, "TSV from rtt-gen")->check(CLI::ExistingFile);
  auto* o = sub->add_option("--orig", a->orig, "Two-file input: originals")
                ->check(CLI::ExistingFile);
  auto* r = sub->add_option("--rtt", a->rtt, "Two-file input: round trips")
                ->check(CLI::ExistingFile);
  o->needs(r);
  r->needs(o);
  i->excludes(o)->excludes(r);
  sub->add_option("--direction", a->direction,
                  "normal: RTT(y) -> y; reverse: y -> RTT(y)")
      ->capture_default_str()->check(CLI::IsMember({"normal", "reverse"}));
  sub->add_option("--out,-o", a->out, "TSV output source<TAB>target (default stdout)");
  sub->add_option("--out-src", a->out_src, "Two-file output: source side");
  sub->add_option("--out-tgt", a->out_tgt, "Two-file output: target side");
  sub->add_option("--report", a->report, "Counters JSON (default stderr)");
  a->filter.AddBitext(sub);
  cmds.push_back({sub, &a->out, [a](Context& ctx) {
                    if (a->in.empty() && a->orig.empty()) {
                      throw UsageError("give --in or --orig/--rtt");
                    }
                    if (a->out_src.empty() != a->out_tgt.empty()) {
                      throw UsageError("--out-src and --out-tgt go together");
                    }
                    std::vector<RttPair> pairs;
                    if (!a->in.empty()) {
                      std::size_t n = 0;
                      for (const auto& l : ReadText(ctx, a->in)) {
                        auto [y, r] = SplitTsv(l, ++n);
                        pairs.push_back({std::move(y), std::move(r)});
                      }
                    } else {
                      auto ys = ReadText(ctx, a->orig);
                      auto rs = ReadText(ctx, a->rtt);
                      if (ys.size() != rs.size()) {
                        throw DataError("--orig and --rtt differ in length");
                      }
                      for (std::size_t k = 0; k < ys.size(); ++k) {
                        pairs.push_back({std::move(ys[k]), std::move(rs[k])});
                      }
                    }
                    FilterReport report;
                    const auto out = MakeTrainingPairs(pairs, kDirections.at(a->direction),
                                                       a->filter.Resolve(), &report);
                    WritePairs(out, a->out, a->out_src, a->out_tgt, ctx);
                    ctx.manifest_extra["report"] = report.ToJson();
                    WriteReport(a->report, report.ToJson(), ctx);
                  }});
}

void AddApeApply(CLI::App& app, std::vector<Command>& cmds) {
  struct Args {
    std::string hyp, backend, scope = "all", out, report;
    int iterations = 1;
    OriginArgs origin;
    BackendArgs cache;
  };
  auto a = std::make_shared<Args>();
  CLI::App* sub = app.add_subcommand("ape-apply", "Post-edit MT output with an APE backend");
  sub->add_option("--hyp", a->hyp, "MT output, one sentence per line")
      ->required()->check(CLI::ExistingFile);
  sub->add_option("--backend", a->backend, "Backend spec (JSON file, inline JSON, or 'identity')")
      ->required();
  sub->add_option("--scope", a->scope, "all | target-original-only")
      ->capture_default_str()->check(CLI::IsMember({"all", "target-original-only"}));
  sub->add_option("--iterations", a->iterations, "Post-editing passes")
      ->capture_default_str()->check(CLI::Range(1, 100));
  sub->add_option("--out,-o", a->out, "Output (default stdout)");
  sub->add_option("--report", a->report, "Change report JSON (default stderr)");
  a->origin.Add(sub);
  a->cache.Add(sub);
  cmds.push_back({sub, &a->out, [a](Context& ctx) {
                    const auto hyp = ReadText(ctx, a->hyp);
                    ApeMode mode{kApeScopes.at(a->scope), a->iterations};
                    SplitHalves halves;
                    if (a->origin.Given()) {
                      halves = a->origin.Resolve(ctx, hyp.size());
                    } else if (mode.scope == ApeScope::kTargetOriginalOnly) {
                      throw UsageError("--scope target-original-only needs --split, --sgm or --origins");
                    }
                    const std::string lang = a->origin.tgt.empty() ? "xx" : a->origin.tgt;
                    const BackendSpec ape = LoadBackend(ctx, a->backend, lang, lang);
                    const ApeResult result =
                        ApplyApe(hyp, ape, halves, mode, a->cache.Options(ctx.globals));
                    Output out(a->out, ctx.out);
                    for (const auto& l : result.output) out.Line(l);
                    out.Close();
                    ctx.manifest_extra["report"] = result.report.ToJson();
                    WriteReport(a->report, result.report.ToJson(), ctx);
                  }});
}

void AddReportRtt(CLI::App& app, std::vector<Command>& cmds) {
  struct Args {
    std::string orig, rtt, lang = "en-de", set = "rtt", tokenizer = "whitespace",
        format = "json", out;
  };
  auto a = std::make_shared<Args>();
  CLI::App* sub = app.add_subcommand(
      "report-rtt", "BLEU of round trips against originals, plus vocabulary sizes");
  sub->add_option("--orig", a->orig, "Original sentences")->required()->check(CLI::ExistingFile);
  sub->add_option("--rtt", a->rtt, "Round-trip translations")->required()->check(CLI::ExistingFile);
  sub->add_option("--lang,-l", a->lang, "Language pair for the signature")->capture_default_str();
  sub->add_option("--set,-t", a->set, "Set name for the signature")->capture_default_str();
  sub->add_option("--vocab-tokenizer", a->tokenizer, "whitespace | intl")
      ->capture_default_str()->check(CLI::IsMember({"whitespace", "intl"}));
  sub->add_option("--format", a->format, "json | table")
      ->capture_default_str()->check(CLI::IsMember({"json", "table"}));
  sub->add_option("--out,-o", a->out, "Output (default stdout)");
  cmds.push_back({sub, &a->out, [a](Context& ctx) {
                    const auto orig = ReadText(ctx, a->orig);
                    const auto rtt = ReadText(ctx, a->rtt);
                    const std::size_t dash = a->lang.find('-');
                    BleuConfig cfg{a->lang.substr(0, dash),
                                   dash == std::string::npos ? "" : a->lang.substr(dash + 1),
                                   a->set};
                    const AnalysisReport r =
                        RttQualityReport(orig, rtt, cfg, kVocabTokenizers.at(a->tokenizer));
                    Output out(a->out, ctx.out);
                    out.Text(a->format == "json" ? Dump(r.ToJson()) : r.RenderTable());
                    out.Close();
                  }});
}

void AddReportSplit(CLI::App& app, std::vector<Command>& cmds) {
  struct Args {
    std::string src_sgm, ref_sgm, src_text, ref_text, origins, src = "en", tgt, set,
        format = "table", out;
    std::vector<std::string> hyps;
  };
  auto a = std::make_shared<Args>();
  CLI::App* sub = app.add_subcommand(
      "report-split", "BLEU per system on the full set and on each original-language half");
  sub->add_option("--src-sgm", a->src_sgm, "Source SGM")->check(CLI::ExistingFile);
  sub->add_option("--ref-sgm", a->ref_sgm, "Reference SGM")->check(CLI::ExistingFile);
  sub->add_option("--src-text", a->src_text, "Plain-text source")->check(CLI::ExistingFile);
  sub->add_option("--ref-text", a->ref_text, "Plain-text reference")->check(CLI::ExistingFile);
  sub->add_option("--origins", a->origins, "Origin labels for plain-text input")
      ->check(CLI::ExistingFile);
  sub->add_option("--src", a->src, "Source language")->capture_default_str();
  sub->add_option("--tgt", a->tgt, "Target language")->required();
  sub->add_option("--set,-t", a->set, "Test set name (default: setid from the SGM)");
  sub->add_option("--hyp", a->hyps, "System output as LABEL=PATH (repeatable)")->required();
  sub->add_option("--format", a->format, "json | table")
      ->capture_default_str()->check(CLI::IsMember({"json", "table"}));
  sub->add_option("--out,-o", a->out, "Output (default stdout)");
  cmds.push_back({sub, &a->out, [a](Context& ctx) {
                    TestSet ts;
                    if (!a->src_sgm.empty() && !a->ref_sgm.empty()) {
                      ctx.Input(a->src_sgm);
                      ctx.Input(a->ref_sgm);
                      SgmDocument src = ParseSgmDocument(ReadFile(a->src_sgm), SgmSide::kSource);
                      SgmDocument ref =
                          ParseSgmDocument(ReadFile(a->ref_sgm), SgmSide::kReference);
                      ts = AlignTestSet(a->set.empty() ? src.set_id : a->set, a->src, a->tgt,
                                        std::move(src.segments), std::move(ref.segments));
                    } else if (!a->src_text.empty() && !a->ref_text.empty() &&
                               !a->origins.empty()) {
                      ts = LoadPlainTestSet(a->set.empty() ? "test" : a->set, a->src, a->tgt,
                                            ReadText(ctx, a->src_text), ReadText(ctx, a->ref_text),
                                            ReadText(ctx, a->origins));
                    } else {
                      throw UsageError(
                          "give --src-sgm/--ref-sgm or --src-text/--ref-text/--origins");
                    }
                    std::vector<std::pair<std::string, std::vector<std::string>>> hyps;
                    for (const auto& spec : a->hyps) {
                      const std::size_t eq = spec.find('=');
                      if (eq == std::string::npos || eq == 0) {
                        throw UsageError("--hyp expects LABEL=PATH, got " + spec);
                      }
                      hyps.emplace_back(spec.substr(0, eq),
                                        ReadSentences(ctx, spec.substr(eq + 1),
                                                      SgmSide::kHypothesis));
                    }
                    BleuConfig cfg{a->src, a->tgt, ts.name};
                    const AnalysisReport r = SplitScoreTable(ts, hyps, cfg, ctx.globals.jobs);
                    Output out(a->out, ctx.out);
                    out.Text(a->format == "json" ? Dump(r.ToJson()) : r.RenderTable());
                    out.Close();
                  }});
}

void AddVocab(CLI::App& app, std::vector<Command>& cmds) {
  struct Args {
    std::vector<std::string> in;
    std::string tokenizer = "whitespace", out;
  };
  auto a = std::make_shared<Args>();
  CLI::App* sub = app.add_subcommand("vocab", "Count distinct tokens");
  sub->add_option("--in,-i", a->in, "Input files")->required()->check(CLI::ExistingFile);
  sub->add_option("--tokenizer", a->tokenizer, "whitespace | intl")
      ->capture_default_str()->check(CLI::IsMember({"whitespace", "intl"}));
  sub->add_option("--out,-o", a->out, "Output JSON (default stdout)");
  cmds.push_back({sub, &a->out, [a](Context& ctx) {
                    nlohmann::json j = {{"tokenizer", a->tokenizer}, {"case_sensitive", true}};
                    for (const auto& path : a->in) {
                      ctx.Input(path);
                      VocabCounter counter(kVocabTokenizers.at(a->tokenizer));
                      LineReader reader(path);
                      std::string line;
                      while (reader.Next(line)) counter.Add(line);
                      j["vocab_sizes"][path] = counter.size();
                    }
                    Output out(a->out, ctx.out);
                    out.Text(Dump(j));
                    out.Close();
                  }});
}

void AddHumanEvalMake(CLI::App& app, std::vector<Command>& cmds) {
  struct Args {
    std::string items, out;
    std::size_t raters = 3;
  };
  auto a = std::make_shared<Args>();
  CLI::App* sub = app.add_subcommand("humaneval-make", "Write a blinded rating task file");
  sub->add_option("--items", a->items, "TSV: source<TAB>output<TAB>system_label")
      ->required()->check(CLI::ExistingFile);
  sub->add_option("--raters", a->raters, "Ratings collected per item")
      ->capture_default_str()->check(CLI::PositiveNumber);
  sub->add_option("--out,-o", a->out, "Output TSV (default stdout)");
  cmds.push_back({sub, &a->out, [a](Context& ctx) {
                    std::vector<HumanEvalInput> items;
                    std::size_t n = 0;
                    for (const auto& l : ReadText(ctx, a->items)) {
                      ++n;
                      if (l.empty()) continue;
                      const std::size_t t1 = l.find('\t');
                      const std::size_t t2 =
                          t1 == std::string::npos ? t1 : l.find('\t', t1 + 1);
                      if (t2 == std::string::npos || l.find('\t', t2 + 1) != std::string::npos) {
                        throw DataError(fmt::format("items line {}: expected 3 tab-separated fields", n));
                      }
                      items.push_back({l.substr(0, t1), l.substr(t1 + 1, t2 - t1 - 1),
                                       l.substr(t2 + 1)});
                    }
                    Output out(a->out, ctx.out);
                    out.Text(MakeHumanEvalTasks(items, a->raters, ctx.globals.seed));
                    out.Close();
                  }});
}

void AddHumanEvalAgg(CLI::App& app, std::vector<Command>& cmds) {
  struct Args {
    std::string in, format = "json", out;
    bool allow_partial = false;
    std::size_t ratings = 3;
  };
  auto a = std::make_shared<Args>();
  CLI::App* sub = app.add_subcommand("humaneval-agg", "Average completed human ratings per system");
  sub->add_option("--in,-i", a->in, "Completed task TSV")->required()->check(CLI::ExistingFile);
  sub->add_flag("--allow-partial", a->allow_partial, "Aggregate items with missing ratings");
  sub->add_option("--ratings-per-item", a->ratings, "Expected ratings per item")
      ->capture_default_str()->check(CLI::PositiveNumber);
  sub->add_option("--format", a->format, "json | table")
      ->capture_default_str()->check(CLI::IsMember({"json", "table"}));
  sub->add_option("--out,-o", a->out, "Output (default stdout)");
  cmds.push_back({sub, &a->out, [a](Context& ctx) {
                    ctx.Input(a->in);
                    const auto items = ParseHumanEvalTasks(ReadFile(a->in));
                    const auto ratings = AggregateHumanEval(items, a->allow_partial, a->ratings);
                    Output out(a->out, ctx.out);
                    out.Text(a->format == "json" ? Dump(ToJson(ratings)) : RenderRatings(ratings));
                    out.Close();
                  }});
}

}  // namespace

void RegisterCommands(CLI::App& app, std::vector<Command>& commands) {
  AddParseSgm(app, commands);
  AddSplit(app, commands);
  AddMerge(app, commands);
  AddBleu(app, commands);
  AddFilterMono(app, commands);
  AddFilterBitext(app, commands);
  AddDedup(app, commands);
  AddSample(app, commands);
  AddRttGen(app, commands);
  AddMakePairs(app, commands);
  AddApeApply(app, commands);
  AddReportRtt(app, commands);
  AddReportSplit(app, commands);
  AddVocab(app, commands);
  AddHumanEvalMake(app, commands);
  AddHumanEvalAgg(app, commands);
}

}  // namespace rttape::cli
