// Copyright 2026 The DMC Authors
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

#include "dmc/cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dmc/annotation.hpp"
#include "dmc/annotation_json.hpp"
#include "dmc/caption_format.hpp"
#include "dmc/error.hpp"
#include "dmc/file_util.hpp"
#include "dmc/motion.hpp"
#include "dmc/pipeline.hpp"
#include "dmc/report.hpp"
#include "dmc/similarity.hpp"
#include "dmc/temporal.hpp"
#include "dmc/verbs.hpp"

namespace dmc::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

enum class LogLevel { kError, kWarn, kInfo, kDebug };

class Logger {
 public:
  explicit Logger(std::ostream& err) : err_(err) {}
  void set_level(LogLevel level) { level_ = level; }

  void Warn(const std::string& msg) const { Log(LogLevel::kWarn, "warning", msg); }
  void Info(const std::string& msg) const { Log(LogLevel::kInfo, "info", msg); }
  void Debug(const std::string& msg) const { Log(LogLevel::kDebug, "debug", msg); }

 private:
  void Log(LogLevel level, const char* tag, const std::string& msg) const {
    if (level <= level_) err_ << "dmc: " << tag << ": " << msg << "\n";
  }

  std::ostream& err_;
  LogLevel level_ = LogLevel::kWarn;
};

struct GlobalOptions {
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::size_t threads = 1;
  std::string log_level = "warn";
  bool json_errors = false;
};

std::string Dump(const json& j) { return j.dump(2) + "\n"; }

/// Writes to `path`, or to `out` when the path is empty or "-".
void Emit(const std::string& path, const std::string& contents, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << contents;
  } else {
    WriteFileAtomically(path, contents);
  }
}

std::string ReadInput(const std::string& path) {
  if (path.empty() || path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  return ReadTextFile(path);
}

/// "MM:SS:CC" or plain seconds.
Timestamp ParseDuration(const std::string& text) {
  if (text.find(':') != std::string::npos) return ParseTimestamp(text);
  std::size_t used = 0;
  double seconds = 0.0;
  try {
    seconds = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || !(seconds > 0.0)) {
    throw ParseError("duration", "expected MM:SS:CC or positive seconds, got '" + text + "'");
  }
  return Timestamp::FromSeconds(seconds);
}

json SimilarityJson(const std::string& motions_path, const std::string& texts_path,
                    const std::vector<std::string>& shuffled_paths, std::size_t batch,
                    std::uint64_t seed, bool car) {
  const auto motions = EmbeddingTable::Load(motions_path);
  const auto texts = EmbeddingTable::Load(texts_path);
  std::vector<EmbeddingTable> shuffled;
  for (const auto& p : shuffled_paths) shuffled.push_back(EmbeddingTable::Load(p));
  json j;
  j["tmr_similarity"] = TmrSimilarity(motions, texts);
  j["count"] = motions.size();
  j["dim"] = motions.dim();
  if (car) {
    j["car"] = CarRetrieval(motions, texts, shuffled, batch, seed).ToJson();
  } else {
    j["car"] = nullptr;
  }
  return j;
}

// ---------------------------------------------------------------------------

struct EvalArgs {
  std::string preds, refs, scores, config, out;
  std::string motion_emb, text_emb;
  std::vector<std::string> shuffled_emb;
  std::size_t car_batch = 32;
};

int RunEval(const EvalArgs& a, const GlobalOptions& g, const Logger& log, std::ostream& out) {
  EvalConfig config;
  if (!a.config.empty()) {
    json j;
    try {
      j = json::parse(ReadTextFile(a.config));
    } catch (const json::parse_error& e) {
      throw ParseError("config", e.what());
    }
    config = EvalConfig::FromJson(j);
  }
  config.threads = g.threads;
  if (a.motion_emb.empty() != a.text_emb.empty()) {
    throw ValidationError("--motion-embeddings and --text-embeddings must be given together");
  }
  const auto t0 = std::chrono::steady_clock::now();
  std::optional<fs::path> scores;
  if (!a.scores.empty()) scores = a.scores;
  MetricReport report = EvaluateFiles(a.preds, a.refs, config, scores);
  if (!a.motion_emb.empty()) {
    report.similarity =
        SimilarityJson(a.motion_emb, a.text_emb, a.shuffled_emb, a.car_batch, g.seed, true);
  }
  const auto ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  for (const auto& w : report.warnings) log.Warn(w);
  log.Info("evaluated " + std::to_string(report.sequences.size()) + " sequences in " +
           std::to_string(ms) + " ms");
  Emit(a.out, Dump(report.ToJson()), out);
  return 0;
}

struct ComposeArgs {
  std::string pool, motions, out, mode = "blend";
  std::size_t count = 0;
  bool plan_only = false;
  CompositionConfig config;
  std::vector<double> split;
};

int RunCompose(ComposeArgs a, const GlobalOptions& g, const Logger& log, std::ostream& out) {
  ComposeJob job;
  job.config = a.config;
  job.config.seed = g.seed;
  if (!a.split.empty()) {
    if (a.split.size() != 3) throw ValidationError("--split needs three ratios");
    std::copy(a.split.begin(), a.split.end(), job.config.split_ratios.begin());
  }
  job.config.Validate();
  job.mode = ParseSeamMode(a.mode);
  job.pool_path = a.pool;
  job.motion_dir = a.motions;
  job.out_dir = a.out;
  job.count = a.count;
  job.plan_only = a.plan_only;
  job.threads = g.threads;
  const ComposeSummary s = ComposeToDirectory(job);
  for (const auto& w : s.warnings) log.Warn(w);
  log.Info("pool: " + std::to_string(s.pool_size) + " entries, " + std::to_string(s.kept) +
           " kept");
  out << Dump({{"sequences", s.sequences}, {"out", a.out}});
  return 0;
}

int RunPartition(const std::string& captions_path, const std::string& lexicon_path,
                 const std::string& out_path, std::ostream& out) {
  const LexiconTagger tagger =
      lexicon_path.empty() ? LexiconTagger() : LexiconTagger::FromFile(lexicon_path);
  std::istringstream in(ReadInput(captions_path));
  std::string line, result;
  std::size_t line_no = 0, simple = 0, complex = 0;
  auto emit = [&](const json& id, const std::string& caption) {
    const VerbPartition p = PartitionByVerbs(caption, tagger);
    (p.label == Complexity::kSimple ? simple : complex) += 1;
    result += json{{"id", id},
                   {"caption", caption},
                   {"verb_count", p.verb_count},
                   {"label", ComplexityName(p.label)}}
                  .dump() +
              "\n";
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError("json", e.what(), line_no);
    }
    if (!j.is_object()) throw ParseError("captions", "expected a JSON object", line_no);
    if (j.contains("segments")) {
      DenseAnnotation a;
      try {
        a = AnnotationFromJson(j);
      } catch (const ParseError& e) {
        throw ParseError(e.field(), e.detail(), line_no);
      }
      for (std::size_t i = 0; i < a.segments.size(); ++i) {
        emit(SegmentId(a.sequence_id, i), a.segments[i].caption);
      }
    } else {
      if (!j.contains("caption") || !j["caption"].is_string()) {
        throw ParseError("caption", "missing or not a string", line_no);
      }
      emit(j.contains("id") ? j["id"] : json(line_no), j["caption"].get<std::string>());
    }
  }
  Emit(out_path, result, out);
  return 0;
}

int RunParse(const std::string& input, const std::string& duration, const std::string& mode_name,
             const std::string& id, const std::string& out_path, const Logger& log,
             std::ostream& out) {
  ParseMode mode;
  if (mode_name == "strict") {
    mode = ParseMode::kStrict;
  } else if (mode_name == "lenient") {
    mode = ParseMode::kLenient;
  } else {
    throw ValidationError("--mode must be strict or lenient");
  }
  const Timestamp total = ParseDuration(duration);
  const std::string text = ReadInput(input);
  const ParseOutcome r = ParseDenseText(text, total, mode, id);
  for (const auto& w : r.warnings) log.Warn("line " + std::to_string(w.line) + ": " + w.message);
  Emit(out_path, AnnotationToJsonLine(r.annotation) + "\n", out);
  return 0;
}

int RunAggregate(const std::string& labels_path, double fps, const std::string& id,
                 const std::string& out_path, std::ostream& out) {
  const std::string text = ReadInput(labels_path);
  std::vector<std::string> labels;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '[') {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ParseError("labels", e.what());
    }
    for (const auto& x : j) {
      if (!x.is_string()) throw ParseError("labels", "array entries must be strings");
      labels.push_back(x.get<std::string>());
    }
  } else {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      labels.push_back(line);
    }
  }
  const DenseAnnotation a = AggregateFrameLabels(labels, fps, id);
  Emit(out_path, AnnotationToJsonLine(a) + "\n", out);
  return 0;
}

int RunValidate(const std::vector<std::string>& files, bool allow_overlap, std::ostream& out) {
  json results = json::array();
  bool ok = true;
  for (const auto& f : files) {
    json r = {{"path", f}};
    try {
      if (fs::path(f).extension() == ".dmc") {
        r["kind"] = "motion";
        const MotionSequence m = LoadMotion(f);
        r["frames"] = m.num_frames();
        r["joints"] = m.num_joints();
        r["violations"] = json::array();
      } else {
        r["kind"] = "annotations";
        json violations = json::array();
        const auto annotations = ReadAnnotationFile(f);
        for (const auto& a : annotations) {
          for (const auto& v : ValidateAnnotation(a, !allow_overlap)) {
            violations.push_back({{"id", a.sequence_id},
                                  {"segment", v.segment_index},
                                  {"rule", ViolationRuleName(v.rule)},
                                  {"message", v.message}});
          }
        }
        r["sequences"] = annotations.size();
        r["violations"] = std::move(violations);
      }
      r["ok"] = r["violations"].empty();
    } catch (const Error& e) {
      r["ok"] = false;
      r["error"] = {{"code", ErrorCodeName(e.code())}, {"message", e.what()}};
    }
    ok = ok && r["ok"].get<bool>();
    results.push_back(std::move(r));
  }
  out << Dump({{"ok", ok}, {"files", std::move(results)}});
  return ok ? 0 : 2;
}

void ReportError(std::ostream& err, bool as_json, const char* code, const std::string& message,
                 int exit_code) {
  if (as_json) {
    err << json{{"error", {{"code", code}, {"message", message}, {"exit_code", exit_code}}}}.dump()
        << "\n";
  } else {
    err << "dmc: error: " << message << "\n";
  }
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dense motion captioning toolkit", "dmc"};
  app.set_version_flag("--version", DMC_VERSION);
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  Logger log(err);
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::Range(1, 1024));
  app.add_option("--log-level", g.log_level, "error, warn, info or debug")
      ->check(CLI::IsMember({"error", "warn", "info", "debug"}));
  app.add_flag("--json-errors", g.json_errors, "Print errors as JSON on stderr");

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "Score predictions against references");
  eval_cmd->add_option("--preds", eval.preds, "Predicted annotations (JSONL)")->required();
  eval_cmd->add_option("--refs", eval.refs, "Reference annotations (JSONL)")->required();
  eval_cmd->add_option("--scores-matrix", eval.scores, "External SODA score matrices");
  eval_cmd->add_option("--config", eval.config, "Evaluation config (JSON)");
  eval_cmd->add_option("--out", eval.out, "Report path; stdout when omitted");
  eval_cmd->add_option("--motion-embeddings", eval.motion_emb, "Motion embeddings (JSONL)");
  eval_cmd->add_option("--text-embeddings", eval.text_emb, "Text embeddings (JSONL)");
  eval_cmd->add_option("--shuffled-embeddings", eval.shuffled_emb,
                       "Shuffled-caption text embeddings (JSONL)");
  eval_cmd->add_option("--car-batch", eval.car_batch, "Retrieval batch size")
      ->check(CLI::PositiveNumber);

  ComposeArgs compose;
  auto* compose_cmd = app.add_subcommand("compose", "Compose dense sequences from atomics");
  compose_cmd->add_option("--pool", compose.pool, "Atomic pool (JSONL)")->required();
  compose_cmd->add_option("--motions", compose.motions, "Directory for relative motion paths");
  compose_cmd->add_option("--count", compose.count, "Number of sequences")->required();
  compose_cmd->add_option("--mode", compose.mode, "hard or blend")
      ->check(CLI::IsMember({"hard", "blend"}));
  compose_cmd->add_option("--out", compose.out, "Output directory")->required();
  compose_cmd->add_flag("--plan-only", compose.plan_only, "Skip motion loading and writing");
  compose_cmd->add_option("--k-min", compose.config.k_min);
  compose_cmd->add_option("--k-max", compose.config.k_max);
  compose_cmd->add_option("--alpha", compose.config.alpha);
  compose_cmd->add_option("--beta", compose.config.beta);
  compose_cmd->add_option("--transition-s", compose.config.transition_s);
  compose_cmd->add_option("--blend-frames", compose.config.blend_frames);
  compose_cmd->add_option("--min-alignment", compose.config.min_alignment);
  compose_cmd->add_option("--split", compose.split, "train,val,test ratios")->delimiter(',');

  std::string partition_in, partition_lexicon, partition_out;
  auto* partition_cmd = app.add_subcommand("partition", "Label captions simple or complex");
  partition_cmd->add_option("--captions", partition_in, "Captions (JSONL)")->required();
  partition_cmd->add_option("--lexicon", partition_lexicon, "Verb list, one per line");
  partition_cmd->add_option("--out", partition_out, "Output path; stdout when omitted");

  std::string parse_in = "-", parse_duration, parse_mode = "strict", parse_id, parse_out;
  auto* parse_cmd = app.add_subcommand("parse", "Parse timestamped caption text");
  parse_cmd->add_option("input", parse_in, "Text file; stdin when omitted or '-'");
  parse_cmd->add_option("--duration", parse_duration, "Sequence length, MM:SS:CC or seconds")
      ->required();
  parse_cmd->add_option("--mode", parse_mode, "strict or lenient")
      ->check(CLI::IsMember({"strict", "lenient"}));
  parse_cmd->add_option("--id", parse_id, "Sequence id");
  parse_cmd->add_option("--out", parse_out, "Output path; stdout when omitted");

  std::string sim_motions, sim_texts, sim_out;
  std::vector<std::string> sim_shuffled;
  std::size_t sim_batch = 32;
  bool sim_no_car = false;
  auto* sim_cmd = app.add_subcommand("similarity", "Embedding similarity and retrieval");
  sim_cmd->add_option("--motions", sim_motions, "Motion embeddings (JSONL)")->required();
  sim_cmd->add_option("--texts", sim_texts, "Text embeddings (JSONL)")->required();
  sim_cmd->add_option("--shuffled", sim_shuffled, "Shuffled-caption embeddings (JSONL)");
  sim_cmd->add_option("--batch", sim_batch, "Retrieval batch size")->check(CLI::PositiveNumber);
  sim_cmd->add_flag("--no-car", sim_no_car, "Skip retrieval");
  sim_cmd->add_option("--out", sim_out, "Output path; stdout when omitted");

  std::string agg_in, agg_id, agg_out;
  double agg_fps = 0.0;
  auto* agg_cmd = app.add_subcommand("aggregate-frames", "Turn per-frame labels into segments");
  agg_cmd->add_option("--labels", agg_in, "JSON array or one label per line")->required();
  agg_cmd->add_option("--fps", agg_fps, "Frame rate")->required();
  agg_cmd->add_option("--id", agg_id, "Sequence id");
  agg_cmd->add_option("--out", agg_out, "Output path; stdout when omitted");

  std::vector<std::string> validate_files;
  bool validate_allow_overlap = false;
  auto* validate_cmd = app.add_subcommand("validate", "Check annotation and motion files");
  validate_cmd->add_option("files", validate_files, "Files (.dmc motions, else JSONL)")
      ->required();
  validate_cmd->add_flag("--allow-overlap", validate_allow_overlap,
                         "Accept segments that overlap");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return 0;
    }
    ReportError(err, std::find(args.begin(), args.end(), "--json-errors") != args.end(),
                "usage_error", e.what(), 2);
    return 2;
  }

  log.set_level(g.log_level == "error"  ? LogLevel::kError
                : g.log_level == "info" ? LogLevel::kInfo
                : g.log_level == "debug" ? LogLevel::kDebug
                                         : LogLevel::kWarn);
  try {
    if (*eval_cmd) return RunEval(eval, g, log, out);
    if (*compose_cmd) return RunCompose(compose, g, log, out);
    if (*partition_cmd) return RunPartition(partition_in, partition_lexicon, partition_out, out);
    if (*parse_cmd) {
      return RunParse(parse_in, parse_duration, parse_mode, parse_id, parse_out, log, out);
    }
    if (*sim_cmd) {
      Emit(sim_out,
           Dump(SimilarityJson(sim_motions, sim_texts, sim_shuffled, sim_batch, g.seed,
                               !sim_no_car)),
           out);
      return 0;
    }
    if (*agg_cmd) return RunAggregate(agg_in, agg_fps, agg_id, agg_out, out);
    if (*validate_cmd) return RunValidate(validate_files, validate_allow_overlap, out);
  } catch (const Error& e) {
    ReportError(err, g.json_errors, ErrorCodeName(e.code()), e.what(), e.exit_code());
    return e.exit_code();
  } catch (const fs::filesystem_error& e) {
    ReportError(err, g.json_errors, ErrorCodeName(ErrorCode::kIo), e.what(), 2);
    return 2;
  } catch (const std::exception& e) {
    ReportError(err, g.json_errors, ErrorCodeName(ErrorCode::kInternal), e.what(), 3);
    return 3;
  }
  ReportError(err, g.json_errors, ErrorCodeName(ErrorCode::kInternal), "no subcommand ran", 3);
  return 3;
}

}  // namespace dmc::cli
