// Copyright 2026 The finrel Authors.
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

#include "finrel/cli.h"

#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <atomic>
#include <exception>
#include <filesystem>
#include <map>
#include <memory>
#include <ostream>
#include <thread>
#include <utility>

#include "CLI11.hpp"
#include "finrel/corpus.h"
#include "finrel/deptree.h"
#include "finrel/error.h"
#include "finrel/io.h"
#include "finrel/records.h"
#include "finrel/relex.h"
#include "finrel/semvec.h"

namespace finrel::cli {
namespace {

const std::vector<std::string> kLogLevels{"trace", "debug", "info", "warn",
                                          "error", "critical", "off"};

// Points spdlog's default logger at err for the duration of one run.
class LogRedirect {
 public:
  LogRedirect(std::ostream& err, const std::string& level)
      : previous_(spdlog::default_logger()) {
    auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err, true);
    sink->set_pattern("finrel: %l: %v");
    auto logger = std::make_shared<spdlog::logger>("finrel", std::move(sink));
    logger->set_level(spdlog::level::from_str(level));
    spdlog::set_default_logger(std::move(logger));
  }
  ~LogRedirect() { spdlog::set_default_logger(previous_); }
  LogRedirect(const LogRedirect&) = delete;
  LogRedirect& operator=(const LogRedirect&) = delete;

 private:
  std::shared_ptr<spdlog::logger> previous_;
};

void require(const std::string& value, const char* flag) {
  if (value.empty()) throw ArgumentError(std::string("missing ") + flag);
}

std::vector<std::string> extract_all(const std::vector<AnnotatedDocument>& docs,
                                     const EmbeddingTable& table,
                                     const LexiconConfig& lexicon,
                                     unsigned workers) {
  std::vector<std::string> lines(docs.size());
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> failures(workers);
  auto work = [&](unsigned slot) {
    try {
      for (std::size_t i = next++; i < docs.size(); i = next++) {
        const TreeView view(docs[i]);
        lines[i] = prediction_to_json_line(
            {docs[i].id, serialize(extract(view, table, lexicon))});
      }
    } catch (...) {
      failures[slot] = std::current_exception();
      next = docs.size();
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work, w);
  work(0);
  for (auto& t : pool) t.join();
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  return lines;
}

void run_extract(const RunConfig& cfg) {
  const auto docs = load_documents(cfg.corpus_path);
  const auto table = load_embeddings(cfg.embeddings_path);
  const LexiconConfig lexicon =
      cfg.lexicon_path.empty() ? LexiconConfig{} : load_lexicon(cfg.lexicon_path);
  lexicon.validate();
  unsigned workers = cfg.workers;
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(
      std::min<std::size_t>(workers, std::max<std::size_t>(docs.size(), 1)));
  spdlog::info("extracting {} documents with {} worker(s)", docs.size(), workers);

  std::string contents;
  for (const auto& line : extract_all(docs, table, lexicon, workers)) {
    contents += line;
    contents += '\n';
  }
  write_file_atomic(cfg.output_path, contents);
}

void run_evaluate(const RunConfig& cfg) {
  const auto gold = load_gold(cfg.gold_path);
  std::map<std::string, std::string> predictions;
  for (auto& p : load_predictions(cfg.predictions_path)) {
    if (!predictions.emplace(p.id, std::move(p.predicted_text)).second) {
      throw ValidationError("duplicate prediction id '" + p.id + "'");
    }
  }
  const auto result = evaluate_corpus(gold, predictions, cfg.eval);
  spdlog::info("scored {} examples: f1 {:.4f}", gold.size(), result.report.f1);
  if (!cfg.per_example_path.empty()) {
    write_file_atomic(cfg.per_example_path,
                      per_example_to_json_lines(result.per_example));
  }
  write_file_atomic(cfg.output_path, report_to_json(result.report, cfg.eval));
}

std::string gold_file(const std::vector<GoldExample>& examples) {
  std::string out;
  for (const auto& e : examples) {
    out += gold_to_json_line(e);
    out += '\n';
  }
  return out;
}

void run_prepare(const RunConfig& cfg) {
  const auto gold = load_gold(cfg.gold_path);
  const auto split = split_train_test(gold, cfg.test_fraction, cfg.seed);
  const std::filesystem::path dir(cfg.out_dir);
  std::filesystem::create_directories(dir);
  write_file_atomic((dir / "train.jsonl").string(), gold_file(split.train));
  write_file_atomic((dir / "test.jsonl").string(), gold_file(split.test));
  spdlog::info("train {} / test {} (seed {})", split.train.size(),
               split.test.size(), cfg.seed);
  if (cfg.balanced) {
    const auto subset = balanced_subset(split.train, cfg.seed);
    write_file_atomic((dir / "train_balanced.jsonl").string(),
                      gold_file(subset.examples));
    spdlog::info("balanced train: {} informative, {} empty", subset.informative,
                 subset.empty);
  }
}

void run_inspect(const RunConfig& cfg, std::ostream& out) {
  const auto docs = load_documents(cfg.corpus_path);
  const auto it = std::find_if(docs.begin(), docs.end(), [&](const auto& d) {
    return d.id == cfg.document_id;
  });
  if (it == docs.end()) {
    throw ArgumentError("no document with id '" + cfg.document_id + "'");
  }
  const AnnotatedDocument& doc = *it;
  const TreeView view(doc);

  out << "document " << doc.id << "\n" << doc.text << "\n\ntokens\n";
  for (const auto& t : doc.tokens) {
    out << "  " << t.index << '\t' << t.text << '\t' << t.lemma << '\t'
        << to_string(t.pos) << '\t' << t.dep << '\t' << t.head << '\t'
        << t.sentence << '\n';
  }
  out << "\nedges\n";
  for (const auto& t : doc.tokens) {
    if (view.is_root(t.index)) {
      out << "  ROOT -> " << t.text << " [" << t.index << "]\n";
    } else {
      out << "  " << doc.tokens[t.head].text << " [" << t.head << "] -" << t.dep
          << "-> " << t.text << " [" << t.index << "]\n";
    }
  }
  out << "\nentities\n";
  for (const auto& e : doc.entities) {
    out << "  " << to_string(e.label) << " [" << e.start << ", " << e.end
        << ") root " << view.entity_root(e) << ": " << e.text << '\n';
  }
  out << "\nnoun chunks\n";
  for (const auto& c : doc.noun_chunks) {
    out << "  [" << c.start << ", " << c.end << ") root " << c.root << ": "
        << doc.span_text(c.start, c.end) << '\n';
  }

  if (!cfg.embeddings_path.empty()) {
    const auto table = load_embeddings(cfg.embeddings_path);
    const LexiconConfig lexicon = cfg.lexicon_path.empty()
                                      ? LexiconConfig{}
                                      : load_lexicon(cfg.lexicon_path);
    ExtractTrace trace;
    const auto records = extract(view, table, lexicon, &trace);
    out << "\nrelations\n";
    for (const auto& r : trace.relations) {
      out << "  " << r.rule << ": " << r.left.text << " <-> " << r.right.text;
      if (r.bridge_phrase) out << " via \"" << *r.bridge_phrase << '"';
      out << '\n';
    }
    out << "\ndecisions\n";
    for (const auto& d : trace.decisions) out << "  " << d << '\n';
    out << "\nrecords\n  " << serialize(records) << '\n';
  } else {
    out << "\nrelations\n";
    std::vector<PairwiseRelation> all = relate_money_company(view);
    for (auto& r : relate_company_date(view)) all.push_back(std::move(r));
    for (auto& r : relate_other_pairs(view)) all.push_back(std::move(r));
    for (const auto& r : all) {
      out << "  " << r.rule << ": " << r.left.text << " <-> " << r.right.text;
      if (r.bridge_phrase) out << " via \"" << *r.bridge_phrase << '"';
      out << '\n';
    }
  }
}

}  // namespace

void RunConfig::validate() const {
  switch (subcommand) {
    case Subcommand::kExtract:
      require(corpus_path, "--corpus");
      require(embeddings_path, "--embeddings");
      require(output_path, "--out");
      break;
    case Subcommand::kEvaluate:
      require(gold_path, "--gold");
      require(predictions_path, "--pred");
      require(output_path, "--report");
      eval.validate();
      break;
    case Subcommand::kPrepare:
      require(gold_path, "--gold");
      require(out_dir, "--out-dir");
      if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
        throw ArgumentError("--test-fraction must lie in (0, 1)");
      }
      break;
    case Subcommand::kInspect:
      require(corpus_path, "--corpus");
      require(document_id, "--id");
      break;
  }
  if (std::find(kLogLevels.begin(), kLogLevels.end(), log_level) ==
      kLogLevels.end()) {
    throw ArgumentError("unknown log level '" + log_level + "'");
  }
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    config.validate();
  } catch (const ArgumentError& e) {
    err << "finrel: error: " << e.what() << '\n';
    return 2;
  }
  const LogRedirect redirect(err, config.log_level);
  try {
    switch (config.subcommand) {
      case Subcommand::kExtract:
        run_extract(config);
        break;
      case Subcommand::kEvaluate:
        run_evaluate(config);
        break;
      case Subcommand::kPrepare:
        run_prepare(config);
        break;
      case Subcommand::kInspect:
        run_inspect(config, out);
        break;
    }
  } catch (const ArgumentError& e) {
    spdlog::error("{}", e.what());
    return 2;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return 1;
  }
  return 0;
}

int run_command_line(const std::vector<std::string>& args, std::ostream& out,
                     std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Financial relation extraction from dependency-parsed news."};
  app.name("finrel");
  app.set_config("--config", "", "INI/TOML file supplying flag defaults");
  app.option_defaults()->always_capture_default();
  app.add_option("--log-level", cfg.log_level, "Log verbosity")
      ->envname("FINREL_LOG_LEVEL");
  app.require_subcommand(1);

  auto* extract_cmd = app.add_subcommand("extract", "Write predictions for a corpus");
  extract_cmd->add_option("--corpus", cfg.corpus_path, "Annotated documents (JSON lines)")
      ->required();
  extract_cmd->add_option("--embeddings", cfg.embeddings_path, "Word vectors")->required();
  extract_cmd->add_option("--lexicon", cfg.lexicon_path, "Lexicon JSON");
  extract_cmd->add_option("--out", cfg.output_path, "Prediction file")->required();
  extract_cmd->add_option("--workers", cfg.workers, "Worker threads, 0 for all cores");

  std::string mode = "exact";
  auto* eval_cmd = app.add_subcommand("evaluate", "Score predictions against gold");
  eval_cmd->add_option("--gold", cfg.gold_path, "Gold file (JSON lines)")->required();
  eval_cmd->add_option("--pred", cfg.predictions_path, "Prediction file")->required();
  eval_cmd->add_option("--mode", mode, "Word matching")
      ->check(CLI::IsMember({"exact", "fuzzy"}));
  eval_cmd->add_option("--threshold", cfg.eval.fuzzy_threshold,
                       "Fuzzy similarity threshold");
  eval_cmd->add_option("--report", cfg.output_path, "Report file (JSON)")->required();
  eval_cmd->add_option("--per-example", cfg.per_example_path,
                       "Per-example counters (JSON lines)");

  auto* prepare_cmd = app.add_subcommand("prepare", "Split gold into train and test");
  prepare_cmd->add_option("--gold", cfg.gold_path, "Gold file (JSON lines)")->required();
  prepare_cmd->add_option("--test-fraction", cfg.test_fraction, "Test share");
  prepare_cmd->add_flag("--balanced", cfg.balanced, "Also write train_balanced.jsonl");
  prepare_cmd->add_option("--seed", cfg.seed, "Random seed");
  prepare_cmd->add_option("--out-dir", cfg.out_dir, "Output directory")->required();

  auto* inspect_cmd = app.add_subcommand("inspect", "Show one document and its relations");
  inspect_cmd->add_option("--corpus", cfg.corpus_path, "Annotated documents")->required();
  inspect_cmd->add_option("--id", cfg.document_id, "Document id")->required();
  inspect_cmd->add_option("--embeddings", cfg.embeddings_path,
                          "Word vectors; enables classifier traces");
  inspect_cmd->add_option("--lexicon", cfg.lexicon_path, "Lexicon JSON");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  if (*extract_cmd) cfg.subcommand = Subcommand::kExtract;
  if (*eval_cmd) cfg.subcommand = Subcommand::kEvaluate;
  if (*prepare_cmd) cfg.subcommand = Subcommand::kPrepare;
  if (*inspect_cmd) cfg.subcommand = Subcommand::kInspect;
  cfg.eval.mode = mode == "fuzzy" ? MatchMode::kFuzzy : MatchMode::kExact;
  return run(cfg, out, err);
}

}  // namespace finrel::cli
