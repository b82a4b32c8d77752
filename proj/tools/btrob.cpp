// btrob: back-transcription robustness toolkit command line.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "btrob/audit.hpp"
#include "btrob/btpipe.hpp"
#include "btrob/config.hpp"
#include "btrob/corpus.hpp"
#include "btrob/editops.hpp"
#include "btrob/errmodel.hpp"
#include "btrob/error.hpp"
#include "btrob/report.hpp"
#include "btrob/robustness.hpp"
#include "btrob/text.hpp"

using namespace btrob;

namespace {

// Writes to the named file, or stdout for "" and "-".
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_.open(path, std::ios::binary);
    if (!file_) throw Error("io", "cannot write '" + path + "'");
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("io", "cannot read '" + path + "'");
  return in;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in = open_input(path);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

Corpus select_task(const Corpus& corpus, const std::optional<Task>& task) {
  if (!task) return corpus;
  return corpus.filter([&](const Sample& s) { return s.expected.task() == *task; });
}

const std::vector<std::string> kTaskNames{"domain", "intent", "slots"};

// import ------------------------------------------------------------------------

struct ImportArgs {
  std::string massive;
  std::string task = "intent";
  std::string partition = "test";
  std::string out;
};

void run_import(const ImportArgs& a) {
  MassiveImportOptions options;
  options.task = parse_task(a.task);
  if (!a.partition.empty() && a.partition != "all") options.partition = a.partition;
  const Corpus corpus = import_massive(a.massive, options);
  Output out(a.out);
  write_corpus(out.stream(), corpus);
  std::fprintf(stderr, "imported %zu samples\n", corpus.size());
}

// backtranscribe ----------------------------------------------------------------

struct BackTranscribeArgs {
  std::string corpus;
  std::string config;
  std::string out;
  std::string metadata;
  std::size_t parallel = 0;
};

void run_backtranscribe(const BackTranscribeArgs& a) {
  ToolConfig config = a.config.empty() ? tool_config_from({}) : load_tool_config(a.config);
  if (a.parallel > 0) config.run.max_parallel_requests = a.parallel;
  const Corpus corpus = load_corpus(a.corpus);
  const AdapterSet adapters = make_adapters(config);
  const BackTranscription bt = back_transcribe(corpus, *adapters.tts, *adapters.asr, *adapters.nlu, config.run);
  Output out(a.out);
  write_corpus(out.stream(), bt.corpus);
  if (!a.metadata.empty()) {
    Output meta(a.metadata);
    meta.stream() << bt.metadata.to_json().dump(2) << '\n';
  }
  std::fprintf(stderr, "back-transcribed %zu/%zu samples (%zu failures)\n", bt.metadata.completed,
               bt.metadata.samples, bt.metadata.failures.size());
  if (!bt.metadata.failures.empty()) {
    for (const auto& f : bt.metadata.failures)
      std::fprintf(stderr, "  %s [%s]: %s\n", f.id.c_str(), f.stage.c_str(), f.message.c_str());
  }
}

// evaluate ----------------------------------------------------------------------

struct EvaluateArgs {
  std::string corpus;
  std::string metric;
  std::string task;
  std::string format = "markdown";
  std::string label = "run";
  std::string out;
  bool components = false;
};

void run_evaluate(const EvaluateArgs& a) {
  std::optional<Task> task;
  if (!a.task.empty()) task = parse_task(a.task);
  const Corpus corpus = select_task(load_corpus(a.corpus), task);
  Output out(a.out);
  std::ostream& os = out.stream();

  if (!a.metric.empty()) {
    const MetricResult r = robustness_metric(corpus, parse_metric(a.metric));
    if (a.format == "json") {
      os << Json{{"metric", a.metric}, {"numerator", r.numerator}, {"denominator", r.denominator}, {"value", r.value()}}.dump()
         << '\n';
    } else {
      os << format_number(r.value()) << '\n';
    }
    return;
  }

  const MetricReport report = all_metrics(corpus);
  const CategoryCounts counts = category_counts(corpus);
  if (a.format == "csv") {
    write_metrics_csv(os, report);
    return;
  }
  if (a.format == "json") {
    Json j;
    for (const auto& r : report.results)
      j["metrics"][std::string(to_string(r.metric))] = {{"numerator", r.numerator}, {"denominator", r.denominator}, {"value", r.value()}};
    for (Metric m : report.undefined) j["metrics"][std::string(to_string(m))] = nullptr;
    j["counts"] = {{"C->I", counts.c_to_i}, {"I->I", counts.i_to_i}, {"I->C", counts.i_to_c}, {"Const", counts.constant}};
    os << j.dump(2) << '\n';
    return;
  }
  if (a.format != "markdown") throw Error("usage", "unknown --format '" + a.format + "'");

  write_metrics_markdown(os, a.label, report);
  os << '\n';
  write_counts_markdown(os, a.label, counts);
  if (!corpus.empty()) {
    os << '\n';
    write_standard_markdown(os, a.label, standard_metrics(corpus, task.value_or(corpus[0].expected.task())));
  }
  if (a.components) {
    os << '\n';
    write_component_delta_markdown(os, fscore_component_delta(corpus));
  }
}

// editops -----------------------------------------------------------------------

struct EditOpsArgs {
  std::string corpus;
  std::string out;
  std::string freq;
  std::size_t top = 20;
};

void run_editops(const EditOpsArgs& a) {
  const Corpus corpus = load_corpus(a.corpus);
  Output out(a.out);
  for (const auto& s : corpus) {
    if (!s.text_changed()) continue;
    Json ops = Json::array(), positions = Json::array();
    for (const auto& op : extract_editops(s.reference, *s.hypothesis)) {
      ops.push_back(format_editop(op));
      positions.push_back(*op.position);
    }
    Json row{{"id", s.id}, {"reference", s.reference}, {"hypothesis", *s.hypothesis}, {"ops", ops}, {"positions", positions}};
    if (s.has_outcomes()) row["category"] = std::string(to_string(categorize(s)));
    out.stream() << row.dump() << '\n';
  }
  if (!a.freq.empty()) {
    Output freq(a.freq);
    write_ranking_csv(freq.stream(), rank_frequency(corpus, a.top));
  }
}

// rank-errors -------------------------------------------------------------------

struct RankArgs {
  std::string corpus;
  std::string policy = "R123";
  std::size_t top = 20;
  std::string by = "coefficient";
  std::string model_out;
  std::string out;
  Hyperparameters hp;
  bool backoff = false;
};

void run_rank(const RankArgs& a) {
  const Corpus corpus = load_corpus(a.corpus);
  std::vector<RankedFeature> ranking;
  std::size_t available = 0;
  if (a.by == "frequency") {
    ranking = rank_frequency(corpus, a.top);
    available = rank_frequency(corpus, static_cast<std::size_t>(-1)).size();
  } else if (a.by == "coefficient") {
    const RobustnessPolicy policy = policy_of(parse_metric(a.policy));
    const ErrorModel model = train_logreg(featurize_corpus(corpus, policy, {a.backoff}), a.hp);
    if (!a.model_out.empty()) save_model(a.model_out, model);
    ranking = rank_errors(model, a.top);
    available = model.vocabulary.size();
  } else {
    throw Error("usage", "--by must be coefficient or frequency");
  }
  if (a.top > available) std::fprintf(stderr, "note: only %zu features available, --top %zu\n", available, a.top);
  Output out(a.out);
  write_ranking_csv(out.stream(), ranking);
}

// tts-audit ---------------------------------------------------------------------

struct SheetArgs {
  std::string corpus;
  double fraction = 0.1;
  std::uint64_t seed = 0;
  std::string out;
  std::string key;
};

void run_sheet(const SheetArgs& a) {
  const AnnotationSheet sheet = make_annotation_sheet(load_corpus(a.corpus), a.fraction, a.seed);
  Output out(a.out);
  write_sheet_csv(out.stream(), sheet);
  Output key(a.key);
  write_key_csv(key.stream(), sheet);
  std::fprintf(stderr, "sheet with %zu rows (seed %llu)\n", sheet.rows.size(), static_cast<unsigned long long>(a.seed));
}

struct ScoreArgs {
  std::string sheet;
  std::string key;
};

void run_score(const ScoreArgs& a) {
  std::ifstream sheet_in = open_input(a.sheet), key_in = open_input(a.key);
  const ResemblanceResult r = compute_resemblance(read_annotation_sheet(sheet_in, key_in));
  char pct[32];
  std::snprintf(pct, sizeof pct, "%.2f%%", 100.0 * r.resemblance());
  std::cout << Json{{"total", r.total}, {"utt", r.utt}, {"aug", r.aug}, {"both", r.both},
                    {"resemblance", r.resemblance()}, {"percent", pct}}
                   .dump()
            << '\n';
}

// wer ---------------------------------------------------------------------------

struct WerArgs {
  std::string refs;
  std::string hyps;
  std::string corpus;
};

void run_wer(const WerArgs& a) {
  std::vector<std::string> refs, hyps;
  if (!a.corpus.empty()) {
    for (const auto& s : load_corpus(a.corpus)) {
      if (!s.hypothesis) continue;
      refs.push_back(s.reference);
      hyps.push_back(*s.hypothesis);
    }
  } else if (!a.refs.empty() && !a.hyps.empty()) {
    refs = read_lines(a.refs);
    hyps = read_lines(a.hyps);
  } else {
    throw Error("usage", "wer needs --corpus or both --refs and --hyps");
  }
  const WordErrorStats stats = corpus_word_errors(refs, hyps);
  std::cout << format_number(stats.rate()) << '\n';
  std::fprintf(stderr, "S=%zu I=%zu D=%zu N=%zu\n", stats.substitutions, stats.insertions, stats.deletions,
               stats.reference_tokens);
}

void print_error(const std::string& kind, const std::string& message) {
  std::cerr << Json{{"error", message}, {"kind", kind}}.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Back-transcription robustness toolkit"};
  app.require_subcommand(1);

  ImportArgs import_args;
  auto* import_cmd = app.add_subcommand("import", "Convert a MASSIVE JSONL file into a corpus");
  import_cmd->add_option("--massive", import_args.massive, "MASSIVE JSONL file")->required()->check(CLI::ExistingFile);
  import_cmd->add_option("--task", import_args.task, "domain, intent or slots")
      ->check(CLI::IsMember(kTaskNames));
  import_cmd->add_option("--partition", import_args.partition, "partition to keep, or 'all'");
  import_cmd->add_option("--out", import_args.out, "output corpus (default stdout)");
  import_cmd->callback([&] { run_import(import_args); });

  BackTranscribeArgs bt_args;
  auto* bt_cmd = app.add_subcommand("backtranscribe", "Run TTS, ASR and NLU over a corpus");
  bt_cmd->add_option("--corpus", bt_args.corpus)->required()->check(CLI::ExistingFile);
  bt_cmd->add_option("--config", bt_args.config, "key-value adapter configuration")->check(CLI::ExistingFile);
  bt_cmd->add_option("--out", bt_args.out);
  bt_cmd->add_option("--metadata", bt_args.metadata, "write run metadata JSON here");
  bt_cmd->add_option("--parallel", bt_args.parallel, "concurrent requests (overrides the config)")
      ->check(CLI::PositiveNumber);
  bt_cmd->callback([&] { run_backtranscribe(bt_args); });

  EvaluateArgs eval_args;
  auto* eval_cmd = app.add_subcommand("evaluate", "Robustness metrics, change counts and standard metrics");
  eval_cmd->add_option("--corpus", eval_args.corpus)->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("--metric", eval_args.metric, "print one metric: R123, R13, R12, R1, R123+ or R13+");
  eval_cmd->add_option("--task", eval_args.task)->check(CLI::IsMember(kTaskNames));
  eval_cmd->add_option("--format", eval_args.format, "markdown, csv or json");
  eval_cmd->add_option("--label", eval_args.label, "row label in markdown tables");
  eval_cmd->add_flag("--components", eval_args.components, "add per-label TP/FP/FN deltas");
  eval_cmd->add_option("--out", eval_args.out);
  eval_cmd->callback([&] { run_evaluate(eval_args); });

  EditOpsArgs ops_args;
  auto* ops_cmd = app.add_subcommand("editops", "Extract edit operations per sample");
  ops_cmd->add_option("--corpus", ops_args.corpus)->required()->check(CLI::ExistingFile);
  ops_cmd->add_option("--out", ops_args.out, "JSONL output (default stdout)");
  ops_cmd->add_option("--freq", ops_args.freq, "also write a frequency ranking CSV here");
  ops_cmd->add_option("--top", ops_args.top);
  ops_cmd->callback([&] { run_editops(ops_args); });

  RankArgs rank_args;
  auto* rank_cmd = app.add_subcommand("rank-errors", "Rank edit operations by damage coefficient or frequency");
  rank_cmd->add_option("--corpus", rank_args.corpus)->required()->check(CLI::ExistingFile);
  rank_cmd->add_option("--policy", rank_args.policy, "R123, R13, R12, R1, R123+ or R13+");
  rank_cmd->add_option("--top", rank_args.top);
  rank_cmd->add_option("--by", rank_args.by, "coefficient or frequency");
  rank_cmd->add_option("--lambda", rank_args.hp.l2_lambda, "L2 strength")->check(CLI::NonNegativeNumber);
  rank_cmd->add_option("--tolerance", rank_args.hp.tolerance)->check(CLI::PositiveNumber);
  rank_cmd->add_option("--max-iterations", rank_args.hp.max_iterations);
  rank_cmd->add_option("--min-freq", rank_args.hp.min_feature_frequency);
  rank_cmd->add_option("--seed", rank_args.hp.seed);
  rank_cmd->add_flag("--backoff", rank_args.backoff, "add op-type-only features");
  rank_cmd->add_option("--model-out", rank_args.model_out, "save the trained model as JSON");
  rank_cmd->add_option("--out", rank_args.out);
  rank_cmd->callback([&] { run_rank(rank_args); });

  auto* audit_cmd = app.add_subcommand("tts-audit", "Blind TTS quality audit");
  audit_cmd->require_subcommand(1);
  SheetArgs sheet_args;
  auto* sheet_cmd = audit_cmd->add_subcommand("sheet", "Sample an annotation sheet and its hidden key");
  sheet_cmd->add_option("--corpus", sheet_args.corpus)->required()->check(CLI::ExistingFile);
  sheet_cmd->add_option("--fraction", sheet_args.fraction)->check(CLI::Range(0.0, 1.0));
  sheet_cmd->add_option("--seed", sheet_args.seed);
  sheet_cmd->add_option("--out", sheet_args.out, "annotator sheet CSV")->required();
  sheet_cmd->add_option("--key", sheet_args.key, "hidden key CSV")->required();
  sheet_cmd->callback([&] { run_sheet(sheet_args); });
  ScoreArgs score_args;
  auto* score_cmd = audit_cmd->add_subcommand("score", "Resemblance of a filled sheet");
  score_cmd->add_option("--sheet", score_args.sheet)->required()->check(CLI::ExistingFile);
  score_cmd->add_option("--key", score_args.key)->required()->check(CLI::ExistingFile);
  score_cmd->callback([&] { run_score(score_args); });

  WerArgs wer_args;
  auto* wer_cmd = app.add_subcommand("wer", "Corpus word error rate");
  wer_cmd->add_option("--refs", wer_args.refs, "one reference per line")->check(CLI::ExistingFile);
  wer_cmd->add_option("--hyps", wer_args.hyps, "one hypothesis per line")->check(CLI::ExistingFile);
  wer_cmd->add_option("--corpus", wer_args.corpus)->check(CLI::ExistingFile);
  wer_cmd->callback([&] { run_wer(wer_args); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("usage", e.what());
    return 2;
  } catch (const Error& e) {
    print_error(e.kind(), e.what());
    return 1;
  } catch (const std::exception& e) {
    print_error("internal", e.what());
    return 1;
  }
  return 0;
}
