// Acceptance suite: one PASS/FAIL line per criterion. Oracles here are
// written independently of the library code they check.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "btrob/audit.hpp"
#include "btrob/btpipe.hpp"
#include "btrob/config.hpp"
#include "btrob/corpus.hpp"
#include "btrob/editops.hpp"
#include "btrob/errmodel.hpp"
#include "btrob/error.hpp"
#include "btrob/robustness.hpp"
#include "btrob/text.hpp"

using namespace btrob;

namespace {

// Tolerances and budgets.
constexpr double kMetricBudgetSeconds = 10.0;
constexpr double kExamplesBudgetSeconds = 1.0;
constexpr double kRoundTripBudgetSeconds = 30.0;
constexpr double kEndToEndBudgetSeconds = 10.0;
constexpr double kGradientRelTolerance = 1e-4;
constexpr double kObjectiveTolerance = 1e-6;
constexpr double kPercentTolerance = 0.005;
constexpr std::size_t kMassiveTestSize = 2974;

const std::string kFixtures = BTROB_FIXTURES;

struct Outcome {
  bool ok = true;
  bool skipped = false;
  std::string detail;
};

int failures = 0;

void criterion(int number, const char* title, double budget_seconds, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (budget_seconds > 0 && secs > budget_seconds && !o.skipped) {
    o.ok = false;
    o.detail += (o.detail.empty() ? "" : "; ") + std::string("over time budget");
  }
  const char* verdict = o.skipped ? "SKIP" : o.ok ? "PASS" : "FAIL";
  if (!o.ok && !o.skipped) ++failures;
  std::printf("%s %2d %-44s %8.3fs  %s\n", verdict, number, title, secs, o.detail.c_str());
  std::fflush(stdout);
}

// Random corpora ------------------------------------------------------------------

Sample random_sample(std::mt19937_64& rng, int index) {
  const char* labels[] = {"a", "b", "c"};
  Sample s;
  s.id = "s" + std::to_string(index);
  s.reference = "ref " + std::to_string(index);
  s.hypothesis = rng() % 3 == 0 ? s.reference : "hyp " + std::to_string(index);
  s.expected = NluOutcome::intent(labels[rng() % 3]);
  s.before = NluOutcome::intent(labels[rng() % 3]);
  s.after = NluOutcome::intent(labels[rng() % 3]);
  return s;
}

Corpus random_corpus(std::mt19937_64& rng) {
  std::vector<Sample> samples;
  const int n = static_cast<int>(rng() % 1001);
  for (int i = 0; i < n; ++i) samples.push_back(random_sample(rng, i));
  return Corpus(samples);
}

// Each metric's domain and numerator, written as explicit sets of sample ids.
struct OracleValue {
  std::size_t numerator = 0;
  std::size_t denominator = 0;
};

std::optional<OracleValue> oracle_metric(const Corpus& corpus, const std::string& name) {
  std::set<std::string> domain, numerator;
  for (const auto& s : corpus) {
    const std::string& r = s.reference;
    const std::string& h = *s.hypothesis;
    const std::string& e = s.expected.label();
    const std::string& b = s.before->label();
    const std::string& a = s.after->label();
    bool in_domain = false;
    if (name == "R123" || name == "R123+") in_domain = h != r;
    if (name == "R13" || name == "R13+") in_domain = h != r && (b == e || a == e);
    if (name == "R12") in_domain = h != r && !(b != e && a == e);
    if (name == "R1") in_domain = h != r && b == e;
    if (in_domain) domain.insert(s.id);
    const bool plus = name.back() == '+';
    if (in_domain && (b == a || (plus && a == e))) numerator.insert(s.id);
  }
  if (domain.empty()) return std::nullopt;
  return OracleValue{numerator.size(), domain.size()};
}

Outcome metric_oracle() {
  std::mt19937_64 rng(20240101);
  std::size_t compared = 0;
  for (int c = 0; c < 200; ++c) {
    const Corpus corpus = random_corpus(rng);
    for (Metric m : kAllMetrics) {
      const auto expected = oracle_metric(corpus, std::string(to_string(m)));
      std::optional<MetricResult> got;
      try {
        got = robustness_metric(corpus, m);
      } catch (const UndefinedMetricError&) {
      }
      if (expected.has_value() != got.has_value())
        return {false, false, "definedness differs for " + std::string(to_string(m)) + " on corpus " + std::to_string(c)};
      if (got && (got->numerator != expected->numerator || got->denominator != expected->denominator))
        return {false, false, "count mismatch for " + std::string(to_string(m)) + " on corpus " + std::to_string(c)};
      ++compared;
    }
  }
  return {true, false, std::to_string(compared) + " metric values equal on 200 corpora"};
}

Outcome partition_invariant() {
  std::mt19937_64 rng(77);
  for (int c = 0; c < 200; ++c) {
    const Corpus corpus = random_corpus(rng);
    if (category_counts(corpus).total() != corpus.size()) return {false, false, "counts do not sum to corpus size"};
  }
  // Known change-count rows over the MASSIVE test set, rebuilt as corpora.
  const std::vector<std::array<std::size_t, 4>> rows = {
      {133, 14, 16, 2811}, {176, 36, 16, 2746}, {507, 227, 26, 2214},  {104, 19, 10, 2841},
      {134, 37, 17, 2786}, {509, 233, 26, 2206}, {407, 43, 21, 2503},  {543, 94, 35, 2302},
      {1093, 384, 34, 1463}, {332, 45, 27, 2570}, {449, 82, 38, 2405}, {1027, 378, 35, 1534}};
  // (e, b, a) for C->I, I->I, I->C, Const
  const std::array<std::array<const char*, 3>, 4> shapes = {
      {{"a", "a", "b"}, {"a", "b", "c"}, {"a", "b", "a"}, {"a", "a", "a"}}};
  for (const auto& row : rows) {
    std::vector<Sample> samples;
    for (int k = 0; k < 4; ++k) {
      for (std::size_t i = 0; i < row[k]; ++i) {
        Sample s;
        s.id = std::to_string(k) + "-" + std::to_string(i);
        s.reference = "r";
        s.hypothesis = "h";
        s.expected = NluOutcome::intent(shapes[k][0]);
        s.before = NluOutcome::intent(shapes[k][1]);
        s.after = NluOutcome::intent(shapes[k][2]);
        samples.push_back(std::move(s));
      }
    }
    const CategoryCounts counts = category_counts(Corpus(samples));
    if (counts != CategoryCounts{row[0], row[1], row[2], row[3]} || counts.total() != kMassiveTestSize)
      return {false, false, "table row not reproduced"};
  }
  return {true, false, "200 random corpora; 12 table rows sum to 2974"};
}

Outcome order_relations() {
  std::mt19937_64 rng(31337);
  std::size_t checked = 0;
  for (int c = 0; c < 200; ++c) {
    const Corpus corpus = random_corpus(rng);
    const auto pair_ok = [&](Metric lo, Metric hi) {
      try {
        return robustness_metric(corpus, lo).value() <= robustness_metric(corpus, hi).value();
      } catch (const UndefinedMetricError&) {
        return true;
      }
    };
    if (!pair_ok(Metric::R123, Metric::R123plus) || !pair_ok(Metric::R13, Metric::R13plus))
      return {false, false, "order violated on corpus " + std::to_string(c)};
    ++checked;
  }
  return {true, false, std::to_string(checked) + " corpora"};
}

// Edit operations -----------------------------------------------------------------

Outcome op_examples() {
  struct Row {
    const char* hypothesis;
    const char* reference;
    const char* op;
  };
  const Row rows[] = {
      {"a", "", "a[del]"},
      {"cat", "hat", "cat[replace_hat]"},
      {"cat", "a cat", "cat[insert_before_a]"},
      {"cat", "cat that", "cat[insert_after_that]"},
      {"owl", "howl", "owl[add_prefix_h]"},
      {"he", "hey", "he[add_suffix_y]"},
      {"cats", "cat", "cats[del_suffix_1]"},
      {"howl", "owl", "howl[del_prefix_1]"},
      {"houl", "hour", "houl[replace_suffix_r]"},
      {"may", "my", "may[sreplace_a_]"},
      {"run in", "run-in", "run[join_-]"},
      {"today", "to day", "today[split_after_2]"},
      {"run-in", "run in", "run-in[split_on_first_-]"},
      {"forenoon", "for noon", "forenoon[split_on_last_e]"},
  };
  int matched = 0;
  std::string bad;
  for (const auto& row : rows) {
    const auto ops = extract_editops(row.reference, row.hypothesis);
    if (ops.size() == 1 && format_editop(ops[0]) == row.op && apply_editops(row.hypothesis, ops) == row.reference) {
      ++matched;
    } else {
      bad += std::string(bad.empty() ? "" : ", ") + row.op;
    }
  }
  if (matched != 14) return {false, false, "mismatched: " + bad};
  return {true, false, "14/14 rows"};
}

std::string perturb_word(std::mt19937_64& rng, const std::string& word) {
  std::u32string w = utf8_decode(word);
  const std::u32string alphabet = U"abcdeilnorstuyé'-";
  const auto pick = [&] { return alphabet[rng() % alphabet.size()]; };
  switch (rng() % 6) {
    case 0:
      w.insert(w.begin() + static_cast<long>(rng() % (w.size() + 1)), pick());
      break;
    case 1:
      if (w.size() > 1) w.erase(w.begin() + static_cast<long>(rng() % w.size()));
      break;
    case 2:
      w[rng() % w.size()] = pick();
      break;
    case 3:
      w = pick() + w;
      break;
    case 4:
      w += pick();
      break;
    default:
      if (w.size() > 1) w.insert(w.begin() + static_cast<long>(1 + rng() % (w.size() - 1)), U' ');
      break;
  }
  return utf8_encode(w);
}

Outcome round_trip() {
  const std::vector<std::string> vocab = {"set",   "an",     "alarm", "for",    "nine",  "am",   "play", "some",
                                          "jazz",  "today",  "run-in", "forenoon", "café", "o'clock", "a",  "the",
                                          "lights", "pondicherry", "my", "may", "mom", "e-mail", "x"};
  std::mt19937_64 rng(4242);
  int ok = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    std::vector<std::string> ref;
    const int n = 1 + static_cast<int>(rng() % 10);
    for (int i = 0; i < n; ++i) ref.push_back(vocab[rng() % vocab.size()]);
    std::vector<std::string> hyp;
    for (std::size_t i = 0; i < ref.size(); ++i) {
      switch (rng() % 8) {
        case 0: break;  // deleted
        case 1:
          hyp.push_back(vocab[rng() % vocab.size()]);
          hyp.push_back(ref[i]);
          break;
        case 2: hyp.push_back(vocab[rng() % vocab.size()]); break;
        case 3:
        case 4: hyp.push_back(perturb_word(rng, ref[i])); break;
        case 5:
          if (i + 1 < ref.size()) {
            hyp.push_back(ref[i] + (rng() % 2 ? "-" : "") + ref[i + 1]);
            ++i;
            break;
          }
          [[fallthrough]];
        default: hyp.push_back(ref[i]);
      }
    }
    const std::string r = join(ref), h = normalize_text(join(hyp));
    const auto ops = extract_editops(r, h);
    std::string back;
    try {
      back = apply_editops(h, ops);
    } catch (const std::exception& e) {
      return {false, false, "apply threw on \"" + h + "\" -> \"" + r + "\": " + e.what()};
    }
    if (back != r) return {false, false, "\"" + h + "\" rebuilt as \"" + back + "\" instead of \"" + r + "\""};
    for (const auto& op : ops) {
      EditOp parsed = parse_editop(format_editop(op));
      parsed.position = op.position;
      if (!(parsed == op)) return {false, false, "serialization changed " + format_editop(op)};
    }
    ++ok;
  }
  return {true, false, std::to_string(ok) + "/10000 pairs rebuilt"};
}

// F-measure components --------------------------------------------------------------

Outcome component_deltas() {
  // Cells: TP_a FP_a FN_a TP_b FP_b FN_b P_a R_a P_b R_b
  struct Row {
    const char* e;
    const char* b;
    const char* a;
    const char* arrows;
  };
  const Row rows[] = {{"alpha", "alpha", "beta", "v=^=^=vvv="},
                      {"gamma", "alpha", "beta", "=v==^=^=v="},
                      {"beta", "alpha", "beta", "=v=^=v^=^^"}};
  const auto arrow = [](double d) { return d > 1e-12 ? '^' : d < -1e-12 ? 'v' : '='; };
  const auto make = [](const char* id, const char* e, const char* b, const char* a) {
    Sample s;
    s.id = id;
    s.reference = "r";
    s.hypothesis = "h";
    s.expected = NluOutcome::intent(e);
    s.before = NluOutcome::intent(b);
    s.after = NluOutcome::intent(a);
    return s;
  };
  for (const auto& row : rows) {
    // Counts on the lone sample.
    auto lone = fscore_component_delta(Corpus({make("x", row.e, row.b, row.a)}));
    std::string got;
    for (const char* label : {"alpha", "beta"}) {
      const ComponentDelta& d = lone[label];
      got += arrow(static_cast<double>(d.d_tp()));
      got += arrow(static_cast<double>(d.d_fp()));
      got += arrow(static_cast<double>(d.d_fn()));
    }
    // Precision and recall need non-empty denominators on both sides, so the
    // sample sits among unchanged samples giving each label TP = FP = FN = 1.
    auto mixed = fscore_component_delta(Corpus({make("x", row.e, row.b, row.a), make("k1", "alpha", "alpha", "alpha"),
                                                make("k2", "alpha", "beta", "beta"), make("k3", "beta", "alpha", "alpha"),
                                                make("k4", "beta", "beta", "beta")}));
    for (const char* label : {"alpha", "beta"}) {
      const ComponentDelta& d = mixed[label];
      if (d.d_tp() != lone[label].d_tp() || d.d_fp() != lone[label].d_fp() || d.d_fn() != lone[label].d_fn())
        return {false, false, "background changed the count deltas"};
      if (!d.d_precision() || !d.d_recall()) return {false, false, "undefined precision or recall"};
    }
    got += arrow(*mixed["alpha"].d_precision());
    got += arrow(*mixed["alpha"].d_recall());
    got += arrow(*mixed["beta"].d_precision());
    got += arrow(*mixed["beta"].d_recall());
    if (got != row.arrows)
      return {false, false, std::string("row e=") + row.e + " b=" + row.b + " a=" + row.a + ": " + got + " vs " + row.arrows};
  }
  return {true, false, "30/30 cells"};
}

// Logistic regression ---------------------------------------------------------------

std::vector<FeatureVector> toy_set() {
  std::vector<FeatureVector> data;
  for (int i = 0; i < 20; ++i) {
    FeatureVector fv;
    fv.counts = {{"f", 1}, {i % 2 ? "g" : "h", 1 + i % 3}};
    fv.label = 1;
    data.push_back(fv);
  }
  for (int i = 0; i < 20; ++i) {
    FeatureVector fv;
    fv.counts = {{i % 3 ? "g" : "h", 1 + i % 2}};
    if (i % 4 == 0) fv.counts["k"] = 1;
    fv.label = 0;
    data.push_back(fv);
  }
  return data;
}

// Independent objective on a dense design with the bias as the last column.
double oracle_objective(const Eigen::MatrixXd& xb, const Eigen::VectorXd& y, const Eigen::VectorXd& theta, double lambda) {
  double f = 0;
  for (Eigen::Index i = 0; i < xb.rows(); ++i) {
    const double z = xb.row(i).dot(theta);
    f += y[i] == 1 ? std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
  }
  const Eigen::Index d = theta.size() - 1;
  return f + 0.5 * lambda * theta.head(d).squaredNorm();
}

Outcome logistic_regression() {
  const double lambda = 0.1;
  const auto data = toy_set();
  const auto vocab = build_vocabulary(data, 1);
  const SparseDesign x = design_matrix(data, vocab);
  Eigen::VectorXd y(static_cast<Eigen::Index>(data.size()));
  for (std::size_t i = 0; i < data.size(); ++i) y[static_cast<Eigen::Index>(i)] = data[i].label;

  // Central differences at 50 random points.
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  double worst = 0;
  for (int p = 0; p < 50; ++p) {
    Eigen::VectorXd w(x.cols());
    for (Eigen::Index j = 0; j < w.size(); ++j) w[j] = u(rng);
    const double b = u(rng);
    Eigen::VectorXd gw;
    double gb = 0;
    logistic_gradient(x, y, w, b, lambda, gw, gb);
    Eigen::VectorXd analytic(w.size() + 1), numeric(w.size() + 1);
    analytic << gw, gb;
    const double h = 1e-5;
    for (Eigen::Index j = 0; j <= w.size(); ++j) {
      Eigen::VectorXd wp = w, wm = w;
      double bp = b, bm = b;
      if (j < w.size()) {
        wp[j] += h;
        wm[j] -= h;
      } else {
        bp += h;
        bm -= h;
      }
      numeric[j] = (logistic_objective(x, y, wp, bp, lambda) - logistic_objective(x, y, wm, bm, lambda)) / (2 * h);
    }
    worst = std::max(worst, (analytic - numeric).norm() / std::max(analytic.norm(), 1e-12));
  }
  if (worst >= kGradientRelTolerance) return {false, false, "gradient relative error " + std::to_string(worst)};

  // Newton's method on the dense problem as the reference optimizer.
  Eigen::MatrixXd xb(x.rows(), x.cols() + 1);
  xb << Eigen::MatrixXd(x), Eigen::VectorXd::Ones(x.rows());
  Eigen::VectorXd theta = Eigen::VectorXd::Zero(xb.cols());
  Eigen::MatrixXd reg = lambda * Eigen::MatrixXd::Identity(xb.cols(), xb.cols());
  reg(xb.cols() - 1, xb.cols() - 1) = 0;
  for (int it = 0; it < 100; ++it) {
    Eigen::VectorXd p(xb.rows()), s(xb.rows());
    for (Eigen::Index i = 0; i < xb.rows(); ++i) {
      p[i] = 1.0 / (1.0 + std::exp(-xb.row(i).dot(theta)));
      s[i] = p[i] * (1 - p[i]);
    }
    const Eigen::VectorXd grad = xb.transpose() * (p - y) + reg * theta;
    if (grad.norm() < 1e-12) break;
    const Eigen::MatrixXd hess = xb.transpose() * s.asDiagonal() * xb + reg;
    Eigen::VectorXd step = hess.ldlt().solve(grad);
    double t = 1.0;
    const double f0 = oracle_objective(xb, y, theta, lambda);
    while (oracle_objective(xb, y, theta - t * step, lambda) > f0 && t > 1e-10) t *= 0.5;
    theta -= t * step;
  }
  const double reference = oracle_objective(xb, y, theta, lambda);

  Hyperparameters hp;
  hp.l2_lambda = lambda;
  const ErrorModel model = train_logreg(data, hp);
  const double gap = std::abs(model.training.objective - reference);
  if (gap > kObjectiveTolerance) return {false, false, "objective gap " + std::to_string(gap)};
  const auto top = rank_errors(model, 1);
  if (top.empty() || top[0].feature != "f") return {false, false, "informative feature not ranked first"};
  char detail[160];
  std::snprintf(detail, sizeof detail, "max grad rel err %.2e; objective gap %.2e; top feature f (w=%.4f)", worst, gap,
                top[0].score);
  return {true, false, detail};
}

// Resemblance ----------------------------------------------------------------------

Outcome resemblance() {
  struct Row {
    std::size_t total, utt, aug, both;
    double percent;
  };
  const Row rows[] = {{121, 73, 19, 29, 84.30}, {115, 66, 16, 33, 86.09}, {207, 171, 19, 17, 90.82}, {217, 183, 18, 16, 91.71}};
  std::string detail;
  bool ok = true;
  for (const auto& row : rows) {
    const ResemblanceResult r = ResemblanceResult::from_counts(row.total, row.utt, row.both);
    const double percent = 100.0 * r.resemblance();
    ok = ok && r.aug == row.aug && std::abs(percent - row.percent) <= kPercentTolerance;
    char buf[48];
    std::snprintf(buf, sizeof buf, "%s%.4f%%", detail.empty() ? "" : " ", percent);
    detail += buf;
  }
  return {ok, false, detail};
}

// WER ---------------------------------------------------------------------------

std::size_t oracle_edit_distance(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::vector<std::size_t>> d(a.size() + 1, std::vector<std::size_t>(b.size() + 1));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i)
    for (std::size_t j = 1; j <= b.size(); ++j)
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1, d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
  return d[a.size()][b.size()];
}

Outcome wer_oracle() {
  std::mt19937_64 rng(99);
  const char* words[] = {"a", "b", "c", "d", "e"};
  for (int t = 0; t < 1000; ++t) {
    std::vector<std::string> r(1 + rng() % 12), h(rng() % 12);
    for (auto& w : r) w = words[rng() % 5];
    for (auto& w : h) w = words[rng() % 5];
    const std::size_t expected = oracle_edit_distance(r, h);
    const double got = word_error_rate({join(r)}, {join(h)});
    if (word_errors(r, h).errors() != expected || got != static_cast<double>(expected) / static_cast<double>(r.size()))
      return {false, false, "pair " + std::to_string(t) + " differs"};
  }
  return {true, false, "1000 pairs"};
}

// End to end -------------------------------------------------------------------

Outcome end_to_end() {
  const std::string dir = kFixtures + "/e2e";
  const Corpus input = load_corpus(dir + "/corpus.jsonl");
  const ToolConfig config = load_tool_config(dir + "/btrob.conf");

  std::string first_render;
  for (int run = 0; run < 2; ++run) {
    const AdapterSet adapters = make_adapters(config);
    RunConfig rc = config.run;
    rc.max_parallel_requests = run == 0 ? 1 : 4;
    const BackTranscription bt = back_transcribe(input, *adapters.tts, *adapters.asr, *adapters.nlu, rc);
    if (!bt.metadata.failures.empty()) return {false, false, "adapter failures"};
    const Corpus& c = bt.corpus;

    // Counted by hand from the fixture: 14 samples change text; of those 7
    // keep their outcome, 3 are C->I, 3 are I->I and 1 is I->C.
    const std::map<Metric, std::pair<std::size_t, std::size_t>> expected = {
        {Metric::R123, {7, 14}}, {Metric::R13, {7, 11}},     {Metric::R12, {7, 13}},
        {Metric::R1, {7, 10}},   {Metric::R123plus, {8, 14}}, {Metric::R13plus, {8, 11}}};
    for (const auto& [m, nd] : expected) {
      const MetricResult r = robustness_metric(c, m);
      if (r.numerator != nd.first || r.denominator != nd.second)
        return {false, false, std::string(to_string(m)) + " = " + std::to_string(r.numerator) + "/" + std::to_string(r.denominator)};
    }
    if (category_counts(c) != CategoryCounts{3, 3, 1, 13}) return {false, false, "category counts"};

    const std::vector<RankedFeature> freq = rank_frequency(c, 3);
    const std::vector<RankedFeature> expected_freq = {{"uh[del]", 6}, {"light[add_suffix_s]", 2}, {"and[del_suffix_1]", 1}};
    if (freq != expected_freq) return {false, false, "frequency ranking"};

    const ErrorModel model = train_logreg(featurize_corpus(c, policy_of(Metric::R123)));
    const auto ranked = rank_errors(model, 100);
    std::size_t harmful = ranked.size(), harmless = ranked.size();
    for (std::size_t i = 0; i < ranked.size(); ++i) {
      if (ranked[i].feature == "light[add_suffix_s]") harmful = i;
      if (ranked[i].feature == "uh[del]") harmless = i;
    }
    if (harmful != 0 || harmless <= harmful) return {false, false, "planted harmful op does not rank first"};
    if (freq[0].feature != "uh[del]") return {false, false, "frequent op does not lead the frequency ranking"};

    std::ostringstream render;
    write_corpus(render, c);
    write_ranking_csv(render, ranked);
    if (run == 0) {
      first_render = render.str();
    } else if (render.str() != first_render) {
      return {false, false, "second run differs"};
    }
  }
  return {true, false, "6 metrics, counts, frequency and coefficient rankings; 2 identical runs"};
}

// MASSIVE --------------------------------------------------------------------------

Outcome massive_import() {
  const char* path = std::getenv("BTROB_MASSIVE_PATH");
  if (!path || !std::filesystem::exists(path)) return {true, true, "set BTROB_MASSIVE_PATH to the en-US JSONL file"};
  MassiveImportOptions options;
  options.partition = "test";
  const Corpus c = import_massive(path, options);
  return {c.size() == kMassiveTestSize, false, std::to_string(c.size()) + " test samples"};
}

}  // namespace

int main() {
  criterion(1, "metric oracle equivalence", kMetricBudgetSeconds, metric_oracle);
  criterion(2, "category partition invariant", 0, partition_invariant);
  criterion(3, "R123 <= R123+ and R13 <= R13+", 0, order_relations);
  criterion(4, "edit-operation examples", kExamplesBudgetSeconds, op_examples);
  criterion(5, "edit-operation round trip", kRoundTripBudgetSeconds, round_trip);
  criterion(6, "F-measure component deltas", 0, component_deltas);
  criterion(7, "logistic regression", 0, logistic_regression);
  criterion(8, "resemblance arithmetic", 0, resemblance);
  criterion(9, "WER against edit-distance oracle", 0, wer_oracle);
  criterion(10, "end-to-end hermetic run", kEndToEndBudgetSeconds, end_to_end);
  criterion(11, "MASSIVE import", 0, massive_import);
  std::printf("%s: %d failing criteria\n", failures ? "FAILED" : "OK", failures);
  return failures ? 1 : 0;
}
