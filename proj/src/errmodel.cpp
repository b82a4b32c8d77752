#include "btrob/errmodel.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "btrob/csv.hpp"
#include "btrob/editops.hpp"
#include "btrob/error.hpp"
#include "btrob/report.hpp"

namespace btrob {

FeatureVector featurize(const Sample& sample, const RobustnessPolicy& policy, const FeatureOptions& options) {
  if (!sample.evaluable()) throw MetricError("sample '" + sample.id + "' lacks hypothesis or outcomes");
  if (!sample.text_changed()) throw MetricError("sample '" + sample.id + "' has h = r and carries no edit ops");
  FeatureVector fv;
  fv.sample_id = sample.id;
  fv.label = is_negative(categorize(sample), policy) ? 1 : 0;
  for (const auto& op : extract_editops(sample.reference, *sample.hypothesis)) {
    ++fv.counts[format_editop(op)];
    if (options.op_type_backoff) ++fv.counts["*[" + std::string(op_name(op.kind)) + "]"];
  }
  return fv;
}

std::vector<FeatureVector> featurize_corpus(const Corpus& corpus, const RobustnessPolicy& policy,
                                            const FeatureOptions& options) {
  std::vector<FeatureVector> out;
  for (const auto& s : corpus)
    if (s.text_changed()) out.push_back(featurize(s, policy, options));
  return out;
}

double ErrorModel::weight(const std::string& feature) const {
  const auto it = vocabulary.find(feature);
  return it == vocabulary.end() ? 0.0 : weights[static_cast<Eigen::Index>(it->second)];
}

double ErrorModel::predict(const std::map<std::string, int>& counts) const {
  double z = bias;
  for (const auto& [feature, n] : counts) z += n * weight(feature);
  return sigmoid(z);
}

std::map<std::string, std::size_t> build_vocabulary(const std::vector<FeatureVector>& data,
                                                    std::size_t min_feature_frequency) {
  std::map<std::string, std::size_t> seen;
  for (const auto& fv : data)
    for (const auto& [feature, n] : fv.counts) ++seen[feature];
  std::map<std::string, std::size_t> vocabulary;
  for (const auto& [feature, n] : seen)
    if (n >= min_feature_frequency) vocabulary.emplace(feature, vocabulary.size());
  return vocabulary;
}

SparseDesign design_matrix(const std::vector<FeatureVector>& data,
                           const std::map<std::string, std::size_t>& vocabulary) {
  std::vector<Eigen::Triplet<double>> entries;
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (const auto& [feature, n] : data[i].counts) {
      const auto it = vocabulary.find(feature);
      if (it != vocabulary.end())
        entries.emplace_back(static_cast<int>(i), static_cast<int>(it->second), static_cast<double>(n));
    }
  }
  SparseDesign x(static_cast<Eigen::Index>(data.size()), static_cast<Eigen::Index>(vocabulary.size()));
  x.setFromTriplets(entries.begin(), entries.end());
  return x;
}

ErrorModel train_logreg(const std::vector<FeatureVector>& data, const Hyperparameters& hp) {
  if (hp.l2_lambda < 0) throw TrainingError("l2_lambda must be non-negative");
  ErrorModel model;
  model.hyperparameters = hp;
  model.vocabulary = build_vocabulary(data, hp.min_feature_frequency);
  model.training.examples = data.size();

  Eigen::VectorXd y(static_cast<Eigen::Index>(data.size()));
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data[i].label != 0 && data[i].label != 1) throw TrainingError("labels must be 0 or 1");
    y[static_cast<Eigen::Index>(i)] = data[i].label;
    model.training.positives += static_cast<std::size_t>(data[i].label);
  }
  if (model.training.positives == 0 || model.training.positives == data.size())
    throw TrainingError("training data needs at least one example of each class");

  const SparseDesign x = design_matrix(data, model.vocabulary);
  const SolverResult r = minimize_logistic(x, y, {hp.l2_lambda, hp.tolerance, hp.max_iterations});
  model.weights = r.weights;
  model.bias = r.bias;
  model.training.iterations = r.iterations;
  model.training.objective = r.objective;
  model.training.gradient_norm = r.gradient_norm;
  model.training.converged = r.converged;
  if (!r.converged && hp.max_iterations > 0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "logistic regression stopped after %zu iterations with gradient norm %.3g",
                  r.iterations, r.gradient_norm);
    throw TrainingError(buf, r.gradient_norm);
  }
  return model;
}

Json model_to_json(const ErrorModel& m) {
  Json vocab = Json::array(), weights = Json::array();
  for (const auto& [feature, index] : m.vocabulary) {
    vocab.push_back(feature);
    weights.push_back(m.weights[static_cast<Eigen::Index>(index)]);
  }
  const auto& hp = m.hyperparameters;
  const auto& t = m.training;
  return Json{{"hyperparameters",
               {{"l2_lambda", hp.l2_lambda},
                {"tolerance", hp.tolerance},
                {"max_iterations", hp.max_iterations},
                {"min_feature_frequency", hp.min_feature_frequency},
                {"seed", hp.seed}}},
              {"vocabulary", vocab},
              {"weights", weights},
              {"bias", m.bias},
              {"training",
               {{"examples", t.examples},
                {"positives", t.positives},
                {"iterations", t.iterations},
                {"objective", t.objective},
                {"gradient_norm", t.gradient_norm},
                {"converged", t.converged}}}};
}

ErrorModel model_from_json(const Json& j) {
  try {
    ErrorModel m;
    const Json& hp = j.at("hyperparameters");
    m.hyperparameters.l2_lambda = hp.at("l2_lambda").get<double>();
    m.hyperparameters.tolerance = hp.at("tolerance").get<double>();
    m.hyperparameters.max_iterations = hp.at("max_iterations").get<std::size_t>();
    m.hyperparameters.min_feature_frequency = hp.at("min_feature_frequency").get<std::size_t>();
    m.hyperparameters.seed = hp.at("seed").get<std::uint64_t>();
    const Json& vocab = j.at("vocabulary");
    const Json& weights = j.at("weights");
    if (vocab.size() != weights.size()) throw TrainingError("model vocabulary and weights differ in length");
    m.weights.resize(static_cast<Eigen::Index>(weights.size()));
    for (std::size_t i = 0; i < vocab.size(); ++i) {
      if (!m.vocabulary.emplace(vocab[i].get<std::string>(), i).second)
        throw TrainingError("model vocabulary repeats '" + vocab[i].get<std::string>() + "'");
      m.weights[static_cast<Eigen::Index>(i)] = weights[i].get<double>();
    }
    m.bias = j.at("bias").get<double>();
    const Json& t = j.at("training");
    m.training = {t.at("examples").get<std::size_t>(),   t.at("positives").get<std::size_t>(),
                  t.at("iterations").get<std::size_t>(), t.at("objective").get<double>(),
                  t.at("gradient_norm").get<double>(),   t.at("converged").get<bool>()};
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw TrainingError(std::string("malformed model file: ") + e.what());
  }
}

void save_model(const std::string& path, const ErrorModel& model) {
  std::ofstream out(path);
  if (!out) throw TrainingError("cannot write model file '" + path + "'");
  out << model_to_json(model).dump(2) << '\n';
}

ErrorModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw TrainingError("cannot read model file '" + path + "'");
  try {
    return model_from_json(Json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw TrainingError("model file '" + path + "' is not JSON: " + e.what());
  }
}

namespace {

std::vector<RankedFeature> top_k(std::vector<RankedFeature> all, std::size_t k) {
  std::sort(all.begin(), all.end(), [](const RankedFeature& a, const RankedFeature& b) {
    return a.score != b.score ? a.score > b.score : a.feature < b.feature;
  });
  if (all.size() > k) all.resize(k);
  return all;
}

}  // namespace

std::vector<RankedFeature> rank_errors(const ErrorModel& model, std::size_t k) {
  std::vector<RankedFeature> all;
  for (const auto& [feature, index] : model.vocabulary)
    all.push_back({feature, model.weights[static_cast<Eigen::Index>(index)]});
  return top_k(std::move(all), k);
}

std::vector<RankedFeature> rank_frequency(const Corpus& corpus, std::size_t k) {
  std::map<std::string, std::size_t> counts;
  for (const auto& s : corpus) {
    if (!s.text_changed()) continue;
    for (const auto& op : extract_editops(s.reference, *s.hypothesis)) ++counts[format_editop(op)];
  }
  std::vector<RankedFeature> all;
  for (const auto& [feature, n] : counts) all.push_back({feature, static_cast<double>(n)});
  return top_k(std::move(all), k);
}

void write_ranking_csv(std::ostream& out, const std::vector<RankedFeature>& ranking) {
  write_csv_row(out, {"rank", "feature", "score"});
  for (std::size_t i = 0; i < ranking.size(); ++i)
    write_csv_row(out, {std::to_string(i + 1), ranking[i].feature, format_number(ranking[i].score, 10)});
}

}  // namespace btrob
