#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "btrob/corpus.hpp"
#include "btrob/logreg.hpp"
#include "btrob/robustness.hpp"

namespace btrob {

struct FeatureOptions {
  /// Also count an op-type-only feature such as "*[del]" per op.
  bool op_type_backoff = false;
};

/// Bag of serialized edit ops for one sample and its damage label.
struct FeatureVector {
  std::string sample_id;
  std::map<std::string, int> counts;
  int label = 0;
};

/// Y = 1 iff the sample's change category is negative under `policy`.
/// Throws MetricError for samples without outcomes or with h = r.
FeatureVector featurize(const Sample& sample, const RobustnessPolicy& policy, const FeatureOptions& options = {});

/// Featurizes every sample with h != r, in corpus order.
std::vector<FeatureVector> featurize_corpus(const Corpus& corpus, const RobustnessPolicy& policy,
                                            const FeatureOptions& options = {});

struct Hyperparameters {
  double l2_lambda = 1.0;
  double tolerance = 1e-6;
  std::size_t max_iterations = 100000;
  /// Features seen in fewer training examples are dropped.
  std::size_t min_feature_frequency = 1;
  /// Recorded with the model. The solver itself is deterministic.
  std::uint64_t seed = 0;
};

struct TrainingInfo {
  std::size_t examples = 0;
  std::size_t positives = 0;
  std::size_t iterations = 0;
  double objective = 0.0;
  double gradient_norm = 0.0;
  bool converged = false;
};

struct ErrorModel {
  std::map<std::string, std::size_t> vocabulary;
  Eigen::VectorXd weights;
  double bias = 0.0;
  Hyperparameters hyperparameters;
  TrainingInfo training;

  double weight(const std::string& feature) const;
  /// P(Y = 1) for a feature bag; unknown features are ignored.
  double predict(const std::map<std::string, int>& counts) const;
};

/// Sorted vocabulary over features meeting the frequency cutoff, and the
/// matching row-per-example design matrix.
std::map<std::string, std::size_t> build_vocabulary(const std::vector<FeatureVector>& data,
                                                    std::size_t min_feature_frequency);
SparseDesign design_matrix(const std::vector<FeatureVector>& data,
                           const std::map<std::string, std::size_t>& vocabulary);

/// Throws TrainingError on a single-class dataset and when the solver stops
/// short of the tolerance. max_iterations = 0 returns the zero model.
ErrorModel train_logreg(const std::vector<FeatureVector>& data, const Hyperparameters& hyperparameters = {});

Json model_to_json(const ErrorModel& model);
ErrorModel model_from_json(const Json& json);
void save_model(const std::string& path, const ErrorModel& model);
ErrorModel load_model(const std::string& path);

struct RankedFeature {
  std::string feature;
  double score = 0.0;

  bool operator==(const RankedFeature&) const = default;
};

/// Top k features by coefficient, highest first; ties by feature string.
std::vector<RankedFeature> rank_errors(const ErrorModel& model, std::size_t k);

/// Top k serialized ops by occurrence over samples with h != r.
std::vector<RankedFeature> rank_frequency(const Corpus& corpus, std::size_t k);

/// CSV with header rank,feature,score.
void write_ranking_csv(std::ostream& out, const std::vector<RankedFeature>& ranking);

}  // namespace btrob
