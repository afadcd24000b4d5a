#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "theft_trace/features.hpp"

namespace theft_trace {

// ---------------------------------------------------------------------------
// Decision tree (CART, Gini impurity, midpoint thresholds)

struct TreeNode {
  // split
  int feature = -1;
  double threshold = 0.0;
  std::unique_ptr<TreeNode> left;   // feature value <= threshold
  std::unique_ptr<TreeNode> right;  // feature value >  threshold
  // leaf
  int n_normal = 0;
  int n_theft = 0;

  bool is_leaf() const { return !left; }
};

struct TreeParams {
  int max_depth = -1;  // -1 = unlimited
  int min_leaf = 1;
  int features_per_split = -1;  // -1 = all features
  std::uint64_t seed = 0;
};

std::unique_ptr<TreeNode> train_decision_tree(const LabeledDataset& d,
                                              const TreeParams& params);
Label predict_tree(const TreeNode& root, const FeatureVector& x);

// ---------------------------------------------------------------------------
// Random forest

struct ForestParams {
  int n_trees = 100;
  int features_per_split = 5;  // ceil(sqrt(20))
  int max_depth = -1;
  int min_leaf = 1;
  std::uint64_t seed = 0;
  bool bootstrap = true;
};

struct ForestModel {
  std::vector<std::unique_ptr<TreeNode>> trees;
  ForestParams params;
};

ForestModel train_random_forest(const LabeledDataset& d, const ForestParams& params);
// majority vote, ties predict theft
Label predict_forest(const ForestModel& m, const FeatureVector& x);

// ---------------------------------------------------------------------------
// Logistic regression (full-batch GD on z-scored features, L2 penalty)

struct LogisticParams {
  double lr = 0.1;
  int epochs = 500;
  double l2 = 1e-4;
};

struct Standardizer {
  std::array<double, kFeatureCount> mean{};
  std::array<double, kFeatureCount> sd{};  // 0 marks a constant feature
  std::array<double, kFeatureCount> apply(const FeatureVector& x) const;
};

Standardizer fit_standardizer(const LabeledDataset& d);

struct LogisticModel {
  std::array<double, kFeatureCount> weights{};
  double bias = 0.0;
  Standardizer standardizer;
};

LogisticModel train_logistic(const LabeledDataset& d, const LogisticParams& params);
double predict_logistic_proba(const LogisticModel& m, const FeatureVector& x);
Label predict_logistic(const LogisticModel& m, const FeatureVector& x);

// loss + gradient at a given parameter point (exposed for gradient checks)
double logistic_loss_grad(const std::vector<std::array<double, kFeatureCount>>& xs,
                          const std::vector<int>& ys,
                          const std::array<double, kFeatureCount>& w, double b,
                          double l2, std::array<double, kFeatureCount>& grad_w,
                          double& grad_b);

// ---------------------------------------------------------------------------
// MLP: 20 -> hidden (ReLU) -> 1 (sigmoid)

struct MlpParams {
  int hidden = 16;
  double lr = 0.05;
  int epochs = 500;
  double l2 = 1e-4;
  std::uint64_t seed = 0;
};

struct MlpModel {
  int hidden = 16;
  std::vector<double> w1;  // hidden x kFeatureCount
  std::vector<double> b1;  // hidden
  std::vector<double> w2;  // hidden
  double b2 = 0.0;
  Standardizer standardizer;

  int n_params() const { return hidden * kFeatureCount + hidden + hidden + 1; }
  std::vector<double> flatten() const;
  void unflatten(const std::vector<double>& theta);
};

MlpModel train_mlp(const LabeledDataset& d, const MlpParams& params);
double predict_mlp_proba(const MlpModel& m, const FeatureVector& x);
Label predict_mlp(const MlpModel& m, const FeatureVector& x);

// loss and flat gradient at the model's current parameters
double mlp_loss_grad(const MlpModel& m,
                     const std::vector<std::array<double, kFeatureCount>>& xs,
                     const std::vector<int>& ys, double l2,
                     std::vector<double>& grad);

// ---------------------------------------------------------------------------
// Metrics (precision / recall / accuracy from the confusion matrix)

struct Confusion {
  std::int64_t tp = 0, fp = 0, tn = 0, fn = 0;
  std::int64_t total() const { return tp + fp + tn + fn; }
  Confusion& operator+=(const Confusion& o);
};

struct Metrics {
  std::optional<double> precision;  // nullopt when the denominator is 0
  std::optional<double> recall;
  std::optional<double> accuracy;
};

Metrics compute_metrics(const Confusion& c);

// ---------------------------------------------------------------------------
// Cross-validation

enum class ModelKind { Tree, Forest, Logistic, Mlp };

std::string_view model_kind_name(ModelKind k);
std::optional<ModelKind> model_kind_from_name(std::string_view name);

struct ModelSpec {
  ModelKind kind = ModelKind::Forest;
  TreeParams tree;
  ForestParams forest;
  LogisticParams logistic;
  MlpParams mlp;
};

struct FoldResult {
  int fold = 0;
  Confusion confusion;
};

struct EvalReport {
  Confusion confusion;  // pooled over folds
  Metrics metrics;
  std::vector<FoldResult> folds;
};

// Stratified k-fold CV; every row predicted exactly once by a model not
// trained on it. Deterministic given seed.
EvalReport cross_validate(const LabeledDataset& d, const ModelSpec& spec,
                          int k = 10, std::uint64_t seed = 0);

struct TypeEvalRow {
  SessionType type;
  int n_theft = 0;
  int n_normal = 0;
  EvalReport report;
};

struct PerTypeEvalReport {
  std::vector<TypeEvalRow> rows;
  std::vector<SessionType> skipped;  // buckets with no theft rows
};

PerTypeEvalReport per_type_evaluation(const LabeledDataset& d,
                                      const ModelSpec& spec, int k = 10,
                                      std::uint64_t seed = 0);

// ---------------------------------------------------------------------------
// Model persistence (versioned JSON)

std::string forest_to_json(const ForestModel& m);
ForestModel forest_from_json(const std::string& text);
std::string logistic_to_json(const LogisticModel& m);
LogisticModel logistic_from_json(const std::string& text);
std::string mlp_to_json(const MlpModel& m);
MlpModel mlp_from_json(const std::string& text);

}  // namespace theft_trace
