#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

#include "theft_trace/classify.hpp"

namespace theft_trace {
namespace {

void predict_with(const ModelSpec& spec, const LabeledDataset& train,
                  const std::vector<const LabeledRow*>& test,
                  std::vector<Label>& out) {
  out.clear();
  switch (spec.kind) {
    case ModelKind::Tree: {
      auto tree = train_decision_tree(train, spec.tree);
      for (const auto* row : test) out.push_back(predict_tree(*tree, row->features));
      break;
    }
    case ModelKind::Forest: {
      auto forest = train_random_forest(train, spec.forest);
      for (const auto* row : test)
        out.push_back(predict_forest(forest, row->features));
      break;
    }
    case ModelKind::Logistic: {
      auto model = train_logistic(train, spec.logistic);
      for (const auto* row : test)
        out.push_back(predict_logistic(model, row->features));
      break;
    }
    case ModelKind::Mlp: {
      auto model = train_mlp(train, spec.mlp);
      for (const auto* row : test) out.push_back(predict_mlp(model, row->features));
      break;
    }
  }
}

}  // namespace

std::string_view model_kind_name(ModelKind k) {
  switch (k) {
    case ModelKind::Tree: return "tree";
    case ModelKind::Forest: return "forest";
    case ModelKind::Logistic: return "logistic";
    case ModelKind::Mlp: return "mlp";
  }
  return "?";
}

std::optional<ModelKind> model_kind_from_name(std::string_view name) {
  if (name == "tree") return ModelKind::Tree;
  if (name == "forest") return ModelKind::Forest;
  if (name == "logistic") return ModelKind::Logistic;
  if (name == "mlp") return ModelKind::Mlp;
  return std::nullopt;
}

EvalReport cross_validate(const LabeledDataset& d, const ModelSpec& spec, int k,
                          std::uint64_t seed) {
  if (static_cast<int>(d.rows.size()) < k)
    throw std::invalid_argument("cross_validate: fewer rows than folds");
  if (d.count(Label::Theft) == 0 || d.count(Label::Normal) == 0)
    throw std::invalid_argument("cross_validate: single-class dataset");

  // stratified fold assignment: shuffle each class, deal round-robin
  std::vector<int> fold_of(d.rows.size(), -1);
  std::mt19937_64 rng(seed);
  for (Label cls : {Label::Theft, Label::Normal}) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < d.rows.size(); ++i)
      if (d.rows[i].label == cls) idx.push_back(i);
    std::shuffle(idx.begin(), idx.end(), rng);
    for (std::size_t j = 0; j < idx.size(); ++j)
      fold_of[idx[j]] = static_cast<int>(j % k);
  }

  EvalReport report;
  std::vector<Label> predictions;
  for (int fold = 0; fold < k; ++fold) {
    LabeledDataset train;
    std::vector<const LabeledRow*> test;
    for (std::size_t i = 0; i < d.rows.size(); ++i) {
      if (fold_of[i] == fold) test.push_back(&d.rows[i]);
      else train.rows.push_back(d.rows[i]);
    }
    if (test.empty()) continue;

    predict_with(spec, train, test, predictions);

    FoldResult fr;
    fr.fold = fold;
    for (std::size_t t = 0; t < test.size(); ++t) {
      const bool actual = test[t]->label == Label::Theft;
      const bool predicted = predictions[t] == Label::Theft;
      if (actual && predicted) ++fr.confusion.tp;
      else if (!actual && predicted) ++fr.confusion.fp;
      else if (!actual && !predicted) ++fr.confusion.tn;
      else ++fr.confusion.fn;
    }
    report.confusion += fr.confusion;
    report.folds.push_back(fr);
  }
  report.metrics = compute_metrics(report.confusion);
  return report;
}

PerTypeEvalReport per_type_evaluation(const LabeledDataset& d,
                                      const ModelSpec& spec, int k,
                                      std::uint64_t seed) {
  PerTypeEvalReport out;
  for (SessionType type : {SessionType::Type1, SessionType::Type2,
                           SessionType::Type3, SessionType::Type4}) {
    LabeledDataset bucket;
    for (const auto& row : d.rows)
      if (row.session_type == type) bucket.rows.push_back(row);

    TypeEvalRow row;
    row.type = type;
    row.n_theft = bucket.count(Label::Theft);
    row.n_normal = bucket.count(Label::Normal);
    if (row.n_theft == 0) {
      out.skipped.push_back(type);
      continue;
    }
    const int k_eff =
        std::min<int>(k, static_cast<int>(bucket.rows.size()));
    row.report = cross_validate(bucket, spec, k_eff, seed);
    out.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace theft_trace
