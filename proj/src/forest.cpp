#include <random>
#include <stdexcept>

#include "theft_trace/classify.hpp"

namespace theft_trace {

ForestModel train_random_forest(const LabeledDataset& d,
                                const ForestParams& params) {
  if (d.rows.empty())
    throw std::invalid_argument("train_random_forest: empty dataset");
  if (params.n_trees < 1)
    throw std::invalid_argument("train_random_forest: n_trees must be >= 1");

  ForestModel model;
  model.params = params;
  std::mt19937_64 seeder(params.seed);

  for (int t = 0; t < params.n_trees; ++t) {
    const std::uint64_t resample_seed = seeder();
    const std::uint64_t tree_seed = seeder();

    LabeledDataset sample;
    if (params.bootstrap) {
      std::mt19937_64 rng(resample_seed);
      std::uniform_int_distribution<std::size_t> pick(0, d.rows.size() - 1);
      sample.rows.reserve(d.rows.size());
      for (std::size_t i = 0; i < d.rows.size(); ++i)
        sample.rows.push_back(d.rows[pick(rng)]);
    } else {
      sample = d;
    }

    TreeParams tp;
    tp.max_depth = params.max_depth;
    tp.min_leaf = params.min_leaf;
    tp.features_per_split = params.features_per_split;
    tp.seed = tree_seed;
    model.trees.push_back(train_decision_tree(sample, tp));
  }
  return model;
}

Label predict_forest(const ForestModel& m, const FeatureVector& x) {
  int theft_votes = 0;
  for (const auto& tree : m.trees)
    if (predict_tree(*tree, x) == Label::Theft) ++theft_votes;
  const int normal_votes = static_cast<int>(m.trees.size()) - theft_votes;
  return theft_votes >= normal_votes ? Label::Theft : Label::Normal;
}

}  // namespace theft_trace
