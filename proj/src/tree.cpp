#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

#include "theft_trace/classify.hpp"

namespace theft_trace {
namespace {

double gini(int n_normal, int n_theft) {
  const double n = n_normal + n_theft;
  if (n == 0) return 0.0;
  const double p0 = n_normal / n;
  const double p1 = n_theft / n;
  return 1.0 - p0 * p0 - p1 * p1;
}

struct SplitChoice {
  int feature = -1;
  double threshold = 0.0;
  double impurity = 0.0;  // weighted child impurity
};

class TreeBuilder {
 public:
  TreeBuilder(const LabeledDataset& d, const TreeParams& params)
      : d_(d), params_(params), rng_(params.seed) {}

  std::unique_ptr<TreeNode> build() {
    std::vector<int> idx(d_.rows.size());
    std::iota(idx.begin(), idx.end(), 0);
    return grow(idx, 0);
  }

 private:
  std::unique_ptr<TreeNode> grow(const std::vector<int>& idx, int depth) {
    auto node = std::make_unique<TreeNode>();
    for (int i : idx) {
      if (d_.rows[i].label == Label::Theft) ++node->n_theft;
      else ++node->n_normal;
    }
    if (node->n_normal == 0 || node->n_theft == 0) return node;
    if (params_.max_depth >= 0 && depth >= params_.max_depth) return node;
    if (static_cast<int>(idx.size()) < 2 * params_.min_leaf) return node;

    const auto choice = best_split(idx, *node);
    if (choice.feature < 0) return node;

    std::vector<int> left_idx, right_idx;
    for (int i : idx) {
      if (d_.rows[i].features[choice.feature] <= choice.threshold)
        left_idx.push_back(i);
      else
        right_idx.push_back(i);
    }
    if (static_cast<int>(left_idx.size()) < params_.min_leaf ||
        static_cast<int>(right_idx.size()) < params_.min_leaf)
      return node;

    node->feature = choice.feature;
    node->threshold = choice.threshold;
    node->left = grow(left_idx, depth + 1);
    node->right = grow(right_idx, depth + 1);
    return node;
  }

  SplitChoice best_split(const std::vector<int>& idx, const TreeNode& node) {
    std::vector<int> feats(kFeatureCount);
    std::iota(feats.begin(), feats.end(), 0);
    if (params_.features_per_split > 0 &&
        params_.features_per_split < kFeatureCount) {
      std::shuffle(feats.begin(), feats.end(), rng_);
      feats.resize(params_.features_per_split);
      std::sort(feats.begin(), feats.end());  // deterministic scan order
    }

    const double parent = gini(node.n_normal, node.n_theft);
    SplitChoice best;
    best.impurity = parent;
    const double n_total = static_cast<double>(idx.size());

    for (int f : feats) {
      // sort values of this feature, count classes below each midpoint
      std::vector<std::pair<double, int>> vals;  // (value, is_theft)
      vals.reserve(idx.size());
      for (int i : idx)
        vals.emplace_back(d_.rows[i].features[f],
                          d_.rows[i].label == Label::Theft ? 1 : 0);
      std::sort(vals.begin(), vals.end());

      int left_normal = 0, left_theft = 0;
      for (std::size_t i = 0; i + 1 < vals.size(); ++i) {
        if (vals[i].second) ++left_theft;
        else ++left_normal;
        if (vals[i].first == vals[i + 1].first) continue;
        const double thr = vals[i].first + (vals[i + 1].first - vals[i].first) / 2.0;
        const int right_normal = node.n_normal - left_normal;
        const int right_theft = node.n_theft - left_theft;
        const double n_left = left_normal + left_theft;
        const double n_right = right_normal + right_theft;
        const double impurity =
            (n_left / n_total) * gini(left_normal, left_theft) +
            (n_right / n_total) * gini(right_normal, right_theft);
        if (impurity < best.impurity - 1e-12) {
          best = {f, thr, impurity};
        }
      }
    }
    return best;
  }

  const LabeledDataset& d_;
  TreeParams params_;
  std::mt19937_64 rng_;
};

}  // namespace

std::unique_ptr<TreeNode> train_decision_tree(const LabeledDataset& d,
                                              const TreeParams& params) {
  if (d.rows.empty())
    throw std::invalid_argument("train_decision_tree: empty dataset");
  return TreeBuilder(d, params).build();
}

Label predict_tree(const TreeNode& root, const FeatureVector& x) {
  const TreeNode* node = &root;
  while (!node->is_leaf())
    node = x[node->feature] <= node->threshold ? node->left.get()
                                               : node->right.get();
  // leaf ties predict theft (fail-safe)
  return node->n_theft >= node->n_normal ? Label::Theft : Label::Normal;
}

}  // namespace theft_trace
