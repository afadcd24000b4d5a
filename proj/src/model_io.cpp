#include <json.hpp>
#include <stdexcept>

#include "theft_trace/classify.hpp"

namespace theft_trace {
namespace {

using json = nlohmann::ordered_json;

constexpr int kModelFormatVersion = 1;

json tree_to_node(const TreeNode& n) {
  json j;
  if (n.is_leaf()) {
    j["leaf"] = true;
    j["n_normal"] = n.n_normal;
    j["n_theft"] = n.n_theft;
  } else {
    j["leaf"] = false;
    j["feature"] = n.feature;
    j["threshold"] = n.threshold;
    j["n_normal"] = n.n_normal;
    j["n_theft"] = n.n_theft;
    j["left"] = tree_to_node(*n.left);
    j["right"] = tree_to_node(*n.right);
  }
  return j;
}

std::unique_ptr<TreeNode> node_from_json(const json& j) {
  auto node = std::make_unique<TreeNode>();
  node->n_normal = j.at("n_normal").get<int>();
  node->n_theft = j.at("n_theft").get<int>();
  if (!j.at("leaf").get<bool>()) {
    node->feature = j.at("feature").get<int>();
    node->threshold = j.at("threshold").get<double>();
    node->left = node_from_json(j.at("left"));
    node->right = node_from_json(j.at("right"));
  }
  return node;
}

void check_version(const json& j, const char* kind) {
  if (j.at("format_version").get<int>() != kModelFormatVersion ||
      j.at("model").get<std::string>() != kind)
    throw std::runtime_error("unsupported model document");
}

json standardizer_to_json(const Standardizer& s) {
  json j;
  j["mean"] = s.mean;
  j["sd"] = s.sd;
  return j;
}

Standardizer standardizer_from_json(const json& j) {
  Standardizer s;
  auto mean = j.at("mean").get<std::vector<double>>();
  auto sd = j.at("sd").get<std::vector<double>>();
  if (mean.size() != kFeatureCount || sd.size() != kFeatureCount)
    throw std::runtime_error("standardizer size mismatch");
  std::copy(mean.begin(), mean.end(), s.mean.begin());
  std::copy(sd.begin(), sd.end(), s.sd.begin());
  return s;
}

}  // namespace

std::string forest_to_json(const ForestModel& m) {
  json j;
  j["format_version"] = kModelFormatVersion;
  j["model"] = "forest";
  j["params"] = {{"n_trees", m.params.n_trees},
                 {"features_per_split", m.params.features_per_split},
                 {"max_depth", m.params.max_depth},
                 {"min_leaf", m.params.min_leaf},
                 {"seed", m.params.seed},
                 {"bootstrap", m.params.bootstrap}};
  j["trees"] = json::array();
  for (const auto& t : m.trees) j["trees"].push_back(tree_to_node(*t));
  return j.dump();
}

ForestModel forest_from_json(const std::string& text) {
  const json j = json::parse(text);
  check_version(j, "forest");
  ForestModel m;
  const auto& p = j.at("params");
  m.params.n_trees = p.at("n_trees").get<int>();
  m.params.features_per_split = p.at("features_per_split").get<int>();
  m.params.max_depth = p.at("max_depth").get<int>();
  m.params.min_leaf = p.at("min_leaf").get<int>();
  m.params.seed = p.at("seed").get<std::uint64_t>();
  m.params.bootstrap = p.at("bootstrap").get<bool>();
  for (const auto& t : j.at("trees")) m.trees.push_back(node_from_json(t));
  return m;
}

std::string logistic_to_json(const LogisticModel& m) {
  json j;
  j["format_version"] = kModelFormatVersion;
  j["model"] = "logistic";
  j["weights"] = m.weights;
  j["bias"] = m.bias;
  j["standardizer"] = standardizer_to_json(m.standardizer);
  return j.dump();
}

LogisticModel logistic_from_json(const std::string& text) {
  const json j = json::parse(text);
  check_version(j, "logistic");
  LogisticModel m;
  auto w = j.at("weights").get<std::vector<double>>();
  if (w.size() != kFeatureCount)
    throw std::runtime_error("logistic weight size mismatch");
  std::copy(w.begin(), w.end(), m.weights.begin());
  m.bias = j.at("bias").get<double>();
  m.standardizer = standardizer_from_json(j.at("standardizer"));
  return m;
}

std::string mlp_to_json(const MlpModel& m) {
  json j;
  j["format_version"] = kModelFormatVersion;
  j["model"] = "mlp";
  j["hidden"] = m.hidden;
  j["w1"] = m.w1;
  j["b1"] = m.b1;
  j["w2"] = m.w2;
  j["b2"] = m.b2;
  j["standardizer"] = standardizer_to_json(m.standardizer);
  return j.dump();
}

MlpModel mlp_from_json(const std::string& text) {
  const json j = json::parse(text);
  check_version(j, "mlp");
  MlpModel m;
  m.hidden = j.at("hidden").get<int>();
  m.w1 = j.at("w1").get<std::vector<double>>();
  m.b1 = j.at("b1").get<std::vector<double>>();
  m.w2 = j.at("w2").get<std::vector<double>>();
  m.b2 = j.at("b2").get<double>();
  if (static_cast<int>(m.w1.size()) != m.hidden * kFeatureCount ||
      static_cast<int>(m.b1.size()) != m.hidden ||
      static_cast<int>(m.w2.size()) != m.hidden)
    throw std::runtime_error("mlp shape mismatch");
  m.standardizer = standardizer_from_json(j.at("standardizer"));
  return m;
}

}  // namespace theft_trace
