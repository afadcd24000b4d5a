#include <doctest.h>

#include <cmath>
#include <random>

#include "theft_trace/classify.hpp"

using namespace theft_trace;

namespace {

// two gaussian blobs separated on a couple of feature axes
LabeledDataset blob_dataset(int n_per_class, std::uint64_t seed,
                            double separation = 4.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  LabeledDataset d;
  for (int i = 0; i < 2 * n_per_class; ++i) {
    LabeledRow r;
    r.label = i < n_per_class ? Label::Theft : Label::Normal;
    const double shift = r.label == Label::Theft ? separation : 0.0;
    for (int j = 0; j < kFeatureCount; ++j) r.features[j] = noise(rng);
    r.features[2] += shift;
    r.features[7] += shift;
    r.session_index = i;
    d.rows.push_back(r);
  }
  return d;
}

}  // namespace

TEST_CASE("decision tree separates a clean split and is deterministic") {
  const auto d = blob_dataset(60, 1);
  TreeParams p;
  const auto tree = train_decision_tree(d, p);
  int errors = 0;
  for (const auto& r : d.rows)
    if (predict_tree(*tree, r.features) != r.label) ++errors;
  CHECK(errors == 0);  // unlimited depth fits the training set
}

TEST_CASE("tree respects max_depth and min_leaf") {
  const auto d = blob_dataset(60, 2);
  TreeParams p;
  p.max_depth = 0;
  const auto stump = train_decision_tree(d, p);
  CHECK(stump->is_leaf());

  p.max_depth = -1;
  p.min_leaf = 200;  // larger than any split could produce
  const auto leafy = train_decision_tree(d, p);
  CHECK(leafy->is_leaf());
}

TEST_CASE("pure-leaf tie predicts theft") {
  TreeNode leaf;
  leaf.n_normal = 3;
  leaf.n_theft = 3;
  FeatureVector x;
  CHECK(predict_tree(leaf, x) == Label::Theft);
}

TEST_CASE("forest training is deterministic per seed") {
  const auto d = blob_dataset(40, 3);
  ForestParams p;
  p.n_trees = 15;
  const auto m1 = train_random_forest(d, p);
  const auto m2 = train_random_forest(d, p);
  CHECK(forest_to_json(m1) == forest_to_json(m2));
  p.seed = 99;
  const auto m3 = train_random_forest(d, p);
  CHECK(forest_to_json(m1) != forest_to_json(m3));
}

TEST_CASE("forest beats noise on held-out blobs") {
  const auto train = blob_dataset(80, 4);
  const auto test = blob_dataset(80, 5);
  ForestParams p;
  p.n_trees = 25;
  const auto m = train_random_forest(train, p);
  int correct = 0;
  for (const auto& r : test.rows)
    if (predict_forest(m, r.features) == r.label) ++correct;
  CHECK(correct >= static_cast<int>(0.9 * test.rows.size()));
}

TEST_CASE("standardizer centers and scales; constant features flagged") {
  LabeledDataset d;
  for (int i = 0; i < 4; ++i) {
    LabeledRow r;
    r.features[0] = i;      // varying
    r.features[1] = 42.0;   // constant
    r.label = i % 2 ? Label::Theft : Label::Normal;
    d.rows.push_back(r);
  }
  const auto st = fit_standardizer(d);
  CHECK(st.mean[0] == doctest::Approx(1.5));
  CHECK(st.sd[1] == 0.0);  // constant marker
  FeatureVector x;
  x[0] = 1.5;
  x[1] = 42.0;
  const auto z = st.apply(x);
  CHECK(z[0] == doctest::Approx(0.0));
  CHECK(z[1] == 0.0);  // constant features map to 0, not NaN
}

TEST_CASE("logistic learns a separable problem") {
  const auto d = blob_dataset(80, 6);
  LogisticParams p;
  const auto m = train_logistic(d, p);
  int correct = 0;
  for (const auto& r : d.rows)
    if (predict_logistic(m, r.features) == r.label) ++correct;
  CHECK(correct >= static_cast<int>(0.95 * d.rows.size()));
  // probabilities are calibrated to the right side of 0.5
  CHECK(predict_logistic_proba(m, d.rows[0].features) > 0.5);
}

TEST_CASE("logistic gradient matches central finite differences") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> noise(0.0, 1.0);
  const int n = 30;
  std::vector<std::array<double, kFeatureCount>> xs(n);
  std::vector<int> ys(n);
  for (int i = 0; i < n; ++i) {
    for (auto& v : xs[i]) v = noise(rng);
    ys[i] = i % 2;
  }
  for (int trial = 0; trial < 5; ++trial) {
    std::array<double, kFeatureCount> w;
    for (auto& v : w) v = 0.5 * noise(rng);
    double b = 0.5 * noise(rng);
    std::array<double, kFeatureCount> grad_w;
    double grad_b;
    logistic_loss_grad(xs, ys, w, b, 1e-3, grad_w, grad_b);
    const double h = 1e-6;
    for (int j = 0; j < kFeatureCount; j += 4) {
      auto wp = w, wm = w;
      wp[j] += h;
      wm[j] -= h;
      std::array<double, kFeatureCount> dummy;
      double dummy_b;
      const double lp = logistic_loss_grad(xs, ys, wp, b, 1e-3, dummy, dummy_b);
      const double lm = logistic_loss_grad(xs, ys, wm, b, 1e-3, dummy, dummy_b);
      const double fd = (lp - lm) / (2 * h);
      CHECK(grad_w[j] == doctest::Approx(fd).epsilon(1e-4));
    }
  }
}

TEST_CASE("mlp gradient matches central finite differences") {
  const auto d = blob_dataset(15, 8);
  std::vector<std::array<double, kFeatureCount>> xs;
  std::vector<int> ys;
  for (const auto& r : d.rows) {
    std::array<double, kFeatureCount> x;
    for (int j = 0; j < kFeatureCount; ++j) x[j] = r.features[j];
    xs.push_back(x);
    ys.push_back(r.label == Label::Theft ? 1 : 0);
  }
  MlpModel m;
  m.hidden = 4;
  std::mt19937_64 rng(9);
  std::normal_distribution<double> noise(0.0, 0.4);
  m.w1.resize(m.hidden * kFeatureCount);
  m.b1.resize(m.hidden);
  m.w2.resize(m.hidden);
  for (auto& v : m.w1) v = noise(rng);
  for (auto& v : m.b1) v = noise(rng);
  for (auto& v : m.w2) v = noise(rng);
  m.b2 = noise(rng);
  for (int j = 0; j < kFeatureCount; ++j) m.standardizer.sd[j] = 1.0;

  std::vector<double> grad;
  mlp_loss_grad(m, xs, ys, 1e-3, grad);
  REQUIRE(static_cast<int>(grad.size()) == m.n_params());
  auto theta = m.flatten();
  const double h = 1e-6;
  for (std::size_t j = 0; j < theta.size(); j += 7) {
    auto tp = theta, tm = theta;
    tp[j] += h;
    tm[j] -= h;
    MlpModel mp = m, mm = m;
    mp.unflatten(tp);
    mm.unflatten(tm);
    std::vector<double> dummy;
    const double lp = mlp_loss_grad(mp, xs, ys, 1e-3, dummy);
    const double lm = mlp_loss_grad(mm, xs, ys, 1e-3, dummy);
    const double fd = (lp - lm) / (2 * h);
    if (std::abs(fd) > 1e-8)
      CHECK(grad[j] == doctest::Approx(fd).epsilon(1e-3));
  }
}

TEST_CASE("mlp trains a separable problem") {
  const auto d = blob_dataset(60, 10);
  MlpParams p;
  const auto m = train_mlp(d, p);
  int correct = 0;
  for (const auto& r : d.rows)
    if (predict_mlp(m, r.features) == r.label) ++correct;
  CHECK(correct >= static_cast<int>(0.9 * d.rows.size()));
}

TEST_CASE("metrics: exact arithmetic and undefined denominators") {
  Confusion c{7, 3, 80, 10};
  const auto m = compute_metrics(c);
  CHECK(*m.precision == 0.7);
  CHECK(*m.recall == doctest::Approx(7.0 / 17.0));
  CHECK(*m.accuracy == 0.87);

  const auto no_pred = compute_metrics({0, 0, 5, 5});
  CHECK_FALSE(no_pred.precision.has_value());
  CHECK(no_pred.recall.has_value());

  const auto no_pos = compute_metrics({0, 2, 8, 0});
  CHECK_FALSE(no_pos.recall.has_value());

  const auto empty = compute_metrics({0, 0, 0, 0});
  CHECK_FALSE(empty.accuracy.has_value());
}

TEST_CASE("cross_validate predicts every row exactly once") {
  const auto d = blob_dataset(30, 11);
  ModelSpec spec;
  spec.kind = ModelKind::Tree;
  const auto r = cross_validate(d, spec, 10, 0);
  CHECK(r.confusion.total() == static_cast<std::int64_t>(d.rows.size()));
  CHECK(r.folds.size() == 10);
  std::int64_t fold_total = 0;
  for (const auto& f : r.folds) fold_total += f.confusion.total();
  CHECK(fold_total == r.confusion.total());
  // stratification: positives spread across folds
  for (const auto& f : r.folds) CHECK(f.confusion.tp + f.confusion.fn >= 2);
  // determinism
  const auto r2 = cross_validate(d, spec, 10, 0);
  CHECK(r2.confusion.tp == r.confusion.tp);
  CHECK(r2.confusion.fp == r.confusion.fp);
}

TEST_CASE("cross_validate rejects bad k") {
  const auto d = blob_dataset(5, 12);
  ModelSpec spec;
  CHECK_THROWS_AS(cross_validate(d, spec, 1, 0), std::invalid_argument);
}

TEST_CASE("per-type evaluation buckets by session type, skips empty ones") {
  auto d = blob_dataset(20, 13);
  for (std::size_t i = 0; i < d.rows.size(); ++i)
    d.rows[i].session_type = i % 2 ? SessionType::Type1 : SessionType::Type2;
  ModelSpec spec;
  spec.kind = ModelKind::Tree;
  const auto r = per_type_evaluation(d, spec, 5, 0);
  CHECK(r.rows.size() == 2);
  CHECK(r.skipped.size() == 2);  // Type3/Type4 had no rows at all
  for (const auto& row : r.rows)
    CHECK(row.report.confusion.total() == row.n_theft + row.n_normal);
}

TEST_CASE("model io: forest round trip preserves predictions") {
  const auto d = blob_dataset(30, 14);
  ForestParams p;
  p.n_trees = 9;
  const auto m = train_random_forest(d, p);
  const auto m2 = forest_from_json(forest_to_json(m));
  CHECK(forest_to_json(m2) == forest_to_json(m));
  for (const auto& r : d.rows)
    CHECK(predict_forest(m2, r.features) == predict_forest(m, r.features));
}

TEST_CASE("model io: logistic and mlp round trips") {
  const auto d = blob_dataset(30, 15);
  const auto lm = train_logistic(d, {});
  const auto lm2 = logistic_from_json(logistic_to_json(lm));
  const auto mm = train_mlp(d, {});
  const auto mm2 = mlp_from_json(mlp_to_json(mm));
  for (const auto& r : d.rows) {
    CHECK(predict_logistic_proba(lm2, r.features) ==
          doctest::Approx(predict_logistic_proba(lm, r.features)));
    CHECK(predict_mlp_proba(mm2, r.features) ==
          doctest::Approx(predict_mlp_proba(mm, r.features)));
  }
}

TEST_CASE("model io: corrupt documents are rejected") {
  CHECK_THROWS(forest_from_json("{}"));
  CHECK_THROWS(logistic_from_json("not json"));
  CHECK_THROWS(mlp_from_json(R"({"format_version":99})"));
}

TEST_CASE("model kind names round trip") {
  for (ModelKind k : {ModelKind::Tree, ModelKind::Forest, ModelKind::Logistic,
                      ModelKind::Mlp})
    CHECK(model_kind_from_name(model_kind_name(k)) == k);
  CHECK_FALSE(model_kind_from_name("svm").has_value());
}
