#include <cmath>
#include <stdexcept>

#include "theft_trace/classify.hpp"

namespace theft_trace {
namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

}  // namespace

std::array<double, kFeatureCount> Standardizer::apply(
    const FeatureVector& x) const {
  std::array<double, kFeatureCount> z{};
  for (int i = 0; i < kFeatureCount; ++i)
    z[i] = sd[i] > 0 ? (x[i] - mean[i]) / sd[i] : 0.0;
  return z;
}

Standardizer fit_standardizer(const LabeledDataset& d) {
  Standardizer s;
  const double n = static_cast<double>(d.rows.size());
  for (const auto& row : d.rows)
    for (int i = 0; i < kFeatureCount; ++i) s.mean[i] += row.features[i];
  for (int i = 0; i < kFeatureCount; ++i) s.mean[i] /= n;
  for (const auto& row : d.rows)
    for (int i = 0; i < kFeatureCount; ++i) {
      const double dev = row.features[i] - s.mean[i];
      s.sd[i] += dev * dev;
    }
  for (int i = 0; i < kFeatureCount; ++i) {
    s.sd[i] = std::sqrt(s.sd[i] / n);
    if (s.sd[i] < 1e-12) s.sd[i] = 0.0;  // constant feature
  }
  return s;
}

double logistic_loss_grad(const std::vector<std::array<double, kFeatureCount>>& xs,
                          const std::vector<int>& ys,
                          const std::array<double, kFeatureCount>& w, double b,
                          double l2, std::array<double, kFeatureCount>& grad_w,
                          double& grad_b) {
  const double n = static_cast<double>(xs.size());
  grad_w.fill(0.0);
  grad_b = 0.0;
  double loss = 0.0;
  for (std::size_t r = 0; r < xs.size(); ++r) {
    double z = b;
    for (int i = 0; i < kFeatureCount; ++i) z += w[i] * xs[r][i];
    const double p = sigmoid(z);
    const double y = ys[r];
    // numerically safe cross-entropy
    loss += -(y * std::log(std::max(p, 1e-12)) +
              (1.0 - y) * std::log(std::max(1.0 - p, 1e-12)));
    const double err = p - y;
    for (int i = 0; i < kFeatureCount; ++i) grad_w[i] += err * xs[r][i];
    grad_b += err;
  }
  loss /= n;
  grad_b /= n;
  for (int i = 0; i < kFeatureCount; ++i) {
    grad_w[i] = grad_w[i] / n + l2 * w[i];
    loss += 0.5 * l2 * w[i] * w[i];
  }
  return loss;
}

LogisticModel train_logistic(const LabeledDataset& d,
                             const LogisticParams& params) {
  if (d.rows.empty())
    throw std::invalid_argument("train_logistic: empty dataset");

  LogisticModel model;
  model.standardizer = fit_standardizer(d);

  std::vector<std::array<double, kFeatureCount>> xs;
  std::vector<int> ys;
  xs.reserve(d.rows.size());
  for (const auto& row : d.rows) {
    xs.push_back(model.standardizer.apply(row.features));
    ys.push_back(row.label == Label::Theft ? 1 : 0);
  }

  std::array<double, kFeatureCount> grad_w{};
  double grad_b = 0.0;
  for (int epoch = 0; epoch < params.epochs; ++epoch) {
    logistic_loss_grad(xs, ys, model.weights, model.bias, params.l2, grad_w,
                       grad_b);
    for (int i = 0; i < kFeatureCount; ++i)
      model.weights[i] -= params.lr * grad_w[i];
    model.bias -= params.lr * grad_b;
  }
  // constant features carry no signal
  for (int i = 0; i < kFeatureCount; ++i)
    if (model.standardizer.sd[i] == 0.0) model.weights[i] = 0.0;
  return model;
}

double predict_logistic_proba(const LogisticModel& m, const FeatureVector& x) {
  const auto z = m.standardizer.apply(x);
  double acc = m.bias;
  for (int i = 0; i < kFeatureCount; ++i) acc += m.weights[i] * z[i];
  return sigmoid(acc);
}

Label predict_logistic(const LogisticModel& m, const FeatureVector& x) {
  return predict_logistic_proba(m, x) >= 0.5 ? Label::Theft : Label::Normal;
}

}  // namespace theft_trace
