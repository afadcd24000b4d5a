#include <cmath>
#include <random>
#include <stdexcept>

#include "theft_trace/classify.hpp"

namespace theft_trace {
namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

double forward(const MlpModel& m, const std::array<double, kFeatureCount>& x,
               std::vector<double>* hidden_out) {
  std::vector<double> h(m.hidden);
  for (int j = 0; j < m.hidden; ++j) {
    double z = m.b1[j];
    for (int i = 0; i < kFeatureCount; ++i)
      z += m.w1[j * kFeatureCount + i] * x[i];
    h[j] = z > 0 ? z : 0.0;  // ReLU
  }
  double z2 = m.b2;
  for (int j = 0; j < m.hidden; ++j) z2 += m.w2[j] * h[j];
  if (hidden_out) *hidden_out = std::move(h);
  return sigmoid(z2);
}

}  // namespace

std::vector<double> MlpModel::flatten() const {
  std::vector<double> theta;
  theta.reserve(n_params());
  theta.insert(theta.end(), w1.begin(), w1.end());
  theta.insert(theta.end(), b1.begin(), b1.end());
  theta.insert(theta.end(), w2.begin(), w2.end());
  theta.push_back(b2);
  return theta;
}

void MlpModel::unflatten(const std::vector<double>& theta) {
  if (static_cast<int>(theta.size()) != n_params())
    throw std::invalid_argument("MlpModel::unflatten: size mismatch");
  auto it = theta.begin();
  w1.assign(it, it + hidden * kFeatureCount);
  it += hidden * kFeatureCount;
  b1.assign(it, it + hidden);
  it += hidden;
  w2.assign(it, it + hidden);
  it += hidden;
  b2 = *it;
}

double mlp_loss_grad(const MlpModel& m,
                     const std::vector<std::array<double, kFeatureCount>>& xs,
                     const std::vector<int>& ys, double l2,
                     std::vector<double>& grad) {
  const double n = static_cast<double>(xs.size());
  grad.assign(m.n_params(), 0.0);
  double* gw1 = grad.data();
  double* gb1 = gw1 + m.hidden * kFeatureCount;
  double* gw2 = gb1 + m.hidden;
  double* gb2 = gw2 + m.hidden;

  double loss = 0.0;
  std::vector<double> h;
  for (std::size_t r = 0; r < xs.size(); ++r) {
    const double p = forward(m, xs[r], &h);
    const double y = ys[r];
    loss += -(y * std::log(std::max(p, 1e-12)) +
              (1.0 - y) * std::log(std::max(1.0 - p, 1e-12)));
    const double d2 = (p - y) / n;  // dL/dz2
    *gb2 += d2;
    for (int j = 0; j < m.hidden; ++j) {
      gw2[j] += d2 * h[j];
      if (h[j] > 0) {
        const double d1 = d2 * m.w2[j];
        gb1[j] += d1;
        for (int i = 0; i < kFeatureCount; ++i)
          gw1[j * kFeatureCount + i] += d1 * xs[r][i];
      }
    }
  }
  loss /= n;
  // L2 on weights only
  for (int j = 0; j < m.hidden * kFeatureCount; ++j) {
    gw1[j] += l2 * m.w1[j];
    loss += 0.5 * l2 * m.w1[j] * m.w1[j];
  }
  for (int j = 0; j < m.hidden; ++j) {
    gw2[j] += l2 * m.w2[j];
    loss += 0.5 * l2 * m.w2[j] * m.w2[j];
  }
  return loss;
}

MlpModel train_mlp(const LabeledDataset& d, const MlpParams& params) {
  if (d.rows.empty()) throw std::invalid_argument("train_mlp: empty dataset");

  MlpModel model;
  model.hidden = params.hidden;
  model.standardizer = fit_standardizer(d);
  std::mt19937_64 rng(params.seed);
  std::normal_distribution<double> init(0.0, 0.3);
  model.w1.resize(params.hidden * kFeatureCount);
  model.b1.assign(params.hidden, 0.0);
  model.w2.resize(params.hidden);
  for (auto& w : model.w1) w = init(rng);
  for (auto& w : model.w2) w = init(rng);

  std::vector<std::array<double, kFeatureCount>> xs;
  std::vector<int> ys;
  xs.reserve(d.rows.size());
  for (const auto& row : d.rows) {
    xs.push_back(model.standardizer.apply(row.features));
    ys.push_back(row.label == Label::Theft ? 1 : 0);
  }

  std::vector<double> grad, theta = model.flatten();
  for (int epoch = 0; epoch < params.epochs; ++epoch) {
    mlp_loss_grad(model, xs, ys, params.l2, grad);
    for (std::size_t i = 0; i < theta.size(); ++i)
      theta[i] -= params.lr * grad[i];
    model.unflatten(theta);
  }
  return model;
}

double predict_mlp_proba(const MlpModel& m, const FeatureVector& x) {
  return forward(m, m.standardizer.apply(x), nullptr);
}

Label predict_mlp(const MlpModel& m, const FeatureVector& x) {
  return predict_mlp_proba(m, x) >= 0.5 ? Label::Theft : Label::Normal;
}

}  // namespace theft_trace
