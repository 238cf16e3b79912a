#include "sfcem/policy_net.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sfcem/error.h"

namespace sfcem {

PolicyNet::PolicyNet(int input_dim, std::vector<int> outputs, double init_scale,
                     Rng& rng)
    : input_dim_(input_dim), outputs_(std::move(outputs)) {
  weights_.resize(static_cast<std::size_t>(input_dim_) * outputs_.size());
  for (double& w : weights_) w = rng.Uniform(-init_scale, init_scale);
  bias_.assign(outputs_.size(), 0.0);
}

PolicyNet::PolicyNet(int input_dim, std::vector<int> outputs,
                     std::vector<double> weights, std::vector<double> bias)
    : input_dim_(input_dim),
      outputs_(std::move(outputs)),
      weights_(std::move(weights)),
      bias_(std::move(bias)) {
  if (weights_.size() != static_cast<std::size_t>(input_dim_) * outputs_.size() ||
      bias_.size() != outputs_.size()) {
    throw ConfigError("policy: weight dimensions do not match outputs");
  }
}

std::vector<double> PolicyNet::Logits(std::span<const double> state) const {
  std::vector<double> z(bias_);
  for (std::size_t j = 0; j < outputs_.size(); ++j) {
    const double* row = &weights_[j * input_dim_];
    double acc = 0;
    for (int i = 0; i < input_dim_; ++i) acc += row[i] * state[i];
    z[j] += acc;
  }
  return z;
}

std::vector<double> PolicyNet::Probabilities(std::span<const double> state,
                                             const std::vector<bool>& active) const {
  const std::vector<double> z = Logits(state);
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < z.size(); ++j) {
    if (active[j]) top = std::max(top, z[j]);
  }
  std::vector<double> p(z.size(), 0.0);
  double sum = 0;
  for (std::size_t j = 0; j < z.size(); ++j) {
    if (!active[j]) continue;
    p[j] = std::exp(z[j] - top);
    sum += p[j];
  }
  if (sum > 0) {
    for (double& v : p) v /= sum;
  }
  return p;
}

double PolicyNet::Loss(std::span<const double> state, const std::vector<bool>& active,
                       int chosen, double target) const {
  const double err = target - Probabilities(state, active)[chosen];
  return 0.5 * err * err;
}

void PolicyNet::Gradient(std::span<const double> state,
                         const std::vector<bool>& active, int chosen,
                         double target, std::vector<double>& d_weights,
                         std::vector<double>& d_bias) const {
  const std::vector<double> p = Probabilities(state, active);
  const double err = target - p[chosen];
  d_weights.assign(weights_.size(), 0.0);
  d_bias.assign(bias_.size(), 0.0);
  // dp_a/dz_k = p_a (delta_ak - p_k); dL/dz_k = -err * dp_a/dz_k.
  for (std::size_t k = 0; k < outputs_.size(); ++k) {
    if (!active[k]) continue;
    const double dz = -err * p[chosen] *
                      ((static_cast<int>(k) == chosen ? 1.0 : 0.0) - p[k]);
    d_bias[k] = dz;
    double* row = &d_weights[k * input_dim_];
    for (int i = 0; i < input_dim_; ++i) row[i] = dz * state[i];
  }
}

double PolicyNet::TdUpdate(std::span<const double> state,
                           const std::vector<bool>& active, int chosen,
                           double target, double learning_rate) {
  const std::vector<double> p = Probabilities(state, active);
  const double err = target - p[chosen];
  for (std::size_t k = 0; k < outputs_.size(); ++k) {
    if (!active[k]) continue;
    const double dz = -err * p[chosen] *
                      ((static_cast<int>(k) == chosen ? 1.0 : 0.0) - p[k]);
    if (dz == 0) continue;
    bias_[k] -= learning_rate * dz;
    double* row = &weights_[k * input_dim_];
    for (int i = 0; i < input_dim_; ++i) row[i] -= learning_rate * dz * state[i];
  }
  return err;
}

}  // namespace sfcem
