#ifndef SFCEM_POLICY_NET_H_
#define SFCEM_POLICY_NET_H_

#include <span>
#include <vector>

#include "sfcem/rng.h"

namespace sfcem {

// Single fully-connected layer with a masked softmax: one per VNF
// instance. Output j corresponds to host-slot label outputs()[j]; inactive
// outputs get probability 0 and the rest sum to 1. Softmax outputs double
// as Q-scores for argmax and Bellman targets.
class PolicyNet {
 public:
  PolicyNet() = default;
  // Weights uniform in [-init_scale, init_scale], biases zero.
  PolicyNet(int input_dim, std::vector<int> outputs, double init_scale, Rng& rng);
  PolicyNet(int input_dim, std::vector<int> outputs, std::vector<double> weights,
            std::vector<double> bias);

  int input_dim() const { return input_dim_; }
  int output_count() const { return static_cast<int>(outputs_.size()); }
  const std::vector<int>& outputs() const { return outputs_; }
  // Row-major, output_count x input_dim.
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<double>& bias() const { return bias_; }
  std::vector<double>& mutable_weights() { return weights_; }
  std::vector<double>& mutable_bias() { return bias_; }

  std::vector<double> Logits(std::span<const double> state) const;
  std::vector<double> Probabilities(std::span<const double> state,
                                    const std::vector<bool>& active) const;

  // Squared TD loss 0.5 * (target - p_chosen)^2.
  double Loss(std::span<const double> state, const std::vector<bool>& active,
              int chosen, double target) const;
  // d Loss / d weights and d Loss / d bias, with the target held fixed.
  void Gradient(std::span<const double> state, const std::vector<bool>& active,
                int chosen, double target, std::vector<double>& d_weights,
                std::vector<double>& d_bias) const;
  // One gradient-descent step on Loss. Returns the TD error
  // (target - p_chosen) measured before the step.
  double TdUpdate(std::span<const double> state, const std::vector<bool>& active,
                  int chosen, double target, double learning_rate);

  bool operator==(const PolicyNet&) const = default;

 private:
  int input_dim_ = 0;
  std::vector<int> outputs_;
  std::vector<double> weights_;
  std::vector<double> bias_;
};

}  // namespace sfcem

#endif  // SFCEM_POLICY_NET_H_
