#ifndef AUTHORLINK_NETWORK_H_
#define AUTHORLINK_NETWORK_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "authorlink/encoders.h"
#include "authorlink/rng.h"

namespace authorlink {

// Two-branch feedforward classifier. x1 and x2 go through their own ReLU
// stacks, the outputs are concatenated, passed through the merged ReLU
// stack and a softmax output layer. Inverted dropout hits the final hidden
// layer during training (and the last layer of each branch if asked).
struct ModelConfig {
  int x1_dim = 2 * kNameDim;
  int x2_dim = kTextDim;
  std::vector<int> branch1_hidden{256};
  std::vector<int> branch2_hidden{256};
  std::vector<int> merged_hidden{256, 128};
  int n_classes = 1;
  double dropout_rate = 0.5;
  bool dropout_on_branches = false;
  std::uint64_t seed = 0;

  // Throws InvalidArgument.
  void Validate() const;

  bool operator==(const ModelConfig &) const = default;
};

struct DenseLayer {
  Eigen::MatrixXd weight;  // out x in
  Eigen::VectorXd bias;    // out
};

// Parameters of one block model. Also used to hold gradients and Adam
// moments, which share the same shapes.
struct ModelParams {
  ModelConfig config;
  std::vector<DenseLayer> branch1;
  std::vector<DenseLayer> branch2;
  std::vector<DenseLayer> merged;
  DenseLayer output;

  std::size_t ParameterCount() const;

  // All weight and bias buffers in a fixed order: branch1, branch2, merged,
  // output; each layer weight (column-major) then bias.
  std::vector<std::span<double>> Tensors();
  std::vector<std::span<const double>> Tensors() const;

  ModelParams ZerosLike() const;
  void SetZero();
  ModelParams &operator+=(const ModelParams &other);
  ModelParams &operator*=(double factor);
  bool AllFinite() const;

  // Bitwise equality of every buffer plus equal configs.
  bool BitEqual(const ModelParams &other) const;
};

// Fan-in scaled normal weights (He for ReLU layers, LeCun for the output),
// zero biases, drawn from config.seed.
ModelParams InitModel(const ModelConfig &config);

enum class Mode { kTrain, kInfer };

// Column-per-sample batch of model inputs.
struct FeatureBatch {
  Eigen::MatrixXd x1;  // x1_dim x batch
  Eigen::MatrixXd x2;  // x2_dim x batch
};

FeatureBatch MakeBatch(std::span<const FeaturePair> pairs);

// Class probabilities, n_classes x batch. `rng` draws dropout masks and is
// only used in kTrain mode. Throws InvalidArgument on a dimension mismatch.
Eigen::MatrixXd ForwardBatch(const ModelParams &params,
                             const FeatureBatch &batch, Mode mode, Rng *rng);

Eigen::VectorXd Forward(const ModelParams &params, const FeaturePair &pair,
                        Mode mode, Rng *rng = nullptr);

// Floor applied to p[true_class] inside the log.
inline constexpr double kProbabilityFloor = 1e-12;

struct LossAndGrads {
  double loss = 0.0;
  ModelParams grads;
};

// Weighted cross-entropy, averaged over the batch:
//   loss = (1/B) sum_b -w_b log(max(p_b[y_b], floor)).
// Gradients are of that average, through the same dropout masks as the
// forward pass.
LossAndGrads BatchLossAndGradients(const ModelParams &params,
                                   const FeatureBatch &batch,
                                   std::span<const int> labels,
                                   std::span<const double> weights, Mode mode,
                                   Rng *rng);

LossAndGrads LossAndGradients(const ModelParams &params,
                              const FeaturePair &pair, int true_class,
                              double class_weight, Mode mode,
                              Rng *rng = nullptr);

// w_l = N / (L * n_l). Throws InvalidArgument on an empty list or zero count.
std::vector<double> ClassWeights(std::span<const std::size_t> counts);

}  // namespace authorlink

#endif  // AUTHORLINK_NETWORK_H_
