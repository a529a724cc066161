#include "authorlink/network.h"

#include <cmath>
#include <cstring>

#include "authorlink/error.h"

namespace authorlink {
namespace {

using Eigen::MatrixXd;

void CheckWidths(const std::vector<int> &widths, const char *what) {
  for (int w : widths) {
    if (w < 1) {
      throw InvalidArgument(std::string(what) + " widths must be >= 1");
    }
  }
}

DenseLayer MakeLayer(int in, int out, double stddev, Rng &rng) {
  DenseLayer layer;
  layer.weight.resize(out, in);
  double *w = layer.weight.data();
  for (Eigen::Index i = 0; i < layer.weight.size(); ++i) {
    w[i] = stddev * rng.Normal();
  }
  layer.bias = Eigen::VectorXd::Zero(out);
  return layer;
}

int BuildStack(std::vector<DenseLayer> &stack, int in,
               const std::vector<int> &widths, Rng &rng) {
  for (int width : widths) {
    stack.push_back(MakeLayer(in, width, std::sqrt(2.0 / in), rng));
    in = width;
  }
  return in;
}

template <typename F>
void ForEachLayer(ModelParams &params, F &&f) {
  for (DenseLayer &l : params.branch1) f(l);
  for (DenseLayer &l : params.branch2) f(l);
  for (DenseLayer &l : params.merged) f(l);
  f(params.output);
}

template <typename F>
void ForEachLayer(const ModelParams &params, F &&f) {
  for (const DenseLayer &l : params.branch1) f(l);
  for (const DenseLayer &l : params.branch2) f(l);
  for (const DenseLayer &l : params.merged) f(l);
  f(params.output);
}

// Activations of one ReLU stack; acts[0] is the stack input, acts[k + 1] the
// output of layer k (before any dropout).
using Activations = std::vector<MatrixXd>;

void RunStack(const std::vector<DenseLayer> &stack, const MatrixXd &input,
              Activations &acts) {
  acts.clear();
  acts.reserve(stack.size() + 1);
  acts.push_back(input);
  for (const DenseLayer &layer : stack) {
    MatrixXd z = layer.weight * acts.back();
    z.colwise() += layer.bias;
    acts.push_back(z.cwiseMax(0.0));
  }
}

// Backpropagates `grad` (w.r.t. the stack output) down the stack, filling
// `grads`; returns the gradient w.r.t. the stack input.
MatrixXd BackStack(const std::vector<DenseLayer> &stack,
                   const Activations &acts, MatrixXd grad,
                   std::vector<DenseLayer> &grads) {
  for (std::size_t k = stack.size(); k-- > 0;) {
    grad.array() *= (acts[k + 1].array() > 0.0).cast<double>();
    grads[k].weight.noalias() = grad * acts[k].transpose();
    grads[k].bias = grad.rowwise().sum();
    grad = stack[k].weight.transpose() * grad;
  }
  return grad;
}

MatrixXd DropoutMask(Eigen::Index rows, Eigen::Index cols, double rate,
                     Rng &rng) {
  MatrixXd mask(rows, cols);
  const double keep = 1.0 - rate;
  const double scale = 1.0 / keep;
  double *m = mask.data();
  for (Eigen::Index i = 0; i < mask.size(); ++i) {
    m[i] = rng.Bernoulli(keep) ? scale : 0.0;
  }
  return mask;
}

struct ForwardTrace {
  Activations branch1;
  Activations branch2;
  Activations merged;
  MatrixXd mask1, mask2, mask_last;  // empty when unused
  MatrixXd last_hidden;              // output-layer input, after dropout
  MatrixXd probs;
};

void Softmax(MatrixXd &logits) {
  for (Eigen::Index c = 0; c < logits.cols(); ++c) {
    auto col = logits.col(c);
    col.array() -= col.maxCoeff();
    col = col.array().exp().matrix();
    col /= col.sum();
  }
}

void RunForward(const ModelParams &params, const FeatureBatch &batch,
                Mode mode, Rng *rng, ForwardTrace &trace) {
  const ModelConfig &config = params.config;
  if (batch.x1.rows() != config.x1_dim || batch.x2.rows() != config.x2_dim ||
      batch.x1.cols() != batch.x2.cols()) {
    throw InvalidArgument(
        "feature dimensions " + std::to_string(batch.x1.rows()) + "/" +
        std::to_string(batch.x2.rows()) + " do not match model inputs " +
        std::to_string(config.x1_dim) + "/" + std::to_string(config.x2_dim));
  }
  const bool train = mode == Mode::kTrain && config.dropout_rate > 0.0;
  if (train && rng == nullptr) {
    throw InvalidArgument("training-mode forward pass needs an rng");
  }
  const Eigen::Index cols = batch.x1.cols();

  RunStack(params.branch1, batch.x1, trace.branch1);
  RunStack(params.branch2, batch.x2, trace.branch2);
  MatrixXd h1 = trace.branch1.back();
  MatrixXd h2 = trace.branch2.back();
  trace.mask1.resize(0, 0);
  trace.mask2.resize(0, 0);
  trace.mask_last.resize(0, 0);
  if (train && config.dropout_on_branches) {
    if (!params.branch1.empty()) {
      trace.mask1 = DropoutMask(h1.rows(), cols, config.dropout_rate, *rng);
      h1.array() *= trace.mask1.array();
    }
    if (!params.branch2.empty()) {
      trace.mask2 = DropoutMask(h2.rows(), cols, config.dropout_rate, *rng);
      h2.array() *= trace.mask2.array();
    }
  }
  MatrixXd joined(h1.rows() + h2.rows(), cols);
  joined.topRows(h1.rows()) = h1;
  joined.bottomRows(h2.rows()) = h2;

  RunStack(params.merged, joined, trace.merged);
  trace.last_hidden = trace.merged.back();
  if (train) {
    trace.mask_last = DropoutMask(trace.last_hidden.rows(), cols,
                                  config.dropout_rate, *rng);
    trace.last_hidden.array() *= trace.mask_last.array();
  }
  trace.probs = params.output.weight * trace.last_hidden;
  trace.probs.colwise() += params.output.bias;
  Softmax(trace.probs);
}

}  // namespace

void ModelConfig::Validate() const {
  if (x1_dim < 1 || x2_dim < 1) {
    throw InvalidArgument("input widths must be >= 1");
  }
  CheckWidths(branch1_hidden, "branch1");
  CheckWidths(branch2_hidden, "branch2");
  CheckWidths(merged_hidden, "merged");
  if (n_classes < 1) throw InvalidArgument("n_classes must be >= 1");
  if (!(dropout_rate >= 0.0 && dropout_rate < 1.0)) {
    throw InvalidArgument("dropout_rate must be in [0, 1)");
  }
}

std::size_t ModelParams::ParameterCount() const {
  std::size_t count = 0;
  ForEachLayer(*this, [&](const DenseLayer &l) {
    count += static_cast<std::size_t>(l.weight.size() + l.bias.size());
  });
  return count;
}

std::vector<std::span<double>> ModelParams::Tensors() {
  std::vector<std::span<double>> out;
  ForEachLayer(*this, [&](DenseLayer &l) {
    out.emplace_back(l.weight.data(), static_cast<std::size_t>(l.weight.size()));
    out.emplace_back(l.bias.data(), static_cast<std::size_t>(l.bias.size()));
  });
  return out;
}

std::vector<std::span<const double>> ModelParams::Tensors() const {
  std::vector<std::span<const double>> out;
  ForEachLayer(*this, [&](const DenseLayer &l) {
    out.emplace_back(l.weight.data(), static_cast<std::size_t>(l.weight.size()));
    out.emplace_back(l.bias.data(), static_cast<std::size_t>(l.bias.size()));
  });
  return out;
}

ModelParams ModelParams::ZerosLike() const {
  ModelParams zeros = *this;
  zeros.SetZero();
  return zeros;
}

void ModelParams::SetZero() {
  ForEachLayer(*this, [](DenseLayer &l) {
    l.weight.setZero();
    l.bias.setZero();
  });
}

ModelParams &ModelParams::operator+=(const ModelParams &other) {
  auto mine = Tensors();
  auto theirs = other.Tensors();
  if (mine.size() != theirs.size()) {
    throw InvalidArgument("parameter layouts differ");
  }
  for (std::size_t t = 0; t < mine.size(); ++t) {
    if (mine[t].size() != theirs[t].size()) {
      throw InvalidArgument("parameter layouts differ");
    }
    for (std::size_t i = 0; i < mine[t].size(); ++i) mine[t][i] += theirs[t][i];
  }
  return *this;
}

ModelParams &ModelParams::operator*=(double factor) {
  ForEachLayer(*this, [&](DenseLayer &l) {
    l.weight *= factor;
    l.bias *= factor;
  });
  return *this;
}

bool ModelParams::AllFinite() const {
  for (std::span<const double> t : Tensors()) {
    for (double v : t) {
      if (!std::isfinite(v)) return false;
    }
  }
  return true;
}

bool ModelParams::BitEqual(const ModelParams &other) const {
  if (!(config == other.config)) return false;
  auto mine = Tensors();
  auto theirs = other.Tensors();
  if (mine.size() != theirs.size()) return false;
  for (std::size_t t = 0; t < mine.size(); ++t) {
    if (mine[t].size() != theirs[t].size()) return false;
    if (std::memcmp(mine[t].data(), theirs[t].data(),
                    mine[t].size() * sizeof(double)) != 0) {
      return false;
    }
  }
  return true;
}

ModelParams InitModel(const ModelConfig &config) {
  config.Validate();
  Rng rng(config.seed);
  ModelParams params;
  params.config = config;
  const int out1 = BuildStack(params.branch1, config.x1_dim,
                              config.branch1_hidden, rng);
  const int out2 = BuildStack(params.branch2, config.x2_dim,
                              config.branch2_hidden, rng);
  const int last =
      BuildStack(params.merged, out1 + out2, config.merged_hidden, rng);
  params.output =
      MakeLayer(last, config.n_classes, std::sqrt(1.0 / last), rng);
  return params;
}

FeatureBatch MakeBatch(std::span<const FeaturePair> pairs) {
  FeatureBatch batch;
  if (pairs.empty()) return batch;
  const Eigen::Index d1 = pairs.front().x1.size();
  const Eigen::Index d2 = pairs.front().x2.size();
  const auto n = static_cast<Eigen::Index>(pairs.size());
  batch.x1.resize(d1, n);
  batch.x2.resize(d2, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    const FeaturePair &p = pairs[static_cast<std::size_t>(c)];
    if (p.x1.size() != d1 || p.x2.size() != d2) {
      throw InvalidArgument("feature pairs of mixed widths in one batch");
    }
    batch.x1.col(c) = p.x1;
    batch.x2.col(c) = p.x2;
  }
  return batch;
}

Eigen::MatrixXd ForwardBatch(const ModelParams &params,
                             const FeatureBatch &batch, Mode mode, Rng *rng) {
  ForwardTrace trace;
  RunForward(params, batch, mode, rng, trace);
  return std::move(trace.probs);
}

Eigen::VectorXd Forward(const ModelParams &params, const FeaturePair &pair,
                        Mode mode, Rng *rng) {
  FeatureBatch batch{pair.x1, pair.x2};
  return ForwardBatch(params, batch, mode, rng).col(0);
}

LossAndGrads BatchLossAndGradients(const ModelParams &params,
                                   const FeatureBatch &batch,
                                   std::span<const int> labels,
                                   std::span<const double> weights, Mode mode,
                                   Rng *rng) {
  const auto cols = static_cast<std::size_t>(batch.x1.cols());
  if (labels.size() != cols || weights.size() != cols || cols == 0) {
    throw InvalidArgument("labels/weights must match a non-empty batch");
  }
  ForwardTrace trace;
  RunForward(params, batch, mode, rng, trace);

  const int n_classes = params.config.n_classes;
  const double inv_batch = 1.0 / static_cast<double>(cols);
  LossAndGrads result;
  MatrixXd dlogits = trace.probs;
  for (std::size_t b = 0; b < cols; ++b) {
    const int y = labels[b];
    const double w = weights[b];
    if (y < 0 || y >= n_classes) throw InvalidArgument("label out of range");
    if (!(w > 0.0)) throw InvalidArgument("class weight must be positive");
    const auto col = static_cast<Eigen::Index>(b);
    const double p = trace.probs(y, col);
    if (p < kProbabilityFloor) {
      // The floor makes the loss flat here.
      result.loss += -w * std::log(kProbabilityFloor);
      dlogits.col(col).setZero();
    } else {
      result.loss += -w * std::log(p);
      dlogits(y, col) -= 1.0;
      dlogits.col(col) *= w * inv_batch;
    }
  }
  result.loss *= inv_batch;

  ModelParams &grads = result.grads;
  grads.config = params.config;
  grads.branch1.resize(params.branch1.size());
  grads.branch2.resize(params.branch2.size());
  grads.merged.resize(params.merged.size());

  grads.output.weight.noalias() = dlogits * trace.last_hidden.transpose();
  grads.output.bias = dlogits.rowwise().sum();
  MatrixXd grad = params.output.weight.transpose() * dlogits;
  if (trace.mask_last.size() > 0) grad.array() *= trace.mask_last.array();

  grad = BackStack(params.merged, trace.merged, std::move(grad), grads.merged);

  const Eigen::Index rows1 = trace.branch1.back().rows();
  MatrixXd grad1 = grad.topRows(rows1);
  MatrixXd grad2 = grad.bottomRows(grad.rows() - rows1);
  if (trace.mask1.size() > 0) grad1.array() *= trace.mask1.array();
  if (trace.mask2.size() > 0) grad2.array() *= trace.mask2.array();
  BackStack(params.branch1, trace.branch1, std::move(grad1), grads.branch1);
  BackStack(params.branch2, trace.branch2, std::move(grad2), grads.branch2);
  return result;
}

LossAndGrads LossAndGradients(const ModelParams &params,
                              const FeaturePair &pair, int true_class,
                              double class_weight, Mode mode, Rng *rng) {
  FeatureBatch batch{pair.x1, pair.x2};
  const int labels[] = {true_class};
  const double weights[] = {class_weight};
  return BatchLossAndGradients(params, batch, labels, weights, mode, rng);
}

std::vector<double> ClassWeights(std::span<const std::size_t> counts) {
  if (counts.empty()) throw InvalidArgument("no classes");
  double total = 0.0;
  for (std::size_t n : counts) {
    if (n == 0) throw InvalidArgument("class without training samples");
    total += static_cast<double>(n);
  }
  const double n_classes = static_cast<double>(counts.size());
  std::vector<double> weights;
  weights.reserve(counts.size());
  for (std::size_t n : counts) {
    weights.push_back(total / (n_classes * static_cast<double>(n)));
  }
  return weights;
}

}  // namespace authorlink
