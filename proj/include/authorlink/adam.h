#ifndef AUTHORLINK_ADAM_H_
#define AUTHORLINK_ADAM_H_

#include <cstdint>
#include <span>

#include "authorlink/network.h"

namespace authorlink {

struct AdamConfig {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  bool operator==(const AdamConfig &) const = default;
};

struct AdamState {
  AdamConfig config;
  std::int64_t step = 0;
  ModelParams first_moment;
  ModelParams second_moment;

  static AdamState For(const ModelParams &params, AdamConfig config = {});
};

// One bias-corrected Adam update on a flat buffer; `step` is the already
// incremented step number (t >= 1).
void AdamUpdate(std::span<double> param, std::span<const double> grad,
                std::span<double> m, std::span<double> v, std::int64_t step,
                const AdamConfig &config);

// Throws InvalidArgument (leaving everything untouched) if any gradient is
// not finite.
void AdamStep(ModelParams &params, const ModelParams &grads, AdamState &state);

}  // namespace authorlink

#endif  // AUTHORLINK_ADAM_H_
