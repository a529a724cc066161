#include "authorlink/adam.h"

#include <cmath>

#include "authorlink/error.h"

namespace authorlink {

AdamState AdamState::For(const ModelParams &params, AdamConfig config) {
  AdamState state;
  state.config = config;
  state.first_moment = params.ZerosLike();
  state.second_moment = params.ZerosLike();
  return state;
}

void AdamUpdate(std::span<double> param, std::span<const double> grad,
                std::span<double> m, std::span<double> v, std::int64_t step,
                const AdamConfig &config) {
  const double b1 = config.beta1;
  const double b2 = config.beta2;
  const double correction1 = 1.0 - std::pow(b1, static_cast<double>(step));
  const double correction2 = 1.0 - std::pow(b2, static_cast<double>(step));
  for (std::size_t i = 0; i < param.size(); ++i) {
    const double g = grad[i];
    m[i] = b1 * m[i] + (1.0 - b1) * g;
    v[i] = b2 * v[i] + (1.0 - b2) * g * g;
    const double m_hat = m[i] / correction1;
    const double v_hat = v[i] / correction2;
    param[i] -= config.learning_rate * m_hat / (std::sqrt(v_hat) + config.epsilon);
  }
}

void AdamStep(ModelParams &params, const ModelParams &grads, AdamState &state) {
  if (!grads.AllFinite()) {
    throw InvalidArgument("non-finite gradient passed to Adam");
  }
  auto p = params.Tensors();
  auto g = grads.Tensors();
  auto m = state.first_moment.Tensors();
  auto v = state.second_moment.Tensors();
  if (g.size() != p.size() || m.size() != p.size() || v.size() != p.size()) {
    throw InvalidArgument("Adam state does not match parameters");
  }
  for (std::size_t t = 0; t < p.size(); ++t) {
    if (g[t].size() != p[t].size() || m[t].size() != p[t].size() ||
        v[t].size() != p[t].size()) {
      throw InvalidArgument("Adam state does not match parameters");
    }
  }
  ++state.step;
  for (std::size_t t = 0; t < p.size(); ++t) {
    AdamUpdate(p[t], g[t], m[t], v[t], state.step, state.config);
  }
}

}  // namespace authorlink
