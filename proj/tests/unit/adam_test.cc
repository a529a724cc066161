#include "doctest.h"

#include <cmath>

#include "authorlink/adam.h"
#include "authorlink/error.h"

namespace authorlink {
namespace {

ModelParams Scalarish() {
  ModelConfig c;
  c.x1_dim = 1;
  c.x2_dim = 1;
  c.branch1_hidden = {1};
  c.branch2_hidden = {1};
  c.merged_hidden = {1};
  c.n_classes = 1;
  c.seed = 3;
  return InitModel(c);
}

TEST_CASE("zero gradients leave parameters unchanged") {
  ModelParams p = Scalarish();
  const ModelParams before = p;
  AdamState state = AdamState::For(p);
  AdamStep(p, p.ZerosLike(), state);
  CHECK(p.BitEqual(before));
  CHECK(state.step == 1);
}

TEST_CASE("first step moves by about lr in the gradient's sign") {
  for (double g : {3.0, -0.02, 1e-3}) {
    double x = 1.0, m = 0.0, v = 0.0;
    const AdamConfig config;
    AdamUpdate(std::span<double>(&x, 1), std::span<const double>(&g, 1),
               std::span<double>(&m, 1), std::span<double>(&v, 1), 1, config);
    CHECK(x - 1.0 == doctest::Approx(-config.learning_rate * std::copysign(1.0, g))
                         .epsilon(1e-4));
  }
}

TEST_CASE("trajectory on a quadratic matches the textbook recurrence") {
  // f(x) = 0.5 * a * (x - c)^2, gradient a * (x - c).
  const double a = 3.0, c = -0.7;
  AdamConfig config;
  config.learning_rate = 0.05;
  double x = 2.0, m = 0.0, v = 0.0;
  double ox = 2.0, om = 0.0, ov = 0.0;
  for (int t = 1; t <= 50; ++t) {
    double g = a * (x - c);
    AdamUpdate(std::span<double>(&x, 1), std::span<const double>(&g, 1),
               std::span<double>(&m, 1), std::span<double>(&v, 1), t, config);

    const double og = a * (ox - c);
    om = 0.9 * om + 0.1 * og;
    ov = 0.999 * ov + 0.001 * og * og;
    double b1t = 1.0, b2t = 1.0;
    for (int k = 0; k < t; ++k) {
      b1t *= 0.9;
      b2t *= 0.999;
    }
    ox = ox - 0.05 * (om / (1.0 - b1t)) / (std::sqrt(ov / (1.0 - b2t)) + 1e-8);
    CAPTURE(t);
    CHECK(x == doctest::Approx(ox).epsilon(1e-12));
  }
}

TEST_CASE("non-finite gradients fail before mutating anything") {
  ModelParams p = Scalarish();
  const ModelParams before = p;
  AdamState state = AdamState::For(p);
  ModelParams g = p.ZerosLike();
  g.output.bias[0] = std::nan("");
  CHECK_THROWS_AS(AdamStep(p, g, state), InvalidArgument);
  CHECK(p.BitEqual(before));
  CHECK(state.step == 0);
  g.output.bias[0] = INFINITY;
  CHECK_THROWS_AS(AdamStep(p, g, state), InvalidArgument);
}

}  // namespace
}  // namespace authorlink
