#include "doctest.h"

#include <sstream>

#include "authorlink/error.h"
#include "authorlink/evaluation.h"
#include "authorlink/rng.h"

namespace authorlink {
namespace {

// Definition-based oracle: counts per class, then the textbook formulas.
struct Oracle {
  double micro_p, micro_r, micro_f1, macro_p, macro_r, macro_f1;
};

Oracle Reference(const std::vector<int> &t, const std::vector<int> &p, int n) {
  std::vector<double> tp(n, 0), fp(n, 0), fn(n, 0);
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] == p[i]) {
      tp[t[i]] += 1;
    } else {
      fp[p[i]] += 1;
      fn[t[i]] += 1;
    }
  }
  double stp = 0, sfp = 0, sfn = 0, mp = 0, mr = 0, mf = 0;
  int supported = 0;
  for (int c = 0; c < n; ++c) {
    stp += tp[c];
    sfp += fp[c];
    sfn += fn[c];
    if (tp[c] + fn[c] == 0) continue;
    ++supported;
    const double prec = tp[c] + fp[c] > 0 ? tp[c] / (tp[c] + fp[c]) : 0.0;
    const double rec = tp[c] / (tp[c] + fn[c]);
    mp += prec;
    mr += rec;
    mf += prec + rec > 0 ? 2 * prec * rec / (prec + rec) : 0.0;
  }
  const double up = stp / (stp + sfp), ur = stp / (stp + sfn);
  return {up, ur, up + ur > 0 ? 2 * up * ur / (up + ur) : 0.0,
          mp / supported, mr / supported, mf / supported};
}

TEST_CASE("worked example") {
  const std::vector<int> truths{0, 0, 1}, preds{0, 1, 1};
  const EvalReport r = MicroMacroReport(truths, preds, 2);
  CHECK(r.per_class[0].f1 == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(r.per_class[1].f1 == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(std::abs(r.macro_f1 - 2.0 / 3.0) <= 1e-9);
  CHECK(std::abs(r.micro_f1 - 2.0 / 3.0) <= 1e-9);
  const Oracle o = Reference(truths, preds, 2);
  CHECK(std::abs(r.macro_f1 - o.macro_f1) <= 1e-12);
  CHECK(std::abs(r.micro_f1 - o.micro_f1) <= 1e-12);
}

TEST_CASE("perfect and degenerate predictions") {
  const std::vector<int> truths{0, 1, 2, 2, 1}, single{0, 0, 0};
  const EvalReport r = MicroMacroReport(truths, truths, 3);
  for (double v : {r.micro_precision, r.micro_recall, r.micro_f1, r.macro_precision,
                   r.macro_recall, r.macro_f1}) {
    CHECK(v == 1.0);
  }
  const EvalReport one = MicroMacroReport(single, single, 1);
  CHECK(one.macro_f1 == 1.0);
  CHECK(one.micro_f1 == 1.0);
}

TEST_CASE("macro averages only over supported classes") {
  // Class 2 has no test support and is never predicted.
  const std::vector<int> truths{0, 1, 1}, preds{0, 1, 0};
  const EvalReport r = MicroMacroReport(truths, preds, 3);
  const Oracle o = Reference(truths, preds, 3);
  CHECK(r.macro_precision == doctest::Approx(o.macro_p).epsilon(1e-12));
  CHECK(r.macro_recall == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("random vectors agree with the oracle") {
  Rng rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng.Below(8));
    const std::size_t len = 1 + rng.Below(60);
    std::vector<int> t(len), p(len);
    for (std::size_t i = 0; i < len; ++i) {
      t[i] = static_cast<int>(rng.Below(n));
      p[i] = rng.Bernoulli(0.6) ? t[i] : static_cast<int>(rng.Below(n));
    }
    const EvalReport r = MicroMacroReport(t, p, n);
    const Oracle o = Reference(t, p, n);
    CHECK(r.micro_precision == r.micro_recall);
    CHECK(r.micro_recall == r.micro_f1);
    CHECK(std::abs(r.micro_f1 - o.micro_f1) <= 1e-12);
    CHECK(std::abs(r.macro_precision - o.macro_p) <= 1e-12);
    CHECK(std::abs(r.macro_recall - o.macro_r) <= 1e-12);
    CHECK(std::abs(r.macro_f1 - o.macro_f1) <= 1e-12);
    for (const ClassMetrics &c : r.per_class) {
      CHECK(c.precision >= 0.0);
      CHECK(c.recall <= 1.0);
      const double h = c.precision + c.recall > 0
                           ? 2 * c.precision * c.recall / (c.precision + c.recall)
                           : 0.0;
      CHECK(c.f1 == doctest::Approx(h).epsilon(1e-12));
    }
    // Relabel consistently; the report must not change.
    std::vector<int> perm(n);
    for (int c = 0; c < n; ++c) perm[c] = c;
    rng.Shuffle(perm);
    std::vector<int> t2(len), p2(len);
    for (std::size_t i = 0; i < len; ++i) {
      t2[i] = perm[t[i]];
      p2[i] = perm[p[i]];
    }
    const EvalReport r2 = MicroMacroReport(t2, p2, n);
    CHECK(r2.micro_f1 == r.micro_f1);
    CHECK(r2.macro_f1 == doctest::Approx(r.macro_f1).epsilon(1e-14));
  }
}

TEST_CASE("errors and report rows") {
  const std::vector<int> a{0, 1}, b{0}, bad{0, 5};
  CHECK_THROWS_AS(MicroMacroReport(a, b, 2), InvalidArgument);
  CHECK_THROWS_AS(MicroMacroReport(a, bad, 2), InvalidArgument);
  EvalReport r = MicroMacroReport(a, a, 2);
  r.mode = EvalMode::kAnv;
  std::ostringstream out;
  r.Write(out);
  const std::string text = out.str();
  for (const char *row : {"MaAP", "MiAP", "MaAR", "MiAR", "MaAF1", "MiAF1"}) {
    CHECK(text.find(row) != std::string::npos);
  }
}

}  // namespace
}  // namespace authorlink
