#include "authorlink/evaluation.h"

#include <iomanip>

#include "authorlink/error.h"
#include "authorlink/samples.h"

namespace authorlink {
namespace {

double Ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

double Harmonic(double p, double r) {
  if (p == r) return p;
  return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
}

}  // namespace

std::string_view EvalModeName(EvalMode mode) {
  return mode == EvalMode::kAll ? "All" : "ANV";
}

void EvalReport::Write(std::ostream &out) const {
  const auto flags = out.flags();
  const auto precision = out.precision();
  const std::string mode_label = "(" + std::string(EvalModeName(mode)) + ")";
  out << std::fixed << std::setprecision(3);
  out << "MaAP " << mode_label << '\t' << macro_precision << '\n'
      << "MiAP " << mode_label << '\t' << micro_precision << '\n'
      << "MaAR " << mode_label << '\t' << macro_recall << '\n'
      << "MiAR " << mode_label << '\t' << micro_recall << '\n'
      << "MaAF1 " << mode_label << '\t' << macro_f1 << '\n'
      << "MiAF1 " << mode_label << '\t' << micro_f1 << '\n'
      << "instances\t" << instances << '\n';
  out.flags(flags);
  out.precision(precision);
}

EvalReport MicroMacroReport(std::span<const int> truths,
                            std::span<const int> preds, int n_classes) {
  if (truths.size() != preds.size()) {
    throw InvalidArgument("truths and predictions differ in length");
  }
  if (n_classes < 1) throw InvalidArgument("n_classes must be >= 1");
  const auto n = static_cast<std::size_t>(n_classes);
  std::vector<std::size_t> tp(n, 0), fp(n, 0), fn(n, 0), support(n, 0);
  for (std::size_t i = 0; i < truths.size(); ++i) {
    const int t = truths[i];
    const int p = preds[i];
    if (t < 0 || t >= n_classes || p < 0 || p >= n_classes) {
      throw InvalidArgument("label out of range");
    }
    ++support[static_cast<std::size_t>(t)];
    if (t == p) {
      ++tp[static_cast<std::size_t>(t)];
    } else {
      ++fn[static_cast<std::size_t>(t)];
      ++fp[static_cast<std::size_t>(p)];
    }
  }

  EvalReport report;
  report.instances = truths.size();
  report.per_class.resize(n);
  std::size_t tp_all = 0, fp_all = 0, fn_all = 0, supported = 0;
  for (std::size_t c = 0; c < n; ++c) {
    ClassMetrics &m = report.per_class[c];
    m.support = support[c];
    m.precision = Ratio(tp[c], tp[c] + fp[c]);
    m.recall = Ratio(tp[c], tp[c] + fn[c]);
    m.f1 = Harmonic(m.precision, m.recall);
    tp_all += tp[c];
    fp_all += fp[c];
    fn_all += fn[c];
    if (support[c] > 0) {
      ++supported;
      report.macro_precision += m.precision;
      report.macro_recall += m.recall;
      report.macro_f1 += m.f1;
    }
  }
  if (supported > 0) {
    report.macro_precision /= static_cast<double>(supported);
    report.macro_recall /= static_cast<double>(supported);
    report.macro_f1 /= static_cast<double>(supported);
  }
  report.micro_precision = Ratio(tp_all, tp_all + fp_all);
  report.micro_recall = Ratio(tp_all, tp_all + fn_all);
  report.micro_f1 = Harmonic(report.micro_precision, report.micro_recall);
  return report;
}

EvalReport EvaluateBlock(const ModelParams &model, const Block &block,
                         const SplitAssignment &split, EvalMode mode,
                         const Encoders &encoders, Aggregation aggregation) {
  if (split.per_entry.size() != block.entries.size()) {
    throw InvalidArgument("split does not belong to this block");
  }
  const std::vector<std::size_t> test = split.EntriesIn(SplitSet::kTest);
  if (test.empty()) throw InvalidArgument("empty test split");

  std::vector<NameMode> modes{NameMode::kAnv};
  if (mode == EvalMode::kAll) modes = {NameMode::kFull, NameMode::kAnv};

  std::vector<int> truths;
  std::vector<int> preds;
  for (std::size_t i : test) {
    const BlockEntry &e = block.entries[i];
    const BibRecord &record = block.RecordOf(e);
    const std::string &target = record.authors[e.position].display_name;
    for (NameMode m : modes) {
      const Prediction p = PredictAuthor(model, block.classes, record, target,
                                         m, encoders, aggregation);
      truths.push_back(e.label);
      preds.push_back(p.chosen);
    }
  }
  EvalReport report = MicroMacroReport(truths, preds, block.classes.size());
  report.mode = mode;
  return report;
}

}  // namespace authorlink
