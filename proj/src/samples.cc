#include "authorlink/samples.h"

#include "authorlink/error.h"
#include "authorlink/name.h"

namespace authorlink {

std::string_view NameModeName(NameMode mode) {
  return mode == NameMode::kFull ? "FULL" : "ANV";
}

NameForms NameForms::Of(std::string_view printed) {
  NameForms forms;
  try {
    const NormalizedName name = NormalizeName(printed);
    const AtomicVariate atomic = AtomicVariateOf(name);
    forms.full = name.Render();
    forms.atomic = atomic.Render();
    forms.first_name = name.FirstName();
    forms.initial = atomic.initial;
  } catch (const InvalidArgument &) {
    // Unusable names act as the empty sentinel.
  }
  return forms;
}

std::vector<TrainingSample> GenerateTrainingSamples(const BibRecord &record,
                                                    int target_position,
                                                    const ClassIndex &classes,
                                                    Rng &rng) {
  const int omega = static_cast<int>(record.authors.size());
  if (target_position < 0 || target_position >= omega) {
    throw InvalidArgument("target position out of range");
  }
  const int label = classes.Of(record.authors[target_position].author_id);

  std::vector<NameForms> forms;
  forms.reserve(record.authors.size());
  for (const AuthorMention &a : record.authors) {
    forms.push_back(NameForms::Of(a.display_name));
  }
  const NameForms &target = forms[target_position];

  // Partner draws are made once and shared by the FULL and ANV copies.
  std::vector<int> partners(static_cast<std::size_t>(omega));
  for (int &j : partners) j = static_cast<int>(rng.Below(omega));

  std::vector<TrainingSample> samples;
  samples.reserve(2 * static_cast<std::size_t>(omega));
  for (NameMode mode : {NameMode::kFull, NameMode::kAnv}) {
    for (int p = 0; p < omega; ++p) {
      TrainingSample s;
      s.target_first_name = target.First(mode);
      if (omega > 1) {
        s.coauthor_p = forms[p].Name(mode);
        s.coauthor_j = forms[partners[p]].Name(mode);
      }
      s.title = record.title;
      s.source = record.source;
      s.label = label;
      s.mode = mode;
      s.record_key = record.record_key;
      samples.push_back(std::move(s));
    }
  }
  return samples;
}

FeaturePair FeaturesOf(const TrainingSample &sample, const Encoders &encoders) {
  return AssembleFeatures(sample.target_first_name, sample.coauthor_p,
                          sample.coauthor_j, sample.title, sample.source,
                          encoders);
}

const Eigen::VectorXd &FeatureCache::Name(const std::string &text) {
  auto it = names_.find(text);
  if (it == names_.end()) {
    it = names_.emplace(text, encoders_.name->Encode(text)).first;
  }
  return it->second;
}

const Eigen::VectorXd &FeatureCache::Text(const std::string &text) {
  auto it = texts_.find(text);
  if (it == texts_.end()) {
    it = texts_.emplace(text, encoders_.text->Encode(text)).first;
  }
  return it->second;
}

void FeatureCache::Fill(const TrainingSample &sample, Eigen::MatrixXd &x1,
                        Eigen::MatrixXd &x2, Eigen::Index col) {
  const Eigen::Index d = encoders_.name->dim();
  x1.col(col).head(d) = Name(sample.target_first_name);
  x1.col(col).tail(d) = 0.5 * (Name(sample.coauthor_p) + Name(sample.coauthor_j));
  x2.col(col) = 0.5 * (Text(sample.title) + Text(sample.source));
}

}  // namespace authorlink
