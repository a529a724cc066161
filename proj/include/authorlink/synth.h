#ifndef AUTHORLINK_SYNTH_H_
#define AUTHORLINK_SYNTH_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "authorlink/record.h"

namespace authorlink {

// Homonym benchmark: n authors who all share one atomic variate, each with
// a private co-author clique and (unless shared_vocabulary) a private title
// vocabulary.
struct SynthConfig {
  int n_authors = 20;
  std::string variate_key = "Y Chen";
  int clique_size = 5;
  int records_per_author = 40;
  int vocab_size = 30;
  std::uint64_t seed = 7;
  // All authors get the same full name, told apart by homonym suffixes.
  bool shared_full_name = false;
  // Every author draws titles and venues from one common vocabulary.
  bool shared_vocabulary = false;

  void Validate() const;
};

struct SynthCorpus {
  Corpus corpus;
  // record key -> target author
  std::vector<std::pair<std::string, AuthorId>> truth;
  std::vector<AuthorId> authors;
};

SynthCorpus GenerateSynthCorpus(const SynthConfig &config);

// "<record_key>\t<author_id>" per line.
void WriteGroundTruth(const SynthCorpus &synth, const std::string &path);

}  // namespace authorlink

#endif  // AUTHORLINK_SYNTH_H_
