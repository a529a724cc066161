#include "authorlink/synth.h"

#include <array>
#include <cctype>
#include <fstream>
#include <set>

#include "authorlink/error.h"
#include "authorlink/name.h"
#include "authorlink/rng.h"

namespace authorlink {
namespace {

constexpr std::array<std::string_view, 18> kOnsets{
    "b", "d", "f", "g", "h", "j", "k", "l", "m",
    "n", "p", "r", "s", "t", "v", "z", "sh", "ch"};
constexpr std::array<std::string_view, 6> kVowels{"a", "e", "i", "o", "u", "ai"};
constexpr std::array<std::string_view, 6> kCodas{"", "n", "r", "l", "s", "ng"};

std::string Syllable(Rng &rng) {
  std::string s(kOnsets[rng.Below(kOnsets.size())]);
  s += kVowels[rng.Below(kVowels.size())];
  s += kCodas[rng.Below(kCodas.size())];
  return s;
}

std::string Word(Rng &rng, int min_syllables, int max_syllables) {
  const int n = min_syllables +
                static_cast<int>(rng.Below(static_cast<std::uint64_t>(
                    max_syllables - min_syllables + 1)));
  std::string word;
  for (int i = 0; i < n; ++i) word += Syllable(rng);
  return word;
}

std::string Capitalized(std::string word) {
  if (!word.empty()) {
    word[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(word[0])));
  }
  return word;
}

// Draws words until one is new to `used`.
std::string Fresh(Rng &rng, std::set<std::string> &used, int min_syl,
                  int max_syl) {
  for (int attempt = 0; attempt < 100000; ++attempt) {
    std::string w = Word(rng, min_syl, max_syl);
    if (used.insert(w).second) return w;
  }
  throw Error("synthetic vocabulary exhausted");
}

std::string Slug(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    } else if (!out.empty() && out.back() != '-') {
      out += '-';
    }
  }
  return out;
}

struct AuthorPlan {
  AuthorId id;
  std::vector<std::string> clique;
  std::vector<std::string> vocabulary;
  std::vector<std::string> venues;
};

std::vector<std::string> MakeVocabulary(Rng &rng, std::set<std::string> &used,
                                        int size) {
  std::vector<std::string> vocab;
  for (int i = 0; i < size; ++i) vocab.push_back(Fresh(rng, used, 2, 3));
  return vocab;
}

std::vector<std::string> MakeVenues(Rng &rng,
                                    const std::vector<std::string> &vocab) {
  std::vector<std::string> venues;
  for (int i = 0; i < 2; ++i) {
    venues.push_back("Journal of " + Capitalized(vocab[rng.Below(vocab.size())]) +
                     " " + Capitalized(vocab[rng.Below(vocab.size())]));
  }
  return venues;
}

}  // namespace

void SynthConfig::Validate() const {
  if (n_authors < 2) throw InvalidArgument("n_authors must be >= 2");
  if (clique_size < 1) throw InvalidArgument("clique_size must be >= 1");
  if (records_per_author < 1) {
    throw InvalidArgument("records_per_author must be >= 1");
  }
  if (vocab_size < 1) throw InvalidArgument("vocab_size must be >= 1");
  if (n_authors > 5000 || clique_size > 1000 || records_per_author > 100000 ||
      vocab_size > 100000) {
    throw InvalidArgument("synthetic corpus parameters out of range");
  }
  NormalizedName name = NormalizeName(variate_key);
  if (name.tokens.size() != 2 || AtomicVariateOf(name).Render() != name.Render()) {
    throw InvalidArgument("variate key must be an atomic variate like 'Y Chen'");
  }
}

SynthCorpus GenerateSynthCorpus(const SynthConfig &config) {
  config.Validate();
  const AtomicVariate variate = AtomicVariateOf(NormalizeName(config.variate_key));
  Rng rng(config.seed);

  std::set<std::string> used_words{Slug(variate.last)};
  std::set<std::string> used_first;
  std::vector<std::string> shared_vocab;
  std::vector<std::string> shared_venues;
  if (config.shared_vocabulary) {
    shared_vocab = MakeVocabulary(rng, used_words, config.vocab_size);
    shared_venues = MakeVenues(rng, shared_vocab);
  }

  const std::string initial_lower(1, static_cast<char>(std::tolower(
                                         static_cast<unsigned char>(variate.initial[0]))));
  auto first_name = [&] {
    for (int attempt = 0; attempt < 100000; ++attempt) {
      std::string tail = std::string(kVowels[rng.Below(kVowels.size())]) +
                         Word(rng, 0, 1) + std::string(kCodas[rng.Below(kCodas.size())]);
      std::string name = Capitalized(initial_lower + tail);
      if (used_first.insert(name).second) return name;
    }
    throw Error("synthetic first names exhausted");
  };

  std::vector<AuthorPlan> plans(static_cast<std::size_t>(config.n_authors));
  const std::string common_first = first_name();
  for (int a = 0; a < config.n_authors; ++a) {
    AuthorPlan &plan = plans[static_cast<std::size_t>(a)];
    if (config.shared_full_name) {
      plan.id = AuthorId{common_first + " " + variate.last, a + 1};
    } else {
      plan.id = AuthorId{(a == 0 ? common_first : first_name()) + " " + variate.last, 0};
    }
    for (int c = 0; c < config.clique_size; ++c) {
      plan.clique.push_back(Capitalized(Fresh(rng, used_words, 1, 2)) + " " +
                            Capitalized(Fresh(rng, used_words, 2, 3)));
    }
    if (config.shared_vocabulary) {
      plan.vocabulary = shared_vocab;
      plan.venues = shared_venues;
    } else {
      plan.vocabulary = MakeVocabulary(rng, used_words, config.vocab_size);
      plan.venues = MakeVenues(rng, plan.vocabulary);
    }
  }

  SynthCorpus synth;
  const std::string prefix = "synth/" + Slug(variate.Render()) + "/";
  for (int a = 0; a < config.n_authors; ++a) {
    const AuthorPlan &plan = plans[static_cast<std::size_t>(a)];
    synth.authors.push_back(plan.id);
    const auto clique = static_cast<std::uint64_t>(plan.clique.size());
    for (int r = 0; r < config.records_per_author; ++r) {
      BibRecord record;
      char key[64];
      std::snprintf(key, sizeof(key), "a%04d/r%05d", a, r);
      record.record_key = prefix + key;
      record.kind = RecordKind::kArticle;
      record.year = 2000 + static_cast<int>(rng.Below(21));

      // Member r % clique guarantees every clique member appears.
      std::vector<std::size_t> members{static_cast<std::size_t>(r) % clique};
      const std::uint64_t extra = rng.Below(std::min<std::uint64_t>(3, clique));
      while (members.size() < 1 + extra) {
        const std::size_t m = rng.Below(clique);
        if (std::find(members.begin(), members.end(), m) == members.end()) {
          members.push_back(m);
        }
      }
      std::vector<std::string> names{plan.id.Render()};
      for (std::size_t m : members) names.push_back(plan.clique[m]);
      rng.Shuffle(names);
      for (const std::string &n : names) {
        record.authors.push_back(AuthorMention::FromDisplay(n));
      }

      const int title_len = 5 + static_cast<int>(rng.Below(4));
      std::string title;
      for (int w = 0; w < title_len; ++w) {
        std::string word = plan.vocabulary[rng.Below(plan.vocabulary.size())];
        title += (w == 0 ? Capitalized(word) : " " + word);
      }
      record.title = title + ".";
      record.source = plan.venues[rng.Below(plan.venues.size())];
      synth.truth.emplace_back(record.record_key, plan.id);
      synth.corpus.push_back(std::move(record));
    }
  }
  // Interleave authors; keys keep the ground truth addressable.
  std::vector<std::size_t> order(synth.corpus.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  rng.Shuffle(order);
  Corpus shuffled;
  std::vector<std::pair<std::string, AuthorId>> truth;
  for (std::size_t i : order) {
    shuffled.push_back(std::move(synth.corpus[i]));
    truth.push_back(std::move(synth.truth[i]));
  }
  synth.corpus = std::move(shuffled);
  synth.truth = std::move(truth);
  return synth;
}

void WriteGroundTruth(const SynthCorpus &synth, const std::string &path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open ground-truth file", path);
  for (const auto &[key, id] : synth.truth) out << key << '\t' << id.Render() << '\n';
  if (!out) throw IoError("write failed", path);
}

}  // namespace authorlink
