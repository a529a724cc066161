#include "doctest.h"

#include "authorlink/blocking.h"
#include "authorlink/corpus_store.h"
#include "authorlink/error.h"
#include "authorlink/evaluation.h"
#include "authorlink/synth.h"
#include "test_util.h"

namespace authorlink {
namespace {

TEST_CASE("default generator counts") {
  const SynthCorpus synth = GenerateSynthCorpus(SynthConfig{});
  CHECK(synth.corpus.size() == 800);
  CHECK(synth.truth.size() == 800);
  CHECK(synth.authors.size() == 20);
  const AuthorRegistry registry = AuthorRegistry::Build(synth.corpus);
  const Block block = BuildBlock(synth.corpus, registry, "Y Chen");
  CHECK(block.classes.size() == 20);
  CHECK(block.entries.size() == 800);
  CHECK(ComputeBlockStats(block).uan == 20);
}

TEST_CASE("same seed, byte-identical corpus") {
  testing::TempDir dir("synth");
  WriteCorpusStore(GenerateSynthCorpus(SynthConfig{}).corpus, dir.File("a.ndc"));
  WriteCorpusStore(GenerateSynthCorpus(SynthConfig{}).corpus, dir.File("b.ndc"));
  CHECK(testing::Slurp(dir.File("a.ndc")) == testing::Slurp(dir.File("b.ndc")));
  SynthConfig other;
  other.seed = 8;
  WriteCorpusStore(GenerateSynthCorpus(other).corpus, dir.File("c.ndc"));
  CHECK(testing::Slurp(dir.File("a.ndc")) != testing::Slurp(dir.File("c.ndc")));
}

TEST_CASE("shared full name is told apart by suffixes") {
  SynthConfig c;
  c.n_authors = 2;
  c.shared_full_name = true;
  const SynthCorpus synth = GenerateSynthCorpus(c);
  const AuthorRegistry registry = AuthorRegistry::Build(synth.corpus);
  CHECK(synth.authors[0].base_name == synth.authors[1].base_name);
  CHECK(synth.authors[0].homonym_index != synth.authors[1].homonym_index);
  CHECK(registry.Resolve(synth.authors[0].base_name).count == 2);
}

TEST_CASE("every record holds its target author") {
  const SynthCorpus synth = GenerateSynthCorpus(SynthConfig{});
  for (std::size_t i = 0; i < synth.corpus.size(); ++i) {
    const BibRecord &r = synth.corpus[i];
    bool found = false;
    for (const AuthorMention &a : r.authors) found = found || a.author_id == synth.truth[i].second;
    CHECK(found);
    CHECK(r.record_key == synth.truth[i].first);
  }
}

TEST_CASE("out-of-range parameters") {
  for (auto mutate : std::vector<void (*)(SynthConfig &)>{
           [](SynthConfig &c) { c.n_authors = 0; },
           [](SynthConfig &c) { c.records_per_author = 0; },
           [](SynthConfig &c) { c.clique_size = 0; },
           [](SynthConfig &c) { c.vocab_size = 0; },
           [](SynthConfig &c) { c.variate_key = "Chen"; }}) {
    SynthConfig c;
    mutate(c);
    CHECK_THROWS_AS(GenerateSynthCorpus(c), InvalidArgument);
  }
}

TEST_CASE("evaluation needs test entries") {
  SynthConfig c;
  c.n_authors = 2;
  c.records_per_author = 1;
  const SynthCorpus synth = GenerateSynthCorpus(c);
  const AuthorRegistry registry = AuthorRegistry::Build(synth.corpus);
  const Block block = BuildBlock(synth.corpus, registry, c.variate_key);
  const SplitAssignment split = SplitPerAuthor(block, 1);
  ModelConfig mc;
  mc.n_classes = 2;
  CHECK_THROWS_AS(EvaluateBlock(InitModel(mc), block, split, EvalMode::kAll,
                                Encoders::Default()),
                  InvalidArgument);
}

}  // namespace
}  // namespace authorlink
