#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "authorlink/blocking.h"
#include "authorlink/checkpoint.h"
#include "authorlink/corpus_store.h"
#include "authorlink/dblp_reader.h"
#include "authorlink/disambiguator.h"
#include "authorlink/error.h"
#include "authorlink/evaluation.h"
#include "authorlink/name.h"
#include "authorlink/registry.h"
#include "authorlink/synth.h"
#include "cli.h"

namespace py = pybind11;
using namespace authorlink;

namespace {

py::dict RecordToDict(const BibRecord &r) {
  py::dict d;
  d["key"] = r.record_key;
  d["kind"] = std::string(KindName(r.kind));
  d["title"] = r.title;
  d["source"] = r.source;
  d["year"] = r.year;
  py::list authors;
  for (const AuthorMention &a : r.authors) authors.append(a.display_name);
  d["authors"] = authors;
  return d;
}

py::dict StatsToDict(const BlockStats &s) {
  py::dict d;
  d["uta"] = s.uta;
  d["rcd"] = s.rcd;
  d["uca"] = s.uca;
  d["uan"] = s.uan;
  d["r2a"] = s.r2a;
  d["r3a"] = s.r3a;
  return d;
}

NameMode ParseMode(const std::string &mode) {
  if (mode == "ALL" || mode == "FULL") return NameMode::kFull;
  if (mode == "ANV") return NameMode::kAnv;
  throw InvalidArgument("mode must be ALL or ANV, got " + mode);
}

Aggregation ParseAggregation(const std::string &agg) {
  if (agg == "sum") return Aggregation::kSum;
  if (agg == "max") return Aggregation::kMax;
  throw InvalidArgument("aggregation must be sum or max, got " + agg);
}

// Held by value so pybind11 does not convert the record vector to a list.
struct CorpusHandle {
  Corpus records;
};

// A trained block model plus the encoders it was trained with.
struct Model {
  Checkpoint checkpoint;
  Encoders encoders;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Author name disambiguation core";

  auto error = py::register_exception<Error>(m, "Error");
  py::register_exception<InvalidArgument>(m, "InvalidArgument", error.ptr());
  py::register_exception<ParseError>(m, "ParseError", error.ptr());
  py::register_exception<FormatError>(m, "FormatError", error.ptr());
  py::register_exception<IoError>(m, "IoError", error.ptr());

  m.def("normalize_name", [](const std::string &raw) { return NormalizeName(raw).Render(); });
  m.def("atomic_variate",
        [](const std::string &raw) { return AtomicVariateOf(NormalizeName(raw)).Render(); });
  m.def("name_variates", [](const std::string &raw) { return NameVariates(NormalizeName(raw)); });
  m.def("parse_author_id", [](const std::string &raw) {
    const AuthorId id = ParseAuthorId(raw);
    return py::make_tuple(id.base_name, id.homonym_index);
  });

  py::class_<CorpusHandle>(m, "Corpus")
      .def_static("load",
                  [](const std::string &path) { return CorpusHandle{ReadCorpusStore(path)}; })
      .def_static("from_dblp",
                  [](const std::string &path) { return CorpusHandle{ReadDblpFile(path)}; })
      .def("save",
           [](const CorpusHandle &c, const std::string &path) {
             const StoreSummary s = WriteCorpusStore(c.records, path);
             return py::make_tuple(s.records, s.mentions);
           })
      .def("__len__", [](const CorpusHandle &c) { return c.records.size(); })
      .def("__getitem__", [](const CorpusHandle &c, std::size_t i) {
        if (i >= c.records.size()) throw py::index_error();
        return RecordToDict(c.records[i]);
      });

  py::class_<AuthorRegistry>(m, "Registry")
      .def_static(
          "build", [](const CorpusHandle &c) { return AuthorRegistry::Build(c.records); },
          py::arg("corpus"))
      .def("resolve",
           [](const AuthorRegistry &r, const std::string &name) {
             const RAResult ra = r.Resolve(name);
             std::vector<std::string> candidates;
             for (const AuthorId &id : ra.candidates) candidates.push_back(id.Render());
             return candidates;
           })
      .def("route",
           [](const AuthorRegistry &r, const std::string &name) {
             const Route route = RouteName(r, name);
             py::dict d;
             d["kind"] = std::string(RouteKindName(route.kind));
             d["candidates"] = route.candidate_count;
             if (route.kind == Route::Kind::kUnique) d["author"] = route.author->Render();
             if (route.kind == Route::Kind::kAmbiguous) d["block"] = route.variate_key;
             return d;
           })
      .def("top_variates", &TopVariates, py::arg("n"))
      .def_property_readonly("authors", &AuthorRegistry::author_count)
      .def_property_readonly("names", &AuthorRegistry::name_count)
      .def_property_readonly("variates", &AuthorRegistry::variate_count);

  m.def(
      "block_stats",
      [](const CorpusHandle &corpus, const AuthorRegistry &registry, const std::string &key) {
        return StatsToDict(ComputeBlockStats(BuildBlock(corpus.records, registry, key)));
      },
      py::arg("corpus"), py::arg("registry"), py::arg("block"));

  m.def(
      "gen_synth",
      [](int authors, const std::string &variate, int clique, int records, int vocab,
         std::uint64_t seed, bool shared_full_name, bool shared_vocabulary) {
        SynthConfig c;
        c.n_authors = authors;
        c.variate_key = variate;
        c.clique_size = clique;
        c.records_per_author = records;
        c.vocab_size = vocab;
        c.seed = seed;
        c.shared_full_name = shared_full_name;
        c.shared_vocabulary = shared_vocabulary;
        SynthCorpus synth = GenerateSynthCorpus(c);
        std::vector<std::pair<std::string, std::string>> truth;
        for (const auto &[key, id] : synth.truth) truth.emplace_back(key, id.Render());
        return py::make_tuple(CorpusHandle{std::move(synth.corpus)}, truth);
      },
      py::arg("authors") = 20, py::arg("variate") = "Y Chen", py::arg("clique") = 5,
      py::arg("records") = 40, py::arg("vocab") = 30, py::arg("seed") = 7,
      py::arg("shared_full_name") = false, py::arg("shared_vocabulary") = false);

  m.def(
      "micro_macro",
      [](const std::vector<int> &truths, const std::vector<int> &preds, int n_classes) {
        const EvalReport r = MicroMacroReport(truths, preds, n_classes);
        py::dict d;
        d["micro_precision"] = r.micro_precision;
        d["micro_recall"] = r.micro_recall;
        d["micro_f1"] = r.micro_f1;
        d["macro_precision"] = r.macro_precision;
        d["macro_recall"] = r.macro_recall;
        d["macro_f1"] = r.macro_f1;
        return d;
      },
      py::arg("truths"), py::arg("preds"), py::arg("n_classes"));

  py::class_<Model>(m, "Model")
      .def_static("load",
                  [](const std::string &path) {
                    Model model{LoadCheckpoint(path), {}};
                    const ModelConfig &c = model.checkpoint.params.config;
                    model.encoders = Encoders::Default(c.x1_dim / 2, c.x2_dim);
                    return model;
                  })
      .def_property_readonly("block",
                             [](const Model &m) { return m.checkpoint.variate_key; })
      .def_property_readonly("classes",
                             [](const Model &m) {
                               std::vector<std::string> out;
                               for (const AuthorId &id : m.checkpoint.classes.authors()) {
                                 out.push_back(id.Render());
                               }
                               return out;
                             })
      .def(
          "predict",
          [](const Model &m, const std::string &name, const std::vector<std::string> &authors,
             const std::string &title, const std::string &source, const std::string &mode,
             const std::string &agg) {
            BibRecord record;
            record.record_key = "query";
            record.title = title;
            record.source = source;
            for (const std::string &a : authors) {
              record.authors.push_back(AuthorMention::FromDisplay(a));
            }
            const Prediction p =
                PredictAuthor(m.checkpoint.params, m.checkpoint.classes, record, name,
                              ParseMode(mode), m.encoders, ParseAggregation(agg));
            py::dict d;
            d["chosen"] = p.chosen_author.Render();
            d["pair_count"] = p.pair_count;
            d["pool"] = p.pool;
            std::vector<double> scores(p.scores.data(), p.scores.data() + p.scores.size());
            d["scores"] = scores;
            return d;
          },
          py::arg("name"), py::arg("authors"), py::arg("title") = "",
          py::arg("source") = "", py::arg("mode") = "ALL", py::arg("agg") = "sum");

  m.def(
      "run_cli",
      [](const std::vector<std::string> &args) {
        std::vector<std::string> argv{"authorlink"};
        argv.insert(argv.end(), args.begin(), args.end());
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = cli::Run(argv, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
