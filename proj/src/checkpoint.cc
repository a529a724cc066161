#include "authorlink/checkpoint.h"

#include <bit>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "authorlink/error.h"

namespace authorlink {
namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json ConfigToJson(const ModelConfig &c) {
  ordered_json j;
  j["x1_dim"] = c.x1_dim;
  j["x2_dim"] = c.x2_dim;
  j["branch1_hidden"] = c.branch1_hidden;
  j["branch2_hidden"] = c.branch2_hidden;
  j["merged_hidden"] = c.merged_hidden;
  j["n_classes"] = c.n_classes;
  // Stored as bits so the rate survives the text header unchanged.
  j["dropout_rate_bits"] = std::bit_cast<std::uint64_t>(c.dropout_rate);
  j["dropout_on_branches"] = c.dropout_on_branches;
  j["seed"] = c.seed;
  return j;
}

ModelConfig ConfigFromJson(const ordered_json &j) {
  ModelConfig c;
  c.x1_dim = j.at("x1_dim").get<int>();
  c.x2_dim = j.at("x2_dim").get<int>();
  c.branch1_hidden = j.at("branch1_hidden").get<std::vector<int>>();
  c.branch2_hidden = j.at("branch2_hidden").get<std::vector<int>>();
  c.merged_hidden = j.at("merged_hidden").get<std::vector<int>>();
  c.n_classes = j.at("n_classes").get<int>();
  c.dropout_rate =
      std::bit_cast<double>(j.at("dropout_rate_bits").get<std::uint64_t>());
  c.dropout_on_branches = j.at("dropout_on_branches").get<bool>();
  c.seed = j.at("seed").get<std::uint64_t>();
  return c;
}

ordered_json AdamToJson(const AdamState &s) {
  ordered_json j;
  j["learning_rate_bits"] = std::bit_cast<std::uint64_t>(s.config.learning_rate);
  j["beta1_bits"] = std::bit_cast<std::uint64_t>(s.config.beta1);
  j["beta2_bits"] = std::bit_cast<std::uint64_t>(s.config.beta2);
  j["epsilon_bits"] = std::bit_cast<std::uint64_t>(s.config.epsilon);
  j["step"] = s.step;
  return j;
}

void WriteDoubles(std::ostream &out, const ModelParams &params) {
  for (std::span<const double> tensor : params.Tensors()) {
    for (double v : tensor) {
      std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
      unsigned char bytes[8];
      for (int k = 0; k < 8; ++k) bytes[k] = static_cast<unsigned char>(bits >> (8 * k));
      out.write(reinterpret_cast<const char *>(bytes), 8);
    }
  }
}

void ReadDoubles(std::istream &in, ModelParams &params) {
  for (std::span<double> tensor : params.Tensors()) {
    for (double &v : tensor) {
      unsigned char bytes[8];
      if (!in.read(reinterpret_cast<char *>(bytes), 8)) {
        throw FormatError("checkpoint payload truncated", 3);
      }
      std::uint64_t bits = 0;
      for (int k = 0; k < 8; ++k) bits |= std::uint64_t{bytes[k]} << (8 * k);
      v = std::bit_cast<double>(bits);
    }
  }
}

std::vector<std::size_t> TensorSizes(const ModelParams &params) {
  std::vector<std::size_t> sizes;
  for (std::span<const double> t : params.Tensors()) sizes.push_back(t.size());
  return sizes;
}

}  // namespace

void SaveCheckpoint(const Checkpoint &checkpoint, const std::string &path) {
  const ModelParams &params = checkpoint.params;
  if (params.config.n_classes != checkpoint.classes.size()) {
    throw InvalidArgument("checkpoint class index does not match the model");
  }
  ordered_json header;
  header["variate_key"] = checkpoint.variate_key;
  header["config"] = ConfigToJson(params.config);
  ordered_json classes = ordered_json::array();
  for (const AuthorId &id : checkpoint.classes.authors()) {
    classes.push_back(id.Render());
  }
  header["classes"] = std::move(classes);
  header["adam"] = AdamToJson(checkpoint.adam);
  header["tensor_sizes"] = TensorSizes(params);

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open checkpoint for writing", path);
  out << kCheckpointHeader << '\n'
      << header.dump(-1, ' ', false, ordered_json::error_handler_t::replace)
      << '\n';
  WriteDoubles(out, params);
  WriteDoubles(out, checkpoint.adam.first_moment);
  WriteDoubles(out, checkpoint.adam.second_moment);
  out.flush();
  if (!out) throw IoError("checkpoint write failed", path);
}

Checkpoint LoadCheckpoint(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open checkpoint", path);
  std::string line;
  if (!std::getline(in, line) || line != kCheckpointHeader) {
    throw FormatError("not an " + std::string(kCheckpointHeader) +
                          " checkpoint (got '" + line.substr(0, 40) + "')",
                      1);
  }
  if (!std::getline(in, line) || in.eof()) {
    throw FormatError("checkpoint header truncated", 2);
  }
  Checkpoint checkpoint;
  try {
    const ordered_json header = ordered_json::parse(line);
    checkpoint.variate_key = header.at("variate_key").get<std::string>();
    const ModelConfig config = ConfigFromJson(header.at("config"));
    for (const auto &id : header.at("classes")) {
      checkpoint.classes.Insert(ParseAuthorId(id.get<std::string>()));
    }
    if (checkpoint.classes.size() != config.n_classes) {
      throw FormatError("class index size differs from n_classes", 2);
    }
    checkpoint.params = InitModel(config);
    const auto &adam = header.at("adam");
    AdamConfig adam_config;
    adam_config.learning_rate =
        std::bit_cast<double>(adam.at("learning_rate_bits").get<std::uint64_t>());
    adam_config.beta1 = std::bit_cast<double>(adam.at("beta1_bits").get<std::uint64_t>());
    adam_config.beta2 = std::bit_cast<double>(adam.at("beta2_bits").get<std::uint64_t>());
    adam_config.epsilon =
        std::bit_cast<double>(adam.at("epsilon_bits").get<std::uint64_t>());
    checkpoint.adam = AdamState::For(checkpoint.params, adam_config);
    checkpoint.adam.step = adam.at("step").get<std::int64_t>();
    if (header.at("tensor_sizes").get<std::vector<std::size_t>>() !=
        TensorSizes(checkpoint.params)) {
      throw FormatError("tensor sizes do not match the stored config", 2);
    }
  } catch (const nlohmann::json::exception &e) {
    throw FormatError(std::string("bad checkpoint header: ") + e.what(), 2);
  } catch (const InvalidArgument &e) {
    throw FormatError(std::string("bad checkpoint config: ") + e.what(), 2);
  }
  ReadDoubles(in, checkpoint.params);
  ReadDoubles(in, checkpoint.adam.first_moment);
  ReadDoubles(in, checkpoint.adam.second_moment);
  if (in.peek() != std::char_traits<char>::eof()) {
    throw FormatError("trailing bytes after checkpoint payload", 3);
  }
  return checkpoint;
}

void CheckCompatible(const Checkpoint &checkpoint, const Block &block) {
  if (checkpoint.classes.size() != block.classes.size()) {
    throw InvalidArgument(
        "checkpoint has " + std::to_string(checkpoint.classes.size()) +
        " classes, block '" + block.variate_key + "' has " +
        std::to_string(block.classes.size()));
  }
  if (!(checkpoint.classes == block.classes)) {
    throw InvalidArgument("checkpoint class index differs from block '" +
                          block.variate_key + "'");
  }
}

}  // namespace authorlink
