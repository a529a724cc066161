#include "authorlink/encoders.h"

#include <charconv>
#include <fstream>

#include "authorlink/error.h"
#include "authorlink/unicode.h"

namespace authorlink {
namespace {

std::uint64_t Fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

void AddHashed(Eigen::VectorXd &v, std::string_view feature) {
  const std::uint64_t h = Fnv1a(feature);
  const auto bucket = static_cast<Eigen::Index>(h % static_cast<std::uint64_t>(v.size()));
  v[bucket] += ((h >> 47) & 1U) != 0 ? -1.0 : 1.0;
}

void NormalizeL2(Eigen::VectorXd &v) {
  const double norm = v.norm();
  if (norm > 0.0) v /= norm;
}

void CheckDim(int dim) {
  if (dim < 1) throw InvalidArgument("encoder dimension must be positive");
}

}  // namespace

HashedNameEncoder::HashedNameEncoder(int dim) : dim_(dim) { CheckDim(dim); }

Eigen::VectorXd HashedNameEncoder::Encode(std::string_view text) const {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(dim_);
  for (const std::string &word : unicode::AlnumTokens(unicode::CaseFold(text))) {
    std::vector<std::string> chars{"<"};
    for (std::string &cp : unicode::CodePoints(word)) chars.push_back(std::move(cp));
    chars.emplace_back(">");
    const std::size_t len = chars.size();
    for (std::size_t n = 1; n <= 3; ++n) {
      for (std::size_t start = 0; start + n <= len; ++start) {
        if (n == 1 && (start == 0 || start == len - 1)) continue;
        std::string gram;
        for (std::size_t k = start; k < start + n; ++k) gram += chars[k];
        AddHashed(v, gram);
      }
    }
  }
  NormalizeL2(v);
  return v;
}

HashedTextEncoder::HashedTextEncoder(int dim) : dim_(dim) { CheckDim(dim); }

Eigen::VectorXd HashedTextEncoder::Encode(std::string_view text) const {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(dim_);
  const std::vector<std::string> tokens = unicode::AlnumTokens(text);
  if (tokens.empty()) return v;
  for (const std::string &token : tokens) AddHashed(v, token);
  v /= static_cast<double>(tokens.size());
  NormalizeL2(v);
  return v;
}

std::shared_ptr<TableEncoder> TableEncoder::Load(
    const std::string &path, int expected_dim,
    std::shared_ptr<const Encoder> fallback) {
  CheckDim(expected_dim);
  if (!fallback || fallback->dim() != expected_dim) {
    throw InvalidArgument("fallback encoder width must equal table width");
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open embedding table", path);

  std::shared_ptr<TableEncoder> encoder(
      new TableEncoder(expected_dim, std::move(fallback)));
  std::string line;
  std::int64_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      throw FormatError("missing tab between key and values", line_number);
    }
    std::string key = line.substr(0, tab);
    Eigen::VectorXd values(expected_dim);
    int count = 0;
    const char *p = line.data() + tab + 1;
    const char *end = line.data() + line.size();
    while (true) {
      while (p < end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
      if (p == end) break;
      double value = 0.0;
      auto [next, ec] = std::from_chars(p, end, value);
      if (ec != std::errc() || (next < end && *next != ' ' && *next != '\t' &&
                                *next != '\r')) {
        throw FormatError("bad number", line_number);
      }
      if (count < expected_dim) values[count] = value;
      ++count;
      p = next;
    }
    if (count != expected_dim) {
      throw FormatError("expected " + std::to_string(expected_dim) +
                            " values, found " + std::to_string(count),
                        line_number);
    }
    if (!encoder->table_.emplace(std::move(key), std::move(values)).second) {
      throw FormatError("duplicate key", line_number);
    }
  }
  return encoder;
}

Eigen::VectorXd TableEncoder::Encode(std::string_view text) const {
  auto it = table_.find(std::string(text));
  if (it != table_.end()) return it->second;
  misses_.fetch_add(1, std::memory_order_relaxed);
  return fallback_->Encode(text);
}

void SaveEmbeddingTable(
    const std::string &path,
    const std::vector<std::pair<std::string, Eigen::VectorXd>> &entries) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open embedding table for writing", path);
  char buffer[64];
  for (const auto &[key, values] : entries) {
    out << key << '\t';
    for (Eigen::Index i = 0; i < values.size(); ++i) {
      auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), values[i]);
      if (i > 0) out << ' ';
      out.write(buffer, end - buffer);
    }
    out << '\n';
  }
  if (!out) throw IoError("write failed", path);
}

Encoders Encoders::Default(int name_dim, int text_dim) {
  return Encoders{std::make_shared<HashedNameEncoder>(name_dim),
                  std::make_shared<HashedTextEncoder>(text_dim)};
}

FeaturePair AssembleFeatures(std::string_view target_first_name,
                             std::string_view coauthor_p,
                             std::string_view coauthor_j,
                             std::string_view title, std::string_view source,
                             const Encoder &name_encoder,
                             const Encoder &text_encoder) {
  const int name_dim = name_encoder.dim();
  FeaturePair pair;
  pair.x1.resize(2 * name_dim);
  pair.x1.head(name_dim) = name_encoder.Encode(target_first_name);
  pair.x1.tail(name_dim) =
      0.5 * (name_encoder.Encode(coauthor_p) + name_encoder.Encode(coauthor_j));
  pair.x2 = 0.5 * (text_encoder.Encode(title) + text_encoder.Encode(source));
  return pair;
}

}  // namespace authorlink
