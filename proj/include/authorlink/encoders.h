#ifndef AUTHORLINK_ENCODERS_H_
#define AUTHORLINK_ENCODERS_H_

#include <atomic>
#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>

namespace authorlink {

inline constexpr int kNameDim = 200;
inline constexpr int kTextDim = 768;

// Maps a string to a fixed-width real vector. Implementations are immutable
// after construction and safe to share between threads.
class Encoder {
 public:
  virtual ~Encoder() = default;
  virtual int dim() const = 0;
  virtual Eigen::VectorXd Encode(std::string_view text) const = 0;
};

// Character n-grams (n = 1..3) of each case-folded word, with '<' and '>'
// as word boundaries, feature-hashed into signed buckets and L2-normalized.
class HashedNameEncoder : public Encoder {
 public:
  explicit HashedNameEncoder(int dim = kNameDim);
  int dim() const override { return dim_; }
  Eigen::VectorXd Encode(std::string_view text) const override;

 private:
  int dim_;
};

// Lowercased alphanumeric tokens hashed into signed buckets, mean-pooled
// and L2-normalized. Word order is ignored.
class HashedTextEncoder : public Encoder {
 public:
  explicit HashedTextEncoder(int dim = kTextDim);
  int dim() const override { return dim_; }
  Eigen::VectorXd Encode(std::string_view text) const override;

 private:
  int dim_;
};

// Precomputed vectors keyed by exact string, with a fallback encoder for
// misses. File format: one "key<TAB>v1 v2 ... vd" entry per line.
class TableEncoder : public Encoder {
 public:
  // Throws FormatError on a dimension mismatch or duplicate key, IoError if
  // the file cannot be read, InvalidArgument if the fallback width differs.
  static std::shared_ptr<TableEncoder> Load(
      const std::string &path, int expected_dim,
      std::shared_ptr<const Encoder> fallback);

  int dim() const override { return dim_; }
  Eigen::VectorXd Encode(std::string_view text) const override;

  std::size_t size() const { return table_.size(); }
  std::size_t misses() const { return misses_.load(); }

 private:
  TableEncoder(int dim, std::shared_ptr<const Encoder> fallback)
      : dim_(dim), fallback_(std::move(fallback)) {}

  int dim_;
  std::shared_ptr<const Encoder> fallback_;
  std::unordered_map<std::string, Eigen::VectorXd> table_;
  mutable std::atomic<std::size_t> misses_{0};
};

// Writes entries in the TableEncoder format with round-trip-exact values.
void SaveEmbeddingTable(
    const std::string &path,
    const std::vector<std::pair<std::string, Eigen::VectorXd>> &entries);

struct Encoders {
  std::shared_ptr<const Encoder> name;
  std::shared_ptr<const Encoder> text;

  static Encoders Default(int name_dim = kNameDim, int text_dim = kTextDim);
};

// The two model inputs: x1 = name(first) ++ mean(name(p), name(j)) and
// x2 = mean(text(title), text(source)).
struct FeaturePair {
  Eigen::VectorXd x1;
  Eigen::VectorXd x2;
};

FeaturePair AssembleFeatures(std::string_view target_first_name,
                             std::string_view coauthor_p,
                             std::string_view coauthor_j,
                             std::string_view title, std::string_view source,
                             const Encoder &name_encoder,
                             const Encoder &text_encoder);

inline FeaturePair AssembleFeatures(std::string_view target_first_name,
                                    std::string_view coauthor_p,
                                    std::string_view coauthor_j,
                                    std::string_view title,
                                    std::string_view source,
                                    const Encoders &encoders) {
  return AssembleFeatures(target_first_name, coauthor_p, coauthor_j, title,
                          source, *encoders.name, *encoders.text);
}

}  // namespace authorlink

#endif  // AUTHORLINK_ENCODERS_H_
