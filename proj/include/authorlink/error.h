#ifndef AUTHORLINK_ERROR_H_
#define AUTHORLINK_ERROR_H_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace authorlink {

// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed XML input. Carries the byte offset where expat gave up.
class ParseError : public Error {
 public:
  ParseError(const std::string &message, std::int64_t byte_offset)
      : Error(message + " at byte " + std::to_string(byte_offset)),
        byte_offset_(byte_offset) {}

  std::int64_t byte_offset() const { return byte_offset_; }

 private:
  std::int64_t byte_offset_;
};

// File could not be opened, read or written.
class IoError : public Error {
 public:
  IoError(const std::string &message, std::string path)
      : Error(message + ": " + path), path_(std::move(path)) {}

  const std::string &path() const { return path_; }

 private:
  std::string path_;
};

// Structured text file with a bad line. Line numbers are 1-based.
class FormatError : public Error {
 public:
  FormatError(const std::string &message, std::int64_t line)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

  std::int64_t line() const { return line_; }

 private:
  std::int64_t line_;
};

// Caller handed us something that violates an operation's precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace authorlink

#endif  // AUTHORLINK_ERROR_H_
