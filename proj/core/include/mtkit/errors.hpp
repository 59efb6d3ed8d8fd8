#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mtkit {

// Root of every exception the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Parallel files disagree on line count.
class AlignmentError : public Error {
 public:
  AlignmentError(std::size_t source_lines, std::size_t target_lines);
  std::size_t source_lines() const { return source_lines_; }
  std::size_t target_lines() const { return target_lines_; }

 private:
  std::size_t source_lines_;
  std::size_t target_lines_;
};

// Errors tied to a line of an input file. line() is 1-based.
class LineError : public Error {
 public:
  LineError(const std::string& what, std::size_t line);
  std::size_t line() const { return line_; }
  // Message without the "line N: " prefix.
  const std::string& detail() const { return detail_; }

 private:
  std::size_t line_;
  std::string detail_;
};

class EncodingError : public LineError {
 public:
  using LineError::LineError;
};

class FormatError : public LineError {
 public:
  using LineError::LineError;
};

class ParseError : public LineError {
 public:
  using LineError::LineError;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class TrainingError : public Error {
 public:
  using Error::Error;
};

// Hypothesis/reference (or system A/B) sequences of different length.
class PairingError : public Error {
 public:
  using Error::Error;
};

}  // namespace mtkit
