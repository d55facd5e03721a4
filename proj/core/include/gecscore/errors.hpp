#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace gecscore {

// Root of every error raised by the library. The CLI maps these to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on an argument was violated (n = 0, empty sample list, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class CorpusError : public Error {
 public:
  CorpusError(const std::string& what, std::size_t line)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

  // 1-based line number in the corpus file, 0 when not tied to a line.
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// The remote service could not be reached or the connection failed mid-request.
class TransportError : public Error {
 public:
  TransportError(const std::string& what, std::vector<std::size_t> failed_indices = {})
      : Error(what), failed_(std::move(failed_indices)) {}

  // Input indices whose batch failed; empty when the failure is not batch-specific.
  const std::vector<std::size_t>& failed_indices() const noexcept { return failed_; }

 private:
  std::vector<std::size_t> failed_;
};

// The service answered, but not in a way the protocol allows (non-200, bad body,
// count mismatch).
class ProtocolError : public Error {
 public:
  ProtocolError(const std::string& what, std::vector<std::size_t> failed_indices = {})
      : Error(what), failed_(std::move(failed_indices)) {}

  const std::vector<std::size_t>& failed_indices() const noexcept { return failed_; }

 private:
  std::vector<std::size_t> failed_;
};

class GecError : public Error {
 public:
  using Error::Error;
};

// Wraps a backend or metric failure with the sample it happened on.
class ScoringError : public Error {
 public:
  ScoringError(const std::string& sample_id, const std::string& what)
      : Error("sample '" + sample_id + "': " + what), sample_id_(sample_id) {}

  const std::string& sample_id() const noexcept { return sample_id_; }

 private:
  std::string sample_id_;
};

class CalibrationError : public Error {
 public:
  using Error::Error;
};

}  // namespace gecscore
