#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vsb {

// Base for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(std::string msg) : std::runtime_error(std::move(msg)) {}
};

// Syntax or semantic error in a line notation (SMILES/SMARTS), with the
// offending position in the input string.
class ParseError : public Error {
 public:
  ParseError(std::string msg, std::size_t pos)
      : Error(msg + " (at position " + std::to_string(pos) + ")"),
        position_(pos) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// A SMARTS feature outside the supported subset. Carries the offending
// token so catalog loaders can audit coverage.
class UnsupportedFeatureError : public Error {
 public:
  UnsupportedFeatureError(std::string feature, std::size_t pos)
      : Error("unsupported SMARTS feature '" + feature + "' (at position " +
              std::to_string(pos) + ")"),
        feature_(std::move(feature)) {}
  const std::string& feature() const { return feature_; }

 private:
  std::string feature_;
};

class ValenceError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Bad or inconsistent input data (configs, tables, outcome files).
class DataError : public Error {
 public:
  using Error::Error;
};

}  // namespace vsb
