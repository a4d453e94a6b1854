#pragma once

#include <stdexcept>
#include <string>

namespace wlmc {

/// Invalid arguments or configuration values.
class ValidationError : public std::invalid_argument {
public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// Filesystem / stream failures.
class IoError : public std::runtime_error {
public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

/// Unrecognized magic bytes or unsupported format version.
class FormatError : public IoError {
public:
  explicit FormatError(const std::string& what) : IoError(what) {}
};

/// Stream recognized but payload inconsistent with its header.
class CorruptDataError : public IoError {
public:
  explicit CorruptDataError(const std::string& what) : IoError(what) {}
};

/// A series failed to reach the requested tolerance within its term budget.
class ConvergenceError : public std::runtime_error {
public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace wlmc
