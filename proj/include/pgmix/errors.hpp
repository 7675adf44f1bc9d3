#ifndef PGMIX_ERRORS_HPP
#define PGMIX_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pgmix {

// Base class for all library errors.
class error : public std::runtime_error {
public:
  explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid argument value (outside the mathematical domain of an operation).
class domain_error : public error {
public:
  explicit domain_error(const std::string& msg) : error(msg) {}
};

// Inconsistent matrix/vector dimensions.
class dimension_error : public error {
public:
  explicit dimension_error(const std::string& msg) : error(msg) {}
};

// Cholesky (or other decomposition) failure; carries the failing pivot index.
class singularity_error : public error {
public:
  singularity_error(const std::string& msg, int pivot_index)
      : error(msg + " (pivot " + std::to_string(pivot_index) + ")"),
        pivot(pivot_index) {}
  int pivot;
};

// Non-finite intermediate or other numerical breakdown.
class numeric_error : public error {
public:
  explicit numeric_error(const std::string& msg) : error(msg) {}
};

// Malformed input data (CSV parsing, response mapping, missing cells).
class data_error : public error {
public:
  explicit data_error(const std::string& msg) : error(msg) {}
};

// Malformed or inconsistent configuration.
class config_error : public error {
public:
  explicit config_error(const std::string& msg) : error(msg) {}
};

}  // namespace pgmix

#endif
