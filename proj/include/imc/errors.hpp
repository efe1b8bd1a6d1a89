#ifndef IMC_ERRORS_HPP
#define IMC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace imc {

// Error taxonomy: ConfigError for malformed input files/schemas (CLI exit 2),
// DomainError for semantically invalid problems or impossible requests
// (CLI exit 1), InternalError for broken invariants that indicate a bug.

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

class DomainError : public std::runtime_error {
 public:
  DomainError(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace imc

#endif
