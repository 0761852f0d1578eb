#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hklab {

/// Base of every error raised by the engine. `kind()` is the stable error
/// class name written into reports.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define HKLAB_DEFINE_ERROR(Name)                                       \
  class Name : public Error {                                          \
   public:                                                             \
    explicit Name(const std::string& message) : Error(#Name, message) {} \
  }

HKLAB_DEFINE_ERROR(NonPrimeCharacteristic);
HKLAB_DEFINE_ERROR(DivisionByZero);
HKLAB_DEFINE_ERROR(FieldMismatch);
HKLAB_DEFINE_ERROR(UnknownVariable);
HKLAB_DEFINE_ERROR(LengthMismatch);
HKLAB_DEFINE_ERROR(NotAPowerOfP);
HKLAB_DEFINE_ERROR(ExponentOverflow);
HKLAB_DEFINE_ERROR(ZeroInput);
HKLAB_DEFINE_ERROR(EmptyIdeal);
HKLAB_DEFINE_ERROR(UnitIdeal);
HKLAB_DEFINE_ERROR(ResourceExceeded);
HKLAB_DEFINE_ERROR(InvalidLocus);
HKLAB_DEFINE_ERROR(UnsupportedLocus);
HKLAB_DEFINE_ERROR(InsufficientSamples);
HKLAB_DEFINE_ERROR(NotAChain);
HKLAB_DEFINE_ERROR(NotContaining);
HKLAB_DEFINE_ERROR(NotSystemOfParameters);
HKLAB_DEFINE_ERROR(IoError);

#undef HKLAB_DEFINE_ERROR

/// Parse failure with the byte offset where it was detected.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& message)
      : Error("SyntaxError",
              message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// One validation problem inside a configuration document.
struct ConfigIssue {
  std::string pointer;  // JSON pointer, e.g. "/ring/relations/0"
  std::string message;
};

/// Collects every validation problem found in a configuration, not just the
/// first one.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<ConfigIssue> issues)
      : Error("ConfigError", summarize(issues)), issues_(std::move(issues)) {}

  const std::vector<ConfigIssue>& issues() const noexcept { return issues_; }

 private:
  static std::string summarize(const std::vector<ConfigIssue>& issues) {
    std::string out = "invalid configuration";
    for (const auto& issue : issues) {
      out += "\n  ";
      out += issue.pointer.empty() ? std::string("/") : issue.pointer;
      out += ": ";
      out += issue.message;
    }
    return out;
  }

  std::vector<ConfigIssue> issues_;
};

}  // namespace hklab
