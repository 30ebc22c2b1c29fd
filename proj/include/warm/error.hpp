#pragma once

#include <stdexcept>
#include <string>

namespace warm {

enum class Errc {
  kInvalidArgument = 1,
  kParse,
  kNotConverged,
  kIo,
  kResampleCap,
  kInternal,
};

/// Base exception for everything thrown by the warm core. The C API maps
/// the code onto its status enum.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

inline Error invalid_argument(const std::string& what) { return Error(Errc::kInvalidArgument, what); }

}  // namespace warm
