#pragma once

#include <stdexcept>
#include <string>

namespace tentlab {

enum class Errc {
  invalid_argument = 1,
  parse_error,
  backend_mismatch,
  out_of_domain,
  unsupported,
  no_convergence,
};

/// Base exception for every failure raised by the core library. The C API
/// maps `code()` onto its status enum one to one.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace tentlab
