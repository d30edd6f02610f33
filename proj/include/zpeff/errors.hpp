#pragma once

#include <stdexcept>
#include <string>

namespace zpeff {

// Error taxonomy shared by every module. The C API maps these codes onto
// zpeff_status values one to one.
enum class errc {
  domain,             // parameter outside its mathematical domain
  validation,         // object invariant violated
  divergence,         // the requested quantity diverges at this point
  bracket,            // root bracket carries no sign change
  convergence,        // iteration budget exhausted
  feasibility,        // constraint set is empty
  insufficient_data,  // too few points for the requested fit
  empty_input,        // empty corpus / sample / table
  degenerate,         // degenerate configuration (e.g. zero denominator)
  parse,              // malformed text input
};

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

}  // namespace zpeff
