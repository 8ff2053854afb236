#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace csf {

/// Error categories. Each maps onto one CLI exit status.
enum class Errc {
  invalid_curve,  // curve invariant violated on input
  domain,         // parameter outside the valid domain of an operation
  degenerate,     // geometrically degenerate input (collinear fit, zero distance)
  numerical,      // numerical failure during a run (self-intersection, instability)
  io,             // file system or parse failure
  config,         // bad command line or config value
  check_failed,   // a diagnostic check reported violations
};

constexpr std::string_view to_string(Errc e) {
  switch (e) {
    case Errc::invalid_curve: return "invalid_curve";
    case Errc::domain: return "domain";
    case Errc::degenerate: return "degenerate";
    case Errc::numerical: return "numerical";
    case Errc::io: return "io";
    case Errc::config: return "config";
    case Errc::check_failed: return "check_failed";
  }
  return "unknown";
}

/// Exit status used by the command line front end: 2 config, 3 numerical, 4 check.
constexpr int exit_status(Errc e) {
  switch (e) {
    case Errc::numerical:
    case Errc::degenerate: return 3;
    case Errc::check_failed: return 4;
    default: return 2;
  }
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace csf
