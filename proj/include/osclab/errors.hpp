#pragma once

#include <stdexcept>
#include <string>

namespace osclab {

enum class errc {
  beta_out_of_range,
  alpha_out_of_range,
  gamma_too_small,
  gamma_out_of_range,
  omega_zero,
  lower_order_exponent,
  tail_not_summable,
  domain,
  k_out_of_range,
  length,
  degenerate_boundary,
  zero_radius,
  nu_too_large,
  range,
  not_monotone,
  kappa_zero,
  window_overflow,
  no_resonance,
  containment,
  bad_config,
  parse,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::beta_out_of_range: return "BETA_OUT_OF_RANGE";
    case errc::alpha_out_of_range: return "ALPHA_OUT_OF_RANGE";
    case errc::gamma_too_small: return "GAMMA_TOO_SMALL";
    case errc::gamma_out_of_range: return "GAMMA_OUT_OF_RANGE";
    case errc::omega_zero: return "OMEGA_ZERO";
    case errc::lower_order_exponent: return "LOWER_ORDER_EXPONENT";
    case errc::tail_not_summable: return "TAIL_NOT_SUMMABLE";
    case errc::domain: return "DOMAIN";
    case errc::k_out_of_range: return "K_OUT_OF_RANGE";
    case errc::length: return "LENGTH";
    case errc::degenerate_boundary: return "DEGENERATE";
    case errc::zero_radius: return "ZERO_RADIUS";
    case errc::nu_too_large: return "NU_TOO_LARGE";
    case errc::range: return "RANGE";
    case errc::not_monotone: return "NOT_MONOTONE";
    case errc::kappa_zero: return "KAPPA_ZERO";
    case errc::window_overflow: return "WINDOW_OVERFLOW";
    case errc::no_resonance: return "NO_RESONANCE";
    case errc::containment: return "CONTAINMENT";
    case errc::bad_config: return "BAD_CONFIG";
    case errc::parse: return "PARSE";
  }
  return "UNKNOWN";
}

// Error with a stable machine-readable code; `index` identifies the offending
// term j when the violation is per-term (-1 otherwise).
class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what, int index = -1)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code),
        index_(index) {}

  errc code() const { return code_; }
  int index() const { return index_; }
  const char* code_name() const { return errc_name(code_); }

 private:
  errc code_;
  int index_;
};

[[noreturn]] inline void fail(errc code, const std::string& what, int index = -1) {
  throw Error(code, what, index);
}

}  // namespace osclab
