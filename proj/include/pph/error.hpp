#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pph {

enum class Errc {
  mode_mismatch,
  dimension_mismatch,
  nesting_violation,
  regularity,
  domain,
  degree,
  closure,
  order,
  weight,
  morphism,
  homotopy_verification,
  chain_endpoint,
  consistency,
  parse,
  usage,
  io,
  violation,
};

inline std::string_view errc_name(Errc e) {
  switch (e) {
    case Errc::mode_mismatch: return "mode-mismatch";
    case Errc::dimension_mismatch: return "dimension-mismatch";
    case Errc::nesting_violation: return "nesting-violation";
    case Errc::regularity: return "regularity";
    case Errc::domain: return "domain";
    case Errc::degree: return "degree-mismatch";
    case Errc::closure: return "closure";
    case Errc::order: return "order";
    case Errc::weight: return "weight";
    case Errc::morphism: return "morphism";
    case Errc::homotopy_verification: return "homotopy-verification";
    case Errc::chain_endpoint: return "chain-endpoint";
    case Errc::consistency: return "internal-consistency";
    case Errc::parse: return "parse";
    case Errc::usage: return "usage";
    case Errc::io: return "io";
    case Errc::violation: return "violation";
  }
  return "unknown";
}

// Every failure raised by the library carries a machine-readable category.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }
  std::string_view kind() const noexcept { return errc_name(code_); }

 private:
  Errc code_;
};

}  // namespace pph
