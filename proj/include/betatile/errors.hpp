#pragma once

#include <stdexcept>
#include <string>

namespace betatile {

enum class errc {
  not_monic,
  not_irreducible,
  not_pisot,
  degree_too_large,
  division_by_zero,
  out_of_range,
  iteration_budget_exceeded,
  integer_beta,
  perron_mismatch,
  not_coprime,
  not_fundamental,
  invalid_interval,
  not_in_z_inv_beta,
  inadmissible,
  precision_exceeded,
  bad_input,
};

const char* errc_name(errc c);

class error : public std::runtime_error {
public:
  error(errc c, const std::string& what)
      : std::runtime_error(std::string(errc_name(c)) + ": " + what), code_(c) {}
  errc code() const noexcept { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc c, const std::string& what) { throw error(c, what); }

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::not_monic: return "NotMonic";
    case errc::not_irreducible: return "NotIrreducible";
    case errc::not_pisot: return "NotPisot";
    case errc::degree_too_large: return "DegreeTooLarge";
    case errc::division_by_zero: return "DivisionByZero";
    case errc::out_of_range: return "OutOfRange";
    case errc::iteration_budget_exceeded: return "IterationBudgetExceeded";
    case errc::integer_beta: return "IntegerBeta";
    case errc::perron_mismatch: return "PerronMismatch";
    case errc::not_coprime: return "NotCoprime";
    case errc::not_fundamental: return "NotFundamental";
    case errc::invalid_interval: return "InvalidInterval";
    case errc::not_in_z_inv_beta: return "NotInZInvBeta";
    case errc::inadmissible: return "Inadmissible";
    case errc::precision_exceeded: return "PrecisionExceeded";
    case errc::bad_input: return "BadInput";
  }
  return "UnknownError";
}

}  // namespace betatile
