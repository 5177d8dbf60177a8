#pragma once

#include <memory>
#include <string>
#include <vector>

#include "simprox/cf_number.hpp"
#include "simprox/digit_number.hpp"
#include "simprox/powers_core.hpp"
#include "simprox/verify_report.hpp"

namespace simprox {

// Number files carry a "kind" tag so verify commands accept either flavor.
// Big integers travel as decimal strings, rationals as "a/b" strings;
// nothing numeric goes through floating point.
void write_cf_json(const CFNumber& cf, const std::string& path,
                   const std::string& provenance = "");
void write_digits_json(const DigitNumber& d, const std::string& path,
                       const std::string& provenance = "");

struct LoadedNumber {
  std::unique_ptr<CFNumber> cf;      // exactly one of the two is set
  std::unique_ptr<DigitNumber> digits;
  std::string provenance;
  const RealNumber& real() const { return cf ? static_cast<const RealNumber&>(*cf) : *digits; }
};

LoadedNumber read_number_json(const std::string& path);

// "report_v1": stable field order so identical runs serialize identically
std::string report_to_json(const VerificationReport& rep);
void write_report_json(const VerificationReport& rep, const std::string& path);

void write_sweep_csv(const std::vector<SimError>& sweep, const std::string& path);

}  // namespace simprox
