#pragma once

// Regression suite re-checking every reproducible numeric claim.

#include <cstdint>
#include <string>
#include <vector>

#include "tslines/json_io.hpp"

namespace tslines {

enum class CheckStatus { Pass, Fail, Discrepancy };

const char* to_string(CheckStatus s);

struct Check {
  std::string id;
  std::string anchor;  // the claim being checked, in words
  CheckStatus status = CheckStatus::Fail;
  Json measured;
  Json expected;
  double tolerance = 0.0;
};

struct VerifyReport {
  std::vector<Check> checks;
  std::uint64_t seed = 0;

  int count(CheckStatus s) const;
  /// 0 all pass, 2 only discrepancies, 1 any failure.
  int exit_code() const;
  Json to_json() const;
};

inline constexpr std::uint64_t kDefaultSeed = 1729;

VerifyReport verify_paper(std::uint64_t seed = kDefaultSeed);

}  // namespace tslines
