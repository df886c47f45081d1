#pragma once

#include <string>
#include <vector>

#include "kleinian/group_families.hpp"

namespace kleinian {

struct VerifyRow {
  std::string suite;
  std::string check;
  std::string expected;
  std::string measured;
  bool passed;
};

/// Suite names accepted by run_suite besides "all".
std::vector<std::string> suite_names();

/// Runs one suite (or all of them). Throws ParseError for unknown names.
std::vector<VerifyRow> run_suite(const std::string& suite);

/// Fixed-width table, one row per line.
std::string format_rows(const std::vector<VerifyRow>& rows);

/// Orbit-oracle word length giving visible accumulation for each family.
int oracle_radius(const GroupSpec& spec);

}  // namespace kleinian
