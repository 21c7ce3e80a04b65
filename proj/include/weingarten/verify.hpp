#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace weingarten {

struct VerifyCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyReport {
  std::string suite;
  std::vector<VerifyCheck> checks;

  bool passed() const;
  std::size_t failures() const;
  void add(std::string name, bool ok, std::string detail = {});
};

/// Overrides for suite ranges; unset fields use each suite's defaults.
struct VerifyBounds {
  std::optional<int> kmax;
  std::optional<int> nmax;
  std::optional<int> k;
  std::optional<long> n;
  std::uint64_t seed = 20240917;
  std::optional<int> count;
};

/// recursion, descension, pseudo, negative-control, routes, moments, bridge, haar.
const std::vector<std::string>& suite_names();

/// Throws std::invalid_argument for an unknown suite.
VerifyReport run_suite(const std::string& name, const VerifyBounds& bounds = {});

}  // namespace weingarten
