#pragma once

#include <string>
#include <vector>

namespace gch::sym {

struct IdentityVerdict {
  std::string name;
  std::size_t residual_terms = 0;  // terms left in the residual (0 when it vanishes)
  bool pass = false;
  std::string detail;

  bool operator==(const IdentityVerdict&) const = default;
};

/// Identity groups accepted by run_verification.
const std::vector<std::string>& identity_groups();

bool is_identity_group(const std::string& name);

/// Runs the named groups ("pss", "dubrovin", "hamiltonian-pair", "rotation",
/// or "all"); groups are evaluated concurrently. Throws std::invalid_argument
/// for an unknown name.
std::vector<IdentityVerdict> run_verification(const std::vector<std::string>& groups);

bool all_pass(const std::vector<IdentityVerdict>& verdicts);

}  // namespace gch::sym
