#pragma once

// Invariant suite run by `viscid audit`: each check measures one quantity
// and compares it with its band.

#include <string>
#include <vector>

namespace viscid::cli {

struct AuditCheck {
  std::string module;
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  /// true: pass iff value <= bound; false: pass iff value >= bound.
  bool upper = true;
  bool pass = false;
};

[[nodiscard]] std::vector<AuditCheck> run_audit();

}  // namespace viscid::cli
