#ifndef SIEGEL_REPORT_HPP
#define SIEGEL_REPORT_HPP

#include <map>
#include <string>
#include <vector>

#include "siegel/binform.hpp"

namespace siegel {

// One verified equation: lhs and rhs evaluated independently, pass iff the
// residual is exactly zero.
struct CheckLine {
  std::string name;
  BigRat lhs = 0;
  BigRat rhs = 0;
  bool pass = false;
  bool skipped = false;    // does not count toward the verdict
  bool evaluated = false;  // lhs/rhs hold computed values
  std::string note;

  BigRat residual() const { return BigRat(lhs - rhs); }
};

struct RelationReport {
  std::string identity;
  std::map<std::string, Int> params;
  std::vector<CheckLine> checks;
  std::vector<BinQF> consumed;  // coefficient indices read while verifying

  bool pass() const {
    for (const CheckLine& c : checks)
      if (!c.skipped && !c.pass) return false;
    return true;
  }
  bool any_skipped() const {
    for (const CheckLine& c : checks)
      if (c.skipped) return true;
    return false;
  }

  CheckLine& add(const std::string& name, const BigRat& lhs, const BigRat& rhs) {
    CheckLine line;
    line.name = name;
    line.lhs = lhs;
    line.rhs = rhs;
    line.pass = (lhs == rhs);
    line.evaluated = true;
    checks.push_back(line);
    return checks.back();
  }
  CheckLine& add_skipped(const std::string& name, const std::string& why) {
    CheckLine line;
    line.name = name;
    line.skipped = true;
    line.note = why;
    checks.push_back(line);
    return checks.back();
  }
  CheckLine& add_failure(const std::string& name, const std::string& why) {
    CheckLine line;
    line.name = name;
    line.pass = false;
    line.note = why;
    checks.push_back(line);
    return checks.back();
  }
};

}  // namespace siegel

#endif
