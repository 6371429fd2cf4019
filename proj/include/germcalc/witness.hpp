// Independent replay of verdict witnesses with exact arithmetic.
#pragma once

#include <map>
#include <string>

#include "germcalc/verdict.hpp"

namespace germcalc {

struct WitnessCheck {
  bool ok = true;
  /// False for Unknown verdicts and non-verdict report lines.
  bool checked = false;
  std::string detail;
};

/// Checks Proved and Refuted verdicts of every query kind, recursing into
/// nested verdicts. Membership facts are re-derived in a different term
/// order than the engine uses, so cached bases are never trusted.
class WitnessVerifier {
 public:
  WitnessCheck check(const json& verdict);

 private:
  void verify(const json& v);

  std::map<std::string, bool> done_;
};

WitnessCheck verify_witness(const json& verdict);

}  // namespace germcalc
