#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "holodyn/types.hpp"

namespace holodyn {

enum class Verdict { Pass, Fail, Inconclusive };

const char* verdict_name(Verdict v);

/// Outcome of a sampled inequality certification. Margins are normalized so
/// that a non-negative value means the inequality holds at that sample.
struct CertReport {
  Verdict verdict = Verdict::Inconclusive;
  double min_margin = 0.0;
  double max_abs_margin = 0.0;
  std::vector<CVec> witness;
  double tolerance = 0.0;
  std::uint64_t samples_used = 0;
  std::uint64_t samples_skipped = 0;
  bool group_candidate = false;
  std::string note;

  /// Strict interior pass: every margin clears the tolerance.
  bool certified_pass() const { return verdict == Verdict::Pass && min_margin > tolerance; }
};

/// Accumulates margins in sample order; the first minimum wins ties, so the
/// result does not depend on how samples were evaluated.
class MarginAccumulator {
 public:
  explicit MarginAccumulator(double tolerance) { report_.tolerance = tolerance; report_.min_margin = 0.0; }

  void add(double margin, std::vector<CVec> witness) {
    ++report_.samples_used;
    if (!seen_ || margin < report_.min_margin) {
      report_.min_margin = margin;
      report_.witness = std::move(witness);
      seen_ = true;
    }
    report_.max_abs_margin = std::max(report_.max_abs_margin, std::abs(margin));
  }
  void skip() { ++report_.samples_skipped; }
  void error(const std::string& what) {
    errored_ = true;
    if (report_.note.empty()) report_.note = what;
  }

  CertReport finish() {
    if (seen_ && report_.min_margin < -report_.tolerance) {
      report_.verdict = Verdict::Fail;
    } else if (errored_ || !seen_) {
      report_.verdict = Verdict::Inconclusive;
      if (!seen_ && report_.note.empty()) report_.note = "no usable samples";
    } else {
      report_.verdict = Verdict::Pass;
    }
    return report_;
  }

 private:
  CertReport report_;
  bool seen_ = false;
  bool errored_ = false;
};

}  // namespace holodyn
