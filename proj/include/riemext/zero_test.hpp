#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "riemext/expr.hpp"

namespace riemext {

enum class Verdict { Zero, NonZero, Unknown };

std::string to_string(Verdict v);

/// Outcome of a zero test. Zero is only ever reported for a canonical 0;
/// NonZero always carries the sample point where |value| exceeded the
/// threshold. `location` names the tensor component for tensor-valued tests.
struct ZeroVerdict {
  Verdict verdict = Verdict::Unknown;
  std::optional<std::map<Symbol, Rational>> witness;
  double value = 0.0;
  std::string location;

  bool is_zero() const { return verdict == Verdict::Zero; }
  bool is_nonzero() const { return verdict == Verdict::NonZero; }
};

struct ZeroTestOptions {
  int trials = 8;
  double threshold = 1e-9;
  std::uint64_t seed = 0;
};

/// Canonical check first; otherwise random rational points in [-10, 10]
/// with denominators up to 64. Points where a denominator vanishes are
/// resampled, up to 10x `trials` attempts.
ZeroVerdict is_zero(const Expr& e, const ZeroTestOptions& options = {});

/// Folds per-item verdicts: NonZero dominates, then Unknown, then Zero.
ZeroVerdict combine(const std::vector<ZeroVerdict>& verdicts);

}  // namespace riemext
