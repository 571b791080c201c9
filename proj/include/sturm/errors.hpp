#pragma once

#include <stdexcept>
#include <string>

namespace sturm {

// Quadrature failed to reach the requested tolerance within the depth cap;
// carries the best estimate seen so far.
class ToleranceError : public std::runtime_error {
 public:
  ToleranceError(const std::string& what, double best_estimate)
      : std::runtime_error(what), best_estimate_(best_estimate) {}
  double best_estimate() const { return best_estimate_; }

 private:
  double best_estimate_;
};

// Bracket expansion for d * I(x,d) = 2 ran past the cap without a sign
// change: no finite positive root detected on the probed range.
class NoFiniteRootError : public std::runtime_error {
 public:
  NoFiniteRootError(const std::string& what, double bracket_reached)
      : std::runtime_error(what), bracket_reached_(bracket_reached) {}
  double bracket_reached() const { return bracket_reached_; }

 private:
  double bracket_reached_;
};

// Fundamental-system construction exceeded the admissible Wronskian drift.
class ConditioningError : public std::runtime_error {
 public:
  ConditioningError(const std::string& what, double drift)
      : std::runtime_error(what), drift_(drift) {}
  double drift() const { return drift_; }

 private:
  double drift_;
};

}  // namespace sturm
