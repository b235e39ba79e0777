#pragma once

#include <vector>

#include "chgap/errors.hpp"

namespace chgap {

/// A validated union of disjoint open intervals (a_0,b_0) u ... u (a_n,b_n)
/// with a_0 < b_0 < ... < a_n < b_n and 0 strictly inside exactly one band.
/// n is the genus (number of gaps), m the index of the band containing 0.
class IntervalSystem {
 public:
  /// Validates raw endpoints (a_0, b_0, ..., a_n, b_n). Throws
  /// ValidationError with code odd_count / not_sorted / endpoints_too_close /
  /// zero_on_boundary / zero_outside_bands naming the violated invariant.
  static IntervalSystem validate(std::vector<double> endpoints);

  int genus() const { return genus_; }           // n
  int zero_band() const { return zero_band_; }   // m
  int band_count() const { return genus_ + 1; }
  int gap_count() const { return genus_; }

  double band_lo(int j) const { return endpoints_[2 * j]; }      // a_j
  double band_hi(int j) const { return endpoints_[2 * j + 1]; }  // b_j
  double gap_lo(int k) const { return endpoints_[2 * k + 1]; }   // b_k
  double gap_hi(int k) const { return endpoints_[2 * k + 2]; }   // a_{k+1}

  const std::vector<double>& endpoints() const { return endpoints_; }
  double span() const { return endpoints_.back() - endpoints_.front(); }
  double max_abs_endpoint() const;
  double total_band_length() const;

  IntervalSystem scaled(double factor) const;

  /// |R(x)|^{1/2} with R(x) = prod_j (x-a_j)(x-b_j).
  double sqrt_abs_radical(double x) const;
  /// Same but skipping the two endpoint factors with indices i1, i2
  /// (flat indices into endpoints()). Used when a substitution has already
  /// absorbed those roots.
  double sqrt_abs_radical_excluding(double x, int skip1, int skip2) const;

 private:
  explicit IntervalSystem(std::vector<double> ep, int n, int m)
      : endpoints_(std::move(ep)), genus_(n), zero_band_(m) {}

  std::vector<double> endpoints_;
  int genus_ = 0;
  int zero_band_ = 0;
};

}  // namespace chgap
