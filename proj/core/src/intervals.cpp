#include "chgap/intervals.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace chgap {

const char* errc_name(errc code) noexcept {
  switch (code) {
    case errc::odd_count: return "OddCount";
    case errc::not_sorted: return "NotSorted";
    case errc::zero_on_boundary: return "ZeroOnBoundary";
    case errc::zero_outside_bands: return "ZeroOutsideBands";
    case errc::endpoints_too_close: return "EndpointsTooClose";
    case errc::bad_parameter: return "BadParameter";
    case errc::order_too_small: return "OrderTooSmall";
    case errc::non_finite: return "NonFinite";
    case errc::quadrature_failure: return "QuadratureFailure";
    case errc::singular_cycle_matrix: return "SingularCycleMatrix";
    case errc::zero_not_bracketed: return "ZeroNotBracketed";
    case errc::non_positive_frequency: return "NonPositiveFrequency";
    case errc::asymmetry_exceeds_tolerance: return "AsymmetryExceedsTolerance";
    case errc::lattice_relation_violated: return "LatticeRelationViolated";
    case errc::truncation_bound_exceeded: return "TruncationBoundExceeded";
    case errc::wrong_genus: return "WrongGenus";
    case errc::non_real_residue: return "NonRealResidue";
    case errc::singular_tilde_a: return "SingularTildeA";
    case errc::non_imaginary_residue: return "NonImaginaryResidue";
    case errc::theta_zero_in_denominator: return "ThetaZeroInDenominator";
    case errc::mode_requires_genus_one: return "ModeRequiresGenusOne";
    case errc::integral_non_convergent: return "IntegralNonConvergent";
    case errc::pole_of_b: return "PoleOfB";
    case errc::range_exceeded: return "RangeExceeded";
    case errc::self_check_failed: return "SelfCheckFailed";
    case errc::origin_evaluation: return "OriginEvaluation";
    case errc::pole_hit: return "PoleHit";
    case errc::not_converged: return "NotConverged";
  }
  return "UnknownError";
}

IntervalSystem IntervalSystem::validate(std::vector<double> endpoints) {
  if (endpoints.size() < 2 || endpoints.size() % 2 != 0) {
    throw ValidationError(errc::odd_count,
                          "need an even number (>= 2) of endpoints, got " +
                              std::to_string(endpoints.size()));
  }
  for (double e : endpoints) {
    if (!std::isfinite(e)) {
      throw ValidationError(errc::not_sorted, "endpoint is not finite");
    }
  }
  const double span = endpoints.back() - endpoints.front();
  if (!(span > 0)) {
    throw ValidationError(errc::not_sorted, "endpoints must be increasing");
  }
  // Merging bands makes the period integrals blow up logarithmically, so
  // nearly coincident endpoints are rejected outright.
  const double min_sep = 1e-12 * span;
  for (std::size_t i = 1; i < endpoints.size(); ++i) {
    if (!(endpoints[i] > endpoints[i - 1])) {
      std::ostringstream os;
      os << "endpoints not strictly increasing at position " << i;
      throw ValidationError(errc::not_sorted, os.str());
    }
    if (endpoints[i] - endpoints[i - 1] < min_sep) {
      std::ostringstream os;
      os << "endpoints " << i - 1 << " and " << i << " closer than 1e-12*span";
      throw ValidationError(errc::endpoints_too_close, os.str());
    }
  }
  for (std::size_t i = 0; i < endpoints.size(); ++i) {
    if (endpoints[i] == 0.0 || std::abs(endpoints[i]) < min_sep) {
      throw ValidationError(errc::zero_on_boundary,
                            "an endpoint coincides with 0");
    }
  }
  const int n = static_cast<int>(endpoints.size() / 2) - 1;
  int m = -1;
  for (int j = 0; j <= n; ++j) {
    if (endpoints[2 * j] < 0.0 && 0.0 < endpoints[2 * j + 1]) {
      m = j;
      break;
    }
  }
  if (m < 0) {
    throw ValidationError(errc::zero_outside_bands,
                          "0 must lie strictly inside one band");
  }
  return IntervalSystem(std::move(endpoints), n, m);
}

double IntervalSystem::max_abs_endpoint() const {
  return std::max(std::abs(endpoints_.front()), std::abs(endpoints_.back()));
}

double IntervalSystem::total_band_length() const {
  double len = 0;
  for (int j = 0; j <= genus_; ++j) len += band_hi(j) - band_lo(j);
  return len;
}

IntervalSystem IntervalSystem::scaled(double factor) const {
  if (!(factor > 0)) {
    throw ValidationError(errc::bad_parameter, "scale factor must be > 0");
  }
  std::vector<double> ep = endpoints_;
  for (double& e : ep) e *= factor;
  return IntervalSystem(std::move(ep), genus_, zero_band_);
}

double IntervalSystem::sqrt_abs_radical(double x) const {
  double prod = 1.0;
  for (double e : endpoints_) prod *= std::abs(x - e);
  return std::sqrt(prod);
}

double IntervalSystem::sqrt_abs_radical_excluding(double x, int skip1,
                                                  int skip2) const {
  double prod = 1.0;
  for (int i = 0; i < static_cast<int>(endpoints_.size()); ++i) {
    if (i == skip1 || i == skip2) continue;
    prod *= std::abs(x - endpoints_[i]);
  }
  return std::sqrt(prod);
}

}  // namespace chgap
