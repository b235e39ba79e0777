#pragma once

#include <stdexcept>
#include <string>

namespace chgap {

// Failure taxonomy. Validation errors are caller mistakes (bad endpoint
// lists, out-of-domain parameters, bad config); numerical errors are
// internal breakdowns surfaced by residual checks or range guards.
enum class errc {
  // interval validation
  odd_count,
  not_sorted,
  zero_on_boundary,
  zero_outside_bands,
  endpoints_too_close,
  bad_parameter,
  // quadrature
  order_too_small,
  non_finite,
  quadrature_failure,
  // surface construction
  singular_cycle_matrix,
  zero_not_bracketed,
  non_positive_frequency,
  asymmetry_exceeds_tolerance,
  lattice_relation_violated,
  // theta
  truncation_bound_exceeded,
  wrong_genus,
  // szego constants
  non_real_residue,
  singular_tilde_a,
  non_imaginary_residue,
  // asymptotic assembly
  theta_zero_in_denominator,
  mode_requires_genus_one,
  integral_non_convergent,
  // kernel oracle
  pole_of_b,
  range_exceeded,
  self_check_failed,
  origin_evaluation,
  pole_hit,
  not_converged,
};

const char* errc_name(errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& detail)
      : std::runtime_error(std::string(errc_name(code)) + ": " + detail),
        code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

struct ValidationError : Error {
  using Error::Error;
};

struct NumericalError : Error {
  using Error::Error;
};

}  // namespace chgap
