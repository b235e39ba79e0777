#pragma once

#include <functional>
#include <vector>

#include "chgap/intervals.hpp"

namespace chgap {

using Integrand = std::function<double(double)>;

enum class RuleKind { chebyshev_band, legendre_gap, jacobi_origin };

/// Nodes/weights of a positive quadrature rule. Immutable after construction.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  RuleKind kind = RuleKind::legendre_gap;
  int order = 0;
};

/// Gauss-Legendre rule on [-1,1] (Newton iteration on P_n).
QuadratureRule gauss_legendre(int order);

/// Gauss rule for the weight u^exponent on [0,1], exponent > -1
/// (Golub-Welsch on the Jacobi matrix). exponent == 0 recovers Legendre.
QuadratureRule gauss_jacobi_origin(int order, double exponent);

inline constexpr int default_quad_order = 256;

/// Integral over band j of f(xi)/|R(xi)|^{1/2}. The two inverse-square-root
/// endpoint factors are absorbed exactly by the cosine substitution
/// xi = mid + halfwidth*cos(theta) (Gauss-Chebyshev); the remaining factors
/// of |R|^{-1/2} are smooth on the closed band and evaluated directly.
double band_integral(const IntervalSystem& sys, int j, const Integrand& f,
                     int order = default_quad_order);

/// Integral over gap k (from b_k to a_{k+1}) of f(xi)/|R(xi)|^{1/2}; same
/// substitution with the gap endpoints absorbed.
double gap_integral(const IntervalSystem& sys, int k, const Integrand& f,
                    int order = default_quad_order);

/// Integral over band j of xi^l * log|xi| / |R(xi)|^{1/2}. When 0 is interior
/// to band j the integral is split at 0 and each half is graded toward the
/// logarithmic singularity (see log_half_band_moment).
double log_band_integral(const IntervalSystem& sys, int j, int l,
                         int order = default_quad_order);

/// Integral of f(xi)/|R(xi)|^{1/2} over (0, b_m) [positive_side] or (a_m, 0),
/// for smooth f; m is the band containing 0. The band-endpoint singularity is
/// absorbed by xi = c*sin^2(phi).
double half_band_integral(const IntervalSystem& sys, bool positive_side,
                          const Integrand& f, int order = default_quad_order);

/// Integral of xi^l * log|xi| / |R(xi)|^{1/2} over one half of the zero band.
/// Uses the sin^2 substitution (quadratic grading at 0) plus dyadic
/// Gauss-Legendre panels clustering at the log singularity.
double log_half_band_moment(const IntervalSystem& sys, bool positive_side,
                            int l, int order = default_quad_order);

/// Prefix integral int_{a_j}^{z} f/|R|^{1/2} for z strictly inside band j;
/// the a_j singularity is absorbed by xi = a_j + (z-a_j)*u^2.
double band_prefix_integral(const IntervalSystem& sys, int j, double z,
                            const Integrand& f, int order = default_quad_order);

/// Prefix integral int_{b_k}^{z} f/|R|^{1/2} for z strictly inside gap k.
double gap_prefix_integral(const IntervalSystem& sys, int k, double z,
                           const Integrand& f, int order = default_quad_order);

/// int_{b_n}^{infty} xi^l / |R(xi)|^{1/2} d(xi) for 0 <= l <= n-1 (the
/// integrand decays like xi^{l-n-1}). The head absorbs the b_n root with a
/// u^2 substitution; the tail is mapped by t = 1/xi onto a finite interval
/// with an analytic integrand, so no truncation error is incurred.
double exterior_monomial_integral(const IntervalSystem& sys, int l,
                                  int order = default_quad_order);

}  // namespace chgap
