#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "chgap/intervals.hpp"
#include "chgap/quadrature.hpp"

namespace chgap {

enum class Side { above, below };

/// All genus-n data of the two-sheeted surface w^2 = R(z): the A-cycle moment
/// matrix and its reduced block, the degree-(n+1) monic polynomial p with the
/// vanishing A-cycle periods, its band zeros, the gap frequencies, the
/// B-period matrix, the gap zeros of prod(z-b_i) - prod(z-a_i), the Riemann
/// constants, the divisor shift d, and the Abel image of infinity.
///
/// Branch bookkeeping (first sheet, real axis): on band j the + boundary
/// value of sqrt(R) is i(-1)^{n-j}|R|^{1/2}; on gap k it is
/// (-1)^{n-k}|R|^{1/2}. Every path integral below is assembled from these
/// signed pieces, and the B-cycle orientation is pinned by the identity
/// int_{B_j} p/sqrt(R) = -Omega_j, which is asserted during construction.
struct SurfaceData {
  IntervalSystem sys;
  int quad_order = default_quad_order;

  Eigen::MatrixXcd cycle_matrix;       // (n+1)x(n+1), purely imaginary
  Eigen::VectorXcd cycle_rhs;          // column l = n+1
  Eigen::MatrixXcd reduced_cycle;      // rows 1..n, cols 0..n-1
  Eigen::MatrixXcd reduced_cycle_inv;  // inverse of the above (n >= 1)
  Eigen::VectorXd poly_coeffs;         // p_0..p_n of monic p, degree n+1
  std::vector<double> band_zeros;      // one zero of p per band
  Eigen::VectorXd frequencies;         // Omega_1..Omega_n, positive increasing
  Eigen::MatrixXcd period_matrix;      // tau, symmetric, Im positive definite
  std::vector<double> gap_zeros;       // z_j in gap j-1, j = 1..n
  Eigen::VectorXcd riemann_constants;  // K = sum_j A(a_j)
  Eigen::VectorXcd divisor_shift;      // d = K + sum_j int_{a_0}^{z_j} omega
  Eigen::VectorXcd abel_infinity;      // A(inf) on the first sheet
  double lattice_residual = 0;         // defect of A(inf) + d = 0 mod lattice

  int genus() const { return sys.genus(); }

  double poly(double z) const;  // p(z)
  double h(double z) const;     // prod(z-a_k) + prod(z-b_k)

  /// Abel map at real z by piecewise path integration on the first sheet.
  Eigen::VectorXcd abel(double z, Side side) const;

  /// Closed-form Abel values at band endpoints (half periods). endpoint_index
  /// is the flat index into sys.endpoints().
  Eigen::VectorXcd abel_endpoint(int endpoint_index, Side side) const;

  /// Signed one-form coefficient row: omega_i = sum_m z^{m-1}
  /// (reduced_cycle_inv)_{m,i} dz / sqrt(R). Returns the length-n vector of
  /// polynomial parts evaluated at xi (without the 1/sqrt(R) factor).
  Eigen::VectorXcd omega_poly(double xi) const;

  /// Generic B_j-cycle integral of q(z)/sqrt(R) for a polynomial part q
  /// supplied as a callback (absolute-value radical handled internally).
  std::complex<double> b_cycle_integral(int j, const Integrand& q) const;
};

/// Individual construction stages, exposed for oracle-first tests.
std::pair<Eigen::MatrixXcd, Eigen::VectorXcd> cycle_matrix(
    const IntervalSystem& sys, int order = default_quad_order);

std::pair<Eigen::VectorXd, std::vector<double>> master_polynomial(
    const IntervalSystem& sys, const Eigen::MatrixXcd& big_a,
    const Eigen::VectorXcd& a_vec);

Eigen::VectorXd frequencies(const IntervalSystem& sys,
                            const Eigen::VectorXd& poly_coeffs,
                            int order = default_quad_order);

std::vector<double> branch_zeros(const IntervalSystem& sys);

/// Reduce v modulo the lattice Z^n + tau Z^n: solves the 2n x 2n real system
/// for the lattice coordinates, rounds them, and returns the rounded integer
/// coordinates plus the residual norm.
struct LatticePoint {
  Eigen::VectorXd integer_part;
  Eigen::VectorXd tau_part;
  double residual;
};
LatticePoint lattice_reduce(const Eigen::VectorXcd& v,
                            const Eigen::MatrixXcd& tau);

/// Full pipeline. Throws NumericalError(lattice_relation_violated) when the
/// construction self-check A(inf) + d = 0 mod lattice fails.
SurfaceData build_surface(const IntervalSystem& sys,
                          int order = default_quad_order);

}  // namespace chgap
