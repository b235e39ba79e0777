#pragma once

#include <Eigen/Dense>
#include <complex>

#include "chgap/errors.hpp"

namespace chgap {

/// Evaluator for the n-dimensional lattice sum
///   theta(z) = sum_{m in Z^n} exp(2 pi i m.z + i pi m.tau.m)
/// for a period matrix tau with positive definite imaginary part, together
/// with its directional derivatives and the genus-1 odd theta_1.
///
/// Arguments are reduced before summing: the integer part of Re z is removed
/// (exact periodicity) and a tau-lattice shift k = round(Im(tau)^{-1} Im z)
/// is subtracted with its exact quasi-periodicity prefactor, which keeps the
/// lattice sum well conditioned for large imaginary parts. The truncation
/// radius is certified from the Gaussian tail bound
///   |term| <= exp(-pi lambda_min |m|^2 + 2 pi |m| |Im z|).
class ThetaContext {
 public:
  explicit ThetaContext(Eigen::MatrixXcd tau, double tol = 1e-12);

  int dim() const { return static_cast<int>(tau_.rows()); }
  double tol() const { return tol_; }
  const Eigen::MatrixXcd& tau() const { return tau_; }
  double min_imag_eigenvalue() const { return lambda_min_; }
  /// Truncation radius used for arguments with reduced Im z.
  int base_radius() const { return base_radius_; }

  std::complex<double> value(const Eigen::VectorXcd& z) const;
  double value_real(const Eigen::VectorXd& z) const;

  /// Term-wise differentiated lattice sum along direction dir; order 1 or 2.
  std::complex<double> dir_deriv(const Eigen::VectorXcd& z,
                                 const Eigen::VectorXd& dir, int order) const;

  /// Genus-1 odd theta: theta_1(z) = i e^{-pi i z + pi i tau/4}
  /// theta(z - (1+tau)/2). Throws WrongGenus unless dim() == 1.
  std::complex<double> theta1(std::complex<double> z) const;
  std::complex<double> theta1_deriv_at_zero() const;

  /// Raw truncated sum at an explicit radius (no argument reduction);
  /// exposed for the certified-tail doubling test.
  std::complex<double> value_at_radius(const Eigen::VectorXcd& z,
                                       int radius) const;

 private:
  struct Reduction {
    Eigen::VectorXcd w;                  // reduced argument
    std::complex<double> log_prefactor;  // theta(z) = e^{lp} theta(w)
    Eigen::VectorXd tau_shift;           // integer vector l (z = w + k + tau l)
  };
  Reduction reduce(const Eigen::VectorXcd& z) const;
  int radius_for(double im_norm) const;
  void raw_sums(const Eigen::VectorXcd& z, const Eigen::VectorXd* dir,
                int radius, std::complex<double>& s0, std::complex<double>& s1,
                std::complex<double>& s2) const;

  Eigen::MatrixXcd tau_;
  Eigen::MatrixXd im_tau_;
  Eigen::MatrixXd im_tau_inv_;
  double lambda_min_ = 0;
  double tol_;
  int base_radius_ = 4;
};

}  // namespace chgap
