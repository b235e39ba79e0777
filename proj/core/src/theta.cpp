#include "chgap/theta.hpp"

#include <cmath>
#include <numbers>

namespace chgap {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr std::complex<double> kI{0.0, 1.0};
}  // namespace

ThetaContext::ThetaContext(Eigen::MatrixXcd tau, double tol)
    : tau_(std::move(tau)), tol_(tol) {
  const int n = dim();
  if (tau_.cols() != n) {
    throw ValidationError(errc::bad_parameter, "tau must be square");
  }
  if (!(tol_ > 0)) {
    throw ValidationError(errc::bad_parameter, "theta tolerance must be > 0");
  }
  if (n == 0) {
    lambda_min_ = 1.0;
    base_radius_ = 0;
    return;
  }
  const double asym = (tau_ - tau_.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-8 * (1.0 + tau_.cwiseAbs().maxCoeff())) {
    throw NumericalError(errc::asymmetry_exceeds_tolerance,
                         "period matrix is not symmetric");
  }
  im_tau_ = tau_.imag();
  im_tau_ = 0.5 * (im_tau_ + im_tau_.transpose());  // symmetrize roundoff
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(im_tau_);
  lambda_min_ = es.eigenvalues().minCoeff();
  if (!(lambda_min_ > 0)) {
    throw NumericalError(errc::bad_parameter,
                         "Im(tau) must be positive definite");
  }
  im_tau_inv_ = es.operatorInverseSqrt() * es.operatorInverseSqrt();
  base_radius_ = radius_for(0.0);
}

int ThetaContext::radius_for(double im_norm) const {
  const int n = dim();
  if (n == 0) return 0;
  for (int M = 4; M <= 256; ++M) {
    // bound the tail sum over shells ||m||_inf = r > M
    double tail = 0;
    for (int r = M + 1; r <= M + 400; ++r) {
      const double shell =
          std::pow(2.0 * r + 1.0, n) - std::pow(2.0 * r - 1.0, n);
      const double t =
          shell * std::exp(-kPi * lambda_min_ * r * r + 2.0 * kPi * r * im_norm);
      tail += t;
      if (t < 1e-3 * tol_ && r > M + 4) break;
    }
    if (tail < 0.5 * tol_) return M;
  }
  throw NumericalError(errc::truncation_bound_exceeded,
                       "requested tolerance unreachable at max radius");
}

ThetaContext::Reduction ThetaContext::reduce(const Eigen::VectorXcd& z) const {
  const int n = dim();
  Reduction red;
  red.w = z;
  red.log_prefactor = 0.0;
  red.tau_shift = Eigen::VectorXd::Zero(n);
  if (n == 0) return red;

  // tau-lattice part first: l = round(Im(tau)^{-1} Im z)
  Eigen::VectorXd l = (im_tau_inv_ * z.imag()).array().round().matrix();
  if (l.cwiseAbs().maxCoeff() > 0) {
    Eigen::VectorXcd tl = tau_ * l.cast<std::complex<double>>();
    Eigen::VectorXcd w = z - tl;
    // theta(w + tau l) = exp(-2 pi i l.w - pi i l.tau.l) theta(w)
    std::complex<double> ltl =
        l.cast<std::complex<double>>().dot(tl);  // l^T tau l (dot = conj-free
                                                 // for real l)
    red.log_prefactor =
        -2.0 * kPi * kI * l.cast<std::complex<double>>().dot(w) - kPi * kI * ltl;
    red.w = w;
    red.tau_shift = l;
  }
  // integer part of the real component (exact periodicity)
  for (int j = 0; j < n; ++j) {
    red.w(j) -= std::round(red.w(j).real());
  }
  return red;
}

void ThetaContext::raw_sums(const Eigen::VectorXcd& z,
                            const Eigen::VectorXd* dir, int radius,
                            std::complex<double>& s0, std::complex<double>& s1,
                            std::complex<double>& s2) const {
  const int n = dim();
  s0 = 0.0;
  s1 = 0.0;
  s2 = 0.0;
  if (n == 0) {
    s0 = 1.0;
    return;
  }
  Eigen::VectorXi m = Eigen::VectorXi::Constant(n, -radius);
  for (;;) {
    // exponent 2 pi i m.z + pi i m.tau.m
    std::complex<double> e = 0.0;
    double mtm_re = 0.0, mtm_im = 0.0;
    for (int a = 0; a < n; ++a) {
      e += 2.0 * kPi * kI * static_cast<double>(m(a)) * z(a);
      for (int b = 0; b < n; ++b) {
        const double mm = static_cast<double>(m(a)) * m(b);
        mtm_re += mm * tau_(a, b).real();
        mtm_im += mm * tau_(a, b).imag();
      }
    }
    e += kPi * kI * std::complex<double>(mtm_re, mtm_im);
    const std::complex<double> term = std::exp(e);
    s0 += term;
    if (dir) {
      double mv = 0.0;
      for (int a = 0; a < n; ++a) mv += m(a) * (*dir)(a);
      const std::complex<double> fac = 2.0 * kPi * kI * mv;
      s1 += fac * term;
      s2 += fac * fac * term;
    }
    // odometer over [-radius, radius]^n
    int j = 0;
    for (; j < n; ++j) {
      if (m(j) < radius) {
        ++m(j);
        break;
      }
      m(j) = -radius;
    }
    if (j == n) break;
  }
}

std::complex<double> ThetaContext::value(const Eigen::VectorXcd& z) const {
  if (dim() == 0) return 1.0;
  const Reduction red = reduce(z);
  const int radius = radius_for(red.w.imag().norm());
  std::complex<double> s0, s1, s2;
  raw_sums(red.w, nullptr, radius, s0, s1, s2);
  return std::exp(red.log_prefactor) * s0;
}

double ThetaContext::value_real(const Eigen::VectorXd& z) const {
  if (dim() == 0) return 1.0;
  return value(z.cast<std::complex<double>>()).real();
}

std::complex<double> ThetaContext::value_at_radius(const Eigen::VectorXcd& z,
                                                   int radius) const {
  std::complex<double> s0, s1, s2;
  raw_sums(z, nullptr, radius, s0, s1, s2);
  return s0;
}

std::complex<double> ThetaContext::dir_deriv(const Eigen::VectorXcd& z,
                                             const Eigen::VectorXd& dir,
                                             int order) const {
  if (order != 1 && order != 2) {
    throw ValidationError(errc::bad_parameter,
                          "derivative order must be 1 or 2");
  }
  if (dim() == 0) return 0.0;
  const Reduction red = reduce(z);
  const int radius = radius_for(red.w.imag().norm());
  std::complex<double> s0, s1, s2;
  raw_sums(red.w, &dir, radius, s0, s1, s2);
  const std::complex<double> pref = std::exp(red.log_prefactor);
  if (red.tau_shift.cwiseAbs().maxCoeff() == 0) {
    return pref * (order == 1 ? s1 : s2);
  }
  // theta(z) = e^{c - 2 pi i l.z_dir-part...} theta(w): differentiating the
  // prefactor exp(-2 pi i l.w + const) in the direction dir adds the chain
  // terms with g = -2 pi i (l.dir).
  const double ldir = red.tau_shift.dot(dir);
  const std::complex<double> g = -2.0 * kPi * kI * ldir;
  if (order == 1) return pref * (g * s0 + s1);
  return pref * (g * g * s0 + 2.0 * g * s1 + s2);
}

std::complex<double> ThetaContext::theta1(std::complex<double> z) const {
  if (dim() != 1) {
    throw NumericalError(errc::wrong_genus, "theta1 requires genus 1");
  }
  const std::complex<double> tau = tau_(0, 0);
  Eigen::VectorXcd arg(1);
  arg(0) = z - 0.5 * (1.0 + tau);
  return kI * std::exp(-kPi * kI * z + kPi * kI * tau / 4.0) * value(arg);
}

std::complex<double> ThetaContext::theta1_deriv_at_zero() const {
  if (dim() != 1) {
    throw NumericalError(errc::wrong_genus, "theta1 requires genus 1");
  }
  const std::complex<double> tau = tau_(0, 0);
  Eigen::VectorXcd arg(1);
  arg(0) = -0.5 * (1.0 + tau);
  Eigen::VectorXd dir(1);
  dir(0) = 1.0;
  // theta1'(0) = i e^{pi i tau/4} [ -pi i theta(c) + theta'(c) ] with
  // c = -(1+tau)/2; theta(c) = 0 there (odd half-period).
  const std::complex<double> th = value(arg);
  const std::complex<double> dth = dir_deriv(arg, dir, 1);
  return kI * std::exp(kPi * kI * tau / 4.0) * (-kPi * kI * th + dth);
}

}  // namespace chgap
