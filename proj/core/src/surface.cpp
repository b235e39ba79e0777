#include "chgap/surface.hpp"

#include <cmath>
#include <numbers>

namespace chgap {

namespace {
constexpr std::complex<double> kI{0.0, 1.0};

double bisect(const std::function<double(double)>& f, double lo, double hi,
              double tol, const char* what) {
  double flo = f(lo), fhi = f(hi);
  if (flo == 0) return lo;
  if (fhi == 0) return hi;
  if ((flo > 0) == (fhi > 0)) {
    throw NumericalError(errc::zero_not_bracketed, what);
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0) return mid;
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::pair<Eigen::MatrixXcd, Eigen::VectorXcd> cycle_matrix(
    const IntervalSystem& sys, int order) {
  const int n = sys.genus();
  Eigen::MatrixXcd big_a(n + 1, n + 1);
  Eigen::VectorXcd a_vec(n + 1);
  for (int k = 0; k <= n; ++k) {
    const double sign = ((n - k + 1) % 2 == 0) ? 1.0 : -1.0;
    for (int l = 0; l <= n + 1; ++l) {
      const double integral = band_integral(
          sys, k, [l](double xi) { return std::pow(xi, l); }, order);
      const std::complex<double> entry = 2.0 * kI * sign * integral;
      if (l <= n) {
        big_a(k, l) = entry;
      } else {
        a_vec(k) = entry;
      }
    }
  }
  return {big_a, a_vec};
}

std::pair<Eigen::VectorXd, std::vector<double>> master_polynomial(
    const IntervalSystem& sys, const Eigen::MatrixXcd& big_a,
    const Eigen::VectorXcd& a_vec) {
  const int n = sys.genus();
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(big_a);
  if (!lu.isInvertible()) {
    throw NumericalError(errc::singular_cycle_matrix,
                         "A-cycle moment matrix is singular");
  }
  const Eigen::VectorXcd coeffs = lu.solve(-a_vec);
  const double scale = std::pow(std::max(1.0, sys.max_abs_endpoint()), n + 1);
  if (coeffs.imag().cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw NumericalError(errc::non_real_residue,
                         "polynomial coefficients are not real");
  }
  Eigen::VectorXd p = coeffs.real();

  auto eval = [&](double z) {
    double v = 1.0;
    for (int j = n; j >= 0; --j) v = v * z + p(j);
    return v;
  };
  std::vector<double> zeros(n + 1);
  const double tol = 1e-13 * sys.span();
  for (int j = 0; j <= n; ++j) {
    zeros[j] = bisect(eval, sys.band_lo(j), sys.band_hi(j), tol,
                      "no sign change of p inside band");
  }
  return {p, zeros};
}

Eigen::VectorXd frequencies(const IntervalSystem& sys,
                            const Eigen::VectorXd& poly_coeffs, int order) {
  const int n = sys.genus();
  auto p = [&](double z) {
    double v = 1.0;
    for (int j = n; j >= 0; --j) v = v * z + poly_coeffs(j);
    return v;
  };
  Eigen::VectorXd omega(n);
  double acc = 0;
  for (int k = 0; k < n; ++k) {
    const double sign = ((n - k) % 2 == 0) ? 1.0 : -1.0;
    const double hat = 2.0 * sign * gap_integral(sys, k, p, order);
    if (!(hat > 0)) {
      throw NumericalError(errc::non_positive_frequency,
                           "gap frequency increment is not positive");
    }
    acc += hat;
    omega(k) = acc;
  }
  return omega;
}

std::vector<double> branch_zeros(const IntervalSystem& sys) {
  const int n = sys.genus();
  auto sigma = [&](double z) {
    double pb = 1.0, pa = 1.0;
    for (int i = 0; i <= n; ++i) {
      pb *= z - sys.band_hi(i);
      pa *= z - sys.band_lo(i);
    }
    return pb - pa;
  };
  std::vector<double> zeros(n);
  const double tol = 1e-13 * sys.span();
  for (int j = 1; j <= n; ++j) {
    zeros[j - 1] = bisect(sigma, sys.gap_lo(j - 1), sys.gap_hi(j - 1), tol,
                          "no sign change of branch polynomial inside gap");
  }
  return zeros;
}

LatticePoint lattice_reduce(const Eigen::VectorXcd& v,
                            const Eigen::MatrixXcd& tau) {
  const int n = static_cast<int>(v.size());
  LatticePoint out;
  out.integer_part = Eigen::VectorXd::Zero(n);
  out.tau_part = Eigen::VectorXd::Zero(n);
  out.residual = 0;
  if (n == 0) return out;
  // [Re v; Im v] = [[I, Re tau], [0, Im tau]] [k; l]
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  M.topLeftCorner(n, n).setIdentity();
  M.topRightCorner(n, n) = tau.real();
  M.bottomRightCorner(n, n) = tau.imag();
  Eigen::VectorXd rhs(2 * n);
  rhs.head(n) = v.real();
  rhs.tail(n) = v.imag();
  const Eigen::VectorXd kl = M.fullPivLu().solve(rhs);
  out.integer_part = kl.head(n).array().round().matrix();
  out.tau_part = kl.tail(n).array().round().matrix();
  const Eigen::VectorXcd rec =
      out.integer_part.cast<std::complex<double>>() +
      tau * out.tau_part.cast<std::complex<double>>();
  out.residual = (v - rec).cwiseAbs().maxCoeff();
  return out;
}

double SurfaceData::poly(double z) const {
  const int n = genus();
  double v = 1.0;
  for (int j = n; j >= 0; --j) v = v * z + poly_coeffs(j);
  return v;
}

double SurfaceData::h(double z) const {
  double pa = 1.0, pb = 1.0;
  for (int k = 0; k <= genus(); ++k) {
    pa *= z - sys.band_lo(k);
    pb *= z - sys.band_hi(k);
  }
  return pa + pb;
}

Eigen::VectorXcd SurfaceData::omega_poly(double xi) const {
  const int n = genus();
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n);
  double power = 1.0;
  for (int m = 1; m <= n; ++m) {
    for (int i = 0; i < n; ++i) out(i) += power * reduced_cycle_inv(m - 1, i);
    power *= xi;
  }
  return out;
}

std::complex<double> SurfaceData::b_cycle_integral(int j,
                                                   const Integrand& q) const {
  // B_j passes through the cut (a_0,b_0) to the second sheet and back
  // through (a_j,b_j); collapsing it onto the real axis gives twice the sum
  // over the first j gaps with the sheet-consistent signs (-1)^{n-l}.
  const int n = genus();
  std::complex<double> acc = 0.0;
  for (int l = 1; l <= j; ++l) {
    const double sign = ((n - l) % 2 == 0) ? 1.0 : -1.0;
    acc += 2.0 * sign * gap_integral(sys, l - 1, q, quad_order);
  }
  return acc;
}

namespace {

// One-form band/gap pieces for the Abel map. The + boundary value of
// 1/sqrt(R) on band j is -i(-1)^{n-j}/|R|^{1/2}; on gap k it is
// (-1)^{n-k}/|R|^{1/2} on both sides.
std::complex<double> band_factor_plus(int n, int j, Side side) {
  const double sign = ((n - j) % 2 == 0) ? 1.0 : -1.0;
  std::complex<double> f = -kI * sign;
  return side == Side::above ? f : -f;
}

double gap_factor(int n, int k) { return ((n - k) % 2 == 0) ? 1.0 : -1.0; }

}  // namespace

Eigen::VectorXcd SurfaceData::abel(double z, Side side) const {
  const int n = genus();
  Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(n);
  if (n == 0) return acc;
  const double snap = 1e-14 * sys.span();
  const auto& ep = sys.endpoints();
  if (z < ep.front() - snap || z > ep.back() + snap) {
    throw ValidationError(errc::bad_parameter,
                          "abel map argument outside [a_0, b_n]");
  }
  z = std::min(std::max(z, ep.front()), ep.back());

  // The one-form coefficients are purely imaginary, so each piece is
  // integrated through its imaginary part and the sheet factor restores
  // the complex value: real on bands, imaginary on gaps.
  auto add_band = [&](int j, double upto) {
    const std::complex<double> fac = band_factor_plus(n, j, side);
    for (int i = 0; i < n; ++i) {
      auto q_im = [this, i](double xi) { return omega_poly(xi)(i).imag(); };
      double integral =
          (upto >= sys.band_hi(j) - snap)
              ? band_integral(sys, j, q_im, quad_order)
              : band_prefix_integral(sys, j, upto, q_im, quad_order);
      acc(i) += fac * kI * integral;
    }
  };
  auto add_gap = [&](int k, double upto) {
    const double fac = gap_factor(n, k);
    for (int i = 0; i < n; ++i) {
      auto q_im = [this, i](double xi) { return omega_poly(xi)(i).imag(); };
      double integral =
          (upto >= sys.gap_hi(k) - snap)
              ? gap_integral(sys, k, q_im, quad_order)
              : gap_prefix_integral(sys, k, upto, q_im, quad_order);
      acc(i) += fac * kI * integral;
    }
  };

  for (int j = 0; j <= n; ++j) {
    if (z <= sys.band_lo(j) + snap) break;
    add_band(j, std::min(z, sys.band_hi(j)));
    if (z <= sys.band_hi(j) + snap) break;
    if (j < n) {
      add_gap(j, std::min(z, sys.gap_hi(j)));
      if (z <= sys.gap_hi(j) + snap) continue;
    }
  }
  return acc;
}

Eigen::VectorXcd SurfaceData::abel_endpoint(int endpoint_index,
                                            Side side) const {
  const int n = genus();
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n);
  if (n == 0) return out;
  const double half = side == Side::above ? -0.5 : 0.5;
  const bool is_lo = (endpoint_index % 2 == 0);
  const int j = endpoint_index / 2;
  if (is_lo) {
    if (j == 0) return out;  // A(a_0) = 0
    for (int k = j; k <= n; ++k) out(k - 1) += half;
    out -= 0.5 * period_matrix.col(j - 1);
    return out;
  }
  // b_j: tau_0 is interpreted as the zero column
  for (int k = j + 1; k <= n; ++k) out(k - 1) += half;
  if (j >= 1) out -= 0.5 * period_matrix.col(j - 1);
  return out;
}

SurfaceData build_surface(const IntervalSystem& sys, int order) {
  SurfaceData sd{sys};
  sd.quad_order = order;
  const int n = sys.genus();

  std::tie(sd.cycle_matrix, sd.cycle_rhs) = cycle_matrix(sys, order);
  std::tie(sd.poly_coeffs, sd.band_zeros) =
      master_polynomial(sys, sd.cycle_matrix, sd.cycle_rhs);
  sd.frequencies = frequencies(sys, sd.poly_coeffs, order);
  sd.gap_zeros = branch_zeros(sys);

  sd.reduced_cycle.resize(n, n);
  for (int k = 1; k <= n; ++k) {
    for (int l = 0; l < n; ++l) {
      sd.reduced_cycle(k - 1, l) = sd.cycle_matrix(k, l);
    }
  }
  if (n > 0) {
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(sd.reduced_cycle);
    if (!lu.isInvertible()) {
      throw NumericalError(errc::singular_tilde_a,
                           "reduced cycle matrix is singular");
    }
    sd.reduced_cycle_inv = lu.inverse();
  } else {
    sd.reduced_cycle_inv.resize(0, 0);
  }

  // Orientation check pinning the gap-sign convention: the B_j period of
  // dg = p dz / sqrt(R) must equal -Omega_j.
  for (int j = 1; j <= n; ++j) {
    const std::complex<double> bj =
        sd.b_cycle_integral(j, [&](double z) { return sd.poly(z); });
    if (std::abs(bj + sd.frequencies(j - 1)) >
        1e-8 * (1.0 + std::abs(sd.frequencies(j - 1)))) {
      throw NumericalError(errc::asymmetry_exceeds_tolerance,
                           "B-cycle orientation check failed");
    }
  }

  sd.period_matrix.resize(n, n);
  for (int i = 0; i < n; ++i) {
    auto q_im = [&](double xi) { return sd.omega_poly(xi)(i).imag(); };
    double acc_re = 0, acc_im = 0;
    for (int j = 1; j <= n; ++j) {
      const double sign = ((n - j) % 2 == 0) ? 1.0 : -1.0;
      acc_im += 2.0 * sign * gap_integral(sys, j - 1, q_im, order);
      (void)acc_re;
      sd.period_matrix(i, j - 1) = std::complex<double>(0.0, acc_im);
    }
  }
  {
    const double scale = 1.0 + sd.period_matrix.cwiseAbs().maxCoeff();
    const double asym =
        (sd.period_matrix - sd.period_matrix.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-8 * scale) {
      throw NumericalError(errc::asymmetry_exceeds_tolerance,
                           "period matrix asymmetry exceeds tolerance");
    }
    sd.period_matrix = 0.5 * (sd.period_matrix +
                              sd.period_matrix.transpose().eval());
  }

  // Riemann constants K = sum_{j>=1} A(a_j), divisor shift
  // d = K + sum_j A(z_j), Abel image of infinity.
  sd.riemann_constants = Eigen::VectorXcd::Zero(n);
  sd.divisor_shift = Eigen::VectorXcd::Zero(n);
  sd.abel_infinity = Eigen::VectorXcd::Zero(n);
  for (int j = 1; j <= n; ++j) {
    sd.riemann_constants += sd.abel_endpoint(2 * j, Side::above);
  }
  sd.divisor_shift = sd.riemann_constants;
  for (int j = 1; j <= n; ++j) {
    sd.divisor_shift += sd.abel(sd.gap_zeros[j - 1], Side::above);
  }
  if (n > 0) {
    // all bands (+ side) and gaps, then the exterior ray to infinity
    sd.abel_infinity = sd.abel(sys.endpoints().back(), Side::above);
    for (int i = 0; i < n; ++i) {
      std::complex<double> tail = 0.0;
      for (int m = 1; m <= n; ++m) {
        tail += sd.reduced_cycle_inv(m - 1, i) *
                exterior_monomial_integral(sys, m - 1, order);
      }
      sd.abel_infinity(i) += tail;
    }
    const LatticePoint lp =
        lattice_reduce(sd.abel_infinity + sd.divisor_shift, sd.period_matrix);
    sd.lattice_residual = lp.residual;
    if (lp.residual > 1e-8) {
      throw NumericalError(
          errc::lattice_relation_violated,
          "A(inf) + d is not a lattice point (residual " +
              std::to_string(lp.residual) + ")");
    }
  }
  return sd;
}

}  // namespace chgap
