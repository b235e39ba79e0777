#include "chgap/quadrature.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

namespace chgap {

namespace {

constexpr double kPi = std::numbers::pi;

void require_order(int order, int minimum = 4) {
  if (order < minimum) {
    throw ValidationError(errc::order_too_small,
                          "quadrature order " + std::to_string(order) +
                              " below minimum " + std::to_string(minimum));
  }
}

double checked(double v, const char* where) {
  if (!std::isfinite(v)) {
    throw NumericalError(errc::non_finite,
                         std::string("integrand returned NaN/Inf in ") + where);
  }
  return v;
}

}  // namespace

QuadratureRule gauss_legendre(int order) {
  require_order(order, 1);
  QuadratureRule rule;
  rule.kind = RuleKind::legendre_gap;
  rule.order = order;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double x = std::cos(kPi * (i + 0.75) / (order + 0.5));
    double pp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = order * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) {
        // one clean-up iteration after convergence
        if (iter > 0) break;
      }
    }
    rule.nodes[i] = -x;
    rule.nodes[order - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.weights[i] = w;
    rule.weights[order - 1 - i] = w;
  }
  return rule;
}

QuadratureRule gauss_jacobi_origin(int order, double exponent) {
  require_order(order, 1);
  if (!(exponent > -1.0)) {
    throw ValidationError(errc::bad_parameter,
                          "Jacobi exponent must be > -1");
  }
  // Jacobi weight (1-x)^a (1+x)^b on [-1,1] with a = 0, b = exponent;
  // mapping x = 2u-1 turns (1+x)^b into (2u)^b on [0,1].
  const double a = 0.0, b = exponent;
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(order, order);
  auto diag = [&](int k) -> double {
    if (k == 0) return (b - a) / (a + b + 2.0);
    double den = (2.0 * k + a + b) * (2.0 * k + a + b + 2.0);
    return (b * b - a * a) / den;
  };
  auto offdiag2 = [&](int k) -> double {  // beta_k, k >= 1
    if (k == 1) {
      return 4.0 * (a + 1.0) * (b + 1.0) /
             ((a + b + 2.0) * (a + b + 2.0) * (a + b + 3.0));
    }
    double s = 2.0 * k + a + b;
    return 4.0 * k * (k + a) * (k + b) * (k + a + b) /
           (s * s * (s + 1.0) * (s - 1.0));
  };
  for (int k = 0; k < order; ++k) {
    J(k, k) = diag(k);
    if (k + 1 < order) {
      double e = std::sqrt(offdiag2(k + 1));
      J(k, k + 1) = e;
      J(k + 1, k) = e;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  // mu0 = int_{-1}^{1} (1-x)^a (1+x)^b dx = 2^{a+b+1} B(a+1, b+1)
  const double mu0 = std::pow(2.0, a + b + 1.0) *
                     std::exp(std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                              std::lgamma(a + b + 2.0));
  QuadratureRule rule;
  rule.kind = RuleKind::jacobi_origin;
  rule.order = order;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const double scale = std::pow(2.0, -exponent - 1.0);
  for (int i = 0; i < order; ++i) {
    double x = es.eigenvalues()(i);
    double v0 = es.eigenvectors()(0, i);
    rule.nodes[i] = 0.5 * (x + 1.0);               // map to [0,1]
    rule.weights[i] = scale * mu0 * v0 * v0;       // for weight u^exponent du
  }
  return rule;
}

// ---------------------------------------------------------------------------
// Singular-endpoint integrals against |R|^{-1/2}
// ---------------------------------------------------------------------------

namespace {

// Shared core for band/gap integrals: integrate f/|R|^{1/2} over (lo,hi)
// where lo, hi are the endpoint entries with flat indices ilo, ihi in the
// endpoint list. The cosine substitution absorbs both roots; the theta grid
// is the midpoint (Gauss-Chebyshev) rule, exact spectral convergence for
// integrands analytic on the closed interval.
double cosine_rule_integral(const IntervalSystem& sys, double lo, double hi,
                            int ilo, int ihi, const Integrand& f, int order,
                            const char* where) {
  require_order(order);
  const double mid = 0.5 * (lo + hi);
  const double halfwidth = 0.5 * (hi - lo);
  double sum = 0;
  for (int i = 0; i < order; ++i) {
    const double theta = (i + 0.5) * kPi / order;
    const double xi = mid + halfwidth * std::cos(theta);
    const double rest = sys.sqrt_abs_radical_excluding(xi, ilo, ihi);
    sum += checked(f(xi), where) / rest;
  }
  return kPi / order * sum;
}

}  // namespace

double band_integral(const IntervalSystem& sys, int j, const Integrand& f,
                     int order) {
  return cosine_rule_integral(sys, sys.band_lo(j), sys.band_hi(j), 2 * j,
                              2 * j + 1, f, order, "band_integral");
}

double gap_integral(const IntervalSystem& sys, int k, const Integrand& f,
                    int order) {
  return cosine_rule_integral(sys, sys.gap_lo(k), sys.gap_hi(k), 2 * k + 1,
                              2 * k + 2, f, order, "gap_integral");
}

double half_band_integral(const IntervalSystem& sys, bool positive_side,
                          const Integrand& f, int order) {
  require_order(order);
  const int m = sys.zero_band();
  const double c = positive_side ? sys.band_hi(m) : sys.band_lo(m);
  const int iskip = positive_side ? 2 * m + 1 : 2 * m;
  // xi = c sin^2(phi): dxi/|xi - c|^{1/2} = 2 |c|^{1/2} sin(phi) dphi,
  // orientation handled by |.|; integrand analytic on [0, pi/2].
  const QuadratureRule gl = gauss_legendre(order);
  const double sc = 2.0 * std::sqrt(std::abs(c));
  double sum = 0;
  for (int i = 0; i < order; ++i) {
    const double phi = 0.25 * kPi * (gl.nodes[i] + 1.0);
    const double s = std::sin(phi);
    const double xi = c * s * s;
    const double rest = sys.sqrt_abs_radical_excluding(xi, iskip, iskip);
    sum += gl.weights[i] * s * checked(f(xi), "half_band_integral") / rest;
  }
  return 0.25 * kPi * sc * sum;
}

double log_half_band_moment(const IntervalSystem& sys, bool positive_side,
                            int l, int order) {
  require_order(order);
  if (l < 0) {
    throw ValidationError(errc::bad_parameter, "log moment power must be >= 0");
  }
  const int m = sys.zero_band();
  const double c = positive_side ? sys.band_hi(m) : sys.band_lo(m);
  const int iskip = positive_side ? 2 * m + 1 : 2 * m;
  const double sc = 2.0 * std::sqrt(std::abs(c));
  // Same sin^2 map as half_band_integral; the integrand now behaves like
  // phi^{2l+1} log(phi) at phi = 0, so Gauss-Legendre is applied on dyadic
  // panels accumulating geometrically at 0. Panel contributions decay at
  // least like 4^{-k}, and below phi ~ 1e-14 they are under 1e-28.
  const int nodes_per_panel = std::max(12, order / 16);
  const QuadratureRule gl = gauss_legendre(nodes_per_panel);
  double total = 0;
  double hi = 0.5 * kPi;
  for (int panel = 0; panel < 48; ++panel) {
    const double lo = (panel == 47) ? 0.0 : hi * 0.5;
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    double sum = 0;
    for (int i = 0; i < nodes_per_panel; ++i) {
      const double phi = mid + half * gl.nodes[i];
      const double s = std::sin(phi);
      const double xi = c * s * s;
      if (xi == 0.0) continue;  // xi^{l} log|xi| -> 0 limit
      const double rest = sys.sqrt_abs_radical_excluding(xi, iskip, iskip);
      const double val = std::pow(xi, l) * std::log(std::abs(xi));
      sum += gl.weights[i] * s * checked(val, "log_half_band_moment") / rest;
    }
    total += half * sum;
    hi = lo;
    if (hi == 0.0) break;
  }
  return sc * total;
}

double log_band_integral(const IntervalSystem& sys, int j, int l, int order) {
  if (l < 0) {
    throw ValidationError(errc::bad_parameter, "log moment power must be >= 0");
  }
  if (j != sys.zero_band()) {
    // log|xi| is smooth on a band not containing 0
    return band_integral(
        sys, j,
        [l](double xi) { return std::pow(xi, l) * std::log(std::abs(xi)); },
        order);
  }
  return log_half_band_moment(sys, false, l, order) +
         log_half_band_moment(sys, true, l, order);
}

namespace {

// int_{anchor}^{z} f/|R|^{1/2} where anchor carries the only inverse-sqrt
// root on the path; substitution xi = anchor + (z - anchor) u^2.
double prefix_integral(const IntervalSystem& sys, double anchor, int ianchor,
                       double z, const Integrand& f, int order,
                       const char* where) {
  require_order(order);
  const double d = z - anchor;
  if (d == 0.0) return 0.0;
  const QuadratureRule gl = gauss_legendre(order);
  const double sgn = d > 0 ? 1.0 : -1.0;
  const double sq = std::sqrt(std::abs(d));
  double sum = 0;
  for (int i = 0; i < order; ++i) {
    const double u = 0.5 * (gl.nodes[i] + 1.0);
    const double xi = anchor + d * u * u;
    const double rest = sys.sqrt_abs_radical_excluding(xi, ianchor, ianchor);
    sum += 0.5 * gl.weights[i] * checked(f(xi), where) / rest;
  }
  return sgn * 2.0 * sq * sum;
}

}  // namespace

double band_prefix_integral(const IntervalSystem& sys, int j, double z,
                            const Integrand& f, int order) {
  return prefix_integral(sys, sys.band_lo(j), 2 * j, z, f, order,
                         "band_prefix_integral");
}

double gap_prefix_integral(const IntervalSystem& sys, int k, double z,
                           const Integrand& f, int order) {
  return prefix_integral(sys, sys.gap_lo(k), 2 * k + 1, z, f, order,
                         "gap_prefix_integral");
}

double exterior_monomial_integral(const IntervalSystem& sys, int l,
                                  int order) {
  require_order(order);
  const int n = sys.genus();
  if (l < 0 || l > n - 1) {
    throw ValidationError(errc::bad_parameter,
                          "exterior integral needs 0 <= l <= n-1");
  }
  const double bn = sys.endpoints().back();
  const double cut = bn + 2.0 * sys.span();
  const QuadratureRule gl = gauss_legendre(order);

  // head: [b_n, cut] with xi = b_n + u^2
  const int ibn = 2 * n + 1;
  const double umax = std::sqrt(cut - bn);
  double head = 0;
  for (int i = 0; i < order; ++i) {
    const double u = 0.5 * umax * (gl.nodes[i] + 1.0);
    const double xi = bn + u * u;
    const double rest = sys.sqrt_abs_radical_excluding(xi, ibn, ibn);
    head += 0.5 * umax * gl.weights[i] * 2.0 * std::pow(xi, l) / rest;
  }

  // tail: [cut, inf) with t = 1/xi gives t^{n-1-l} / sqrt(prod (1 - e t))
  double tail = 0;
  const double tmax = 1.0 / cut;
  for (int i = 0; i < order; ++i) {
    const double t = 0.5 * tmax * (gl.nodes[i] + 1.0);
    double prod = 1.0;
    for (double e : sys.endpoints()) prod *= (1.0 - e * t);
    tail += 0.5 * tmax * gl.weights[i] * std::pow(t, n - 1 - l) /
            std::sqrt(prod);
  }
  return head + tail;
}

}  // namespace chgap
