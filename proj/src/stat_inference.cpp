#include "xmasjump/stat_inference.hpp"

#include <cmath>
#include <limits>

namespace xmasjump {

namespace {

constexpr double kContinuedFractionEps = 1e-14;
constexpr int kContinuedFractionMaxIter = 300;
constexpr double kTiny = 1e-300;

// Continued fraction for I_x(a, b) / (x^a (1-x)^b / (a B(a, b))); y = 1 - x.
double beta_continued_fraction(double a, double b, double x) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kContinuedFractionMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kContinuedFractionEps) return h;
  }
  throw Error(ErrorKind::DomainError, "incomplete beta continued fraction did not converge");
}

// x and y = 1 - x are passed separately so callers can supply an exact complement.
double incomplete_beta(double a, double b, double x, double y) {
  if (x <= 0.0) return 0.0;
  if (y <= 0.0) return 1.0;
  const double log_front =
      std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log(y);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, y) / b;
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0) || !(x >= 0.0 && x <= 1.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw Error(ErrorKind::DomainError, "incomplete beta needs a > 0, b > 0, 0 <= x <= 1");
  }
  return incomplete_beta(a, b, x, 1.0 - x);
}

double student_t_two_sided_p(double t, int df) {
  if (df < 1) throw Error(ErrorKind::DomainError, "degrees of freedom must be >= 1");
  if (std::isnan(t)) throw Error(ErrorKind::DomainError, "t statistic is NaN");
  if (std::isinf(t)) return 0.0;
  const double nu = static_cast<double>(df);
  const double t2 = t * t;
  const double x = nu / (nu + t2);
  const double y = t2 / (nu + t2);
  return incomplete_beta(0.5 * nu, 0.5, x, y);
}

FitInference inference_for_fit(const DesignMatrix<double>& design, const Coefficients<double>& beta, double rss) {
  const Eigen::Index n = design.size();
  if (n <= 4) throw Error(ErrorKind::TooFewRows, "inference needs more rows than parameters");
  if (!(rss >= 0.0)) throw Error(ErrorKind::InvalidArgument, "residual sum of squares must be >= 0");

  const double tss = (design.targets.array() - design.targets.mean()).square().sum();
  if (tss == 0.0) throw Error(ErrorKind::DegenerateVariance, "targets have zero total variance");

  FitInference out;
  out.degrees_of_freedom = static_cast<int>(n - 4);
  const double sigma2 = rss / out.degrees_of_freedom;
  const Coefficients<double> var_diag = gram_inverse_diagonal(design) * sigma2;

  for (int j = 0; j < 4; ++j) {
    auto& c = out.coefficients[j];
    c.estimate = beta(j);
    c.standard_error = std::sqrt(var_diag(j));
    if (c.standard_error > 0.0) {
      c.t_statistic = c.estimate / c.standard_error;
      c.p_value = student_t_two_sided_p(c.t_statistic, out.degrees_of_freedom);
    } else {
      // Exact fit: any nonzero estimate is infinitely significant.
      c.t_statistic = c.estimate == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), c.estimate);
      c.p_value = c.estimate == 0.0 ? 1.0 : 0.0;
    }
  }
  out.r2 = 1.0 - rss / tss;
  out.adjusted_r2 = 1.0 - (1.0 - out.r2) * static_cast<double>(n - 1) / static_cast<double>(n - 4);
  return out;
}

}  // namespace xmasjump
