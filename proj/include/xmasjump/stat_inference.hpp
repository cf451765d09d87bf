#pragma once

#include <array>

#include "xmasjump/regression.hpp"

namespace xmasjump {

struct CoefficientInference {
  double estimate = 0.0;
  double standard_error = 0.0;
  double t_statistic = 0.0;
  double p_value = 1.0;
};

struct FitInference {
  std::array<CoefficientInference, 4> coefficients;
  double r2 = 0.0;
  double adjusted_r2 = 0.0;
  int degrees_of_freedom = 0;
};

/// I_x(a, b), continued fraction (modified Lentz) on whichever side of the
/// symmetry I_x(a, b) = 1 - I_{1-x}(b, a) converges faster.
double regularized_incomplete_beta(double a, double b, double x);

/// P(|T| >= |t|) for Student's t with df degrees of freedom.
double student_t_two_sided_p(double t, int df);

/// OLS standard errors, t statistics and two-sided p-values (df = n - 4), plus
/// R^2 and adjusted R^2 about the mean of the targets.
FitInference inference_for_fit(const DesignMatrix<double>& design, const Coefficients<double>& beta, double rss);

}  // namespace xmasjump
