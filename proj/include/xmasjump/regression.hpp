#pragma once

#include <cmath>
#include <utility>

#include <Eigen/Dense>

#include "xmasjump/errors.hpp"
#include "xmasjump/market_calendar.hpp"

namespace xmasjump {

// Relative pivot magnitude below which a system is treated as singular.
inline constexpr double kSingularPivotTolerance = 1e-12;

template <typename Scalar>
using Coefficients = Eigen::Matrix<Scalar, 4, 1>;

template <typename Scalar = double>
struct LineFit {
  Scalar slope{};      // a_j, percent per day
  Scalar intercept{};  // b_j, percent at Dec 25
  Scalar residual_sum_squares{};
  Eigen::Index n = 0;
};

/// Least-squares line y ~ slope * x + intercept through the closed form
/// slope = Sxy / Sxx, intercept = mean(y) - slope * mean(x).
template <typename DerivedX, typename DerivedY>
LineFit<typename DerivedX::Scalar> fit_line(const Eigen::MatrixBase<DerivedX>& x,
                                            const Eigen::MatrixBase<DerivedY>& y) {
  using Scalar = typename DerivedX::Scalar;
  if (x.size() != y.size()) throw Error(ErrorKind::InvalidArgument, "x and y differ in length");
  if (x.size() < 2) throw Error(ErrorKind::InvalidArgument, "line fit needs at least 2 points");

  const Scalar x_mean = x.mean();
  const Scalar y_mean = y.mean();
  const auto dx = (x.array() - x_mean).eval();
  const Scalar sxx = dx.square().sum();
  if (sxx == Scalar(0)) throw Error(ErrorKind::DegenerateDesign, "all offsets are equal");
  const Scalar sxy = (dx * (y.array() - y_mean)).sum();

  LineFit<Scalar> fit;
  fit.slope = sxy / sxx;
  fit.intercept = y_mean - fit.slope * x_mean;
  fit.residual_sum_squares = (fit.slope * x.array() + fit.intercept - y.array()).square().sum();
  fit.n = x.size();
  return fit;
}

/// Mean of y - slope * x, the minimiser of sum (slope * x + b - y)^2 over b alone.
template <typename DerivedX, typename DerivedY>
typename DerivedX::Scalar intercept_with_fixed_slope(const Eigen::MatrixBase<DerivedX>& x,
                                                      const Eigen::MatrixBase<DerivedY>& y,
                                                      typename DerivedX::Scalar slope) {
  if (x.size() != y.size()) throw Error(ErrorKind::InvalidArgument, "x and y differ in length");
  if (x.size() == 0) throw Error(ErrorKind::InvalidArgument, "empty sample");
  return (y.array() - slope * x.array()).mean();
}

inline Eigen::VectorXd offsets_vector(const WindowSample& sample) {
  return Eigen::Map<const Eigen::VectorXi>(sample.offsets.data(), static_cast<Eigen::Index>(sample.offsets.size()))
      .cast<double>();
}

inline Eigen::Map<const Eigen::VectorXd> rates_vector(const WindowSample& sample) {
  return {sample.rates.data(), static_cast<Eigen::Index>(sample.rates.size())};
}

inline LineFit<double> fit_simple_ols(const WindowSample& sample) {
  return fit_line(offsets_vector(sample), rates_vector(sample));
}

inline double fit_intercept_fixed_slope(const WindowSample& sample, double slope) {
  return intercept_with_fixed_slope(offsets_vector(sample), rates_vector(sample), slope);
}

/// Gaussian elimination with scaled partial pivoting. A pivot whose magnitude
/// relative to its row's largest original entry falls below
/// kSingularPivotTolerance raises Singular.
template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, DerivedA::RowsAtCompileTime, 1> solve_linear_system(
    const Eigen::MatrixBase<DerivedA>& matrix, const Eigen::MatrixBase<DerivedB>& rhs) {
  using Scalar = typename DerivedA::Scalar;
  using std::abs;
  const Eigen::Index n = matrix.rows();
  if (matrix.cols() != n) throw Error(ErrorKind::InvalidArgument, "matrix is not square");
  if (rhs.size() != n) throw Error(ErrorKind::InvalidArgument, "right-hand side is not conformable");

  typename DerivedA::PlainObject a = matrix;
  Eigen::Matrix<Scalar, DerivedA::RowsAtCompileTime, 1> x = rhs;
  Eigen::Matrix<Scalar, DerivedA::RowsAtCompileTime, 1> scale = a.cwiseAbs().rowwise().maxCoeff();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (scale(i) == Scalar(0)) throw Error(ErrorKind::Singular, "zero row");
  }

  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index pivot = k;
    Scalar best = abs(a(k, k)) / scale(k);
    for (Eigen::Index i = k + 1; i < n; ++i) {
      const Scalar r = abs(a(i, k)) / scale(i);
      if (r > best) {
        best = r;
        pivot = i;
      }
    }
    if (!(best >= Scalar(kSingularPivotTolerance))) {
      throw Error(ErrorKind::Singular, "pivot below tolerance in column " + std::to_string(k));
    }
    if (pivot != k) {
      a.row(k).swap(a.row(pivot));
      std::swap(x(k), x(pivot));
      std::swap(scale(k), scale(pivot));
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      const Scalar factor = a(i, k) / a(k, k);
      a.row(i).tail(n - k) -= factor * a.row(k).tail(n - k);
      x(i) -= factor * x(k);
    }
  }
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    const Scalar tail = a.row(i).tail(n - i - 1).dot(x.tail(n - i - 1));
    x(i) = (x(i) - tail) / a(i, i);
  }
  return x;
}

/// Regressor rows [1, a, b, a*b] with their jump targets.
template <typename Scalar = double>
struct DesignMatrix {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 4> rows;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> targets;

  Eigen::Index size() const { return rows.rows(); }
};

template <typename DerivedA, typename DerivedB, typename DerivedT>
DesignMatrix<typename DerivedA::Scalar> make_bilinear_design(const Eigen::MatrixBase<DerivedA>& slope,
                                                             const Eigen::MatrixBase<DerivedB>& intercept,
                                                             const Eigen::MatrixBase<DerivedT>& jump) {
  using Scalar = typename DerivedA::Scalar;
  const Eigen::Index n = slope.size();
  if (intercept.size() != n || jump.size() != n) {
    throw Error(ErrorKind::InvalidArgument, "regressor and target lengths differ");
  }
  DesignMatrix<Scalar> design;
  design.rows.resize(n, 4);
  design.rows.col(0).setOnes();
  design.rows.col(1) = slope;
  design.rows.col(2) = intercept;
  design.rows.col(3) = slope.cwiseProduct(intercept);
  design.targets = jump;
  return design;
}

template <typename Scalar>
Scalar evaluate_bilinear(const Coefficients<Scalar>& beta, Scalar slope, Scalar intercept) {
  return beta(0) + beta(1) * slope + beta(2) * intercept + beta(3) * slope * intercept;
}

template <typename Scalar = double>
struct BilinearFit {
  Coefficients<Scalar> beta;
  Scalar residual_sum_squares{};
};

namespace detail {

template <typename Scalar>
void validate_design(const DesignMatrix<Scalar>& design) {
  if (design.targets.size() != design.rows.rows()) {
    throw Error(ErrorKind::InvalidArgument, "rows and targets differ in length");
  }
  if (!(design.rows.col(0).array() == Scalar(1)).all()) {
    throw Error(ErrorKind::InvalidArgument, "first regressor must be the constant 1");
  }
}

// Unit-norm columns; the Gram matrix of the scaled design has a unit diagonal.
template <typename Scalar>
Coefficients<Scalar> column_norms(const DesignMatrix<Scalar>& design) {
  Coefficients<Scalar> norms = design.rows.colwise().norm().transpose();
  for (int j = 0; j < 4; ++j) {
    if (norms(j) == Scalar(0)) throw Error(ErrorKind::RankDeficient, "zero regressor column");
  }
  return norms;
}

}  // namespace detail

/// Least-squares fit of F(a, b) = b0 + b1*a + b2*b + b3*a*b through the normal
/// equations on the column-equilibrated design, with one step of iterative
/// refinement.
template <typename Scalar>
BilinearFit<Scalar> fit_bilinear(const DesignMatrix<Scalar>& design) {
  detail::validate_design(design);
  if (design.size() < 5) throw Error(ErrorKind::TooFewRows, std::to_string(design.size()) + " rows (need 5)");

  const Coefficients<Scalar> norms = detail::column_norms(design);
  const Eigen::Matrix<Scalar, Eigen::Dynamic, 4> scaled = design.rows * norms.cwiseInverse().asDiagonal();
  const Eigen::Matrix<Scalar, 4, 4> gram = scaled.transpose() * scaled;

  Coefficients<Scalar> gamma;
  try {
    gamma = solve_linear_system(gram, (scaled.transpose() * design.targets).eval());
    const auto residual = (design.targets - scaled * gamma).eval();
    gamma += solve_linear_system(gram, (scaled.transpose() * residual).eval());
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Singular) throw;
    throw Error(ErrorKind::RankDeficient, e.what());
  }

  BilinearFit<Scalar> fit;
  fit.beta = gamma.cwiseQuotient(norms);
  fit.residual_sum_squares = (design.targets - design.rows * fit.beta).squaredNorm();
  return fit;
}

/// diag((X^T X)^-1), solved column by column on the equilibrated Gram matrix.
template <typename Scalar>
Coefficients<Scalar> gram_inverse_diagonal(const DesignMatrix<Scalar>& design) {
  detail::validate_design(design);
  const Coefficients<Scalar> norms = detail::column_norms(design);
  const Eigen::Matrix<Scalar, Eigen::Dynamic, 4> scaled = design.rows * norms.cwiseInverse().asDiagonal();
  const Eigen::Matrix<Scalar, 4, 4> gram = scaled.transpose() * scaled;

  Coefficients<Scalar> diag;
  try {
    for (int j = 0; j < 4; ++j) {
      diag(j) = solve_linear_system(gram, Coefficients<Scalar>::Unit(j))(j);
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Singular) throw;
    throw Error(ErrorKind::RankDeficient, e.what());
  }
  return diag.cwiseQuotient(norms.cwiseAbs2());
}

}  // namespace xmasjump
