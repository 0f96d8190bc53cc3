#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <span>

#include "poncelet/conic.hpp"
#include "poncelet/error.hpp"

namespace poncelet {

/// Coefficients (A, B, C, D, E, F) of A x² + B xy + C y² + D x + E y + F = 0.
using ConicCoefficients = std::array<double, 6>;

struct ConicFit {
  ConicCoefficients coefficients{};
  double residual = 0.0;  // RMS algebraic residual in the normalized frame
};

struct LineFit {
  Point2 centroid;
  Point2 direction;  // unit
  double rms = 0.0;  // RMS orthogonal distance
};

namespace detail {

/// Translation to zero mean and scaling to unit RMS radius.
struct Normalization {
  Point2 mean;
  double scale = 1.0;

  Point2 apply(Point2 p) const { return (p - mean) / scale; }
};

inline Normalization normalization_for(std::span<const Point2> points) {
  Point2 mean;
  for (Point2 p : points) mean = mean + p;
  mean = mean / static_cast<double>(points.size());
  double sq = 0.0;
  for (Point2 p : points) {
    const Point2 d = p - mean;
    sq += dot(d, d);
  }
  const double rms = std::sqrt(sq / static_cast<double>(points.size()));
  return {mean, rms > 0.0 ? rms : 1.0};
}

/// Monomials of total degree ≤ `degree`, highest degree first, each weighted
/// by √binom(d, i). With those weights a rotation of the plane acts
/// orthogonally on the coefficient vector, so the smallest singular value is
/// invariant under similarities.
inline Eigen::MatrixXd design_matrix(std::span<const Point2> points, const Normalization& norm,
                                     int degree) {
  const Eigen::Index cols = (degree + 1) * (degree + 2) / 2;
  Eigen::MatrixXd design(static_cast<Eigen::Index>(points.size()), cols);
  for (std::size_t r = 0; r < points.size(); ++r) {
    const Point2 q = norm.apply(points[r]);
    Eigen::Index c = 0;
    for (int d = degree; d >= 0; --d) {
      double binom = 1.0;
      for (int i = d; i >= 0; --i) {
        // x^i y^(d−i); binom tracks C(d, d−i).
        design(static_cast<Eigen::Index>(r), c++) =
            std::sqrt(binom) * std::pow(q.x, i) * std::pow(q.y, d - i);
        binom = binom * i / (d - i + 1);
      }
    }
  }
  return design;
}

struct NullDirection {
  Eigen::VectorXd vector;
  double residual;
};

inline NullDirection smallest_singular_direction(const Eigen::MatrixXd& design) {
  // QR first so the SVD runs on a small square factor.
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(design);
  const Eigen::Index n = design.cols();
  const Eigen::MatrixXd r = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(r, Eigen::ComputeFullV);
  const Eigen::VectorXd v = svd.matrixV().col(n - 1);
  const double residual = (design * v).norm() / std::sqrt(static_cast<double>(design.rows()));
  return {v, residual};
}

}  // namespace detail

/// Least-squares conic through `points`: the unit coefficient vector nearest
/// the null space of the monomial design matrix, reported in the input frame.
inline ConicFit conic_fit(std::span<const Point2> points) {
  if (points.size() < 6) fail(ErrorCode::InsufficientPoints, "conic fit needs at least 6 points");
  const detail::Normalization norm = detail::normalization_for(points);
  const auto [v, residual] =
      detail::smallest_singular_direction(detail::design_matrix(points, norm, 2));

  // Undo the √2 weight on xy, then substitute q = (p − m)/s.
  const double a = v(0), b = v(1) * std::sqrt(2.0), c = v(2), d = v(3), e = v(4), f = v(5);
  const double mx = norm.mean.x, my = norm.mean.y, s = norm.scale, s2 = s * s;
  ConicCoefficients k{
      a / s2,
      b / s2,
      c / s2,
      (-2.0 * a * mx - b * my) / s2 + d / s,
      (-2.0 * c * my - b * mx) / s2 + e / s,
      (a * mx * mx + b * mx * my + c * my * my) / s2 - (d * mx + e * my) / s + f,
  };
  double len = 0.0;
  for (double x : k) len += x * x;
  len = std::sqrt(len);
  const double sign = (k[0] + k[2] < 0.0) ? -1.0 : 1.0;
  for (double& x : k) x = sign * x / len;
  return {k, residual};
}

/// RMS residual of the best degree-≤4 algebraic curve through `points`.
inline double quartic_fit(std::span<const Point2> points) {
  if (points.size() < 15) fail(ErrorCode::InsufficientPoints, "quartic fit needs at least 15 points");
  const detail::Normalization norm = detail::normalization_for(points);
  return detail::smallest_singular_direction(detail::design_matrix(points, norm, 4)).residual;
}

inline LineFit line_fit(std::span<const Point2> points) {
  if (points.size() < 2) fail(ErrorCode::InsufficientPoints, "line fit needs at least 2 points");
  const detail::Normalization norm = detail::normalization_for(points);
  Eigen::Matrix2d cov = Eigen::Matrix2d::Zero();
  for (Point2 p : points) {
    const Eigen::Vector2d d(p.x - norm.mean.x, p.y - norm.mean.y);
    cov += d * d.transpose();
  }
  cov /= static_cast<double>(points.size());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(cov);
  const Eigen::Vector2d dir = eig.eigenvectors().col(1);
  // Measured directly: the small eigenvalue only carries eps·λmax accuracy,
  // which its square root would inflate to ~1e-8 of the spread.
  double sum = 0.0;
  for (Point2 p : points) {
    const double off = (p.x - norm.mean.x) * dir(1) - (p.y - norm.mean.y) * dir(0);
    sum += off * off;
  }
  return {norm.mean, {dir(0), dir(1)}, std::sqrt(sum / static_cast<double>(points.size()))};
}

inline double conic_discriminant(const ConicCoefficients& k) { return k[1] * k[1] - 4.0 * k[0] * k[2]; }

struct EllipseAxes {
  Point2 center;
  double semi_major = 0.0;
  double semi_minor = 0.0;
  double angle = 0.0;  // direction of the major axis, radians in (−π/2, π/2]
};

/// Center, semi-axes and orientation of the ellipse a conic describes, or
/// nothing when the conic is not a real ellipse.
inline std::optional<EllipseAxes> ellipse_axes(const ConicCoefficients& k) {
  const auto [A, B, C, D, E, F] = k;
  if (!(conic_discriminant(k) < 0.0)) return std::nullopt;
  Eigen::Matrix2d m;
  m << A, B / 2.0, B / 2.0, C;
  const Eigen::Vector2d center = m.ldlt().solve(Eigen::Vector2d(-D / 2.0, -E / 2.0));
  const double f0 = F + 0.5 * (D * center(0) + E * center(1));
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(m);
  const double l0 = eig.eigenvalues()(0), l1 = eig.eigenvalues()(1);
  const double r0 = -f0 / l0, r1 = -f0 / l1;
  if (!(r0 > 0.0) || !(r1 > 0.0)) return std::nullopt;
  // Smaller eigenvalue ↔ longer axis.
  const Eigen::Vector2d major = eig.eigenvectors().col(0);
  double angle = std::atan2(major(1), major(0));
  if (angle <= -std::numbers::pi / 2) angle += std::numbers::pi;
  if (angle > std::numbers::pi / 2) angle -= std::numbers::pi;
  return EllipseAxes{{center(0), center(1)}, std::sqrt(r0), std::sqrt(r1), angle};
}

}  // namespace poncelet
