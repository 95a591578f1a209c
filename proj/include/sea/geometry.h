// Copyright 2026 The sea-oco Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SEA_GEOMETRY_H_
#define SEA_GEOMETRY_H_

#include <variant>

#include <Eigen/Dense>

namespace sea {

using Point = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

struct Ball {
  Point center;
  double radius;
};

struct Box {
  Point lo;
  Point hi;
};

// Closed convex decision set. Only shapes with exact O(d) Euclidean
// projections are supported.
class FeasibleSet {
 public:
  using Shape = std::variant<Ball, Box>;

  // Throws ConfigError on radius <= 0, lo[i] >= hi[i], non-finite entries.
  static FeasibleSet MakeBall(Point center, double radius);
  static FeasibleSet MakeBox(Point lo, Point hi);
  // Ball of the given radius centered at the origin of R^dim.
  static FeasibleSet UnitBall(int dim, double radius = 1.0);

  int dim() const;
  double Diameter() const;
  // Ball center or box midpoint.
  Point Center() const;
  // sup over the set of ||x||.
  double MaxNorm() const;
  bool Contains(const Point& p, double tol = 1e-12) const;

  const Shape& shape() const { return shape_; }
  bool is_ball() const { return std::holds_alternative<Ball>(shape_); }

 private:
  explicit FeasibleSet(Shape shape) : shape_(std::move(shape)) {}
  Shape shape_;
};

// Euclidean projection onto `set`. Throws ConfigError on dimension mismatch.
Point Project(const Point& p, const FeasibleSet& set);

// argmin over the set of <dir, x>. Zero directions (or zero coordinates for
// a box) resolve to the center / midpoint.
Point LinearMinimize(const Point& dir, const FeasibleSet& set);

// Exact minimizer of <theta, x> + c ||x||^2 over the set, c > 0. The
// objective equals c ||x + theta / (2c)||^2 up to a constant, so this is a
// single projection.
Point RegArgmin(const Point& theta, double c, const FeasibleSet& set);

// Largest eigenvalue of a symmetric positive semidefinite matrix by power
// iteration to the given relative tolerance.
double LargestEigenvalue(const Matrix& a, double rel_tol = 1e-10);
// Smallest eigenvalue of a symmetric PSD matrix (power iteration on the
// shifted matrix lambda_max I - A).
double SmallestEigenvalue(const Matrix& a, double rel_tol = 1e-10);
// Spectral norm of a symmetric (possibly indefinite) matrix.
double SpectralNorm(const Matrix& a, double rel_tol = 1e-10);

}  // namespace sea

#endif  // SEA_GEOMETRY_H_
