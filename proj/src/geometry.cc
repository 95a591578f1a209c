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

#include "sea/geometry.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "sea/errors.h"

namespace sea {
namespace {

void CheckFinite(const Point& p, const char* what) {
  if (!p.allFinite()) {
    throw ConfigError(std::string(what) + " has non-finite entries");
  }
}

void CheckDim(const Point& p, const FeasibleSet& set) {
  if (p.size() != set.dim()) {
    throw ConfigError("dimension mismatch: point has " +
                      std::to_string(p.size()) + " coordinates, set has " +
                      std::to_string(set.dim()));
  }
}

Point PowerIterationStart(Eigen::Index n) {
  Point v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = 1.0 + 0.1 * i / n;
  return v.normalized();
}

// Largest eigenvalue of a symmetric PSD matrix. Rayleigh quotients of a PSD
// matrix increase monotonically under power iteration, so stopping on the
// relative change is safe.
double PowerIteration(const Matrix& a, double rel_tol) {
  const Eigen::Index n = a.rows();
  if (n == 0) return 0.0;
  Point v = PowerIterationStart(n);
  double lambda = v.dot(a * v);
  for (int iter = 0; iter < 1000000; ++iter) {
    Point w = a * v;
    const double norm = w.norm();
    if (norm == 0.0) return 0.0;
    v = w / norm;
    const double next = v.dot(a * v);
    if (std::abs(next - lambda) <= rel_tol * std::max(std::abs(next), 1e-300)) {
      return next;
    }
    lambda = next;
  }
  return lambda;
}

}  // namespace

FeasibleSet FeasibleSet::MakeBall(Point center, double radius) {
  CheckFinite(center, "ball center");
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw ConfigError("ball radius must be positive and finite");
  }
  return FeasibleSet(Ball{std::move(center), radius});
}

FeasibleSet FeasibleSet::MakeBox(Point lo, Point hi) {
  CheckFinite(lo, "box lo");
  CheckFinite(hi, "box hi");
  if (lo.size() != hi.size() || lo.size() == 0) {
    throw ConfigError("box bounds must have equal, nonzero dimension");
  }
  for (Eigen::Index i = 0; i < lo.size(); ++i) {
    if (!(lo[i] < hi[i])) {
      throw ConfigError("box requires lo[i] < hi[i] for every coordinate");
    }
  }
  return FeasibleSet(Box{std::move(lo), std::move(hi)});
}

FeasibleSet FeasibleSet::UnitBall(int dim, double radius) {
  if (dim <= 0) throw ConfigError("dimension must be positive");
  return MakeBall(Point::Zero(dim), radius);
}

int FeasibleSet::dim() const {
  return std::visit(
      [](const auto& s) -> int {
        if constexpr (std::is_same_v<std::decay_t<decltype(s)>, Ball>) {
          return static_cast<int>(s.center.size());
        } else {
          return static_cast<int>(s.lo.size());
        }
      },
      shape_);
}

double FeasibleSet::Diameter() const {
  if (const auto* ball = std::get_if<Ball>(&shape_)) return 2.0 * ball->radius;
  const auto& box = std::get<Box>(shape_);
  return (box.hi - box.lo).norm();
}

Point FeasibleSet::Center() const {
  if (const auto* ball = std::get_if<Ball>(&shape_)) return ball->center;
  const auto& box = std::get<Box>(shape_);
  return 0.5 * (box.lo + box.hi);
}

double FeasibleSet::MaxNorm() const {
  if (const auto* ball = std::get_if<Ball>(&shape_)) {
    return ball->center.norm() + ball->radius;
  }
  const auto& box = std::get<Box>(shape_);
  return box.lo.cwiseAbs().cwiseMax(box.hi.cwiseAbs()).norm();
}

bool FeasibleSet::Contains(const Point& p, double tol) const {
  if (p.size() != dim()) return false;
  if (const auto* ball = std::get_if<Ball>(&shape_)) {
    return (p - ball->center).norm() <= ball->radius + tol;
  }
  const auto& box = std::get<Box>(shape_);
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (p[i] < box.lo[i] - tol || p[i] > box.hi[i] + tol) return false;
  }
  return true;
}

Point Project(const Point& p, const FeasibleSet& set) {
  CheckDim(p, set);
  if (const auto* ball = std::get_if<Ball>(&set.shape())) {
    const Point offset = p - ball->center;
    const double dist = offset.norm();
    if (dist <= ball->radius) return p;
    return ball->center + (ball->radius / dist) * offset;
  }
  const auto& box = std::get<Box>(set.shape());
  return p.cwiseMax(box.lo).cwiseMin(box.hi);
}

Point LinearMinimize(const Point& dir, const FeasibleSet& set) {
  CheckDim(dir, set);
  if (const auto* ball = std::get_if<Ball>(&set.shape())) {
    const double norm = dir.norm();
    if (norm == 0.0) return ball->center;
    return ball->center - (ball->radius / norm) * dir;
  }
  const auto& box = std::get<Box>(set.shape());
  Point x(dir.size());
  for (Eigen::Index i = 0; i < dir.size(); ++i) {
    if (dir[i] > 0.0) {
      x[i] = box.lo[i];
    } else if (dir[i] < 0.0) {
      x[i] = box.hi[i];
    } else {
      x[i] = 0.5 * (box.lo[i] + box.hi[i]);
    }
  }
  return x;
}

Point RegArgmin(const Point& theta, double c, const FeasibleSet& set) {
  if (!(c > 0.0)) throw ContractError("RegArgmin requires c > 0");
  return Project(-theta / (2.0 * c), set);
}

double LargestEigenvalue(const Matrix& a, double rel_tol) {
  return PowerIteration(a, rel_tol);
}

double SmallestEigenvalue(const Matrix& a, double rel_tol) {
  const double top = PowerIteration(a, rel_tol);
  if (top == 0.0) return 0.0;
  const Matrix shifted =
      top * Matrix::Identity(a.rows(), a.cols()) - a;
  const double gap = PowerIteration(shifted, rel_tol);
  // Relative accuracy on the shifted problem is absolute accuracy of order
  // rel_tol * top here; snap roundoff below zero.
  return std::max(0.0, top - gap);
}

double SpectralNorm(const Matrix& a, double rel_tol) {
  return std::sqrt(PowerIteration(a.transpose() * a, rel_tol));
}

}  // namespace sea
