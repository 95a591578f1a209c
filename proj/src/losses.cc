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

#include "sea/losses.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sea/errors.h"

namespace sea {
namespace {

void CheckDim(const Point& x, int dim) {
  if (x.size() != dim) {
    throw ConfigError("dimension mismatch: expected " + std::to_string(dim) +
                      ", got " + std::to_string(x.size()));
  }
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Members of a finite pool, restricted to the active indices.
template <typename Fn>
void ForEachActive(const FiniteUniform& fu, Fn&& fn) {
  for (std::size_t idx : fu.active) fn((*fu.pool)[idx]);
}

bool AllShareCurvature(const FiniteUniform& fu) {
  const LossSpec& first = (*fu.pool)[fu.active.front()];
  bool shared = true;
  ForEachActive(fu, [&](const LossSpec& l) {
    shared = shared && SameCurvature(first, l);
  });
  return shared;
}

bool IsZero(const Matrix& m) { return (m.array() == 0.0).all(); }

// Top eigenpair of a symmetric PSD matrix (eigenvector normalized).
Point TopEigenvector(const Matrix& a) {
  const Eigen::Index n = a.rows();
  Point v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = 1.0 + 0.1 * i / n;
  v.normalize();
  double lambda = v.dot(a * v);
  for (int iter = 0; iter < 100000; ++iter) {
    Point w = a * v;
    const double norm = w.norm();
    if (norm == 0.0) break;
    v = w / norm;
    const double next = v.dot(a * v);
    if (std::abs(next - lambda) <= 1e-12 * std::max(std::abs(next), 1e-300)) {
      break;
    }
    lambda = next;
  }
  return v;
}

}  // namespace

LossSpec LossSpec::Linear(Point g) {
  if (g.size() == 0) throw ConfigError("loss dimension must be positive");
  return LossSpec(LinearLoss{std::move(g)});
}

LossSpec LossSpec::Quadratic(Matrix a, Point b) {
  if (a.rows() != a.cols() || a.rows() != b.size() || b.size() == 0) {
    throw ConfigError("quadratic loss needs a square A matching b");
  }
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw ConfigError("quadratic loss needs a symmetric A");
  }
  return LossSpec(QuadraticLoss{std::move(a), std::move(b)});
}

int LossSpec::dim() const { return static_cast<int>(linear_term().size()); }

const Point& LossSpec::linear_term() const {
  return std::visit(
      Overloaded{[](const LinearLoss& l) -> const Point& { return l.g; },
                 [](const QuadraticLoss& q) -> const Point& { return q.b; }},
      form_);
}

const Matrix* LossSpec::curvature() const {
  if (const auto* q = std::get_if<QuadraticLoss>(&form_)) return &q->a;
  return nullptr;
}

Matrix LossSpec::CurvatureOrZero() const {
  if (const Matrix* a = curvature()) return *a;
  return Matrix::Zero(dim(), dim());
}

double Value(const LossSpec& loss, const Point& x) {
  CheckDim(x, loss.dim());
  return std::visit(
      Overloaded{[&](const LinearLoss& l) { return l.g.dot(x); },
                 [&](const QuadraticLoss& q) {
                   return 0.5 * x.dot(q.a * x) + q.b.dot(x);
                 }},
      loss.form());
}

Point Grad(const LossSpec& loss, const Point& x) {
  CheckDim(x, loss.dim());
  return std::visit(
      Overloaded{[&](const LinearLoss& l) -> Point { return l.g; },
                 [&](const QuadraticLoss& q) -> Point { return q.a * x + q.b; }},
      loss.form());
}

LossSpec AddLinear(const LossSpec& loss, const Point& shift) {
  CheckDim(shift, loss.dim());
  if (const Matrix* a = loss.curvature()) {
    return LossSpec::Quadratic(*a, loss.linear_term() + shift);
  }
  return LossSpec::Linear(loss.linear_term() + shift);
}

bool SameCurvature(const LossSpec& a, const LossSpec& b) {
  const Matrix* ca = a.curvature();
  const Matrix* cb = b.curvature();
  if (ca == nullptr && cb == nullptr) return true;
  if (ca == nullptr) return IsZero(*cb);
  if (cb == nullptr) return IsZero(*ca);
  return *ca == *cb;
}

double GradNormBound(const LossSpec& loss, const FeasibleSet& set) {
  if (const Matrix* a = loss.curvature()) {
    return SpectralNorm(*a) * set.MaxNorm() + loss.linear_term().norm();
  }
  return loss.linear_term().norm();
}

DistributionSpec DistributionSpec::MakeDirac(LossSpec loss) {
  return DistributionSpec(Dirac{std::move(loss)});
}

DistributionSpec DistributionSpec::MakeSphereNoise(LossSpec base, double sigma) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw ConfigError("sphere noise sigma must be finite and nonnegative");
  }
  return DistributionSpec(SphereNoise{std::move(base), sigma});
}

DistributionSpec DistributionSpec::MakeFiniteUniform(
    std::shared_ptr<const std::vector<LossSpec>> pool,
    std::vector<std::size_t> active) {
  if (!pool || pool->empty() || active.empty()) {
    throw ConfigError("finite uniform distribution needs a nonempty support");
  }
  const int d = pool->front().dim();
  for (const LossSpec& l : *pool) {
    if (l.dim() != d) throw ConfigError("pool members differ in dimension");
  }
  for (std::size_t idx : active) {
    if (idx >= pool->size()) throw ConfigError("active index out of range");
  }
  return DistributionSpec(FiniteUniform{std::move(pool), std::move(active)});
}

DistributionSpec DistributionSpec::MakeFiniteUniform(std::vector<LossSpec> pool) {
  std::vector<std::size_t> active(pool.size());
  for (std::size_t i = 0; i < active.size(); ++i) active[i] = i;
  return MakeFiniteUniform(
      std::make_shared<const std::vector<LossSpec>>(std::move(pool)),
      std::move(active));
}

DistributionSpec DistributionSpec::MakeShifted(DistributionSpec base,
                                               Point corruption) {
  CheckDim(corruption, base.dim());
  return DistributionSpec(
      Shifted{std::make_shared<const DistributionSpec>(std::move(base)),
              std::move(corruption)});
}

int DistributionSpec::dim() const {
  return std::visit(
      Overloaded{
          [](const Dirac& d) { return d.loss.dim(); },
          [](const SphereNoise& s) { return s.base.dim(); },
          [](const FiniteUniform& f) { return f.pool->front().dim(); },
          [](const Shifted& s) { return static_cast<int>(s.corruption.size()); }},
      v_);
}

Point MeanGrad(const DistributionSpec& dist, const Point& x) {
  return Grad(MeanLoss(dist), x);
}

LossSpec MeanLoss(const DistributionSpec& dist) {
  return std::visit(
      Overloaded{
          [](const Dirac& d) { return d.loss; },
          [](const SphereNoise& s) { return s.base; },
          [](const FiniteUniform& f) {
            const int d = f.pool->front().dim();
            Matrix a = Matrix::Zero(d, d);
            Point b = Point::Zero(d);
            bool any_quadratic = false;
            ForEachActive(f, [&](const LossSpec& l) {
              if (const Matrix* c = l.curvature()) {
                a += *c;
                any_quadratic = true;
              }
              b += l.linear_term();
            });
            const double m = static_cast<double>(f.active.size());
            if (!any_quadratic) return LossSpec::Linear(b / m);
            return LossSpec::Quadratic(a / m, b / m);
          },
          [](const Shifted& s) {
            return AddLinear(MeanLoss(*s.base), s.corruption);
          }},
      dist.variant());
}

double VarianceBound(const DistributionSpec& dist, const FeasibleSet& set) {
  return std::visit(
      Overloaded{
          [](const Dirac&) { return 0.0; },
          [](const SphereNoise& s) { return s.sigma * s.sigma; },
          [&](const FiniteUniform& f) {
            const int d = f.pool->front().dim();
            const double m = static_cast<double>(f.active.size());
            Point b_mean = Point::Zero(d);
            ForEachActive(f, [&](const LossSpec& l) { b_mean += l.linear_term(); });
            b_mean /= m;
            if (AllShareCurvature(f)) {
              double total = 0.0;
              ForEachActive(f, [&](const LossSpec& l) {
                total += (l.linear_term() - b_mean).squaredNorm();
              });
              return total / m;
            }
            Matrix a_mean = Matrix::Zero(d, d);
            ForEachActive(f, [&](const LossSpec& l) { a_mean += l.CurvatureOrZero(); });
            a_mean /= m;
            Matrix h_mat = Matrix::Zero(d, d);
            Point h_vec = Point::Zero(d);
            double k = 0.0;
            ForEachActive(f, [&](const LossSpec& l) {
              const Matrix da = l.CurvatureOrZero() - a_mean;
              const Point db = l.linear_term() - b_mean;
              h_mat += da.transpose() * da;
              h_vec += da.transpose() * db;
              k += db.squaredNorm();
            });
            return MaximizeConvexQuadratic(h_mat / m, h_vec / m, k / m, set);
          },
          [&](const Shifted& s) { return VarianceBound(*s.base, set); }},
      dist.variant());
}

double Variation(const DistributionSpec& a, const DistributionSpec& b,
                 const FeasibleSet& set) {
  if (a.dim() != b.dim()) throw ConfigError("variation: dimension mismatch");
  return LossVariation(MeanLoss(a), MeanLoss(b), set);
}

double LossVariation(const LossSpec& a, const LossSpec& b, const FeasibleSet& set) {
  if (a.dim() != b.dim()) throw ConfigError("variation: dimension mismatch");
  const Point db = a.linear_term() - b.linear_term();
  if (SameCurvature(a, b)) return db.squaredNorm();
  return SupSquaredAffine(a.CurvatureOrZero() - b.CurvatureOrZero(), db, set);
}

Point SampleUnitSphere(int dim, CounterRng& rng) {
  Point u(dim);
  if (dim == 1) {
    u[0] = rng.Sign();
    return u;
  }
  double norm = 0.0;
  do {
    for (int i = 0; i < dim; ++i) u[i] = rng.Normal();
    norm = u.norm();
  } while (norm == 0.0);
  return u / norm;
}

LossSpec Sample(const DistributionSpec& dist, CounterRng& rng) {
  return std::visit(
      Overloaded{
          [](const Dirac& d) { return d.loss; },
          [&](const SphereNoise& s) {
            if (s.sigma == 0.0) return s.base;
            return AddLinear(s.base, s.sigma * SampleUnitSphere(s.base.dim(), rng));
          },
          [&](const FiniteUniform& f) {
            return (*f.pool)[f.active[rng.Below(f.active.size())]];
          },
          [&](const Shifted& s) {
            return AddLinear(Sample(*s.base, rng), s.corruption);
          }},
      dist.variant());
}

double GradNormBound(const DistributionSpec& dist, const FeasibleSet& set) {
  return std::visit(
      Overloaded{
          [&](const Dirac& d) { return GradNormBound(d.loss, set); },
          [&](const SphereNoise& s) { return GradNormBound(s.base, set) + s.sigma; },
          [&](const FiniteUniform& f) {
            double g = 0.0;
            ForEachActive(f, [&](const LossSpec& l) {
              g = std::max(g, GradNormBound(l, set));
            });
            return g;
          },
          [&](const Shifted& s) {
            return GradNormBound(*s.base, set) + s.corruption.norm();
          }},
      dist.variant());
}

double SupSquaredAffine(const Matrix& m, const Point& c, const FeasibleSet& set) {
  if (IsZero(m)) return c.squaredNorm();
  if (c.isZero(0.0) && set.is_ball() && set.Center().isZero(0.0)) {
    const double r = std::get<Ball>(set.shape()).radius;
    const double s = SpectralNorm(m);
    return r * r * s * s;
  }
  return MaximizeConvexQuadratic(m.transpose() * m, m.transpose() * c,
                                 c.squaredNorm(), set);
}

double MaximizeConvexQuadratic(const Matrix& h_mat, const Point& h_vec, double k,
                               const FeasibleSet& set) {
  constexpr int kRestarts = 16;
  constexpr double kTol = 1e-8;
  constexpr int kMaxIter = 20000;
  const int d = set.dim();
  auto objective = [&](const Point& x) {
    return x.dot(h_mat * x) + 2.0 * h_vec.dot(x) + k;
  };

  const double top = LargestEigenvalue(h_mat);
  // Any positive step increases a convex objective under projection; 1/(2
  // lambda_max) makes each step a contraction toward the boundary maximizer.
  const double step = top > 0.0 ? 0.5 / top : 1.0;

  std::vector<Point> starts;
  starts.reserve(kRestarts);
  const Point center = set.Center();
  starts.push_back(center);
  Point dir = top > 0.0 ? TopEigenvector(h_mat) : Point(Point::Ones(d).normalized());
  starts.push_back(Project(center + set.Diameter() * dir, set));
  starts.push_back(Project(center - set.Diameter() * dir, set));
  CounterRng rng(0x7ea5e5eedULL);
  while (static_cast<int>(starts.size()) < kRestarts) {
    Point u = SampleUnitSphere(d, rng);
    starts.push_back(Project(center + 0.5 * set.Diameter() * rng.Uniform() * u, set));
  }

  double best = -std::numeric_limits<double>::infinity();
  for (Point x : starts) {
    double value = objective(x);
    best = std::max(best, value);
    for (int iter = 0; iter < kMaxIter; ++iter) {
      const Point grad = 2.0 * (h_mat * x + h_vec);
      Point next = Project(x + step * grad, set);
      const double next_value = objective(next);
      best = std::max(best, next_value);
      const bool stalled =
          next_value - value <= kTol * std::max(1.0, std::abs(next_value));
      x = std::move(next);
      value = next_value;
      if (stalled) break;
    }
  }
  return best;
}

}  // namespace sea
