#include "chaincover/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace chaincover {

std::string family_name(Family family) {
  switch (family) {
    case Family::Discrete01: return "discrete01";
    case Family::SqrtInterval: return "sqrt_interval";
    case Family::ReciprocalSet: return "reciprocal_set";
    case Family::AtsujiPairs: return "atsuji_pairs";
    case Family::OrthonormalRays: return "orthonormal_rays";
    case Family::Lattice: return "lattice";
    case Family::RandomCloud: return "random_cloud";
    case Family::ProductSup: return "product_sup";
  }
  return "?";
}

Family family_from_name(const std::string& name) {
  for (Family f : {Family::Discrete01, Family::SqrtInterval, Family::ReciprocalSet,
                   Family::AtsujiPairs, Family::OrthonormalRays, Family::Lattice,
                   Family::RandomCloud, Family::ProductSup})
    if (family_name(f) == name) return f;
  throw DomainError("unknown space family: " + name);
}

std::string SpaceSpec::describe() const {
  std::ostringstream os;
  os << family_name(family) << "(";
  for (std::size_t k = 0; k < params.size(); ++k) {
    if (k) os << ",";
    os << params[k];
  }
  if (family == Family::RandomCloud) os << ";seed=" << seed;
  if (family == Family::ProductSup && factor_a && factor_b)
    os << factor_a->describe() << " x " << factor_b->describe();
  os << ")";
  return os.str();
}

SpaceSpec parse_space_spec(const std::string& text) {
  SpaceSpec spec;
  const auto colon = text.find(':');
  const std::string name = text.substr(0, colon);
  spec.family = family_from_name(name);
  if (spec.family == Family::ProductSup)
    throw DomainError("product_sup factors cannot be parsed from a flat spec string");
  if (colon != std::string::npos) {
    std::istringstream ps(text.substr(colon + 1));
    std::string tok;
    while (std::getline(ps, tok, ',')) {
      try {
        std::size_t used = 0;
        spec.params.push_back(std::stod(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw DomainError("bad numeric parameter '" + tok + "' in spec " + text);
      }
    }
  }
  return spec;
}

namespace {

int int_param(const SpaceSpec& spec, std::size_t k, const char* field, int lo,
              int hi = 1000000) {
  if (k >= spec.params.size())
    throw DomainError(family_name(spec.family) + ": missing parameter " + field);
  const double v = spec.params[k];
  if (v != std::floor(v) || v < lo || v > hi)
    throw DomainError(family_name(spec.family) + ": parameter " + field +
                      " must be an integer in [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "]");
  return static_cast<int>(v);
}

double real_param(const SpaceSpec& spec, std::size_t k, const char* field) {
  if (k >= spec.params.size())
    throw DomainError(family_name(spec.family) + ": missing parameter " + field);
  const double v = spec.params[k];
  if (!std::isfinite(v) || v <= 0.0)
    throw DomainError(family_name(spec.family) + ": parameter " + field +
                      " must be a positive real");
  return v;
}

// One-dimensional carriers are point clouds under the L1 metric, which is
// exactly |x - y| with no rounding; construction then validates in O(n^2).
FiniteMetricSpace line_space(const std::vector<double>& points, SpaceOptions opts) {
  std::vector<std::vector<double>> coords;
  coords.reserve(points.size());
  for (double p : points) coords.push_back({p});
  return FiniteMetricSpace::from_points(std::move(coords), PointMetric::L1, opts);
}

std::vector<double> grid_points(double R, double step) {
  std::vector<double> points;
  const auto count = static_cast<std::size_t>(std::floor(R / step + 1e-9)) + 1;
  points.reserve(count);
  for (std::size_t k = 0; k < count; ++k) points.push_back(static_cast<double>(k) * step);
  return points;
}

// Uniform double in [0, 1) from the top 53 bits; bit-identical everywhere.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

FiniteMetricSpace generate_orthonormal_rays(int rays, int steps, SpaceOptions opts) {
  // Points: origin, then ray by ray at heights t/steps for t = 1..steps.
  // Distances follow from orthonormality, no coordinates needed:
  // within a ray |t - s|/steps, across rays sqrt(t^2 + s^2)/steps.
  const std::size_t n = 1 + static_cast<std::size_t>(rays) * static_cast<std::size_t>(steps);
  const double unit = 1.0 / static_cast<double>(steps);
  std::vector<double> table(n * n, 0.0);
  const auto height = [&](std::size_t idx) {
    return static_cast<double>((idx - 1) % static_cast<std::size_t>(steps) + 1) * unit;
  };
  const auto ray = [&](std::size_t idx) {
    return (idx - 1) / static_cast<std::size_t>(steps);
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double d = 0.0;
      if (i == 0) {
        d = height(j);
      } else if (ray(i) == ray(j)) {
        d = std::abs(height(i) - height(j));
      } else {
        const double a = height(i);
        const double b = height(j);
        d = std::sqrt(a * a + b * b);
      }
      table[i * n + j] = table[j * n + i] = d;
    }
  return FiniteMetricSpace::from_table(n, std::move(table), opts);
}

}  // namespace

std::pair<FiniteMetricSpace, FiniteMetricSpace> generate_sqrt_interval(
    double R, double step, SpaceOptions opts) {
  if (!(R > 0.0)) throw DomainError("sqrt_interval: parameter R must be positive");
  if (!(step > 0.0) || step > R)
    throw DomainError("sqrt_interval: parameter step must be in (0, R]");
  const auto points = grid_points(R, step);
  if (points.size() > 10000)
    throw DomainError("sqrt_interval: R/step exceeds 10000 grid points");
  // |sqrt(x) - sqrt(y)| is the line metric on the transformed coordinates.
  std::vector<double> roots;
  roots.reserve(points.size());
  for (double p : points) roots.push_back(std::sqrt(p));
  return {line_space(points, opts), line_space(roots, opts)};
}

FiniteMetricSpace generate(const SpaceSpec& spec, SpaceOptions opts) {
  switch (spec.family) {
    case Family::Discrete01: {
      const int k = int_param(spec, 0, "k", 1, 2048);
      const auto n = static_cast<std::size_t>(k);
      std::vector<double> table(n * n, 1.0);
      for (std::size_t i = 0; i < n; ++i) table[i * n + i] = 0.0;
      return FiniteMetricSpace::from_table(n, std::move(table), opts);
    }
    case Family::SqrtInterval: {
      const double R = real_param(spec, 0, "R");
      const double step = real_param(spec, 1, "step");
      const bool sqrt_variant =
          spec.params.size() > 2 && int_param(spec, 2, "variant", 0, 1) == 1;
      auto pair = generate_sqrt_interval(R, step, opts);
      return sqrt_variant ? std::move(pair.second) : std::move(pair.first);
    }
    case Family::ReciprocalSet: {
      const int k = int_param(spec, 0, "k", 1, 10000);
      std::vector<double> points;
      for (int m = 1; m <= k; ++m) points.push_back(1.0 / static_cast<double>(m));
      return line_space(points, opts);
    }
    case Family::AtsujiPairs: {
      const int k = int_param(spec, 0, "k", 1, 5000);
      std::vector<double> points;
      for (int m = 1; m <= k; ++m) {
        points.push_back(static_cast<double>(m));
        points.push_back(static_cast<double>(m) + 1.0 / static_cast<double>(m + 1));
      }
      return line_space(points, opts);
    }
    case Family::OrthonormalRays: {
      const int rays = int_param(spec, 0, "N", 1, 2047);
      const int steps = int_param(spec, 1, "steps", 1, 2047);
      if (1 + rays * steps > 2048)
        throw DomainError("orthonormal_rays: N*steps + 1 exceeds 2048 points");
      return generate_orthonormal_rays(rays, steps, opts);
    }
    case Family::Lattice: {
      const int dims = int_param(spec, 0, "dims", 1, 6);
      const int side = int_param(spec, 1, "side", 1, 10000);
      double total = 1.0;
      for (int d = 0; d < dims; ++d) total *= side;
      if (total > 10000.0) throw DomainError("lattice: side^dims exceeds 10000 points");
      const auto n = static_cast<std::size_t>(total);
      std::vector<std::vector<double>> coords(n, std::vector<double>(dims, 0.0));
      for (std::size_t idx = 0; idx < n; ++idx) {
        std::size_t rest = idx;
        for (int d = 0; d < dims; ++d) {
          coords[idx][d] = static_cast<double>(rest % static_cast<std::size_t>(side));
          rest /= static_cast<std::size_t>(side);
        }
      }
      return FiniteMetricSpace::from_points(std::move(coords), PointMetric::Euclidean,
                                            opts);
    }
    case Family::RandomCloud: {
      const int n = int_param(spec, 0, "n", 1, 10000);
      const int dim = int_param(spec, 1, "dim", 1, 64);
      std::mt19937_64 rng(spec.seed);
      std::vector<std::vector<double>> coords(static_cast<std::size_t>(n),
                                              std::vector<double>(dim, 0.0));
      for (auto& p : coords)
        for (auto& v : p) v = uniform01(rng);
      return FiniteMetricSpace::from_points(std::move(coords), PointMetric::Euclidean,
                                            opts);
    }
    case Family::ProductSup: {
      if (!spec.factor_a || !spec.factor_b)
        throw DomainError("product_sup: both factor specs are required");
      const auto A = generate(*spec.factor_a, opts);
      const auto B = generate(*spec.factor_b, opts);
      const std::size_t na = A.size(), nb = B.size(), n = na * nb;
      if (n > 2048) throw DomainError("product_sup: product exceeds 2048 points");
      std::vector<double> table(n * n, 0.0);
      for (std::size_t ia = 0; ia < na; ++ia)
        for (std::size_t ib = 0; ib < nb; ++ib)
          for (std::size_t ja = 0; ja < na; ++ja)
            for (std::size_t jb = 0; jb < nb; ++jb) {
              double da = A.dist(ia, ja);
              if (spec.cap_first) da = std::min(1.0, da);
              const double db = B.dist(ib, jb);
              table[(ia * nb + ib) * n + (ja * nb + jb)] = std::max(da, db);
            }
      return FiniteMetricSpace::from_table(n, std::move(table), opts);
    }
  }
  throw DomainError("unknown space family");
}

}  // namespace chaincover
