#include "bec/poincare/poincare.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "bec/errors.hpp"

namespace bec::poincare {

namespace {

constexpr double kHoldsSlack = 1e-12;

void require_sizes(const Region& k, std::size_t size, const char* what) {
  if (size != k.cell_count()) throw InvalidParameter(std::string(what) + " does not match the region grid");
}

CheckResult assemble(const Region& k, const std::vector<double>& energy, const std::vector<double>& f,
                     const Mask& omega, const std::vector<double>* weight, double c) {
  if (!(c > 0.0)) throw InvalidParameter("Poincare constant must be positive");
  CheckResult r;
  std::size_t complement = 0;
  const double dv = k.cell_volume();
  for (std::size_t cell = 0; cell < k.cell_count(); ++cell) {
    if (!k.inside(cell)) continue;
    const double w = weight ? (*weight)[cell] : 1.0;
    const double e = w * energy[cell];
    r.gradient_total += e;
    if (omega[cell]) r.gradient_omega += e;
    else ++complement;
    r.norm += w * f[cell] * f[cell] * dv;
  }
  r.complement_ratio = static_cast<double>(complement) / static_cast<double>(k.interior_count());
  r.lhs = r.gradient_omega + std::pow(r.complement_ratio, 2.0 / k.dimension()) * r.gradient_total;
  r.rhs = r.norm / c;
  r.holds = r.lhs >= r.rhs - kHoldsSlack * std::max(1.0, r.rhs);
  return r;
}

double uniform01(std::mt19937_64& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

std::array<double, 3> random_point(const Region& k, std::mt19937_64& rng) {
  for (;;) {
    const std::size_t cell = std::uniform_int_distribution<std::size_t>(0, k.cell_count() - 1)(rng);
    if (!k.inside(cell)) continue;
    auto r = k.center(cell);
    for (int d = 0; d < k.dimension(); ++d) r[d] += (uniform01(rng) - 0.5) * k.spacing();
    return r;
  }
}

// Lower corner and span of the region's bounding box.
std::pair<double, double> bounds(const Region& k) {
  return k.shape() == RegionShape::box ? std::pair{0.0, k.size()} : std::pair{-k.size(), 2.0 * k.size()};
}

std::vector<double> make_function(const Region& k, FunctionFamily family, std::mt19937_64& rng,
                                  std::string& label) {
  const int m = k.dimension();
  const auto [lo, span] = bounds(k);
  std::vector<double> f(k.cell_count(), 0.0);
  std::ostringstream d;
  switch (family) {
    case FunctionFamily::cosines: {
      const int terms = 1 + static_cast<int>(uniform01(rng) * 6);
      d << "cosines(" << terms << ")";
      for (int t = 0; t < terms; ++t) {
        std::array<int, 3> wave{0, 0, 0};
        for (int a = 0; a < m; ++a) wave[a] = static_cast<int>(uniform01(rng) * 7);
        const double amp = uniform01(rng) * 2.0 - 1.0;
        const double phase = uniform01(rng) * 2.0 * std::numbers::pi;
        for (std::size_t c = 0; c < f.size(); ++c) {
          const auto r = k.center(c);
          double arg = phase;
          for (int a = 0; a < m; ++a) arg += std::numbers::pi * wave[a] * (r[a] - lo) / span;
          f[c] += amp * std::cos(arg);
        }
      }
      break;
    }
    case FunctionFamily::bumps: {
      const int terms = 1 + static_cast<int>(uniform01(rng) * 4);
      d << "bumps(" << terms << ")";
      for (int t = 0; t < terms; ++t) {
        const auto centre = random_point(k, rng);
        const double width = span * (0.03 + 0.3 * uniform01(rng));
        const double amp = uniform01(rng) * 2.0 - 1.0;
        for (std::size_t c = 0; c < f.size(); ++c) {
          const auto r = k.center(c);
          double r2 = 0.0;
          for (int a = 0; a < m; ++a) r2 += (r[a] - centre[a]) * (r[a] - centre[a]);
          f[c] += amp * std::exp(-0.5 * r2 / (width * width));
        }
      }
      break;
    }
    case FunctionFamily::neumann_mode: {
      const int axis = static_cast<int>(uniform01(rng) * m);
      const int order = 1 + static_cast<int>(uniform01(rng) * 3);
      d << "neumann(axis " << axis << ", order " << order << ")";
      f = neumann_mode(k, axis, order);
      break;
    }
  }
  label = d.str();
  return f;
}

Mask fractal_mask(const Region& k, std::mt19937_64& rng, std::string& label) {
  // Sierpinski-type dust: a cell is removed when some base-3 digit of its
  // index is 1 on every axis at the same level.
  const int levels = 1 + static_cast<int>(uniform01(rng) * 3);
  const bool invert = uniform01(rng) < 0.5;
  label = "fractal(levels " + std::to_string(levels) + (invert ? ", inverted)" : ")");
  Mask omega(k.cell_count(), 0);
  const int n = k.cells_per_axis();
  for (std::size_t c = 0; c < omega.size(); ++c) {
    const auto idx = k.index(c);
    bool removed = false;
    for (int level = 1, scale = 3; level <= levels && !removed; ++level, scale *= 3) {
      bool all_middle = true;
      for (int a = 0; a < k.dimension(); ++a) {
        const int digit = static_cast<int>(static_cast<long long>(idx[a]) * scale / n) % 3;
        all_middle = all_middle && digit == 1;
      }
      removed = all_middle;
    }
    omega[c] = (removed != invert) ? 0 : 1;
  }
  return omega;
}

Mask make_subset(const Region& k, SubsetFamily family, const std::vector<double>& f,
                 std::mt19937_64& rng, std::string& label) {
  const int m = k.dimension();
  Mask omega(k.cell_count(), 1);
  std::ostringstream d;
  switch (family) {
    case SubsetFamily::full:
      d << "full";
      break;
    case SubsetFamily::empty:
      d << "empty";
      std::fill(omega.begin(), omega.end(), 0);
      break;
    case SubsetFamily::random_cells: {
      const double p = uniform01(rng);
      d << "random(p " << p << ")";
      for (auto& v : omega) v = uniform01(rng) < p ? 1 : 0;
      break;
    }
    case SubsetFamily::stripes: {
      const int axis = static_cast<int>(uniform01(rng) * m);
      const int width = 1 + static_cast<int>(uniform01(rng) * 4);
      d << "stripes(axis " << axis << ", width " << width << ")";
      for (std::size_t c = 0; c < omega.size(); ++c) omega[c] = (k.index(c)[axis] / width) % 2 == 0;
      break;
    }
    case SubsetFamily::checkerboard: {
      const int block = 1 + static_cast<int>(uniform01(rng) * 3);
      d << "checkerboard(block " << block << ")";
      for (std::size_t c = 0; c < omega.size(); ++c) {
        const auto idx = k.index(c);
        int s = 0;
        for (int a = 0; a < m; ++a) s += idx[a] / block;
        omega[c] = s % 2 == 0;
      }
      break;
    }
    case SubsetFamily::ball_complement: {
      const int particles = 2 + static_cast<int>(uniform01(rng) * 199);
      // Radius N^{-7/17} in units of the region's size, kept above one cell.
      const double radius = std::max(k.size() * std::pow(static_cast<double>(particles), -7.0 / 17.0),
                                     1.01 * k.spacing());
      std::vector<std::array<double, 3>> points;
      for (int p = 0; p < particles; ++p) points.push_back(random_point(k, rng));
      d << "ball_complement(N " << particles << ", radius " << radius << ")";
      omega = omega_x_mask(points, radius, k);
      break;
    }
    case SubsetFamily::fractal: {
      std::string label_fractal;
      omega = fractal_mask(k, rng, label_fractal);
      d << label_fractal;
      break;
    }
    case SubsetFamily::adversarial: {
      const double q = 0.01 + 0.5 * uniform01(rng);
      d << "adversarial(top " << q << ")";
      const auto e = cell_gradient_energy(k, f);
      std::vector<std::size_t> order;
      for (std::size_t c = 0; c < e.size(); ++c)
        if (k.inside(c)) order.push_back(c);
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return e[a] > e[b]; });
      const auto cut = static_cast<std::size_t>(q * static_cast<double>(order.size()));
      for (std::size_t i = 0; i < cut; ++i) omega[order[i]] = 0;
      break;
    }
  }
  for (std::size_t c = 0; c < omega.size(); ++c)
    if (!k.inside(c)) omega[c] = 0;
  label = d.str();
  return omega;
}

}  // namespace

std::vector<double> cell_gradient_energy(const Region& k, const std::vector<double>& f) {
  require_sizes(k, f.size(), "function");
  const int m = k.dimension();
  const double h = k.spacing();
  const double edge_factor = std::pow(h, m - 2);  // (df/h)^2 h^m
  std::vector<double> e(k.cell_count(), 0.0);
  for (std::size_t c = 0; c < k.cell_count(); ++c) {
    if (!k.inside(c)) continue;
    auto idx = k.index(c);
    for (int a = 0; a < m; ++a) {
      if (idx[a] + 1 >= k.cells_per_axis()) continue;
      ++idx[a];
      const std::size_t nb = k.flat(idx);
      --idx[a];
      if (!k.inside(nb)) continue;
      const double df = f[nb] - f[c];
      const double share = 0.5 * df * df * edge_factor;
      e[c] += share;
      e[nb] += share;
    }
  }
  return e;
}

double weighted_mean(const Region& k, const std::vector<double>& h, const std::vector<double>& f) {
  require_sizes(k, h.size(), "weight");
  double num = 0.0, den = 0.0;
  for (std::size_t c = 0; c < k.cell_count(); ++c) {
    if (!k.inside(c)) continue;
    num += f[c] * h[c];
    den += h[c];
  }
  return num / den;
}

void project_mean_zero(const Region& k, const std::vector<double>& h, std::vector<double>& f) {
  require_sizes(k, f.size(), "function");
  // Two passes remove the round-off left by the first.
  for (int pass = 0; pass < 2; ++pass) {
    const double mean = weighted_mean(k, h, f);
    for (std::size_t c = 0; c < f.size(); ++c) f[c] = k.inside(c) ? f[c] - mean : 0.0;
  }
}

std::vector<double> uniform_weight(const Region& k) {
  std::vector<double> h(k.cell_count(), 0.0);
  for (std::size_t c = 0; c < h.size(); ++c)
    if (k.inside(c)) h[c] = 1.0 / k.volume();
  return h;
}

CheckResult check_inequality(const Region& k, const std::vector<double>& f, const Mask& omega, double c) {
  require_sizes(k, omega.size(), "subset mask");
  return assemble(k, cell_gradient_energy(k, f), f, omega, nullptr, c);
}

CheckResult weighted_check(const Region& k, const std::vector<double>& f, const Mask& omega,
                           const std::vector<double>& w, double c) {
  require_sizes(k, omega.size(), "subset mask");
  require_sizes(k, w.size(), "weight");
  double total = 0.0;
  for (std::size_t cell = 0; cell < k.cell_count(); ++cell) {
    if (!k.inside(cell)) continue;
    if (!(w[cell] > 0.0)) throw InvalidParameter("weight must be strictly positive on the region");
    total += w[cell];
  }
  std::vector<double> normalized(w.size(), 0.0);
  const double mean = total / static_cast<double>(k.interior_count());
  for (std::size_t cell = 0; cell < k.cell_count(); ++cell)
    if (k.inside(cell)) normalized[cell] = w[cell] / mean;
  return assemble(k, cell_gradient_energy(k, f), f, omega, &normalized, c);
}

Mask omega_x_mask(const std::vector<std::array<double, 3>>& points, double radius, const Region& k) {
  if (!(radius > k.spacing())) throw InvalidParameter("radius must exceed the cell size");
  Mask omega(k.cell_count(), 0);
  const double r2 = radius * radius;
  for (std::size_t c = 0; c < k.cell_count(); ++c) {
    if (!k.inside(c)) continue;
    const auto x = k.center(c);
    bool far = true;
    for (const auto& p : points) {
      double d2 = 0.0;
      for (int a = 0; a < k.dimension(); ++a) d2 += (x[a] - p[a]) * (x[a] - p[a]);
      if (d2 < r2) {
        far = false;
        break;
      }
    }
    omega[c] = far ? 1 : 0;
  }
  return omega;
}

std::vector<double> neumann_mode(const Region& k, int axis, int order) {
  if (axis < 0 || axis >= k.dimension()) throw InvalidParameter("axis out of range");
  const auto [lo, span] = bounds(k);
  std::vector<double> f(k.cell_count(), 0.0);
  for (std::size_t c = 0; c < f.size(); ++c)
    if (k.inside(c)) f[c] = std::cos(std::numbers::pi * order * (k.center(c)[axis] - lo) / span);
  return f;
}

double sobolev_ratio(const Region& k, const std::vector<double>& f) {
  const int m = k.dimension();
  const double p = 2.0 * m / (m + 2.0);
  const double dv = k.cell_volume();
  const auto e = cell_gradient_energy(k, f);
  double lp = 0.0, norm = 0.0;
  for (std::size_t c = 0; c < k.cell_count(); ++c) {
    if (!k.inside(c)) continue;
    lp += std::pow(e[c] / dv, 0.5 * p) * dv;
    norm += f[c] * f[c] * dv;
  }
  if (lp == 0.0) return norm == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return norm / std::pow(lp, 2.0 / p);
}

Trial generate_trial(const Region& k, const std::vector<double>& h, std::uint64_t seed, int index,
                     const TrialOptions& options) {
  if (options.functions.empty() || options.subsets.empty()) throw InvalidParameter("empty trial families");
  std::mt19937_64 rng(seed + static_cast<std::uint64_t>(index));
  Trial t;
  std::string f_label, omega_label;
  const auto ff = options.functions[static_cast<std::size_t>(uniform01(rng) * options.functions.size())];
  t.f = make_function(k, ff, rng, f_label);
  project_mean_zero(k, h, t.f);
  const auto sf = options.subsets[static_cast<std::size_t>(uniform01(rng) * options.subsets.size())];
  t.omega = make_subset(k, sf, t.f, rng, omega_label);
  t.description = "trial " + std::to_string(index) + ": f = " + f_label + ", Omega = " + omega_label;
  return t;
}

ConstantEstimate estimate_constant(const Region& k, const std::vector<double>& h, int trials,
                                   std::uint64_t seed, const TrialOptions& options) {
  if (trials < 1) throw InvalidParameter("trials must be >= 1");
  ConstantEstimate est;
  est.trials = trials;
  est.seed = seed;
  std::vector<Trial> kept;
  kept.reserve(static_cast<std::size_t>(trials));
  for (int i = 0; i < trials; ++i) {
    Trial t = generate_trial(k, h, seed, i, options);
    const auto r = check_inequality(k, t.f, t.omega, 1.0);
    const double ratio = r.lhs > 0.0 ? r.norm / r.lhs : 0.0;
    est.ratios.push_back(ratio);
    if (ratio > est.c_star) {
      est.c_star = ratio;
      est.worst_trial = i;
      est.worst_description = t.description;
    }
    est.c_tilde = std::max(est.c_tilde, sobolev_ratio(k, t.f));
    kept.push_back(std::move(t));
  }
  est.c_constructed = 2.0 * std::pow(k.volume(), 2.0 / k.dimension()) * est.c_tilde;
  for (const auto& t : kept) {
    if (est.c_star > 0.0 && check_inequality(k, t.f, t.omega, est.c_star).holds) ++est.holds_at_c_star;
    if (est.c_constructed > 0.0 && check_inequality(k, t.f, t.omega, est.c_constructed).holds) ++est.holds_at_constructed;
  }
  return est;
}

std::vector<double> sample_weight(const Region& k, const model::Grid& grid, const std::vector<double>& values) {
  if (grid.dimension() != k.dimension()) throw InvalidParameter("weight grid dimension differs from the region");
  if (values.size() != grid.size()) throw InvalidParameter("weight samples do not match their grid");
  const int m = k.dimension();
  std::vector<double> w(k.cell_count(), 0.0);
  for (std::size_t c = 0; c < w.size(); ++c) {
    if (!k.inside(c)) continue;
    const auto x = k.center(c);
    std::array<int, 3> i0{0, 0, 0};
    std::array<double, 3> t{0.0, 0.0, 0.0};
    for (int a = 0; a < m; ++a) {
      const double u = (x[a] - grid.lower(a)) / grid.spacing(a);
      if (u < 0.0 || u > grid.points(a) - 1) throw OutOfDomain("region cell outside the weight grid");
      i0[a] = std::min(static_cast<int>(u), grid.points(a) - 2);
      t[a] = u - i0[a];
    }
    double v = 0.0;
    for (int corner = 0; corner < (1 << m); ++corner) {
      std::array<int, 3> idx{0, 0, 0};
      double coef = 1.0;
      for (int a = 0; a < m; ++a) {
        const int bit = (corner >> a) & 1;
        idx[a] = i0[a] + bit;
        coef *= bit ? t[a] : 1.0 - t[a];
      }
      if (coef != 0.0) v += coef * values[grid.flat(idx[0], idx[1], idx[2])];
    }
    w[c] = v;
  }
  return w;
}

WeightedSuite weighted_suite(const Region& k, const std::vector<double>& w, double c_star, int trials,
                             std::uint64_t seed, const TrialOptions& options) {
  if (trials < 1) throw InvalidParameter("trials must be >= 1");
  if (!(c_star > 0.0)) throw InvalidParameter("Poincare constant must be positive");
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (std::size_t c = 0; c < k.cell_count(); ++c) {
    if (!k.inside(c)) continue;
    if (!(w[c] > 0.0)) throw InvalidParameter("weight must be strictly positive on the region");
    lo = std::min(lo, w[c]);
    hi = std::max(hi, w[c]);
  }
  WeightedSuite s;
  s.trials = trials;
  s.weight_ratio = hi / lo;
  s.c_sandwich = c_star * s.weight_ratio * s.weight_ratio;
  for (int i = 0; i < trials; ++i) {
    const Trial t = generate_trial(k, w, seed, i, options);
    const auto r = weighted_check(k, t.f, t.omega, w, s.c_sandwich);
    if (r.holds) ++s.holds;
    const double ratio = r.lhs > 0.0 ? r.norm / r.lhs : 0.0;
    if (ratio > s.c_weighted) {
      s.c_weighted = ratio;
      s.worst_trial = i;
    }
  }
  return s;
}

}  // namespace bec::poincare
