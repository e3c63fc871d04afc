#include "wts/opsim.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "wts/errors.hpp"

namespace wts {

Grid make_grid(double x_max, int n_points) {
  if (!(x_max > 0.0)) throw GridError("x_max must be positive");
  if (n_points < 2) throw GridError("grid needs at least 2 points");
  return Grid{x_max, n_points};
}

namespace {

void check_grid(const Grid& grid) {
  if (grid.n_points < 2 || !(grid.x_max > 0.0)) {
    throw GridError("invalid grid");
  }
}

void check_same_grid(const Grid& a, const Grid& b) {
  if (!(a == b)) throw GridError("grids do not match");
}

double sqrt_ratio(const Expr& phi, double num_at, double den_at) {
  double num = eval(phi, num_at);
  double den = eval(phi, den_at);
  if (!(num > 0.0) || !(den > 0.0)) {
    throw DomainError("symbol must be positive to form operator weights");
  }
  return std::sqrt(num / den);
}

}  // namespace

SampledFunction sample(const Expr& e, const Grid& grid) {
  check_grid(grid);
  SampledFunction f{grid, {}};
  f.values.reserve(static_cast<std::size_t>(grid.n_points));
  for (int i = 0; i < grid.n_points; ++i) f.values.push_back(eval(e, grid.node(i)));
  return f;
}

SampledFunction sample(const PointFn& fn, const Grid& grid) {
  check_grid(grid);
  SampledFunction f{grid, {}};
  f.values.reserve(static_cast<std::size_t>(grid.n_points));
  for (int i = 0; i < grid.n_points; ++i) f.values.push_back(fn(grid.node(i)));
  return f;
}

int aligned_steps(const Grid& grid, double t) {
  check_grid(grid);
  if (t < 0.0) throw GridError("translation step must be non-negative");
  double h = grid.spacing();
  double steps = t / h;
  long long k = std::llround(steps);
  if (std::abs(steps - static_cast<double>(k)) > 1e-9 * (1.0 + std::abs(steps))) {
    throw GridError("t = " + std::to_string(t) +
                    " is not aligned with the grid spacing " + std::to_string(h));
  }
  if (k >= grid.n_points) {
    throw GridError("translation step exceeds the grid");
  }
  return static_cast<int>(k);
}

SampledFunction weight_function(const Expr& phi, double t, const Grid& grid) {
  int k = aligned_steps(grid, t);
  SampledFunction w{grid, std::vector<double>(static_cast<std::size_t>(grid.n_points), 0.0)};
  for (int i = k; i < grid.n_points; ++i) {
    w.values[static_cast<std::size_t>(i)] =
        sqrt_ratio(phi, grid.node(i), grid.node(i - k));
  }
  return w;
}

SampledFunction apply_st(const Expr& phi, double t, const SampledFunction& f) {
  int k = aligned_steps(f.grid, t);
  SampledFunction out{f.grid,
                      std::vector<double>(static_cast<std::size_t>(f.grid.n_points), 0.0)};
  for (int i = k; i < f.grid.n_points; ++i) {
    out.values[static_cast<std::size_t>(i)] =
        sqrt_ratio(phi, f.grid.node(i), f.grid.node(i - k)) *
        f.values[static_cast<std::size_t>(i - k)];
  }
  return out;
}

SampledFunction apply_adjoint(const Expr& phi, double t, const SampledFunction& f) {
  int k = aligned_steps(f.grid, t);
  SampledFunction out{f.grid,
                      std::vector<double>(static_cast<std::size_t>(f.grid.n_points), 0.0)};
  for (int i = 0; i + k < f.grid.n_points; ++i) {
    out.values[static_cast<std::size_t>(i)] =
        sqrt_ratio(phi, f.grid.node(i + k), f.grid.node(i)) *
        f.values[static_cast<std::size_t>(i + k)];
  }
  return out;
}

SampledFunction apply_st_power(const Expr& phi, double t, int k,
                               const SampledFunction& f) {
  if (k < 0) throw std::invalid_argument("power must be non-negative");
  SampledFunction out = f;
  for (int j = 0; j < k; ++j) out = apply_st(phi, t, out);
  return out;
}

double inner(const SampledFunction& f, const SampledFunction& g) {
  check_same_grid(f.grid, g.grid);
  const int n = f.grid.n_points;
  double sum = 0.5 * (f.values[0] * g.values[0] +
                      f.values[static_cast<std::size_t>(n - 1)] *
                          g.values[static_cast<std::size_t>(n - 1)]);
  for (int i = 1; i < n - 1; ++i) {
    sum += f.values[static_cast<std::size_t>(i)] * g.values[static_cast<std::size_t>(i)];
  }
  return sum * f.grid.spacing();
}

double norm(const SampledFunction& f) { return std::sqrt(inner(f, f)); }

SampledFunction multiplier_bn(const Expr& phi, int n, double t, const Grid& grid) {
  if (n < 0 || n > kMaxJetOrder) throw std::invalid_argument("order out of range");
  aligned_steps(grid, t);  // enforce alignment discipline
  SampledFunction m{grid, std::vector<double>(static_cast<std::size_t>(grid.n_points), 0.0)};
  for (int i = 0; i < grid.n_points; ++i) {
    double x = grid.node(i);
    double phi_x = eval(phi, x);
    if (!(phi_x > 0.0)) throw DomainError("symbol must be positive");
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 0; k <= n; ++k) {
      sum += sign * binomial(n, k) * eval(phi, x + k * t);
      sign = -sign;
    }
    m.values[static_cast<std::size_t>(i)] = sum / phi_x;
  }
  return m;
}

QuadFormPair quad_form_bn(const Expr& phi, int n, double t,
                          const SampledFunction& f) {
  if (n < 0 || n > kMaxJetOrder) throw std::invalid_argument("order out of range");
  QuadFormPair result;

  SampledFunction power = f;
  double sign = 1.0;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) power = apply_st(phi, t, power);
    double nk = norm(power);
    result.via_operators += sign * binomial(n, k) * nk * nk;
    sign = -sign;
  }

  SampledFunction m = multiplier_bn(phi, n, t, f.grid);
  SampledFunction mf = f;
  for (std::size_t i = 0; i < mf.values.size(); ++i) mf.values[i] *= m.values[i];
  result.via_multiplier = inner(mf, f);
  return result;
}

double norm_st(const Expr& phi, double t, const Grid& grid) {
  int k = aligned_steps(grid, t);
  double best = 0.0;
  for (int i = k; i < grid.n_points; ++i) {
    best = std::max(best, sqrt_ratio(phi, grid.node(i), grid.node(i - k)));
  }
  return best;
}

double semigroup_residual(const Expr& phi, double t, double s,
                          const SampledFunction& f) {
  SampledFunction lhs = apply_st(phi, t, apply_st(phi, s, f));
  SampledFunction rhs = apply_st(phi, t + s, f);
  double worst = 0.0;
  for (std::size_t i = 0; i < lhs.values.size(); ++i) {
    worst = std::max(worst, std::abs(lhs.values[i] - rhs.values[i]));
  }
  return worst;
}

void write_csv(const SampledFunction& f, std::ostream& out) {
  out << "x,value\n";
  char buf[80];
  for (int i = 0; i < f.grid.n_points; ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", f.grid.node(i),
                  f.values[static_cast<std::size_t>(i)]);
    out << buf;
  }
}

SampledFunction read_sampled_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InputError("empty CSV input");
  if (line.size() && line.back() == '\r') line.pop_back();
  if (line != "x,value") throw InputError("expected CSV header 'x,value'");
  std::vector<double> xs, vs;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.size() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::size_t comma = line.find(',');
    if (comma == std::string::npos) {
      throw InputError("CSV line " + std::to_string(line_no) + ": expected 'x,value'");
    }
    try {
      std::size_t used = 0;
      double x = std::stod(line.substr(0, comma), &used);
      double v = std::stod(line.substr(comma + 1), &used);
      xs.push_back(x);
      vs.push_back(v);
    } catch (const std::exception&) {
      throw InputError("CSV line " + std::to_string(line_no) + ": malformed number");
    }
  }
  if (xs.size() < 2) throw InputError("CSV needs at least 2 samples");
  double h = xs[1] - xs[0];
  if (!(h > 0.0)) throw InputError("CSV abscissae must be increasing");
  double x_max = xs.back();
  double tol = 1e-9 * (1.0 + std::abs(x_max));
  if (std::abs(xs[0]) > tol) throw InputError("CSV grid must start at 0");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double expected = x_max * static_cast<double>(i) / static_cast<double>(xs.size() - 1);
    if (std::abs(xs[i] - expected) > tol) {
      throw InputError("CSV grid is not uniform at row " + std::to_string(i + 2));
    }
  }
  SampledFunction f{make_grid(x_max, static_cast<int>(xs.size())), std::move(vs)};
  return f;
}

}  // namespace wts
