#include "sceot/kantorovich.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "sceot/config.hpp"
#include "sceot/discrete.hpp"
#include "sceot/error.hpp"
#include "sceot/numeric.hpp"

namespace sceot {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Pair matrix 2 w(x_i, x_j) so that c_n is the plain sum over pairs i < j.
struct GridCost {
  std::size_t G = 0;
  std::vector<double> pair;
  bool finite = true;

  double operator()(std::size_t i, std::size_t j) const { return pair[i * G + j]; }
};

GridCost grid_cost(const CostModel& w, const std::vector<double>& grid) {
  GridCost gc;
  gc.G = grid.size();
  gc.pair.resize(gc.G * gc.G);
  for (std::size_t i = 0; i < gc.G; ++i) {
    for (std::size_t j = i; j < gc.G; ++j) {
      const double v = 2.0 * w(grid[i], grid[j]);
      if (!std::isfinite(v)) gc.finite = false;
      gc.pair[i * gc.G + j] = v;
      gc.pair[j * gc.G + i] = v;
    }
  }
  return gc;
}

void check_n(int n) {
  if (n < 2) throw DomainError("need n >= 2");
}

void check_potential(const Potential& v) {
  if (v.grid.empty() || v.grid.size() != v.values.size()) {
    throw DomainError("potential grid and values differ in size");
  }
  for (double x : v.values) {
    if (!std::isfinite(x)) throw DomainError("potential values must be finite");
  }
}

// Depth-first minimisation over (n-1)-tuples y in lexicographic order of
// sum_j a[y_j] + sum_{j<k} P(y_j, y_k); strict comparison keeps the first
// minimiser.
class TupleMin {
 public:
  TupleMin(const GridCost& pc, int depth) : pc_(pc), depth_(depth), stack_(static_cast<std::size_t>(depth)) {}

  double run(const std::vector<double>& a) {
    a_ = &a;
    best_ = kInf;
    recurse(0, 0.0);
    return best_;
  }

 private:
  void recurse(int d, double partial) {
    const std::size_t G = pc_.G;
    if (d + 1 == depth_) {
      for (std::size_t y = 0; y < G; ++y) {
        double val = partial + (*a_)[y];
        for (int k = 0; k < d; ++k) val += pc_(stack_[static_cast<std::size_t>(k)], y);
        if (val < best_) best_ = val;
      }
      return;
    }
    for (std::size_t y = 0; y < G; ++y) {
      double val = partial + (*a_)[y];
      for (int k = 0; k < d; ++k) val += pc_(stack_[static_cast<std::size_t>(k)], y);
      stack_[static_cast<std::size_t>(d)] = y;
      recurse(d + 1, val);
    }
  }

  const GridCost& pc_;
  int depth_;
  std::vector<std::size_t> stack_;
  const std::vector<double>* a_ = nullptr;
  double best_ = kInf;
};

// Same traversal as TupleMin with the minimum replaced by the soft minimum
// -eps log sum exp(-val / eps), accumulated online.
class TupleSoftMin {
 public:
  TupleSoftMin(const GridCost& pc, int depth, double eps)
      : pc_(pc), depth_(depth), eps_(eps), stack_(static_cast<std::size_t>(depth)) {}

  double run(const std::vector<double>& a) {
    a_ = &a;
    min_ = kInf;
    sum_ = 0.0;
    recurse(0, 0.0);
    return min_ - eps_ * std::log(sum_);
  }

 private:
  void add(double val) {
    if (val < min_) {
      sum_ = sum_ * std::exp((val - min_) / eps_) + 1.0;
      min_ = val;
    } else {
      sum_ += std::exp((min_ - val) / eps_);
    }
  }

  void recurse(int d, double partial) {
    const std::size_t G = pc_.G;
    for (std::size_t y = 0; y < G; ++y) {
      double val = partial + (*a_)[y];
      for (int k = 0; k < d; ++k) val += pc_(stack_[static_cast<std::size_t>(k)], y);
      if (d + 1 == depth_) {
        add(val);
      } else {
        stack_[static_cast<std::size_t>(d)] = y;
        recurse(d + 1, val);
      }
    }
  }

  const GridCost& pc_;
  int depth_;
  double eps_;
  std::vector<std::size_t> stack_;
  const std::vector<double>* a_ = nullptr;
  double min_ = kInf;
  double sum_ = 0.0;
};

std::vector<double> transform(const GridCost& pc, const std::vector<double>& v, int n) {
  const std::size_t G = pc.G;
  std::vector<double> out(G);
  std::vector<double> a(G);
  TupleMin tm(pc, n - 1);
  for (std::size_t i = 0; i < G; ++i) {
    for (std::size_t y = 0; y < G; ++y) a[y] = pc(i, y) - v[y];
    out[i] = tm.run(a);
  }
  return out;
}

void guard_transform(std::size_t G, int n) {
  if (std::pow(static_cast<double>(G), n - 1) > Tolerances::ctransform_size_guard) {
    throw SizeError("c-transform guard G^(n-1) <= 1e6 exceeded");
  }
}

double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double r = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) r = std::max(r, std::abs(a[i] - b[i]));
  return r;
}

}  // namespace

Potential Potential::constant(std::size_t grid_size, double value) {
  return Potential{periodic_grid(grid_size), std::vector<double>(grid_size, value), Normalization::raw};
}

std::vector<double> periodic_grid(std::size_t grid_size) {
  if (grid_size < 1) throw DomainError("grid needs at least one point");
  std::vector<double> g(grid_size);
  for (std::size_t i = 0; i < grid_size; ++i) {
    g[i] = kTwoPi * static_cast<double>(i) / static_cast<double>(grid_size);
  }
  return g;
}

Potential c_transform(const Potential& v, const CostModel& w, int n) {
  check_n(n);
  check_potential(v);
  guard_transform(v.size(), n);
  const GridCost pc = grid_cost(w, v.grid);
  if (!pc.finite) throw PreconditionError("c-transform needs a bounded cost; truncate first");
  return Potential{v.grid, transform(pc, v.values, n), Normalization::raw};
}

IterationResult averaged_iteration(const Potential& v0, const CostModel& w, int n,
                                   std::size_t max_iters, double tol) {
  check_n(n);
  check_potential(v0);
  guard_transform(v0.size(), n);
  const GridCost pc = grid_cost(w, v0.grid);
  if (!pc.finite) throw PreconditionError("averaged iteration needs a bounded cost; truncate first");

  IterationResult res;
  res.potential = v0;
  res.potential.tag = Normalization::raw;
  std::vector<double>& v = res.potential.values;
  const double dn = static_cast<double>(n);

  // v is grid-feasible iff v <= v_c, so the margin is min(v_c - v).
  std::vector<double> vc = transform(pc, v, n);
  double margin = kInf;
  for (std::size_t i = 0; i < v.size(); ++i) margin = std::min(margin, vc[i] - v[i]);
  if (margin < 0.0) {
    res.report.initial_shift = -margin / dn;
    for (double& x : v) x -= res.report.initial_shift;
    vc = transform(pc, v, n);
  }

  for (;;) {
    const double r = sup_diff(v, vc);
    res.report.residual = r;
    res.report.residual_history.push_back(r);
    if (r <= tol) {
      res.report.converged = true;
      break;
    }
    if (res.report.iterations >= max_iters) break;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = ((dn - 1.0) * v[i] + vc[i]) / dn;
    ++res.report.iterations;
    vc = transform(pc, v, n);
  }

  margin = kInf;
  for (std::size_t i = 0; i < v.size(); ++i) margin = std::min(margin, vc[i] - v[i]);
  if (margin < -tol) {
    // min(v, v_c) <= v_c <= (min(v, v_c))_c, hence feasible.
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::min(v[i], vc[i]);
    res.report.repaired = true;
    res.report.residual = sup_diff(v, transform(pc, v, n));
  }
  return res;
}

MarginReport feasibility_margin(const Potential& v, const CostModel& w, int n, std::uint64_t seed) {
  check_n(n);
  check_potential(v);
  const std::size_t G = v.size();
  const GridCost pc = grid_cost(w, v.grid);
  MarginReport rep;
  rep.margin = kInf;
  rep.argmin.assign(static_cast<std::size_t>(n), 0);
  std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);

  auto eval = [&]() {
    double c = 0.0;
    for (int a = 0; a < n; ++a) {
      c -= v.values[idx[static_cast<std::size_t>(a)]];
      for (int b = a + 1; b < n; ++b) c += pc(idx[static_cast<std::size_t>(a)], idx[static_cast<std::size_t>(b)]);
    }
    ++rep.tuples;
    if (c < rep.margin) {
      rep.margin = c;
      for (int a = 0; a < n; ++a) rep.argmin[static_cast<std::size_t>(a)] = static_cast<int>(idx[static_cast<std::size_t>(a)]);
    }
  };

  if (std::pow(static_cast<double>(G), n) <= Tolerances::exact_margin_guard) {
    for (;;) {
      eval();
      std::size_t k = idx.size();
      while (k-- > 0) {
        if (++idx[k] < G) break;
        idx[k] = 0;
      }
      if (k == static_cast<std::size_t>(-1)) break;
    }
  } else {
    rep.sampled = true;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, G - 1);
    for (std::size_t s = 0; s < Tolerances::margin_samples; ++s) {
      for (auto& k : idx) k = pick(rng);
      eval();
    }
  }
  return rep;
}

std::vector<double> quadrature_weights(const GridDensity& rho, std::size_t grid_size) {
  const std::vector<double> g = periodic_grid(grid_size);
  const double half = std::numbers::pi / static_cast<double>(grid_size);
  std::vector<double> q(grid_size);
  for (std::size_t i = 0; i < grid_size; ++i) q[i] = rho.arc_mass(g[i] - half, g[i] + half);
  return q;
}

double pairing(const GridDensity& rho, const Potential& v, int n) {
  check_potential(v);
  const std::vector<double> q = quadrature_weights(rho, v.size());
  CompensatedSum s;
  for (std::size_t i = 0; i < q.size(); ++i) s.add(q[i] * v.values[i]);
  return static_cast<double>(n) * s.value();
}

double duality_gap(const GridDensity& rho, const Potential& v, double transport_value, int n,
                   const CostModel& w, double tol) {
  const MarginReport m = feasibility_margin(v, w, n);
  if (m.margin < -tol) {
    throw PreconditionError("duality gap needs a grid-feasible potential (margin " +
                            std::to_string(m.margin) + ")");
  }
  return transport_value - pairing(rho, v, n);
}

Potential normalize(const Potential& v, const GridDensity& rho, double transport_value, int n) {
  const double shift = (transport_value - pairing(rho, v, n)) / static_cast<double>(n);
  Potential out = v;
  for (double& x : out.values) x += shift;
  out.tag = Normalization::normalized;
  return out;
}

OscillationCheck oscillation_bound_check(const Potential& v, double h, int n, double tol) {
  check_n(n);
  check_potential(v);
  const auto [lo, hi] = std::minmax_element(v.values.begin(), v.values.end());
  const double dn = static_cast<double>(n);
  OscillationCheck c;
  c.oscillation = *hi - *lo;
  c.bound = h;
  c.box_lower = -h * (dn - 1.0) / dn;
  c.box_upper = h / dn;
  c.reference = v.tag == Normalization::normalized
                    ? 0.0
                    : 0.5 * (*hi + *lo) - 0.5 * (c.box_lower + c.box_upper);
  c.oscillation_ok = c.oscillation <= h + tol;
  c.box_ok = *lo - c.reference >= c.box_lower - tol && *hi - c.reference <= c.box_upper + tol;
  return c;
}

UntruncatedCertificate untruncate_certificate(const Potential& v, const CostModel& w_full,
                                              const CostModel& w_trunc, const GridDensity& rho,
                                              int n, double transport_value, double gap_tol,
                                              double tol) {
  UntruncatedCertificate u;
  u.truncated_margin = feasibility_margin(v, w_trunc, n).margin;
  u.full_margin = feasibility_margin(v, w_full, n).margin;
  u.gap_tol = gap_tol;
  u.gap = transport_value - pairing(rho, v, n);
  u.passed = u.truncated_margin >= -tol && u.full_margin >= -tol &&
             u.full_margin >= u.truncated_margin - Tolerances::integral &&
             std::abs(u.gap) <= gap_tol;
  return u;
}

Potential interpolate_periodic(const std::vector<double>& atoms, const std::vector<double>& values,
                               std::size_t grid_size) {
  if (atoms.empty() || atoms.size() != values.size()) {
    throw DomainError("interpolation needs matching non-empty atoms and values");
  }
  if (!std::is_sorted(atoms.begin(), atoms.end())) throw DomainError("atoms must be sorted");
  Potential p = Potential::constant(grid_size, 0.0);
  const std::size_t m = atoms.size();
  for (std::size_t i = 0; i < grid_size; ++i) {
    const double x = p.grid[i];
    if (m == 1) {
      p.values[i] = values[0];
      continue;
    }
    const auto it = std::upper_bound(atoms.begin(), atoms.end(), x);
    const std::size_t r = static_cast<std::size_t>(it - atoms.begin());
    // Left neighbour l and right neighbour r, wrapping around 2 pi.
    const std::size_t l = r == 0 ? m - 1 : r - 1;
    const std::size_t rr = r == m ? 0 : r;
    double xl = atoms[l];
    double xr = atoms[rr];
    if (r == 0) xl -= kTwoPi;
    if (r == m) xr += kTwoPi;
    const double t = (x - xl) / (xr - xl);
    p.values[i] = (1.0 - t) * values[l] + t * values[rr];
  }
  return p;
}

Potential ctransform_extension(const LPSolution& sol, const CostModel& w, std::size_t grid_size) {
  const std::vector<double> va = symmetrized_duals(sol);
  const std::vector<double>& atoms = sol.marginal.atoms;
  const int n = sol.n;
  const std::size_t m = atoms.size();
  if (std::pow(static_cast<double>(m), n - 1) > Tolerances::ctransform_size_guard) {
    throw SizeError("c-transform guard m^(n-1) <= 1e6 exceeded");
  }
  Potential p = Potential::constant(grid_size, 0.0);
  std::vector<double> pair(m * m);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) pair[a * m + b] = 2.0 * w(atoms[a], atoms[b]);
  }
  std::vector<std::size_t> idx(static_cast<std::size_t>(n - 1), 0);
  for (std::size_t i = 0; i < grid_size; ++i) {
    const double x = p.grid[i];
    std::vector<double> a(m);
    for (std::size_t j = 0; j < m; ++j) a[j] = 2.0 * w(x, atoms[j]) - va[j];
    double best = kInf;
    std::fill(idx.begin(), idx.end(), 0);
    for (;;) {
      double val = 0.0;
      for (std::size_t k = 0; k < idx.size(); ++k) {
        val += a[idx[k]];
        for (std::size_t l = k + 1; l < idx.size(); ++l) val += pair[idx[k] * m + idx[l]];
      }
      if (val < best) best = val;
      std::size_t k = idx.size();
      while (k-- > 0) {
        if (++idx[k] < m) break;
        idx[k] = 0;
      }
      if (k == static_cast<std::size_t>(-1)) break;
    }
    if (!std::isfinite(best)) throw PreconditionError("c-transform extension is not finite");
    p.values[i] = best;
  }
  return p;
}

Potential entropic_potential(const GridDensity& rho, const CostModel& w, int n,
                             std::size_t grid_size, const EntropicOptions& options) {
  check_n(n);
  if (std::pow(static_cast<double>(grid_size), n) > Tolerances::entropic_size_guard) {
    throw SizeError("entropic guard G^n <= 2e6 exceeded");
  }
  const std::vector<double> grid = periodic_grid(grid_size);
  const GridCost pc = grid_cost(w, grid);
  if (!pc.finite) throw PreconditionError("entropic potential needs a finite cost on the grid");
  const std::vector<double> mu = quadrature_weights(rho, grid_size);

  double mean = 0.0;
  for (double c : pc.pair) mean += c;
  mean /= static_cast<double>(pc.pair.size());
  double var = 0.0;
  for (double c : pc.pair) var += (c - mean) * (c - mean);
  const double scale = std::sqrt(var / static_cast<double>(pc.pair.size()));
  const double eps_min = scale > 0.0 ? options.eps_min_ratio * scale : 0.0;

  std::vector<double> v(grid_size, 0.0);
  std::vector<double> a(grid_size);
  const double nn = static_cast<double>(n);
  for (double eps = scale; eps_min > 0.0; eps = std::max(eps / 2.0, eps_min)) {
    TupleSoftMin sm(pc, n - 1, eps);
    for (std::size_t sweep = 0; sweep < options.sweeps_per_stage; ++sweep) {
      double change = 0.0;
      std::vector<double> t(grid_size);
      for (std::size_t i = 0; i < grid_size; ++i) {
        for (std::size_t y = 0; y < grid_size; ++y) {
          // Zero-mass cells drop out of the soft minimum.
          a[y] = mu[y] > 0.0 ? pc(i, y) - v[y] - eps * std::log(mu[y]) : kInf;
        }
        t[i] = sm.run(a);
      }
      for (std::size_t i = 0; i < grid_size; ++i) {
        const double next = ((nn - 1.0) * v[i] + t[i]) / nn;
        change = std::max(change, std::abs(next - v[i]));
        v[i] = next;
      }
      if (change <= options.tol) break;
    }
    if (eps <= eps_min) break;
  }
  return Potential{grid, v, Normalization::raw};
}

KantorovichCertificate certify_potential(const GridDensity& rho, const CostModel& w_trunc, int n,
                                         const CertifyOptions& options, const CostModel* w_full) {
  check_n(n);
  KantorovichCertificate cert;
  const DiscreteMarginal marginal = quantize(rho, options.atoms);
  const LPSolution sol = solve_mmot(marginal, n, w_trunc);
  cert.lp_value = sol.value;

  const bool entropic = options.start == CertifyOptions::Start::entropic &&
                        std::pow(static_cast<double>(options.grid), n) <= Tolerances::entropic_size_guard;
  cert.entropic_start = entropic;
  const Potential v0 = entropic
                           ? entropic_potential(rho, w_trunc, n, options.grid)
                           : interpolate_periodic(marginal.atoms, symmetrized_duals(sol), options.grid);
  IterationResult it = averaged_iteration(v0, w_trunc, n, options.max_iters, options.tol);
  cert.potential = std::move(it.potential);
  cert.convergence = std::move(it.report);
  cert.margin = feasibility_margin(cert.potential, w_trunc, n);
  cert.gap = cert.lp_value - pairing(rho, cert.potential, n);
  cert.gap_tol = Tolerances::gap_tol(options.grid, static_cast<std::size_t>(options.atoms));
  cert.normalized = normalize(cert.potential, rho, cert.lp_value, n);

  bool ok = cert.convergence.converged && cert.margin.margin >= -options.tol &&
            std::abs(cert.gap) <= cert.gap_tol;
  cert.h = w_trunc.truncation();
  if (cert.h) {
    cert.oscillation = oscillation_bound_check(cert.potential, *cert.h, n, options.tol);
    ok = ok && cert.oscillation->passed();
  }
  if (w_full != nullptr) {
    const LPSolution full = solve_mmot(marginal, n, *w_full);
    cert.full_lp_value = full.value;
    cert.untruncated = untruncate_certificate(cert.potential, *w_full, w_trunc, rho, n, full.value,
                                              cert.gap_tol, options.tol);
    ok = ok && cert.untruncated->passed &&
         std::abs(full.value - cert.lp_value) <= Tolerances::lp_certificate;
  }
  cert.passed = ok;
  return cert;
}

}  // namespace sceot
