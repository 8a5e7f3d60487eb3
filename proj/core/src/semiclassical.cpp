#include "sceot/semiclassical.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "sceot/config.hpp"
#include "sceot/error.hpp"
#include "sceot/numeric.hpp"
#include "sceot/seidl.hpp"

namespace sceot {

namespace {

double raw_bump(double t) {
  const double a = 1.0 - t * t;
  return a > 0.0 ? std::exp(-1.0 / a) : 0.0;
}

double raw_bump_derivative(double t) {
  const double a = 1.0 - t * t;
  return a > 0.0 ? raw_bump(t) * (-2.0 * t / (a * a)) : 0.0;
}

// Signed representative of x - z in [-pi, pi].
double signed_gap(double x, double z) { return std::remainder(x - z, kTwoPi); }

// int_a^b rho~(x) f(x) dx for b - a < 2 pi. Gauss-Legendre on every linear
// piece of rho, each split into parts no longer than max_len.
template <class F>
double integrate_against_rho(const GridDensity& rho, F&& f, double a, double b, double max_len) {
  std::vector<double> cuts{a, b};
  const auto& nodes = rho.nodes();
  const long k0 = static_cast<long>(std::floor(a / kTwoPi));
  const long k1 = static_cast<long>(std::floor(b / kTwoPi));
  for (long k = k0; k <= k1; ++k) {
    for (double node : nodes) {
      const double t = node + kTwoPi * static_cast<double>(k);
      if (t > a && t < b) cuts.push_back(t);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  CompensatedSum acc;
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    const double lo = cuts[c];
    const double len = cuts[c + 1] - lo;
    if (len <= 0.0) continue;
    const std::size_t parts = static_cast<std::size_t>(std::ceil(len / max_len));
    const double h = len / static_cast<double>(parts);
    // Map each sub-piece into [0, 2pi) once so rho sees a single linear piece.
    const double shift = kTwoPi * std::floor((lo + 0.5 * len) / kTwoPi);
    for (std::size_t p = 0; p < parts; ++p) {
      const double u = lo + h * static_cast<double>(p);
      acc.add(boost::math::quadrature::gauss<double, 7>::integrate(
          [&](double x) { return rho(std::clamp(x - shift, 0.0, kTwoPi)) * f(x); }, u, u + h));
    }
  }
  return acc.value();
}

struct LocalKernel {
  std::vector<double> x;  // unwrapped positions
  std::vector<double> k;  // cell mass times overlap: kernel integrated over the cell
  double mass = 0.0;      // sum of k
};

LocalKernel local_kernel(const GammaEta& g, double y, std::size_t half_points) {
  LocalKernel lk;
  const double eta = g.eta();
  const double dx = 2.0 * eta / static_cast<double>(half_points);
  lk.x.resize(2 * half_points);
  lk.k.resize(2 * half_points);
  CompensatedSum s;
  double left = g.density().periodic_cdf(y - 2.0 * eta);
  for (std::size_t t = 0; t < 2 * half_points; ++t) {
    const double x = y - 2.0 * eta + (static_cast<double>(t) + 0.5) * dx;
    const double right = g.density().periodic_cdf(y - 2.0 * eta + static_cast<double>(t + 1) * dx);
    lk.x[t] = x;
    lk.k[t] = (right - left) * g.overlap(y, x);
    left = right;
    s.add(lk.k[t]);
  }
  lk.mass = s.value();
  return lk;
}

}  // namespace

Mollifier Mollifier::standard() {
  static const Mollifier chi = [] {
    boost::math::quadrature::tanh_sinh<double> q;
    Mollifier m;
    const double raw_l2 = q.integrate([](double t) { return raw_bump(t) * raw_bump(t); }, -1.0, 1.0);
    m.c_ = 1.0 / std::sqrt(raw_l2);
    const double c2 = m.c_ * m.c_;
    m.dirichlet_ = c2 * q.integrate([](double t) {
      const double d = raw_bump_derivative(t);
      return d * d;
    }, -1.0, 1.0);
    m.l2_ = q.integrate([&m](double t) { return m(t) * m(t); }, -1.0, 1.0);
    return m;
  }();
  return chi;
}

double Mollifier::operator()(double t) const { return c_ * raw_bump(t); }

double Mollifier::derivative(double t) const { return c_ * raw_bump_derivative(t); }

double support_separation(const DiscretePlan& plan) {
  if (plan.size() == 0) throw DomainError("support separation of an empty plan");
  double alpha = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < plan.size(); ++k) {
    const auto a = plan.atom(k);
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = i + 1; j < a.size(); ++j) alpha = std::min(alpha, periodic_distance(a[i], a[j]));
    }
  }
  return alpha;
}

GammaEta::GammaEta(DiscretePlan plan, GridDensity rho, double eta, GammaOptions options,
                   Mollifier chi)
    : plan_(std::move(plan)), rho_(std::move(rho)), eta_(eta), alpha_(0.0), chi_(chi) {
  if (plan_.n() < 2) throw DomainError("trial state needs n >= 2");
  alpha_ = support_separation(plan_);
  if (!(eta_ > 0.0) || !(eta_ < alpha_ / 4.0)) {
    throw RegimeError("eta = " + std::to_string(eta_) + " violates 0 < eta < alpha/4 with alpha = " +
                      std::to_string(alpha_));
  }
  if (options.z_per_eta < 4 || options.s_parts < 4) throw DomainError("quadrature too coarse");

  const std::size_t nz =
      static_cast<std::size_t>(std::ceil(kTwoPi / (eta_ / static_cast<double>(options.z_per_eta))));
  dz_ = kTwoPi / static_cast<double>(nz);
  z_.resize(nz);
  s_.resize(nz);
  p_.assign(nz, 0.0);
  for (std::size_t k = 0; k < nz; ++k) {
    const double z = dz_ * static_cast<double>(k);
    z_[k] = z;
    s_[k] = integrate_against_rho(
        rho_,
        [&](double x) {
          const double b = bump(x, z);
          return b * b;
        },
        z - eta_, z + eta_, 2.0 * eta_ / static_cast<double>(options.s_parts));
  }
  const long reach = static_cast<long>(std::ceil(eta_ / dz_)) + 1;
  const long lnz = static_cast<long>(nz);
  for (std::size_t a = 0; a < plan_.size(); ++a) {
    const double pa = plan_.weight(a);
    for (double y : plan_.atom(a)) {
      const long kc = std::lround(y / dz_);
      for (long off = -reach; off <= reach; ++off) {
        const std::size_t k = static_cast<std::size_t>(((kc + off) % lnz + lnz) % lnz);
        const double b = bump(y, z_[k]);
        p_[k] += pa * b * b;
      }
    }
  }
  for (double s : s_) {
    if (!(s > 0.0)) throw DomainError("smeared density vanishes; rho has a gap wider than eta");
  }
}

double GammaEta::bump(double x, double z) const {
  return chi_(signed_gap(x, z) / eta_) / std::sqrt(eta_);
}

double GammaEta::bump_derivative(double x, double z) const {
  return chi_.derivative(signed_gap(x, z) / eta_) / (eta_ * std::sqrt(eta_));
}

double GammaEta::smeared(double z) const {
  const double u = wrap_angle(z) / dz_;
  const std::size_t k = static_cast<std::size_t>(u) % z_.size();
  const double t = u - std::floor(u);
  return (1.0 - t) * s_[k] + t * s_[(k + 1) % z_.size()];
}

double GammaEta::kernel(double y, double x) const {
  const double b = overlap(y, x);
  return b == 0.0 ? 0.0 : rho_(wrap_angle(x)) * b;
}

double GammaEta::overlap(double y, double x) const {
  const double d = signed_gap(x, y);
  if (std::abs(d) >= 2.0 * eta_) return 0.0;
  const double xt = y + d;
  const double lo = std::max(y, xt) - eta_;
  const double hi = std::min(y, xt) + eta_;
  const long k0 = static_cast<long>(std::ceil(lo / dz_));
  const long k1 = static_cast<long>(std::floor(hi / dz_));
  const long nz = static_cast<long>(z_.size());
  double acc = 0.0;
  for (long k = k0; k <= k1; ++k) {
    const double z = dz_ * static_cast<double>(k);
    const double bx = chi_((xt - z) / eta_);
    const double by = chi_((y - z) / eta_);
    if (bx == 0.0 || by == 0.0) continue;
    const std::size_t idx = static_cast<std::size_t>((k % nz + nz) % nz);
    acc += bx * bx * by * by / s_[idx];
  }
  return acc * dz_ / (eta_ * eta_);
}

double GammaEta::operator()(std::span<const double> x) const {
  const int n = plan_.n();
  if (static_cast<int>(x.size()) != n) throw DomainError("tuple size differs from n");
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::vector<double> kmat(static_cast<std::size_t>(n * n));
  double fact = 1.0;
  for (int k = 2; k <= n; ++k) fact *= k;
  CompensatedSum total;
  for (std::size_t a = 0; a < plan_.size(); ++a) {
    const auto y = plan_.atom(a);
    // The permanent vanishes when some x_i is far from every coordinate.
    bool reachable = true;
    for (int i = 0; i < n && reachable; ++i) {
      bool near = false;
      for (double yj : y) near = near || periodic_distance(x[static_cast<std::size_t>(i)], yj) < 2.0 * eta_;
      reachable = near;
    }
    if (!reachable) continue;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        kmat[static_cast<std::size_t>(i * n + j)] = kernel(y[static_cast<std::size_t>(j)], x[static_cast<std::size_t>(i)]);
      }
    }
    std::iota(perm.begin(), perm.end(), 0);
    double perm_sum = 0.0;
    do {
      double prod = 1.0;
      for (int i = 0; i < n && prod != 0.0; ++i) prod *= kmat[static_cast<std::size_t>(i * n + perm[static_cast<std::size_t>(i)])];
      perm_sum += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    total.add(plan_.weight(a) * perm_sum / fact);
  }
  return total.value();
}

double GammaEta::marginal_formula(double x) const {
  const long kc = std::lround(wrap_angle(x) / dz_);
  const long reach = static_cast<long>(std::ceil(eta_ / dz_)) + 1;
  const long nz = static_cast<long>(z_.size());
  double acc = 0.0;
  for (long off = -reach; off <= reach; ++off) {
    const std::size_t k = static_cast<std::size_t>(((kc + off) % nz + nz) % nz);
    const double b = bump(x, z_[k]);
    acc += b * b * p_[k] / s_[k];
  }
  return rho_(wrap_angle(x)) * acc * dz_;
}

double GammaEta::orbital(double x, double z) const {
  return std::sqrt(rho_(x)) * bump(x, z);
}

double GammaEta::orbital_derivative(double x, double z) const {
  return rho_.sqrt_derivative(x) * bump(x, z) + std::sqrt(rho_(x)) * bump_derivative(x, z);
}

MarginalCheck marginal_identity_check(const GammaEta& gamma, std::size_t grid) {
  if (grid < 8) throw DomainError("marginal check needs at least 8 grid points");
  const int n = gamma.n();
  const double dx = kTwoPi / static_cast<double>(grid);
  const double eta = gamma.eta();
  MarginalCheck mc;
  mc.x.resize(grid);
  mc.target.resize(grid);
  for (std::size_t g = 0; g < grid; ++g) {
    mc.x[g] = dx * static_cast<double>(g);
    mc.target[g] = n * gamma.density()(mc.x[g]);
  }
  std::vector<double> rho_at(grid);
  for (std::size_t g = 0; g < grid; ++g) rho_at[g] = gamma.density()(mc.x[g]);
  std::vector<CompensatedSum> acc(grid);
  CompensatedSum mass;
  const long reach = static_cast<long>(std::ceil(2.0 * eta / dx)) + 1;
  const long lg = static_cast<long>(grid);
  struct Row {
    std::vector<std::size_t> idx;
    std::vector<double> k;
    double integral = 0.0;
  };
  std::vector<Row> rows(static_cast<std::size_t>(n));
  const DiscretePlan& plan = gamma.plan();
  for (std::size_t a = 0; a < plan.size(); ++a) {
    const auto y = plan.atom(a);
    for (int i = 0; i < n; ++i) {
      Row& r = rows[static_cast<std::size_t>(i)];
      r.idx.clear();
      r.k.clear();
      const double yi = y[static_cast<std::size_t>(i)];
      const long gc = std::lround(yi / dx);
      for (long off = -reach; off <= reach; ++off) {
        const std::size_t g = static_cast<std::size_t>(((gc + off) % lg + lg) % lg);
        const double b = gamma.overlap(yi, mc.x[g]);
        if (b == 0.0) continue;
        r.idx.push_back(g);
        r.k.push_back(rho_at[g] * b);
      }
      r.integral = integrate_against_rho(
          gamma.density(), [&](double x) { return gamma.overlap(yi, x); }, yi - 2.0 * eta,
          yi + 2.0 * eta, eta / 16.0);
    }
    const double pa = plan.weight(a);
    double prod_all = 1.0;
    for (const Row& r : rows) prod_all *= r.integral;
    mass.add(pa * prod_all);
    // n * (1/n!) * (n-1)! = 1: each coordinate contributes k_{y_i}(x) times
    // the integrals of the remaining kernels.
    for (int i = 0; i < n; ++i) {
      double others = 1.0;
      for (int l = 0; l < n; ++l) {
        if (l != i) others *= rows[static_cast<std::size_t>(l)].integral;
      }
      const Row& r = rows[static_cast<std::size_t>(i)];
      for (std::size_t t = 0; t < r.idx.size(); ++t) acc[r.idx[t]].add(pa * r.k[t] * others);
    }
  }
  mc.rho_gamma.resize(grid);
  for (std::size_t g = 0; g < grid; ++g) {
    mc.rho_gamma[g] = acc[g].value();
    mc.sup_error = std::max(mc.sup_error, std::abs(mc.rho_gamma[g] - mc.target[g]));
  }
  mc.total_mass = mass.value();
  return mc;
}

LocalizationCheck support_localization_check(const GammaEta& gamma, std::size_t samples,
                                             std::uint64_t seed) {
  const int n = gamma.n();
  const double eta = gamma.eta();
  const double band = gamma.alpha() - 4.0 * eta;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> pick_atom(0, gamma.plan().size() - 1);
  std::uniform_int_distribution<int> pick_coord(0, n - 1);
  LocalizationCheck lc;
  std::vector<double> x(static_cast<std::size_t>(n));
  for (std::size_t s = 0; s < samples; ++s) {
    // Anchor near a plan coordinate so the kernels are not trivially zero.
    const auto y = gamma.plan().atom(pick_atom(rng));
    const double anchor = y[static_cast<std::size_t>(pick_coord(rng))] + (2.0 * unit(rng) - 1.0) * 2.0 * eta;
    x[0] = wrap_angle(anchor);
    x[1] = wrap_angle(anchor + (2.0 * unit(rng) - 1.0) * band);
    for (std::size_t k = 2; k < x.size(); ++k) x[k] = kTwoPi * unit(rng);
    const double v = gamma(x);
    ++lc.samples;
    if (v != 0.0) ++lc.nonzero;
    lc.max_density = std::max(lc.max_density, std::abs(v));
  }
  return lc;
}

KineticEnergy kinetic_energy(const GammaEta& gamma, std::size_t grid) {
  if (grid < 8) throw DomainError("kinetic quadrature needs at least 8 grid points");
  KineticEnergy ke;
  const double eta = gamma.eta();
  ke.sqrt_term = gamma.density().sqrt_dirichlet_energy();
  ke.mollifier_term = gamma.mollifier().dirichlet() / (eta * eta);
  ke.rhs = gamma.n() * (ke.sqrt_term + ke.mollifier_term);

  const double dx = kTwoPi / static_cast<double>(grid);
  const auto& z = gamma.z_table();
  CompensatedSum lhs;
  for (std::size_t k = 0; k < z.size(); ++k) {
    const double weight = gamma.p_table()[k] / gamma.s_table()[k];
    const long g0 = static_cast<long>(std::ceil((z[k] - eta) / dx - 0.5));
    const long g1 = static_cast<long>(std::floor((z[k] + eta) / dx - 0.5));
    double e = 0.0;
    for (long g = g0; g <= g1; ++g) {
      const double x = wrap_angle((static_cast<double>(g) + 0.5) * dx);
      const double d = gamma.orbital_derivative(x, z[k]);
      e += d * d;
    }
    lhs.add(weight * e * dx * gamma.dz());
  }
  ke.lhs = lhs.value();
  ke.relative_mismatch = std::abs(ke.lhs - ke.rhs) / std::abs(ke.rhs);
  return ke;
}

PeriodicityCheck periodicity_check(const GammaEta& gamma, std::size_t samples) {
  PeriodicityCheck pc;
  const double eta = gamma.eta();
  for (std::size_t s = 0; s < samples; ++s) {
    const double z = wrap_angle(-eta + (static_cast<double>(s) + 0.5) * 2.0 * eta / static_cast<double>(samples));
    pc.value_mismatch = std::max(pc.value_mismatch, std::abs(gamma.orbital(0.0, z) - gamma.orbital(kTwoPi, z)));
    pc.derivative_mismatch = std::max(
        pc.derivative_mismatch, std::abs(gamma.orbital_derivative(0.0, z) - gamma.orbital_derivative(kTwoPi, z)));
  }
  return pc;
}

double interaction(const GammaEta& gamma, const CostModel& w) {
  constexpr std::size_t kHalf = 48;  // spacing eta / 24 over [y - 2 eta, y + 2 eta]
  const int n = gamma.n();
  const DiscretePlan& plan = gamma.plan();
  std::vector<LocalKernel> local(static_cast<std::size_t>(n));
  CompensatedSum total;
  for (std::size_t a = 0; a < plan.size(); ++a) {
    const auto y = plan.atom(a);
    for (int i = 0; i < n; ++i) {
      LocalKernel& lk = local[static_cast<std::size_t>(i)];
      lk = local_kernel(gamma, y[static_cast<std::size_t>(i)], kHalf);
      // Exact kernels integrate to one; normalising removes the quadrature
      // defect of the z-table from the pair integrals.
      for (auto& v : lk.k) v /= lk.mass;
      for (auto& v : lk.x) v = wrap_angle(v);
    }
    double pairs = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const LocalKernel& li = local[static_cast<std::size_t>(i)];
        const LocalKernel& lj = local[static_cast<std::size_t>(j)];
        double s = 0.0;
        for (std::size_t p = 0; p < li.x.size(); ++p) {
          if (li.k[p] == 0.0) continue;
          double row = 0.0;
          for (std::size_t q = 0; q < lj.x.size(); ++q) {
            if (lj.k[q] != 0.0) row += w(li.x[p], lj.x[q]) * lj.k[q];
          }
          s += li.k[p] * row;
        }
        pairs += 2.0 * s;
      }
    }
    total.add(plan.weight(a) * pairs);
  }
  return total.value();
}

BoundPoint bound_at(const GammaEta& gamma, const CostModel& w, double eps) {
  if (!(eps >= 0.0)) throw DomainError("eps must be non-negative");
  BoundPoint b;
  b.eps = eps;
  b.eta = gamma.eta();
  b.kinetic = gamma.n() * (gamma.density().sqrt_dirichlet_energy() +
                           gamma.mollifier().dirichlet() / (gamma.eta() * gamma.eta()));
  b.interaction = interaction(gamma, w);
  b.bound = eps * b.kinetic + b.interaction;
  return b;
}

UpperBoundCurve upper_bound_curve(const GridDensity& rho, const CostModel& w, int n,
                                  const std::vector<double>& eps, const CurveOptions& options) {
  if (eps.empty()) throw DomainError("empty eps list");
  for (double e : eps) {
    if (!(e > 0.0)) throw DomainError("eps values must be positive");
  }
  UpperBoundCurve curve;
  const DiscretePlan plan = seidl_plan_on_cells(rho, n, options.atoms);
  curve.alpha = support_separation(plan);
  if (!(curve.alpha > 0.0)) throw RegimeError("base plan has coincident coordinates (alpha = 0)");
  curve.f_ot = plan_cost(plan, w);
  curve.quantization_budget = 10.0 / static_cast<double>(options.atoms);

  const double eta0 = curve.alpha / 16.0;
  const GammaEta pilot(plan, rho, eta0, options.gamma);
  curve.pilot_constant = (interaction(pilot, w) - curve.f_ot) / (eta0 * eta0);
  const double eps_max = *std::max_element(eps.begin(), eps.end());
  const double cap = (curve.alpha / 8.0) / std::pow(eps_max, 0.25);
  const double e_chi = Mollifier::standard().dirichlet();
  curve.c = curve.pilot_constant > 0.0 ? std::min(std::pow(n * e_chi / curve.pilot_constant, 0.25), cap) : cap;

  for (double e : eps) {
    const double eta = std::min(curve.alpha / 8.0, curve.c * std::pow(e, 0.25));
    const GammaEta g(plan, rho, eta, options.gamma);
    curve.rows.push_back(bound_at(g, w, e));
  }

  std::vector<std::size_t> order(curve.rows.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t l, std::size_t r) { return curve.rows[l].eps > curve.rows[r].eps; });
  curve.decreasing = true;
  curve.above_floor = true;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const BoundPoint& p = curve.rows[order[k]];
    if (k > 0 && !(p.bound < curve.rows[order[k - 1]].bound)) curve.decreasing = false;
    if (p.bound < curve.f_ot - curve.quantization_budget) curve.above_floor = false;
  }

  if (curve.rows.size() >= 2) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    bool ok = true;
    for (const BoundPoint& p : curve.rows) {
      const double excess = p.bound - curve.f_ot;
      if (!(excess > 0.0)) ok = false;
      const double lx = std::log(p.eps);
      const double ly = std::log(std::max(excess, std::numeric_limits<double>::min()));
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
    }
    const double k = static_cast<double>(curve.rows.size());
    const double den = k * sxx - sx * sx;
    curve.slope = ok && den > 0.0 ? (k * sxy - sx * sy) / den : std::numeric_limits<double>::quiet_NaN();
  } else {
    curve.slope = std::numeric_limits<double>::quiet_NaN();
  }
  return curve;
}

}  // namespace sceot
