#include "fracsolve/convolution.hpp"

#include "fracsolve/mittag_leffler.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iostream>
#include <limits>
#include <stdexcept>

namespace fracsolve {

namespace {

std::atomic<std::uint64_t> g_cancel_warnings{0};

int graded_levels(int calN, double gamma) {
  double q = 2.0 * std::log2(static_cast<double>(calN)) / gamma;
  int m = static_cast<int>(std::ceil(q - 1e-9));
  return std::max(m, 2);
}

void validate_partition(const GeometricPartition& part) {
  if (!(part.T > 0.0) || part.calN < 1 || part.calM < 1 || part.fine_times.empty())
    throw std::domain_error("partition: invalid");
}

// Flattened pair structure of a partition: distinct node times plus, per
// subinterval, the indices of its endpoints.
struct PairLayout {
  std::vector<double> times;
  std::vector<std::array<int, 2>> pairs;  // endpoint time indices, load order
};

PairLayout pair_layout(const GeometricPartition& part) {
  PairLayout lay;
  for (size_t b = 0; b < part.fine_times.size(); ++b) {
    const auto& ft = part.fine_times[b];
    // ft[0] of a later block duplicates the previous block's end time
    if (b == 0) lay.times.push_back(ft[0]);
    for (size_t l = 1; l < ft.size(); ++l) {
      lay.times.push_back(ft[l]);
      int ib = static_cast<int>(lay.times.size()) - 1;
      lay.pairs.push_back({ib - 1, ib});
    }
  }
  return lay;
}

}  // namespace

GeometricPartition geometric_partition(double T, int calN, double gamma) {
  if (!(T > 0.0)) throw std::domain_error("geometric_partition: T must be positive");
  if (calN < 1) throw std::domain_error("geometric_partition: calN must be positive");
  if (!(gamma > 0.0 && gamma <= 1.0))
    throw std::domain_error("geometric_partition: gamma out of range");
  GeometricPartition part;
  part.T = T;
  part.calN = calN;
  part.calM = graded_levels(calN, gamma);
  part.graded = true;
  part.coarse_times.resize(part.calM);
  for (int j = 1; j <= part.calM; ++j)
    part.coarse_times[j - 1] = std::ldexp(T, -(part.calM - j));
  part.fine_times.resize(part.calM - 1);
  part.widths.resize(part.calM - 1);
  for (int j = 1; j < part.calM; ++j) {
    double tj = part.coarse_times[j - 1];
    double tau = tj / calN;
    auto& ft = part.fine_times[j - 1];
    ft.resize(calN + 1);
    for (int l = 0; l < calN; ++l) ft[l] = tj + l * tau;
    ft[calN] = part.coarse_times[j];  // block continuity, exact
    part.widths[j - 1] = tau;
  }
  return part;
}

GeometricPartition uniform_partition(double T, int steps) {
  if (!(T > 0.0)) throw std::domain_error("uniform_partition: T must be positive");
  if (steps < 1) throw std::domain_error("uniform_partition: steps must be positive");
  GeometricPartition part;
  part.T = T;
  part.calN = steps;
  part.calM = 1;
  part.graded = false;
  part.coarse_times = {T};
  part.fine_times.resize(1);
  auto& ft = part.fine_times[0];
  ft.resize(steps + 1);
  for (int l = 0; l < steps; ++l) ft[l] = l * T / steps;
  ft[steps] = T;
  part.widths = {T / steps};
  return part;
}

std::vector<Eigen::VectorXd> midpoint_loads(const FemSystem& fs, const GeometricPartition& part,
                                            const TimeSpaceFn& f, double T) {
  validate_partition(part);
  std::vector<Eigen::VectorXd> loads;
  for (const auto& ft : part.fine_times)
    for (size_t l = 1; l < ft.size(); ++l) {
      double mid = 0.5 * (ft[l - 1] + ft[l]);
      double sample = T - mid;
      loads.push_back(load_vector(fs, [&](double x, double y) { return f(x, y, sample); }));
    }
  return loads;
}

Eigen::VectorXd solve_nonhomogeneous(const FemSystem& fs, const FracParams& p,
                                     const ContourConfig& cfg, const GeometricPartition& part,
                                     const TimeSpaceFn& f, ContourSign sign) {
  validate_params(p);
  validate_partition(part);
  std::vector<Eigen::VectorXd> loads = midpoint_loads(fs, part, f, part.T);
  PairLayout lay = pair_layout(part);
  if (lay.pairs.size() != loads.size())
    throw std::logic_error("solve_nonhomogeneous: partition bookkeeping mismatch");

  std::vector<double> tg(lay.times.size());
  for (size_t i = 0; i < lay.times.size(); ++i) tg[i] = std::pow(lay.times[i], p.gamma);

  std::atomic<bool> warned{false};
  constexpr double eps = std::numeric_limits<double>::epsilon();

  auto weight = [&](int, cplx z) { return std::pow(z, -p.beta); };
  auto rhs = [&](int, cplx z) -> Eigen::VectorXcd {
    cplx zb = std::pow(z, p.beta);
    std::vector<cplx> ev(tg.size());
    for (size_t i = 0; i < tg.size(); ++i) ev[i] = ml(p.gamma, 1.0, -tg[i] * zb);
    Eigen::VectorXcd H = Eigen::VectorXcd::Zero(fs.n_dofs);
    for (size_t q = 0; q < lay.pairs.size(); ++q) {
      cplx ea = ev[lay.pairs[q][0]];
      cplx eb = ev[lay.pairs[q][1]];
      cplx diff = ea - eb;
      double scale = std::max(std::abs(ea), std::abs(eb));
      if (scale > 0.0 && std::abs(diff) < 1e3 * eps * scale) {
        g_cancel_warnings.fetch_add(1, std::memory_order_relaxed);
        if (!warned.exchange(true))
          std::cerr << "warning: near-cancelling kernel difference at t="
                    << lay.times[lay.pairs[q][0]] << "\n";
      }
      H.noalias() += diff * loads[q].cast<cplx>();
    }
    return H;
  };
  return realify(contour_sum(fs, p.beta, cfg, weight, rhs, sign));
}

Eigen::VectorXd solve_nonhomogeneous_naive(const FemSystem& fs, const FracParams& p,
                                           const ContourConfig& cfg,
                                           const GeometricPartition& part, const TimeSpaceFn& f,
                                           ContourSign sign) {
  validate_params(p);
  validate_partition(part);
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(fs.n_dofs);
  for (const auto& ft : part.fine_times)
    for (size_t l = 1; l < ft.size(); ++l) {
      double t0 = ft[l - 1];
      double tau = ft[l] - ft[l - 1];
      double sample = part.T - 0.5 * (ft[l - 1] + ft[l]);
      Eigen::VectorXd g =
          l2_project(fs, [&](double x, double y) { return f(x, y, sample); });
      if (t0 == 0.0) {
        // leading subinterval of a uniform partition: same weights with
        // e_{gamma,1}(0) = 1, evaluated through the generic kernel
        Eigen::VectorXcd mg = (fs.mass * g).cast<cplx>();
        double tb = std::pow(tau, p.gamma);
        auto w = [&](int, cplx z) {
          cplx zb = std::pow(z, p.beta);
          return std::pow(z, -p.beta) * (1.0 - ml(p.gamma, 1.0, -tb * zb));
        };
        auto r = [&](int, cplx) { return mg; };
        acc += realify(contour_sum(fs, p.beta, cfg, w, r, sign));
      } else {
        acc += interval_average_apply(fs, p, cfg, t0, tau, g, sign);
      }
    }
  return acc;
}

Eigen::VectorXd solve_full(const FemSystem& fs, const FracParams& p, const ContourConfig& cfg,
                           const GeometricPartition& part, const Eigen::VectorXd& v_coeffs,
                           const TimeSpaceFn& f, ContourSign sign) {
  return propagate_homogeneous(fs, p, cfg, part.T, v_coeffs, sign) +
         solve_nonhomogeneous(fs, p, cfg, part, f, sign);
}

TimeSpaceFn tabulated_forcing(std::vector<std::pair<double, double>> table,
                              const SpaceFn& profile) {
  if (table.empty()) throw std::domain_error("tabulated_forcing: empty table");
  std::sort(table.begin(), table.end());
  return [table = std::move(table), profile](double x, double y, double t) {
    double amp;
    if (t <= table.front().first) {
      amp = table.front().second;
    } else if (t >= table.back().first) {
      amp = table.back().second;
    } else {
      auto it = std::upper_bound(table.begin(), table.end(), std::make_pair(t, 0.0),
                                 [](const auto& a, const auto& b) { return a.first < b.first; });
      auto lo = std::prev(it);
      double w = (t - lo->first) / (it->first - lo->first);
      amp = (1.0 - w) * lo->second + w * it->second;
    }
    return amp * profile(x, y);
  };
}

std::uint64_t cancellation_warnings() { return g_cancel_warnings.load(); }
void reset_cancellation_warnings() { g_cancel_warnings.store(0); }

}  // namespace fracsolve
