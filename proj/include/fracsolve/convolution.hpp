#pragma once

#include "fracsolve/contour.hpp"

#include <cstdint>
#include <utility>

namespace fracsolve {

// Space-time forcing f(x, y, t); y is ignored in 1D.
using TimeSpaceFn = std::function<double(double, double, double)>;

// Time partition for the convolution quadrature. The graded form refines
// dyadically toward t = 0: coarse times t_j = 2^{-(calM-j)}*T, j = 1..calM,
// and each block [t_j, t_{j+1}] is split into calN equal parts of width
// tau_j = t_j/calN. The first interval [0, t_1] carries no nodes. The
// uniform form is a single block over [0, T] including the first interval.
struct GeometricPartition {
  double T = 1.0;
  int calN = 1;  // subintervals per block (step count for uniform)
  int calM = 2;  // dyadic levels (1 for uniform)
  bool graded = true;
  std::vector<double> coarse_times;             // t_j, j = 1..calM
  std::vector<std::vector<double>> fine_times;  // per block: t_{j,l}, l = 0..calN
  std::vector<double> widths;                   // tau_j per block
};

GeometricPartition geometric_partition(double T, int calN, double gamma);
GeometricPartition uniform_partition(double T, int steps);

// Load vectors of f(. , T - t_{j,l-1/2}), one per subinterval, in block
// order then ascending l.
std::vector<Eigen::VectorXd> midpoint_loads(const FemSystem& fs,
                                            const GeometricPartition& part,
                                            const TimeSpaceFn& f, double T);

// Fully discrete non-homogeneous solution at t = T by the batched contour
// evaluation: per node n the partition collapses into a single vector
// H_n = sum_{j,l} [e_n(t_{j,l-1}) - e_n(t_{j,l})] * load_{j,l}, so the whole
// partition costs exactly 2N+1 shifted solves.
Eigen::VectorXd solve_nonhomogeneous(const FemSystem& fs, const FracParams& p,
                                     const ContourConfig& cfg,
                                     const GeometricPartition& part, const TimeSpaceFn& f,
                                     ContourSign sign = ContourSign::minus);

// Same sum evaluated interval by interval through interval_average_apply;
// algebraically identical, used as a consistency reference.
Eigen::VectorXd solve_nonhomogeneous_naive(const FemSystem& fs, const FracParams& p,
                                           const ContourConfig& cfg,
                                           const GeometricPartition& part,
                                           const TimeSpaceFn& f,
                                           ContourSign sign = ContourSign::minus);

// Initial data plus forcing by superposition.
Eigen::VectorXd solve_full(const FemSystem& fs, const FracParams& p, const ContourConfig& cfg,
                           const GeometricPartition& part, const Eigen::VectorXd& v_coeffs,
                           const TimeSpaceFn& f, ContourSign sign = ContourSign::minus);

// Forcing of the form amplitude(t) * profile(x, y) with the amplitude read
// from a (t, amplitude) table, linearly interpolated and clamped at the ends.
TimeSpaceFn tabulated_forcing(std::vector<std::pair<double, double>> table,
                              const SpaceFn& profile);

// Number of near-cancelling Mittag-Leffler differences observed (monitored,
// not fatal; a warning is logged once per solve).
std::uint64_t cancellation_warnings();
void reset_cancellation_warnings();

}  // namespace fracsolve
