#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace fracsolve {

using cplx = std::complex<double>;
using SpMatD = Eigen::SparseMatrix<double>;

// Scalar field on the domain; the second coordinate is ignored in 1D.
using SpaceFn = std::function<double(double, double)>;
using SpaceGrad = std::function<std::array<double, 2>(double, double)>;

// Conforming piecewise-linear discretization of the Dirichlet Laplacian on
// the unit interval (dim 1) or unit square (dim 2, uniform criss triangles).
// Boundary vertices are eliminated; only interior vertices carry dofs.
struct FemSystem {
  int dim = 1;
  int level = 1;
  int cells_per_side = 2;  // 2^level
  double hx = 0.5;         // grid spacing
  double h = 0.5;          // mesh size: hx in 1D, hx*sqrt(2) in 2D
  int n_dofs = 1;

  SpMatD mass;
  SpMatD stiffness;

  // All grid vertices (including boundary) and their dof index (-1 on the
  // boundary). 1D vertices are 0..cells_per_side with vy empty.
  std::vector<double> vx, vy;
  std::vector<int> dof_of_vertex;
  std::vector<int> vertex_of_dof;
  // 2D triangulation as vertex triples; empty in 1D.
  std::vector<std::array<int, 3>> tris;
};

FemSystem build_system(int dim, int level);

// Solve (z*mass + stiffness) U = rhs and verify the residual is below
// 1e-12 * |rhs|. Every call increments the global solve counter.
Eigen::VectorXcd shifted_solve(const FemSystem& fs, cplx z, const Eigen::VectorXcd& rhs);

std::uint64_t solve_count();
void reset_solve_count();

// Load vector b_i = integral of f * phi_i (Gauss degree >= 4 per element).
Eigen::VectorXd load_vector(const FemSystem& fs, const SpaceFn& f);

// L2-orthogonal projection onto the mesh space: solves mass * c = load.
Eigen::VectorXd l2_project(const FemSystem& fs, const SpaceFn& f);

// Coefficient norms sqrt(c^T M c) and sqrt(c^T A c).
double l2_norm(const FemSystem& fs, const Eigen::VectorXd& coeffs);
double h1_seminorm(const FemSystem& fs, const Eigen::VectorXd& coeffs);

struct ErrorNorms {
  double l2 = 0.0;
  double h1 = 0.0;  // seminorm of the gradient error
};

// Quadrature errors (Gauss degree >= 6 per element) between the mesh field
// with the given coefficients and a smooth exact field.
ErrorNorms error_norms(const FemSystem& fs, const Eigen::VectorXd& coeffs,
                       const SpaceFn& exact, const SpaceGrad& exact_grad);

// Dof coordinates in dof order.
std::vector<std::array<double, 2>> dof_points(const FemSystem& fs);

}  // namespace fracsolve
