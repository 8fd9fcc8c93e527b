#include "fracsolve/fem.hpp"

#include <Eigen/SparseLU>

#include <atomic>
#include <cmath>
#include <stdexcept>

namespace fracsolve {

namespace {

std::atomic<std::uint64_t> g_solve_count{0};

// Gauss-Legendre on [-1,1].
constexpr double kG3x[3] = {-0.7745966692414834, 0.0, 0.7745966692414834};
constexpr double kG3w[3] = {0.5555555555555556, 0.8888888888888888, 0.5555555555555556};
constexpr double kG4x[4] = {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
                            0.8611363115940526};
constexpr double kG4w[4] = {0.3478548451374538, 0.6521451548625461, 0.6521451548625461,
                            0.3478548451374538};

struct TriRule {
  int n;
  const double (*bary)[3];
  const double* w;  // sums to 1, scale by triangle area
};

constexpr double kTri6b[6][3] = {
    {0.108103018168070, 0.445948490915965, 0.445948490915965},
    {0.445948490915965, 0.108103018168070, 0.445948490915965},
    {0.445948490915965, 0.445948490915965, 0.108103018168070},
    {0.816847572980458, 0.091576213509771, 0.091576213509771},
    {0.091576213509771, 0.816847572980458, 0.091576213509771},
    {0.091576213509771, 0.091576213509771, 0.816847572980458}};
constexpr double kTri6w[6] = {0.223381589678011, 0.223381589678011, 0.223381589678011,
                              0.109951743655322, 0.109951743655322, 0.109951743655322};

constexpr double kTri12b[12][3] = {
    {0.873821971016996, 0.063089014491502, 0.063089014491502},
    {0.063089014491502, 0.873821971016996, 0.063089014491502},
    {0.063089014491502, 0.063089014491502, 0.873821971016996},
    {0.501426509658179, 0.249286745170910, 0.249286745170910},
    {0.249286745170910, 0.501426509658179, 0.249286745170910},
    {0.249286745170910, 0.249286745170910, 0.501426509658179},
    {0.636502499121399, 0.310352451033785, 0.053145049844816},
    {0.636502499121399, 0.053145049844816, 0.310352451033785},
    {0.310352451033785, 0.636502499121399, 0.053145049844816},
    {0.310352451033785, 0.053145049844816, 0.636502499121399},
    {0.053145049844816, 0.636502499121399, 0.310352451033785},
    {0.053145049844816, 0.310352451033785, 0.636502499121399}};
constexpr double kTri12w[12] = {0.050844906370207, 0.050844906370207, 0.050844906370207,
                                0.116786275726379, 0.116786275726379, 0.116786275726379,
                                0.082851075618374, 0.082851075618374, 0.082851075618374,
                                0.082851075618374, 0.082851075618374, 0.082851075618374};

constexpr TriRule kTriLoad{6, kTri6b, kTri6w};
constexpr TriRule kTriError{12, kTri12b, kTri12w};

FemSystem build_1d(int level) {
  FemSystem fs;
  fs.dim = 1;
  fs.level = level;
  fs.cells_per_side = 1 << level;
  fs.hx = 1.0 / fs.cells_per_side;
  fs.h = fs.hx;
  int m = fs.cells_per_side;
  fs.n_dofs = m - 1;
  fs.vx.resize(m + 1);
  fs.dof_of_vertex.assign(m + 1, -1);
  for (int i = 0; i <= m; ++i) fs.vx[i] = i * fs.hx;
  fs.vertex_of_dof.resize(fs.n_dofs);
  for (int i = 1; i < m; ++i) {
    fs.dof_of_vertex[i] = i - 1;
    fs.vertex_of_dof[i - 1] = i;
  }

  std::vector<Eigen::Triplet<double>> tm, ta;
  double hx = fs.hx;
  for (int i = 0; i < fs.n_dofs; ++i) {
    tm.emplace_back(i, i, 4.0 * hx / 6.0);
    ta.emplace_back(i, i, 2.0 / hx);
    if (i + 1 < fs.n_dofs) {
      tm.emplace_back(i, i + 1, hx / 6.0);
      tm.emplace_back(i + 1, i, hx / 6.0);
      ta.emplace_back(i, i + 1, -1.0 / hx);
      ta.emplace_back(i + 1, i, -1.0 / hx);
    }
  }
  fs.mass.resize(fs.n_dofs, fs.n_dofs);
  fs.stiffness.resize(fs.n_dofs, fs.n_dofs);
  fs.mass.setFromTriplets(tm.begin(), tm.end());
  fs.stiffness.setFromTriplets(ta.begin(), ta.end());
  return fs;
}

FemSystem build_2d(int level) {
  FemSystem fs;
  fs.dim = 2;
  fs.level = level;
  fs.cells_per_side = 1 << level;
  int m = fs.cells_per_side;
  fs.hx = 1.0 / m;
  fs.h = fs.hx * std::sqrt(2.0);
  int nv = (m + 1) * (m + 1);
  fs.vx.resize(nv);
  fs.vy.resize(nv);
  fs.dof_of_vertex.assign(nv, -1);
  auto vid = [m](int ix, int iy) { return ix + iy * (m + 1); };
  for (int iy = 0; iy <= m; ++iy)
    for (int ix = 0; ix <= m; ++ix) {
      fs.vx[vid(ix, iy)] = ix * fs.hx;
      fs.vy[vid(ix, iy)] = iy * fs.hx;
    }
  fs.n_dofs = (m - 1) * (m - 1);
  fs.vertex_of_dof.resize(fs.n_dofs);
  int d = 0;
  for (int iy = 1; iy < m; ++iy)
    for (int ix = 1; ix < m; ++ix) {
      fs.dof_of_vertex[vid(ix, iy)] = d;
      fs.vertex_of_dof[d] = vid(ix, iy);
      ++d;
    }

  // Each cell is cut along its south-west to north-east diagonal.
  fs.tris.reserve(2 * m * m);
  for (int iy = 0; iy < m; ++iy)
    for (int ix = 0; ix < m; ++ix) {
      int v00 = vid(ix, iy), v10 = vid(ix + 1, iy);
      int v01 = vid(ix, iy + 1), v11 = vid(ix + 1, iy + 1);
      fs.tris.push_back({v00, v10, v11});
      fs.tris.push_back({v00, v11, v01});
    }

  std::vector<Eigen::Triplet<double>> tm, ta;
  tm.reserve(fs.tris.size() * 9);
  ta.reserve(fs.tris.size() * 9);
  for (const auto& t : fs.tris) {
    double x1 = fs.vx[t[0]], y1 = fs.vy[t[0]];
    double x2 = fs.vx[t[1]], y2 = fs.vy[t[1]];
    double x3 = fs.vx[t[2]], y3 = fs.vy[t[2]];
    double det = (x2 - x1) * (y3 - y1) - (x3 - x1) * (y2 - y1);
    double area = 0.5 * std::fabs(det);
    double gx[3] = {(y2 - y3) / det, (y3 - y1) / det, (y1 - y2) / det};
    double gy[3] = {(x3 - x2) / det, (x1 - x3) / det, (x2 - x1) / det};
    for (int a = 0; a < 3; ++a) {
      int ia = fs.dof_of_vertex[t[a]];
      if (ia < 0) continue;
      for (int b = 0; b < 3; ++b) {
        int ib = fs.dof_of_vertex[t[b]];
        if (ib < 0) continue;
        ta.emplace_back(ia, ib, area * (gx[a] * gx[b] + gy[a] * gy[b]));
        tm.emplace_back(ia, ib, area / 12.0 * (a == b ? 2.0 : 1.0));
      }
    }
  }
  fs.mass.resize(fs.n_dofs, fs.n_dofs);
  fs.stiffness.resize(fs.n_dofs, fs.n_dofs);
  fs.mass.setFromTriplets(tm.begin(), tm.end());
  fs.stiffness.setFromTriplets(ta.begin(), ta.end());
  return fs;
}

}  // namespace

FemSystem build_system(int dim, int level) {
  if (dim != 1 && dim != 2) throw std::domain_error("build_system: dim must be 1 or 2");
  if (level < 1 || level > 14) throw std::domain_error("build_system: level out of range");
  return dim == 1 ? build_1d(level) : build_2d(level);
}

Eigen::VectorXcd shifted_solve(const FemSystem& fs, cplx z, const Eigen::VectorXcd& rhs) {
  if (rhs.size() != fs.n_dofs) throw std::domain_error("shifted_solve: rhs size mismatch");
  Eigen::SparseMatrix<cplx> op = (fs.stiffness.cast<cplx>() + z * fs.mass.cast<cplx>()).pruned();
  op.makeCompressed();
  Eigen::SparseLU<Eigen::SparseMatrix<cplx>> lu(op);
  if (lu.info() != Eigen::Success)
    throw std::runtime_error("shifted_solve: factorization failed");
  Eigen::VectorXcd u = lu.solve(rhs);
  double rnorm = (op * u - rhs).norm();
  // Normwise backward error: ||r|| <= tol * (||A|| ||u|| + ||b||). A relative
  // check against ||b|| alone is unattainable on fine meshes, where the mass
  // matrix shrinks the load by h^2 while the solution stays O(1).
  double anorm = 0.0;
  {
    Eigen::VectorXd rowsum = Eigen::VectorXd::Zero(fs.n_dofs);
    for (int c = 0; c < op.outerSize(); ++c)
      for (Eigen::SparseMatrix<cplx>::InnerIterator it(op, c); it; ++it)
        rowsum[it.row()] += std::abs(it.value());
    anorm = rowsum.maxCoeff();
  }
  if (rnorm > 1e-12 * (anorm * u.norm() + rhs.norm()))
    throw std::runtime_error("shifted_solve: residual check failed");
  g_solve_count.fetch_add(1, std::memory_order_relaxed);
  return u;
}

std::uint64_t solve_count() { return g_solve_count.load(); }
void reset_solve_count() { g_solve_count.store(0); }

Eigen::VectorXd load_vector(const FemSystem& fs, const SpaceFn& f) {
  Eigen::VectorXd b = Eigen::VectorXd::Zero(fs.n_dofs);
  if (fs.dim == 1) {
    int m = fs.cells_per_side;
    for (int e = 0; e < m; ++e) {
      double xl = fs.vx[e], xr = fs.vx[e + 1];
      for (int q = 0; q < 3; ++q) {
        double x = 0.5 * (xl + xr) + 0.5 * fs.hx * kG3x[q];
        double w = 0.5 * fs.hx * kG3w[q];
        double lam = (x - xl) / fs.hx;  // hat value of right vertex
        double fv = f(x, 0.0);
        int dl = fs.dof_of_vertex[e], dr = fs.dof_of_vertex[e + 1];
        if (dl >= 0) b[dl] += w * fv * (1.0 - lam);
        if (dr >= 0) b[dr] += w * fv * lam;
      }
    }
    return b;
  }
  for (const auto& t : fs.tris) {
    double x1 = fs.vx[t[0]], y1 = fs.vy[t[0]];
    double x2 = fs.vx[t[1]], y2 = fs.vy[t[1]];
    double x3 = fs.vx[t[2]], y3 = fs.vy[t[2]];
    double area = 0.5 * std::fabs((x2 - x1) * (y3 - y1) - (x3 - x1) * (y2 - y1));
    for (int q = 0; q < kTriLoad.n; ++q) {
      const double* l = kTriLoad.bary[q];
      double x = l[0] * x1 + l[1] * x2 + l[2] * x3;
      double y = l[0] * y1 + l[1] * y2 + l[2] * y3;
      double w = area * kTriLoad.w[q];
      double fv = f(x, y);
      for (int a = 0; a < 3; ++a) {
        int ia = fs.dof_of_vertex[t[a]];
        if (ia >= 0) b[ia] += w * fv * l[a];
      }
    }
  }
  return b;
}

Eigen::VectorXd l2_project(const FemSystem& fs, const SpaceFn& f) {
  Eigen::VectorXd b = load_vector(fs, f);
  Eigen::SimplicialLDLT<SpMatD> ldlt(fs.mass);
  if (ldlt.info() != Eigen::Success)
    throw std::runtime_error("l2_project: mass factorization failed");
  return ldlt.solve(b);
}

double l2_norm(const FemSystem& fs, const Eigen::VectorXd& c) {
  return std::sqrt(std::max(0.0, c.dot(fs.mass * c)));
}

double h1_seminorm(const FemSystem& fs, const Eigen::VectorXd& c) {
  return std::sqrt(std::max(0.0, c.dot(fs.stiffness * c)));
}

ErrorNorms error_norms(const FemSystem& fs, const Eigen::VectorXd& coeffs,
                       const SpaceFn& exact, const SpaceGrad& exact_grad) {
  if (coeffs.size() != fs.n_dofs) throw std::domain_error("error_norms: size mismatch");
  double acc_l2 = 0.0, acc_h1 = 0.0;
  auto coeff_at = [&](int vertex) {
    int d = fs.dof_of_vertex[vertex];
    return d >= 0 ? coeffs[d] : 0.0;
  };
  if (fs.dim == 1) {
    int m = fs.cells_per_side;
    for (int e = 0; e < m; ++e) {
      double xl = fs.vx[e], xr = fs.vx[e + 1];
      double cl = coeff_at(e), cr = coeff_at(e + 1);
      double slope = (cr - cl) / fs.hx;
      for (int q = 0; q < 4; ++q) {
        double x = 0.5 * (xl + xr) + 0.5 * fs.hx * kG4x[q];
        double w = 0.5 * fs.hx * kG4w[q];
        double lam = (x - xl) / fs.hx;
        double uh = cl * (1.0 - lam) + cr * lam;
        double d0 = uh - exact(x, 0.0);
        double d1 = slope - exact_grad(x, 0.0)[0];
        acc_l2 += w * d0 * d0;
        acc_h1 += w * d1 * d1;
      }
    }
  } else {
    for (const auto& t : fs.tris) {
      double x1 = fs.vx[t[0]], y1 = fs.vy[t[0]];
      double x2 = fs.vx[t[1]], y2 = fs.vy[t[1]];
      double x3 = fs.vx[t[2]], y3 = fs.vy[t[2]];
      double det = (x2 - x1) * (y3 - y1) - (x3 - x1) * (y2 - y1);
      double area = 0.5 * std::fabs(det);
      double gx[3] = {(y2 - y3) / det, (y3 - y1) / det, (y1 - y2) / det};
      double gy[3] = {(x3 - x2) / det, (x1 - x3) / det, (x2 - x1) / det};
      double cv[3] = {coeff_at(t[0]), coeff_at(t[1]), coeff_at(t[2])};
      double uhx = cv[0] * gx[0] + cv[1] * gx[1] + cv[2] * gx[2];
      double uhy = cv[0] * gy[0] + cv[1] * gy[1] + cv[2] * gy[2];
      for (int q = 0; q < kTriError.n; ++q) {
        const double* l = kTriError.bary[q];
        double x = l[0] * x1 + l[1] * x2 + l[2] * x3;
        double y = l[0] * y1 + l[1] * y2 + l[2] * y3;
        double w = area * kTriError.w[q];
        double uh = cv[0] * l[0] + cv[1] * l[1] + cv[2] * l[2];
        double d0 = uh - exact(x, y);
        auto g = exact_grad(x, y);
        double dx = uhx - g[0], dy = uhy - g[1];
        acc_l2 += w * d0 * d0;
        acc_h1 += w * (dx * dx + dy * dy);
      }
    }
  }
  return {std::sqrt(acc_l2), std::sqrt(acc_h1)};
}

std::vector<std::array<double, 2>> dof_points(const FemSystem& fs) {
  std::vector<std::array<double, 2>> pts(fs.n_dofs);
  for (int i = 0; i < fs.n_dofs; ++i) {
    int v = fs.vertex_of_dof[i];
    pts[i] = {fs.vx[v], fs.dim == 2 ? fs.vy[v] : 0.0};
  }
  return pts;
}

}  // namespace fracsolve
