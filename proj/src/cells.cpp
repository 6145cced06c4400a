#include "qps/cells.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "qps/wavefunction.hpp"

namespace qps {

void Cell::validate(double hbar) const {
  if (!(x_hi > x_lo) || !(p_hi > p_lo))
    throw validation_error("Cell " + id + ": bounds must be strictly increasing");
  if (measure() < 0.5 * hbar - 1e-12)
    throw validation_error("Cell " + id + ": measure " + std::to_string(measure()) +
                           " below the quantum bound hbar/2 = " +
                           std::to_string(0.5 * hbar));
}

void CellPartition::validate(double hbar) const {
  if (cells.empty()) throw validation_error("CellPartition: no cells");
  if (!(coverage.x_hi > coverage.x_lo) || !(coverage.p_hi > coverage.p_lo))
    throw validation_error("CellPartition: bad coverage window");
  double area = 0.0;
  for (const Cell& c : cells) {
    c.validate(hbar);
    const double slack = 1e-9 * (1.0 + std::abs(coverage.x_hi) + std::abs(coverage.p_hi));
    if (c.x_lo < coverage.x_lo - slack || c.x_hi > coverage.x_hi + slack ||
        c.p_lo < coverage.p_lo - slack || c.p_hi > coverage.p_hi + slack)
      throw validation_error("CellPartition: cell " + c.id + " outside coverage");
    area += c.measure();
  }
  for (std::size_t a = 0; a < cells.size(); ++a) {
    for (std::size_t b = a + 1; b < cells.size(); ++b) {
      const double ox = std::min(cells[a].x_hi, cells[b].x_hi) -
                        std::max(cells[a].x_lo, cells[b].x_lo);
      const double op = std::min(cells[a].p_hi, cells[b].p_hi) -
                        std::max(cells[a].p_lo, cells[b].p_lo);
      if (ox > 1e-12 && op > 1e-12)
        throw validation_error("CellPartition: cells " + cells[a].id + " and " +
                               cells[b].id + " overlap");
    }
  }
  if (std::abs(area - coverage.measure()) > 1e-9 * coverage.measure())
    throw validation_error("CellPartition: cells do not tile the coverage window (area " +
                           std::to_string(area) + " vs " +
                           std::to_string(coverage.measure()) + ")");
}

const Cell& CellPartition::find(const std::string& id) const {
  for (const Cell& c : cells)
    if (c.id == id) return c;
  throw validation_error("CellPartition: no cell named " + id);
}

CellPartition uniform_partition(double x_lo, double x_hi, double p_lo, double p_hi,
                                int nx_cells, int np_cells, double hbar) {
  if (nx_cells < 1 || np_cells < 1)
    throw validation_error("uniform_partition: cell counts must be >= 1");
  CellPartition part;
  part.coverage = {x_lo, x_hi, p_lo, p_hi, "coverage"};
  const double wx = (x_hi - x_lo) / nx_cells;
  const double wp = (p_hi - p_lo) / np_cells;
  for (int a = 0; a < nx_cells; ++a) {
    for (int b = 0; b < np_cells; ++b) {
      Cell c{x_lo + a * wx, x_lo + (a + 1) * wx, p_lo + b * wp, p_lo + (b + 1) * wp,
             std::to_string(a) + "." + std::to_string(b)};
      part.cells.push_back(c);
    }
  }
  part.validate(hbar);
  return part;
}

namespace {

// Fraction of the node's dual cell [t - h/2, t + h/2] inside [lo, hi].
double dual_overlap(double t, double h, double lo, double hi) {
  const double a = std::max(t - 0.5 * h, lo);
  const double b = std::min(t + 0.5 * h, hi);
  return std::max(0.0, b - a) / h;
}

}  // namespace

CellProbability cell_probability(const ScalarField& field, const Cell& c) {
  const PhaseGrid& g = field.grid;
  const double hx = g.dx(), hp = g.dp();
  const double slack = 1e-9 * (hx + hp);
  if (c.x_lo < g.x_min - 0.5 * hx - slack || c.x_hi > g.x_max + 0.5 * hx + slack ||
      c.p_lo < g.p_min - 0.5 * hp - slack || c.p_hi > g.p_max + 0.5 * hp + slack)
    throw validation_error("cell_probability: cell " + c.id + " exceeds the grid");

  std::vector<double> wx(g.nx), wp(g.np);
  for (int j = 0; j < g.nx; ++j) wx[j] = dual_overlap(g.x(j), hx, c.x_lo, c.x_hi);
  for (int k = 0; k < g.np; ++k) wp[k] = dual_overlap(g.p(k), hp, c.p_lo, c.p_hi);

  const double dA = g.area_element();
  double value = 0.0, err = 0.0;
  for (int j = 0; j < g.nx; ++j) {
    if (wx[j] == 0.0) continue;
    const bool fx = wx[j] < 1.0;
    for (int k = 0; k < g.np; ++k) {
      if (wp[k] == 0.0) continue;
      const double v = field.at(j, k);
      value += wx[j] * wp[k] * v;
      if (fx || wp[k] < 1.0) err += std::abs(v);
    }
  }
  value *= dA;
  err *= 0.5 * dA;
  return {c.id, value, err, value < -err};
}

PartitionProbabilities partition_probabilities(const ScalarField& field,
                                               const CellPartition& part,
                                               double coverage_tol) {
  part.validate(field.grid.hbar);
  const double inside = cell_probability(field, part.coverage).value;
  const double outside = field.mass() - inside;
  if (std::abs(outside) > coverage_tol)
    throw tolerance_error(
        "partition_probabilities: mass outside coverage window = " +
        std::to_string(outside) + " exceeds " + std::to_string(coverage_tol));
  PartitionProbabilities out;
  out.outside_mass = outside;
  out.sum = 0.0;
  for (const Cell& c : part.cells) {
    out.items.push_back(cell_probability(field, c));
    out.sum += out.items.back().value;
  }
  return out;
}

CellPartition refine_partition(const CellPartition& part, const std::string& cell_id,
                               Axis axis, double hbar) {
  const Cell& target = part.find(cell_id);
  if (0.5 * target.measure() < 0.5 * hbar - 1e-12)
    throw validation_error(
        "refine_partition: refusing to split cell " + cell_id + " (children measure " +
        std::to_string(0.5 * target.measure()) +
        " would fall below the quantum bound hbar/2 = " + std::to_string(0.5 * hbar) +
        ")");
  CellPartition out = part;
  for (std::size_t i = 0; i < out.cells.size(); ++i) {
    if (out.cells[i].id != cell_id) continue;
    Cell a = out.cells[i], b = out.cells[i];
    if (axis == Axis::x) {
      const double mid = 0.5 * (a.x_lo + a.x_hi);
      a.x_hi = mid;
      b.x_lo = mid;
    } else {
      const double mid = 0.5 * (a.p_lo + a.p_hi);
      a.p_hi = mid;
      b.p_lo = mid;
    }
    a.id = cell_id + ".0";
    b.id = cell_id + ".1";
    out.cells[i] = a;
    out.cells.insert(out.cells.begin() + i + 1, b);
    break;
  }
  out.validate(hbar);
  return out;
}

CellIndicators indicator_functions(const Cell& c) {
  const double xl = c.x_lo, xh = c.x_hi, pl = c.p_lo, ph = c.p_hi;
  return {[xl, xh](double x) { return (x >= xl && x <= xh) ? 1.0 : 0.0; },
          [pl, ph](double p) { return (p >= pl && p <= ph) ? 1.0 : 0.0; }};
}

namespace {

struct YGrid {
  std::vector<double> y, w;  // nodes and trapezoid weights
  double dy;
};

YGrid hermite_y_grid(const PhysicsConfig& cfg, double p_abs_max, double step_scale) {
  const int N = cfg.fock_cutoff;
  const double sigma = cfg.sigma_x();
  const double radius = (9.0 + 2.0 * std::sqrt(static_cast<double>(N))) * sigma;
  const double Y = 2.0 * radius;
  const double dy_target =
      step_scale * std::min(sigma / (6.0 * (1.0 + std::sqrt(static_cast<double>(N)))),
                            pi * cfg.hbar / (6.0 * std::max(p_abs_max, 1e-3)));
  const int ny = 2 * static_cast<int>(std::ceil(Y / dy_target)) + 1;
  YGrid g;
  g.dy = 2.0 * Y / (ny - 1);
  g.y.resize(ny);
  g.w.resize(ny);
  for (int i = 0; i < ny; ++i) {
    g.y[i] = -Y + i * g.dy;
    g.w[i] = (i == 0 || i == ny - 1) ? 0.5 : 1.0;
  }
  return g;
}

// Hermite columns phi_0..phi_{N-1} at x +- y_i/2 as ny-by-N matrices.
void fill_shift_columns(const YGrid& yg, double x, double sigma, int N,
                        Eigen::MatrixXd& U, Eigen::MatrixXd& V) {
  const int ny = static_cast<int>(yg.y.size());
  std::vector<double> col(N);
  for (int i = 0; i < ny; ++i) {
    hermite_column(N, sigma, x + 0.5 * yg.y[i], col.data());
    for (int m = 0; m < N; ++m) U(i, m) = col[m];
    hermite_column(N, sigma, x - 0.5 * yg.y[i], col.data());
    for (int m = 0; m < N; ++m) V(i, m) = col[m];
  }
}

}  // namespace

Matrix weyl_quantize(const std::function<double(double, double)>& f,
                     const PhaseGrid& grid, const PhysicsConfig& cfg) {
  grid.validate();
  cfg.validate();
  const int N = cfg.fock_cutoff;
  const double sigma = cfg.sigma_x();
  const double pmx = std::max(std::abs(grid.p_min), std::abs(grid.p_max));
  const YGrid yg = hermite_y_grid(cfg, pmx, 1.0);
  const int ny = static_cast<int>(yg.y.size());

  // F_j(y_i) = sum_k f(x_j, p_k) e^{i p_k y_i / hbar} dp  (shared by all pairs)
  Eigen::MatrixXd U(ny, N), V(ny, N);
  Eigen::MatrixXd A_re = Eigen::MatrixXd::Zero(N, N);
  Eigen::MatrixXd A_im = Eigen::MatrixXd::Zero(N, N);
  std::vector<double> fx(grid.np);
  Eigen::VectorXd Fre(ny), Fim(ny);
  for (int j = 0; j < grid.nx; ++j) {
    const double x = grid.x(j);
    bool any = false;
    for (int k = 0; k < grid.np; ++k) {
      fx[k] = f(x, grid.p(k));
      any = any || fx[k] != 0.0;
    }
    if (!any) continue;
    for (int i = 0; i < ny; ++i) {
      double re = 0.0, im = 0.0;
      const double dth = grid.dp() * yg.y[i] / cfg.hbar;
      const double th0 = grid.p_min * yg.y[i] / cfg.hbar;
      double cr = std::cos(th0), ci = std::sin(th0);
      const double sr = std::cos(dth), si = std::sin(dth);
      for (int k = 0; k < grid.np; ++k) {
        re += fx[k] * cr;
        im += fx[k] * ci;
        const double nr = cr * sr - ci * si;
        ci = cr * si + ci * sr;
        cr = nr;
      }
      Fre(i) = re * yg.w[i];
      Fim(i) = im * yg.w[i];
    }
    fill_shift_columns(yg, x, sigma, N, U, V);
    A_re.noalias() += U.transpose() * Fre.asDiagonal() * V;
    A_im.noalias() += U.transpose() * Fim.asDiagonal() * V;
  }
  const double scale = grid.dx() * grid.dp() * yg.dy / (2.0 * pi * cfg.hbar);
  Matrix A = (A_re.cast<complex>() + complex(0.0, 1.0) * A_im.cast<complex>()) * scale;
  return 0.5 * (A + Matrix(A.adjoint()));
}

Matrix cell_operator(const Cell& c, const PhysicsConfig& cfg, int x_nodes,
                     double y_step_scale) {
  cfg.validate();
  c.validate(cfg.hbar);
  const int N = cfg.fock_cutoff;
  const double sigma = cfg.sigma_x();
  const double p_abs = std::max(std::abs(c.p_lo), std::abs(c.p_hi));
  const YGrid yg = hermite_y_grid(cfg, p_abs, y_step_scale);
  const int ny = static_cast<int>(yg.y.size());

  // h(y) = (dp / 2 pi hbar) e^{i p_mid y / hbar} sinc(dp y / 2 hbar)
  const double dp_cell = c.p_hi - c.p_lo;
  const double p_mid = 0.5 * (c.p_lo + c.p_hi);
  Eigen::VectorXd hre(ny), him(ny);
  for (int i = 0; i < ny; ++i) {
    const double z = 0.5 * dp_cell * yg.y[i] / cfg.hbar;
    const double sinc = std::abs(z) < 1e-8 ? 1.0 - z * z / 6.0 : std::sin(z) / z;
    const double mag = dp_cell / (2.0 * pi * cfg.hbar) * sinc * yg.w[i];
    const double th = p_mid * yg.y[i] / cfg.hbar;
    hre(i) = mag * std::cos(th);
    him(i) = mag * std::sin(th);
  }

  const double dxc = (c.x_hi - c.x_lo) / (x_nodes - 1);
  Eigen::MatrixXd U(ny, N), V(ny, N);
  Eigen::MatrixXd A_re = Eigen::MatrixXd::Zero(N, N);
  Eigen::MatrixXd A_im = Eigen::MatrixXd::Zero(N, N);
  for (int j = 0; j < x_nodes; ++j) {
    const double x = c.x_lo + j * dxc;
    const double wxj = (j == 0 || j == x_nodes - 1) ? 0.5 : 1.0;
    fill_shift_columns(yg, x, sigma, N, U, V);
    A_re.noalias() += wxj * (U.transpose() * hre.asDiagonal() * V);
    A_im.noalias() += wxj * (U.transpose() * him.asDiagonal() * V);
  }
  const double scale = dxc * yg.dy;
  Matrix A = (A_re.cast<complex>() + complex(0.0, 1.0) * A_im.cast<complex>()) * scale;
  return 0.5 * (A + Matrix(A.adjoint()));
}

OperatorRange indicator_operator_range(const Matrix& op) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(op, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  return {std::max(0.0, -lo), std::max(0.0, hi - 1.0)};
}

}  // namespace qps
