#include "apchemo/kinetic2d.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "apchemo/errors.hpp"
#include "face_assembly.hpp"

namespace apchemo {

namespace {

struct Neighbours {
  std::vector<std::size_t> prev1, next1, prev2, next2;
};

Neighbours make_neighbours(const Grid2D& grid) {
  Neighbours nb;
  const std::size_t n1 = grid.n1(), n2 = grid.n2();
  for (std::size_t j = 0; j < n1; ++j) {
    nb.prev1.push_back(wrap(static_cast<std::ptrdiff_t>(j) - 1, n1));
    nb.next1.push_back(wrap(static_cast<std::ptrdiff_t>(j) + 1, n1));
  }
  for (std::size_t j = 0; j < n2; ++j) {
    nb.prev2.push_back(wrap(static_cast<std::ptrdiff_t>(j) - 1, n2));
    nb.next2.push_back(wrap(static_cast<std::ptrdiff_t>(j) + 1, n2));
  }
  return nb;
}

inline double upwind(bool gradient_nonneg, double rho_lo, double rho_hi, double q_lo,
                     double q_hi) {
  return gradient_nonneg ? rho_lo * q_hi : rho_hi * q_lo;
}

inline double corner_of(std::span<const double> f, std::size_t n2, std::size_t j1,
                        std::size_t e1, std::size_t j2, std::size_t e2) {
  // diagonal and anti-diagonal pairs, so transposed data give bit-identical corners
  return 0.25 * ((f[j1 * n2 + j2] + f[e1 * n2 + e2]) + (f[e1 * n2 + j2] + f[j1 * n2 + e2]));
}

void require_finite(std::span<const double> xs, StepStage stage, std::size_t stride) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(xs[i])) throw NumericalError(stage, i % stride, "non-finite value");
  }
}

void resize_faces(StepWorkspace2D::Faces& f, std::size_t nodes, std::size_t nv) {
  for (auto* v : {&f.rb, &f.q, &f.den, &f.growth, &f.dr_n, &f.dr_t, &f.dc_n, &f.dc_t, &f.phi_n,
                  &f.phi_t, &f.d11, &f.d12, &f.d22, &f.k_moment, &f.flux, &f.e1, &f.e2, &f.e3,
                  &f.e4}) {
    v->assign(nodes, 0.0);
  }
  if (f.k_term.n_space() != nodes || f.k_term.n_velocity() != nv) {
    f.k_term = PhaseArray(nv, nodes);
    f.g_tilde = PhaseArray(nv, nodes);
  }
}

void resize(StepWorkspace2D& ws, const Grid2D& grid, std::size_t nv) {
  const std::size_t nodes = grid.nodes();
  for (auto* v : {&ws.q_node, &ws.w_node1, &ws.w_node2, &ws.rho_corner, &ws.c_corner,
                  &ws.q_corner, &ws.w_corner1, &ws.w_corner2, &ws.buffer, &ws.rhs}) {
    v->assign(nodes, 0.0);
  }
  resize_faces(ws.f1, nodes, nv);
  resize_faces(ws.f2, nodes, nv);
  ws.system = FivePointSystem(grid.n1(), grid.n2());
}

struct Context {
  const Grid2D& grid;
  const VelocityKernels2D& kernels;
  const ModelParams& p;
  double dt;
  const Neighbours& nb;
};

void corners(const Context& cx, std::span<const double> rho, std::vector<double>& out) {
  const std::size_t n1 = cx.grid.n1(), n2 = cx.grid.n2();
  for (std::size_t j1 = 0; j1 < n1; ++j1) {
    for (std::size_t j2 = 0; j2 < n2; ++j2) {
      out[j1 * n2 + j2] = corner_of(rho, n2, j1, cx.nb.next1[j1], j2, cx.nb.next2[j2]);
    }
  }
}

void prepare(const Context& cx, const KineticState2D& s, StepWorkspace2D& ws) {
  const auto& g = cx.grid;
  const auto& p = cx.p;
  const auto& nb = cx.nb;
  const std::size_t n1 = g.n1(), n2 = g.n2();
  const double h1 = g.x1.dx, h2 = g.x2.dx;
  const double eps2 = p.epsilon * p.epsilon;
  const auto rho = s.rho.values();
  const auto c = s.c.values();
  auto at = [n2](std::size_t a, std::size_t b) { return a * n2 + b; };

  for (std::size_t j1 = 0; j1 < n1; ++j1) {
    for (std::size_t j2 = 0; j2 < n2; ++j2) {
      const std::size_t i = at(j1, j2);
      const double r = rho[i];
      const double drift = r * squeeze_derivative(r, p);
      ws.q_node[i] = upwind_squeeze(r, p);
      ws.w_node1[i] = drift * (rho[at(nb.next1[j1], j2)] - rho[at(nb.prev1[j1], j2)]) / (2.0 * h1);
      ws.w_node2[i] = drift * (rho[at(j1, nb.next2[j2])] - rho[at(j1, nb.prev2[j2])]) / (2.0 * h2);
    }
  }
  corners(cx, rho, ws.rho_corner);
  corners(cx, c, ws.c_corner);
  for (std::size_t j1 = 0; j1 < n1; ++j1) {
    const std::size_t e1 = nb.next1[j1];
    for (std::size_t j2 = 0; j2 < n2; ++j2) {
      const std::size_t e2 = nb.next2[j2];
      const std::size_t i = at(j1, j2);
      const double rc = ws.rho_corner[i];
      ws.q_corner[i] = upwind_squeeze(rc, p);
      // gradients at the corner from the two bracketing face averages
      const double d1 = (0.5 * (rho[at(e1, j2)] + rho[at(e1, e2)]) -
                         0.5 * (rho[at(j1, j2)] + rho[at(j1, e2)])) / h1;
      const double d2 = (0.5 * (rho[at(j1, e2)] + rho[at(e1, e2)]) -
                         0.5 * (rho[at(j1, j2)] + rho[at(e1, j2)])) / h2;
      const double drift = rc * squeeze_derivative(rc, p);
      ws.w_corner1[i] = drift * d1;
      ws.w_corner2[i] = drift * d2;
    }
  }

  for (std::size_t j1 = 0; j1 < n1; ++j1) {
    for (std::size_t j2 = 0; j2 < n2; ++j2) {
      const std::size_t i = at(j1, j2);
      for (int dir = 1; dir <= 2; ++dir) {
        auto& f = dir == 1 ? ws.f1 : ws.f2;
        const std::size_t r = dir == 1 ? at(nb.next1[j1], j2) : at(j1, nb.next2[j2]);
        // corners bracketing the face across its normal
        const std::size_t lo = dir == 1 ? at(j1, nb.prev2[j2]) : at(nb.prev1[j1], j2);
        const std::size_t hi = i;
        const double hn = dir == 1 ? h1 : h2;
        const double ht = dir == 1 ? h2 : h1;
        const double rb = 0.5 * (rho[i] + rho[r]);
        f.rb[i] = rb;
        f.q[i] = squeeze(rb, p);
        f.den[i] = eps2 / cx.dt + f.q[i];
        f.growth[i] = eps2 / cx.dt + eps2 * p.r0 * std::max(1.0 - rb / p.rho_max, 0.0);
        f.dr_n[i] = (rho[r] - rho[i]) / hn;
        f.dr_t[i] = (ws.rho_corner[hi] - ws.rho_corner[lo]) / ht;
        f.dc_n[i] = (c[r] - c[i]) / hn;
        f.dc_t[i] = (ws.c_corner[hi] - ws.c_corner[lo]) / ht;
        f.phi_n[i] = upwind(f.dc_n[i] >= 0.0, rho[i], rho[r], ws.q_node[i], ws.q_node[r]);
        f.phi_t[i] = upwind(f.dc_t[i] >= 0.0, ws.rho_corner[lo], ws.rho_corner[hi],
                            ws.q_corner[lo], ws.q_corner[hi]);
        const double node_n1 = (ws.w_node1[r] - ws.w_node1[i]) / hn;
        const double node_n2 = (ws.w_node2[r] - ws.w_node2[i]) / hn;
        const double corner_t1 = (ws.w_corner1[hi] - ws.w_corner1[lo]) / ht;
        const double corner_t2 = (ws.w_corner2[hi] - ws.w_corner2[lo]) / ht;
        if (dir == 1) {
          f.d11[i] = node_n1;
          f.d12[i] = node_n2 + corner_t1;
          f.d22[i] = corner_t2;
        } else {
          f.d11[i] = corner_t1;
          f.d12[i] = corner_t2 + node_n1;
          f.d22[i] = node_n2;
        }
      }
    }
  }
}

// K and g~ on the faces of one orientation.
void predict(const Context& cx, int dir, const PhaseArray& g, StepWorkspace2D& ws) {
  auto& f = dir == 1 ? ws.f1 : ws.f2;
  const auto& kn = cx.kernels;
  const auto& nb = cx.nb;
  const std::size_t n1 = cx.grid.n1(), n2 = cx.grid.n2();
  const std::size_t nodes = n1 * n2;
  const std::size_t nv1 = kn.n_v1(), nv2 = kn.n_v2();
  const double h1 = cx.grid.x1.dx, h2 = cx.grid.x2.dx;
  const double eps = cx.p.epsilon;

  for (std::size_t i = 0; i < nodes; ++i) {
    if (!(f.den[i] > 0.0)) {
      throw NumericalError(StepStage::g_tilde, i,
                           "eps^2/dt + q at face = " + std::to_string(f.den[i]) + " <= 0");
    }
  }

  std::fill(f.k_moment.begin(), f.k_moment.end(), 0.0);
  auto& q_row = ws.buffer;
  for (std::size_t a = 0; a < nv1; ++a) {
    const double v1 = kn.axis1.v[a];
    const double v1p = std::max(v1, 0.0) / h1, v1m = std::max(-v1, 0.0) / h1;
    for (std::size_t b = 0; b < nv2; ++b) {
      const std::size_t k = a * nv2 + b;
      const double v2 = kn.axis2.v[b];
      const double v2p = std::max(v2, 0.0) / h2, v2m = std::max(-v2, 0.0) / h2;
      const double psi = kn.psi0[k];
      const double w11 = v1 * v1 * psi, w22 = v2 * v2 * psi, w12 = v1 * v2 * psi;
      const auto row = g.row(k);
      for (std::size_t i = 0; i < nodes; ++i) q_row[i] = f.q[i] * row[i];
      auto out = f.k_term.row(k);
      for (std::size_t j1 = 0; j1 < n1; ++j1) {
        const std::size_t pm = nb.prev1[j1] * n2, pp = nb.next1[j1] * n2, base = j1 * n2;
        for (std::size_t j2 = 0; j2 < n2; ++j2) {
          const std::size_t i = base + j2;
          const double q0 = q_row[i];
          const double t1 = v1p * (q0 - q_row[pm + j2]) - v1m * (q_row[pp + j2] - q0);
          const double t2 = v2p * (q0 - q_row[base + nb.prev2[j2]]) -
                            v2m * (q_row[base + nb.next2[j2]] - q0);
          const double drift = (w11 * f.d11[i] + w22 * f.d22[i]) + w12 * f.d12[i];
          out[i] = (t1 + t2) + drift;
          f.k_moment[i] += out[i];
        }
      }
    }
  }
  for (double& m : f.k_moment) m *= kn.cell();

  for (std::size_t a = 0; a < nv1; ++a) {
    for (std::size_t b = 0; b < nv2; ++b) {
      const std::size_t k = a * nv2 + b;
      const double v1 = kn.axis1.v[a], v2 = kn.axis2.v[b];
      const double vn = dir == 1 ? v1 : v2, vt = dir == 1 ? v2 : v1;
      const double phin = dir == 1 ? kn.phi1[k] : kn.phi2[k];
      const double phit = dir == 1 ? kn.phi2[k] : kn.phi1[k];
      const double psi = kn.psi0[k];
      const auto gin = g.row(k);
      const auto kt = f.k_term.row(k);
      auto out = f.g_tilde.row(k);
      for (std::size_t i = 0; i < nodes; ++i) {
        const double source = -psi * f.q[i] * (vn * f.dr_n[i] + vt * f.dr_t[i]) +
                              (phin * f.dc_n[i] * f.phi_n[i] + phit * f.dc_t[i] * f.phi_t[i]);
        const double num = f.growth[i] * gin[i] - eps * (kt[i] - f.k_moment[i] * psi) + source;
        out[i] = num / f.den[i];
      }
    }
  }
  require_finite(f.g_tilde.data(), StepStage::g_tilde, nodes);
}

void assemble(const Context& cx, const KineticState2D& s, StepWorkspace2D& ws) {
  const auto& kn = cx.kernels;
  const auto& nb = cx.nb;
  const std::size_t n1 = cx.grid.n1(), n2 = cx.grid.n2();
  const std::size_t nodes = n1 * n2;
  const double eps2 = cx.p.epsilon * cx.p.epsilon;
  const double dt = cx.dt;
  auto& m = ws.system;
  std::fill(m.diag.begin(), m.diag.end(), 1.0);
  for (auto* v : {&m.west, &m.east, &m.south, &m.north}) std::fill(v->begin(), v->end(), 0.0);

  for (int dir = 1; dir <= 2; ++dir) {
    auto& f = dir == 1 ? ws.f1 : ws.f2;
    const double dh = dir == 1 ? kn.dh1 : kn.dh2;
    const double v_phi = dir == 1 ? kn.v_phi1 : kn.v_phi2;
    const double h = dir == 1 ? cx.grid.x1.dx : cx.grid.x2.dx;

    // <v_n g~>_h per face
    std::fill(f.flux.begin(), f.flux.end(), 0.0);
    for (std::size_t a = 0; a < kn.n_v1(); ++a) {
      for (std::size_t b = 0; b < kn.n_v2(); ++b) {
        const double vn = dir == 1 ? kn.axis1.v[a] : kn.axis2.v[b];
        if (vn == 0.0) continue;
        const auto row = f.g_tilde.row(a * kn.n_v2() + b);
        for (std::size_t i = 0; i < nodes; ++i) f.flux[i] += vn * row[i];
      }
    }
    for (std::size_t j1 = 0; j1 < n1; ++j1) {
      for (std::size_t j2 = 0; j2 < n2; ++j2) {
        const std::size_t i = j1 * n2 + j2;
        const std::size_t r = dir == 1 ? nb.next1[j1] * n2 + j2 : j1 * n2 + nb.next2[j2];
        const double q = f.q[i];
        const double denom = eps2 + q * dt;
        if (!(denom > 0.0)) throw NumericalError(StepStage::density_solve, i, "eps^2 + q dt <= 0");
        const double theta = q * dt / denom;
        const double a = theta * dh * q;
        const double b = theta * v_phi * f.dc_n[i];
        const double alpha = a - dh * f.rb[i] * squeeze_derivative(f.rb[i], cx.p);
        const auto coef =
            detail::face_flux(alpha, b, f.dc_n[i] >= 0.0, ws.q_node[i], ws.q_node[r], h);
        detail::add_face(m, dir, i, r, coef, dt / h);
        const double m_tilde = q * kn.cell() * f.flux[i];
        f.flux[i] = -a * f.dr_n[i] + b * f.phi_n[i] - m_tilde;
      }
    }
  }
  const double s1 = dt / cx.grid.x1.dx, s2 = dt / cx.grid.x2.dx;
  for (std::size_t j1 = 0; j1 < n1; ++j1) {
    for (std::size_t j2 = 0; j2 < n2; ++j2) {
      const std::size_t i = j1 * n2 + j2;
      const double r = s.rho[i];
      const double div1 = ws.f1.flux[i] - ws.f1.flux[nb.prev1[j1] * n2 + j2];
      const double div2 = ws.f2.flux[i] - ws.f2.flux[j1 * n2 + nb.prev2[j2]];
      ws.rhs[i] = r + dt * logistic_source(r, cx.p) + (s1 * div1 + s2 * div2);
    }
  }
  require_finite(ws.rhs, StepStage::density_solve, nodes);
}

void recover(const Context& cx, const DensityField& rho_new,
             StepWorkspace2D& ws, KineticState2D& out) {
  const auto& kn = cx.kernels;
  const auto& nb = cx.nb;
  const std::size_t n1 = cx.grid.n1(), n2 = cx.grid.n2();
  const std::size_t nodes = n1 * n2;
  const double h1 = cx.grid.x1.dx, h2 = cx.grid.x2.dx;
  const auto rho = rho_new.values();
  std::vector<double>& corner_new = ws.buffer;
  corners(cx, rho, corner_new);

  for (int dir = 1; dir <= 2; ++dir) {
    auto& f = dir == 1 ? ws.f1 : ws.f2;
    const double hn = dir == 1 ? h1 : h2;
    const double ht = dir == 1 ? h2 : h1;
    for (std::size_t j1 = 0; j1 < n1; ++j1) {
      for (std::size_t j2 = 0; j2 < n2; ++j2) {
        const std::size_t i = j1 * n2 + j2;
        if (!(f.den[i] > 0.0)) throw NumericalError(StepStage::g_recovery, i, "eps^2/dt + q <= 0");
        const std::size_t r = dir == 1 ? nb.next1[j1] * n2 + j2 : j1 * n2 + nb.next2[j2];
        const std::size_t lo = dir == 1 ? j1 * n2 + nb.prev2[j2] : nb.prev1[j1] * n2 + j2;
        const std::size_t hi = i;
        const double dr_n = (rho[r] - rho[i]) / hn;
        const double dr_t = (corner_new[hi] - corner_new[lo]) / ht;
        const double phi_n = upwind(f.dc_n[i] >= 0.0, rho[i], rho[r], ws.q_node[i], ws.q_node[r]);
        const double phi_t = upwind(f.dc_t[i] >= 0.0, corner_new[lo], corner_new[hi],
                                    ws.q_corner[lo], ws.q_corner[hi]);
        f.e1[i] = f.q[i] * (f.dr_n[i] - dr_n) / f.den[i];
        f.e2[i] = f.q[i] * (f.dr_t[i] - dr_t) / f.den[i];
        f.e3[i] = f.dc_n[i] * (phi_n - f.phi_n[i]) / f.den[i];
        f.e4[i] = f.dc_t[i] * (phi_t - f.phi_t[i]) / f.den[i];
      }
    }
    auto& g = dir == 1 ? out.g1 : out.g2;
    for (std::size_t a = 0; a < kn.n_v1(); ++a) {
      for (std::size_t b = 0; b < kn.n_v2(); ++b) {
        const std::size_t k = a * kn.n_v2() + b;
        const double v1 = kn.axis1.v[a], v2 = kn.axis2.v[b];
        const double vn = dir == 1 ? v1 : v2, vt = dir == 1 ? v2 : v1;
        const double phin = dir == 1 ? kn.phi1[k] : kn.phi2[k];
        const double phit = dir == 1 ? kn.phi2[k] : kn.phi1[k];
        const double psi = kn.psi0[k];
        const auto gt = f.g_tilde.row(k);
        auto row = g.row(k);
        for (std::size_t i = 0; i < nodes; ++i) {
          row[i] = gt[i] + psi * (vn * f.e1[i] + vt * f.e2[i]) +
                   (phin * f.e3[i] + phit * f.e4[i]);
        }
      }
    }
    require_finite(g.data(), StepStage::g_recovery, nodes);
  }
}

void step(const Context& cx, KineticState2D& state, StepWorkspace2D& ws) {
  prepare(cx, state, ws);
  predict(cx, 1, state.g1, ws);
  predict(cx, 2, state.g2, ws);
  assemble(cx, state, ws);
  DensityField rho_new(solve_five_point(ws.system, ws.rhs, &ws.last_solve));
  require_finite(rho_new.values(), StepStage::density_solve, rho_new.size());
  recover(cx, rho_new, ws, state);
  state.rho = std::move(rho_new);
  state.c = solve_screened_poisson_2d(state.rho, cx.grid);
  require_finite(state.c.values(), StepStage::chemo_solve, state.c.size());
  state.t += cx.dt;
}

}  // namespace

void check_shape(const KineticState2D& s, const Grid2D& grid) {
  const std::size_t nodes = grid.nodes();
  if (s.rho.size() != nodes || s.c.size() != nodes) {
    throw InvalidArgument("kinetic 2D state: rho/c size does not match grid");
  }
  for (const auto* g : {&s.g1, &s.g2}) {
    if (g->n_space() != nodes || g->n_velocity() != grid.nv()) {
      throw InvalidArgument("kinetic 2D state: g shape does not match grid");
    }
  }
}

double corner_average(std::span<const double> field, const Grid2D& grid, std::size_t j1,
                      std::size_t j2) {
  const std::size_t e1 = wrap(static_cast<std::ptrdiff_t>(j1) + 1, grid.n1());
  const std::size_t e2 = wrap(static_cast<std::ptrdiff_t>(j2) + 1, grid.n2());
  return corner_of(field, grid.n2(), j1, e1, j2, e2);
}

double upwind_phi_2d(int direction, FaceKind face, const DensityField& rho_n1,
                     const DensityField& rho_n, double grad_c_component, std::size_t j1,
                     std::size_t j2, const Grid2D& grid, const ModelParams& p) {
  if (direction != 1 && direction != 2) throw InvalidArgument("direction must be 1 or 2");
  const bool gn = grad_c_component >= 0.0;
  const bool along = (direction == 1) == (face == FaceKind::x1);
  if (along) {
    const std::size_t l = grid.index(j1, j2);
    const std::size_t r = direction == 1
                              ? grid.index(wrap(static_cast<std::ptrdiff_t>(j1) + 1, grid.n1()), j2)
                              : grid.index(j1, wrap(static_cast<std::ptrdiff_t>(j2) + 1, grid.n2()));
    return upwind(gn, rho_n1[l], rho_n1[r], upwind_squeeze(rho_n[l], p),
                  upwind_squeeze(rho_n[r], p));
  }
  // across the face: the two corners on either side
  std::size_t lo1 = j1, lo2 = j2;
  if (face == FaceKind::x1) {
    lo2 = wrap(static_cast<std::ptrdiff_t>(j2) - 1, grid.n2());
  } else {
    lo1 = wrap(static_cast<std::ptrdiff_t>(j1) - 1, grid.n1());
  }
  const double r_lo = corner_average(rho_n1.values(), grid, lo1, lo2);
  const double r_hi = corner_average(rho_n1.values(), grid, j1, j2);
  const double q_lo = upwind_squeeze(corner_average(rho_n.values(), grid, lo1, lo2), p);
  const double q_hi = upwind_squeeze(corner_average(rho_n.values(), grid, j1, j2), p);
  return upwind(gn, r_lo, r_hi, q_lo, q_hi);
}

KineticSolver2D::KineticSolver2D(Grid2D grid, ModelParams params, double dt)
    : grid_(grid), params_(params), dt_(dt), kernels_(build_kernels(grid, params)) {
  validate(params_);
  if (!(dt > 0.0)) throw InvalidArgument("dt must be > 0");
  resize(ws_, grid_, grid_.nv());
  auto nb = make_neighbours(grid_);
  prev1_ = std::move(nb.prev1);
  next1_ = std::move(nb.next1);
  prev2_ = std::move(nb.prev2);
  next2_ = std::move(nb.next2);
}

void KineticSolver2D::advance(KineticState2D& state) {
  check_shape(state, grid_);
  const Neighbours nb{prev1_, next1_, prev2_, next2_};
  const Context cx{grid_, kernels_, params_, dt_, nb};
  step(cx, state, ws_);
}

KineticState2D kinetic_step_2d(const KineticState2D& state, const VelocityKernels2D& kernels,
                               const Grid2D& grid, const ModelParams& p, double dt) {
  check_shape(state, grid);
  if (kernels.psi0.size() != grid.nv()) throw InvalidArgument("kernels do not match grid");
  if (!(dt > 0.0)) throw InvalidArgument("dt must be > 0");
  StepWorkspace2D ws;
  resize(ws, grid, grid.nv());
  const auto nb = make_neighbours(grid);
  const Context cx{grid, kernels, p, dt, nb};
  KineticState2D next = state;
  step(cx, next, ws);
  return next;
}

KineticState2D kinetic_run_2d(KineticState2D initial, const Grid2D& grid, const ModelParams& p,
                              const RunOptions& options,
                              const SnapshotSink<KineticState2D>& sink) {
  KineticSolver2D solver(grid, p, options.dt);
  return run_trajectory(
      std::move(initial), options, [&solver](KineticState2D& s) { solver.advance(s); }, sink);
}

std::size_t kinetic2d_memory_estimate(const Grid2D& grid) {
  const std::size_t nodes = grid.nodes();
  const std::size_t phase = grid.nv() * nodes;
  // state g1, g2 plus K and g~ per orientation
  std::size_t doubles = 6 * phase + 64 * nodes;
  if (nodes <= dense_solve_limit) doubles += nodes * nodes * 2;
  return doubles * sizeof(double);
}

}  // namespace apchemo
