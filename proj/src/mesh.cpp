#include <esale/mesh.hpp>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace esale {

namespace {

constexpr double kPi = std::numbers::pi;

// Uniform double in [0, 1) from raw engine bits, identical on every platform.
double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

MotionSpec MotionSpec::make_static() { return MotionSpec{}; }

MotionSpec MotionSpec::vortex(int K) {
  MotionSpec m;
  m.kind = Kind::VortexMap;
  m.A1 = 0.09;
  m.A2 = 0.06;
  m.nu = 0.75 * kPi;
  m.omega = kPi;
  m.K = K;
  return m;
}

MotionSpec MotionSpec::shock(std::uint64_t seed, double perturbation) {
  MotionSpec m;
  m.kind = Kind::ShockMap;
  m.A1 = 0.4;
  m.A2 = -0.2;
  m.A3 = 0.3;
  m.omega = kPi;
  m.perturbation_fraction = perturbation;
  m.seed = seed;
  return m;
}

MotionSpec MotionSpec::periodic_box() {
  MotionSpec m;
  m.kind = Kind::PeriodicBox;
  m.A1 = 0.05;
  m.A2 = 0.04;
  m.A3 = 0.03;
  m.omega = kPi;
  return m;
}

Vec3 MotionSpec::position(const Vec3& X, double tau) const {
  const double s = std::sin(omega * tau);
  switch (kind) {
    case Kind::Static:
      return X;
    case Kind::VortexMap: {
      const double c = std::cos(nu * X[0] - 0.25 * kPi) * std::cos(nu * X[1] - 0.25 * kPi);
      return Vec3(0.5 * X[0] + A1 * s * c, 0.5 * X[1] + A2 * s * c, X[2] / K);
    }
    case Kind::ShockMap:
      return Vec3(X[0] + A1 * s * X[0] * (X[1] - 1.0) * (X[1] + 1.0),
                  X[1] + A2 * s * X[1] * (X[2] - 1.0) * (X[2] + 1.0),
                  X[2] + A3 * s * X[2] * (X[0] - 1.0) * (X[0] + 1.0));
    case Kind::PeriodicBox: {
      const double s0 = std::sin(kPi * X[0]), s1 = std::sin(kPi * X[1]), s2 = std::sin(kPi * X[2]);
      return Vec3(X[0] + A1 * s * s1 * s2, X[1] + A2 * s * s0 * s2, X[2] + A3 * s * s0 * s1);
    }
  }
  return X;
}

Vec3 MotionSpec::velocity(const Vec3& X, double tau) const {
  const double ds = omega * std::cos(omega * tau);
  switch (kind) {
    case Kind::Static:
      return Vec3::Zero();
    case Kind::VortexMap: {
      const double c = std::cos(nu * X[0] - 0.25 * kPi) * std::cos(nu * X[1] - 0.25 * kPi);
      return Vec3(A1 * ds * c, A2 * ds * c, 0.0);
    }
    case Kind::ShockMap:
      return Vec3(A1 * ds * X[0] * (X[1] - 1.0) * (X[1] + 1.0),
                  A2 * ds * X[1] * (X[2] - 1.0) * (X[2] + 1.0),
                  A3 * ds * X[2] * (X[0] - 1.0) * (X[0] + 1.0));
    case Kind::PeriodicBox: {
      const double s0 = std::sin(kPi * X[0]), s1 = std::sin(kPi * X[1]), s2 = std::sin(kPi * X[2]);
      return Vec3(A1 * ds * s1 * s2, A2 * ds * s0 * s2, A3 * ds * s0 * s1);
    }
  }
  return Vec3::Zero();
}

Mesh build_mesh(int K1, int K2, int K3, const MotionSpec& motion,
                std::array<bool, 3> periodic_dirs) {
  if (K1 < 1 || K2 < 1 || K3 < 1) throw ConfigError("element counts must be positive");
  if (motion.kind == MotionSpec::Kind::VortexMap && (periodic_dirs[0] || periodic_dirs[1])) {
    throw ConfigError("vortex map is not periodic in xi or eta");
  }
  if (motion.kind == MotionSpec::Kind::ShockMap &&
      (periodic_dirs[0] || periodic_dirs[1] || periodic_dirs[2])) {
    throw ConfigError("shock map is not periodic");
  }
  if (motion.perturbation_fraction < 0.0 || motion.perturbation_fraction >= 0.5) {
    throw ConfigError("perturbation fraction must lie in [0, 0.5)");
  }

  Mesh m;
  m.K = {K1, K2, K3};
  m.periodic = periodic_dirs;
  m.motion = motion;
  const std::array<double, 3> h{2.0 / K1, 2.0 / K2, 2.0 / K3};

  m.vertices.resize(static_cast<std::size_t>(K1 + 1) * (K2 + 1) * (K3 + 1));
  std::mt19937_64 rng(motion.seed);
  const double frac = motion.perturbation_fraction;
  for (int i = 0; i <= K1; ++i) {
    for (int j = 0; j <= K2; ++j) {
      for (int k = 0; k <= K3; ++k) {
        const std::array<int, 3> idx{i, j, k};
        Vec3 X(-1.0 + i * h[0], -1.0 + j * h[1], -1.0 + k * h[2]);
        if (frac > 0.0) {
          // Random direction restricted to the directions in which the
          // vertex is not on the domain boundary.
          std::array<int, 3> free{};
          int nfree = 0;
          for (int d = 0; d < 3; ++d) {
            if (idx[d] > 0 && idx[d] < m.K[d]) free[nfree++] = d;
          }
          Vec3 dir = Vec3::Zero();
          if (nfree == 3) {
            const double z = 2.0 * unit_uniform(rng) - 1.0;
            const double phi = 2.0 * kPi * unit_uniform(rng);
            const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
            dir = Vec3(r * std::cos(phi), r * std::sin(phi), z);
          } else if (nfree == 2) {
            const double phi = 2.0 * kPi * unit_uniform(rng);
            dir[free[0]] = std::cos(phi);
            dir[free[1]] = std::sin(phi);
          } else if (nfree == 1) {
            dir[free[0]] = unit_uniform(rng) < 0.5 ? -1.0 : 1.0;
          }
          for (int d = 0; d < 3; ++d) X[d] += frac * h[d] * dir[d];
        }
        m.vertices[m.vertex_id(i, j, k)] = X;
      }
    }
  }

  const int nel = K1 * K2 * K3;
  m.elem_vertices.resize(nel);
  m.faces.resize(nel);
  for (int i = 0; i < K1; ++i) {
    for (int j = 0; j < K2; ++j) {
      for (int k = 0; k < K3; ++k) {
        const int e = m.element_id(i, j, k);
        for (int v = 0; v < 8; ++v) {
          const int di = (v >> 2) & 1, dj = (v >> 1) & 1, dk = v & 1;
          m.elem_vertices[e][v] = m.vertex_id(i + di, j + dj, k + dk);
        }
        const std::array<int, 3> idx{i, j, k};
        for (int f = 0; f < 6; ++f) {
          const int l = f / 2;
          const int step = (f % 2 == 0) ? -1 : 1;
          std::array<int, 3> nb = idx;
          nb[l] += step;
          FaceLink link;
          link.neighbor_face = (f % 2 == 0) ? f + 1 : f - 1;
          if (nb[l] >= 0 && nb[l] < m.K[l]) {
            link.kind = FaceKind::Interior;
          } else if (periodic_dirs[l]) {
            link.kind = FaceKind::Periodic;
            nb[l] = (nb[l] + m.K[l]) % m.K[l];
          } else {
            link.kind = FaceKind::Dirichlet;
            link.neighbor_face = -1;
          }
          if (link.kind != FaceKind::Dirichlet) link.neighbor = m.element_id(nb[0], nb[1], nb[2]);
          m.faces[e][f] = link;
        }
      }
    }
  }
  return m;
}

std::string Mesh::dump() const {
  std::ostringstream os;
  os.precision(17);
  os << "elements " << K[0] << " " << K[1] << " " << K[2] << "\n";
  os << "vertices " << vertices.size() << "\n";
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    os << v << " " << vertices[v][0] << " " << vertices[v][1] << " " << vertices[v][2] << "\n";
  }
  static const char* kinds[] = {"interior", "dirichlet", "periodic"};
  for (int e = 0; e < num_elements(); ++e) {
    os << "element " << e;
    for (int v : elem_vertices[e]) os << " " << v;
    for (const auto& f : faces[e]) {
      os << " | " << kinds[static_cast<int>(f.kind)] << " " << f.neighbor << " " << f.neighbor_face;
    }
    os << "\n";
  }
  return os.str();
}

ElementLayout::ElementLayout(const Operator1D& op) : op_(&op), n_(op.n()) {
  const int n = n_;
  for (int f = 0; f < 6; ++f) {
    const int l = f / 2;
    const int fixed = (f % 2 == 0) ? 0 : n - 1;
    auto& list = face_nodes_[f];
    list.reserve(n * n);
    for (int s = 0; s < n; ++s) {
      for (int t = 0; t < n; ++t) {
        std::array<int, 3> idx{};
        idx[l] = fixed;
        idx[l == 0 ? 1 : 0] = s;
        idx[l == 2 ? 1 : 2] = t;
        list.push_back(node_index(n, idx[0], idx[1], idx[2]));
      }
    }
  }
  const auto& xi = op.nodeset.nodes;
  shape_.resize(num_nodes());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        auto& s = shape_[node_index(n, i, j, k)];
        const double li[2] = {0.5 * (1.0 - xi[i]), 0.5 * (1.0 + xi[i])};
        const double lj[2] = {0.5 * (1.0 - xi[j]), 0.5 * (1.0 + xi[j])};
        const double lk[2] = {0.5 * (1.0 - xi[k]), 0.5 * (1.0 + xi[k])};
        for (int v = 0; v < 8; ++v) s[v] = li[(v >> 2) & 1] * lj[(v >> 1) & 1] * lk[v & 1];
      }
    }
  }
}

ElementCoords element_coordinates(const Mesh& mesh, int element, const ElementLayout& layout,
                                  double tau) {
  std::array<Vec3, 8> xv, vv;
  for (int v = 0; v < 8; ++v) {
    const Vec3& X = mesh.vertices[mesh.elem_vertices[element][v]];
    xv[v] = mesh.motion.position(X, tau);
    vv[v] = mesh.motion.velocity(X, tau);
  }
  ElementCoords c;
  const int N = layout.num_nodes();
  c.x.assign(N, Vec3::Zero());
  c.xdot.assign(N, Vec3::Zero());
  for (int i = 0; i < N; ++i) {
    const auto& s = layout.shape()[i];
    for (int v = 0; v < 8; ++v) {
      c.x[i] += s[v] * xv[v];
      c.xdot[i] += s[v] * vv[v];
    }
  }
  return c;
}

Metrics compute_metrics(const std::vector<Vec3>& x, const Operator1D& op) {
  const int n = op.n();
  const int N = n * n * n;
  if (static_cast<int>(x.size()) != N) throw ContractViolation("coordinate array size mismatch");

  // dx[c][m]: derivative of x_m along xi_c.
  std::array<std::array<std::vector<double>, 3>, 3> dx;
  std::vector<double> comp(N);
  for (int m = 0; m < 3; ++m) {
    for (int i = 0; i < N; ++i) comp[i] = x[i][m];
    for (int c = 0; c < 3; ++c) {
      dx[c][m].resize(N);
      apply_line_derivative(op, comp, c + 1, dx[c][m], 1);
    }
  }

  // a_lm = D_p[(D_q x_i) x_j] - D_q[(D_p x_i) x_j], directions p, q and
  // components i, j per (l, m).
  struct Term { int p, q, i, j; };
  static constexpr Term table[3][3] = {
      {{2, 1, 1, 2}, {1, 2, 0, 2}, {2, 1, 0, 1}},
      {{0, 2, 1, 2}, {2, 0, 0, 2}, {0, 2, 0, 1}},
      {{1, 0, 1, 2}, {0, 1, 0, 2}, {1, 0, 0, 1}},
  };
  Metrics out;
  out.a.assign(static_cast<std::size_t>(N) * 9, 0.0);
  std::vector<double> prod(N), d1(N), d2(N);
  for (int l = 0; l < 3; ++l) {
    for (int m = 0; m < 3; ++m) {
      const Term t = table[l][m];
      for (int k = 0; k < N; ++k) prod[k] = dx[t.q][t.i][k] * x[k][t.j];
      apply_line_derivative(op, prod, t.p + 1, d1, 1);
      for (int k = 0; k < N; ++k) prod[k] = dx[t.p][t.i][k] * x[k][t.j];
      apply_line_derivative(op, prod, t.q + 1, d2, 1);
      for (int k = 0; k < N; ++k) out.a[k * 9 + l * 3 + m] = d1[k] - d2[k];
    }
  }

  out.Jdet.resize(N);
  for (int k = 0; k < N; ++k) {
    Mat3 M;
    for (int m = 0; m < 3; ++m) {
      for (int c = 0; c < 3; ++c) M(m, c) = dx[c][m][k];
    }
    const double J = M.determinant();
    if (!(J > 0.0)) {
      std::ostringstream os;
      os << "nonpositive Jacobian " << J << " at node " << k << " (" << x[k][0] << ", "
         << x[k][1] << ", " << x[k][2] << ")";
      throw MeshTangling(os.str());
    }
    out.Jdet[k] = J;
  }
  return out;
}

std::vector<double> mesh_velocity_metrics(const std::vector<double>& a,
                                          const std::vector<Vec3>& xdot) {
  const std::size_t N = xdot.size();
  if (a.size() != N * 9) throw ContractViolation("metric array size mismatch");
  std::vector<double> b(N * 3);
  for (std::size_t k = 0; k < N; ++k) {
    for (int l = 0; l < 3; ++l) {
      const double* al = &a[k * 9 + l * 3];
      b[k * 3 + l] = -(al[0] * xdot[k][0] + al[1] * xdot[k][1] + al[2] * xdot[k][2]);
    }
  }
  return b;
}

std::vector<double> advance_integrated_jacobian(const std::vector<double>& b,
                                                const Operator1D& op) {
  const int n = op.n();
  const std::size_t N = static_cast<std::size_t>(n) * n * n;
  if (b.size() != N * 3) throw ContractViolation("mesh velocity metric size mismatch");
  std::vector<double> out(N, 0.0), comp(N), d(N);
  for (int l = 0; l < 3; ++l) {
    for (std::size_t k = 0; k < N; ++k) comp[k] = b[k * 3 + l];
    apply_line_derivative(op, comp, l + 1, d, 1);
    for (std::size_t k = 0; k < N; ++k) out[k] -= d[k];
  }
  return out;
}

ElementGeometry element_geometry(const Mesh& mesh, int element, const ElementLayout& layout,
                                 double tau) {
  ElementCoords c = element_coordinates(mesh, element, layout, tau);
  Metrics met = compute_metrics(c.x, layout.op());
  ElementGeometry g;
  g.b = mesh_velocity_metrics(met.a, c.xdot);
  g.a = std::move(met.a);
  g.Jdet = std::move(met.Jdet);
  g.x = std::move(c.x);
  g.xdot = std::move(c.xdot);
  return g;
}

std::vector<double> gcl_residual_field(const std::vector<double>& a, const Operator1D& op) {
  const int n = op.n();
  const std::size_t N = static_cast<std::size_t>(n) * n * n;
  if (a.size() != N * 9) throw ContractViolation("metric array size mismatch");
  double amax = 0.0;
  for (double v : a) amax = std::max(amax, std::abs(v));
  const double scale = amax > 0.0 ? 1.0 / amax : 1.0;
  std::vector<double> comp(N), d(N), sum(N), out(N, 0.0);
  for (int m = 0; m < 3; ++m) {
    std::fill(sum.begin(), sum.end(), 0.0);
    for (int l = 0; l < 3; ++l) {
      for (std::size_t k = 0; k < N; ++k) comp[k] = a[k * 9 + l * 3 + m];
      apply_line_derivative(op, comp, l + 1, d, 1);
      for (std::size_t k = 0; k < N; ++k) sum[k] += d[k];
    }
    for (std::size_t k = 0; k < N; ++k) out[k] = std::max(out[k], std::abs(sum[k]) * scale);
  }
  return out;
}

double gcl_residual(const std::vector<double>& a, const Operator1D& op) {
  double worst = 0.0;
  for (double v : gcl_residual_field(a, op)) worst = std::max(worst, v);
  return worst;
}

}  // namespace esale
