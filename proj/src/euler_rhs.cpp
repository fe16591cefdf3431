#include <esale/euler_rhs.hpp>

#include <cmath>
#include <sstream>

namespace esale {

namespace {

Vec5 entropy_vars_fp(const FluxPoint& a, const GasParams& g, double lnTref, double lnrhoref) {
  const double s = g.cv() * (a.lnT - lnTref) - g.R * (a.lnrho - lnrhoref);
  Vec5 w;
  w[0] = g.cp() - s - 0.5 * a.v2 / a.T;
  w[1] = a.u[0] / a.T;
  w[2] = a.u[1] / a.T;
  w[3] = a.u[2] / a.T;
  w[4] = -1.0 / a.T;
  return w;
}

struct RoeState {
  double rho, T;
  Vec3 V;
};

RoeState roe_fp(const FluxPoint& a, const FluxPoint& b, const GasParams& g) {
  const double sa = std::sqrt(a.rho), sb = std::sqrt(b.rho);
  const double inv = 1.0 / (sa + sb);
  RoeState r;
  r.rho = sa * sb;
  for (int c = 0; c < 3; ++c) r.V[c] = (sa * a.u[c] + sb * b.u[c]) * inv;
  const double cp = g.cp();
  const double H = (sa * (cp * a.T + 0.5 * a.v2) + sb * (cp * b.T + 0.5 * b.v2)) * inv;
  r.T = (H - 0.5 * r.V.squaredNorm()) / cp;
  if (!(r.T > 0.0)) throw InadmissibleState(r.rho, r.T, "Roe average");
  return r;
}

// -(1/w) [Y |Lambda| Y^T + |b| Y Y^T] dW with Y the entropy-scaled
// eigenvectors at the Roe state. The two tangential columns share one
// eigenvalue, so their outer products collapse to the projector I - nh nh^T.
Vec5 dissipation_fp(const FluxPoint& a, const FluxPoint& b, const Vec5& dW, const Vec3& n,
                    double bl, double w_end, bool spatial, bool mesh_velocity,
                    const GasParams& g) {
  if (!spatial && !mesh_velocity) return Vec5::Zero();
  const RoeState r = roe_fp(a, b, g);
  const double nn = n.norm();
  if (!(nn > 0.0)) throw ContractViolation("dissipation requested for a zero-length normal");
  const Vec3 nh = n / nn;
  const Vec3& V = r.V;
  const double gm = g.gamma;
  const double c = std::sqrt(gm * g.R * r.T);
  const double vn = V.dot(n);
  const double unh = V.dot(nh);
  const double v2 = V.squaredNorm();
  const double H = g.cp() * r.T + 0.5 * v2;
  const double bm = mesh_velocity ? std::abs(bl) : 0.0;
  double lam[3];  // acoustic -, convective, acoustic +
  if (spatial) {
    lam[0] = std::abs(vn - c * nn) + bm;
    lam[1] = std::abs(vn) + bm;
    lam[2] = std::abs(vn + c * nn) + bm;
  } else {
    lam[0] = lam[1] = lam[2] = bm;
  }
  const Vec3 dm(dW[1], dW[2], dW[3]);
  const double sac = r.rho / (2.0 * gm * g.R);
  const double sen = r.rho * (gm - 1.0) / (gm * g.R);
  const double stan = r.rho * r.T;
  Vec5 out = Vec5::Zero();
  // Acoustic columns [1, V -+ c nh, H -+ unh c].
  for (int sgn = -1; sgn <= 1; sgn += 2) {
    const Vec3 vel = V + (sgn * c) * nh;
    const double e = H + sgn * unh * c;
    const double proj = dW[0] + vel.dot(dm) + e * dW[4];
    const double coef = sac * lam[sgn < 0 ? 0 : 2] * proj;
    out[0] += coef;
    out.segment<3>(1) += coef * vel;
    out[4] += coef * e;
  }
  // Entropy column [1, V, |V|^2 / 2].
  {
    const double proj = dW[0] + V.dot(dm) + 0.5 * v2 * dW[4];
    const double coef = sen * lam[1] * proj;
    out[0] += coef;
    out.segment<3>(1) += coef * V;
    out[4] += coef * 0.5 * v2;
  }
  // Shear columns [0, t, V . t] summed over both tangents.
  {
    Vec3 u = dm + V * dW[4];
    u -= nh.dot(u) * nh;
    const double coef = stan * lam[1];
    out.segment<3>(1) += coef * u;
    out[4] += coef * V.dot(u);
  }
  return -(1.0 / w_end) * out;
}

}  // namespace

CoupledState& CoupledState::axpy(double alpha, const CoupledState& x) {
  for (std::size_t i = 0; i < Q.size(); ++i) Q[i] += alpha * x.Q[i];
  for (std::size_t i = 0; i < J.size(); ++i) J[i] += alpha * x.J[i];
  return *this;
}

std::vector<Vec5> volume_terms(const std::vector<State5>& q, const ElementGeometry& geo,
                               const Operator1D& op, const GasParams& g,
                               TwoPointFluxKind usc_kind) {
  const int n = op.n();
  const int N = n * n * n;
  if (static_cast<int>(q.size()) != N || static_cast<int>(geo.Jdet.size()) != N) {
    throw ContractViolation("element field size mismatch");
  }
  std::vector<FluxPoint> fp(N);
  for (int i = 0; i < N; ++i) fp[i] = make_flux_point(q[i], g);
  std::vector<Vec5> res(N, Vec5::Zero());
  for (int l = 0; l < 3; ++l) {
    const int stride = line_stride(n, l);
    for (int base = 0; base < N; ++base) {
      // Visit each line once, from its first node.
      const int pos = (l == 0) ? base / (n * n) : (l == 1 ? (base / n) % n : base % n);
      if (pos != 0) continue;
      for (int ia = 0; ia < n; ++ia) {
        const int I = base + ia * stride;
        const Vec3 aI = geo.a_row(I, l);
        const double bI = geo.b[I * 3 + l];
        for (int ib = ia; ib < n; ++ib) {
          const int Jn = base + ib * stride;
          const Vec3 nvec = aI + geo.a_row(Jn, l);
          const double bsum = bI + geo.b[Jn * 3 + l];
          Vec5 F = ismail_roe_normal(fp[I], fp[Jn], nvec, g);
          if (bsum != 0.0) F += bsum * usc_kernel(usc_kind, fp[I], fp[Jn], g);
          res[I] += op.d(ia, ib) * F;
          if (ib != ia) res[Jn] += op.d(ib, ia) * F;
        }
      }
    }
  }
  return res;
}

Vec5 interface_sat(const State5& q_self, const State5& q_nb, const Vec3& a_l, double b_l,
                   int side, double w_end, const GasParams& g, TwoPointFluxKind usc_kind) {
  const FluxPoint a = make_flux_point(q_self, g);
  const FluxPoint b = make_flux_point(q_nb, g);
  Vec5 own = normal_flux(a, a_l, g) + b_l * q_self;
  Vec5 star = ismail_roe_normal(a, b, a_l, g);
  if (b_l != 0.0) star += b_l * usc_kernel(usc_kind, a, b, g);
  return (side / w_end) * (own - star);
}

Vec5 interface_dissipation(const State5& q_self, const State5& q_nb, const Vec3& a_l, double b_l,
                           double w_end, const GasParams& g, bool spatial, bool mesh_velocity) {
  const FluxPoint a = make_flux_point(q_self, g);
  const FluxPoint b = make_flux_point(q_nb, g);
  const Vec5 dW = entropy_vars(q_self, g) - entropy_vars(q_nb, g);
  return dissipation_fp(a, b, dW, a_l, b_l, w_end, spatial, mesh_velocity, g);
}

Vec5 dirichlet_sat(const State5& q_self, const State5& q_exact, const Vec3& a_l, double b_l,
                   int side, double w_end, const GasParams& g, const RhsConfig& cfg) {
  return interface_sat(q_self, q_exact, a_l, b_l, side, w_end, g, cfg.usc_kind) +
         interface_dissipation(q_self, q_exact, a_l, b_l, w_end, g, cfg.spatial_dissipation,
                               cfg.mesh_velocity_dissipation);
}

Discretization::Discretization(Mesh mesh, int p, GasParams gas, RhsConfig cfg, StateFn boundary)
    : mesh_(std::move(mesh)),
      op_(build_operator(p)),
      layout_(op_),
      gas_(gas),
      cfg_(cfg),
      boundary_(std::move(boundary)),
      moving_(mesh_.motion.kind != MotionSpec::Kind::Static) {
  gas_.validate();
  if (cfg_.viscous && !(gas_.mu > 0.0)) {
    throw ConfigError("viscous terms requested with zero viscosity");
  }
  if (cfg_.usc_kind == TwoPointFluxKind::IsmailRoeF) {
    throw ConfigError("mesh-velocity flux must be Usc1 or Usc2");
  }
  const int n = op_.n();
  wvol_.resize(layout_.num_nodes());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) wvol_[node_index(n, i, j, k)] = op_.H[i] * op_.H[j] * op_.H[k];
    }
  }
  bslot_.assign(static_cast<std::size_t>(num_elements()) * 6, -1);
  int nb = 0;
  for (int e = 0; e < num_elements(); ++e) {
    for (int f = 0; f < 6; ++f) {
      if (mesh_.faces[e][f].kind == FaceKind::Dirichlet) bslot_[e * 6 + f] = nb++;
    }
  }
  if (nb > 0 && !boundary_) {
    throw ContractViolation("mesh has Dirichlet faces but no boundary state was supplied");
  }
  const std::size_t nface = static_cast<std::size_t>(nb) * layout_.face_size();
  gq_.resize(nface);
  gfp_.resize(nface);
  gw_.resize(nface);
  q_.resize(num_nodes());
  fp_.resize(num_nodes());
  w_.resize(num_nodes());
  if (cfg_.viscous) {
    theta_.resize(num_nodes() * 3);
    fvisc_.resize(num_nodes() * 3);
  }
}

const std::vector<ElementGeometry>& Discretization::geometry(double tau) {
  if (geo_valid_ && (!moving_ || tau == geo_tau_)) return geo_;
  geo_.resize(num_elements());
  const int N = nodes_per_element();
  dJ_.assign(num_nodes(), 0.0);
  for (int e = 0; e < num_elements(); ++e) {
    geo_[e] = element_geometry(mesh_, e, layout_, tau);
    if (moving_) {
      const std::vector<double> d = advance_integrated_jacobian(geo_[e].b, op_);
      std::copy(d.begin(), d.end(), dJ_.begin() + static_cast<std::size_t>(e) * N);
    }
  }
  geo_tau_ = tau;
  geo_valid_ = true;
  return geo_;
}

const std::vector<double>& Discretization::jacobian_rate(double tau) {
  geometry(tau);
  return dJ_;
}

CoupledState Discretization::initialize(const StateFn& fn, double tau) {
  const auto& geo = geometry(tau);
  const int N = nodes_per_element();
  CoupledState y;
  y.Q.resize(num_nodes() * 5);
  y.J.resize(num_nodes());
  for (int e = 0; e < num_elements(); ++e) {
    for (int i = 0; i < N; ++i) {
      const std::size_t idx = static_cast<std::size_t>(e) * N + i;
      const double J = geo[e].Jdet[i];
      const State5 q = fn(geo[e].x[i], tau);
      y.J[idx] = J;
      for (int c = 0; c < 5; ++c) y.Q[idx * 5 + c] = J * q[c];
    }
  }
  return y;
}

std::vector<State5> Discretization::primitive_states(const CoupledState& y) const {
  std::vector<State5> q(y.J.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    for (int c = 0; c < 5; ++c) q[i][c] = y.Q[i * 5 + c] / y.J[i];
  }
  return q;
}

void Discretization::prepare_nodes(double tau, const CoupledState& y) {
  geometry(tau);
  const double lnTref = std::log(gas_.Tref), lnrhoref = std::log(gas_.rhoref);
  const bool need_w = cfg_.viscous || cfg_.spatial_dissipation || cfg_.mesh_velocity_dissipation;
  const int N = nodes_per_element();
  for (std::size_t i = 0; i < q_.size(); ++i) {
    const double J = y.J[i];
    if (!(J > 0.0)) {
      std::ostringstream os;
      os << "integrated Jacobian " << J << " at element " << i / N << " node " << i % N
         << " time " << tau;
      throw MeshTangling(os.str());
    }
    for (int c = 0; c < 5; ++c) q_[i][c] = y.Q[i * 5 + c] / J;
    try {
      fp_[i] = make_flux_point(q_[i], gas_);
    } catch (const InadmissibleState& ex) {
      std::ostringstream os;
      os << "element " << i / N << " node " << i % N << " time " << tau;
      throw InadmissibleState(ex.rho(), ex.temperature(), os.str());
    }
    if (need_w) w_[i] = entropy_vars_fp(fp_[i], gas_, lnTref, lnrhoref);
  }
  if (!gq_.empty()) {
    const int fs = layout_.face_size();
    for (int e = 0; e < num_elements(); ++e) {
      for (int f = 0; f < 6; ++f) {
        const int slot = bslot_[e * 6 + f];
        if (slot < 0) continue;
        for (int k = 0; k < fs; ++k) {
          const std::size_t g = static_cast<std::size_t>(slot) * fs + k;
          const Vec3& x = geo_[e].x[layout_.face_node(f, k)];
          gq_[g] = boundary_(x, tau);
          gfp_[g] = make_flux_point(gq_[g], gas_);
          gw_[g] = entropy_vars_fp(gfp_[g], gas_, lnTref, lnrhoref);
        }
      }
    }
  }
  prepared_tau_ = tau;
}

void Discretization::neighbor_node(int e, int f, int k, const FluxPoint*& fp, const Vec5*& q,
                                   const Vec5*& w) const {
  const FaceLink& link = mesh_.faces[e][f];
  if (link.kind == FaceKind::Dirichlet) {
    const std::size_t g = static_cast<std::size_t>(bslot_[e * 6 + f]) * layout_.face_size() + k;
    fp = &gfp_[g];
    q = &gq_[g];
    w = &gw_[g];
    return;
  }
  const std::size_t j = static_cast<std::size_t>(link.neighbor) * nodes_per_element() +
                        layout_.face_node(link.neighbor_face, k);
  fp = &fp_[j];
  q = &q_[j];
  w = &w_[j];
}

void Discretization::add_inviscid(int e, double* out) {
  const int n = op_.n();
  const int N = nodes_per_element();
  const ElementGeometry& geo = geo_[e];
  const FluxPoint* fp = &fp_[static_cast<std::size_t>(e) * N];
  const Vec5* q = &q_[static_cast<std::size_t>(e) * N];
  const TwoPointFluxKind kind = cfg_.usc_kind;
  auto acc = [out](int node, double s, const Vec5& v) {
    double* o = out + node * 5;
    for (int c = 0; c < 5; ++c) o[c] -= s * v[c];
  };

  // Volume: flux differencing along each tensor line.
  for (int l = 0; l < 3; ++l) {
    const int stride = line_stride(n, l);
    for (int s = 0; s < n; ++s) {
      for (int t = 0; t < n; ++t) {
        int base;
        if (l == 0) base = node_index(n, 0, s, t);
        else if (l == 1) base = node_index(n, s, 0, t);
        else base = node_index(n, s, t, 0);
        for (int ia = 0; ia < n; ++ia) {
          const int I = base + ia * stride;
          const double* aI = &geo.a[I * 9 + l * 3];
          const double bI = geo.b[I * 3 + l];
          for (int ib = ia; ib < n; ++ib) {
            const double dab = op_.d(ia, ib);
            const double dba = op_.d(ib, ia);
            if (ib == ia && dab == 0.0) continue;
            const int Jn = base + ib * stride;
            const double* aJ = &geo.a[Jn * 9 + l * 3];
            const Vec3 nvec(aI[0] + aJ[0], aI[1] + aJ[1], aI[2] + aJ[2]);
            Vec5 F;
            if (ib == ia) {
              F = normal_flux(fp[I], nvec, gas_);
            } else {
              F = ismail_roe_normal(fp[I], fp[Jn], nvec, gas_);
            }
            if (moving_) {
              const double bsum = bI + geo.b[Jn * 3 + l];
              if (ib == ia) F += bsum * q[I];
              else F += bsum * usc_kernel(kind, fp[I], fp[Jn], gas_);
            }
            acc(I, dab, F);
            if (ib != ia) acc(Jn, dba, F);
          }
        }
      }
    }
  }

  // Interface and boundary SATs.
  const double w_end = op_.H[0];
  const int fs = layout_.face_size();
  const bool sdiss = cfg_.spatial_dissipation;
  const bool mdiss = cfg_.mesh_velocity_dissipation && moving_;
  const Vec5* w = &w_[static_cast<std::size_t>(e) * N];
  for (int f = 0; f < 6; ++f) {
    const int l = f / 2;
    const double side = (f % 2 == 0) ? -1.0 : 1.0;
    for (int k = 0; k < fs; ++k) {
      const int i = layout_.face_node(f, k);
      const FluxPoint* fj;
      const Vec5* qj;
      const Vec5* wj;
      neighbor_node(e, f, k, fj, qj, wj);
      const double* ai = &geo.a[i * 9 + l * 3];
      const Vec3 av(ai[0], ai[1], ai[2]);
      const double bl = geo.b[i * 3 + l];
      Vec5 diff = normal_flux(fp[i], av, gas_) - ismail_roe_normal(fp[i], *fj, av, gas_);
      if (moving_) diff += bl * (q[i] - usc_kernel(kind, fp[i], *fj, gas_));
      double* o = out + i * 5;
      for (int c = 0; c < 5; ++c) o[c] += (side / w_end) * diff[c];
      if (sdiss || mdiss) {
        const Vec5 dW = w[i] - *wj;
        const Vec5 d = dissipation_fp(fp[i], *fj, dW, av, bl, w_end, sdiss, mdiss, gas_);
        for (int c = 0; c < 5; ++c) o[c] += d[c];
      }
    }
  }
}

void Discretization::compute_viscous_fluxes(int e) {
  const int n = op_.n();
  const int N = nodes_per_element();
  const std::size_t off = static_cast<std::size_t>(e) * N;
  const ElementGeometry& geo = geo_[e];
  Vec5* th = &theta_[off * 3];
  const Vec5* w = &w_[off];

  // Theta_n = D_n W.
  for (int i = 0; i < N * 3; ++i) th[i].setZero();
  for (int dir = 0; dir < 3; ++dir) {
    const int stride = line_stride(n, dir);
    for (int s = 0; s < n; ++s) {
      for (int t = 0; t < n; ++t) {
        int base;
        if (dir == 0) base = node_index(n, 0, s, t);
        else if (dir == 1) base = node_index(n, s, 0, t);
        else base = node_index(n, s, t, 0);
        for (int ia = 0; ia < n; ++ia) {
          Vec5 acc = Vec5::Zero();
          for (int ib = 0; ib < n; ++ib) acc += op_.d(ia, ib) * w[base + ib * stride];
          th[(base + ia * stride) * 3 + dir] = acc;
        }
      }
    }
  }
  // Half-jump face corrections.
  const double w_end = op_.H[0];
  const int fs = layout_.face_size();
  for (int f = 0; f < 6; ++f) {
    const int l = f / 2;
    const double side = (f % 2 == 0) ? -1.0 : 1.0;
    for (int k = 0; k < fs; ++k) {
      const int i = layout_.face_node(f, k);
      const FluxPoint* fj;
      const Vec5* qj;
      const Vec5* wj;
      neighbor_node(e, f, k, fj, qj, wj);
      th[i * 3 + l] -= (0.5 * side / w_end) * (w[i] - *wj);
    }
  }
  // Contravariant viscous fluxes f_l = sum_m a_lm Fv_m.
  Vec5* fv = &fvisc_[off * 3];
  const FluxPoint* fp = &fp_[off];
  for (int i = 0; i < N; ++i) {
    const double* a = &geo.a[i * 9];
    const double invJ = 1.0 / geo.Jdet[i];
    Vec5 gW[3];
    for (int j = 0; j < 3; ++j) {
      gW[j] = (a[0 * 3 + j] * th[i * 3 + 0] + a[1 * 3 + j] * th[i * 3 + 1] +
               a[2 * 3 + j] * th[i * 3 + 2]) *
              invJ;
    }
    Vec5 Fv[3];
    viscous_flux_from_wgrad(Vec3(fp[i].u[0], fp[i].u[1], fp[i].u[2]), fp[i].T, gW, gas_, Fv);
    for (int l = 0; l < 3; ++l) {
      fv[i * 3 + l] = a[l * 3 + 0] * Fv[0] + a[l * 3 + 1] * Fv[1] + a[l * 3 + 2] * Fv[2];
    }
  }
}

void Discretization::add_viscous(int e, double* out) {
  const int n = op_.n();
  const int N = nodes_per_element();
  const std::size_t off = static_cast<std::size_t>(e) * N;
  const ElementGeometry& geo = geo_[e];
  const Vec5* fv = &fvisc_[off * 3];

  for (int l = 0; l < 3; ++l) {
    const int stride = line_stride(n, l);
    for (int s = 0; s < n; ++s) {
      for (int t = 0; t < n; ++t) {
        int base;
        if (l == 0) base = node_index(n, 0, s, t);
        else if (l == 1) base = node_index(n, s, 0, t);
        else base = node_index(n, s, t, 0);
        for (int ia = 0; ia < n; ++ia) {
          Vec5 acc = Vec5::Zero();
          for (int ib = 0; ib < n; ++ib) acc += op_.d(ia, ib) * fv[(base + ib * stride) * 3 + l];
          double* o = out + (base + ia * stride) * 5;
          for (int c = 0; c < 5; ++c) o[c] += acc[c];
        }
      }
    }
  }

  const double w_end = op_.H[0];
  const int fs = layout_.face_size();
  const FluxPoint* fp = &fp_[off];
  const Vec5* w = &w_[off];
  for (int f = 0; f < 6; ++f) {
    const int l = f / 2;
    const double side = (f % 2 == 0) ? -1.0 : 1.0;
    const FaceLink& link = mesh_.faces[e][f];
    for (int k = 0; k < fs; ++k) {
      const int i = layout_.face_node(f, k);
      const FluxPoint* fj;
      const Vec5* qj;
      const Vec5* wj;
      neighbor_node(e, f, k, fj, qj, wj);
      double Jface = geo.Jdet[i];
      Vec5 jump_f = Vec5::Zero();
      if (link.kind != FaceKind::Dirichlet) {
        const int jn = layout_.face_node(link.neighbor_face, k);
        const std::size_t j = static_cast<std::size_t>(link.neighbor) * N + jn;
        jump_f = fv[i * 3 + l] - fvisc_[j * 3 + l];
        Jface = 0.5 * (Jface + geo_[link.neighbor].Jdet[jn]);
      }
      // Interior penalty with coefficients from the Roe-averaged face state.
      const Vec5 dW = w[i] - *wj;
      const RoeState r = roe_fp(fp[i], *fj, gas_);
      const double* a = &geo.a[i * 9];
      Vec5 gW[3];
      for (int j = 0; j < 3; ++j) gW[j] = (a[l * 3 + j] / Jface) * dW;
      Vec5 Fv[3];
      viscous_flux_from_wgrad(r.V, r.T, gW, gas_, Fv);
      const Vec5 ip = a[l * 3 + 0] * Fv[0] + a[l * 3 + 1] * Fv[1] + a[l * 3 + 2] * Fv[2];
      double* o = out + i * 5;
      for (int c = 0; c < 5; ++c) o[c] += -(0.5 * side / w_end) * jump_f[c] - ip[c] / w_end;
    }
  }
}

void Discretization::rates(double tau, const CoupledState& y, CoupledState& dy) {
  if (y.Q.size() != num_nodes() * 5 || y.J.size() != num_nodes()) {
    throw ContractViolation("coupled state size does not match the discretization");
  }
  prepare_nodes(tau, y);
  const int N = nodes_per_element();
  dy.Q.assign(num_nodes() * 5, 0.0);
  if (moving_) dy.J = dJ_;
  else dy.J.assign(num_nodes(), 0.0);
  for (int e = 0; e < num_elements(); ++e) add_inviscid(e, &dy.Q[static_cast<std::size_t>(e) * N * 5]);
  if (cfg_.viscous) {
    for (int e = 0; e < num_elements(); ++e) compute_viscous_fluxes(e);
    for (int e = 0; e < num_elements(); ++e) add_viscous(e, &dy.Q[static_cast<std::size_t>(e) * N * 5]);
  }
}

std::vector<Vec5> Discretization::ldg_gradients(double tau, const CoupledState& y) {
  const bool was = cfg_.viscous;
  if (theta_.size() != num_nodes() * 3) {
    theta_.resize(num_nodes() * 3);
    fvisc_.resize(num_nodes() * 3);
  }
  cfg_.viscous = true;
  prepare_nodes(tau, y);
  cfg_.viscous = was;
  for (int e = 0; e < num_elements(); ++e) compute_viscous_fluxes(e);
  return theta_;
}

Vec5 Discretization::conserved_totals(const CoupledState& y) const {
  Vec5 tot = Vec5::Zero();
  const int N = nodes_per_element();
  for (std::size_t i = 0; i < y.J.size(); ++i) {
    const double w = wvol_[i % N];
    for (int c = 0; c < 5; ++c) tot[c] += w * y.Q[i * 5 + c];
  }
  return tot;
}

double Discretization::entropy_total(const CoupledState& y) const {
  double tot = 0.0;
  const int N = nodes_per_element();
  for (std::size_t i = 0; i < y.J.size(); ++i) {
    State5 q;
    for (int c = 0; c < 5; ++c) q[c] = y.Q[i * 5 + c] / y.J[i];
    tot += wvol_[i % N] * y.J[i] * entropy_and_flux(q, gas_).S;
  }
  return tot;
}

double Discretization::entropy_rate(const CoupledState& y, const CoupledState& dy) const {
  double tot = 0.0;
  const int N = nodes_per_element();
  for (std::size_t i = 0; i < y.J.size(); ++i) {
    State5 q;
    Vec5 dQ;
    for (int c = 0; c < 5; ++c) {
      q[c] = y.Q[i * 5 + c] / y.J[i];
      dQ[c] = dy.Q[i * 5 + c];
    }
    const Vec5 w = entropy_vars(q, gas_);
    const double phi = potentials(q, gas_).phi;
    tot += wvol_[i % N] * (w.dot(dQ) - phi * dy.J[i]);
  }
  return tot;
}

}  // namespace esale
