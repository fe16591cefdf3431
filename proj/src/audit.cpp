#include <esale/audit.hpp>

#include <esale/ec_flux.hpp>
#include <esale/mesh.hpp>
#include <esale/viscous.hpp>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <random>
#include <sstream>

namespace esale {

bool AuditReport::passed() const {
  return std::all_of(items.begin(), items.end(), [](const AuditItem& i) { return i.passed; });
}

void AuditReport::add(std::string name, double value, double limit) {
  items.push_back({std::move(name), value, limit, std::isfinite(value) && value <= limit});
}

std::string AuditReport::text() const {
  std::ostringstream os;
  os << std::scientific << std::setprecision(3);
  for (const auto& i : items) {
    os << (i.passed ? "PASS " : "FAIL ") << i.name << " value=" << i.value << " limit=" << i.limit
       << '\n';
  }
  return os.str();
}

AuditReport operator_audit(int pmax, double tol) {
  AuditReport r;
  for (int p = 1; p <= pmax; ++p) {
    const Operator1D op = build_operator(p);
    const int n = op.n();
    double sbp = 0.0, exact = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        sbp = std::max(sbp, std::abs(op.q(i, j) + op.q(j, i) - op.e(i, j)));
      }
    }
    const auto& x = op.nodeset.nodes;
    for (int k = 0; k <= p; ++k) {
      for (int i = 0; i < n; ++i) {
        double dxk = 0.0;
        for (int j = 0; j < n; ++j) dxk += op.d(i, j) * std::pow(x[j], k);
        const double ref = k == 0 ? 0.0 : k * std::pow(x[i], k - 1);
        exact = std::max(exact, std::abs(dxk - ref) / std::max(1.0, static_cast<double>(k)));
      }
    }
    r.add("p=" + std::to_string(p) + " Q+Q^T=E", sbp, tol);
    r.add("p=" + std::to_string(p) + " monomial exactness", exact, tol);
  }
  return r;
}

namespace {

State5 random_state(std::mt19937_64& rng, const GasParams& g) {
  std::uniform_real_distribution<double> lg(std::log(0.1), std::log(10.0));
  std::uniform_real_distribution<double> uv(-2.0, 2.0);
  const double rho = std::exp(lg(rng));
  const double T = std::exp(lg(rng));
  const Vec3 V(uv(rng), uv(rng), uv(rng));
  return state_from_primitive(rho, V, T, g);
}

}  // namespace

AuditReport flux_audit(int pairs, std::uint64_t seed, double tol) {
  const GasParams g;
  std::mt19937_64 rng(seed);
  double sym_f = 0.0, sym_u1 = 0.0, sym_u2 = 0.0;
  double con_f = 0.0, con_u1 = 0.0, con_u2 = 0.0;
  double sh_f = 0.0, sh_u1 = 0.0, sh_u2 = 0.0;
  for (int s = 0; s < pairs; ++s) {
    const State5 uL = random_state(rng, g);
    const State5 uR = random_state(rng, g);
    const Vec5 wL = entropy_vars(uL, g), wR = entropy_vars(uR, g);
    const Potentials pL = potentials(uL, g), pR = potentials(uR, g);
    const Vec5 dW = wL - wR;
    for (int m = 1; m <= 3; ++m) {
      const State5 f = fsc_ismail_roe(uL, uR, m, g);
      sym_f = std::max(sym_f, (f - fsc_ismail_roe(uR, uL, m, g)).cwiseAbs().maxCoeff());
      sh_f = std::max(sh_f, std::abs(dW.dot(f) - (pL.psi[m - 1] - pR.psi[m - 1])));
      const State5 fc = fsc_ismail_roe(uL, uL, m, g);
      const State5 fp = physical_flux(uL, m, g);
      con_f = std::max(con_f, (fc - fp).cwiseAbs().maxCoeff() / std::max(1.0, fp.cwiseAbs().maxCoeff()));
    }
    struct Kind {
      TwoPointFluxKind k;
      double* sym;
      double* con;
      double* sh;
    };
    for (const Kind& k : {Kind{TwoPointFluxKind::Usc1, &sym_u1, &con_u1, &sh_u1},
                          Kind{TwoPointFluxKind::Usc2, &sym_u2, &con_u2, &sh_u2}}) {
      const State5 f = usc_flux(k.k, uL, uR, g);
      *k.sym = std::max(*k.sym, (f - usc_flux(k.k, uR, uL, g)).cwiseAbs().maxCoeff());
      *k.sh = std::max(*k.sh, std::abs(dW.dot(f) - (pL.phi - pR.phi)));
      const State5 fc = usc_flux(k.k, uL, uL, g);
      *k.con = std::max(*k.con, (fc - uL).cwiseAbs().maxCoeff() / std::max(1.0, uL.cwiseAbs().maxCoeff()));
    }
  }
  AuditReport r;
  r.add("Fsc symmetry", sym_f, tol);
  r.add("Fsc consistency", con_f, tol);
  r.add("Fsc shuffle", sh_f, tol);
  r.add("Usc1 symmetry", sym_u1, tol);
  r.add("Usc1 consistency", con_u1, tol);
  r.add("Usc1 shuffle", sh_u1, tol);
  r.add("Usc2 symmetry", sym_u2, tol);
  r.add("Usc2 consistency", con_u2, tol);
  r.add("Usc2 shuffle", sh_u2, tol);
  return r;
}

AuditReport gcl_audit(int samples, double tol) {
  struct Case {
    std::string name;
    Mesh mesh;
    double t_final;
  };
  MotionSpec perturbed = MotionSpec::make_static();
  perturbed.perturbation_fraction = 0.25;
  perturbed.seed = 7;
  std::vector<Case> cases;
  cases.push_back({"static perturbed 3x3x3", build_mesh(3, 3, 3, perturbed), 1.0});
  cases.push_back({"vortex map 6x6x1", build_mesh(6, 6, 1, MotionSpec::vortex(6), {false, false, true}), 2.5});
  cases.push_back({"shock map 4x4x4", build_mesh(4, 4, 4, MotionSpec::shock(1)), 0.5});
  cases.push_back({"periodic box 3x3x3", build_mesh(3, 3, 3, MotionSpec::periodic_box(), {true, true, true}), 1.0});

  AuditReport r;
  for (int p : {2, 4}) {
    const Operator1D op = build_operator(p);
    const ElementLayout layout(op);
    for (const auto& c : cases) {
      double worst = 0.0;
      double minJ = std::numeric_limits<double>::infinity();
      bool tangled = false;
      for (int s = 0; s < samples; ++s) {
        const double tau = samples > 1 ? c.t_final * s / (samples - 1) : 0.0;
        for (int e = 0; e < c.mesh.num_elements(); ++e) {
          try {
            const ElementGeometry geo = element_geometry(c.mesh, e, layout, tau);
            worst = std::max(worst, gcl_residual(geo.a, op));
            minJ = std::min(minJ, *std::min_element(geo.Jdet.begin(), geo.Jdet.end()));
          } catch (const MeshTangling&) {
            tangled = true;
          }
        }
      }
      const std::string tag = c.name + " p=" + std::to_string(p);
      r.add(tag + " spatial GCL", worst, tol);
      // Reported as -min J so that the pass condition reads value <= 0.
      r.add(tag + " -min(J)", tangled ? std::numeric_limits<double>::infinity() : -minJ, 0.0);
    }
  }
  return r;
}

AuditReport viscous_audit(int samples, std::uint64_t seed) {
  GasParams g;
  g.mu = 0.1;
  g.Pr = 0.72;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double flux_err = 0.0, min_eig = 0.0, sym_err = 0.0;
  for (int s = 0; s < samples; ++s) {
    const State5 q = random_state(rng, g);
    const Primitive w = primitive_from_state(q, g);
    Mat3 gradV;
    Vec3 gradT, gradRho;
    for (int i = 0; i < 3; ++i) {
      gradT[i] = u(rng);
      gradRho[i] = u(rng);
      for (int j = 0; j < 3; ++j) gradV(i, j) = u(rng);
    }
    // Chain rule from primitive gradients to entropy-variable gradients.
    Vec5 gW[3];
    const double T = w.T;
    for (int j = 0; j < 3; ++j) {
      double vdv = 0.0;
      for (int i = 0; i < 3; ++i) vdv += w.V[i] * gradV(i, j);
      gW[j][0] = -(g.cv() * gradT[j] / T - g.R * gradRho[j] / w.rho) - vdv / T +
                 0.5 * w.V.squaredNorm() * gradT[j] / (T * T);
      for (int i = 0; i < 3; ++i) gW[j][1 + i] = gradV(i, j) / T - w.V[i] * gradT[j] / (T * T);
      gW[j][4] = gradT[j] / (T * T);
    }
    Vec5 ref[3];
    viscous_flux_from_primitive_gradients(w.V, gradV, gradT, g, ref);
    const ViscousCoeffs c = c_matrices(q, g);
    double scale = 0.0, diff = 0.0;
    for (int m = 0; m < 3; ++m) {
      Vec5 f = Vec5::Zero();
      for (int j = 0; j < 3; ++j) f += c.C[m][j] * gW[j];
      scale = std::max(scale, ref[m].cwiseAbs().maxCoeff());
      diff = std::max(diff, (f - ref[m]).cwiseAbs().maxCoeff());
    }
    flux_err = std::max(flux_err, diff / scale);

    // Random nondegenerate straight-sided metric at one node.
    Mat3 xxi;
    do {
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) xxi(i, j) = (i == j ? 1.0 : 0.0) + 0.4 * u(rng);
      }
    } while (xxi.determinant() < 0.2);
    const double J = xxi.determinant();
    const Mat3 a = J * xxi.inverse();  // a(l, m) = J dxi_l/dx_m
    double arow[9];
    for (int l = 0; l < 3; ++l) {
      for (int m = 0; m < 3; ++m) arow[l * 3 + m] = a(l, m);
    }
    const CBlocks ch = chat_matrices(c, arow, J);
    Eigen::Matrix<double, 15, 15> big;
    for (int l = 0; l < 3; ++l) {
      for (int n = 0; n < 3; ++n) big.block<5, 5>(5 * l, 5 * n) = ch[l][n];
    }
    const double norm = big.cwiseAbs().maxCoeff();
    sym_err = std::max(sym_err, (big - big.transpose()).cwiseAbs().maxCoeff() / norm);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 15, 15>> es(0.5 * (big + big.transpose()));
    min_eig = std::min(min_eig, es.eigenvalues().minCoeff() / norm);
  }
  AuditReport r;
  r.add("C contraction vs viscous flux (relative)", flux_err, 1e-9);
  r.add("Chat block symmetry (relative)", sym_err, 1e-12);
  r.add("Chat quadratic form, -min eigenvalue (relative)", -min_eig, 1e-10);
  return r;
}

}  // namespace esale
