#include <esale/sbp.hpp>

#include <cmath>
#include <numbers>
#include <sstream>
#include <iomanip>

namespace esale {

namespace {

// Legendre P_p and P_{p-1} at x by the three-term recurrence.
void legendre_pair(int p, double x, double& pp, double& pm1) {
  double p0 = 1.0, p1 = x;
  if (p == 0) {
    pp = 1.0;
    pm1 = 0.0;
    return;
  }
  for (int k = 2; k <= p; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  pp = p1;
  pm1 = p0;
}

}  // namespace

NodeSet1D build_lgl_nodeset(int p) {
  if (p < 1 || p > 16) {
    throw ConfigError("polynomial degree must be in [1, 16], got " + std::to_string(p));
  }
  const int n = p + 1;
  NodeSet1D ns;
  ns.p = p;
  ns.nodes.resize(n);
  ns.weights.resize(n);
  for (int k = 0; k < n; ++k) {
    double x = -std::cos(std::numbers::pi * k / p);
    if (k > 0 && k < p) {
      // Newton on (1 - x^2) P_p'(x) = 0 written through the recurrence.
      for (int it = 0; it < 100; ++it) {
        double pp, pm1;
        legendre_pair(p, x, pp, pm1);
        const double dx = (x * pp - pm1) / ((p + 1.0) * pp);
        x -= dx;
        if (std::abs(dx) < 1e-15) break;
      }
    }
    ns.nodes[k] = x;
  }
  ns.nodes[0] = -1.0;
  ns.nodes[p] = 1.0;
  // Enforce exact symmetry about 0.
  for (int k = 0; k < n / 2; ++k) {
    const double s = 0.5 * (ns.nodes[p - k] - ns.nodes[k]);
    ns.nodes[k] = -s;
    ns.nodes[p - k] = s;
  }
  if (n % 2 == 1) ns.nodes[p / 2] = 0.0;
  for (int k = 0; k < n; ++k) {
    double pp, pm1;
    legendre_pair(p, ns.nodes[k], pp, pm1);
    ns.weights[k] = 2.0 / (p * (p + 1.0) * pp * pp);
  }
  return ns;
}

Operator1D build_operator(int p) {
  Operator1D op;
  op.nodeset = build_lgl_nodeset(p);
  const int n = p + 1;
  const auto& x = op.nodeset.nodes;

  // Barycentric weights give the Lagrange differentiation matrix.
  std::vector<double> bw(n, 1.0);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      if (k != j) bw[j] *= (x[j] - x[k]);
    }
    bw[j] = 1.0 / bw[j];
  }
  op.D.assign(n * n, 0.0);
  for (int i = 0; i < n; ++i) {
    double diag = 0.0;
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double v = (bw[j] / bw[i]) / (x[i] - x[j]);
      op.D[i * n + j] = v;
      diag -= v;
    }
    op.D[i * n + i] = diag;
  }

  op.H = op.nodeset.weights;
  op.Q.resize(n * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) op.Q[i * n + j] = op.H[i] * op.D[i * n + j];
  }
  op.tL.assign(n, 0.0);
  op.tR.assign(n, 0.0);
  op.tL[0] = 1.0;
  op.tR[p] = 1.0;
  op.E.assign(n * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) op.E[i * n + j] = op.tR[i] * op.tR[j] - op.tL[i] * op.tL[j];
  }
  return op;
}

double Operator1D::min_spacing() const {
  double h = 2.0;
  for (int k = 0; k + 1 < n(); ++k) h = std::min(h, nodeset.nodes[k + 1] - nodeset.nodes[k]);
  return h;
}

void apply_line_derivative(const Operator1D& op, std::span<const double> field, int direction,
                           std::span<double> out, int ncomp) {
  const int n = op.n();
  const std::size_t npts = static_cast<std::size_t>(n) * n * n;
  if (direction < 1 || direction > 3) {
    throw ContractViolation("direction must be 1, 2 or 3");
  }
  if (field.size() != npts * ncomp || out.size() != field.size()) {
    throw ContractViolation("field size does not match (p+1)^3 nodes");
  }
  // Lines in direction dir are processed a block at a time: nodes that share
  // all indices slower than dir form a contiguous run of length blk.
  const int dir = direction - 1;
  const int blk = (dir == 0 ? n * n : (dir == 1 ? n : 1)) * ncomp;
  const int outer = dir == 0 ? 1 : (dir == 1 ? n : n * n);
  const double* D = op.D.data();
  for (int o = 0; o < outer; ++o) {
    const std::size_t base = static_cast<std::size_t>(o) * n * blk;
    const double* f = field.data() + base;
    double* out_line = out.data() + base;
    for (int i = 0; i < n; ++i) {
      double* oi = out_line + static_cast<std::size_t>(i) * blk;
      for (int c = 0; c < blk; ++c) oi[c] = 0.0;
      for (int j = 0; j < n; ++j) {
        const double dij = D[i * n + j];
        const double* fj = f + static_cast<std::size_t>(j) * blk;
        for (int c = 0; c < blk; ++c) oi[c] += dij * fj[c];
      }
    }
  }
}

std::vector<double> apply_line_derivative(const Operator1D& op, const std::vector<double>& field,
                                          int direction) {
  std::vector<double> out(field.size());
  apply_line_derivative(op, field, direction, out, 1);
  return out;
}

std::string dump_operator(const Operator1D& op) {
  std::ostringstream os;
  os << std::setprecision(17);
  const int n = op.n();
  auto dump = [&](const char* name, const std::vector<double>& m) {
    os << name << "\n";
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) os << (j ? " " : "") << m[i * n + j];
      os << "\n";
    }
  };
  os << "p " << op.p() << "\nnodes";
  for (double v : op.nodeset.nodes) os << " " << v;
  os << "\nH";
  for (double v : op.H) os << " " << v;
  os << "\n";
  dump("D", op.D);
  dump("E", op.E);
  return os.str();
}

}  // namespace esale
