#include <esale/viscous.hpp>

namespace esale {

ViscousCoeffs c_matrices(const State5& u, const GasParams& g) {
  const Primitive w = primitive_from_state(u, g);
  const double T = w.T;
  const Vec3& V = w.V;
  const double mu = g.mu;
  const double kappa = g.kappa();

  // dv(i, c): derivative of V_i with respect to W_c.
  auto dv = [&](int i, int c) {
    if (c == 1 + i) return T;
    if (c == 4) return T * V[i];
    return 0.0;
  };

  ViscousCoeffs out;
  for (int m = 0; m < 3; ++m) {
    for (int j = 0; j < 3; ++j) {
      Mat5 C = Mat5::Zero();
      for (int c = 0; c < 5; ++c) {
        double energy = 0.0;
        for (int i = 0; i < 3; ++i) {
          double v = 0.0;
          if (j == m) v += mu * dv(i, c);
          if (j == i) v += mu * dv(m, c);
          if (i == m) v -= (2.0 / 3.0) * mu * dv(j, c);
          C(1 + i, c) = v;
          energy += V[i] * v;
        }
        if (j == m && c == 4) energy += kappa * T * T;
        C(4, c) = energy;
      }
      out.C[m][j] = C;
    }
  }
  return out;
}

CBlocks chat_matrices(const ViscousCoeffs& c, const double* a, double J) {
  CBlocks out;
  for (int l = 0; l < 3; ++l) {
    for (int n = 0; n < 3; ++n) {
      Mat5 s = Mat5::Zero();
      for (int m = 0; m < 3; ++m) {
        for (int j = 0; j < 3; ++j) s += (a[l * 3 + m] * a[n * 3 + j]) * c.C[m][j];
      }
      out[l][n] = s / J;
    }
  }
  return out;
}

void viscous_flux_from_primitive_gradients(const Vec3& V, const Mat3& gradV, const Vec3& gradT,
                                           const GasParams& g, Vec5 Fv[3]) {
  const double div = gradV.trace();
  for (int m = 0; m < 3; ++m) {
    Fv[m][0] = 0.0;
    double work = 0.0;
    for (int i = 0; i < 3; ++i) {
      double tau = g.mu * (gradV(i, m) + gradV(m, i));
      if (i == m) tau -= (2.0 / 3.0) * g.mu * div;
      Fv[m][1 + i] = tau;
      work += V[i] * tau;
    }
    Fv[m][4] = work + g.kappa() * gradT[m];
  }
}

}  // namespace esale
