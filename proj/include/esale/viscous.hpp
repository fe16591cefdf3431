#pragma once

#include <esale/gas.hpp>

#include <array>

namespace esale {

/// C[m][j] maps dW/dx_j to its contribution to the viscous flux in direction m.
using CBlocks = std::array<std::array<Mat5, 3>, 3>;

struct ViscousCoeffs {
  CBlocks C;
};

/// Physical viscous fluxes F^v_m from Cartesian gradients of the entropy
/// variables, at a node with velocity V and temperature T.
inline void viscous_flux_from_wgrad(const Vec3& V, double T, const Vec5 gW[3],
                                    const GasParams& g, Vec5 Fv[3]) {
  // Velocity and temperature gradients recovered from W = [.., V/T, -1/T].
  double dV[3][3];  // dV[i][j] = dV_i/dx_j
  double dT[3];
  for (int j = 0; j < 3; ++j) {
    dT[j] = T * T * gW[j][4];
    for (int i = 0; i < 3; ++i) dV[i][j] = T * (gW[j][1 + i] + V[i] * gW[j][4]);
  }
  const double div = dV[0][0] + dV[1][1] + dV[2][2];
  const double mu = g.mu;
  const double kappa = g.kappa();
  for (int m = 0; m < 3; ++m) {
    Vec5& f = Fv[m];
    f[0] = 0.0;
    double work = 0.0;
    for (int i = 0; i < 3; ++i) {
      double tau = mu * (dV[i][m] + dV[m][i]);
      if (i == m) tau -= (2.0 / 3.0) * mu * div;
      f[1 + i] = tau;
      work += V[i] * tau;
    }
    f[4] = work + kappa * dT[m];
  }
}

/// Entropy-variable viscous coefficient blocks at a state.
ViscousCoeffs c_matrices(const State5& u, const GasParams& g);

/// Chat_ln = sum_{m,j} a_lm C_mj a_nj / J, with a at one node stored as
/// a[l*3 + m].
CBlocks chat_matrices(const ViscousCoeffs& c, const double* a, double J);

/// Physical viscous fluxes from primitive-variable gradients (reference path).
void viscous_flux_from_primitive_gradients(const Vec3& V, const Mat3& gradV, const Vec3& gradT,
                                           const GasParams& g, Vec5 Fv[3]);

}  // namespace esale
