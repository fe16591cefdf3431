#pragma once

#include <esale/types.hpp>

namespace esale {

/// Calorically perfect gas with constant viscosity.
struct GasParams {
  double gamma = 1.4;
  double R = 1.0;
  double Pr = 0.72;
  double mu = 0.0;
  double Tref = 1.0;
  double rhoref = 1.0;

  double cv() const { return R / (gamma - 1.0); }
  double cp() const { return gamma * R / (gamma - 1.0); }
  double kappa() const { return cp() * mu / Pr; }
  void validate() const;
};

struct Primitive {
  double rho = 0.0;
  Vec3 V = Vec3::Zero();
  double T = 0.0;
  double P = 0.0;
  double s = 0.0;  // specific entropy
  double H = 0.0;  // specific total enthalpy
};

struct EntropyAndFlux {
  double S = 0.0;
  Vec3 F = Vec3::Zero();
};

struct Potentials {
  double phi = 0.0;
  Vec3 psi = Vec3::Zero();
};

/// Columns of Y are flux-Jacobian eigenvectors scaled so that Y Y^T = dU/dW.
struct Eigensystem {
  Mat5 Y;
  Vec5 lambda;
};

/// Throws InadmissibleState if rho <= 0 or T <= 0.
Primitive primitive_from_state(const State5& u, const GasParams& g);
State5 state_from_primitive(double rho, const Vec3& V, double T, const GasParams& g);
double temperature(const State5& u, const GasParams& g);
double specific_entropy(double rho, double T, const GasParams& g);

EntropyAndFlux entropy_and_flux(const State5& u, const GasParams& g);
EntropyVars5 entropy_vars(const State5& u, const GasParams& g);
State5 state_from_entropy_vars(const EntropyVars5& w, const GasParams& g);
Potentials potentials(const State5& u, const GasParams& g);
Mat5 dU_dW(const State5& u, const GasParams& g);
State5 roe_average(const State5& uL, const State5& uR, const GasParams& g);

/// Eigen-decomposition of the directional flux Jacobian n . dF/dU plus bn * I.
/// n is a metric-weighted (not necessarily unit) direction.
Eigensystem entropy_scaled_eigensystem(const State5& u, const Vec3& n, double bn,
                                       const GasParams& g);

/// Same as above from density, velocity and temperature.
Eigensystem eigensystem_from_primitive(double rho, const Vec3& V, double T, const Vec3& n,
                                       double bn, const GasParams& g);

}  // namespace esale
