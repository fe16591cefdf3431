#pragma once

#include <Eigen/Dense>

#include <array>
#include <stdexcept>
#include <string>

namespace esale {

using Vec3 = Eigen::Vector3d;
using Vec5 = Eigen::Matrix<double, 5, 1>;
using Mat3 = Eigen::Matrix3d;
using Mat5 = Eigen::Matrix<double, 5, 5>;

/// Conservative variables at one node: [rho, rho*V1, rho*V2, rho*V3, rho*E].
using State5 = Vec5;

/// Entropy variables W = dS/dU at one node.
using EntropyVars5 = Vec5;

/// Base class of everything the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid user configuration (degree out of range, inconsistent flags, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A caller broke a precondition (shape mismatch, zero normal, missing data).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// rho <= 0 or T <= 0 encountered.
class InadmissibleState : public Error {
 public:
  InadmissibleState(double rho, double temperature, const std::string& where = {})
      : Error("inadmissible state (rho=" + std::to_string(rho) +
              ", T=" + std::to_string(temperature) + ")" +
              (where.empty() ? std::string() : " at " + where)),
        rho_(rho),
        temperature_(temperature) {}

  double rho() const { return rho_; }
  double temperature() const { return temperature_; }

 private:
  double rho_;
  double temperature_;
};

/// Nonpositive Jacobian: the mesh folded over itself.
class MeshTangling : public Error {
 public:
  using Error::Error;
};

/// Iterative solve failed to converge.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace esale
