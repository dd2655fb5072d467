#pragma once

// The Neron function on C/L for L = Z + tau Z, with the modular j-invariant.

#include <array>
#include <complex>

#include "smallpoints/heights.hpp"

namespace smallpoints {

/// z = t1 + t2 tau on the torus C/(Z + tau Z).
struct TorusPoint {
  double t1 = 0.0;
  double t2 = 0.0;
  std::complex<double> tau{0.0, 1.0};
};

/// SL2(Z) element [[a, b], [c, d]] acting by tau -> (a tau + b) / (c tau + d).
using Sl2Matrix = std::array<long, 4>;

/// Moves tau into |Re tau| <= 1/2, |tau| >= 1. Throws InvalidArgument if Im tau <= 0.
std::complex<double> reduce_tau(std::complex<double> tau, Sl2Matrix* matrix = nullptr);

/// Same point on the homothetic lattice with reduced tau, t1, t2 in [0, 1).
TorusPoint reduce_torus_point(const TorusPoint& z);

/// lambda(z) = 1/2 B2(t2) log|1/q| - log|1 - w| - sum log|(1 - q^n w)(1 - q^n / w)|.
/// Throws LatticePoint for z in L.
double torus_neron(const TorusPoint& z, const HeightConfig& config = {});

/// j(tau) = E4^3 / Delta with Delta = q prod (1 - q^n)^24.
std::complex<double> j_tau(std::complex<double> tau, const HeightConfig& config = {});
/// log|j(tau)|, finite even when j itself overflows a double.
double log_abs_j_tau(std::complex<double> tau, const HeightConfig& config = {});

}  // namespace smallpoints
