#pragma once

// Discrete rho-Wasserstein distances.

#include "wcert/core.hpp"

namespace wcert {

/// k x l matrix of ||a_i - b_j||^rho.
Matrix cost_matrix(const Matrix& a, const Matrix& b, NormOrder order, double rho);

/// W_rho(p, q) = (min_gamma sum C_ij gamma_ij)^(1/rho) via the transportation simplex.
/// Zero-weight atoms are dropped before solving.
double wasserstein(const DiscreteDistribution& p, const DiscreteDistribution& q, const Config& cfg);

/// W_rho between the uniform empirical distribution on the rows of `samples`
/// and q. Solved exactly as a capacitated assignment by successive shortest
/// paths; memory grows as K * l, so it suits 1e5+ samples against tens of atoms.
/// Requires K * w_j to be an integer (within 1e-6) for every atom weight w_j.
double wasserstein_empirical(const Matrix& samples, const DiscreteDistribution& q, const Config& cfg);

}  // namespace wcert
