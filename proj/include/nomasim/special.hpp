#pragma once

namespace nomasim {

// ln B(p, q); p, q > 0.
double log_beta(double p, double q);

// Euler Beta function B(p, q) = Gamma(p) Gamma(q) / Gamma(p+q), via log-gamma.
// Throws std::domain_error for p <= 0 or q <= 0.
double beta_fn(double p, double q);

// Regularized lower incomplete Beta I_z(p, q), z in [0,1].
double regularized_incomplete_beta(double z, double p, double q);

// Non-regularized lower incomplete Beta B_z(p, q) = B(p,q) I_z(p,q).
double incomplete_beta(double z, double p, double q);

// Kummer confluent hypergeometric 1F1(a; b; -x) for integer 1 <= a < b and
// x >= 0. Series with the Kummer transformation for moderate x; terminating
// large-argument expansion beyond.
double hyp1f1_neg(int a, int b, double x);

// Regularized form 1F1(a; b; -x) / Gamma(b).
double hyp1f1_regularized_neg(int a, int b, double x);

}  // namespace nomasim
