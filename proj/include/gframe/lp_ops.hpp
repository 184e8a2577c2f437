#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "gframe/group.hpp"
#include "gframe/report.hpp"

namespace gframe {

using Complex = std::complex<double>;
using LinOp = Eigen::MatrixXcd;

// Coefficient array of an ell^p(G) element: entry at index g is the
// coefficient of delta_g.
struct GVector {
    Eigen::VectorXcd coeffs;
};

// Coefficient array of a functional: entry at index g is its value on delta_g.
struct GFunctional {
    Eigen::VectorXcd coeffs;
};

// Throw std::invalid_argument on NaN/Inf entries.
GVector make_gvector(Eigen::VectorXcd coeffs);
GFunctional make_gfunctional(Eigen::VectorXcd coeffs);

// Finite exponent in [1, inf); p = inf is excluded by construction.
struct PNorm {
    double p;
    explicit PNorm(double p_);
};

inline constexpr double kDefaultTolerance = 1e-9;
inline constexpr double kInvertibilityRatio = 1e-8;   // sigma_min > ratio * sigma_max
inline constexpr double kStructuralZeroRatio = 1e-10; // entry is zero below ratio * max modulus
inline constexpr uint64_t kDefaultSeed = 2026;

double p_norm(const GVector& x, PNorm p);

// lambda_g delta_h = delta_{gh} and rho_g delta_h = delta_{h g^{-1}};
// permutation matrices, hence ell^p isometries for every p.
LinOp left_regular(const FiniteGroup& g, int elem);
LinOp right_regular(const FiniteGroup& g, int elem);

std::vector<LinOp> left_regular_family(const FiniteGroup& g);
std::vector<LinOp> right_regular_family(const FiniteGroup& g);

// J delta_g = delta_{g^{-1}}; J^2 = I.
LinOp j_involution(const FiniteGroup& g);

// Phi(A) = J A J.
LinOp phi_conjugate(const FiniteGroup& g, const LinOp& a);

// Basis of {T : TA = AT for all A in ops}, computed as the nullspace of the
// stacked maps T -> TA - AT on the n^2-dimensional coefficient space. The
// returned basis is orthonormal under the Frobenius inner product.
std::vector<LinOp> commutant(const std::vector<LinOp>& ops, double tol = kDefaultTolerance);

// lambda(G)' = rho(G)'' and rho(G)' = lambda(G)'' as subspace equalities,
// tested by two-sided projection residuals. The report carries all four
// dimensions under the "dims" witness.
VerificationReport check_commutation_theorem(const FiniteGroup& g, double tol = kDefaultTolerance);

struct IsometryVerdict {
    bool isometry = false;
    Eigen::VectorXcd witness;  // probe with maximal norm deviation when not an isometry
    double deviation = 0.0;    // |  ||u w||_p - ||w||_p  | at the witness
};

// For p != 2 an invertible matrix is an ell^p isometry iff it is a
// generalized permutation with unimodular entries; for p = 2 iff it is
// unitary. Throws NotInvertibleError when u fails the conditioned
// invertibility test.
IsometryVerdict classify_lp_isometry(const LinOp& u, PNorm p, double tol = kDefaultTolerance);

// --- subspace helpers shared by the commutant checks and orbit membership ---

Eigen::VectorXcd vectorize(const LinOp& m);

// Frobenius-orthonormal basis matrix: columns are vectorized ops.
Eigen::MatrixXcd basis_matrix(const std::vector<LinOp>& ops);

// Distance of m from span(space), relative to max(1, ||m||_max).
double membership_residual(const LinOp& m, const std::vector<LinOp>& space);

// max over sub of membership_residual(., space).
double containment_residual(const std::vector<LinOp>& sub, const std::vector<LinOp>& space);

bool is_invertible(const LinOp& m, double ratio = kInvertibilityRatio);

// Deterministic probe set: all basis vectors, all pairwise sums, then 64
// seeded pseudo-random vectors.
std::vector<Eigen::VectorXcd> probe_vectors(int dim, uint64_t seed = kDefaultSeed);

double q_norm(const Eigen::VectorXcd& x, double q);

}  // namespace gframe
