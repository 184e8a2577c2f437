#pragma once

#include <optional>
#include <vector>

#include "gframe/lp_ops.hpp"

namespace gframe {

// Norm carried by the ambient space X = C^m of a frame pair.
//  - Pullback:   ||x||_X := ||theta_f x||_p. Makes the analysis-isometry
//                requirement exact and decidable (injectivity of theta_f);
//                the canonical encoding for rank-deficient pairs.
//  - Coordinate: the ell^q norm on coordinates. Exact isometry test when
//                q == p and m == o(G) (generalized permutation / unitary),
//                otherwise sampled on the deterministic probe set.
struct AmbientNorm {
    enum class Kind { Pullback, Coordinate };
    Kind kind = Kind::Coordinate;
    double q = 2.0;

    static AmbientNorm pullback() { return {Kind::Pullback, 0.0}; }
    static AmbientNorm coordinate(double q_) { return {Kind::Coordinate, q_}; }
};

// Functional family {f_g} and vector family {tau_g}, both indexed by the
// element set of the group, living on an ambient space of dimension
// m <= o(G).
struct FramePair {
    FiniteGroup group;
    std::vector<GFunctional> functionals;
    std::vector<GVector> vectors;
    PNorm p{2.0};
    AmbientNorm ambient;

    int ambient_dim() const;
};

// Validates family sizes and entry finiteness.
FramePair make_frame_pair(const FiniteGroup& g, std::vector<GFunctional> functionals,
                          std::vector<GVector> vectors, PNorm p, AmbientNorm ambient);

// The pair (zeta_g, delta_g) on ell^p(G).
FramePair standard_pair(const FiniteGroup& g, PNorm p);

// Expands a single functional-vector generator through a representation:
// f_g = f pi_{g^{-1}}, tau_g = pi_g tau.
FramePair pair_from_generator(const FiniteGroup& g, const GFunctional& f, const GVector& tau,
                              const std::vector<LinOp>& rep_ops, PNorm p, AmbientNorm ambient);

// Realizes an idempotent Q as the Gramian of a pair: theta_f embeds a basis
// of range(Q), theta_tau maps back through Q. Ambient norm is the pullback.
FramePair pair_from_projection(const FiniteGroup& g, const LinOp& idempotent, PNorm p);

// Matrix whose g-th row is f_g.
LinOp analysis_operator(const FramePair& pair);

// Matrix whose g-th column is tau_g.
LinOp synthesis_operator(const FramePair& pair);

// Entry [g][h] = f_g(tau_h) = (analysis * synthesis)[g][h].
LinOp gramian(const FramePair& pair);

// Reconstruction theta_tau theta_f = I, analysis isometry (per ambient norm),
// and Gramian idempotency, each with a named residual.
VerificationReport verify_p_usf(const FramePair& pair, double tol = kDefaultTolerance,
                                uint64_t seed = kDefaultSeed);

struct GroupMatrixWitness {
    Eigen::VectorXcd nu;  // matrix[g][h] = nu[g^{-1} h]
};

// nu is read off the identity row and then validated globally.
std::optional<GroupMatrixWitness> is_group_matrix(const FiniteGroup& g, const LinOp& m,
                                                  double tol = kDefaultTolerance);

// f_{ug}(tau_{uh}) = f_g(tau_h) for all u,g,h; cross-checked against
// is_group_matrix on the Gramian.
VerificationReport check_shift_invariance(const FramePair& pair, double tol = kDefaultTolerance);

struct RepresentationFamily {
    std::vector<LinOp> ops;  // ops[g] = pi_g

    const LinOp& op(int g) const { return ops[static_cast<size_t>(g)]; }
    int size() const { return static_cast<int>(ops.size()); }
};

// Thrown by build_representation when the pair is not a verified group pair.
class PreconditionFailedError : public std::runtime_error {
public:
    PreconditionFailedError(const std::string& what, VerificationReport failed)
        : std::runtime_error(what), report_(std::move(failed)) {}

    const VerificationReport& report() const { return report_; }

private:
    VerificationReport report_;
};

// pi_g = theta_tau lambda_g theta_f, verified to be an invertible isometric
// representation regenerating the input families.
RepresentationFamily build_representation(const FramePair& pair, double tol = kDefaultTolerance,
                                          uint64_t seed = kDefaultSeed);

// Same as build_representation but reported instead of thrown, with the
// homomorphism / inverse / isometry / regeneration residuals.
VerificationReport check_representation_rebuild(const FramePair& pair,
                                                double tol = kDefaultTolerance,
                                                uint64_t seed = kDefaultSeed);

// max_g || lambda_g G - G lambda_g ||_max for the Gramian G.
VerificationReport check_gramian_commutes_left_regular(const FramePair& pair,
                                                       double tol = kDefaultTolerance);

struct RightRegularDecomposition {
    Eigen::VectorXcd eta;      // G = sum_g eta(g) rho_g
    double residual = 0.0;
    double generator_crosscheck = 0.0;  // vs eta(g) = f_e(pi_g tau_e), when a rep is given
};

// eta is read off the identity row; accepted iff the reconstruction residual
// is within tolerance.
std::optional<RightRegularDecomposition> gramian_right_regular_decomposition(
    const FramePair& pair, double tol = kDefaultTolerance,
    const RepresentationFamily* rep = nullptr);

// lambda_g theta_f = theta_f pi_g for all g.
VerificationReport check_intertwining(const FramePair& pair, const RepresentationFamily& rep,
                                      double tol = kDefaultTolerance);

enum class OrbitMode { Commutant, DoubleCommutant };

// The pair (f u^{-1}, u tau) expanded through rep. Requires u to be an
// invertible ambient isometry lying in pi(G)' (resp. pi(G)''), both checked;
// the returned pair is re-verified.
FramePair orbit_pair(const FramePair& pair, const RepresentationFamily& rep, const LinOp& u,
                     OrbitMode mode, double tol = kDefaultTolerance,
                     uint64_t seed = kDefaultSeed);

}  // namespace gframe
