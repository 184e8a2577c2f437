#include "gframe/pusf.hpp"

#include <algorithm>
#include <cmath>

#include "gframe/errors.hpp"
#include "gframe/rng.hpp"

namespace gframe {

namespace {

double max_abs(const LinOp& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double scaled(double tol, double magnitude) { return tol * std::max(1.0, magnitude); }

Complex apply_functional(const GFunctional& f, const Eigen::VectorXcd& x) {
    return (f.coeffs.array() * x.array()).sum();
}

std::vector<std::complex<double>> to_witness(const Eigen::VectorXcd& v) {
    return {v.data(), v.data() + v.size()};
}

struct IsometrySubCheck {
    bool ok = true;
    double residual = 0.0;
    std::optional<Eigen::VectorXcd> witness;
    std::string method;
};

// Analysis-isometry sub-check, dispatched on the ambient norm:
//   pullback              -> injectivity of theta_f (exact)
//   coordinate, q=p, m=n  -> generalized-permutation / unitary test (exact)
//   coordinate otherwise  -> sampled on the deterministic probe set
IsometrySubCheck check_analysis_isometry(const FramePair& pair, const LinOp& theta_f, double tol,
                                         uint64_t seed) {
    IsometrySubCheck out;
    const int m = pair.ambient_dim();
    const int n = pair.group.order;

    if (pair.ambient.kind == AmbientNorm::Kind::Pullback) {
        out.method = "pullback-injectivity";
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(theta_f, Eigen::ComputeFullV);
        const auto& sv = svd.singularValues();
        const bool injective = sv(sv.size() - 1) > kInvertibilityRatio * sv(0);
        out.ok = injective;
        out.residual = injective ? 0.0 : sv(sv.size() - 1) / std::max(sv(0), 1e-300);
        if (!injective) out.witness = svd.matrixV().col(m - 1);
        return out;
    }

    if (pair.ambient.q == pair.p.p && m == n) {
        out.method = pair.p.p == 2.0 ? "unitary" : "structural";
        try {
            const IsometryVerdict v = classify_lp_isometry(theta_f, pair.p, tol);
            out.ok = v.isometry;
            out.residual = v.isometry ? 0.0 : v.deviation;
            if (!v.isometry) out.witness = v.witness;
        } catch (const NotInvertibleError&) {
            out.ok = false;
            out.residual = 1.0;
            Eigen::JacobiSVD<Eigen::MatrixXcd> svd(theta_f, Eigen::ComputeFullV);
            out.witness = svd.matrixV().col(m - 1);
        }
        return out;
    }

    out.method = "sampled";
    double worst = 0.0;
    for (const auto& x : probe_vectors(m, seed)) {
        const double dev = std::abs(q_norm(theta_f * x, pair.p.p) - q_norm(x, pair.ambient.q));
        if (dev > worst) {
            worst = dev;
            out.witness = x;
        }
    }
    out.residual = worst;
    out.ok = worst <= tol;
    if (out.ok) out.witness.reset();
    return out;
}

// Norm deviation of an ambient-space operator over the probe set.
double ambient_operator_deviation(const FramePair& pair, const LinOp& theta_f, const LinOp& op,
                                  uint64_t seed) {
    double worst = 0.0;
    for (const auto& x : probe_vectors(pair.ambient_dim(), seed)) {
        double before, after;
        if (pair.ambient.kind == AmbientNorm::Kind::Pullback) {
            before = q_norm(theta_f * x, pair.p.p);
            after = q_norm(theta_f * (op * x), pair.p.p);
        } else {
            before = q_norm(x, pair.ambient.q);
            after = q_norm(op * x, pair.ambient.q);
        }
        worst = std::max(worst, std::abs(after - before));
    }
    return worst;
}

struct RebuildResult {
    RepresentationFamily rep;
    std::map<std::string, double> residuals;
    bool ok = true;
};

RebuildResult rebuild(const FramePair& pair, double tol, uint64_t seed) {
    RebuildResult out;
    const FiniteGroup& g = pair.group;
    const int n = g.order;
    const int m = pair.ambient_dim();
    const LinOp theta_f = analysis_operator(pair);
    const LinOp theta_tau = synthesis_operator(pair);

    out.rep.ops.reserve(n);
    for (int x = 0; x < n; ++x) out.rep.ops.push_back(theta_tau * left_regular(g, x) * theta_f);

    const double mag = std::max(max_abs(theta_f), max_abs(theta_tau));
    const double tol_eff = scaled(tol, mag * mag);

    double hom = 0.0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            hom = std::max(hom,
                           max_abs(out.rep.op(a) * out.rep.op(b) - out.rep.op(g.mul(a, b))));
    out.residuals["homomorphism"] = hom;

    double invres = 0.0;
    for (int x = 0; x < n; ++x) {
        const LinOp inv = theta_tau * left_regular(g, g.inv(x)) * theta_f;
        invres = std::max(invres, max_abs(out.rep.op(x) * inv - LinOp::Identity(m, m)));
        invres = std::max(invres, max_abs(inv * out.rep.op(x) - LinOp::Identity(m, m)));
    }
    out.residuals["invertibility"] = invres;

    // Isometry of each pi_g on the ambient space. In the exact coordinate
    // case this is the structural/unitary classification; under the pullback
    // norm the intertwining lambda_g theta_f = theta_f pi_g certifies it,
    // because lambda_g preserves every ell^p norm.
    double iso = 0.0;
    if (pair.ambient.kind == AmbientNorm::Kind::Coordinate && pair.ambient.q == pair.p.p &&
        m == n) {
        for (int x = 0; x < n; ++x) {
            try {
                const IsometryVerdict v = classify_lp_isometry(out.rep.op(x), pair.p, tol);
                if (!v.isometry) iso = std::max(iso, std::max(v.deviation, tol_eff * 2));
            } catch (const NotInvertibleError&) {
                iso = std::max(iso, 1.0);
            }
        }
    } else if (pair.ambient.kind == AmbientNorm::Kind::Pullback) {
        for (int x = 0; x < n; ++x)
            iso = std::max(iso, max_abs(left_regular(g, x) * theta_f - theta_f * out.rep.op(x)));
    } else {
        for (int x = 0; x < n; ++x)
            iso = std::max(iso, ambient_operator_deviation(pair, theta_f, out.rep.op(x), seed));
    }
    out.residuals["isometry"] = iso;

    double regen = 0.0;
    const int e = g.identity;
    for (int x = 0; x < n; ++x) {
        const Eigen::VectorXcd tau_x = out.rep.op(x) * pair.vectors[e].coeffs;
        regen = std::max(regen, (tau_x - pair.vectors[x].coeffs).cwiseAbs().maxCoeff());
        const Eigen::VectorXcd f_x = out.rep.op(g.inv(x)).transpose() * pair.functionals[e].coeffs;
        regen = std::max(regen, (f_x - pair.functionals[x].coeffs).cwiseAbs().maxCoeff());
    }
    out.residuals["regeneration"] = regen;

    out.ok = hom <= tol_eff && invres <= tol_eff && iso <= tol_eff && regen <= tol_eff;
    return out;
}

}  // namespace

int FramePair::ambient_dim() const {
    return static_cast<int>(functionals.front().coeffs.size());
}

FramePair make_frame_pair(const FiniteGroup& g, std::vector<GFunctional> functionals,
                          std::vector<GVector> vectors, PNorm p, AmbientNorm ambient) {
    const size_t n = static_cast<size_t>(g.order);
    if (functionals.size() != n || vectors.size() != n)
        throw DimensionMismatchError("family size must equal the group order");
    const Eigen::Index m = functionals.front().coeffs.size();
    if (m < 1 || m > g.order)
        throw DimensionMismatchError("ambient dimension must lie in [1, o(G)]");
    for (const auto& f : functionals)
        if (f.coeffs.size() != m) throw DimensionMismatchError("ragged functional family");
    for (const auto& v : vectors)
        if (v.coeffs.size() != m) throw DimensionMismatchError("ragged vector family");
    return FramePair{g, std::move(functionals), std::move(vectors), p, ambient};
}

FramePair standard_pair(const FiniteGroup& g, PNorm p) {
    std::vector<GFunctional> fs;
    std::vector<GVector> vs;
    for (int x = 0; x < g.order; ++x) {
        fs.push_back(GFunctional{Eigen::VectorXcd::Unit(g.order, x)});
        vs.push_back(GVector{Eigen::VectorXcd::Unit(g.order, x)});
    }
    return make_frame_pair(g, std::move(fs), std::move(vs), p, AmbientNorm::coordinate(p.p));
}

FramePair pair_from_generator(const FiniteGroup& g, const GFunctional& f, const GVector& tau,
                              const std::vector<LinOp>& rep_ops, PNorm p, AmbientNorm ambient) {
    if (static_cast<int>(rep_ops.size()) != g.order)
        throw DimensionMismatchError("representation family size must equal the group order");
    std::vector<GFunctional> fs;
    std::vector<GVector> vs;
    for (int x = 0; x < g.order; ++x) {
        fs.push_back(GFunctional{rep_ops[static_cast<size_t>(g.inv(x))].transpose() * f.coeffs});
        vs.push_back(GVector{rep_ops[static_cast<size_t>(x)] * tau.coeffs});
    }
    return make_frame_pair(g, std::move(fs), std::move(vs), p, ambient);
}

FramePair pair_from_projection(const FiniteGroup& g, const LinOp& idempotent, PNorm p) {
    const int n = g.order;
    if (idempotent.rows() != n || idempotent.cols() != n)
        throw DimensionMismatchError("idempotent must act on ell^p(G)");
    if (max_abs(idempotent * idempotent - idempotent) > scaled(kDefaultTolerance, max_abs(idempotent)))
        throw std::invalid_argument("matrix is not idempotent");

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(idempotent, Eigen::ComputeFullU);
    const auto& sv = svd.singularValues();
    int m = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > kInvertibilityRatio * sv(0)) ++m;
    if (m == 0) throw std::invalid_argument("zero projection has no frame pair");

    const Eigen::MatrixXcd basis = svd.matrixU().leftCols(m);  // range(Q), orthonormal
    const Eigen::MatrixXcd back = basis.adjoint() * idempotent;

    std::vector<GFunctional> fs;
    std::vector<GVector> vs;
    for (int x = 0; x < n; ++x) {
        fs.push_back(GFunctional{basis.row(x).transpose()});
        vs.push_back(GVector{back.col(x)});
    }
    return make_frame_pair(g, std::move(fs), std::move(vs), p, AmbientNorm::pullback());
}

LinOp analysis_operator(const FramePair& pair) {
    LinOp m(pair.group.order, pair.ambient_dim());
    for (int x = 0; x < pair.group.order; ++x)
        m.row(x) = pair.functionals[static_cast<size_t>(x)].coeffs.transpose();
    return m;
}

LinOp synthesis_operator(const FramePair& pair) {
    LinOp m(pair.ambient_dim(), pair.group.order);
    for (int x = 0; x < pair.group.order; ++x)
        m.col(x) = pair.vectors[static_cast<size_t>(x)].coeffs;
    return m;
}

LinOp gramian(const FramePair& pair) { return analysis_operator(pair) * synthesis_operator(pair); }

VerificationReport verify_p_usf(const FramePair& pair, double tol, uint64_t seed) {
    VerificationReport rep;
    rep.check = "check-pusf";
    rep.provenance.group = describe(pair.group);
    rep.provenance.tolerance = tol;
    rep.provenance.seed = seed;

    const int m = pair.ambient_dim();
    const LinOp theta_f = analysis_operator(pair);
    const LinOp theta_tau = synthesis_operator(pair);
    const double mag = std::max({1.0, max_abs(theta_f), max_abs(theta_tau)});

    // (1) reconstruction theta_tau theta_f = I on the ambient space
    const LinOp recon = theta_tau * theta_f - LinOp::Identity(m, m);
    double recon_res = 0.0;
    int worst_col = pair.group.identity < m ? pair.group.identity : 0;
    recon_res = recon.col(worst_col).cwiseAbs().maxCoeff();
    for (int j = 0; j < m; ++j) {
        const double r = recon.col(j).cwiseAbs().maxCoeff();
        if (r > recon_res) {
            recon_res = r;
            worst_col = j;
        }
    }
    rep.residuals["reconstruction"] = recon_res;
    const bool recon_ok = recon_res <= scaled(tol, mag * mag);
    if (!recon_ok)
        rep.witnesses["reconstruction_witness"] =
            to_witness(Eigen::VectorXcd::Unit(m, worst_col));

    // (2) analysis operator is a p-isometry from the ambient space
    const IsometrySubCheck iso = check_analysis_isometry(pair, theta_f, tol, seed);
    rep.residuals["analysis_isometry"] = iso.residual;
    if (iso.witness) rep.witnesses["isometry_witness"] = to_witness(*iso.witness);

    // (3) Gramian idempotency
    const LinOp gram = theta_f * theta_tau;
    const double idem = max_abs(gram * gram - gram);
    rep.residuals["gramian_idempotency"] = idem;
    const bool idem_ok = idem <= scaled(tol, mag * mag * mag * mag);

    rep.set(recon_ok && iso.ok && idem_ok);
    return rep;
}

std::optional<GroupMatrixWitness> is_group_matrix(const FiniteGroup& g, const LinOp& m,
                                                  double tol) {
    if (m.rows() != g.order || m.cols() != g.order)
        throw DimensionMismatchError("matrix size must equal the group order");

    Eigen::VectorXcd nu(g.order);
    for (int h = 0; h < g.order; ++h) nu[h] = m(g.identity, h);

    const double tol_eff = scaled(tol, max_abs(m));
    for (int a = 0; a < g.order; ++a)
        for (int b = 0; b < g.order; ++b)
            if (std::abs(m(a, b) - nu[g.mul(g.inv(a), b)]) > tol_eff) return std::nullopt;
    return GroupMatrixWitness{std::move(nu)};
}

VerificationReport check_shift_invariance(const FramePair& pair, double tol) {
    VerificationReport rep;
    rep.check = "shift-invariance";
    rep.provenance.group = describe(pair.group);
    rep.provenance.tolerance = tol;

    const FiniteGroup& g = pair.group;
    const LinOp gram = gramian(pair);
    const double tol_eff = scaled(tol, max_abs(gram));

    double worst = 0.0;
    std::vector<int64_t> witness;
    for (int u = 0; u < g.order; ++u)
        for (int a = 0; a < g.order; ++a)
            for (int b = 0; b < g.order; ++b) {
                const double dev = std::abs(gram(g.mul(u, a), g.mul(u, b)) - gram(a, b));
                if (dev > worst) {
                    worst = dev;
                    witness = {u, a, b};
                }
            }
    rep.residuals["max_shift_deviation"] = worst;
    const bool invariant = worst <= tol_eff;

    const bool accepted = is_group_matrix(g, gram, tol).has_value();
    rep.residuals["group_matrix_agreement"] = (invariant == accepted) ? 0.0 : 1.0;

    rep.set(invariant && invariant == accepted);
    if (!invariant) rep.witnesses["shift_witness"] = witness;
    return rep;
}

RepresentationFamily build_representation(const FramePair& pair, double tol, uint64_t seed) {
    VerificationReport usf = verify_p_usf(pair, tol, seed);
    if (!usf.passed()) throw PreconditionFailedError("pair is not a verified p-USF", usf);
    VerificationReport shift = check_shift_invariance(pair, tol);
    if (!shift.passed())
        throw PreconditionFailedError("Gramian is not shift-invariant", shift);

    RebuildResult result = rebuild(pair, tol, seed);
    if (!result.ok)
        throw std::logic_error("representation rebuild violated its postconditions");
    return std::move(result.rep);
}

VerificationReport check_representation_rebuild(const FramePair& pair, double tol,
                                                uint64_t seed) {
    VerificationReport rep;
    rep.check = "representation-rebuild";
    rep.provenance.group = describe(pair.group);
    rep.provenance.tolerance = tol;
    rep.provenance.seed = seed;

    VerificationReport usf = verify_p_usf(pair, tol, seed);
    if (!usf.passed()) {
        rep.set(false);
        rep.residuals = usf.residuals;
        rep.witnesses = usf.witnesses;
        rep.residuals["precondition_p_usf"] = 1.0;
        return rep;
    }
    VerificationReport shift = check_shift_invariance(pair, tol);
    if (!shift.passed()) {
        rep.set(false);
        rep.residuals = shift.residuals;
        rep.witnesses = shift.witnesses;
        rep.residuals["precondition_shift_invariance"] = 1.0;
        return rep;
    }

    RebuildResult result = rebuild(pair, tol, seed);
    rep.residuals = result.residuals;
    rep.set(result.ok);
    return rep;
}

VerificationReport check_gramian_commutes_left_regular(const FramePair& pair, double tol) {
    VerificationReport rep;
    rep.check = "gramian-commutes-left-regular";
    rep.provenance.group = describe(pair.group);
    rep.provenance.tolerance = tol;

    const LinOp gram = gramian(pair);
    double worst = 0.0;
    int witness = 0;
    for (int x = 0; x < pair.group.order; ++x) {
        const LinOp lam = left_regular(pair.group, x);
        const double dev = max_abs(lam * gram - gram * lam);
        if (dev > worst) {
            worst = dev;
            witness = x;
        }
    }
    rep.residuals["max_commutator"] = worst;
    rep.set(worst <= scaled(tol, max_abs(gram)));
    if (!rep.passed()) rep.witnesses["element"] = std::vector<int64_t>{witness};
    return rep;
}

std::optional<RightRegularDecomposition> gramian_right_regular_decomposition(
    const FramePair& pair, double tol, const RepresentationFamily* rep) {
    const FiniteGroup& g = pair.group;
    const LinOp gram = gramian(pair);

    RightRegularDecomposition out;
    out.eta.resize(g.order);
    for (int x = 0; x < g.order; ++x) out.eta[x] = gram(g.identity, x);

    LinOp sum = LinOp::Zero(g.order, g.order);
    for (int x = 0; x < g.order; ++x) sum += out.eta[x] * right_regular(g, x);
    out.residual = max_abs(gram - sum);
    if (out.residual > scaled(tol, max_abs(gram))) return std::nullopt;

    if (rep != nullptr) {
        const int e = g.identity;
        for (int x = 0; x < g.order; ++x) {
            const Complex expected =
                apply_functional(pair.functionals[e], rep->op(x) * pair.vectors[e].coeffs);
            out.generator_crosscheck =
                std::max(out.generator_crosscheck, std::abs(out.eta[x] - expected));
        }
    }
    return out;
}

VerificationReport check_intertwining(const FramePair& pair, const RepresentationFamily& rep,
                                      double tol) {
    VerificationReport report;
    report.check = "intertwining";
    report.provenance.group = describe(pair.group);
    report.provenance.tolerance = tol;

    if (rep.size() != pair.group.order)
        throw DimensionMismatchError("representation family size must equal the group order");

    const LinOp theta_f = analysis_operator(pair);
    double worst = 0.0;
    int witness = 0;
    for (int x = 0; x < pair.group.order; ++x) {
        const double dev = max_abs(left_regular(pair.group, x) * theta_f - theta_f * rep.op(x));
        if (dev > worst) {
            worst = dev;
            witness = x;
        }
    }
    report.residuals["max_intertwining"] = worst;
    report.set(worst <= scaled(tol, max_abs(theta_f)));
    if (!report.passed()) report.witnesses["element"] = std::vector<int64_t>{witness};
    return report;
}

FramePair orbit_pair(const FramePair& pair, const RepresentationFamily& rep, const LinOp& u,
                     OrbitMode mode, double tol, uint64_t seed) {
    const int m = pair.ambient_dim();
    if (u.rows() != m || u.cols() != m)
        throw DimensionMismatchError("orbit operator must act on the ambient space");

    // Ambient isometry check; exact when the coordinate norm matches p at
    // full dimension, sampled otherwise.
    if (pair.ambient.kind == AmbientNorm::Kind::Coordinate && pair.ambient.q == pair.p.p &&
        m == pair.group.order) {
        const IsometryVerdict v = classify_lp_isometry(u, pair.p, tol);
        if (!v.isometry)
            throw NotIsometryError("orbit operator is not an ell^p isometry (deviation " +
                                   std::to_string(v.deviation) + ")");
    } else {
        if (!is_invertible(u)) throw NotInvertibleError("orbit operator is singular");
        const LinOp theta_f = analysis_operator(pair);
        const double dev = ambient_operator_deviation(pair, theta_f, u, seed);
        if (dev > scaled(tol, max_abs(u)))
            throw NotIsometryError("orbit operator fails the sampled ambient isometry check");
    }

    const std::vector<LinOp> first = commutant(rep.ops, tol);
    const std::vector<LinOp> space =
        (mode == OrbitMode::Commutant) ? first : commutant(first, tol);
    const double residual = membership_residual(u, space);
    if (residual > scaled(tol, 1.0))
        throw NotInCommutantError("orbit operator lies outside the required commutant (residual " +
                                  std::to_string(residual) + ")");

    const LinOp u_inv = u.partialPivLu().solve(LinOp::Identity(m, m));
    const GFunctional f_new{u_inv.transpose() * pair.functionals[pair.group.identity].coeffs};
    const GVector tau_new{u * pair.vectors[pair.group.identity].coeffs};

    FramePair out = pair_from_generator(pair.group, f_new, tau_new, rep.ops, pair.p, pair.ambient);

    if (!verify_p_usf(out, tol, seed).passed() || !check_shift_invariance(out, tol).passed())
        throw std::logic_error("orbit pair failed its re-verification");
    return out;
}

}  // namespace gframe
