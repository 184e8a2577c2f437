#include "gframe/lp_ops.hpp"

#include <algorithm>
#include <cmath>

#include "gframe/errors.hpp"
#include "gframe/rng.hpp"

namespace gframe {

namespace {

bool all_finite(const Eigen::VectorXcd& v) {
    for (int i = 0; i < v.size(); ++i)
        if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag())) return false;
    return true;
}

double max_abs(const LinOp& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

GVector make_gvector(Eigen::VectorXcd coeffs) {
    if (!all_finite(coeffs)) throw std::invalid_argument("vector has non-finite entries");
    return GVector{std::move(coeffs)};
}

GFunctional make_gfunctional(Eigen::VectorXcd coeffs) {
    if (!all_finite(coeffs)) throw std::invalid_argument("functional has non-finite entries");
    return GFunctional{std::move(coeffs)};
}

PNorm::PNorm(double p_) : p(p_) {
    if (!(p_ >= 1.0) || !std::isfinite(p_))
        throw std::invalid_argument("p must be finite and >= 1");
}

double q_norm(const Eigen::VectorXcd& x, double q) {
    double acc = 0.0;
    for (int i = 0; i < x.size(); ++i) acc += std::pow(std::abs(x[i]), q);
    return std::pow(acc, 1.0 / q);
}

double p_norm(const GVector& x, PNorm p) { return q_norm(x.coeffs, p.p); }

LinOp left_regular(const FiniteGroup& g, int elem) {
    LinOp m = LinOp::Zero(g.order, g.order);
    for (int h = 0; h < g.order; ++h) m(g.mul(elem, h), h) = 1.0;
    return m;
}

LinOp right_regular(const FiniteGroup& g, int elem) {
    LinOp m = LinOp::Zero(g.order, g.order);
    for (int h = 0; h < g.order; ++h) m(g.mul(h, g.inv(elem)), h) = 1.0;
    return m;
}

std::vector<LinOp> left_regular_family(const FiniteGroup& g) {
    std::vector<LinOp> out;
    out.reserve(g.order);
    for (int x = 0; x < g.order; ++x) out.push_back(left_regular(g, x));
    return out;
}

std::vector<LinOp> right_regular_family(const FiniteGroup& g) {
    std::vector<LinOp> out;
    out.reserve(g.order);
    for (int x = 0; x < g.order; ++x) out.push_back(right_regular(g, x));
    return out;
}

LinOp j_involution(const FiniteGroup& g) {
    LinOp m = LinOp::Zero(g.order, g.order);
    for (int x = 0; x < g.order; ++x) m(g.inv(x), x) = 1.0;
    return m;
}

LinOp phi_conjugate(const FiniteGroup& g, const LinOp& a) {
    if (a.rows() != g.order || a.cols() != g.order)
        throw DimensionMismatchError("operator does not act on ell^p(G)");
    const LinOp j = j_involution(g);
    return j * a * j;
}

Eigen::VectorXcd vectorize(const LinOp& m) {
    return Eigen::Map<const Eigen::VectorXcd>(m.data(), m.size());
}

std::vector<LinOp> commutant(const std::vector<LinOp>& ops, double tol) {
    if (ops.empty()) throw std::invalid_argument("commutant of an empty operator list");
    const int n = static_cast<int>(ops.front().rows());
    for (const auto& a : ops)
        if (a.rows() != n || a.cols() != n)
            throw DimensionMismatchError("operators must share a square dimension");

    // vec(TA - AT) = (A^T kron I - I kron A) vec(T)
    Eigen::MatrixXcd stacked(static_cast<Eigen::Index>(ops.size()) * n * n, n * n);
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
    for (size_t k = 0; k < ops.size(); ++k) {
        const LinOp& a = ops[k];
        Eigen::MatrixXcd block(n * n, n * n);
        for (int bc = 0; bc < n; ++bc)
            for (int br = 0; br < n; ++br)
                block.block(br * n, bc * n, n, n) =
                    a.transpose()(br, bc) * id - (br == bc ? a : Eigen::MatrixXcd::Zero(n, n));
        stacked.middleRows(static_cast<Eigen::Index>(k) * n * n, n * n) = block;
    }

    Eigen::BDCSVD<Eigen::MatrixXcd> svd(stacked, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double cutoff = (sv.size() ? sv(0) : 0.0) * tol;
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > cutoff) ++rank;

    std::vector<LinOp> basis;
    basis.reserve(n * n - rank);
    for (int i = rank; i < n * n; ++i) {
        Eigen::VectorXcd col = svd.matrixV().col(i);
        basis.push_back(Eigen::Map<const LinOp>(col.data(), n, n));
    }
    return basis;
}

Eigen::MatrixXcd basis_matrix(const std::vector<LinOp>& ops) {
    if (ops.empty()) return Eigen::MatrixXcd(0, 0);
    Eigen::MatrixXcd m(ops.front().size(), static_cast<Eigen::Index>(ops.size()));
    for (size_t k = 0; k < ops.size(); ++k) m.col(static_cast<Eigen::Index>(k)) = vectorize(ops[k]);
    return m;
}

double membership_residual(const LinOp& m, const std::vector<LinOp>& space) {
    if (space.empty()) return max_abs(m);
    const Eigen::MatrixXcd basis = basis_matrix(space);
    const Eigen::VectorXcd target = vectorize(m);
    const Eigen::VectorXcd coeffs =
        basis.completeOrthogonalDecomposition().solve(target);
    const double res = (basis * coeffs - target).cwiseAbs().maxCoeff();
    return res / std::max(1.0, max_abs(m));
}

double containment_residual(const std::vector<LinOp>& sub, const std::vector<LinOp>& space) {
    double worst = 0.0;
    for (const auto& m : sub) worst = std::max(worst, membership_residual(m, space));
    return worst;
}

VerificationReport check_commutation_theorem(const FiniteGroup& g, double tol) {
    VerificationReport rep;
    rep.check = "commutation-theorem";
    rep.provenance.group = describe(g);
    rep.provenance.tolerance = tol;
    if (g.order > 16) throw std::invalid_argument("group order exceeds the commutant limit (16)");

    const auto lambda = left_regular_family(g);
    const auto rho = right_regular_family(g);

    const auto lambda_c = commutant(lambda, tol);
    const auto rho_c = commutant(rho, tol);
    const auto lambda_cc = commutant(lambda_c, tol);
    const auto rho_cc = commutant(rho_c, tol);

    rep.witnesses["dims"] = std::vector<int64_t>{
        static_cast<int64_t>(lambda_c.size()), static_cast<int64_t>(rho_c.size()),
        static_cast<int64_t>(lambda_cc.size()), static_cast<int64_t>(rho_cc.size())};

    const double r1 = containment_residual(lambda_c, rho_cc);
    const double r2 = containment_residual(rho_cc, lambda_c);
    const double r3 = containment_residual(rho_c, lambda_cc);
    const double r4 = containment_residual(lambda_cc, rho_c);
    rep.residuals["left_commutant_in_right_double"] = r1;
    rep.residuals["right_double_in_left_commutant"] = r2;
    rep.residuals["right_commutant_in_left_double"] = r3;
    rep.residuals["left_double_in_right_commutant"] = r4;

    rep.set(lambda_c.size() == rho_cc.size() && rho_c.size() == lambda_cc.size() &&
            std::max({r1, r2, r3, r4}) <= tol);
    return rep;
}

bool is_invertible(const LinOp& m, double ratio) {
    if (m.rows() != m.cols() || m.rows() == 0) return false;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    const auto& sv = svd.singularValues();
    return sv(sv.size() - 1) > ratio * sv(0);
}

std::vector<Eigen::VectorXcd> probe_vectors(int dim, uint64_t seed) {
    std::vector<Eigen::VectorXcd> probes;
    for (int i = 0; i < dim; ++i) probes.push_back(Eigen::VectorXcd::Unit(dim, i));
    for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j < dim; ++j)
            probes.push_back(Eigen::VectorXcd::Unit(dim, i) + Eigen::VectorXcd::Unit(dim, j));
    std::mt19937_64 rng(seed);
    for (int k = 0; k < 64; ++k) probes.push_back(random_vector(dim, rng));
    return probes;
}

IsometryVerdict classify_lp_isometry(const LinOp& u, PNorm p, double tol) {
    if (u.rows() != u.cols()) throw NotInvertibleError("operator is not square");
    if (!is_invertible(u)) throw NotInvertibleError("operator fails the conditioned invertibility test");

    const int n = static_cast<int>(u.rows());
    bool ok;
    if (p.p == 2.0) {
        ok = (u.adjoint() * u - LinOp::Identity(n, n)).cwiseAbs().maxCoeff() <=
             tol * std::max(1.0, max_abs(u));
    } else {
        // Generalized permutation with unimodular entries (Banach-Lamperti form).
        const double zero_cut = kStructuralZeroRatio * max_abs(u);
        ok = true;
        std::vector<int> col_hits(n, 0);
        for (int r = 0; r < n && ok; ++r) {
            int hits = 0;
            for (int c = 0; c < n; ++c) {
                const double a = std::abs(u(r, c));
                if (a > zero_cut) {
                    ++hits;
                    ++col_hits[c];
                    if (std::abs(a - 1.0) > tol) ok = false;
                }
            }
            if (hits != 1) ok = false;
        }
        if (ok)
            for (int c = 0; c < n; ++c)
                if (col_hits[c] != 1) ok = false;
    }

    IsometryVerdict verdict;
    verdict.isometry = ok;
    if (!ok) {
        double worst = -1.0;
        for (const auto& x : probe_vectors(n)) {
            const double dev = std::abs(q_norm(u * x, p.p) - q_norm(x, p.p));
            if (dev > worst) {
                worst = dev;
                verdict.witness = x;
            }
        }
        verdict.deviation = worst;
    }
    return verdict;
}

}  // namespace gframe
