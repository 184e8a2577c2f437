#include "gframe/config.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "gframe/errors.hpp"
#include "gframe/rng.hpp"

namespace gframe {

namespace {

using nlohmann::json;

Eigen::VectorXcd parse_complex_array(const json& arr, const std::string& field, int expected_len) {
    if (!arr.is_array()) throw ValidationError(field, "expected an array of [re, im] pairs");
    if (expected_len >= 0 && static_cast<int>(arr.size()) != expected_len)
        throw ValidationError(field, "length must equal the group order");
    Eigen::VectorXcd out(arr.size());
    for (size_t i = 0; i < arr.size(); ++i) {
        const json& entry = arr[i];
        if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number())
            throw ValidationError(field, "entry " + std::to_string(i) + " is not a [re, im] pair");
        out[static_cast<Eigen::Index>(i)] = Complex(entry[0].get<double>(), entry[1].get<double>());
    }
    return out;
}

void parse_group(const json& doc, JobConfig& cfg) {
    if (!doc.contains("group") || !doc["group"].is_object())
        throw ValidationError("group", "required object with 'abelian' or 'table'");
    const json& grp = doc["group"];
    if (grp.contains("abelian")) {
        if (!grp["abelian"].is_array() || grp["abelian"].empty())
            throw ValidationError("group.abelian", "expected a nonempty array of cyclic orders");
        std::vector<int> orders;
        for (const json& v : grp["abelian"]) {
            if (!v.is_number_integer() || v.get<int>() < 1)
                throw ValidationError("group.abelian", "cyclic orders must be positive integers");
            orders.push_back(v.get<int>());
        }
        cfg.abelian = build_abelian(orders);
    } else if (grp.contains("table")) {
        if (!grp["table"].is_array())
            throw ValidationError("group.table", "expected a square array of arrays");
        std::vector<std::vector<int>> table;
        for (const json& row : grp["table"]) {
            if (!row.is_array()) throw ValidationError("group.table", "rows must be arrays");
            std::vector<int> r;
            for (const json& v : row) {
                if (!v.is_number_integer())
                    throw ValidationError("group.table", "entries must be integers");
                r.push_back(v.get<int>());
            }
            table.push_back(std::move(r));
        }
        try {
            cfg.table_group = build_group_from_table(table);
        } catch (const NotAGroupError& e) {
            const auto& w = e.witness();
            throw ValidationError("group.table",
                                  std::string(e.what()) + " (witness " + std::to_string(w[0]) +
                                      "," + std::to_string(w[1]) + "," + std::to_string(w[2]) + ")");
        }
    } else {
        throw ValidationError("group", "must contain either 'abelian' or 'table'");
    }
}

void parse_pair(const json& doc, JobConfig& cfg) {
    const int n = cfg.the_group().order;
    if (doc.contains("pair")) {
        const json& pr = doc["pair"];
        if (!pr.is_object()) throw ValidationError("pair", "expected an object");
        if (pr.contains("preset")) {
            const std::string preset = pr["preset"].get<std::string>();
            if (preset == "standard") {
                Eigen::VectorXcd f = Eigen::VectorXcd::Unit(n, cfg.the_group().identity);
                cfg.f = GFunctional{f};
                cfg.tau = GVector{f};
            } else if (preset.rfind("seeded-random:", 0) == 0) {
                uint64_t seed = 0;
                try {
                    seed = std::stoull(preset.substr(14));
                } catch (const std::exception&) {
                    throw ValidationError("pair.preset", "seed must be an unsigned integer");
                }
                std::mt19937_64 rng(seed);
                cfg.f = GFunctional{random_vector(n, rng)};
                cfg.tau = GVector{random_vector(n, rng)};
            } else {
                throw ValidationError("pair.preset", "unknown preset '" + preset + "'");
            }
        } else {
            if (!pr.contains("f") || !pr.contains("tau"))
                throw ValidationError("pair", "must contain 'f' and 'tau' (or a 'preset')");
            cfg.f = GFunctional{parse_complex_array(pr["f"], "pair.f", n)};
            cfg.tau = GVector{parse_complex_array(pr["tau"], "pair.tau", n)};
        }
    }
    if (doc.contains("families")) {
        const json& fam = doc["families"];
        if (!fam.is_object() || !fam.contains("f") || !fam.contains("tau"))
            throw ValidationError("families", "expected an object with 'f' and 'tau' lists");
        if (static_cast<int>(fam["f"].size()) != n || static_cast<int>(fam["tau"].size()) != n)
            throw ValidationError("families", "family sizes must equal the group order");
        std::vector<GFunctional> fs;
        std::vector<GVector> vs;
        for (int i = 0; i < n; ++i) {
            fs.push_back(GFunctional{
                parse_complex_array(fam["f"][i], "families.f[" + std::to_string(i) + "]", -1)});
            vs.push_back(GVector{
                parse_complex_array(fam["tau"][i], "families.tau[" + std::to_string(i) + "]", -1)});
        }
        cfg.functional_family = std::move(fs);
        cfg.vector_family = std::move(vs);
    }
}

void parse_rest(const json& doc, JobConfig& cfg) {
    const int n = cfg.the_group().order;

    if (doc.contains("p")) {
        if (!doc["p"].is_number()) throw ValidationError("p", "expected a number");
        const double p = doc["p"].get<double>();
        if (!(p >= 1.0) || !std::isfinite(p))
            throw ValidationError("p", "p must be finite and >= 1");
        cfg.p = p;
    }

    if (doc.contains("lattice")) {
        const json& lat = doc["lattice"];
        if (!lat.is_object() || !lat.contains("generators") || !lat["generators"].is_array())
            throw ValidationError("lattice", "expected an object with a 'generators' array");
        size_t i = 0;
        for (const json& gen : lat["generators"]) {
            const std::string field = "lattice.generators[" + std::to_string(i++) + "]";
            if (!gen.is_array() || gen.size() != 2 || !gen[0].is_number_integer() ||
                !gen[1].is_number_integer())
                throw ValidationError(field, "expected an [element, character] index pair");
            const int k = gen[0].get<int>(), c = gen[1].get<int>();
            if (k < 0 || k >= n || c < 0 || c >= n)
                throw ValidationError(field, "index out of range");
            cfg.lattice_generators.push_back({k, c});
        }
        cfg.lattice_given = true;
    }

    if (doc.contains("x")) cfg.x = GVector{parse_complex_array(doc["x"], "x", n)};

    if (doc.contains("u")) {
        const json& u = doc["u"];
        if (!u.is_array() || static_cast<int>(u.size()) != n)
            throw ValidationError("u", "expected o(G) rows");
        LinOp m(n, n);
        for (int r = 0; r < n; ++r)
            m.row(r) = parse_complex_array(u[r], "u[" + std::to_string(r) + "]", n).transpose();
        cfg.u = m;
    }

    if (doc.contains("mode")) {
        const std::string mode = doc["mode"].get<std::string>();
        if (mode == "commutant")
            cfg.mode = OrbitMode::Commutant;
        else if (mode == "double-commutant")
            cfg.mode = OrbitMode::DoubleCommutant;
        else
            throw ValidationError("mode", "expected 'commutant' or 'double-commutant'");
    }

    if (doc.contains("tolerance")) {
        if (!doc["tolerance"].is_number() || doc["tolerance"].get<double>() <= 0.0)
            throw ValidationError("tolerance", "expected a positive number");
        cfg.tolerance = doc["tolerance"].get<double>();
        cfg.tolerance_overridden = true;
    }

    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_unsigned())
            throw ValidationError("seed", "expected an unsigned integer");
        cfg.seed = doc["seed"].get<uint64_t>();
    }
}

const AbelianGroup& require_abelian(const JobConfig& cfg) {
    if (!cfg.abelian)
        throw ValidationError("group", "command '" + cfg.command + "' needs an abelian group");
    return *cfg.abelian;
}

GaborPair require_gabor_pair(const JobConfig& cfg) {
    if (!cfg.f || !cfg.tau)
        throw ValidationError("pair", "command '" + cfg.command + "' needs a pair");
    return make_gabor_pair(require_abelian(cfg), *cfg.f, *cfg.tau);
}

Lattice config_lattice(const JobConfig& cfg) {
    const AbelianGroup& g = require_abelian(cfg);
    return cfg.lattice_given ? lattice_from_generators(g, cfg.lattice_generators)
                             : full_lattice(g);
}

FramePair config_frame_pair(const JobConfig& cfg) {
    const FiniteGroup& g = cfg.the_group();
    const PNorm p(cfg.p);
    if (cfg.functional_family && cfg.vector_family)
        return make_frame_pair(g, *cfg.functional_family, *cfg.vector_family, p,
                               AmbientNorm::coordinate(cfg.p));
    if (!cfg.f || !cfg.tau)
        throw ValidationError("pair", "command '" + cfg.command + "' needs a pair or families");
    // A single (f, tau) generates the family through the left regular
    // representation.
    return pair_from_generator(g, *cfg.f, *cfg.tau, left_regular_family(g), p,
                               AmbientNorm::coordinate(cfg.p));
}

std::vector<std::complex<double>> vec_witness(const Eigen::VectorXcd& v) {
    return {v.data(), v.data() + v.size()};
}

void stamp(VerificationReport& rep, const JobConfig& cfg) {
    rep.provenance.tolerance = cfg.tolerance;
    rep.provenance.seed = cfg.seed;
}

VerificationReport run_group_info(const JobConfig& cfg) {
    const FiniteGroup& g = cfg.the_group();
    VerificationReport rep;
    rep.check = "group-info";
    rep.provenance.group = cfg.abelian ? describe(*cfg.abelian) : describe(g);
    rep.witnesses["order"] = std::vector<int64_t>{g.order};
    rep.witnesses["identity"] = std::vector<int64_t>{g.identity};
    rep.witnesses["abelian"] = std::vector<int64_t>{g.is_abelian() ? 1 : 0};
    rep.witnesses["inverses"] = std::vector<int64_t>(g.inverses.begin(), g.inverses.end());
    rep.set(true);
    return rep;
}

VerificationReport run_orbit_pair(const JobConfig& cfg) {
    VerificationReport rep;
    rep.check = "orbit-pair";
    rep.provenance.group =
        cfg.abelian ? describe(*cfg.abelian) : describe(cfg.the_group());
    if (!cfg.u) throw ValidationError("u", "command 'orbit-pair' needs an operator");

    const FramePair pair = config_frame_pair(cfg);
    try {
        const RepresentationFamily rep_family =
            build_representation(pair, cfg.tolerance, cfg.seed);
        const FramePair moved =
            orbit_pair(pair, rep_family, *cfg.u, cfg.mode, cfg.tolerance, cfg.seed);
        const VerificationReport usf = verify_p_usf(moved, cfg.tolerance, cfg.seed);
        const VerificationReport shift = check_shift_invariance(moved, cfg.tolerance);
        rep.residuals = usf.residuals;
        for (const auto& [k, v] : shift.residuals) rep.residuals[k] = v;
        rep.witnesses["f_new"] =
            vec_witness(moved.functionals[static_cast<size_t>(pair.group.identity)].coeffs);
        rep.witnesses["tau_new"] =
            vec_witness(moved.vectors[static_cast<size_t>(pair.group.identity)].coeffs);
        rep.set(usf.passed() && shift.passed());
    } catch (const PreconditionFailedError&) {
        rep.residuals["precondition_failed"] = 1.0;
        rep.set(false);
    } catch (const NotIsometryError&) {
        rep.residuals["not_isometry"] = 1.0;
        rep.set(false);
    } catch (const NotInCommutantError&) {
        rep.residuals["not_in_commutant"] = 1.0;
        rep.set(false);
    } catch (const NotInvertibleError&) {
        rep.residuals["not_invertible"] = 1.0;
        rep.set(false);
    }
    return rep;
}

VerificationReport run_inversion(const JobConfig& cfg) {
    const AbelianGroup& g = require_abelian(cfg);
    const GaborPair pair = require_gabor_pair(cfg);
    VerificationReport rep;
    rep.check = "inversion";
    rep.provenance.group = describe(g);

    GVector x = cfg.x ? *cfg.x : GVector{random_vector(g.order(), cfg.seed ^ 0x9E3779B9ULL)};
    try {
        const GVector expanded = inversion_expand(g, pair, x, cfg.tolerance);
        const double res = (expanded.coeffs - x.coeffs).cwiseAbs().maxCoeff();
        rep.residuals["reconstruction"] = res;
        const double mag = std::max({1.0, x.coeffs.cwiseAbs().maxCoeff(),
                                     pair.f.coeffs.cwiseAbs().maxCoeff(),
                                     pair.tau.coeffs.cwiseAbs().maxCoeff()});
        rep.set(res <= cfg.tolerance * mag * mag * g.order() * g.order());
    } catch (const VanishingPairingError&) {
        rep.residuals["pairing_modulus"] =
            std::abs((pair.f.coeffs.array() * pair.tau.coeffs.array()).sum());
        rep.set(false);
    }
    return rep;
}

VerificationReport run_adjoint_lattice(const JobConfig& cfg) {
    const AbelianGroup& g = require_abelian(cfg);
    const Lattice lam = config_lattice(cfg);
    const Lattice adj = adjoint_lattice(lam, cfg.verify_adjoint_by_matrices, cfg.tolerance);
    const Lattice back = adjoint_lattice(adj, false, cfg.tolerance);

    VerificationReport rep;
    rep.check = "adjoint-lattice";
    rep.provenance.group = describe(g);
    std::vector<int64_t> pts, adj_pts;
    for (const TFPoint& pt : lam.points) pts.push_back(pt.shift * g.order() + pt.character);
    for (const TFPoint& pt : adj.points) adj_pts.push_back(pt.shift * g.order() + pt.character);
    rep.witnesses["lattice"] = pts;
    rep.witnesses["adjoint"] = adj_pts;
    rep.residuals["lattice_order"] = lam.size();
    rep.residuals["adjoint_order"] = adj.size();
    rep.residuals["involution_restores"] = (back.points == lam.points) ? 0.0 : 1.0;
    rep.set(back.points == lam.points);
    return rep;
}

VerificationReport run_janssen(const JobConfig& cfg) {
    const AbelianGroup& g = require_abelian(cfg);
    const GaborPair pair = require_gabor_pair(cfg);
    const Lattice lam = config_lattice(cfg);
    const JanssenDecomposition dec = janssen_decompose(g, pair, lam, cfg.tolerance);

    VerificationReport rep;
    rep.check = "janssen";
    rep.provenance.group = describe(g);
    rep.residuals["reconstruction"] = dec.residual;
    rep.residuals["hs_crosscheck"] = dec.hs_crosscheck;
    rep.residuals["adjoint_order"] = static_cast<double>(dec.support.size());
    rep.witnesses["coefficients"] = dec.coeffs;
    const double mag = std::max({1.0, pair.f.coeffs.cwiseAbs().maxCoeff(),
                                 pair.tau.coeffs.cwiseAbs().maxCoeff()});
    const double tol_eff = cfg.tolerance * mag * mag * g.order() * g.order();
    rep.set(dec.residual <= tol_eff && dec.hs_crosscheck <= tol_eff);
    return rep;
}

VerificationReport run_gabor_dual(const JobConfig& cfg) {
    const AbelianGroup& g = require_abelian(cfg);
    const GaborPair pair = require_gabor_pair(cfg);
    const Lattice lam = config_lattice(cfg);
    try {
        DualResult dual = canonical_dual(g, pair, lam, cfg.tolerance);
        dual.report.witnesses["phi"] = vec_witness(dual.dual.f.coeffs);
        dual.report.witnesses["omega"] = vec_witness(dual.dual.tau.coeffs);
        return dual.report;
    } catch (const NotAFrameError&) {
        VerificationReport rep;
        rep.check = "gabor-dual";
        rep.provenance.group = describe(g);
        rep.residuals["not_a_frame"] = 1.0;
        rep.set(false);
        return rep;
    }
}

VerificationReport run_ron_shen(const JobConfig& cfg) {
    const AbelianGroup& g = require_abelian(cfg);
    const GaborPair pair = require_gabor_pair(cfg);
    const Lattice lam = config_lattice(cfg);
    try {
        return ron_shen_check(g, pair, lam, cfg.tolerance);
    } catch (const NotAFrameError&) {
        VerificationReport rep;
        rep.check = "ron-shen";
        rep.provenance.group = describe(g);
        rep.residuals["not_a_frame"] = 1.0;
        rep.set(false);
        return rep;
    }
}

}  // namespace

const FiniteGroup& JobConfig::the_group() const {
    if (abelian) return abelian->group;
    if (table_group) return *table_group;
    throw ValidationError("group", "missing group");
}

JobConfig parse_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(e.byte, e.what());
    }
    if (!doc.is_object()) throw ValidationError("", "config must be a JSON object");

    JobConfig cfg;
    parse_group(doc, cfg);
    if (!doc.contains("command") || !doc["command"].is_string())
        throw ValidationError("command", "required string");
    cfg.command = doc["command"].get<std::string>();

    const auto known = list_commands();
    if (std::find(known.begin(), known.end(), cfg.command) == known.end())
        throw UnknownCommandError(cfg.command);

    parse_rest(doc, cfg);
    parse_pair(doc, cfg);
    return cfg;
}

std::vector<std::string> list_commands() {
    return {"group-info",     "character-orthogonality",
            "commutation-theorem", "check-pusf",
            "check-groupframe", "orbit-pair",
            "tf-commutation", "moyal",
            "inversion",      "adjoint-lattice",
            "frame-check",    "gabor-dual",
            "janssen",        "wexler-raz",
            "ron-shen",       "hs-onb"};
}

std::vector<VerificationReport> run_command(const JobConfig& cfg) {
    std::vector<VerificationReport> reports;
    const std::string& cmd = cfg.command;

    if (cmd == "group-info") {
        reports.push_back(run_group_info(cfg));
    } else if (cmd == "character-orthogonality") {
        const double tol = cfg.tolerance_overridden ? cfg.tolerance : 1e-12;
        reports.push_back(check_character_orthogonality(require_abelian(cfg), tol));
    } else if (cmd == "commutation-theorem") {
        if (cfg.the_group().order > 16)
            throw ValidationError("group", "commutation-theorem needs o(G) <= 16");
        reports.push_back(check_commutation_theorem(cfg.the_group(), cfg.tolerance));
    } else if (cmd == "check-pusf") {
        reports.push_back(verify_p_usf(config_frame_pair(cfg), cfg.tolerance, cfg.seed));
    } else if (cmd == "check-groupframe") {
        const FramePair pair = config_frame_pair(cfg);
        reports.push_back(check_shift_invariance(pair, cfg.tolerance));
        VerificationReport gm;
        gm.check = "group-matrix";
        gm.provenance.group = describe(pair.group);
        gm.set(false);
        if (auto witness = is_group_matrix(pair.group, gramian(pair), cfg.tolerance)) {
            gm.set(true);
            gm.witnesses["nu"] = vec_witness(witness->nu);
        }
        reports.push_back(std::move(gm));
        reports.push_back(check_representation_rebuild(pair, cfg.tolerance, cfg.seed));
    } else if (cmd == "orbit-pair") {
        reports.push_back(run_orbit_pair(cfg));
    } else if (cmd == "tf-commutation") {
        reports.push_back(check_tf_commutation(require_abelian(cfg), cfg.tolerance));
    } else if (cmd == "moyal") {
        reports.push_back(moyal_check(require_abelian(cfg), require_gabor_pair(cfg), cfg.tolerance));
    } else if (cmd == "inversion") {
        reports.push_back(run_inversion(cfg));
    } else if (cmd == "adjoint-lattice") {
        reports.push_back(run_adjoint_lattice(cfg));
    } else if (cmd == "frame-check") {
        reports.push_back(
            check_frame(require_abelian(cfg), require_gabor_pair(cfg), config_lattice(cfg),
                        cfg.tolerance));
    } else if (cmd == "gabor-dual") {
        reports.push_back(run_gabor_dual(cfg));
    } else if (cmd == "janssen") {
        reports.push_back(run_janssen(cfg));
    } else if (cmd == "wexler-raz") {
        reports.push_back(wexler_raz_check(require_abelian(cfg), require_gabor_pair(cfg),
                                           config_lattice(cfg), cfg.tolerance));
    } else if (cmd == "ron-shen") {
        reports.push_back(run_ron_shen(cfg));
    } else if (cmd == "hs-onb") {
        if (require_abelian(cfg).order() > 16)
            throw ValidationError("group", "hs-onb needs o(G) <= 16");
        const double tol = cfg.tolerance_overridden ? cfg.tolerance : 1e-12;
        reports.push_back(check_hs_onb(require_abelian(cfg), tol));
    } else {
        throw UnknownCommandError(cmd);
    }

    for (auto& rep : reports) stamp(rep, cfg);
    return reports;
}

std::vector<Verdict> parse_machine_verdicts(const std::string& machine_doc) {
    json doc;
    try {
        doc = json::parse(machine_doc);
    } catch (const json::parse_error& e) {
        throw ParseError(e.byte, e.what());
    }
    if (!doc.is_array()) throw ParseError(0, "machine document must be an array");
    std::vector<Verdict> out;
    for (const json& rep : doc) {
        const std::string v = rep.at("verdict").get<std::string>();
        if (v == "pass")
            out.push_back(Verdict::Pass);
        else if (v == "fail")
            out.push_back(Verdict::Fail);
        else
            out.push_back(Verdict::NotApplicable);
    }
    return out;
}

}  // namespace gframe
