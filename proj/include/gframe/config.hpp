#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gframe/gabor.hpp"
#include "gframe/pusf.hpp"

namespace gframe {

// One validated job: a group, an optional pair / lattice / operator, a
// command name, and tolerance/seed overrides.
struct JobConfig {
    std::optional<AbelianGroup> abelian;
    std::optional<FiniteGroup> table_group;

    std::string command;
    double p = 2.0;

    std::optional<GFunctional> f;
    std::optional<GVector> tau;
    std::optional<std::vector<GFunctional>> functional_family;
    std::optional<std::vector<GVector>> vector_family;

    std::vector<TFPoint> lattice_generators;
    bool lattice_given = false;

    std::optional<LinOp> u;  // orbit-pair operator
    OrbitMode mode = OrbitMode::Commutant;

    std::optional<GVector> x;  // inversion input

    double tolerance = kDefaultTolerance;
    bool tolerance_overridden = false;
    uint64_t seed = kDefaultSeed;
    bool verify_adjoint_by_matrices = false;

    const FiniteGroup& the_group() const;
    bool has_abelian() const { return abelian.has_value(); }
};

// Parses and validates a JSON job description. Throws ParseError on malformed
// JSON and ValidationError on out-of-range fields (including group tables
// that fail the group laws).
JobConfig parse_config(const std::string& text);

// Dispatches to the named check. Throws UnknownCommandError for a command
// name outside list_commands().
std::vector<VerificationReport> run_command(const JobConfig& cfg);

std::vector<std::string> list_commands();

// Reads the verdicts back out of a machine-format document.
std::vector<Verdict> parse_machine_verdicts(const std::string& machine_doc);

}  // namespace gframe
