#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace gframe {

enum class Verdict { Pass, Fail, NotApplicable };

// A witness is either a tuple of indices (group elements, lattice points,
// basis positions) or a coefficient vector.
using Witness = std::variant<std::vector<int64_t>, std::vector<std::complex<double>>>;

struct Provenance {
    std::string group;
    double tolerance = 1e-9;
    uint64_t seed = 0;
};

// Structured verdict of one theorem-level check. Every residual that was
// measured is recorded under a stable name; a failing check always carries
// at least one witness or an above-threshold residual.
struct VerificationReport {
    std::string check;
    Verdict verdict = Verdict::NotApplicable;
    std::map<std::string, double> residuals;
    std::map<std::string, Witness> witnesses;
    Provenance provenance;

    bool passed() const { return verdict == Verdict::Pass; }
    void set(bool ok) { verdict = ok ? Verdict::Pass : Verdict::Fail; }
};

// Line-oriented "key: value" rendering; first line is "PASS <check>" or
// "FAIL <check>".
std::string to_text(const VerificationReport& report);

// Machine rendering: a single JSON document (an array of report objects)
// with fixed field names and floating values printed with 17 significant
// digits. Byte-identical for identical inputs.
std::string to_machine(const std::vector<VerificationReport>& reports);

std::string verdict_name(Verdict v);

}  // namespace gframe
