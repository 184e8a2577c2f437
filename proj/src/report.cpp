#include "gframe/report.hpp"

#include <cstdio>
#include <sstream>

namespace gframe {

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    return out;
}

void append_witness(std::ostringstream& os, const Witness& w) {
    if (const auto* idx = std::get_if<std::vector<int64_t>>(&w)) {
        os << "[";
        for (size_t i = 0; i < idx->size(); ++i) {
            if (i) os << ",";
            os << (*idx)[i];
        }
        os << "]";
    } else {
        const auto& vec = std::get<std::vector<std::complex<double>>>(w);
        os << "[";
        for (size_t i = 0; i < vec.size(); ++i) {
            if (i) os << ",";
            os << "[" << fmt_double(vec[i].real()) << "," << fmt_double(vec[i].imag()) << "]";
        }
        os << "]";
    }
}

void append_report(std::ostringstream& os, const VerificationReport& r) {
    os << "{\"check\":\"" << json_escape(r.check) << "\",";
    os << "\"verdict\":\"" << verdict_name(r.verdict) << "\",";
    os << "\"residuals\":{";
    bool first = true;
    for (const auto& [k, v] : r.residuals) {
        if (!first) os << ",";
        first = false;
        os << "\"" << json_escape(k) << "\":" << fmt_double(v);
    }
    os << "},\"witnesses\":{";
    first = true;
    for (const auto& [k, w] : r.witnesses) {
        if (!first) os << ",";
        first = false;
        os << "\"" << json_escape(k) << "\":";
        append_witness(os, w);
    }
    os << "},\"provenance\":{\"group\":\"" << json_escape(r.provenance.group)
       << "\",\"tolerance\":" << fmt_double(r.provenance.tolerance)
       << ",\"seed\":" << r.provenance.seed << "}}";
}

}  // namespace

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        default: return "not-applicable";
    }
}

std::string to_text(const VerificationReport& r) {
    std::ostringstream os;
    switch (r.verdict) {
        case Verdict::Pass: os << "PASS " << r.check << "\n"; break;
        case Verdict::Fail: os << "FAIL " << r.check << "\n"; break;
        default: os << "N/A " << r.check << "\n"; break;
    }
    os << "group: " << r.provenance.group << "\n";
    os << "tolerance: " << fmt_double(r.provenance.tolerance) << "\n";
    os << "seed: " << r.provenance.seed << "\n";
    for (const auto& [k, v] : r.residuals) os << "residual." << k << ": " << fmt_double(v) << "\n";
    for (const auto& [k, w] : r.witnesses) {
        std::ostringstream ws;
        append_witness(ws, w);
        os << "witness." << k << ": " << ws.str() << "\n";
    }
    return os.str();
}

std::string to_machine(const std::vector<VerificationReport>& reports) {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < reports.size(); ++i) {
        if (i) os << ",";
        append_report(os, reports[i]);
    }
    os << "]\n";
    return os.str();
}

}  // namespace gframe
