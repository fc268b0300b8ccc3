// Serialization. Bases and density matrices travel as JSON amplitude-pair
// files; reports and tables emit JSON/CSV with every number printed through
// one %.17g formatter, which round-trips doubles exactly and keeps output
// byte-stable across runs and platforms. Parsing uses nlohmann/json.

#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "mubcert/bounds.hpp"
#include "mubcert/linalg.hpp"
#include "mubcert/measure.hpp"
#include "mubcert/mub.hpp"
#include "mubcert/search.hpp"
#include "mubcert/state.hpp"

namespace mubcert {

// Full-precision form: 17 significant digits round-trip any double exactly.
inline std::string g17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

// Display form used by the text renderers (matches the 6-digit precision of
// the quantities the library reproduces).
inline std::string g6(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

namespace detail {

inline std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

inline std::string amplitude_pair(const cxd& z) {
    return "[" + g17(z.real()) + "," + g17(z.imag()) + "]";
}

}  // namespace detail

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write file: " + path);
    out << content;
}

// ---------------------------------------------------------------------------
// Bases files: {"dim": d, "bases": [{"label": str, "vectors": [[[re,im],..],..]}]}
// ---------------------------------------------------------------------------

inline std::string bases_to_json(const MubSet& m) {
    std::string out = "{\n  \"dim\": " + std::to_string(m.dim()) + ",\n  \"bases\": [\n";
    for (int n = 0; n < m.count(); ++n) {
        const OrthonormalBasis& b = m.basis(n);
        out += "    {\"label\": \"" + detail::json_escape(b.label) + "\", \"vectors\": [\n";
        for (int k = 0; k < m.dim(); ++k) {
            out += "      [";
            for (int i = 0; i < m.dim(); ++i) {
                out += detail::amplitude_pair(b.vectors[static_cast<size_t>(k)][i]);
                if (i + 1 < m.dim()) out += ",";
            }
            out += k + 1 < m.dim() ? "],\n" : "]\n";
        }
        out += n + 1 < m.count() ? "    ]},\n" : "    ]}\n";
    }
    out += "  ]\n}\n";
    return out;
}

namespace detail {

inline ComplexVector parse_amplitude_row(const nlohmann::json& row, int d, const char* what) {
    if (!row.is_array() || static_cast<int>(row.size()) != d)
        throw ValidationError(std::string(what) + ": expected " + std::to_string(d) + " amplitude pairs");
    std::vector<cxd> v(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) {
        const nlohmann::json& pair = row[static_cast<size_t>(i)];
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number())
            throw ValidationError(std::string(what) + ": amplitude must be a [re, im] number pair");
        v[static_cast<size_t>(i)] = cxd{pair[0].get<double>(), pair[1].get<double>()};
    }
    return ComplexVector(std::move(v));
}

// Modified Gram-Schmidt within one basis; assumes near-orthonormal input.
inline void gram_schmidt(OrthonormalBasis& basis) {
    for (size_t k = 0; k < basis.vectors.size(); ++k) {
        ComplexVector v = basis.vectors[k];
        for (size_t j = 0; j < k; ++j) {
            const cxd overlap = inner(basis.vectors[j], v);
            for (int i = 0; i < v.dim(); ++i) v[i] -= overlap * basis.vectors[j][i];
        }
        basis.vectors[k] = v.normalized();
    }
}

}  // namespace detail

// Parse and certify a bases file. Files already passing the internal 1e-10
// validation are taken verbatim (so export/parse round-trips bit-exactly);
// files in the (1e-10, 1e-8] band are re-orthonormalized by Gram-Schmidt and
// must then pass at 1e-10; anything worse is rejected.
inline MubSet parse_bases_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("bases file: JSON parse error: ") + e.what());
    }
    if (!j.is_object() || !j.contains("dim") || !j.contains("bases") || !j["dim"].is_number_integer())
        throw ValidationError("bases file: expected {\"dim\": int, \"bases\": [...]}");
    const int d = j["dim"].get<int>();
    if (d < 2) throw ValidationError("bases file: dim must be >= 2");
    if (!j["bases"].is_array() || j["bases"].empty())
        throw ValidationError("bases file: need at least one basis");

    std::vector<OrthonormalBasis> bases;
    for (const nlohmann::json& jb : j["bases"]) {
        if (!jb.is_object() || !jb.contains("vectors") || !jb["vectors"].is_array() ||
            static_cast<int>(jb["vectors"].size()) != d)
            throw ValidationError("bases file: each basis needs a d-row \"vectors\" array");
        OrthonormalBasis basis;
        basis.label = jb.value("label", "basis_" + std::to_string(bases.size() + 1));
        for (const nlohmann::json& row : jb["vectors"])
            basis.vectors.push_back(detail::parse_amplitude_row(row, d, "bases file"));
        bases.push_back(std::move(basis));
    }

    for (OrthonormalBasis& b : bases) fix_global_phases(b);
    const MubValidationReport raw = validate_mub_set(bases);
    if (raw.pass(kUnbiasednessTol)) return MubSet::from_bases(std::move(bases));
    if (!raw.pass(kIngestionTol)) {
        throw ValidationError("bases file: fails the 1e-8 ingestion tolerance (unbiasedness deviation " +
                              std::to_string(raw.max_unbiasedness_deviation) + ", orthonormality defect " +
                              std::to_string(raw.max_orthonormality_defect) + ")");
    }
    for (OrthonormalBasis& b : bases) {
        detail::gram_schmidt(b);
        fix_global_phases(b);
    }
    return MubSet::from_bases(std::move(bases));  // re-checked at 1e-10
}

inline MubSet load_bases_file(const std::string& path) { return parse_bases_json(read_file(path)); }

// ---------------------------------------------------------------------------
// Density matrices: {"dim": d, "rho": [[[re,im],...],...]}
// ---------------------------------------------------------------------------

inline std::string density_to_json(const DensityMatrix& rho) {
    std::string out = "{\n  \"dim\": " + std::to_string(rho.dim()) + ",\n  \"rho\": [\n";
    for (int i = 0; i < rho.dim(); ++i) {
        out += "    [";
        for (int j = 0; j < rho.dim(); ++j) {
            out += detail::amplitude_pair(rho.matrix()(i, j));
            if (j + 1 < rho.dim()) out += ",";
        }
        out += i + 1 < rho.dim() ? "],\n" : "]\n";
    }
    out += "  ]\n}\n";
    return out;
}

inline DensityMatrix parse_density_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("density file: JSON parse error: ") + e.what());
    }
    if (!j.is_object() || !j.contains("dim") || !j.contains("rho") || !j["dim"].is_number_integer())
        throw ValidationError("density file: expected {\"dim\": int, \"rho\": [...]}");
    const int d = j["dim"].get<int>();
    if (d < 1 || !j["rho"].is_array() || static_cast<int>(j["rho"].size()) != d)
        throw ValidationError("density file: rho must be a d x d matrix");
    ComplexMatrix m(d);
    for (int i = 0; i < d; ++i) {
        const ComplexVector row = detail::parse_amplitude_row(j["rho"][static_cast<size_t>(i)], d, "density file");
        for (int k = 0; k < d; ++k) m(i, k) = row[k];
    }
    return DensityMatrix(std::move(m));
}

// ---------------------------------------------------------------------------
// Probability tables
// ---------------------------------------------------------------------------

// CSV layout: rows = observables, columns = outcomes, full precision.
inline std::string table_to_csv(const ProbabilityTable& t) {
    std::string out;
    for (int k = 0; k < t.dim(); ++k) {
        out += "p" + std::to_string(k + 1);
        out += k + 1 < t.dim() ? "," : "\n";
    }
    for (int n = 0; n < t.n_bases(); ++n)
        for (int k = 0; k < t.dim(); ++k) {
            out += g17(t.at(n, k));
            out += k + 1 < t.dim() ? "," : "\n";
        }
    return out;
}

inline std::string table_to_json(const ProbabilityTable& t) {
    std::string out = "[";
    for (int n = 0; n < t.n_bases(); ++n) {
        out += "[";
        for (int k = 0; k < t.dim(); ++k) {
            out += g17(t.at(n, k));
            if (k + 1 < t.dim()) out += ",";
        }
        out += "]";
        if (n + 1 < t.n_bases()) out += ",";
    }
    out += "]";
    return out;
}

// ---------------------------------------------------------------------------
// Bound reports
// ---------------------------------------------------------------------------

inline std::string bound_report_to_json(const BoundReport& r) {
    std::string out = "{\n";
    out += "  \"n_bases\": " + std::to_string(r.n_bases) + ",\n";
    out += "  \"dim\": " + std::to_string(r.dim) + ",\n";
    out += "  \"purity\": " + g17(r.purity) + ",\n";
    out += "  \"coherent_weight\": " + g17(r.coherent_weight) + ",\n";
    out += "  \"alpha\": " + g17(r.alpha) + ",\n";
    out += "  \"b_plus\": " + g17(r.b_plus) + ",\n";
    out += "  \"b_minus\": " + g17(r.b_minus) + ",\n";
    out += std::string("  \"b_minus_stationary\": ") + (r.b_minus_stationary ? "true" : "false") + ",\n";
    out += "  \"h_t_plus\": " + g17(r.h_t_plus) + ",\n";
    out += "  \"lower_q\": " + (r.lower_q ? g17(*r.lower_q) : "null") + ",\n";
    out += "  \"mutual_info_bound\": " + (r.mutual_info_bound ? g17(*r.mutual_info_bound) : "null") + "\n";
    out += "}\n";
    return out;
}

// Fixed column order for grid sweeps.
inline std::string bound_report_csv_header() {
    return "N,d,purity,alpha,b_plus,h_t_plus,lower_q,mi_bound\n";
}

inline std::string bound_report_to_csv_row(const BoundReport& r) {
    std::string out;
    out += std::to_string(r.n_bases) + "," + std::to_string(r.dim) + ",";
    out += g17(r.purity) + "," + g17(r.alpha) + "," + g17(r.b_plus) + "," + g17(r.h_t_plus) + ",";
    out += (r.lower_q ? g17(*r.lower_q) : "nan");
    out += ",";
    out += (r.mutual_info_bound ? g17(*r.mutual_info_bound) : "nan");
    out += "\n";
    return out;
}

inline std::string bound_report_to_csv(const BoundReport& r) {
    return bound_report_csv_header() + bound_report_to_csv_row(r);
}

inline std::string bound_report_to_text(const BoundReport& r) {
    std::string out;
    out += "certainty bound for N=" + std::to_string(r.n_bases) + " MUBs, d=" + std::to_string(r.dim) +
           ", purity=" + g6(r.purity);
    if (r.coherent_weight != 0.0) out += ", coherent weight r=" + g6(r.coherent_weight);
    out += "\n";
    out += "  alpha        = " + g6(r.alpha) + "\n";
    out += "  b+           = " + g6(r.b_plus) + "\n";
    out += "  b-           = " + g6(r.b_minus) + (r.b_minus_stationary ? "  (stationary)" : "  (not stationary)") + "\n";
    out += "  H_T^+        = " + g6(r.h_t_plus) + " nats  (" + g6(r.h_t_plus / std::numbers::ln2) + " bits)\n";
    out += "  N ln d       = " + g6(r.n_bases * std::log(static_cast<double>(r.dim))) + " nats\n";
    if (r.lower_q) out += "  lower bound q = " + g6(*r.lower_q) + " nats\n";
    if (r.mutual_info_bound) {
        out += "  mutual-info bound = " + g6(*r.mutual_info_bound) + " nats\n";
        const MutualInfoDiagnostic diag = mutual_info_diagnostic(r.dim, r.purity);
        out += "  (expanded-form cross-check differs by " + g6(diag.discrepancy) +
               "; the compositional value above is authoritative)\n";
    }
    return out;
}

// ---------------------------------------------------------------------------
// Search results
// ---------------------------------------------------------------------------

inline std::string search_result_to_json(const SearchResult& r) {
    std::string out = "{\n";
    out += "  \"best_value\": " + g17(r.best_value) + ",\n";
    out += "  \"restarts_run\": " + std::to_string(r.restarts_run) + ",\n";
    out += "  \"converged_fraction\": " + g17(r.converged_fraction) + ",\n";
    out += "  \"best_table\": " + table_to_json(r.best_table) + ",\n";
    std::string state = density_to_json(r.best_state);
    if (!state.empty() && state.back() == '\n') state.pop_back();
    out += "  \"best_state\": " + state + "\n";
    out += "}\n";
    return out;
}

inline std::string search_result_to_text(const SearchResult& r, const MubSet& m) {
    std::string out;
    out += "entropy maximization over pure states, N=" + std::to_string(m.count()) +
           " MUBs, d=" + std::to_string(m.dim()) + "\n";
    out += "  best total entropy = " + g6(r.best_value) + " nats\n";
    out += "  N ln d             = " + g6(m.count() * std::log(static_cast<double>(m.dim()))) + " nats\n";
    out += "  bound H_T^+(purity 1) = " + g6(h_t_plus(m.count(), m.dim(), 1.0)) + " nats\n";
    out += "  restarts           = " + std::to_string(r.restarts_run) +
           "  (converged fraction " + g6(r.converged_fraction) + ")\n";
    return out;
}

inline std::string extendibility_to_json(const ExtendibilityReport& r) {
    std::string out = "{\n";
    out += "  \"n_ln_d\": " + g17(r.n_ln_d) + ",\n";
    out += "  \"h_t_plus_pure\": " + g17(r.h_t_plus_pure) + ",\n";
    out += "  \"achieved_max\": " + g17(r.achieved_max) + ",\n";
    out += "  \"min_coherence_defect\": " + g17(r.min_coherence_defect) + ",\n";
    out += "  \"verdict\": \"" + to_string(r.verdict) + "\"\n";
    out += "}\n";
    return out;
}

inline std::string extendibility_to_text(const ExtendibilityReport& r) {
    std::string out;
    out += "extendibility analysis\n";
    out += "  N ln d                = " + g6(r.n_ln_d) + " nats\n";
    out += "  H_T^+ at purity 1     = " + g6(r.h_t_plus_pure) + " nats\n";
    out += "  achieved maximum      = " + g6(r.achieved_max) + " nats\n";
    out += "  min coherence defect  = " + g6(r.min_coherence_defect) + "\n";
    out += "  verdict: " + to_string(r.verdict) + "\n";
    return out;
}

}  // namespace mubcert
