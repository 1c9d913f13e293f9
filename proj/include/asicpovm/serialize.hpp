#pragma once

// JSON serialization for vector systems, projector POVMs and certification
// reports (schema_version 1), plus the one-line CSV row used by scan tables.
// Vector entries are stored as [re, im] pairs; nlohmann emits shortest
// round-trip decimals, so reload is lossless at full double precision.

#include <fstream>
#include <iomanip>
#include <locale>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>

#include <json.hpp>

#include "asicpovm/certify.hpp"
#include "asicpovm/types.hpp"

namespace asicpovm {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// ---------------------------------------------------------------------------
// provenance / labels
// ---------------------------------------------------------------------------

inline json to_json(const Provenance& p) {
    return json{{"construction", p.construction}, {"dim", p.dim},
                {"p", p.p},                       {"q", p.q},
                {"ext_degree", p.ext_degree},     {"d", p.d},
                {"perturb_r", p.perturb_r},       {"prime_gap", p.prime_gap},
                {"prime_ratio", p.prime_ratio}};
}

inline Provenance provenance_from_json(const json& j) {
    Provenance p;
    p.construction = j.value("construction", "");
    p.dim = j.value("dim", std::uint64_t{0});
    p.p = j.value("p", std::uint64_t{0});
    p.q = j.value("q", std::uint64_t{0});
    p.ext_degree = j.value("ext_degree", std::uint64_t{0});
    p.d = j.value("d", std::uint64_t{0});
    p.perturb_r = j.value("perturb_r", 0.0);
    p.prime_gap = j.value("prime_gap", std::uint64_t{0});
    p.prime_ratio = j.value("prime_ratio", 0.0);
    return p;
}

inline json to_json(const VectorLabel& l) {
    return json{{"family", l.family}, {"index", l.index}};
}

inline VectorLabel label_from_json(const json& j) {
    VectorLabel l;
    l.family = j.at("family").get<std::string>();
    l.index = j.at("index").get<std::vector<std::int64_t>>();
    return l;
}

// ---------------------------------------------------------------------------
// vectors / matrices
// ---------------------------------------------------------------------------

inline json to_json(const la::CVector& v) {
    json out = json::array();
    for (const auto& z : v) out.push_back(json::array({z.real(), z.imag()}));
    return out;
}

inline la::CVector cvector_from_json(const json& j) {
    la::CVector v;
    v.reserve(j.size());
    for (const auto& e : j) v.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
    return v;
}

inline json to_json(const la::ComplexMatrix& m) {
    json out = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
        out.push_back(std::move(row));
    }
    return out;
}

inline la::ComplexMatrix matrix_from_json(const json& j) {
    std::size_t rows = j.size();
    std::size_t cols = rows ? j.at(0).size() : 0;
    la::ComplexMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t k = 0; k < cols; ++k)
            m(i, k) = la::cplx(j.at(i).at(k).at(0).get<double>(),
                               j.at(i).at(k).at(1).get<double>());
    return m;
}

// ---------------------------------------------------------------------------
// vector system
// ---------------------------------------------------------------------------

inline json to_json(const VectorSystem& sys) {
    json labels = json::array();
    for (const auto& l : sys.labels) labels.push_back(to_json(l));
    json vectors = json::array();
    for (const auto& v : sys.vectors) vectors.push_back(to_json(v));
    return json{{"schema_version", kSchemaVersion},
                {"kind", "vector_system"},
                {"n", sys.dim},
                {"provenance", to_json(sys.provenance)},
                {"labels", labels},
                {"basis_groups", sys.basis_groups},
                {"vectors", vectors}};
}

inline VectorSystem vector_system_from_json(const json& j) {
    if (j.value("kind", "") != "vector_system")
        throw std::invalid_argument("vector_system_from_json: wrong kind");
    if (j.value("schema_version", 0) != kSchemaVersion)
        throw std::invalid_argument("vector_system_from_json: unsupported schema_version");
    VectorSystem sys;
    sys.dim = j.at("n").get<std::size_t>();
    sys.provenance = provenance_from_json(j.at("provenance"));
    for (const auto& l : j.at("labels")) sys.labels.push_back(label_from_json(l));
    if (j.contains("basis_groups"))
        sys.basis_groups = j.at("basis_groups").get<std::vector<std::vector<std::size_t>>>();
    for (const auto& v : j.at("vectors")) {
        la::CVector cv = cvector_from_json(v);
        if (cv.size() != sys.dim)
            throw std::invalid_argument("vector_system_from_json: dimension mismatch");
        sys.vectors.push_back(std::move(cv));
    }
    if (sys.labels.size() != sys.vectors.size())
        throw std::invalid_argument("vector_system_from_json: label count mismatch");
    return sys;
}

// ---------------------------------------------------------------------------
// projector POVM
// ---------------------------------------------------------------------------

inline json to_json(const ProjectorPOVM& povm) {
    json labels = json::array();
    for (const auto& l : povm.labels) labels.push_back(to_json(l));
    json vectors = json::array();
    for (const auto& v : povm.vectors) vectors.push_back(to_json(v));
    json out{{"schema_version", kSchemaVersion},
             {"kind", "projector_povm"},
             {"n", povm.dim},
             {"povm_kind", povm.kind == ProjectorPOVM::Kind::symmetrized ? "symmetrized" : "raw"},
             {"provenance", to_json(povm.provenance)},
             {"labels", labels},
             {"vectors", vectors},
             {"source", to_json(povm.source)},
             {"frame_operator", to_json(povm.frame_operator)}};
    out["symmetrizer"] =
        povm.kind == ProjectorPOVM::Kind::symmetrized ? to_json(povm.symmetrizer) : json(nullptr);
    return out;
}

inline ProjectorPOVM povm_from_json(const json& j) {
    if (j.value("kind", "") != "projector_povm")
        throw std::invalid_argument("povm_from_json: wrong kind");
    if (j.value("schema_version", 0) != kSchemaVersion)
        throw std::invalid_argument("povm_from_json: unsupported schema_version");
    ProjectorPOVM povm;
    povm.dim = j.at("n").get<std::size_t>();
    povm.kind = j.at("povm_kind").get<std::string>() == "symmetrized"
                    ? ProjectorPOVM::Kind::symmetrized
                    : ProjectorPOVM::Kind::raw;
    povm.provenance = provenance_from_json(j.at("provenance"));
    for (const auto& l : j.at("labels")) povm.labels.push_back(label_from_json(l));
    for (const auto& v : j.at("vectors")) povm.vectors.push_back(cvector_from_json(v));
    povm.source = vector_system_from_json(j.at("source"));
    povm.frame_operator = matrix_from_json(j.at("frame_operator"));
    if (!j.at("symmetrizer").is_null()) povm.symmetrizer = matrix_from_json(j.at("symmetrizer"));
    return povm;
}

// ---------------------------------------------------------------------------
// certification report
// ---------------------------------------------------------------------------

namespace detail {

template <typename T>
inline json opt_json(const std::optional<T>& v) {
    if (v.has_value()) return json(*v);
    return json(nullptr);
}

} // namespace detail

inline json to_json(const CertificationReport& rep, bool include_timing = false) {
    json checks = json::array();
    for (const auto& c : rep.hard_checks)
        checks.push_back(json{
            {"name", c.name}, {"passed", c.passed}, {"value", c.value}, {"limit", c.limit}});
    json out{{"schema_version", kSchemaVersion},
             {"kind", "certification_report"},
             {"provenance", to_json(rep.provenance)},
             {"n", rep.n},
             {"element_count", rep.element_count},
             {"completeness_residual", detail::opt_json(rep.completeness_residual)},
             {"gram_rank", detail::opt_json(rep.gram_rank)},
             {"required_rank", detail::opt_json(rep.required_rank)},
             {"overlap_max_sq", rep.overlap_max_sq},
             {"overlap_mean_sq", rep.overlap_mean_sq},
             {"overlap_histogram", rep.overlap_histogram},
             {"unbiasedness_max_dev", detail::opt_json(rep.unbiasedness_max_dev)},
             {"frame_bound_lower", rep.frame_lower},
             {"frame_bound_upper", rep.frame_upper},
             {"explicit_bound_value", detail::opt_json(rep.explicit_bound_value)},
             {"bound_satisfied", detail::opt_json(rep.bound_satisfied)},
             {"reference_bound_value", detail::opt_json(rep.reference_bound_value)},
             {"tomography_error", detail::opt_json(rep.tomography_error)},
             {"scan_mode", rep.scan_mode.to_string()},
             {"hard_checks", checks},
             {"passed", rep.passed()}};
    if (include_timing) out["wall_time_ms"] = rep.wall_time_ms;
    return out;
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

inline std::string csv_header() {
    return "construction,n,element_count,p,q,d,r,completeness_residual,gram_rank,"
           "required_rank,overlap_max_sq,overlap_mean_sq,max_sq_times_n,"
           "unbiasedness_max_dev,frame_lower,frame_upper,explicit_bound_value,"
           "bound_satisfied,reference_bound_value,tomography_error,scan_mode,passed";
}

namespace detail {

inline std::string csv_real(double v) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << std::setprecision(17) << v;
    return os.str();
}

template <typename T>
inline std::string csv_opt(const std::optional<T>& v) {
    if (!v.has_value()) return "";
    if constexpr (std::is_same_v<T, bool>)
        return *v ? "true" : "false";
    else if constexpr (std::is_floating_point_v<T>)
        return csv_real(*v);
    else
        return std::to_string(*v);
}

} // namespace detail

inline std::string to_csv_row(const CertificationReport& rep) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << rep.provenance.construction << ',' << rep.n << ',' << rep.element_count << ','
       << rep.provenance.p << ',' << rep.provenance.q << ',' << rep.provenance.d << ','
       << detail::csv_real(rep.provenance.perturb_r) << ','
       << detail::csv_opt(rep.completeness_residual) << ',' << detail::csv_opt(rep.gram_rank)
       << ',' << detail::csv_opt(rep.required_rank) << ',' << detail::csv_real(rep.overlap_max_sq)
       << ',' << detail::csv_real(rep.overlap_mean_sq) << ','
       << detail::csv_real(rep.overlap_max_sq * static_cast<double>(rep.n)) << ','
       << detail::csv_opt(rep.unbiasedness_max_dev) << ',' << detail::csv_real(rep.frame_lower)
       << ',' << detail::csv_real(rep.frame_upper) << ','
       << detail::csv_opt(rep.explicit_bound_value) << ',' << detail::csv_opt(rep.bound_satisfied)
       << ',' << detail::csv_opt(rep.reference_bound_value) << ','
       << detail::csv_opt(rep.tomography_error) << ',' << rep.scan_mode.to_string() << ','
       << (rep.passed() ? "true" : "false");
    return os.str();
}

// ---------------------------------------------------------------------------
// file IO
// ---------------------------------------------------------------------------

inline void save_json(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << j.dump(2) << '\n';
}

inline json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    return json::parse(in);
}

} // namespace asicpovm
