#include "altproj/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace altproj::io {

namespace {

json number(double v) {
    if (std::isfinite(v)) return v;
    return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
}

json matrix_rows(const Matrix& m) {
    json rows = json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

SubspaceSystem system_from_json(const json& doc, const TolerancePolicy& tol) {
    if (!doc.is_object()) throw InvalidArgument("system file: top level must be an object");
    if (!doc.contains("dim") || !doc["dim"].is_number_integer())
        throw InvalidArgument("system file: \"dim\" must be an integer");
    const auto dim = doc["dim"].get<long long>();
    if (dim < 1) throw InvalidArgument("system file: \"dim\" must be >= 1");
    if (!doc.contains("subspaces") || !doc["subspaces"].is_array())
        throw InvalidArgument("system file: \"subspaces\" must be an array");
    const auto& subs = doc["subspaces"];
    if (subs.size() < 2) throw InvalidArgument("system file: need at least 2 subspaces");

    std::vector<Subspace> out;
    for (std::size_t s = 0; s < subs.size(); ++s) {
        const auto& entry = subs[s];
        const std::string label = "subspace " + std::to_string(s + 1);
        if (!entry.is_object() || !entry.contains("vectors") || !entry["vectors"].is_array())
            throw InvalidArgument("system file: " + label + " needs a \"vectors\" array");
        std::string name = "M" + std::to_string(s + 1);
        if (entry.contains("name")) {
            if (!entry["name"].is_string()) throw InvalidArgument("system file: " + label + " name must be a string");
            name = entry["name"].get<std::string>();
        }
        const auto& rows = entry["vectors"];
        Matrix span(dim, static_cast<Index>(rows.size()));
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (!rows[r].is_array() || static_cast<long long>(rows[r].size()) != dim)
                throw InvalidArgument("system file: " + label + " vector " + std::to_string(r + 1) +
                                      " must have length " + std::to_string(dim));
            for (long long i = 0; i < dim; ++i) {
                const auto& x = rows[r][static_cast<std::size_t>(i)];
                if (!x.is_number()) throw InvalidArgument("system file: non-numeric entry in " + label);
                span(i, static_cast<Index>(r)) = x.get<double>();
            }
        }
        out.push_back(Subspace::from_spanning(span, std::move(name), tol));
    }
    return SubspaceSystem(std::move(out), tol);
}

SubspaceSystem read_system(const std::string& path, const TolerancePolicy& tol) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw InvalidArgument(path + ": malformed JSON: " + e.what());
    }
    return system_from_json(doc, tol);
}

json system_to_json(const SubspaceSystem& system) {
    json subs = json::array();
    for (const auto& s : system.subspaces()) {
        json rows = json::array();
        for (Index j = 0; j < s.dim(); ++j) {
            json row = json::array();
            for (Index i = 0; i < s.ambient_dim(); ++i) row.push_back(s.basis()(i, j));
            rows.push_back(std::move(row));
        }
        subs.push_back({{"name", s.name()}, {"vectors", std::move(rows)}});
    }
    return {{"dim", system.ambient_dim()}, {"subspaces", std::move(subs)}};
}

json to_json(const InclinationEstimate& est) {
    return {{"lower", number(est.lower)},
            {"upper", number(est.upper)},
            {"estimate", number(est.estimate)},
            {"certified", est.certified}};
}

json to_json(const AngleReport& report) {
    json incl = to_json(report.inclination);
    if (!report.inclination_defined) {
        incl["estimate"] = nullptr;
        incl["note"] = "undefined: M is the whole space";
    }
    return {{"c0", number(report.c0)},
            {"c", number(report.c)},
            {"kappa0", number(report.kappa0)},
            {"kappa", number(report.kappa)},
            {"pairwise", matrix_rows(report.pairwise_dixmier_reduced)},
            {"prefix", report.prefix_friedrichs},
            {"inclination", std::move(incl)},
            {"degenerate", report.degenerate}};
}

json to_json(const BoundEntry& entry) {
    json j{{"name", entry.name}, {"margin", number(entry.margin)}, {"satisfied", entry.satisfied}};
    if (entry.measured.size() == 1) {
        j["measured"] = number(entry.measured.front());
        j["bound"] = number(entry.bound.front());
    } else {
        json m = json::array(), b = json::array();
        for (double v : entry.measured) m.push_back(number(v));
        for (double v : entry.bound) b.push_back(number(v));
        j["measured"] = std::move(m);
        j["bound"] = std::move(b);
    }
    if (!entry.note.empty()) j["note"] = entry.note;
    return j;
}

json to_json(const BoundReport& report) {
    json entries = json::array();
    for (const auto& e : report.entries) entries.push_back(to_json(e));
    return {{"degenerate", report.degenerate}, {"entries", std::move(entries)}};
}

json to_json(const DichotomyVerdict& v) {
    return {{"c", number(v.c)},
            {"kappa", number(v.kappa)},
            {"cyclic_error_norm", number(v.cyclic_error_norm)},
            {"min_modulus", number(v.min_modulus)},
            {"inclination", to_json(v.inclination)},
            {"verdict", v.verdict},
            {"margin", number(v.margin)},
            {"near_asc", v.near_asc},
            {"consistent", v.consistent},
            {"note", v.note}};
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void write_trace_csv(std::ostream& out, const ConvergenceTrace& trace) {
    out << "n,measured";
    for (const auto& [name, series] : trace.bounds) {
        if (series.size() != trace.steps.size())
            throw InvalidArgument("trace: bound series " + name + " has the wrong length");
        out << ',' << name;
    }
    out << '\n';
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        out << trace.steps[i] << ',' << format_double(trace.errors[i]);
        for (const auto& [name, series] : trace.bounds) out << ',' << format_double(series[i]);
        out << '\n';
    }
}

void write_trace_csv(const std::string& path, const ConvergenceTrace& trace) {
    std::ofstream out(path);
    if (!out) throw InvalidArgument("cannot write " + path);
    write_trace_csv(out, trace);
}

std::vector<double> parse_number_list(const std::string& text) {
    std::vector<double> out;
    std::string token;
    auto flush = [&] {
        if (token.empty()) return;
        double v = 0.0;
        auto res = std::from_chars(token.data(), token.data() + token.size(), v);
        if (res.ec != std::errc{} || res.ptr != token.data() + token.size())
            throw InvalidArgument("not a number: '" + token + "'");
        out.push_back(v);
        token.clear();
    };
    for (char ch : text) {
        if (ch == ',' || std::isspace(static_cast<unsigned char>(ch))) flush();
        else token.push_back(ch);
    }
    flush();
    return out;
}

std::vector<double> read_number_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_number_list(ss.str());
}

}  // namespace altproj::io
