#include "dform/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace dform {

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& text) {
    if (text == "nan") return std::nan("");
    if (text == "inf") return INFINITY;
    if (text == "-inf") return -INFINITY;
    double value = 0.0;
    const char* first = text.data();
    const char* last = first + text.size();
    if (first != last && *first == '+') ++first;
    const auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc() || res.ptr != last || first == last)
        throw std::invalid_argument("not a number: '" + text + "'");
    return value;
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    const auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out << ',';
            out << cells[i];
        }
        out << '\n';
    };
    line(table.header);
    for (const auto& r : table.rows) line(r);
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    CsvTable table;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        if (first) table.header = std::move(cells);
        else table.rows.push_back(std::move(cells));
        first = false;
    }
    return table;
}

CsvTable diagnostics_table(const std::vector<DiagnosticsRow>& rows) {
    CsvTable t{{"s", "E", "Z", "norm_V", "norm_DA", "delta_H", "delta_V", "delta_DA"}, {}};
    for (const auto& r : rows)
        t.rows.push_back({format_double(r.s), format_double(r.E), format_double(r.Z), format_double(r.norm_V),
                          format_double(r.norm_DA), format_double(r.delta_H), format_double(r.delta_V),
                          format_double(r.delta_DA)});
    return t;
}

CsvTable decay_table(const DecayRecord& record) {
    std::vector<DiagnosticsRow> rows;
    for (const auto& r : record.rows)
        rows.push_back({r.s, r.E, r.Z, r.norm_V, r.norm_DA, r.delta_H, r.delta_V, r.delta_DA});
    return diagnostics_table(rows);
}

namespace {

std::string csv_safe(std::string text) {
    for (auto& c : text)
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    return text;
}

}  // namespace

CsvTable sweep_table(const std::vector<SweepRow>& rows) {
    CsvTable t{{"mu", "h", "kind", "decay_rate", "synchronized", "status"}, {}};
    for (const auto& r : rows)
        t.rows.push_back({format_double(r.mu), format_double(r.h), r.kind, format_double(r.decay_rate),
                          r.synchronized ? "true" : "false", csv_safe(r.status)});
    return t;
}

CsvTable evolution_table(const EvolutionRecord& record) {
    CsvTable t{{"t", "a", "g", "xnorm_dist"}, {}};
    for (const auto& r : record.rows)
        t.rows.push_back({format_double(r.t), format_double(r.a), format_double(r.g), format_double(r.xnorm_dist)});
    return t;
}

CsvTable w_audit_table(const std::vector<WAuditRow>& rows) {
    CsvTable t{{"s", "norm_w", "norm_dw", "norm_Aw"}, {}};
    for (const auto& r : rows)
        t.rows.push_back({format_double(r.s), format_double(r.norm_w), format_double(r.norm_dw), format_double(r.norm_Aw)});
    return t;
}

CsvTable constants_table(const std::vector<ConstantsRow>& rows) {
    CsvTable t{{"kind", "h", "c1", "c2", "c1t", "c2t", "cJ", "ensemble_seed"}, {}};
    for (const auto& r : rows)
        t.rows.push_back({r.spec.label(), format_double(r.constants.h), format_double(r.constants.c1),
                          format_double(r.constants.c2), format_double(r.constants.c1t), format_double(r.constants.c2t),
                          format_double(r.constants.cJ), std::to_string(r.ensemble_seed)});
    return t;
}

CsvTable inequalities_table(const std::vector<InequalityRow>& rows) {
    CsvTable t{{"id", "constant", "ensemble_size", "resolution", "seed"}, {}};
    for (const auto& r : rows)
        t.rows.push_back({r.id, format_double(r.constant), std::to_string(r.ensemble_size), std::to_string(r.resolution),
                          std::to_string(r.seed)});
    return t;
}

}  // namespace dform
