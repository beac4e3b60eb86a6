#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "dform/approx_constants.hpp"
#include "dform/determining_form.hpp"
#include "dform/inequality.hpp"
#include "dform/interpolant.hpp"
#include "dform/nse.hpp"
#include "dform/sync.hpp"

namespace dform {

/// Shortest decimal form that parses back to the same double.
std::string format_double(double x);
/// Inverse of format_double; throws std::invalid_argument on bad input.
double parse_double(const std::string& text);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

/// Writes header and rows; throws std::runtime_error on I/O failure.
void write_csv(const std::filesystem::path& path, const CsvTable& table);
CsvTable read_csv(const std::filesystem::path& path);

CsvTable diagnostics_table(const std::vector<DiagnosticsRow>& rows);
CsvTable decay_table(const DecayRecord& record);
CsvTable sweep_table(const std::vector<SweepRow>& rows);
CsvTable evolution_table(const EvolutionRecord& record);
CsvTable w_audit_table(const std::vector<WAuditRow>& rows);

struct ConstantsRow {
    InterpolantSpec spec;
    ApproxConstants constants;
    std::uint64_t ensemble_seed = 0;
};
CsvTable constants_table(const std::vector<ConstantsRow>& rows);

struct InequalityRow {
    std::string id;
    double constant = 0.0;
    std::size_t ensemble_size = 0;
    int resolution = 0;
    std::uint64_t seed = 0;
};
CsvTable inequalities_table(const std::vector<InequalityRow>& rows);

}  // namespace dform
