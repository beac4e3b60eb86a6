#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "dform/field.hpp"

namespace dform {

enum class SnapshotErrorCode { io, bad_magic, truncated, bad_resolution, bad_header, trailing_data };

const char* snapshot_error_name(SnapshotErrorCode code);

class SnapshotError : public std::runtime_error {
public:
    SnapshotError(SnapshotErrorCode code, const std::string& what)
        : std::runtime_error(std::string(snapshot_error_name(code)) + ": " + what), code_(code) {}
    SnapshotErrorCode code() const { return code_; }

private:
    SnapshotErrorCode code_;
};

struct Snapshot {
    SpectralField field;
    double nu = 0.0;
    double time = 0.0;
};

/// DFL1: "DFL1", u32 N, f64 L, f64 nu, f64 time, then component 0 and
/// component 1 as N x (N/2 + 1) interleaved (re, im) f64, all little-endian.
void save_snapshot(const SpectralField& field, double nu, double time, const std::filesystem::path& path);
Snapshot load_snapshot(const std::filesystem::path& path);

std::string encode_snapshot(const SpectralField& field, double nu, double time);
Snapshot decode_snapshot(const std::string& bytes);

}  // namespace dform
