#include "dform/snapshot.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>

namespace dform {

namespace {

constexpr char kMagic[4] = {'D', 'F', 'L', '1'};
constexpr std::size_t kHeader = 4 + 4 + 3 * 8;

template <typename T>
void put(std::string& out, T value) {
    unsigned char bytes[sizeof(T)];
    std::memcpy(bytes, &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
    out.append(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <typename T>
T get(const std::string& in, std::size_t offset) {
    unsigned char bytes[sizeof(T)];
    std::memcpy(bytes, in.data() + offset, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
    T value;
    std::memcpy(&value, bytes, sizeof(T));
    return value;
}

}  // namespace

const char* snapshot_error_name(SnapshotErrorCode code) {
    switch (code) {
        case SnapshotErrorCode::io: return "io";
        case SnapshotErrorCode::bad_magic: return "bad_magic";
        case SnapshotErrorCode::truncated: return "truncated";
        case SnapshotErrorCode::bad_resolution: return "bad_resolution";
        case SnapshotErrorCode::bad_header: return "bad_header";
        case SnapshotErrorCode::trailing_data: return "trailing_data";
    }
    return "unknown";
}

std::string encode_snapshot(const SpectralField& field, double nu, double time) {
    if (field.empty()) throw std::invalid_argument("cannot encode an empty field");
    std::string out;
    out.reserve(kHeader + 2 * field.size() * 16);
    out.append(kMagic, 4);
    put<std::uint32_t>(out, static_cast<std::uint32_t>(field.resolution()));
    put<double>(out, field.length());
    put<double>(out, nu);
    put<double>(out, time);
    for (int c = 0; c < 2; ++c)
        for (const Complex& z : field.component(c)) {
            put<double>(out, z.real());
            put<double>(out, z.imag());
        }
    return out;
}

Snapshot decode_snapshot(const std::string& bytes) {
    if (bytes.size() < 4) throw SnapshotError(SnapshotErrorCode::truncated, "file shorter than the magic");
    if (std::memcmp(bytes.data(), kMagic, 4) != 0) throw SnapshotError(SnapshotErrorCode::bad_magic, "expected DFL1");
    if (bytes.size() < kHeader) throw SnapshotError(SnapshotErrorCode::truncated, "header incomplete");
    const auto n = get<std::uint32_t>(bytes, 4);
    if (n < 16 || n % 2 != 0 || n > 65536)
        throw SnapshotError(SnapshotErrorCode::bad_resolution, "resolution " + std::to_string(n));
    const double length = get<double>(bytes, 8);
    Snapshot snap;
    snap.nu = get<double>(bytes, 16);
    snap.time = get<double>(bytes, 24);
    if (!(length > 0.0) || !std::isfinite(length)) throw SnapshotError(SnapshotErrorCode::bad_header, "domain length");
    const std::size_t count = static_cast<std::size_t>(n) * (n / 2 + 1);
    const std::size_t expected = kHeader + 2 * count * 16;
    if (bytes.size() < expected) throw SnapshotError(SnapshotErrorCode::truncated, "coefficient data incomplete");
    if (bytes.size() > expected) throw SnapshotError(SnapshotErrorCode::trailing_data, "bytes after coefficient data");
    SpectralField field(static_cast<int>(n), length);
    std::size_t offset = kHeader;
    for (int c = 0; c < 2; ++c)
        for (Complex& z : field.component(c)) {
            z = {get<double>(bytes, offset), get<double>(bytes, offset + 8)};
            offset += 16;
        }
    snap.field = std::move(field);
    return snap;
}

void save_snapshot(const SpectralField& field, double nu, double time, const std::filesystem::path& path) {
    const std::string bytes = encode_snapshot(field, nu, time);
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw SnapshotError(SnapshotErrorCode::io, "cannot open " + path.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw SnapshotError(SnapshotErrorCode::io, "write failed for " + path.string());
}

Snapshot load_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SnapshotError(SnapshotErrorCode::io, "cannot open " + path.string());
    const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return decode_snapshot(bytes);
}

}  // namespace dform
