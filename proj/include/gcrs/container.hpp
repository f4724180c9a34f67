#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "io.hpp"

namespace gcrs {

enum class StructureTag : uint16_t {
    GCC_N = 1,
    GCC_C = 2,
    WT = 3,
    WTH = 4,
    WM = 5,
    WMH = 6,
    MWT = 7,
    MWTH = 8,
    AP = 9,
    AP_RP = 10,
    FMI = 11,
};

inline const char* structure_name(StructureTag t) {
    switch (t) {
        case StructureTag::GCC_N: return "gcc-n";
        case StructureTag::GCC_C: return "gcc-c";
        case StructureTag::WT: return "wt";
        case StructureTag::WTH: return "wth";
        case StructureTag::WM: return "wm";
        case StructureTag::WMH: return "wmh";
        case StructureTag::MWT: return "mwt";
        case StructureTag::MWTH: return "mwth";
        case StructureTag::AP: return "ap";
        case StructureTag::AP_RP: return "ap-rp";
        case StructureTag::FMI: return "fmi";
    }
    return "?";
}

constexpr uint16_t kContainerVersion = 1;

/// Container layout: "GCRS", version u16, structure tag u16, payload length
/// u64, payload bytes, CRC32 of the payload.
inline void write_container(std::ostream& os, StructureTag tag, const std::string& payload) {
    os.write("GCRS", 4);
    write_u16(os, kContainerVersion);
    write_u16(os, static_cast<uint16_t>(tag));
    write_u64(os, payload.size());
    os.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    write_u32(os, crc32(payload.data(), payload.size()));
}

inline std::pair<StructureTag, std::string> read_container(std::istream& is) {
    char magic[4];
    if (!is.read(magic, 4) || std::string(magic, 4) != "GCRS")
        throw std::runtime_error("container: bad magic");
    if (read_u16(is) != kContainerVersion) throw std::runtime_error("container: bad version");
    auto tag = static_cast<StructureTag>(read_u16(is));
    uint64_t len = read_u64(is);
    std::string payload(len, '\0');
    if (!is.read(payload.data(), static_cast<std::streamsize>(len)))
        throw std::runtime_error("container: truncated payload");
    uint32_t crc = read_u32(is);
    if (crc != crc32(payload.data(), payload.size()))
        throw std::runtime_error("container: checksum mismatch");
    return {tag, std::move(payload)};
}

inline void write_container_file(const std::string& path, StructureTag tag,
                                 const std::string& payload) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + path);
    write_container(os, tag, payload);
}

inline std::pair<StructureTag, std::string> read_container_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open " + path);
    return read_container(is);
}

}  // namespace gcrs
