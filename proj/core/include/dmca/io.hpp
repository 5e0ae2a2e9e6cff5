#pragma once

#include "dmca/data_matrix.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace dmca {

// DMX container, little-endian:
//   "DMX1" | dtype u8 (0 = float64 real, 1 = complex128) | height u32 | width u32
//   | m u64 | n u64 | m*n values, column-major (complex as re, im pairs).
// height = width = 0 means no frame geometry is attached.

inline constexpr char kDmxMagic[4] = {'D', 'M', 'X', '1'};
inline constexpr std::uint64_t kDmxHeaderBytes = 4 + 1 + 4 + 4 + 8 + 8;

void write_dmx(std::ostream& out, const DataMatrix& x);
DataMatrix read_dmx(std::istream& in);

void save_matrix(const DataMatrix& x, const std::filesystem::path& path);
DataMatrix load_matrix(const std::filesystem::path& path);

/// Header fields without reading the payload.
struct DmxInfo {
    bool is_real = true;
    std::uint32_t height = 0;
    std::uint32_t width = 0;
    std::uint64_t rows = 0;
    std::uint64_t cols = 0;
};
DmxInfo read_dmx_info(const std::filesystem::path& path);

/// 8-bit grayscale PGM (P5). Rows of the result are image rows.
RealFrame read_pgm(const std::filesystem::path& path);
RealFrame read_pgm(std::istream& in, const std::string& name = "<stream>");

/// Writes a P5 PGM; values are rounded and clamped to [0, 255].
void write_pgm(const std::filesystem::path& path, const RealFrame& frame);

/// Loads every non-hidden regular file in `directory` as a P5 PGM, in
/// lexicographic filename order (so "f10" sorts before "f2").
DataMatrix load_frame_sequence(const std::filesystem::path& directory);

/// Filenames `load_frame_sequence` would read, in the order it reads them.
std::vector<std::filesystem::path> frame_sequence_files(const std::filesystem::path& directory);

}  // namespace dmca
