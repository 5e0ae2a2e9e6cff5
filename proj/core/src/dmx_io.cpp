#include "dmca/errors.hpp"
#include "dmca/io.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>

namespace dmca {

namespace {

static_assert(std::endian::native == std::endian::little,
              "DMX I/O assumes a little-endian host");

template <typename T>
void put(std::ostream& out, T value) {
    std::array<char, sizeof(T)> bytes;
    std::memcpy(bytes.data(), &value, sizeof(T));
    out.write(bytes.data(), bytes.size());
}

class Reader {
public:
    explicit Reader(std::istream& in) : in_(in) {}

    template <typename T>
    T get(const char* field) {
        std::array<char, sizeof(T)> bytes;
        read_bytes(bytes.data(), bytes.size(), field);
        T value;
        std::memcpy(&value, bytes.data(), sizeof(T));
        return value;
    }

    void read_bytes(char* dst, std::size_t count, const char* field) {
        in_.read(dst, static_cast<std::streamsize>(count));
        const auto got = static_cast<std::uint64_t>(in_.gcount());
        if (got != count) {
            throw FormatError(std::string("truncated DMX payload while reading ") + field,
                              offset_ + got);
        }
        offset_ += count;
    }

    std::uint64_t offset() const { return offset_; }

private:
    std::istream& in_;
    std::uint64_t offset_ = 0;
};

struct Header {
    std::uint8_t dtype = 0;
    std::uint32_t height = 0;
    std::uint32_t width = 0;
    std::uint64_t m = 0;
    std::uint64_t n = 0;
};

Header read_header(Reader& r) {
    char magic[4];
    r.read_bytes(magic, 4, "magic");
    if (std::memcmp(magic, kDmxMagic, 4) != 0) throw FormatError("bad DMX magic", 0);
    Header h;
    h.dtype = r.get<std::uint8_t>("dtype");
    if (h.dtype > 1) {
        throw FormatError("unsupported DMX dtype code " + std::to_string(h.dtype), 4);
    }
    h.height = r.get<std::uint32_t>("height");
    h.width = r.get<std::uint32_t>("width");
    h.m = r.get<std::uint64_t>("m");
    h.n = r.get<std::uint64_t>("n");
    if ((h.height == 0) != (h.width == 0)) {
        throw FormatError("DMX geometry has exactly one zero dimension", 5);
    }
    if (h.height != 0 && std::uint64_t{h.height} * h.width != h.m) {
        throw FormatError("DMX geometry " + std::to_string(h.height) + "x" +
                              std::to_string(h.width) + " does not match m = " + std::to_string(h.m),
                          13);
    }
    constexpr auto max_index = static_cast<std::uint64_t>(std::numeric_limits<Index>::max());
    if (h.m > max_index || h.n > max_index || (h.n != 0 && h.m > max_index / h.n)) {
        throw FormatError("DMX dimensions overflow", 13);
    }
    return h;
}

}  // namespace

void write_dmx(std::ostream& out, const DataMatrix& x) {
    out.write(kDmxMagic, 4);
    put<std::uint8_t>(out, x.is_real() ? 0 : 1);
    const FrameGeometry g = x.geometry().value_or(FrameGeometry{});
    put<std::uint32_t>(out, g.height);
    put<std::uint32_t>(out, g.width);
    put<std::uint64_t>(out, static_cast<std::uint64_t>(x.rows()));
    put<std::uint64_t>(out, static_cast<std::uint64_t>(x.cols()));
    const Matrix& v = x.values();
    if (x.is_real()) {
        std::vector<double> buf(static_cast<std::size_t>(v.rows()));
        for (Index j = 0; j < v.cols(); ++j) {
            for (Index i = 0; i < v.rows(); ++i) buf[static_cast<std::size_t>(i)] = v(i, j).real();
            out.write(reinterpret_cast<const char*>(buf.data()),
                      static_cast<std::streamsize>(buf.size() * sizeof(double)));
        }
    } else {
        // std::complex<double> is layout-compatible with double[2].
        out.write(reinterpret_cast<const char*>(v.data()),
                  static_cast<std::streamsize>(v.size() * sizeof(Scalar)));
    }
    if (!out) throw IoError("failed writing DMX payload");
}

DataMatrix read_dmx(std::istream& in) {
    Reader r(in);
    const Header h = read_header(r);
    const auto m = static_cast<Index>(h.m);
    const auto n = static_cast<Index>(h.n);
    Matrix values(m, n);
    if (h.dtype == 0) {
        std::vector<double> buf(static_cast<std::size_t>(m));
        for (Index j = 0; j < n; ++j) {
            r.read_bytes(reinterpret_cast<char*>(buf.data()), buf.size() * sizeof(double),
                         "real payload");
            for (Index i = 0; i < m; ++i) values(i, j) = Scalar(buf[static_cast<std::size_t>(i)], 0.0);
        }
    } else {
        r.read_bytes(reinterpret_cast<char*>(values.data()),
                     static_cast<std::size_t>(values.size()) * sizeof(Scalar), "complex payload");
    }
    std::optional<FrameGeometry> geometry;
    if (h.height != 0) geometry = FrameGeometry{h.height, h.width};
    try {
        return DataMatrix(std::move(values), geometry, h.dtype == 0);
    } catch (const InsufficientDataError& e) {
        throw FormatError(std::string("invalid DMX matrix: ") + e.what(), 21);
    }
}

void save_matrix(const DataMatrix& x, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    write_dmx(out, x);
}

DataMatrix load_matrix(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string() + " for reading");
    return read_dmx(in);
}

DmxInfo read_dmx_info(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string() + " for reading");
    Reader r(in);
    const Header h = read_header(r);
    return {h.dtype == 0, h.height, h.width, h.m, h.n};
}

}  // namespace dmca
