#include "dmca/errors.hpp"
#include "dmca/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>

namespace dmca {

namespace {

class PgmHeaderParser {
public:
    PgmHeaderParser(std::istream& in, const std::string& name) : in_(in), name_(name) {}

    std::string magic() {
        char m[2];
        in_.read(m, 2);
        if (in_.gcount() != 2) throw FormatError(name_ + ": empty image file", 0);
        pos_ = 2;
        return std::string(m, 2);
    }

    std::uint64_t number(const char* field) {
        skip_space_and_comments();
        std::uint64_t value = 0;
        int digits = 0;
        while (true) {
            const int c = in_.peek();
            if (c < '0' || c > '9') break;
            in_.get();
            ++pos_;
            value = value * 10 + static_cast<std::uint64_t>(c - '0');
            if (++digits > 9) throw FormatError(name_ + ": PGM " + field + " too large", pos_);
        }
        if (digits == 0) throw FormatError(name_ + ": expected PGM " + field, pos_);
        return value;
    }

    void single_whitespace() {
        const int c = in_.get();
        if (c == EOF || !std::isspace(c)) {
            throw FormatError(name_ + ": expected whitespace before PGM raster", pos_);
        }
        ++pos_;
    }

    std::uint64_t position() const { return pos_; }

private:
    void skip_space_and_comments() {
        while (true) {
            const int c = in_.peek();
            if (c == '#') {
                while (in_.peek() != '\n' && in_.peek() != EOF) {
                    in_.get();
                    ++pos_;
                }
            } else if (c != EOF && std::isspace(c)) {
                in_.get();
                ++pos_;
            } else {
                return;
            }
        }
    }

    std::istream& in_;
    const std::string& name_;
    std::uint64_t pos_ = 0;
};

}  // namespace

RealFrame read_pgm(std::istream& in, const std::string& name) {
    PgmHeaderParser p(in, name);
    const std::string magic = p.magic();
    if (magic == "P6" || magic == "P3") {
        throw FormatError(name + ": colour PPM images are not accepted; convert to grayscale", 0);
    }
    if (magic != "P5") throw FormatError(name + ": not a binary PGM (P5) image", 0);
    const auto width = p.number("width");
    const auto height = p.number("height");
    const auto maxval = p.number("maxval");
    if (width == 0 || height == 0) throw FormatError(name + ": zero image dimension", p.position());
    if (maxval == 0 || maxval > 255) {
        throw FormatError(name + ": only 8-bit grayscale PGM is supported (maxval " +
                              std::to_string(maxval) + ")",
                          p.position());
    }
    p.single_whitespace();
    std::vector<unsigned char> raster(width * height);
    in.read(reinterpret_cast<char*>(raster.data()), static_cast<std::streamsize>(raster.size()));
    if (static_cast<std::uint64_t>(in.gcount()) != raster.size()) {
        throw FormatError(name + ": truncated PGM raster",
                          p.position() + static_cast<std::uint64_t>(in.gcount()));
    }
    RealFrame frame(static_cast<Index>(height), static_cast<Index>(width));
    for (Index r = 0; r < frame.rows(); ++r) {
        for (Index c = 0; c < frame.cols(); ++c) {
            frame(r, c) = raster[static_cast<std::size_t>(r * frame.cols() + c)];
        }
    }
    return frame;
}

RealFrame read_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open image " + path.string());
    return read_pgm(in, path.string());
}

void write_pgm(const std::filesystem::path& path, const RealFrame& frame) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << "P5\n" << frame.cols() << " " << frame.rows() << "\n255\n";
    std::vector<unsigned char> raster(static_cast<std::size_t>(frame.size()));
    for (Index r = 0; r < frame.rows(); ++r) {
        for (Index c = 0; c < frame.cols(); ++c) {
            const double v = std::clamp(std::round(frame(r, c)), 0.0, 255.0);
            raster[static_cast<std::size_t>(r * frame.cols() + c)] = static_cast<unsigned char>(v);
        }
    }
    out.write(reinterpret_cast<const char*>(raster.data()),
              static_cast<std::streamsize>(raster.size()));
    if (!out) throw IoError("failed writing " + path.string());
}

std::vector<std::filesystem::path> frame_sequence_files(const std::filesystem::path& directory) {
    namespace fs = std::filesystem;
    std::error_code ec;
    if (!fs::is_directory(directory, ec)) {
        throw IoError(directory.string() + " is not a readable directory");
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(directory)) {
        if (!entry.is_regular_file()) continue;
        const std::string name = entry.path().filename().string();
        if (name.empty() || name.front() == '.') continue;
        files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end(), [](const fs::path& a, const fs::path& b) {
        return a.filename().string() < b.filename().string();
    });
    return files;
}

DataMatrix load_frame_sequence(const std::filesystem::path& directory) {
    const auto files = frame_sequence_files(directory);
    if (files.size() < 2) {
        throw InsufficientDataError(directory.string() + " holds " + std::to_string(files.size()) +
                                    " image(s); at least two are required");
    }
    std::vector<RealFrame> frames;
    frames.reserve(files.size());
    for (const auto& f : files) frames.push_back(read_pgm(f));
    return frames_to_matrix(std::span<const RealFrame>(frames));
}

}  // namespace dmca
