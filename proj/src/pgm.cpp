#include "lsbm/pgm.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace lsbm {

namespace {

// Skips PGM whitespace and '#' comments running to end of line.
void skip_separators(std::istream& in) {
    for (;;) {
        const int c = in.peek();
        if (c == '#') {
            std::string line;
            std::getline(in, line);
        } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            in.get();
        } else {
            return;
        }
    }
}

long parse_header_int(std::istream& in, const char* what) {
    skip_separators(in);
    long value = -1;
    if (!(in >> value) || value < 0)
        throw PgmError(PgmError::Kind::BadHeader,
                       std::string("pgm: malformed header, bad ") + what);
    return value;
}

}  // namespace

GrayImage load_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw PgmError(PgmError::Kind::Io, "pgm: cannot open " + path);

    char magic[2] = {0, 0};
    in.read(magic, 2);
    if (!in || magic[0] != 'P' || magic[1] != '5') {
        if (in && magic[0] == 'P')
            throw PgmError(PgmError::Kind::UnsupportedFormat,
                           "pgm: unsupported format (only binary P5 is accepted): " + path);
        throw PgmError(PgmError::Kind::BadHeader, "pgm: missing P5 magic: " + path);
    }

    const long width = parse_header_int(in, "width");
    const long height = parse_header_int(in, "height");
    const long maxval = parse_header_int(in, "maxval");
    if (maxval != 255)
        throw PgmError(PgmError::Kind::BadMaxval,
                       "pgm: maxval must be 255, got " + std::to_string(maxval));
    if (width <= 0 || height <= 0 || width > 1 << 20 || height > 1 << 20)
        throw PgmError(PgmError::Kind::BadHeader, "pgm: implausible dimensions");
    in.get();  // single whitespace byte after maxval

    GrayImage image;
    image.width = static_cast<int>(width);
    image.height = static_cast<int>(height);
    image.bit_depth = 8;
    image.pixels.resize(width * height);

    std::string data(static_cast<std::size_t>(width * height), '\0');
    in.read(data.data(), static_cast<std::streamsize>(data.size()));
    if (in.gcount() != static_cast<std::streamsize>(data.size()))
        throw PgmError(PgmError::Kind::Truncated, "pgm: truncated pixel data: " + path);

    for (Eigen::Index i = 0; i < image.pixels.size(); ++i)
        image.pixels[i] = static_cast<unsigned char>(data[static_cast<std::size_t>(i)]);
    return image;
}

void save_pgm(const GrayImage& image, const std::string& path) {
    image.validate();
    if (image.bit_depth != 8)
        throw PgmError(PgmError::Kind::UnsupportedFormat, "pgm: only 8-bit images supported");

    std::ofstream out(path, std::ios::binary);
    if (!out) throw PgmError(PgmError::Kind::Io, "pgm: cannot write " + path);

    out << "P5\n" << image.width << ' ' << image.height << "\n255\n";
    std::string data(static_cast<std::size_t>(image.size()), '\0');
    for (Eigen::Index i = 0; i < image.size(); ++i)
        data[static_cast<std::size_t>(i)] = static_cast<char>(image.pixels[i] & 0xff);
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) throw PgmError(PgmError::Kind::Io, "pgm: write failed: " + path);
}

}  // namespace lsbm
