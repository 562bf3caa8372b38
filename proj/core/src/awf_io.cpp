#include "delab/awf_io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>
#include <vector>

#include "delab/error.hpp"

namespace delab {

namespace {

std::string fmt_double(double v) {
    std::array<char, 64> buf{};
    const int n = std::snprintf(buf.data(), buf.size(), "%.17g", v);
    return std::string(buf.data(), static_cast<std::size_t>(n));
}

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorCode::MalformedFile, what); }

double parse_double(std::string_view s, const char* what) {
    // strtod handles the "%.17g" forms including exponents
    std::string tmp(s);
    char* end = nullptr;
    const double v = std::strtod(tmp.c_str(), &end);
    if (tmp.empty() || end != tmp.c_str() + tmp.size()) malformed(std::string("bad number for ") + what);
    return v;
}

int parse_int(std::string_view s, const char* what) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) malformed(std::string("bad integer for ") + what);
    return v;
}

std::string_view expect_key(std::string_view token, std::string_view key) {
    if (token.substr(0, key.size()) != key) malformed("expected '" + std::string(key) + "'");
    return token.substr(key.size());
}

FieldFile parse_header(const std::string& line) {
    std::istringstream ss(line);
    std::vector<std::string> tok;
    for (std::string t; ss >> t;) tok.push_back(t);
    if (tok.size() != 6 || tok[0] != "AWF1") malformed("header must read 'AWF1 N=3 dims=.. L=.. alpha=.. s=..'");
    if (parse_int(expect_key(tok[1], "N="), "N") != 3) malformed("only N=3 grid files are supported");
    const std::string_view dims = expect_key(tok[2], "dims=");
    std::array<int, 3> d{};
    std::size_t pos = 0;
    for (int i = 0; i < 3; ++i) {
        const std::size_t comma = dims.find(',', pos);
        const std::size_t stop = (i < 2) ? comma : dims.size();
        if (i < 2 && comma == std::string_view::npos) malformed("dims needs three comma-separated values");
        d[static_cast<std::size_t>(i)] = parse_int(dims.substr(pos, stop - pos), "dims");
        pos = stop + 1;
    }
    const double L = parse_double(expect_key(tok[3], "L="), "L");
    const double alpha = parse_double(expect_key(tok[4], "alpha="), "alpha");
    const double s = parse_double(expect_key(tok[5], "s="), "s");
    FieldFile ff;
    try {
        ff.field = GridField(GridSpec::make(d, L));
    } catch (const Error& e) {
        malformed(e.what());
    }
    ff.params = ProblemParams{3, alpha, s};
    return ff;
}

}  // namespace

std::string awf1_header(const GridSpec& spec, const ProblemParams& p) {
    return "AWF1 N=3 dims=" + std::to_string(spec.dims[0]) + "," + std::to_string(spec.dims[1]) + "," +
           std::to_string(spec.dims[2]) + " L=" + fmt_double(spec.half_width) + " alpha=" + fmt_double(p.alpha) +
           " s=" + fmt_double(p.s) + "\n";
}

void write_awf1(std::ostream& os, const FieldFile& ff) {
    const std::string header = awf1_header(ff.field.spec, ff.params);
    os.write(header.data(), static_cast<std::streamsize>(header.size()));
    std::vector<char> bytes(ff.field.values.size() * 8);
    for (std::size_t i = 0; i < ff.field.values.size(); ++i) {
        const auto bits = std::bit_cast<std::uint64_t>(ff.field.values[i]);
        for (std::size_t b = 0; b < 8; ++b) bytes[i * 8 + b] = static_cast<char>((bits >> (8 * b)) & 0xFFu);
    }
    os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!os) malformed("write failed");
}

FieldFile read_awf1(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) malformed("missing header");
    FieldFile ff = parse_header(line);
    auto& vals = ff.field.values;
    std::vector<char> bytes(vals.size() * 8);
    is.read(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (static_cast<std::size_t>(is.gcount()) != bytes.size()) malformed("truncated payload");
    if (is.peek() != std::char_traits<char>::eof()) malformed("trailing bytes after payload");
    for (std::size_t i = 0; i < vals.size(); ++i) {
        std::uint64_t bits = 0;
        for (std::size_t b = 0; b < 8; ++b) {
            bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[i * 8 + b])) << (8 * b);
        }
        vals[i] = std::bit_cast<double>(bits);
    }
    return ff;
}

void write_field_csv(std::ostream& os, const FieldFile& ff) {
    const auto& f = ff.field;
    os << awf1_header(f.spec, ff.params);
    os << "i1,i2,i3,value\n";
    const auto& d = f.spec.dims;
    for (int i1 = 0; i1 < d[0]; ++i1) {
        for (int i2 = 0; i2 < d[1]; ++i2) {
            for (int i3 = 0; i3 < d[2]; ++i3) {
                os << i1 << ',' << i2 << ',' << i3 << ',' << fmt_double(f.at(i1, i2, i3)) << '\n';
            }
        }
    }
    if (!os) malformed("write failed");
}

FieldFile read_field_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) malformed("missing header");
    FieldFile ff = parse_header(line);
    if (!std::getline(is, line) || line != "i1,i2,i3,value") malformed("missing column row 'i1,i2,i3,value'");
    auto& f = ff.field;
    const auto& d = f.spec.dims;
    std::vector<bool> seen(f.values.size(), false);
    std::size_t rows = 0;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::array<std::string_view, 4> cols{};
        std::string_view rest(line);
        for (int c = 0; c < 4; ++c) {
            const std::size_t comma = rest.find(',');
            if (c < 3) {
                if (comma == std::string_view::npos) malformed("row needs four columns");
                cols[static_cast<std::size_t>(c)] = rest.substr(0, comma);
                rest = rest.substr(comma + 1);
            } else {
                if (comma != std::string_view::npos) malformed("row has extra columns");
                cols[3] = rest;
            }
        }
        const int i1 = parse_int(cols[0], "i1");
        const int i2 = parse_int(cols[1], "i2");
        const int i3 = parse_int(cols[2], "i3");
        if (i1 < 0 || i2 < 0 || i3 < 0 || i1 >= d[0] || i2 >= d[1] || i3 >= d[2]) malformed("index out of range");
        const std::size_t idx = f.spec.index(i1, i2, i3);
        if (seen[idx]) malformed("duplicate cell row");
        seen[idx] = true;
        f.values[idx] = parse_double(cols[3], "value");
        ++rows;
    }
    if (rows != f.values.size()) malformed("expected one row per cell");
    return ff;
}

void write_field_file(const std::filesystem::path& path, const FieldFile& ff) {
    std::ofstream os(path, std::ios::binary);
    if (!os) malformed("cannot open " + path.string() + " for writing");
    if (path.extension() == ".csv") {
        write_field_csv(os, ff);
    } else {
        write_awf1(os, ff);
    }
}

FieldFile read_field_file(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) malformed("cannot open " + path.string());
    if (path.extension() == ".csv") return read_field_csv(is);
    return read_awf1(is);
}

}  // namespace delab
