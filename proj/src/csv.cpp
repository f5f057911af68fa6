#include "gsqg/csv.hpp"

#include "gsqg/errors.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cstdint>
#include <fstream>

namespace gsqg {

std::string format_double(double v) {
    std::array<char, 32> buf{};
    const auto [p, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), p);
}

std::string format_optional(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

void write_diag_row(std::ostream& out, const DiagRecord& r) {
    out << format_double(r.time) << ',' << format_double(r.sup_theta) << ',' << format_double(r.l2_theta) << ','
        << format_double(r.sup_grad) << ',' << format_double(r.holder_seminorm) << ','
        << format_double(r.theta_at_origin) << ',' << format_optional(r.opening_angle) << ','
        << format_optional(r.level_distance) << ',' << format_double(r.holder_time_integral) << ','
        << format_double(r.sup_velocity) << '\n';
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out(1);
    for (char c : line) {
        if (c == ',')
            out.emplace_back();
        else if (c != '\r')
            out.back() += c;
    }
    return out;
}

namespace {

void put_le(std::ostream& out, std::uint64_t v, int bytes) {
    for (int b = 0; b < bytes; ++b) out.put(static_cast<char>((v >> (8 * b)) & 0xffu));
}

std::uint64_t get_le(std::istream& in, int bytes) {
    std::uint64_t v = 0;
    for (int b = 0; b < bytes; ++b) {
        const int c = in.get();
        if (c == std::char_traits<char>::eof()) throw PreconditionError("read_snapshot: truncated file");
        v |= static_cast<std::uint64_t>(static_cast<unsigned char>(c)) << (8 * b);
    }
    return v;
}

}  // namespace

void write_snapshot(const std::string& path, const ScalarField& f) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw PreconditionError("write_snapshot: cannot open '" + path + "'");
    put_le(out, static_cast<std::uint32_t>(f.n), 4);
    put_le(out, 0, 4);
    for (double v : f.values) put_le(out, std::bit_cast<std::uint64_t>(v), 8);
    if (!out) throw PreconditionError("write_snapshot: write failed for '" + path + "'");
}

ScalarField read_snapshot(const std::string& path, double box_length) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw PreconditionError("read_snapshot: cannot open '" + path + "'");
    const int n = static_cast<int>(get_le(in, 4));
    get_le(in, 4);
    if (n <= 0) throw PreconditionError("read_snapshot: bad grid size");
    ScalarField f(n, box_length);
    for (double& v : f.values) v = std::bit_cast<double>(get_le(in, 8));
    return f;
}

}  // namespace gsqg
