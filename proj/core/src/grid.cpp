#include "hgu/grid.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

namespace hgu {

namespace {

struct Ellipse {
    double intensity, a, b, x0, y0, phi_deg;
};

// Standard Shepp-Logan parameter set (intensity, semi-axes, center, tilt).
constexpr std::array<Ellipse, 10> kSheppLogan{{
    {1.0, 0.69, 0.92, 0.0, 0.0, 0.0},
    {-0.98, 0.6624, 0.8740, 0.0, -0.0184, 0.0},
    {-0.02, 0.1100, 0.3100, 0.22, 0.0, -18.0},
    {-0.02, 0.1600, 0.4100, -0.22, 0.0, 18.0},
    {0.01, 0.2100, 0.2500, 0.0, 0.35, 0.0},
    {0.01, 0.0460, 0.0460, 0.0, 0.1, 0.0},
    {0.01, 0.0460, 0.0460, 0.0, -0.1, 0.0},
    {0.01, 0.0460, 0.0230, -0.08, -0.605, 0.0},
    {0.01, 0.0230, 0.0230, 0.0, -0.606, 0.0},
    {0.01, 0.0230, 0.0460, 0.06, -0.605, 0.0},
}};

double ellipse_sum(double x, double y) {
    double v = 0.0;
    for (const auto& e : kSheppLogan) {
        const double p = e.phi_deg * M_PI / 180.0;
        const double dx = x - e.x0, dy = y - e.y0;
        const double xr = dx * std::cos(p) + dy * std::sin(p);
        const double yr = -dx * std::sin(p) + dy * std::cos(p);
        if ((xr / e.a) * (xr / e.a) + (yr / e.b) * (yr / e.b) <= 1.0) v += e.intensity;
    }
    return v;
}

void write_u64_le(std::ostream& os, uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = (unsigned char)((v >> (8 * i)) & 0xff);
    os.write(reinterpret_cast<const char*>(b), 8);
}

uint64_t read_u64_le(std::istream& is) {
    unsigned char b[8];
    is.read(reinterpret_cast<char*>(b), 8);
    if (!is) throw std::runtime_error("f64raw: truncated header");
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= uint64_t(b[i]) << (8 * i);
    return v;
}

}  // namespace

Grid generate_shepp_logan(int size) {
    if (size < 16) throw std::invalid_argument("generate_shepp_logan: size must be >= 16");
    constexpr int ss = 4;  // 4x4 area supersampling per pixel
    Grid g(size, size);
    const double step = 2.0 / (size * ss);
    for (int i = 0; i < size; ++i) {
        for (int j = 0; j < size; ++j) {
            double acc = 0.0;
            for (int si = 0; si < ss; ++si) {
                const double y = 1.0 - step * (double(i) * ss + si + 0.5);
                for (int sj = 0; sj < ss; ++sj) {
                    const double x = step * (double(j) * ss + sj + 0.5) - 1.0;
                    acc += ellipse_sum(x, y);
                }
            }
            g.at(i, j) = acc / (ss * ss);
        }
    }
    g.value_range_hint = {0.0, 1.0};
    return g;
}

Grid normalize_01(const Grid& g) {
    if (!g.all_finite()) throw std::invalid_argument("normalize_01: non-finite input");
    const double lo = g.data.minCoeff();
    const double hi = g.data.maxCoeff();
    Grid out(g.height, g.width);
    if (hi > lo) out.data = (g.data.array() - lo) / (hi - lo);
    out.value_range_hint = {0.0, 1.0};
    return out;
}

void write_grid(const Grid& g, const std::string& path, GridFormat format) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("write_grid: cannot open " + path);
    if (format == GridFormat::f64raw) {
        write_u64_le(os, uint64_t(g.height));
        write_u64_le(os, uint64_t(g.width));
        for (int64_t i = 0; i < g.size(); ++i) {
            double v = g.data[i];
            static_assert(sizeof(double) == 8);
            uint64_t bits;
            std::memcpy(&bits, &v, 8);
            write_u64_le(os, bits);
        }
    } else {
        os << "P5\n" << g.width << " " << g.height << "\n65535\n";
        for (int64_t i = 0; i < g.size(); ++i) {
            double v = std::clamp(g.data[i], 0.0, 1.0);
            // round half away from zero: 0.5 -> 32768
            const auto q = uint16_t(std::llround(v * 65535.0));
            const unsigned char b[2] = {(unsigned char)(q >> 8), (unsigned char)(q & 0xff)};
            os.write(reinterpret_cast<const char*>(b), 2);
        }
    }
    if (!os) throw std::runtime_error("write_grid: I/O failure writing " + path);
}

Grid read_grid(const std::string& path, GridFormat format) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("read_grid: cannot open " + path);
    if (format == GridFormat::f64raw) {
        const uint64_t h = read_u64_le(is);
        const uint64_t w = read_u64_le(is);
        if (h == 0 || w == 0 || h > (1u << 20) || w > (1u << 20))
            throw std::runtime_error("f64raw: implausible dims in header");
        Grid g{int(h), int(w)};
        for (int64_t i = 0; i < g.size(); ++i) {
            const uint64_t bits = read_u64_le(is);
            std::memcpy(&g.data[i], &bits, 8);
        }
        return g;
    }
    std::string magic;
    is >> magic;
    if (magic != "P5") throw std::runtime_error("pgm16: bad magic (want P5)");
    int64_t w = 0, h = 0, maxval = 0;
    is >> w >> h >> maxval;
    if (!is || w <= 0 || h <= 0) throw std::runtime_error("pgm16: malformed header");
    if (maxval != 65535) throw std::runtime_error("pgm16: maxval must be 65535");
    is.get();  // single whitespace after header
    Grid g{int(h), int(w)};
    for (int64_t i = 0; i < g.size(); ++i) {
        unsigned char b[2];
        is.read(reinterpret_cast<char*>(b), 2);
        if (!is) throw std::runtime_error("pgm16: truncated sample data");
        g.data[i] = double((uint16_t(b[0]) << 8) | b[1]) / 65535.0;
    }
    g.value_range_hint = {0.0, 1.0};
    return g;
}

}  // namespace hgu
