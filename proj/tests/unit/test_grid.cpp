#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "hgu/grid.hpp"
#include "hgu/rng.hpp"

using namespace hgu;

namespace {

// Independent point-in-ellipse oracle (same published parameter set,
// evaluated directly; the implementation is not consulted).
double shepp_logan_point_oracle(double x, double y) {
    static const double E[10][6] = {
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
    };
    double v = 0.0;
    for (const auto& e : E) {
        const double p = e[5] * M_PI / 180.0;
        const double dx = x - e[3], dy = y - e[4];
        const double xr = dx * std::cos(p) + dy * std::sin(p);
        const double yr = -dx * std::sin(p) + dy * std::cos(p);
        if ((xr / e[1]) * (xr / e[1]) + (yr / e[2]) * (yr / e[2]) <= 1.0) v += e[0];
    }
    return v;
}

std::filesystem::path tmp_file(const char* name) {
    auto p = std::filesystem::temp_directory_path() / name;
    std::filesystem::remove(p);
    return p;
}

}  // namespace

TEST_CASE("shepp-logan phantom") {
    const Grid g = generate_shepp_logan(128);
    CHECK(g.height == 128);
    CHECK(g.width == 128);
    CHECK(g.data.minCoeff() >= 0.0);
    CHECK(g.data.maxCoeff() <= 1.0);
    CHECK(g.all_finite());

    // center of the grid sits deep inside ellipses 1+2, so the area-sampled
    // pixel equals the point membership sum at (0,0)
    CHECK(g.at(64, 64) == doctest::Approx(shepp_logan_point_oracle(0.0, 0.0)).epsilon(1e-12));

    const Grid g16 = generate_shepp_logan(16);
    CHECK(g16.data.maxCoeff() > 0.0);

    CHECK_THROWS_AS(generate_shepp_logan(15), std::invalid_argument);

    const Grid again = generate_shepp_logan(128);
    CHECK(again.data == g.data);  // deterministic
}

TEST_CASE("normalize_01") {
    Grid c(4, 4, Vec::Constant(16, 5.0));
    CHECK(normalize_01(c).data.cwiseAbs().maxCoeff() == 0.0);

    Grid g(1, 3);
    g.data << 0.0, 2.0, 4.0;
    const Grid n = normalize_01(g);
    CHECK(n.data[0] == doctest::Approx(0.0));
    CHECK(n.data[1] == doctest::Approx(0.5));
    CHECK(n.data[2] == doctest::Approx(1.0));

    // identity on a grid already spanning [0,1]
    Grid u(2, 2);
    u.data << 0.0, 0.25, 0.75, 1.0;
    CHECK((normalize_01(u).data - u.data).cwiseAbs().maxCoeff() < 1e-12);

    // idempotent
    RngStream rng(7);
    Grid r(8, 8, rng.normal_vec(64));
    const Grid n1 = normalize_01(r);
    const Grid n2 = normalize_01(n1);
    CHECK((n2.data - n1.data).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("f64raw round-trip is exact") {
    RngStream rng(3);
    Grid g(5, 9, rng.normal_vec(45) * 1e6);
    g.data[0] = -0.0;
    g.data[1] = 1e-300;
    const auto path = tmp_file("hgu_test_grid.f64raw");
    write_grid(g, path.string(), GridFormat::f64raw);
    const Grid r = read_grid(path.string(), GridFormat::f64raw);
    CHECK(r.height == 5);
    CHECK(r.width == 9);
    CHECK(r.data == g.data);
    std::filesystem::remove(path);
}

TEST_CASE("pgm16 quantization and round-trip") {
    Grid g(2, 2, Vec::Constant(4, 0.5));
    const auto path = tmp_file("hgu_test_grid.pgm");
    write_grid(g, path.string(), GridFormat::pgm16);

    // 0.5 * 65535 = 32767.5 rounds away from zero to 32768
    std::ifstream is(path, std::ios::binary);
    std::string header;
    std::getline(is, header);  // P5
    std::getline(is, header);  // dims
    std::getline(is, header);  // maxval
    unsigned char b[2];
    is.read(reinterpret_cast<char*>(b), 2);
    CHECK(((uint16_t(b[0]) << 8) | b[1]) == 32768);

    RngStream rng(11);
    Grid u(6, 4);
    for (int64_t i = 0; i < u.size(); ++i) u.data[i] = rng.uniform();
    write_grid(u, path.string(), GridFormat::pgm16);
    const Grid r = read_grid(path.string(), GridFormat::pgm16);
    CHECK((r.data - u.data).cwiseAbs().maxCoeff() <= 1.0 / 65535.0 + 1e-12);
    std::filesystem::remove(path);
}

TEST_CASE("read_grid failure paths") {
    const auto path = tmp_file("hgu_test_trunc.f64raw");
    {
        std::ofstream os(path, std::ios::binary);
        const char junk[20] = {4, 0, 0, 0, 0, 0, 0, 0, 4, 0, 0, 0, 0, 0, 0, 0, 1, 2, 3, 4};
        os.write(junk, sizeof junk);  // header says 4x4 but data is truncated
    }
    CHECK_THROWS_AS(read_grid(path.string(), GridFormat::f64raw), std::runtime_error);
    CHECK_THROWS_AS(read_grid((path.string() + ".missing"), GridFormat::f64raw), std::runtime_error);
    {
        std::ofstream os(path, std::ios::binary);
        os << "P6\n2 2\n65535\n";
    }
    CHECK_THROWS_AS(read_grid(path.string(), GridFormat::pgm16), std::runtime_error);
    std::filesystem::remove(path);
}
