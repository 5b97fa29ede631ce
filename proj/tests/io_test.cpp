#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include <gtest/gtest.h>

#include "ringeq/io.hpp"
#include "ringeq/solver.hpp"

using namespace ringeq;
namespace fs = std::filesystem;

namespace {

ShapePolyline small_shape() { return sample_shape(solve_equilibrium(3, 16.25).solution(), 3, 96); }

std::string slurp(const fs::path& p) {
    std::ifstream f(p);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

TEST(Io, FormatRoundTrips) {
    for (double v : {0.1, 1.0 / 3.0, -2.5e-17, 1632.8904131234}) EXPECT_EQ(std::stod(io::fmt(v)), v);
}

TEST(Io, CsvHeaderAndPrecision) {
    const auto poly = small_shape();
    const auto csv = io::shape_csv(poly);
    std::istringstream is(csv);
    std::string line;
    std::getline(is, line);
    EXPECT_EQ(line, "s,x,y,kappa,phi,M,N,Q");
    std::size_t rows = 0;
    while (std::getline(is, line)) {
        ++rows;
        EXPECT_EQ(std::count(line.begin(), line.end(), ','), 7);
    }
    EXPECT_EQ(rows, poly.samples.size());
    // second row, x column parses back exactly
    std::istringstream again(csv);
    std::getline(again, line);
    std::getline(again, line);
    std::getline(again, line);
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    EXPECT_EQ(std::stod(line.substr(c1 + 1, c2 - c1 - 1)), poly.samples[1].x);
}

TEST(Io, SvgIsOneClosedPathWithMargin) {
    const auto poly = small_shape();
    const auto svg = io::shape_svg(poly);
    EXPECT_NE(svg.find("version=\"1.1\""), std::string::npos);
    EXPECT_EQ(std::count(svg.begin(), svg.end(), 'M'), 1);
    std::size_t paths = 0;
    for (auto p = svg.find("<path"); p != std::string::npos; p = svg.find("<path", p + 1)) ++paths;
    EXPECT_EQ(paths, 1u);
    EXPECT_NE(svg.find(" Z\""), std::string::npos);
    EXPECT_EQ(svg.find("href"), std::string::npos);

    std::smatch m;
    ASSERT_TRUE(std::regex_search(svg, m, std::regex("viewBox=\"([^ ]+) ([^ ]+) ([^ ]+) ([^\"]+)\"")));
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& s : poly.samples) {
        xmin = std::min(xmin, s.x), xmax = std::max(xmax, s.x);
        ymin = std::min(ymin, -s.y), ymax = std::max(ymax, -s.y);
    }
    const double pad = 0.05 * std::max(xmax - xmin, ymax - ymin);
    EXPECT_NEAR(std::stod(m[1]), xmin - pad, 1e-12);
    EXPECT_NEAR(std::stod(m[2]), ymin - pad, 1e-12);
    EXPECT_NEAR(std::stod(m[3]), xmax - xmin + 2 * pad, 1e-12);
    EXPECT_NEAR(std::stod(m[4]), ymax - ymin + 2 * pad, 1e-12);
}

TEST(Io, AtomicWriteReplacesAndLeavesNoTemporaries) {
    const auto dir = fs::temp_directory_path() / ("ringeq_io_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    const auto target = dir / "sub" / "a.txt";
    io::atomic_write(target, "first");
    io::atomic_write(target, "second");
    EXPECT_EQ(slurp(target), "second");
    std::size_t files = 0;
    for ([[maybe_unused]] const auto& e : fs::directory_iterator(target.parent_path())) ++files;
    EXPECT_EQ(files, 1u);
    fs::remove_all(dir);
}

TEST(Io, RecordRoundTrip) {
    io::RunRecord r{"shape", "v", {}, {}, {}};
    r.input("n", 3);
    r.input("sigma", 16.25);
    r.output("flag", true);
    r.output("eta", 0.1);
    r.files.emplace_back("csv", "out.csv");
    const auto kv = io::parse_record(r.text());
    ASSERT_EQ(kv.size(), 7u);
    EXPECT_EQ(kv[0], (std::pair<std::string, std::string>{"command", "shape"}));
    EXPECT_EQ(kv[2].first, "input.n");
    EXPECT_EQ(kv[4].second, "true");
    EXPECT_EQ(std::stod(kv[5].second), 0.1);
    EXPECT_EQ(kv[6].first, "file.csv");
    EXPECT_THROW(io::parse_record("no equals sign"), Error);
}
