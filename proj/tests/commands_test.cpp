#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <gtest/gtest.h>

#include "ringeq/commands.hpp"

using namespace ringeq;
using namespace ringeq::cli;
namespace fs = std::filesystem;

namespace {

class Commands : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("ringeq_cmd_" + std::to_string(::getpid()) + "_" +
                ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::remove_all(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::map<std::string, std::string> record(const fs::path& p) const {
        std::ifstream f(p);
        std::stringstream ss;
        ss << f.rdbuf();
        std::map<std::string, std::string> m;
        for (auto& [k, v] : io::parse_record(ss.str())) m[k] = v;
        return m;
    }

    fs::path dir_;
};

}  // namespace

TEST_F(Commands, ShapeWritesFilesAndRecord) {
    ShapeArgs a;
    a.n = 3;
    a.sigma = 16.25;
    a.samples = 3000;
    a.out = (dir_ / "s3").string();
    const auto res = cmd_shape(a);
    ASSERT_EQ(res.exit_code, 0) << res.message;
    EXPECT_TRUE(fs::exists(dir_ / "s3.csv"));
    EXPECT_TRUE(fs::exists(dir_ / "s3.svg"));
    const auto m = record(dir_ / "s3.record");
    EXPECT_EQ(m.at("command"), "shape");
    EXPECT_EQ(m.at("output.self_intersecting"), "false");
    for (const char* k : {"output.eta", "output.q", "output.alpha", "output.beta", "output.mu", "output.epsilon",
                          "output.k1", "output.lambda1", "output.T1", "output.residual_closure",
                          "output.residual_length", "file.csv", "file.svg", "file.record"}) {
        EXPECT_TRUE(m.count(k)) << k;
    }
    // re-running with the recorded inputs reproduces the residuals
    const auto again = cmd_shape(a);
    const auto m2 = record(dir_ / "s3.record");
    EXPECT_NEAR(std::stod(m2.at("output.residual_closure")), std::stod(m.at("output.residual_closure")), 1e-12);
}

TEST_F(Commands, ShapeRecordsSelfIntersection) {
    ShapeArgs a;
    a.n = 2;
    a.sigma = 9.24;
    a.formats = {"csv"};
    a.out = (dir_ / "s2").string();
    ASSERT_EQ(cmd_shape(a).exit_code, 0);
    EXPECT_EQ(record(dir_ / "s2.record").at("output.self_intersecting"), "true");
    EXPECT_FALSE(fs::exists(dir_ / "s2.svg"));
}

TEST_F(Commands, ExitCodes) {
    ShapeArgs a;
    a.n = 2;
    a.sigma = 3.0;
    a.out = (dir_ / "b").string();
    EXPECT_EQ(cmd_shape(a).exit_code, kDomain);
    a.sigma = 4.0;
    a.formats = {"png"};
    EXPECT_EQ(cmd_shape(a).exit_code, kUsage);
    a.formats = {"csv"};
    a.n = 3;
    a.sigma = 16.25;
    a.tol = 1e-30;
    EXPECT_EQ(cmd_shape(a).exit_code, kConvergence);

    ContactTableArgs t;
    t.n_min = 5;
    t.n_max = 4;
    EXPECT_EQ(cmd_contact_table(t).exit_code, kUsage);

    ContactShapeArgs c;
    c.n = 2;
    c.sigma_hat = 5.0;
    c.out = (dir_ / "c").string();
    EXPECT_EQ(cmd_contact_shape(c).exit_code, kDomain);
}

TEST_F(Commands, SingleRowTable) {
    ContactTableArgs t;
    t.n_min = t.n_max = 2;
    t.out = (dir_ / "t.csv").string();
    const auto res = cmd_contact_table(t);
    ASSERT_EQ(res.exit_code, 0) << res.message;
    std::ifstream f(t.out);
    std::string header, row, extra;
    std::getline(f, header);
    std::getline(f, row);
    EXPECT_EQ(header, "n,sigma_cn,eta,q,s1_minus,s1_plus,residuals");
    EXPECT_EQ(row.substr(0, 2), "2,");
    EXPECT_NEAR(std::stod(row.substr(2)), 5.247, 5.247e-3);
    EXPECT_FALSE(std::getline(f, extra));
    const auto m = record(t.out + ".record");
    EXPECT_EQ(m.at("output.n2.alternative"), "no_root");
}

TEST_F(Commands, ContactShape) {
    ContactShapeArgs c;
    c.n = 4;
    c.sigma_hat = 207.2;
    c.out = (dir_ / "c4").string();
    const auto res = cmd_contact_shape(c);
    ASSERT_EQ(res.exit_code, 0) << res.message;
    const auto m = record(dir_ / "c4.record");
    EXPECT_LE(std::stod(m.at("output.force_residual")), 1e-5);
    EXPECT_NEAR(std::stod(m.at("output.conductivity_ratio")),
                std::pow(std::stod(m.at("output.sigma_cn")) / 207.2, 4.0 / 3.0), 1e-12);
    EXPECT_TRUE(fs::exists(dir_ / "c4.csv"));
}

TEST(Environment, ToleranceOverride) {
    ::unsetenv("RING_EQ_TOL");
    EXPECT_EQ(residual_tolerance_from_env(), 1e-10);
    ::setenv("RING_EQ_TOL", "1e-8", 1);
    EXPECT_EQ(residual_tolerance_from_env(), 1e-8);
    ::setenv("RING_EQ_TOL", "-1", 1);
    EXPECT_THROW(residual_tolerance_from_env(), UsageError);
    ::unsetenv("RING_EQ_TOL");
}
