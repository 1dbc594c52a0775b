#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include <sys/wait.h>

#include "hdremesh/deformation.hpp"
#include "hdremesh/mesh_io.hpp"
#include "hdremesh/shapes.hpp"

using namespace hdremesh;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code = 0;
    std::string output;
};

Outcome run(const std::string& args) {
    const std::string cmd = std::string(HDREMESH_CLI_PATH) + " " + args + " 2>&1";
    Outcome o;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) {
        o.code = -1;
        return o;
    }
    char buf[512];
    while (std::fgets(buf, sizeof buf, pipe) != nullptr) {
        o.output += buf;
    }
    const int status = pclose(pipe);
    o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return o;
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("hdremesh_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }
    fs::path dir_;
};

} // namespace

TEST_F(CliTest, RemeshWritesHistoryPairAndReport) {
    SurfaceMesh m = shapes::square(3.0, 0.3, 1);
    auto pts = m.positions(Configuration::current);
    for (auto& p : pts) {
        p = AnalyticDeformation::square_quadratic().evaluate(p);
    }
    m.set_positions(Configuration::current, pts);
    io::write_history_pair(m, path("old_initial.off"), path("old_current.off"));

    const Outcome o = run("remesh --old-initial " + path("old_initial.off") + " --old-current " +
                          path("old_current.off") + " --target-edge-length 0.3 --out-prefix " +
                          path("out/new"));
    ASSERT_EQ(o.code, 0) << o.output;
    const SurfaceMesh back = io::read_history_pair(path("out/new_initial.off"), path("out/new_current.off"));
    EXPECT_EQ(back.mode(), DimensionMode::planar2d);
    EXPECT_NEAR(total_area(back, Configuration::initial), 9.0, 0.05);
    std::ifstream report(path("out/new_transfer.csv"));
    std::string header;
    std::getline(report, header);
    EXPECT_EQ(header, "node,element,case,c3");
}

TEST_F(CliTest, MissingInputIsAnArgumentError) {
    const Outcome o = run("remesh --old-initial " + path("nope.off") + " --old-current " +
                          path("nope.off") + " --target-edge-length 0.1 --out-prefix x");
    EXPECT_EQ(o.code, 2);
    EXPECT_EQ(o.output.rfind("error[invalid_argument]: ", 0), 0u) << o.output;
}

TEST_F(CliTest, BadConfigIsAConfigError) {
    std::ofstream(path("bad.cfg")) << "pressure = lots\n";
    const Outcome o = run("simulate --config " + path("bad.cfg") + " --out-dir " + path("sim"));
    EXPECT_EQ(o.code, 1);
    EXPECT_EQ(o.output.rfind("error[config]: ", 0), 0u) << o.output;
}

TEST_F(CliTest, MismatchedPairIsAnIoError) {
    io::write_mesh_file(path("a.off"), shapes::sphere(1.0, 1), Configuration::current);
    io::write_mesh_file(path("b.off"), shapes::sphere(1.0, 2), Configuration::current);
    const Outcome o = run("remesh --old-initial " + path("a.off") + " --old-current " + path("b.off") +
                          " --target-edge-length 0.3 --out-prefix " + path("x"));
    EXPECT_EQ(o.code, 1);
    EXPECT_EQ(o.output.rfind("error[io]: ", 0), 0u) << o.output;
}

TEST_F(CliTest, SquareExperimentWritesCsvs) {
    std::ofstream(path("sq.cfg")) << "old_edges = 0.5, 0.4\nnew_edges = 0.5\nfixed_new_edge = 0.4\n"
                                     "fixed_old_edge = 0.4\n";
    const Outcome o = run("exp-square --config " + path("sq.cfg") + " --seed 3 --out-dir " + path("res"));
    ASSERT_EQ(o.code, 0) << o.output;
    for (const char* f : {"square_old_edge_sweep.csv", "square_new_edge_sweep.csv", "square.meta.json",
                          "square_aspect_ratio.csv"}) {
        EXPECT_TRUE(fs::exists(dir_ / "res" / f)) << f;
    }
    std::ifstream csv(dir_ / "res" / "square_old_edge_sweep.csv");
    std::string header, row;
    std::getline(csv, header);
    std::getline(csv, row);
    EXPECT_EQ(header, "level,median,q1,q3,min,max,n_samples,achieved_edge_length,seed");
    EXPECT_EQ(row.substr(row.rfind(',') + 1), "3");
}

TEST_F(CliTest, UnknownSubcommandFails) {
    const Outcome o = run("frobnicate");
    EXPECT_EQ(o.code, 2);
    EXPECT_NE(o.output.find("error[invalid_argument]"), std::string::npos);
}

TEST_F(CliTest, HelpSucceeds) {
    const Outcome o = run("--help");
    EXPECT_EQ(o.code, 0);
    EXPECT_NE(o.output.find("exp-frequency"), std::string::npos);
}
