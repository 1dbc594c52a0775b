#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "hdremesh/config.hpp"
#include "hdremesh/errors.hpp"
#include "hdremesh/experiments.hpp"
#include "hdremesh/simulation.hpp"

using namespace hdremesh;

TEST(Config, ParsesScalarsListsAndComments) {
    const Config c = Config::parse_string(
        "# sweep\n"
        "old_edges = 0.5, 0.25 ,0.1\n"
        "  pressure=0.02   # inline\n"
        "frequencies = 0,1,2\n"
        "name = square\n"
        "identity = true\n"
        "seed = 18446744073709551615\n");
    EXPECT_EQ(c.get_doubles("old_edges", {}), (std::vector<double>{0.5, 0.25, 0.1}));
    EXPECT_DOUBLE_EQ(c.get_double("pressure", 0.0), 0.02);
    EXPECT_EQ(c.get_ints("frequencies", {}), (std::vector<long>{0, 1, 2}));
    EXPECT_EQ(c.get_string("name", ""), "square");
    EXPECT_TRUE(c.get_bool("identity", false));
    EXPECT_EQ(c.get_uint("seed", 0), 18446744073709551615ull);
    EXPECT_DOUBLE_EQ(c.get_double("missing", 4.5), 4.5);
}

TEST(Config, Errors) {
    EXPECT_THROW(Config::parse_string("a = 1\na = 2\n"), ConfigError);
    EXPECT_THROW(Config::parse_string("no equals sign\n"), ConfigError);
    EXPECT_THROW(Config::parse_string(" = 3\n"), ConfigError);
    const Config c = Config::parse_string("x = 1.5abc\nflag = maybe\n");
    EXPECT_THROW(c.get_double("x", 0.0), ConfigError);
    EXPECT_THROW(c.get_bool("flag", false), ConfigError);
    EXPECT_THROW(c.require_known({"x"}), ConfigError);
    EXPECT_THROW(Config::load("/nonexistent/hdremesh.cfg"), IoError);
}

TEST(Config, LoadsFromFile) {
    const auto path = std::filesystem::temp_directory_path() / "hdremesh_test_config.cfg";
    {
        std::ofstream out(path);
        out << "t_end = 12\nfrequencies = 1, 2\n";
    }
    const FrequencyExperimentConfig f = FrequencyExperimentConfig::from(Config::load(path));
    EXPECT_DOUBLE_EQ(f.t_end, 12.0);
    EXPECT_EQ(f.frequencies, (std::vector<long>{1, 2}));
    std::filesystem::remove(path);
}

TEST(Config, ExperimentConfigsRejectUnknownKeysAndBadValues) {
    EXPECT_THROW(SquareExperimentConfig::from(Config::parse_string("sid = 3\n")), ConfigError);
    EXPECT_THROW(SimulationConfig::from(Config::parse_string("dt = -1\n")), ConfigError);
    EXPECT_THROW(SimulationConfig::from(Config::parse_string("remesh_iterations = 0\n")),
                 ConfigError);
    const SimulationConfig s =
        SimulationConfig::from(Config::parse_string("kappa_s = 0.02\npressure = 0.001\n"));
    EXPECT_DOUBLE_EQ(s.params.kappa_s, 0.02);
    EXPECT_DOUBLE_EQ(s.pressure, 0.001);
}
