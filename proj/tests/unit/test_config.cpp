#include "ssfem/config.hpp"
#include "ssfem/errors.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace ssfem;

TEST(Config, Defaults) {
  const RunConfig c;
  EXPECT_EQ(c.L, 3);
  EXPECT_EQ(c.p_u, 3);
  EXPECT_EQ(c.input_order(), 6);
  EXPECT_DOUBLE_EQ(c.sigma, 0.3);
  EXPECT_DOUBLE_EQ(c.corr_length, 1.0);
  EXPECT_EQ(c.level, 3);
  EXPECT_NO_THROW(c.validate());
}

TEST(Config, ParsesKeyValueText) {
  RunConfig c;
  std::istringstream in("# run\n  L = 2\np_u=1 # trailing\n\nsigma = 0.1\np_A = 3\nmesh = /tmp/m.txt\nb = 0.5\n");
  read_config(in, c);
  EXPECT_EQ(c.L, 2);
  EXPECT_EQ(c.p_u, 1);
  EXPECT_EQ(c.input_order(), 3);
  EXPECT_DOUBLE_EQ(c.sigma, 0.1);
  EXPECT_DOUBLE_EQ(c.corr_length, 0.5);
  EXPECT_EQ(c.mesh, "/tmp/m.txt");
}

TEST(Config, Errors) {
  RunConfig c;
  EXPECT_THROW(c.set("colour", "red"), ConfigError);
  EXPECT_THROW(c.set("L", "three"), ConfigError);
  EXPECT_THROW(c.set("L", "3x"), ConfigError);
  EXPECT_THROW(c.set("sigma", ""), ConfigError);
  std::istringstream in("L 3\n");
  EXPECT_THROW(read_config(in, c), ConfigError);
  EXPECT_THROW(load_config("/nonexistent/run.cfg", c), IoError);
  for (auto [k, v] : {std::pair{"L", "0"}, {"p_u", "-1"}, {"sigma", "-0.1"}, {"corr_length", "0"}, {"level", "0"},
                      {"tol", "0"}, {"a", "0.4"}, {"nx", "0"}}) {
    RunConfig bad;
    bad.set(k, v);
    EXPECT_THROW(bad.validate(), ConfigError) << k;
  }
}

TEST(Config, BuildProblem) {
  RunConfig c;
  c.nx = 6;
  c.ny = 4;
  c.L = 4;
  const auto p = build_problem(c);
  EXPECT_EQ(p.mesh.num_nodes(), 35u);
  EXPECT_EQ(p.expansion.size(), 4u);
  EXPECT_EQ(p.modes.dimension, 4);
  EXPECT_NEAR(p.expansion.pairs[0].lambda, 0.09 * 0.7388 * 0.7388, 1e-4);
}
