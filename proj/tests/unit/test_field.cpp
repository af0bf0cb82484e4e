#include "ssfem/field.hpp"
#include "ssfem/mesh.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <limits>
#include <random>
#include <sstream>

using namespace ssfem;

namespace {

StochasticField random_field(std::shared_ptr<const pce::PceBasis> basis, std::size_t nodes, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<double> c(basis->size() * nodes);
  for (auto& v : c) v = u(rng) * std::pow(10.0, std::floor(u(rng) * 3));
  return StochasticField(basis, nodes, FieldRole::Solution, c);
}

} // namespace

TEST(Field, Layout) {
  auto basis = std::make_shared<const pce::PceBasis>(2, 1);
  StochasticField f(basis, 4, FieldRole::Solution);
  EXPECT_EQ(f.num_terms(), 3u);
  EXPECT_EQ(f.num_nodes(), 4u);
  f(2, 3) = 5.0;
  EXPECT_EQ(f.coeffs()[2 * 4 + 3], 5.0);
  EXPECT_EQ(f.row(2)[3], 5.0);
  EXPECT_THROW(StochasticField(basis, 4, FieldRole::Solution, std::vector<double>(11)), std::invalid_argument);
  EXPECT_THROW(StochasticField(nullptr, 4, FieldRole::Solution), std::invalid_argument);
}

TEST(Field, Evaluate) {
  auto basis = std::make_shared<const pce::PceBasis>(2, 2);
  const auto f = random_field(basis, 3, 1);
  const std::vector<double> xi{0.3, -1.1};
  const auto v = f.evaluate(xi);
  for (std::size_t n = 0; n < 3; ++n) {
    double s = 0.0;
    for (std::size_t j = 0; j < basis->size(); ++j) s += f(j, n) * basis->eval(j, xi);
    EXPECT_NEAR(v[n], s, 1e-12 * (1 + std::abs(s)));
  }
}

TEST(Field, Validate) {
  auto basis = std::make_shared<const pce::PceBasis>(1, 1);
  StochasticField in(basis, 2, FieldRole::InputCoefficient, {1.0, 2.0, 0.1, -0.1});
  EXPECT_NO_THROW(in.validate());
  in(0, 1) = 0.0;
  EXPECT_THROW(in.validate(), std::invalid_argument);
  StochasticField sol(basis, 2, FieldRole::Solution, {0.0, -2.0, 0.1, -0.1});
  EXPECT_NO_THROW(sol.validate());
  sol(1, 0) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(sol.validate(), std::invalid_argument);
}

TEST(FieldCsv, LosslessRoundTrip) {
  const auto m = mesh::structured_mesh(5, 3);
  auto basis = std::make_shared<const pce::PceBasis>(3, 2);
  const auto f = random_field(basis, m.num_nodes(), 42);
  std::stringstream ss;
  write_field_csv(ss, m.nodes, f);
  std::string header;
  std::getline(std::istringstream(ss.str()), header);
  EXPECT_EQ(header, "node,x,y,c0,c1,c2,c3,c4,c5,c6,c7,c8,c9");
  const auto csv = read_field_csv(ss);
  ASSERT_EQ(csv.num_terms, basis->size());
  ASSERT_EQ(csv.nodes.size(), m.num_nodes());
  for (std::size_t n = 0; n < m.num_nodes(); ++n) {
    EXPECT_NEAR(csv.nodes[n][0], m.nodes[n][0], 1e-15);
    EXPECT_NEAR(csv.nodes[n][1], m.nodes[n][1], 1e-15);
  }
  for (std::size_t i = 0; i < f.coeffs().size(); ++i)
    EXPECT_NEAR(csv.coeffs[i], f.coeffs()[i], 5e-15 * std::abs(f.coeffs()[i]));
}

TEST(FieldCsv, FileRoundTripAndColumnCheck) {
  const auto m = mesh::structured_mesh(2, 2);
  auto basis = std::make_shared<const pce::PceBasis>(2, 2);
  const auto f = random_field(basis, m.num_nodes(), 3);
  const auto path = (std::filesystem::temp_directory_path() / "ssfem_field.csv").string();
  write_field_csv(path, m.nodes, f);
  const auto back = load_field_csv(path, basis, FieldRole::Solution);
  EXPECT_EQ(back.num_nodes(), f.num_nodes());
  EXPECT_THROW(load_field_csv(path, std::make_shared<const pce::PceBasis>(2, 1), FieldRole::Solution), IoError);
  std::filesystem::remove(path);
  EXPECT_THROW(load_field_csv(path, basis, FieldRole::Solution), IoError);
}

TEST(FieldCsv, NodalVector) {
  const auto m = mesh::structured_mesh(2, 1);
  const std::vector<double> u{1, 2, 3, 4, 5, 6};
  const auto path = (std::filesystem::temp_directory_path() / "ssfem_nodal.csv").string();
  write_nodal_csv(path, m.nodes, u);
  const auto csv = read_field_csv(path);
  std::filesystem::remove(path);
  EXPECT_EQ(csv.num_terms, 1u);
  EXPECT_EQ(csv.coeffs, u);
}

TEST(FieldCsv, MalformedInput) {
  auto bad = [](const std::string& text) {
    std::istringstream in(text);
    return read_field_csv(in);
  };
  EXPECT_THROW(bad(""), IoError);
  EXPECT_THROW(bad("id,x,y,c0\n"), IoError);
  EXPECT_THROW(bad("node,x,y\n"), IoError);
  EXPECT_THROW(bad("node,x,y,c1\n"), IoError);
  EXPECT_THROW(bad("node,x,y,c0\n0,0,0\n"), IoError);
  EXPECT_THROW(bad("node,x,y,c0\n1,0,0,1\n"), IoError);
  EXPECT_THROW(bad("node,x,y,c0\n0,0,zero,1\n"), IoError);
  EXPECT_NO_THROW(bad("node,x,y,c0\n0,0,0,1\n1,1,0,2\n"));
}
