#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "bineg/errors.hpp"
#include "bineg/serialize.hpp"

namespace bineg {
namespace {

TEST(FormatDouble, SeventeenDigitsRoundTrip) {
  for (double x : {0.1, 1.0 / 3.0, 147.0 / 400.0, 1e-300, -2.5, 0.0}) {
    const std::string s = format_double(x);
    EXPECT_EQ(std::stod(s), x) << s;
  }
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(std::nan("")), "null");
}

TEST(DumpJson, InlineScalarArraysAndSortedKeys) {
  const Json j{{"b", 1}, {"a", Json::array({0.5, 2})}};
  EXPECT_EQ(dump_json(j), "{\n  \"a\": [0.5, 2],\n  \"b\": 1\n}");
  EXPECT_EQ(dump_json(j, -1), "{\"a\":[0.5,2],\"b\":1}");
  EXPECT_EQ(Json::parse(dump_json(j)), j);
}

TEST(MatrixJson, RoundTripIsExact) {
  Rng rng(3);
  const Matrix m = gaussian_matrix(4, 3, rng);
  const Matrix back = matrix_from_json(Json::parse(dump_json(matrix_to_json(m))));
  EXPECT_EQ((back - m).norm(), 0.0);
}

TEST(MatrixJson, Errors) {
  EXPECT_THROW(matrix_from_json(Json::array()), ParseError);
  EXPECT_THROW(matrix_from_json(Json::parse("[[[1,0]],[[1,0],[0,0]]]")), ParseError);
  EXPECT_THROW(matrix_from_json(Json::parse("[[1]]")), ParseError);
  EXPECT_THROW(matrix_from_json(Json::parse("[[[1,\"x\"]]]")), ParseError);
}

TEST(StateJson, RoundTripAndValidation) {
  const DensityMatrix rho = random_mixed(2, 4);
  EXPECT_EQ((state_from_json(state_to_json(rho)).matrix() - rho.matrix()).norm(), 0.0);
  EXPECT_THROW(state_from_json(matrix_to_json(Matrix::Identity(4, 4))), InvalidState);
}

TEST(ChannelJson, RoundTrip) {
  Rng rng(5);
  const KrausChannel ch = one_way_locc_channel(2, rng);
  const KrausChannel back = channel_from_json(channel_to_json(ch));
  ASSERT_EQ(back.ops().size(), ch.ops().size());
  for (std::size_t i = 0; i < ch.ops().size(); ++i) EXPECT_EQ((back.ops()[i] - ch.ops()[i]).norm(), 0.0);
  EXPECT_THROW(channel_from_json(Json::array()), ParseError);
}

TEST(FamilySpec, ParsesEveryForm) {
  EXPECT_LE((parse_family_spec("sigma_pqr:0.5,0.3,0.7").state.matrix() - sigma_pqr({0.5, 0.3, 0.7}).matrix()).norm(),
            0.0);
  EXPECT_LE((parse_family_spec("mems:0.5").state.matrix() - sigma_mems(0.5).matrix()).norm(), 0.0);
  EXPECT_LE((parse_family_spec("sigma_mems: 0.5").state.matrix() - sigma_mems(0.5).matrix()).norm(), 0.0);
  EXPECT_LE((parse_family_spec("rho1").state.matrix() - rho1().matrix()).norm(), 0.0);
  EXPECT_LE((parse_family_spec("rho2").state.matrix() - rho2().matrix()).norm(), 0.0);
  EXPECT_NO_THROW(parse_family_spec("boundary:0.5,0.375,0.2"));
  EXPECT_NO_THROW(parse_family_spec("phi_plus"));
  EXPECT_NO_THROW(parse_family_spec("psi_minus"));
  EXPECT_NO_THROW(parse_family_spec("phi_q:0.3"));
  EXPECT_NO_THROW(parse_family_spec("psi_r:0.3"));
  EXPECT_NO_THROW(parse_family_spec("basis:2"));
  EXPECT_EQ(parse_family_spec("rho1").description.at("name"), "rho1");
}

TEST(FamilySpec, Errors) {
  EXPECT_THROW(parse_family_spec("nonsense"), ParseError);
  EXPECT_THROW(parse_family_spec("mems:abc"), ParseError);
  EXPECT_THROW(parse_family_spec("mems:0.1,0.2"), ParseError);
  EXPECT_THROW(parse_family_spec("sigma_pqr:0.5,0.5"), ParseError);
  EXPECT_THROW(parse_family_spec("rho1:3"), ParseError);
  EXPECT_THROW(parse_family_spec("basis:1.5"), ParseError);
  EXPECT_THROW(parse_family_spec("mems:2"), OutOfRange);
  EXPECT_THROW(family_from_json(Json{{"family", "sigma_pqr"}, {"p", 0.5}}), ParseError);
}

TEST(LoadState, ReadsFiles) {
  const std::string matrix_path = testing::TempDir() + "bineg_state.json";
  {
    std::ofstream f(matrix_path);
    f << dump_json(state_to_json(rho2()));
  }
  const StateSpec a = load_state(matrix_path);
  EXPECT_LE((a.state.matrix() - rho2().matrix()).norm(), 0.0);
  EXPECT_EQ(a.description.at("family"), "matrix");

  const std::string family_path = testing::TempDir() + "bineg_family.json";
  {
    std::ofstream f(family_path);
    f << R"({"family": "sigma_mems", "c": 0.25})";
  }
  EXPECT_LE((load_state(family_path).state.matrix() - sigma_mems(0.25).matrix()).norm(), 0.0);

  const std::string broken = testing::TempDir() + "bineg_broken.json";
  {
    std::ofstream f(broken);
    f << "[[[1, 0]";
  }
  EXPECT_THROW(load_state(broken), ParseError);
  std::remove(matrix_path.c_str());
  std::remove(family_path.c_str());
  std::remove(broken.c_str());
}

TEST(MeasuresJson, Fields) {
  const Json j = measures_to_json({0.5, 0.375, 0.3675});
  EXPECT_EQ(j.at("c"), 0.5);
  EXPECT_EQ(j.at("nu"), 0.375);
  EXPECT_EQ(j.at("n2"), 0.3675);
}

}  // namespace
}  // namespace bineg
