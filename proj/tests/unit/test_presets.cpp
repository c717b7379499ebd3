#include <gtest/gtest.h>

#include <cmath>

#include "kgz/errors.hpp"
#include "kgz/harness/presets.hpp"

namespace kgz::harness {
namespace {

TEST(Presets, GaussSechAtOrigin) {
  const InitialData d = preset_initial_data("gauss_sech");
  EXPECT_EQ(d.E0(0.0), 0.0);
  EXPECT_EQ(d.E1(0.0), 1.0);
  EXPECT_EQ(d.w0(0.0), 1.0);
  EXPECT_EQ(d.w1(0.0), 0.0);
  EXPECT_NEAR(d.E0(1.0), std::exp(-1.0) * std::sin(1.0), 1e-16);
}

TEST(Presets, SmoothStepIsAPartitionOfUnity) {
  for (double x = -0.5; x <= 1.5; x += 0.01) {
    EXPECT_NEAR(smooth_step(x) + smooth_step(1.0 - x), 1.0, 1e-12) << "x = " << x;
    EXPECT_GE(smooth_step(x), 0.0);
    EXPECT_LE(smooth_step(x), 1.0);
  }
  EXPECT_EQ(smooth_step(0.0), 0.0);
  EXPECT_EQ(smooth_step(1.0), 1.0);
  EXPECT_EQ(smooth_step(0.5), 0.5);
}

TEST(Presets, BumpIsCompactlySupported) {
  const InitialData d = preset_initial_data("bump");
  for (double x : {-25.0, 25.0, -18.0, 18.0}) {
    EXPECT_EQ(d.w0(x), 0.0) << x;
    EXPECT_EQ(d.E0(x), 0.0) << x;
    EXPECT_EQ(d.E1(x), 0.0) << x;
  }
  EXPECT_NE(d.w0(0.0), 0.0);
}

TEST(Presets, UnknownNameListsAvailable) {
  try {
    preset_initial_data("gaussian");
    FAIL() << "expected ParameterError";
  } catch (const ParameterError& e) {
    const std::string msg = e.what();
    for (const auto& n : preset_names()) EXPECT_NE(msg.find(n), std::string::npos) << msg;
  }
}

TEST(Presets, NamedCases) {
  EXPECT_EQ(named_case("I").alpha, 1.0);
  EXPECT_EQ(named_case("I").beta, 0.0);
  EXPECT_EQ(named_case("II").alpha, 0.0);
  EXPECT_EQ(named_case("II").beta, -1.0);
  EXPECT_THROW(named_case("III"), ParameterError);
}

TEST(Presets, DomainGrowsWithInverseEps) {
  EXPECT_EQ(domain_for_eps(1.0), std::make_pair(-31.0, 31.0));
  EXPECT_EQ(domain_for_eps(0.25), std::make_pair(-34.0, 34.0));
  EXPECT_EQ(domain_for_eps(1.0 / 16), std::make_pair(-46.0, 46.0));
  EXPECT_EQ(domain_for_eps(1.0 / 256), std::make_pair(-286.0, 286.0));
  EXPECT_THROW(domain_for_eps(0.0), ParameterError);
  EXPECT_THROW(domain_for_eps(-1.0), ParameterError);
}

}  // namespace
}  // namespace kgz::harness
