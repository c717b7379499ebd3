#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "kgz/errors.hpp"
#include "kgz/harness/rate_table.hpp"

namespace kgz::harness {
namespace {

ErrorRow row(double eps, double h, double tau, double e, double n) {
  ErrorRow r;
  r.eps = eps;
  r.h = h;
  r.tau = tau;
  r.t = 1.0;
  r.e_err = e;
  r.n_err = n;
  return r;
}

RateTable spatial_table() {
  RateTable t;
  t.metadata = {{"mode", "spatial"}, {"preset", "gauss_sech"}};
  t.rows = {row(0.25, 0.1, 1e-4, 4e-3, 8e-3), row(1.0, 0.2, 1e-4, 1.6e-2, 3.2e-2),
            row(0.25, 0.2, 1e-4, 1.6e-2, 1.6e-2), row(1.0, 0.1, 1e-4, 4e-3, 1.6e-2)};
  return t;
}

TEST(RateTable, FinalizeOrdersRowsAndFillsRates) {
  RateTable t = spatial_table();
  t.finalize();
  ASSERT_EQ(t.rows.size(), 4u);
  EXPECT_EQ(t.rows[0].eps, 1.0);
  EXPECT_EQ(t.rows[0].h, 0.2);
  EXPECT_EQ(t.rows[1].h, 0.1);
  EXPECT_EQ(t.rows[2].eps, 0.25);
  EXPECT_FALSE(t.rows[0].rate_e);
  EXPECT_NEAR(*t.rows[1].rate_e, 2.0, 1e-14);
  EXPECT_NEAR(*t.rows[1].rate_n, 1.0, 1e-14);
  // Rates never cross eps blocks.
  EXPECT_FALSE(t.rows[2].rate_e);
  EXPECT_NEAR(*t.rows[3].rate_e, 2.0, 1e-14);
  EXPECT_EQ(t.rows_for(0.25).size(), 2u);
}

TEST(RateTable, NoRateBetweenRowsDifferingInBothParameters) {
  RateTable t;
  t.rows = {row(1.0, 0.2, 0.02, 1e-2, 1e-2), row(1.0, 0.1, 0.01, 2e-3, 2e-3)};
  t.finalize();
  EXPECT_FALSE(t.rows[1].rate_e);
  EXPECT_FALSE(t.rows[1].rate_n);
}

TEST(RateTable, CsvRoundTrip) {
  RateTable t = spatial_table();
  t.rows[2].error = "ill-conditioned tridiagonal system";
  t.rows[2].e_err = std::numeric_limits<double>::quiet_NaN();
  t.rows[2].n_err = std::numeric_limits<double>::quiet_NaN();
  t.finalize();
  const std::string csv = to_csv(t);
  const RateTable back = parse_csv(csv);
  EXPECT_EQ(back.metadata, t.metadata);
  ASSERT_EQ(back.rows.size(), t.rows.size());
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    EXPECT_EQ(back.rows[i].eps, t.rows[i].eps);
    EXPECT_EQ(back.rows[i].h, t.rows[i].h);
    EXPECT_EQ(back.rows[i].error, t.rows[i].error);
    EXPECT_EQ(back.rows[i].rate_e.has_value(), t.rows[i].rate_e.has_value());
  }
  EXPECT_EQ(to_csv(back), csv);
}

TEST(RateTable, CsvLayout) {
  RateTable t;
  t.metadata = {{"mode", "temporal"}};
  t.rows = {row(1.0, 0.005, 0.05, 1.23456789e-3, 2.0)};
  t.rows[0].error = "boom";
  t.rows[0].n_err = std::numeric_limits<double>::quiet_NaN();
  EXPECT_EQ(to_csv(t),
            "# mode: temporal\n"
            "# row-error 0: boom\n"
            "eps,h,tau,t,e_err,n_err,rate_e,rate_n\n"
            "1.00000e+00,5.00000e-03,5.00000e-02,1.00000e+00,1.23457e-03,nan,,\n");
  EXPECT_TRUE(std::isnan(parse_csv(to_csv(t)).rows[0].n_err));
}

TEST(RateTable, Deterministic) {
  RateTable a = spatial_table(), b = spatial_table();
  std::reverse(b.rows.begin(), b.rows.end());
  a.finalize();
  b.finalize();
  EXPECT_EQ(to_csv(a), to_csv(b));
}

TEST(RateTable, MalformedInput) {
  EXPECT_THROW(parse_csv("eps,h\n1,2\n"), ParameterError);
  EXPECT_THROW(parse_csv("# mode: spatial\n"), ParameterError);
  EXPECT_THROW(parse_csv("eps,h,tau,t,e_err,n_err,rate_e,rate_n\n1,2,3\n"), ParameterError);
  EXPECT_THROW(parse_csv("eps,h,tau,t,e_err,n_err,rate_e,rate_n\n1,2,3,4,x,6,,\n"),
               ParameterError);
  EXPECT_THROW(parse_csv("# row-error 3: x\neps,h,tau,t,e_err,n_err,rate_e,rate_n\n"),
               ParameterError);
  EXPECT_THROW(parse_csv("#nocolon\neps,h,tau,t,e_err,n_err,rate_e,rate_n\n"), ParameterError);
}

TEST(RateTable, FormatValue) {
  EXPECT_EQ(format_value(1.57451e-2), "1.57451e-02");
  EXPECT_EQ(format_value(-2.0), "-2.00000e+00");
  EXPECT_EQ(format_value(std::nan("")), "nan");
}

TEST(WriteFileAtomic, ReplacesTargetAndLeavesNoTemporary) {
  const auto dir = std::filesystem::temp_directory_path() / "kgz_rate_table_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "table.csv";
  write_file_atomic(path, "first\n");
  write_file_atomic(path, "second\n");
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), "second\n");
  EXPECT_FALSE(std::filesystem::exists(dir / "table.csv.tmp"));
  EXPECT_THROW(write_file_atomic(dir / "missing" / "x.csv", "x"), ParameterError);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace kgz::harness
