#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <maslov/harness.hpp>

#include <cmath>

using namespace maslov;
using Eigen::MatrixXd;

namespace {

Potential free_potential() {
  return Potential::constant(MatrixXd::Zero(1, 1), 0.0, 2 * M_PI);
}

}  // namespace

TEST_CASE("theorem 2.2 on the free closed-form scenario") {
  CheckReport rep = check_theorem_2_2(free_potential(), M_PI / 4, M_PI / 2, 0.6);
  CHECK(rep.pass);
  CHECK_FALSE(rep.rejected);
  CHECK(rep.lhs == 1);
  CHECK(rep.rhs == 1);
}

TEST_CASE("corollary 3.3 interval version on the free operator") {
  CheckReport rep =
      check_corollary_3_3(free_potential(), M_PI / 4, M_PI / 2, 0.3, 0.7);
  CHECK(rep.pass);
  CHECK(rep.lhs == 1);
}

TEST_CASE("corollary 3.4 bounds hold on a small grid") {
  CheckReport rep = check_corollary_3_4(free_potential(), 5, {0.3, 0.9});
  CHECK(rep.pass);
}

TEST_CASE("theorem FE slope agreement on the free lowest branch") {
  CheckReport rep = check_theorem_FE(free_potential(), 0, M_PI / 4, 3 * M_PI / 4, 5);
  CHECK(rep.pass);
}

TEST_CASE("monotonicity of the free lowest branch inside (0, pi)") {
  CheckReport rep = check_prop_mon1(free_potential(), 0, 0.3, 2.8);
  CHECK(rep.pass);
}

TEST_CASE("theorem 3.1 rescaling identity for V = -5") {
  Potential pot = Potential::constant(-5.0 * MatrixXd::Ones(1, 1), -M_PI, M_PI);
  CheckReport rep = check_theorem_3_1(pot, 0.3, M_PI / 2, 0.0);
  CHECK(rep.pass);
}

TEST_CASE("theorem 4.2 closed-form scenario and hypothesis rejection") {
  Potential pot = Potential::constant(-5.0 * MatrixXd::Ones(1, 1), -M_PI, M_PI);
  CheckReport rep = check_theorem_4_2(pot, 0.3, 0.0);
  CHECK(rep.pass);
  CHECK(rep.lhs == 4);  // Morse-index difference between t = 1 and t = 0.3

  // The scaling weight for V = 2 cos x changes sign, so the hypothesis fails
  // and the scenario must be rejected rather than checked.
  Potential mathieu = Potential::diagonal_cosine({2.0}, {1.0}, -M_PI, M_PI);
  CheckReport rejected = check_theorem_4_2(mathieu, 0.5, 0.0);
  CHECK(rejected.rejected);
  CHECK_FALSE(rejected.pass);
}

TEST_CASE("suite runner reports and exit codes") {
  SuiteResult res = run_suite("thmfe");
  CHECK_FALSE(res.reports.empty());
  for (const CheckReport& rep : res.reports) CHECK((rep.pass || rep.rejected));
  CHECK(res.exit_code == 0);
  CHECK_THROWS_AS(run_suite("nonsense"), Error);
}
