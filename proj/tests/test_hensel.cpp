#include "support.hpp"

#include "padic/hensel.hpp"
#include "padic/vdp_uni.hpp"

#include <doctest.h>

#include <algorithm>

using namespace padic;
using testsupport::error_code;
using testsupport::ipow;

namespace {

const char* kDigitExample = "-5 + digitsum(x1, 4+7*i^3, 5)";

using Roots = std::vector<Natural>;

}  // namespace

TEST_CASE("roots_mod_uni") {
  const auto g = dsl::make_function(kDigitExample, 1, Prime(7));
  CHECK(roots_mod_uni(*g, 0, 1) == Roots{5});
  const auto id = dsl::make_function("x1", 1, Prime(5));
  for (int k = 1; k <= 3; ++k) CHECK(roots_mod_uni(*id, 0, k) == Roots{0});
  for (std::uint32_t p : {3u, 5u, 7u, 11u}) {
    CHECK(roots_mod_uni(*dsl::make_function("x1^2 - 1", 1, Prime(p)), 0, 1) == Roots{1, p - 1});
  }
  // alpha shifts the modulus to p^(k - alpha)
  const auto fermat = dsl::make_function("divp(x1 - x1^3, 1)", 1, Prime(3));
  const auto r = roots_mod_uni(*fermat, 1, 2);
  for (const auto& x : r) CHECK(fermat->at(x, 1).is_zero());
  CHECK(error_code([&] { roots_mod_uni(*fermat, 1, 1); }) == Errc::out_of_range);
  CHECK(error_code([&] { roots_mod_uni(*id, 0, 12, 1000); }) == Errc::budget_exceeded);
}

TEST_CASE("well_defined_residue_check") {
  const auto id = dsl::make_function("x1", 1, Prime(5));
  CHECK(well_defined_residue_check(*id, 0, 2, 4, 1).passes);
  const auto g = dsl::make_function(kDigitExample, 1, Prime(7));
  CHECK(well_defined_residue_check(*g, 0, 2, 4, 1).passes);

  VdpTable1 t{Prime(3), 2, 4, std::vector<PadicInt>(9, PadicInt::zero(Prime(3), 4)), std::nullopt};
  t.coeffs[3] = PadicInt::one(Prime(3), 4);
  const TableFunction1 bad(t);
  const auto r = well_defined_residue_check(bad, 0, 1, 20, 1);
  CHECK_FALSE(r.passes);
  REQUIRE(r.witness);
  CHECK((r.witness->first - r.witness->second) % 3 == 0);
  CHECK(bad.at(r.witness->first, 1) != bad.at(r.witness->second, 1));
}

TEST_CASE("univariate lifting") {
  SUBCASE("digit-sum example") {
    const auto g = dsl::make_function(kDigitExample, 1, Prime(7));
    const auto trace = hensel_lift_uni(*g, 0, 5, 1, 10);
    CHECK(trace.status == LiftStatus::lifted);
    CHECK(trace.replay_verified);
    CHECK(trace.root[0] % 7 == 5);
    CHECK(g->at(trace.root[0], 10).is_zero());
    CHECK(trace.levels.size() == 9);
    for (const auto& level : trace.levels) {
      std::vector<std::uint32_t> set;
      for (const auto& w : level.condition_set) set.push_back(w.value());
      std::sort(set.begin(), set.end());
      CHECK(set == std::vector<std::uint32_t>{1, 2, 3, 4, 5, 6});
      CHECK(level.condition_holds);
    }
  }
  SUBCASE("linear") {
    const auto f = dsl::make_function("x1 - 1234", 1, Prime(5));
    const auto trace = hensel_lift_uni(*f, 0, 1234 % 5, 1, 6);
    CHECK(trace.status == LiftStatus::lifted);
    CHECK(trace.root[0] == 1234);
  }
  SUBCASE("square roots of one at p = 2") {
    const auto f = dsl::make_function("x1^2 - 1", 1, Prime(2));
    const auto trace = hensel_lift_uni(*f, 0, 1, 1, 6);
    CHECK(trace.status == LiftStatus::condition_failed);
    CHECK(trace.failed_level == 1);
    CHECK_FALSE(trace.replay_verified);
    REQUIRE(trace.levels.size() == 1);
    CHECK(trace.levels[0].condition_set[0] == 0u);
  }
  SUBCASE("preconditions") {
    const auto f = dsl::make_function("x1^2 - 2", 1, Prime(7));
    CHECK(error_code([&] { hensel_lift_uni(*f, 0, 2, 1, 5); }) == Errc::precondition);
    CHECK(error_code([&] { hensel_lift_uni(*f, 0, 10, 1, 5); }) == Errc::precondition);
    CHECK(error_code([&] { hensel_lift_uni(*f, 0, 3, 0, 5); }) == Errc::precondition);
  }
  SUBCASE("residual that stops vanishing") {
    // Every difference f(3r) - f(0) is divisible by 27, so no unit appears at level 1.
    const auto f = dsl::make_function("(x1 - 3)^3 + 9", 1, Prime(3));
    const auto trace = hensel_lift_uni(*f, 0, 0, 1, 5);
    CHECK(trace.status != LiftStatus::lifted);
  }
}

TEST_CASE("multivariate lifting") {
  const Prime p7(7);
  const std::vector<int> a00{0, 0};
  SUBCASE("digit-sum example plus a 7-multiple") {
    const auto f = dsl::make_function("-5 + digitsum(x1, 4+7*i^3, 5) + 7*(x2^2 + 3*x2)", 2, p7);
    const std::vector<Natural> z{5, 4};
    const auto trace = hensel_lift_multi(*f, a00, z, 1, 0, 8);
    CHECK(trace.status == LiftStatus::lifted);
    CHECK(f->at(std::span<const Natural>(trace.root), 8).is_zero());
    CHECK(trace.root[1] == 4);
    for (const auto& l : trace.levels) CHECK(l.coordinate == 0);
  }
  SUBCASE("degenerate second coordinate") {
    const auto f = dsl::make_function("x1 - 100 + 0*x2", 2, p7);
    const std::vector<Natural> z{2, 3};
    const auto trace = hensel_lift_multi(*f, a00, z, 1, 0, 5);
    CHECK(trace.status == LiftStatus::lifted);
    CHECK(trace.root == std::vector<Natural>{100, 3});
  }
  SUBCASE("auto coordinate skips a flat coordinate") {
    const auto f = dsl::make_function("0*x1 + x2 - 100", 2, p7);
    const std::vector<Natural> z{2, 2};
    const auto fixed = hensel_lift_multi(*f, a00, z, 1, 0, 5);
    CHECK(fixed.status == LiftStatus::condition_failed);
    const auto trace = hensel_lift_multi(*f, a00, z, 1, std::nullopt, 5);
    CHECK(trace.status == LiftStatus::lifted);
    CHECK(trace.root == std::vector<Natural>{2, 100});
    for (const auto& l : trace.levels) {
      CHECK(l.coordinate == 1);
      CHECK(l.rejected == std::vector<std::size_t>{0});
    }
  }
  SUBCASE("precondition") {
    const auto f = dsl::make_function("x1*x2 - 1", 2, p7);
    const std::vector<Natural> z{0, 0};
    CHECK(error_code([&] { hensel_lift_multi(*f, a00, z, 1, 0, 5); }) == Errc::precondition);
    const std::vector<Natural> big{0, 49};
    CHECK(error_code([&] { hensel_lift_multi(*f, a00, big, 1, 0, 5); }) == Errc::precondition);
  }
}

TEST_CASE("brute_force_roots_multi") {
  const std::vector<int> a00{0, 0};
  const auto sum = dsl::make_function("x1 + x2", 2, Prime(3));
  using P = std::vector<std::vector<Natural>>;
  CHECK(brute_force_roots_multi(*sum, 1, a00) == P{{0, 0}, {1, 2}, {2, 1}});
  CHECK(brute_force_roots_multi(*dsl::make_function("1", 2, Prime(3)), 2, a00).empty());
}

TEST_CASE("root_exists_via_projection") {
  const auto sum = dsl::make_function("x1 + x2", 2, Prime(3));
  const auto r = root_exists_via_projection(sum, 0, {1}, 0, 1, 1);
  REQUIRE(r.roots_by_level.size() == 1);
  CHECK(r.roots_by_level[0].second == Roots{2});
  CHECK(r.nonempty_at_all_levels);
  const auto one = root_exists_via_projection(dsl::make_function("1", 2, Prime(3)), 0, {0}, 0, 1, 2);
  CHECK_FALSE(one.nonempty_at_all_levels);
  const auto g = dsl::make_function("-5 + digitsum(x1, 4+7*i^3, 5) + 7*x2", 2, Prime(7));
  CHECK(root_exists_via_projection(g, 0, {0}, 0, 1, 1).roots_by_level[0].second == Roots{5});
}

TEST_CASE("property: lifted roots agree with enumeration and are monotone") {
  std::mt19937_64 rng(53);
  int lifted = 0, failed = 0;
  for (std::uint32_t pv : {2u, 3u, 5u}) {
    const Prime p(pv);
    for (int t = 0; t < 40; ++t) {
      const auto e = testsupport::RandomExpr::generate(rng, pv, 1, 3, false);
      const auto f = dsl::make_function(e.text(), 1, p);
      for (const auto& z : roots_mod_uni(*f, 0, 1)) {
        const auto trace = hensel_lift_uni(*f, 0, z, 1, 6);
        for (std::size_t a = 0; a < trace.levels.size(); ++a) {
          for (std::size_t b = a; b < trace.levels.size(); ++b) {
            const Natural mod = power(p, trace.levels[a].level + 1);
            REQUIRE(trace.levels[b].partial_root[0] % mod == trace.levels[a].partial_root[0] % mod);
          }
        }
        if (trace.status != LiftStatus::lifted) {
          ++failed;
          continue;
        }
        ++lifted;
        REQUIRE(trace.replay_verified);
        for (int k = 1; k <= 4; ++k) {
          const auto roots = roots_mod_uni(*f, 0, k);
          const Natural reduced = trace.root[0] % power(p, k);
          REQUIRE(std::find(roots.begin(), roots.end(), reduced) != roots.end());
          // Uniqueness evidence: one root mod p^k above z.
          REQUIRE(std::count_if(roots.begin(), roots.end(),
                                [&](const Natural& r) { return r % pv == z; }) == 1);
        }
      }
    }
  }
  CHECK(lifted > 10);
  CHECK(failed > 0);
}

TEST_CASE("property: condition set matches van der Put coefficients") {
  std::mt19937_64 rng(59);
  for (std::uint32_t pv : {3u, 5u}) {
    const Prime p(pv);
    for (int t = 0; t < 30; ++t) {
      const auto e = testsupport::RandomExpr::generate(rng, pv, 1, 3, false);
      const auto f = dsl::make_function(e.text(), 1, p);
      const auto table = vdp_expand_uni(*f, 3, 6);
      for (const auto& z : roots_mod_uni(*f, 0, 1)) {
        const auto trace = hensel_lift_uni(*f, 0, z, 1, 6);
        for (const auto& level : trace.levels) {
          if (level.level >= 3) break;
          // partial_root is the point after this level's digit; undo it.
          const Natural base = level.partial_root[0] - power(p, level.level) * level.digit;
          for (std::uint32_t r = 1; r < pv; ++r) {
            const auto& b = table.coeffs[static_cast<std::size_t>(base + power(p, level.level) * r)];
            const auto w = level.condition_set[r - 1];
            if (b.ord() < Valuation(level.level)) {
              REQUIRE_FALSE(w.has_value());
            } else {
              REQUIRE(w == b.digit(level.level));
            }
          }
        }
      }
    }
  }
}

TEST_CASE("property: multivariate lifts appear in the brute-force roots") {
  std::mt19937_64 rng(61);
  const std::vector<int> a00{0, 0};
  int lifted = 0;
  for (std::uint32_t pv : {2u, 3u}) {
    const Prime p(pv);
    for (int t = 0; t < 30; ++t) {
      const auto e = testsupport::RandomExpr::generate(rng, pv, 2, 3, false);
      const auto f = dsl::make_function(e.text(), 2, p);
      for (const auto& z : brute_force_roots_multi(*f, 1, a00)) {
        const auto trace = hensel_lift_multi(*f, a00, z, 1, std::nullopt, 5);
        if (trace.status != LiftStatus::lifted) continue;
        ++lifted;
        for (int k = 1; k <= 3; ++k) {
          const auto roots = brute_force_roots_multi(*f, k, a00);
          const std::vector<Natural> reduced{trace.root[0] % power(p, k), trace.root[1] % power(p, k)};
          REQUIRE(std::find(roots.begin(), roots.end(), reduced) != roots.end());
        }
      }
    }
  }
  CHECK(lifted > 5);
}
