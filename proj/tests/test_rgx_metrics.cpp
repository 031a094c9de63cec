/*
 * Copyright 2026 The rgmetrics Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "rgmetrics/errors.hpp"
#include "rgmetrics/rgx_metrics.hpp"
#include "rgmetrics/rng.hpp"
#include "test_support.hpp"

using namespace rgm;
namespace ts = testsupport;

namespace {

RankedSample sample(std::vector<double> v) { return RankedSample::from_values(std::move(v)); }

}  // namespace

TEST_CASE("s_p basics") {
  CHECK(s_p(sample({3, 3, 3, 3}), 1.0) == doctest::Approx(0.0));
  CHECK(s_p(sample({1, 3}), 1.0) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK_THROWS_AS(s_p(sample({1, 2}), 0.0), std::invalid_argument);
}

TEST_CASE("s_1 equals gini") {
  Rng rng(47);
  for (int rep = 0; rep < 1000; ++rep) {
    const auto v = ts::random_positive_vector(rng, 2 + rng.below(49));
    const auto s = sample(v);
    CHECK(std::abs(s_p(s, 1.0) - gini(s)) < 1e-12);
  }
}

TEST_CASE("s_inf") {
  CHECK(s_inf(sample({7, 7, 7})) == doctest::Approx(0.0));
  // even-N closed form: (3-1)/4
  CHECK(s_inf(sample({1, 3})) == doctest::Approx(0.5).epsilon(1e-15));

  SUBCASE("even-N half-sum formula") {
    Rng rng(53);
    for (int rep = 0; rep < 100; ++rep) {
      const std::size_t half = 1 + rng.below(15);
      const auto v = ts::random_positive_vector(rng, 2 * half);
      const auto s = sample(v);
      const auto order = ts::stable_sort_oracle(v);
      double top = 0.0;
      double bottom = 0.0;
      for (std::size_t i = 0; i < half; ++i) {
        top += v[order[v.size() - 1 - i]];
        bottom += v[order[i]];
      }
      CHECK(s_inf(s) == doctest::Approx((top - bottom) / s.total()).epsilon(1e-12));
    }
  }

  SUBCASE("s_p approaches s_inf as p grows") {
    Rng rng(59);
    for (int rep = 0; rep < 50; ++rep) {
      const auto s = sample(ts::random_positive_vector(rng, 2 + rng.below(20)));
      CHECK(std::abs(s_p(s, 64.0) - s_inf(s)) < 0.05);
    }
  }

  SUBCASE("pietra sandwich") {
    Rng rng(61);
    for (int rep = 0; rep < 300; ++rep) {
      const auto s = sample(ts::random_positive_vector(rng, 2 + rng.below(40)));
      const double lo = pietra(s);
      const double hi = 2.0 * pietra(s);
      const double v = s_inf(s);
      CHECK(v >= lo - 1e-12);
      CHECK(v <= hi + 1e-12);
    }
  }
}

TEST_CASE("s_p variability axioms") {
  Rng rng(67);
  const std::vector<double> p_grid{0.5, 1.0, 2.0, 4.0};

  SUBCASE("scale invariance") {
    for (double p : p_grid) {
      for (int rep = 0; rep < 50; ++rep) {
        const auto v = ts::random_positive_vector(rng, 2 + rng.below(30));
        const auto base = s_p(sample(v), p);
        for (double gamma : {0.5, 3.0, 1e6}) {
          std::vector<double> scaled(v.size());
          for (std::size_t i = 0; i < v.size(); ++i) scaled[i] = gamma * v[i];
          CHECK(std::abs(s_p(sample(scaled), p) - base) < 1e-12);
        }
      }
    }
  }

  SUBCASE("rising tide") {
    for (double p : p_grid) {
      for (int rep = 0; rep < 50; ++rep) {
        const auto v = ts::random_positive_vector(rng, 2 + rng.below(30));
        const double c = 0.1 + 5.0 * rng.uniform();
        std::vector<double> lifted(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) lifted[i] = v[i] + c;
        CHECK(s_p(sample(lifted), p) <= s_p(sample(v), p) + 1e-12);
      }
    }
  }

  SUBCASE("cloning") {
    for (double p : p_grid) {
      for (int rep = 0; rep < 50; ++rep) {
        const auto v = ts::random_positive_vector(rng, 2 + rng.below(20));
        std::vector<double> doubled;
        doubled.reserve(2 * v.size());
        for (double x : v) {
          doubled.push_back(x);
          doubled.push_back(x);
        }
        CHECK(std::abs(s_p(sample(doubled), p) - s_p(sample(v), p)) < 1e-12);
      }
    }
  }

  SUBCASE("robin hood") {
    for (double p : p_grid) {
      for (int rep = 0; rep < 50; ++rep) {
        auto v = ts::random_positive_vector(rng, 3 + rng.below(20));
        // pick i, j with v[i] < v[j]
        std::size_t i = rng.below(v.size());
        std::size_t j = rng.below(v.size());
        if (v[i] == v[j]) continue;
        if (v[i] > v[j]) std::swap(i, j);
        double gap_above = v[j] - v[i];
        for (double x : v) {
          if (x > v[i]) gap_above = std::min(gap_above, x - v[i]);
        }
        const double eps = 0.45 * std::min(gap_above, v[j] - v[i]);
        auto transferred = v;
        transferred[i] += eps;
        transferred[j] -= eps;
        CHECK(s_p(sample(transferred), p) <= s_p(sample(v), p) + 1e-12);
      }
    }
  }

  SUBCASE("bill gates: variability grows along a geometric ramp") {
    for (double p : p_grid) {
      for (int rep = 0; rep < 25; ++rep) {
        auto v = ts::random_positive_vector(rng, 3 + rng.below(15));
        const std::size_t target = rng.below(v.size());
        v[target] = *std::max_element(v.begin(), v.end()) + 1.0;
        double previous = -1.0;
        for (int step = 0; step < 9; ++step) {
          const double value = s_p(sample(v), p);
          CHECK(value >= previous - 1e-12);
          previous = value;
          v[target] *= 2.0;
        }
      }
    }
  }

  SUBCASE("babies: appending a zero raises variability") {
    for (double p : p_grid) {
      for (int rep = 0; rep < 50; ++rep) {
        const auto v = ts::random_positive_vector(rng, 2 + rng.below(20));
        auto with_zero = v;
        with_zero.push_back(0.0);
        const auto base = RankedSample::from_values(v, Positivity::kAllowZero);
        const auto grown = RankedSample::from_values(with_zero, Positivity::kAllowZero);
        CHECK(s_p(grown, p) > s_p(base, p) - 1e-12);
      }
    }
  }
}

TEST_CASE("rgx_p worked examples") {
  const auto y = sample({1, 2, 3});

  for (double p : {0.5, 1.0, 2.0, 4.0}) {
    CHECK(rgx_p(y, std::vector<double>{10, 20, 30}, p).value == doctest::Approx(1.0));
    CHECK(rgx_p(y, std::vector<double>{3, 2, 1}, p).value == doctest::Approx(0.0));
  }

  const RgxResult r = rgx_p(y, std::vector<double>{2, 1, 3}, 1.0);
  CHECK(r.value == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(r.numerator == doctest::Approx(1.0 / 18.0).epsilon(1e-13));
  CHECK(r.denominator == doctest::Approx(2.0 / 9.0).epsilon(1e-13));

  // trapezoid oracle for the same example
  const auto knots = ts::curve_knots_oracle({1, 2, 3}, {2, 1, 3});
  const double num = ts::trapezoid_gap_integral(knots.lorenz, knots.concordance) / 6.0;
  const double den = ts::trapezoid_gap_integral(knots.lorenz, knots.dual) / 6.0;
  CHECK(r.value == doctest::Approx(1.0 - num / den).epsilon(1e-14));
}

TEST_CASE("rgx_p rejects degenerate and malformed inputs") {
  CHECK_THROWS_AS(rgx_p(sample({2, 2, 2}), std::vector<double>{1, 2, 3}, 1.0),
                  DegenerateError);
  CHECK_THROWS_AS(rgx_p(sample({1, 2, 3}), std::vector<double>{1, 2}, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(rgx_p(sample({1, 2, 3}), std::vector<double>{1, 2, 3}, -1.0),
                  std::invalid_argument);
}

TEST_CASE("rgx_p bounds and extremes on random data") {
  Rng rng(71);
  for (double p : {0.5, 1.0, 2.0, 4.0}) {
    for (int rep = 0; rep < 100; ++rep) {
      const std::size_t n = 2 + rng.below(40);
      auto yv = ts::random_positive_vector(rng, n);
      if (yv[0] == yv[1] && n == 2) yv[0] += 0.5;
      const auto zv = ts::random_positive_vector(rng, n);
      const auto y = sample(yv);
      const RgxResult r = rgx_p(y, zv, p);
      CHECK(r.value >= 0.0);
      CHECK(r.value <= 1.0);
      CHECK(r.numerator <= r.denominator + 1e-12);

      // concordant with itself, anti-concordant with the negation
      CHECK(rgx_p(y, yv, p).value == doctest::Approx(1.0));
      std::vector<double> neg(yv.size());
      for (std::size_t i = 0; i < n; ++i) neg[i] = -yv[i];
      CHECK(rgx_p(y, neg, p).value == doctest::Approx(0.0));
    }
  }
}

TEST_CASE("rgx_p scale invariance") {
  Rng rng(73);
  for (double p : {0.5, 1.0, 2.0, 4.0}) {
    for (int rep = 0; rep < 50; ++rep) {
      const std::size_t n = 2 + rng.below(30);
      auto yv = ts::random_positive_vector(rng, n);
      yv[0] += 1.0;  // ensure non-constant
      const auto zv = ts::random_positive_vector(rng, n);
      const double base = rgx_p(sample(yv), zv, p).value;
      for (double gamma : {0.5, 3.0, 1e6}) {
        std::vector<double> ys(n);
        std::vector<double> zs(n);
        for (std::size_t i = 0; i < n; ++i) {
          ys[i] = gamma * yv[i];
          zs[i] = gamma * zv[i];
        }
        CHECK(std::abs(rgx_p(sample(ys), zs, p).value - base) < 1e-12);
      }
    }
  }
}

TEST_CASE("rgx monotone transform propositions") {
  Rng rng(79);
  const auto yv = ts::random_positive_vector(rng, 20);
  const auto zv = ts::random_positive_vector(rng, 20);
  const auto y = sample(yv);

  SUBCASE("increasing transforms leave the value untouched") {
    const auto cubed = rgx_monotone_check(y, zv, [](double x) { return x * x * x; }, 1.0);
    CHECK(cubed.increasing);
    CHECK(cubed.original.value == cubed.transformed.value);

    const auto affine = rgx_monotone_check(y, zv, [](double x) { return 2.0 * x + 7.0; }, 2.0);
    CHECK(affine.increasing);
    CHECK(affine.original.value == affine.transformed.value);
  }

  SUBCASE("decreasing transform complements at p=1") {
    const auto neg = rgx_monotone_check(y, zv, [](double x) { return -x; }, 1.0);
    CHECK_FALSE(neg.increasing);
    CHECK(neg.original.value + neg.transformed.value == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("non-monotone f is rejected") {
    CHECK_THROWS_AS(
        rgx_monotone_check(y, zv, [](double x) { return (x - 5.0) * (x - 5.0); }, 1.0),
        std::invalid_argument);
  }
}

TEST_CASE("wrgx_p") {
  const auto y = sample({1, 2, 3});

  SUBCASE("extremes") {
    for (double p : {0.5, 1.0, 2.0}) {
      CHECK(wrgx_p(y, std::vector<double>{1, 2, 3}, p).value == doctest::Approx(1.0));
      CHECK(wrgx_p(y, std::vector<double>{3, 2, 1}, p).value == doctest::Approx(0.0));
    }
  }

  SUBCASE("worked example against the weighted trapezoid oracle") {
    const std::vector<double> z{2, 1, 3};
    const auto knots = ts::curve_knots_oracle({1, 2, 3}, z);
    // normalized knot values, segment weights 1/6, 2/6, 3/6
    std::vector<double> l_hat(knots.lorenz.size());
    std::vector<double> lc_hat(knots.lorenz.size());
    std::vector<double> lz_hat(knots.lorenz.size());
    for (std::size_t k = 0; k < knots.lorenz.size(); ++k) {
      l_hat[k] = knots.lorenz[k] / 6.0;
      lc_hat[k] = knots.dual[k] / 6.0;
      lz_hat[k] = knots.concordance[k] / 6.0;
    }
    const std::vector<double> weights{1.0 / 6.0, 2.0 / 6.0, 3.0 / 6.0};
    const double num = ts::weighted_trapezoid_oracle(l_hat, lz_hat, weights);
    const double den = ts::weighted_trapezoid_oracle(l_hat, lc_hat, weights);
    const RgxResult r = wrgx_p(y, z, 1.0);
    CHECK(r.value == doctest::Approx(1.0 - num / den).epsilon(1e-13));
    CHECK(r.value == doctest::Approx(13.0 / 16.0).epsilon(1e-13));
  }

  SUBCASE("bounded on random inputs") {
    Rng rng(83);
    for (int rep = 0; rep < 200; ++rep) {
      const std::size_t n = 2 + rng.below(30);
      auto yv = ts::random_positive_vector(rng, n);
      yv[0] += 1.0;
      const auto zv = ts::random_positive_vector(rng, n);
      const double v = wrgx_p(sample(yv), zv, 0.5 + 3.0 * rng.uniform()).value;
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
  }
}
