// Copyright 2026 The weilqmc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>
#include <set>
#include <tuple>

#include "doctest.h"
#include "testutil.hpp"
#include "weilqmc/integrands.hpp"

using namespace weilqmc;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

SeriesSpec make_spec(Basis basis, std::size_t dim, double alpha, double p,
                     std::vector<SeriesTerm> terms) {
  SeriesSpec spec;
  spec.basis = basis;
  spec.dim = dim;
  spec.alpha = alpha;
  spec.p = p;
  spec.terms = std::move(terms);
  spec.id = "test";
  return spec;
}

double lp_norm(const std::vector<double>& h, double p) {
  if (std::isinf(p)) {
    double m = 0;
    for (double v : h) m = std::max(m, std::abs(v));
    return m;
  }
  double acc = 0;
  for (double v : h) acc += std::pow(std::abs(v), p);
  return std::pow(acc, 1.0 / p);
}

}  // namespace

TEST_CASE("evaluation examples") {
  const auto constant = make_spec(Basis::fourier, 2, 1.0, kInf, {{{0, 0}, 1.0}});
  const double x[2] = {0.3, 0.9};
  CHECK(std::abs(eval(constant, std::span<const double>(x, 2)) - std::complex<double>(1.0)) < 1e-15);

  const auto mode = make_spec(Basis::fourier, 1, 1.0, kInf, {{{1}, 1.0}});
  const double quarter[1] = {0.25};
  CHECK(std::abs(eval(mode, std::span<const double>(quarter, 1)) - std::complex<double>(0.0, 1.0)) <
        1e-15);

  const auto cos1 = make_spec(Basis::cosine, 1, 1.0, kInf, {{{1}, 1.0}});
  const double zero[1] = {0.0};
  CHECK(std::abs(eval(cos1, std::span<const double>(zero, 1)) -
                 std::complex<double>(std::numbers::sqrt2)) < 1e-15);
}

TEST_CASE("true_integral is the zero coefficient") {
  CHECK(true_integral(make_spec(Basis::fourier, 1, 1.0, kInf, {{{0}, 3.5}})).real() == 3.5);
  CHECK(true_integral(make_spec(Basis::fourier, 2, 1.0, kInf, {{{1, 0}, 1.0}})) ==
        std::complex<double>(0.0));
}

TEST_CASE("holder_upper examples") {
  CHECK(holder_upper(make_spec(Basis::fourier, 1, 1.0, kInf, {{{0}, 5.0}})) == 0.0);
  CHECK(std::abs(holder_upper(make_spec(Basis::fourier, 1, 1.0, kInf, {{{1}, 1.0}})) -
                 2 * std::numbers::pi) < 1e-12);
  // p = 1 pairs with the sup norm of k
  CHECK(std::abs(holder_upper(make_spec(Basis::fourier, 2, 1.0, 1.0, {{{1, 1}, 1.0}})) -
                 2 * std::numbers::pi) < 1e-12);
  // alpha < 1 two-regime constant: 2^{1-a} (2 pi |k|)^a
  const double h = holder_upper(make_spec(Basis::fourier, 1, 0.5, kInf, {{{2}, 1.0}}));
  CHECK(h == doctest::Approx(std::pow(2.0, 0.5) * std::pow(4 * std::numbers::pi, 0.5)).epsilon(1e-12));
}

TEST_CASE("norm examples") {
  const auto constant = make_spec(Basis::fourier, 2, 1.0, kInf, {{{0, 0}, 1.0}});
  CHECK(norm(constant, Space::K).total == 1.0);

  const auto pair = make_spec(Basis::fourier, 1, 1.0, kInf, {{{1}, 1.0}, {{-1}, 1.0}});
  const auto nk = norm(pair, Space::K);
  CHECK(nk.coeff_sum == 2.0);
  CHECK(std::abs(nk.holder_upper - 4 * std::numbers::pi) < 1e-12);
  CHECK(std::abs(nk.total - (2 + 4 * std::numbers::pi)) < 1e-12);

  const auto cosine = make_spec(Basis::cosine, 2, 1.0, kInf, {{{1, 0}, 1.0}});
  const auto nc = norm(cosine, Space::C);
  CHECK(nc.coeff_sum == doctest::Approx(std::numbers::sqrt2).epsilon(1e-15));
  CHECK(std::abs(nc.total - (nc.coeff_sum + 2.0 * nc.holder_upper)) < 1e-12);

  CHECK_THROWS_AS(norm(constant, Space::C), std::invalid_argument);
  CHECK_THROWS_AS(norm(cosine, Space::W), std::invalid_argument);
}

TEST_CASE("compose_tent on the examples") {
  const auto constant = make_spec(Basis::cosine, 1, 1.0, kInf, {{{0}, 2.0}});
  const auto cf = compose_tent(constant);
  CHECK(cf.terms.size() == 1);
  CHECK(cf.terms[0].coeff.real() == 2.0);

  const auto cos1 = make_spec(Basis::cosine, 1, 1.0, kInf, {{{1}, 1.0}});
  const auto f = compose_tent(cos1);
  REQUIRE(f.terms.size() == 2);
  CHECK(f.terms[0].k == std::vector<std::int64_t>{-1});
  CHECK(f.terms[1].k == std::vector<std::int64_t>{1});
  CHECK(std::abs(f.terms[0].coeff.real() - std::numbers::sqrt2 / 2) < 1e-15);
  CHECK(std::abs(f.terms[1].coeff.real() - std::numbers::sqrt2 / 2) < 1e-15);
}

TEST_CASE("compose_tent: pointwise agreement at 1000 random points") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  for (const auto& g : cosine_test_library()) {
    const auto f = compose_tent(g);
    for (int it = 0; it < 1000 / 6; ++it) {
      std::vector<double> x(g.dim), tx(g.dim);
      for (std::size_t j = 0; j < g.dim; ++j) {
        x[j] = dist(rng);
        tx[j] = 1.0 - std::abs(2.0 * x[j] - 1.0);
      }
      const auto lhs = eval(f, x);
      const auto rhs = eval(g, tx);
      CHECK(std::abs(lhs - rhs) < 1e-12);
    }
  }
}

TEST_CASE("compose_tent preserves the integral and the norm") {
  for (const auto& g : cosine_test_library()) {
    const auto f = compose_tent(g);
    CHECK(std::abs(true_integral(f) - true_integral(g)) < 1e-15);
    const auto nc = norm(g, Space::C);
    const auto nk = norm(f, Space::K);
    CHECK(nc.coeff_sum == nk.coeff_sum);  // exact: same summation path
    CHECK(nc.total == nk.total);
    // holder parts differ by the factor 2^alpha
    CHECK(nk.holder_upper ==
          doctest::Approx(std::pow(2.0, g.alpha) * nc.holder_upper).epsilon(1e-14));
  }
}

TEST_CASE("|eval| is bounded by the weighted coefficient sum") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  auto check_spec = [&](const SeriesSpec& spec, Space space) {
    const double cap = norm(spec, space).coeff_sum;
    for (int it = 0; it < 200; ++it) {
      std::vector<double> x(spec.dim);
      for (auto& v : x) v = dist(rng);
      CHECK(std::abs(eval(spec, x)) <= cap + 1e-9);
    }
  };
  for (const auto& spec : fourier_test_library()) check_spec(spec, Space::K);
  for (const auto& spec : cosine_test_library()) check_spec(spec, Space::C);
}

TEST_CASE("sampled Hoelder quotients never exceed holder_upper (fourier, cosine)") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  auto check_spec = [&](const SeriesSpec& spec) {
    const double cap = holder_upper(spec);
    for (int it = 0; it < 10000 / 10; ++it) {
      std::vector<double> x(spec.dim), y(spec.dim), h(spec.dim);
      for (std::size_t j = 0; j < spec.dim; ++j) {
        x[j] = dist(rng);
        y[j] = dist(rng);
        h[j] = y[j] - x[j];
      }
      const double hp = lp_norm(h, spec.p);
      if (hp == 0.0) continue;
      const double quotient = std::abs(eval(spec, y) - eval(spec, x)) / std::pow(hp, spec.alpha);
      CHECK(quotient <= cap * (1 + 1e-9) + 1e-12);
    }
  };
  for (const auto& spec : fourier_test_library()) check_spec(spec);
  for (const auto& spec : cosine_test_library()) check_spec(spec);
}

TEST_CASE("walsh holder constant bounds the b^m-adic quotient") {
  const FieldParams f = FieldParams::find(2, 3, false);
  std::mt19937_64 rng(29);
  for (const auto& spec : walsh_test_library(f)) {
    const double cap = holder_upper(spec);
    const std::uint64_t card = f.card();
    const std::uint64_t depth = 3;  // digits sampled
    std::uint64_t den = 1;
    for (std::uint64_t i = 0; i < depth; ++i) den *= card;
    WalshEvaluator ev(f);
    for (int it = 0; it < 500; ++it) {
      std::vector<std::uint64_t> xn(spec.dim), yn(spec.dim);
      double rho = 0.0;
      for (std::size_t j = 0; j < spec.dim; ++j) {
        xn[j] = rng() % den;
        yn[j] = rng() % den;
        // first differing base-card digit determines the b^m-adic distance
        std::uint64_t scale = den / card;
        double dj = 0.0;
        for (std::uint64_t i = 1; i <= depth; ++i) {
          if ((xn[j] / scale) % card != (yn[j] / scale) % card) {
            dj = std::pow(static_cast<double>(card), -static_cast<double>(i));
            break;
          }
          scale /= card;
        }
        rho = std::max(rho, dj);
      }
      if (rho == 0.0) continue;
      std::complex<double> vx = 0.0, vy = 0.0;
      for (const auto& term : spec.terms) {
        std::uint32_t ix = 0, iy = 0;
        for (std::size_t j = 0; j < spec.dim; ++j) {
          ix += ev.eval_index(static_cast<std::uint64_t>(term.k[j]), xn[j], den);
          iy += ev.eval_index(static_cast<std::uint64_t>(term.k[j]), yn[j], den);
        }
        vx += term.coeff * UnitRoot{ix % f.base(), f.base()}.value();
        vy += term.coeff * UnitRoot{iy % f.base(), f.base()}.value();
      }
      const double quotient = std::abs(vx - vy) / std::pow(rho, spec.alpha);
      CHECK(quotient <= cap * (1 + 1e-9) + 1e-12);
    }
  }
}

TEST_CASE("truncation tail bound enters the norm but not the evaluation") {
  auto spec = make_spec(Basis::fourier, 1, 1.0, kInf, {{{1}, 1.0}, {{0}, 1.0}});
  const auto base = norm(spec, Space::K);
  spec.coeff_tail = 0.25;
  const auto tailed = norm(spec, Space::K);
  CHECK(tailed.coeff_sum == base.coeff_sum + 0.25);
  CHECK(tailed.total == base.total + 0.25);
  const double x[1] = {0.3};
  auto plain = spec;
  plain.coeff_tail = 0.0;
  CHECK(eval(spec, std::span<const double>(x, 1)) == eval(plain, std::span<const double>(x, 1)));
  // round trip and tent composition carry the tail
  CHECK(spec_from_json_text(spec_to_json_text(spec)).coeff_tail == 0.25);
  auto cspec = make_spec(Basis::cosine, 1, 1.0, kInf, {{{1}, 1.0}});
  cspec.coeff_tail = 0.5;
  CHECK(compose_tent(cspec).coeff_tail == 0.5);
  CHECK(norm(cspec, Space::C).coeff_sum ==
        norm(compose_tent(cspec), Space::K).coeff_sum);
  spec.coeff_tail = -1.0;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
}

TEST_CASE("decaying family matches its closed-form coefficient sum") {
  for (const auto& [s, beta, kmax] :
       std::vector<std::tuple<std::size_t, double, std::int64_t>>{{1, 2.0, 5}, {2, 1.5, 3}, {3, 2.0, 4}}) {
    const auto spec = decaying_fourier_family(s, 1.0, beta, kmax, 1.0, kInf);
    double sum = 0.0;
    for (const auto& term : spec.terms) sum += std::abs(term.coeff);
    CHECK(sum == doctest::Approx(decaying_coeff_sum_closed_form(s, 1.0, beta, kmax)).epsilon(1e-12));
  }
}

TEST_CASE("libraries cover the required parameter grid") {
  const auto lib = fourier_test_library();
  CHECK(lib.size() >= 10);
  std::set<std::size_t> dims;
  std::set<double> alphas, ps;
  for (const auto& spec : lib) {
    dims.insert(spec.dim);
    alphas.insert(spec.alpha);
    ps.insert(spec.p);
  }
  CHECK(dims.count(2) == 1);
  CHECK(dims.count(5) == 1);
  CHECK(dims.count(10) == 1);
  CHECK(alphas.count(0.5) == 1);
  CHECK(alphas.count(1.0) == 1);
  CHECK(ps.count(1.0) == 1);
  CHECK(ps.count(2.0) == 1);
  CHECK(ps.count(kInf) == 1);
  CHECK(cosine_test_library().size() >= 5);
  CHECK(walsh_test_library(FieldParams::find(2, 4, true)).size() >= 5);
}

TEST_CASE("JSON round trip") {
  for (const auto& spec : fourier_test_library()) {
    const auto back = spec_from_json_text(spec_to_json_text(spec));
    CHECK(back.basis == spec.basis);
    CHECK(back.dim == spec.dim);
    CHECK(back.alpha == spec.alpha);
    CHECK((std::isinf(back.p) == std::isinf(spec.p) && (std::isinf(spec.p) || back.p == spec.p)));
    REQUIRE(back.terms.size() == spec.terms.size());
    for (std::size_t i = 0; i < spec.terms.size(); ++i) {
      CHECK(back.terms[i].k == spec.terms[i].k);
      CHECK(back.terms[i].coeff == spec.terms[i].coeff);
    }
  }
  const auto walsh = walsh_test_library(FieldParams::find(2, 2, true))[0];
  const auto back = spec_from_json_text(spec_to_json_text(walsh));
  CHECK(back.field.has_value());
  CHECK(*back.field == *walsh.field);
  CHECK_THROWS(spec_from_json_text("{\"basis\": \"nope\", \"alpha\": 1, \"p\": 2, \"terms\": []}"));
}

TEST_CASE("spec validation rejects malformed content") {
  auto bad = make_spec(Basis::cosine, 1, 1.0, 2.0, {{{-1}, 1.0}});
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  auto badalpha = make_spec(Basis::fourier, 1, 1.5, 2.0, {{{1}, 1.0}});
  CHECK_THROWS_AS(badalpha.validate(), std::invalid_argument);
  auto badwalsh = make_spec(Basis::walsh, 1, 1.0, 2.0, {{{1}, 1.0}});
  CHECK_THROWS_AS(badwalsh.validate(), std::invalid_argument);  // missing field
}
