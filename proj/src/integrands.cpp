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

#include "weilqmc/integrands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace weilqmc {
namespace {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using cdouble = std::complex<double>;

constexpr double kPi = std::numbers::pi;

double dual_exponent(double p) {
  if (std::isinf(p)) return 1.0;
  if (p == 1.0) return std::numeric_limits<double>::infinity();
  return p / (p - 1.0);
}

double lq_norm(const std::vector<i64>& k, double q) {
  if (std::isinf(q)) {
    i64 m = 0;
    for (i64 v : k) m = std::max(m, std::abs(v));
    return static_cast<double>(m);
  }
  double acc = 0.0;
  for (i64 v : k) acc += std::pow(std::abs(static_cast<double>(v)), q);
  return std::pow(acc, 1.0 / q);
}

bool is_zero_vec(const std::vector<i64>& k) {
  return std::all_of(k.begin(), k.end(), [](i64 v) { return v == 0; });
}

// digits of |k| in base `card`; 0 has zero digits
u32 digit_count(u64 k, u64 card) {
  u32 d = 0;
  while (k != 0) {
    ++d;
    k /= card;
  }
  return d;
}

}  // namespace

const char* basis_name(Basis basis) {
  switch (basis) {
    case Basis::fourier: return "fourier";
    case Basis::cosine: return "cosine";
    case Basis::walsh: return "walsh";
  }
  return "?";
}

const char* space_name(Space space) {
  switch (space) {
    case Space::K: return "K";
    case Space::C: return "C";
    case Space::W: return "W";
  }
  return "?";
}

Space space_for_basis(Basis basis) {
  switch (basis) {
    case Basis::fourier: return Space::K;
    case Basis::cosine: return Space::C;
    case Basis::walsh: return Space::W;
  }
  throw std::invalid_argument("unknown basis");
}

void SeriesSpec::validate() const {
  if (dim == 0) throw std::invalid_argument("spec dimension must be >= 1");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in (0, 1]");
  if (!(p >= 1.0)) throw std::invalid_argument("p must lie in [1, infinity]");
  if (basis == Basis::walsh && !field)
    throw std::invalid_argument("walsh spec requires field parameters");
  if (!(coeff_tail >= 0.0)) throw std::invalid_argument("coeff_tail must be nonnegative");
  for (const auto& term : terms) {
    if (term.k.size() != dim) throw std::invalid_argument("term dimension mismatch");
    if (basis != Basis::fourier) {
      for (i64 v : term.k)
        if (v < 0) throw std::invalid_argument("cosine/walsh wave vectors must be nonnegative");
    }
  }
}

std::complex<double> eval(const SeriesSpec& spec, std::span<const double> x) {
  if (x.size() != spec.dim) throw std::invalid_argument("evaluation point dimension mismatch");
  cdouble acc = 0.0;
  switch (spec.basis) {
    case Basis::fourier:
      for (const auto& term : spec.terms) {
        double phase = 0.0;
        for (std::size_t j = 0; j < spec.dim; ++j)
          phase += static_cast<double>(term.k[j]) * x[j];
        acc += term.coeff * std::polar(1.0, 2.0 * kPi * phase);
      }
      return acc;
    case Basis::cosine:
      for (const auto& term : spec.terms) {
        double prod = 1.0;
        for (std::size_t j = 0; j < spec.dim; ++j) {
          if (term.k[j] == 0) continue;
          prod *= std::numbers::sqrt2 * std::cos(kPi * static_cast<double>(term.k[j]) * x[j]);
        }
        acc += term.coeff * prod;
      }
      return acc;
    case Basis::walsh: {
      const FieldParams& f = *spec.field;
      WalshEvaluator ev(f);
      const u64 card = f.card();
      // Snap each coordinate to the b^m-adic grid that is fine enough for
      // every term, so grid points given as doubles land exactly.
      u32 depth = 1;
      for (const auto& term : spec.terms)
        for (i64 v : term.k) depth = std::max(depth, digit_count(static_cast<u64>(v), card));
      u64 den = 1;
      for (u32 i = 0; i < depth; ++i) den *= card;
      for (const auto& term : spec.terms) {
        u32 idx = 0;
        for (std::size_t j = 0; j < spec.dim; ++j) {
          const u64 num = std::min<u64>(den - 1, static_cast<u64>(std::floor(x[j] * static_cast<double>(den) + 1e-9)));
          idx += ev.eval_index(static_cast<u64>(term.k[j]), num, den);
        }
        acc += term.coeff * UnitRoot{idx % f.base(), f.base()}.value();
      }
      return acc;
    }
  }
  throw std::invalid_argument("unknown basis");
}

NodeEvaluator::NodeEvaluator(const SeriesSpec& spec, const PointSet& p) : spec_(spec), p_(p) {
  if (p.dim != spec.dim) throw std::invalid_argument("point set dimension mismatch");
  if (spec.basis == Basis::fourier) {
    const i64 m = static_cast<i64>(p.denom);
    reduced_.reserve(spec.terms.size());
    for (const auto& term : spec.terms) {
      std::vector<u64> kr(spec.dim);
      for (std::size_t j = 0; j < spec.dim; ++j)
        kr[j] = static_cast<u64>(((term.k[j] % m) + m) % m);
      reduced_.push_back(std::move(kr));
    }
  } else if (spec.basis == Basis::walsh) {
    walsh_.emplace(*spec.field);
  }
}

std::complex<double> NodeEvaluator::row(std::size_t n) const {
  const u64 d = p_.denom;
  cdouble acc = 0.0;
  switch (spec_.basis) {
    case Basis::fourier: {
      for (std::size_t t = 0; t < spec_.terms.size(); ++t) {
        u64 phase = 0;
        const auto& kr = reduced_[t];
        for (std::size_t j = 0; j < spec_.dim; ++j) phase = (phase + kr[j] * p_.at(n, j)) % d;
        acc += spec_.terms[t].coeff *
               std::polar(1.0, 2.0 * kPi * static_cast<double>(phase) / static_cast<double>(d));
      }
      return acc;
    }
    case Basis::cosine: {
      for (const auto& term : spec_.terms) {
        double prod = 1.0;
        for (std::size_t j = 0; j < spec_.dim; ++j) {
          if (term.k[j] == 0) continue;
          // cos(pi k r / d) with the phase reduced mod 2d
          const u64 t = static_cast<u64>(term.k[j]) * p_.at(n, j) % (2 * d);
          prod *= std::numbers::sqrt2 * std::cos(kPi * static_cast<double>(t) / static_cast<double>(d));
        }
        acc += term.coeff * prod;
      }
      return acc;
    }
    case Basis::walsh: {
      const u32 b = spec_.field->base();
      for (const auto& term : spec_.terms) {
        u32 idx = 0;
        for (std::size_t j = 0; j < spec_.dim; ++j)
          idx += walsh_->eval_index(static_cast<u64>(term.k[j]), p_.at(n, j), d);
        acc += term.coeff * UnitRoot{idx % b, b}.value();
      }
      return acc;
    }
  }
  throw std::invalid_argument("unknown basis");
}

std::complex<double> eval_at_node(const SeriesSpec& spec, const PointSet& p, std::size_t row) {
  return NodeEvaluator(spec, p).row(row);
}

std::complex<double> true_integral(const SeriesSpec& spec) {
  cdouble acc = 0.0;
  for (const auto& term : spec.terms)
    if (is_zero_vec(term.k)) acc += term.coeff;
  return acc;
}

double holder_upper(const SeriesSpec& spec) {
  switch (spec.basis) {
    case Basis::fourier: {
      const double q = dual_exponent(spec.p);
      double acc = 0.0;
      for (const auto& term : spec.terms) {
        if (is_zero_vec(term.k)) continue;
        acc += std::abs(term.coeff) * std::pow(2.0, 1.0 - spec.alpha) *
               std::pow(2.0 * kPi * lq_norm(term.k, q), spec.alpha);
      }
      return acc;
    }
    case Basis::cosine:
      return std::pow(2.0, -spec.alpha) * holder_upper(compose_tent(spec));
    case Basis::walsh: {
      const u64 card = spec.field->card();
      double acc = 0.0;
      for (const auto& term : spec.terms) {
        if (is_zero_vec(term.k)) continue;
        u32 depth = 0;
        for (i64 v : term.k) depth = std::max(depth, digit_count(static_cast<u64>(v), card));
        acc += 2.0 * std::abs(term.coeff) *
               std::pow(static_cast<double>(card), spec.alpha * static_cast<double>(depth));
      }
      return acc;
    }
  }
  throw std::invalid_argument("unknown basis");
}

NormReport norm(const SeriesSpec& spec, Space space) {
  spec.validate();
  if (space != space_for_basis(spec.basis))
    throw std::invalid_argument("basis/space mismatch");
  NormReport report;
  switch (space) {
    case Space::K:
    case Space::W: {
      for (const auto& term : spec.terms) report.coeff_sum += std::abs(term.coeff);
      report.coeff_sum += spec.coeff_tail;
      report.holder_upper = holder_upper(spec);
      report.total = report.coeff_sum + report.holder_upper;
      return report;
    }
    case Space::C: {
      // Computed through the tent composition: the weighted cosine
      // coefficient sum equals the plain coefficient sum of the composed
      // Fourier series term by term, and the Hoelder parts differ by the
      // factor 2^alpha exactly.
      const SeriesSpec composed = compose_tent(spec);
      for (const auto& term : composed.terms) report.coeff_sum += std::abs(term.coeff);
      report.coeff_sum += composed.coeff_tail;
      const double holder_f = holder_upper(composed);
      report.holder_upper = std::pow(2.0, -spec.alpha) * holder_f;
      report.total = report.coeff_sum + holder_f;
      return report;
    }
  }
  throw std::invalid_argument("unknown space");
}

SeriesSpec compose_tent(const SeriesSpec& cosine_spec) {
  cosine_spec.validate();
  if (cosine_spec.basis != Basis::cosine)
    throw std::invalid_argument("compose_tent requires a cosine spec");
  std::map<std::vector<i64>, cdouble> acc;
  for (const auto& term : cosine_spec.terms) {
    std::vector<std::size_t> support;
    for (std::size_t j = 0; j < term.k.size(); ++j)
      if (term.k[j] != 0) support.push_back(j);
    const std::size_t u = support.size();
    const cdouble coeff = term.coeff * std::pow(2.0, -static_cast<double>(u) / 2.0);
    for (std::size_t mask = 0; mask < (std::size_t{1} << u); ++mask) {
      std::vector<i64> k = term.k;
      for (std::size_t bit = 0; bit < u; ++bit)
        if (mask & (std::size_t{1} << bit)) k[support[bit]] = -k[support[bit]];
      acc[k] += coeff;
    }
  }
  SeriesSpec out;
  out.basis = Basis::fourier;
  out.dim = cosine_spec.dim;
  out.alpha = cosine_spec.alpha;
  out.p = cosine_spec.p;
  out.coeff_tail = cosine_spec.coeff_tail;
  out.id = cosine_spec.id.empty() ? "tent-composed" : cosine_spec.id + "-tent";
  out.terms.reserve(acc.size());
  for (auto& [k, c] : acc) out.terms.push_back(SeriesTerm{k, c});
  return out;
}

SeriesSpec decaying_fourier_family(std::size_t s, double c, double beta, i64 kmax,
                                   double alpha, double p) {
  if (s == 0 || kmax < 0) throw std::invalid_argument("bad decaying family parameters");
  SeriesSpec spec;
  spec.basis = Basis::fourier;
  spec.dim = s;
  spec.alpha = alpha;
  spec.p = p;
  {
    std::ostringstream id;
    id << "decay-s" << s << "-beta" << beta << "-K" << kmax;
    spec.id = id.str();
  }
  std::vector<i64> k(s, -kmax);
  while (true) {
    double mag = c;
    for (i64 v : k)
      if (v != 0) mag *= std::pow(static_cast<double>(std::abs(v)), -beta);
    spec.terms.push_back(SeriesTerm{k, mag});
    std::size_t pos = 0;
    while (pos < s && ++k[pos] > kmax) k[pos++] = -kmax;
    if (pos == s) break;
  }
  return spec;
}

double decaying_coeff_sum_closed_form(std::size_t s, double c, double beta, i64 kmax) {
  double per_coord = 1.0;
  for (i64 j = 1; j <= kmax; ++j) per_coord += 2.0 * std::pow(static_cast<double>(j), -beta);
  return c * std::pow(per_coord, static_cast<double>(s));
}

std::vector<SeriesSpec> fourier_test_library() {
  std::vector<SeriesSpec> lib;
  const double inf = std::numeric_limits<double>::infinity();
  auto make = [](std::string id, std::size_t s, double alpha, double p,
                 std::vector<SeriesTerm> terms) {
    SeriesSpec spec;
    spec.basis = Basis::fourier;
    spec.dim = s;
    spec.alpha = alpha;
    spec.p = p;
    spec.id = std::move(id);
    spec.terms = std::move(terms);
    return spec;
  };
  // s = 2
  lib.push_back(make("gauss-mode", 2, 1.0, inf, {{{0, 1}, 1.0}}));
  lib.push_back(make("two-mode", 2, 1.0, 2.0,
                     {{{1, 0}, 0.5}, {{-1, 0}, 0.5}, {{1, 2}, cdouble(0.0, 0.25)}, {{0, 0}, 0.75}}));
  lib.push_back(make("rough-pair", 2, 0.5, 1.0,
                     {{{2, 3}, 0.4}, {{-2, -3}, 0.4}, {{5, 1}, -0.2}, {{0, 0}, 1.0}}));
  {
    auto spec = decaying_fourier_family(2, 1.0, 2.0, 3, 0.5, 2.0);
    lib.push_back(std::move(spec));
  }
  // s = 5
  lib.push_back(make("diag-5", 5, 1.0, inf,
                     {{{1, 1, 1, 1, 1}, 0.3}, {{-1, -1, -1, -1, -1}, 0.3}, {{0, 0, 0, 0, 0}, 0.5}}));
  lib.push_back(make("sparse-5", 5, 1.0, 1.0,
                     {{{1, 0, 0, 0, 0}, 0.5},
                      {{0, 2, 0, 0, 0}, cdouble(0.1, 0.2)},
                      {{0, 0, 3, 0, 1}, -0.25},
                      {{0, 0, 0, 0, 0}, 0.2}}));
  lib.push_back(make("rough-5", 5, 0.5, inf,
                     {{{1, 2, 0, 0, 1}, 0.3}, {{-1, 0, 0, 4, 0}, 0.15}, {{0, 0, 1, 0, 0}, 0.55}}));
  lib.push_back(make("halfnorm-5", 5, 0.5, 2.0,
                     {{{2, 1, 0, 1, 0}, 0.2},
                      {{0, 0, 0, 0, 5}, 0.1},
                      {{-3, 0, 2, 0, 0}, cdouble(0.0, -0.3)},
                      {{0, 0, 0, 0, 0}, 1.0}}));
  // s = 10
  {
    std::vector<SeriesTerm> terms;
    for (std::size_t j = 0; j < 10; ++j) {
      std::vector<i64> k(10, 0);
      k[j] = static_cast<i64>(j % 3 + 1);
      terms.push_back(SeriesTerm{k, 0.1 + 0.02 * static_cast<double>(j)});
    }
    terms.push_back(SeriesTerm{std::vector<i64>(10, 0), 0.4});
    lib.push_back(make("axes-10", 10, 1.0, 2.0, std::move(terms)));
  }
  {
    std::vector<SeriesTerm> terms;
    std::vector<i64> k1(10, 0), k2(10, 0), k3(10, 0);
    k1[0] = 1; k1[9] = -2;
    k2[3] = 2; k2[4] = 2; k2[5] = 1;
    k3[1] = -1; k3[6] = 3;
    terms.push_back({k1, 0.35});
    terms.push_back({k2, cdouble(0.2, 0.1)});
    terms.push_back({k3, -0.15});
    lib.push_back(make("mixed-10", 10, 0.5, inf, std::move(terms)));
  }
  lib.push_back(make("aliased-2", 2, 1.0, inf,
                     {{{5, 5}, 0.125}, {{1, 0}, 0.5}, {{0, 0}, 1.0}}));
  lib.push_back(make("constant", 2, 1.0, inf, {{{0, 0}, 1.0}}));
  for (auto& spec : lib) spec.validate();
  return lib;
}

std::vector<SeriesSpec> cosine_test_library() {
  std::vector<SeriesSpec> lib;
  const double inf = std::numeric_limits<double>::infinity();
  auto make = [](std::string id, std::size_t s, double alpha, double p,
                 std::vector<SeriesTerm> terms) {
    SeriesSpec spec;
    spec.basis = Basis::cosine;
    spec.dim = s;
    spec.alpha = alpha;
    spec.p = p;
    spec.id = std::move(id);
    spec.terms = std::move(terms);
    return spec;
  };
  lib.push_back(make("cos-1d", 1, 1.0, inf, {{{1}, 1.0}}));
  lib.push_back(make("cos-2d", 2, 1.0, 2.0, {{{1, 0}, 1.0}, {{2, 1}, 0.25}, {{0, 0}, 0.5}}));
  lib.push_back(make("cos-rough", 2, 0.5, 1.0, {{{3, 0}, 0.4}, {{0, 2}, -0.3}, {{1, 1}, 0.2}}));
  lib.push_back(make("cos-3d", 3, 1.0, inf,
                     {{{1, 1, 0}, 0.3}, {{0, 0, 2}, 0.5}, {{2, 1, 1}, -0.1}, {{0, 0, 0}, 1.0}}));
  lib.push_back(make("cos-half", 3, 0.5, 2.0, {{{1, 0, 0}, 0.6}, {{0, 1, 2}, 0.2}}));
  lib.push_back(make("cos-5d", 5, 1.0, 1.0,
                     {{{1, 0, 0, 0, 0}, 0.5}, {{0, 2, 0, 1, 0}, 0.25}, {{0, 0, 0, 0, 0}, 0.25}}));
  for (auto& spec : lib) spec.validate();
  return lib;
}

std::vector<SeriesSpec> walsh_test_library(const FieldParams& f) {
  std::vector<SeriesSpec> lib;
  const double inf = std::numeric_limits<double>::infinity();
  const i64 card = static_cast<i64>(f.card());
  auto make = [&](std::string id, std::size_t s, double alpha, double p,
                  std::vector<SeriesTerm> terms) {
    SeriesSpec spec;
    spec.basis = Basis::walsh;
    spec.dim = s;
    spec.alpha = alpha;
    spec.p = p;
    spec.field = f;
    spec.id = std::move(id) + "-q" + std::to_string(card);
    spec.terms = std::move(terms);
    return spec;
  };
  lib.push_back(make("wal-low", 2, 1.0, inf, {{{1, 0}, 0.5}, {{0, 1}, 0.25}, {{0, 0}, 1.0}}));
  lib.push_back(make("wal-pair", 2, 1.0, 2.0,
                     {{{1, 2}, 0.4}, {{3, 1}, cdouble(0.0, 0.2)}, {{0, 0}, 0.3}}));
  lib.push_back(make("wal-aliased", 2, 1.0, inf,
                     {{{card, 0}, 0.125}, {{1, 1}, 0.5}, {{0, 0}, 1.0}}));
  lib.push_back(make("wal-rough", 3, 0.5, inf,
                     {{{1, 0, 2}, 0.3}, {{0, 3, 0}, -0.2}, {{2, 1, 0}, 0.1}}));
  lib.push_back(make("wal-deep", 2, 0.5, 2.0,
                     {{{card + 1, 0}, 0.2}, {{2, card}, 0.1}, {{1, 0}, 0.4}, {{0, 0}, 0.6}}));
  for (auto& spec : lib) spec.validate();
  return lib;
}

namespace {

nlohmann::json spec_to_json(const SeriesSpec& spec) {
  nlohmann::json j;
  j["basis"] = basis_name(spec.basis);
  if (spec.field) j["field"] = spec.field->serialize();
  j["alpha"] = spec.alpha;
  if (std::isinf(spec.p))
    j["p"] = "inf";
  else
    j["p"] = spec.p;
  if (spec.coeff_tail > 0.0) j["coeff_tail"] = spec.coeff_tail;
  if (!spec.id.empty()) j["id"] = spec.id;
  j["terms"] = nlohmann::json::array();
  for (const auto& term : spec.terms) {
    nlohmann::json t;
    t["k"] = term.k;
    t["re"] = term.coeff.real();
    t["im"] = term.coeff.imag();
    j["terms"].push_back(std::move(t));
  }
  return j;
}

SeriesSpec spec_from_json(const nlohmann::json& j) {
  SeriesSpec spec;
  const std::string basis = j.at("basis").get<std::string>();
  if (basis == "fourier")
    spec.basis = Basis::fourier;
  else if (basis == "cosine")
    spec.basis = Basis::cosine;
  else if (basis == "walsh")
    spec.basis = Basis::walsh;
  else
    throw std::invalid_argument("unknown basis: " + basis);
  if (j.contains("field")) spec.field = FieldParams::parse(j.at("field").get<std::string>());
  spec.alpha = j.at("alpha").get<double>();
  if (j.at("p").is_string()) {
    const std::string p = j.at("p").get<std::string>();
    if (p != "inf" && p != "Inf" && p != "infinity")
      throw std::invalid_argument("p must be a number or \"inf\"");
    spec.p = std::numeric_limits<double>::infinity();
  } else {
    spec.p = j.at("p").get<double>();
  }
  spec.coeff_tail = j.value("coeff_tail", 0.0);
  if (j.contains("id")) spec.id = j.at("id").get<std::string>();
  std::size_t dim = 0;
  for (const auto& t : j.at("terms")) {
    SeriesTerm term;
    term.k = t.at("k").get<std::vector<i64>>();
    term.coeff = cdouble(t.value("re", 0.0), t.value("im", 0.0));
    dim = std::max(dim, term.k.size());
    spec.terms.push_back(std::move(term));
  }
  spec.dim = dim == 0 ? 1 : dim;
  spec.validate();
  return spec;
}

}  // namespace

SeriesSpec spec_from_json_text(const std::string& text) {
  return spec_from_json(nlohmann::json::parse(text));
}

std::string spec_to_json_text(const SeriesSpec& spec) { return spec_to_json(spec).dump(2); }

SeriesSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open spec file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return spec_from_json_text(buf.str());
}

}  // namespace weilqmc
