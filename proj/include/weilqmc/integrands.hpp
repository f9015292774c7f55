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

#ifndef WEILQMC_INTEGRANDS_HPP
#define WEILQMC_INTEGRANDS_HPP

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "weilqmc/charsums.hpp"
#include "weilqmc/finitefield.hpp"

namespace weilqmc {

enum class Basis { fourier, cosine, walsh };
enum class Space { K, C, W };

const char* basis_name(Basis basis);
const char* space_name(Space space);
Space space_for_basis(Basis basis);

struct SeriesTerm {
  std::vector<std::int64_t> k;
  std::complex<double> coeff;
};

// A test integrand given by finitely many basis coefficients plus the
// Hoelder parameters (alpha, p) entering the norm and the error bounds.
// Use p = infinity for the sup-norm increment. Truncations of infinite
// series carry a certified bound on the dropped coefficient mass in
// coeff_tail (in the weighted scale of the target space); it enters the
// norm but not the evaluation, which is always the finite sum.
struct SeriesSpec {
  Basis basis = Basis::fourier;
  std::size_t dim = 1;
  double alpha = 1.0;
  double p = std::numeric_limits<double>::infinity();
  std::vector<SeriesTerm> terms;
  std::optional<FieldParams> field;  // walsh basis only
  double coeff_tail = 0.0;
  std::string id;

  void validate() const;  // throws std::invalid_argument on malformed content
};

struct NormReport {
  double coeff_sum = 0.0;     // weighted coefficient part of the norm
  double holder_upper = 0.0;  // certified Hoelder component for this function
  double total = 0.0;
};

// Pointwise evaluation of the finite series. For the walsh basis the digit
// extraction snaps to the nearest b^m-adic rational, so exact nodes should
// prefer eval_at_node / WalshEvaluator.
std::complex<double> eval(const SeriesSpec& spec, std::span<const double> x);

// Evaluation at an exact rational node of a point set; phases are reduced
// in integer arithmetic.
std::complex<double> eval_at_node(const SeriesSpec& spec, const PointSet& p, std::size_t row);

// Batch view over one (series, point set) pair: reduces the wave vectors
// and caches the Walsh digit machinery once for the whole sweep. Both
// arguments must outlive the evaluator.
class NodeEvaluator {
 public:
  NodeEvaluator(const SeriesSpec& spec, const PointSet& p);
  std::complex<double> row(std::size_t n) const;

 private:
  const SeriesSpec& spec_;
  const PointSet& p_;
  std::vector<std::vector<std::uint64_t>> reduced_;  // fourier: k mod denom per term
  mutable std::optional<WalshEvaluator> walsh_;
};

// The coefficient at the zero wave vector.
std::complex<double> true_integral(const SeriesSpec& spec);

// Certified upper bound on the Hoelder-type seminorm entering the bounds.
//
// fourier: sum_k |a_k| 2^{1-alpha} (2 pi ||k||_q)^alpha with 1/p + 1/q = 1,
//   from |e^{i theta} - 1| <= min(2, |theta|) optimized over the increment.
// cosine:  2^{-alpha} times the bound of the tent-composed Fourier series.
// walsh:   sum_k 2 |a_k| (b^{m d_k})^alpha where d_k is the largest
//   significant base-b^m digit position of k. A non-constant Walsh
//   polynomial is discontinuous, so this is a modulus-of-continuity bound
//   for the b^m-adic metric rho(x, y) = max_j (b^m)^{-agreement depth};
//   it is exactly what the aliasing estimate consumes.
double holder_upper(const SeriesSpec& spec);

// Norm in the matched space (fourier <-> K, cosine <-> C, walsh <-> W).
// The C norm is computed through the tent composition, which makes the
// K/C norm equality exact in floating point as well.
NormReport norm(const SeriesSpec& spec, Space space);

// Fourier series of g(tent(x)) for a cosine series g: every term with
// support u splits into 2^|u| sign patterns with coefficient
// g_k 2^{-|u|/2}. Evaluation commutes with the transform pointwise.
SeriesSpec compose_tent(const SeriesSpec& cosine_spec);

// Fourier family with |a_k| = c prod_j min(1, |k_j|^-beta) truncated at
// |k_j| <= kmax, plus the closed form of its coefficient sum.
SeriesSpec decaying_fourier_family(std::size_t s, double c, double beta, std::int64_t kmax,
                                   double alpha, double p);
double decaying_coeff_sum_closed_form(std::size_t s, double c, double beta, std::int64_t kmax);

// Built-in libraries used by the convergence experiments.
std::vector<SeriesSpec> fourier_test_library();
std::vector<SeriesSpec> cosine_test_library();
std::vector<SeriesSpec> walsh_test_library(const FieldParams& f);

// JSON round trip:
// {"basis": "fourier"|"cosine"|"walsh", "field": "b,m,p0,...", "alpha": a,
//  "p": number|"inf", "terms": [{"k": [..], "re": r, "im": i}, ...]}
SeriesSpec spec_from_json_text(const std::string& text);
std::string spec_to_json_text(const SeriesSpec& spec);
SeriesSpec load_spec(const std::string& path);

}  // namespace weilqmc

#endif  // WEILQMC_INTEGRANDS_HPP
