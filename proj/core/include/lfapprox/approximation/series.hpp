#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "lfapprox/eigenform/coefficients.hpp"
#include "lfapprox/eigenform/form.hpp"
#include "lfapprox/numerics/estimate.hpp"
#include "lfapprox/numerics/precision.hpp"

namespace lfapprox {

// Which function a series evaluation produces: the completed L-function
// itself, or its approximation built from the first N Euler factors.
struct Mode {
  bool full = true;
  int N = 0;

  static Mode full_mode() { return Mode{true, 0}; }
  static Mode approx(int N) { return Mode{false, N}; }
  // "full" or "N=3".
  std::string label() const;
  friend bool operator==(const Mode&, const Mode&) = default;
};

struct ApproxConfig {
  int N = 3;
  BigReal target_abs_error = BigReal(1e-30, 64);
  // Last index summed; when unset the cutoff is certified by tail_bound.
  std::optional<long> n_cutoff_override;

  // Throws PreconditionError unless target > 0 and N >= 1.
  void validate() const;
};

// (2 pi n/sqrt C)^-s Gamma(s, 2 pi n/sqrt C) + (-1)^P (2 pi n/sqrt C)^-(k-s) Gamma(k-s, 2 pi n/sqrt C)
ComplexEstimate lambda_term(const BigComplex& s, long n, const EigenformSpec& spec, const PrecisionContext& ctx);

// Upper bound for sum_{n >= n_start} |a_n| |lambda_term(s, n)| from
// |a_n| <= n^((k+1)/2) and |Gamma(sigma + it, a)| <= 2 e^(-a/2) for
// a > m(sigma). Terms are summed explicitly until their ratio is certified
// below a fixed rho < 1, then closed with a geometric series. Nonincreasing
// in n_start. Throws RegimeError when 2 pi n_start/sqrt C is not above
// max(m(sigma), m(k - sigma)).
BigReal tail_bound(long n_start, const BigComplex& s, const EigenformSpec& spec, const PrecisionContext& ctx);

// Smallest n_start with tail_bound(n_start) <= target/2; the series is
// summed over n < n_start.
long certified_tail_start(const BigComplex& s, const EigenformSpec& spec, const BigReal& target,
                          const PrecisionContext& ctx);

// 4 e^(-pi p/sqrt C) p^((k-1)/2) (a^-sigma + a^(sigma-k)), a = 2 pi p/sqrt C,
// at the exact prime p = p_{N+1}. Throws RegimeError below max(m(sigma), m(k-sigma)).
BigReal first_term_bound(int N, const BigComplex& s, const EigenformSpec& spec, const PrecisionContext& ctx);

// The same bound with p_{N+1} replaced by Rosser's range
// (n log n, n (log n + log log n)), n = N + 1, each factor taking the
// endpoint that makes it largest. Requires N >= 5.
BigReal rosser_first_term_bound(int N, const BigComplex& s, const EigenformSpec& spec, const PrecisionContext& ctx);

// Evaluates sum_n w_n lambda_term(s, n) for the weight sequences a_n, b_n^(N)
// and c_n^(N) of one coefficient table. The table must outlive the engine.
// Safe for concurrent use.
class SeriesEngine {
 public:
  SeriesEngine(const CoefficientTable& table, const EigenformSpec& spec, const PrecisionContext& ctx);

  const CoefficientTable& table() const { return table_; }
  const EigenformSpec& spec() const { return spec_; }
  const PrecisionContext& ctx() const { return ctx_; }

  // Lambda (full) or Lambda_N at s.
  ComplexEstimate evaluate(const BigComplex& s, const Mode& mode, const BigReal& target,
                           std::optional<long> cutoff_override = std::nullopt) const;
  // Several modes at one s, sharing the per-n terms.
  std::vector<ComplexEstimate> evaluate(const BigComplex& s, const std::vector<Mode>& modes, const BigReal& target,
                                        std::optional<long> cutoff_override = std::nullopt) const;
  // sum c_n^(N) lambda_term(s, n).
  ComplexEstimate error_series(const BigComplex& s, int N, const BigReal& target,
                               std::optional<long> cutoff_override = std::nullopt) const;

  // Last summed index for s and target (after the override, if any).
  long cutoff(const BigComplex& s, const BigReal& target, std::optional<long> cutoff_override) const;

 private:
  enum class Weight { all, smooth, complement };
  struct Request {
    Weight weight;
    int N;
  };
  std::vector<ComplexEstimate> run(const BigComplex& s, const std::vector<Request>& requests, const BigReal& target,
                                   std::optional<long> cutoff_override) const;
  const SubseriesMask& mask(int N) const;

  const CoefficientTable& table_;
  EigenformSpec spec_;
  PrecisionContext ctx_;
  mutable std::mutex mask_mutex_;
  mutable std::map<int, std::unique_ptr<SubseriesMask>> masks_;
};

// sum_{n <= cutoff} a_n lambda_term(s, n). Throws CutoffError when the table
// is shorter than the certified cutoff.
ComplexEstimate lambda_full(const BigComplex& s, const CoefficientTable& table, const EigenformSpec& spec,
                            const ApproxConfig& cfg, const PrecisionContext& ctx);
// The same with b_n^(N), N = cfg.N.
ComplexEstimate lambda_N(const BigComplex& s, const CoefficientTable& table, const EigenformSpec& spec,
                         const ApproxConfig& cfg, const PrecisionContext& ctx);
// sum c_n^(N) lambda_term(s, n) = lambda_full - lambda_N.
ComplexEstimate error_series(const BigComplex& s, const CoefficientTable& table, const EigenformSpec& spec, int N,
                             const ApproxConfig& cfg, const PrecisionContext& ctx);

}  // namespace lfapprox
