#include "lfapprox/eigenform/coefficients.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "lfapprox/eigenform/primes.hpp"
#include "lfapprox/errors.hpp"
#include "lfapprox/numerics/big_complex.hpp"

namespace lfapprox {

// ---------------------------------------------------------------- Coefficient

Coefficient Coefficient::decimal(std::string text) {
  (void)BigReal::from_string(text, 64);  // syntax check
  Coefficient c;
  c.value_ = std::move(text);
  return c;
}

bool Coefficient::is_zero() const {
  if (is_exact()) return exact() == 0;
  return BigReal::from_string(std::get<std::string>(value_), 64).is_zero();
}

BigReal Coefficient::to_real(mpfr_prec_t prec) const {
  if (is_exact()) return BigReal(exact(), prec);
  return BigReal::from_string(std::get<std::string>(value_), prec);
}

std::string Coefficient::to_string() const {
  if (is_exact()) return exact().get_str();
  return std::get<std::string>(value_);
}

// ----------------------------------------------------------- CoefficientTable

CoefficientTable::CoefficientTable(CoefficientSequence coeffs, Source source)
    : coeffs_(std::move(coeffs)), source_(source) {
  if (coeffs_.empty()) throw PreconditionError("coefficient table must hold at least a_1");
  const Coefficient& a1 = coeffs_.front();
  bool normalized = a1.is_exact() ? a1.exact() == 1 : a1.to_real(256) == 1.0;
  if (!normalized) throw NormalizationError("a_1 must equal 1, got " + a1.to_string());
}

bool CoefficientTable::all_exact() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Coefficient& c) { return c.is_exact(); });
}

CoefficientTable CoefficientTable::prefix(std::size_t n) const {
  if (n == 0 || n > coeffs_.size()) throw PreconditionError("prefix length out of range");
  return CoefficientTable(CoefficientSequence(coeffs_.begin(), coeffs_.begin() + static_cast<long>(n)), source_);
}

// ------------------------------------------------------------------ eta power

namespace {

__extension__ typedef unsigned __int128 u128;
using Series = std::vector<u128>;

// Truncated product in Z / 2^128. The sparser operand drives the outer loop.
Series multiply(const Series& a, const Series& b) {
  const std::size_t len = a.size();
  auto nonzero = [](const Series& s) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] != 0) idx.push_back(i);
    }
    return idx;
  };
  std::vector<std::size_t> nz_a = nonzero(a);
  std::vector<std::size_t> nz_b = nonzero(b);
  const Series& dense = nz_a.size() <= nz_b.size() ? b : a;
  const Series& sparse = nz_a.size() <= nz_b.size() ? a : b;
  const std::vector<std::size_t>& nz = nz_a.size() <= nz_b.size() ? nz_a : nz_b;

  Series out(len, 0);
  if (&a == &b && nz.size() * 4 > len) {
    // Dense square: each unordered pair once.
    for (std::size_t i = 0; i < len; ++i) {
      u128 acc = 0;
      std::size_t j = 0;
      for (; 2 * j < i; ++j) acc += a[j] * a[i - j];
      acc *= 2;
      if (2 * j == i) acc += a[j] * a[j];
      out[i] = acc;
    }
    return out;
  }
  for (std::size_t j : nz) {
    const u128 c = sparse[j];
    for (std::size_t i = j; i < len; ++i) out[i] += c * dense[i - j];
  }
  return out;
}

mpz_class to_mpz(u128 v) {
  bool negative = (v >> 127) != 0;
  if (negative) v = ~v + 1;
  mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(v >> 64)));
  mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(v)));
  mpz_class out = (hi << 64) + lo;
  return negative ? mpz_class(-out) : out;
}

}  // namespace

CoefficientTable delta_coefficients(long n_max, long budget) {
  if (n_max < 1) throw PreconditionError("delta_coefficients: n_max must be >= 1");
  long limit = std::min(budget, kMaxDeltaCoefficients);
  if (n_max > limit) {
    throw ResourceError("delta_coefficients: n_max=" + std::to_string(n_max) + " exceeds the budget of " +
                        std::to_string(limit));
  }
  // tau(n) is the coefficient of q^(n-1) in E^24, E = prod (1 - q^m).
  // Arithmetic is modulo 2^128; |tau(n)| < 2^127 for n <= 10^6 by the
  // Ramanujan bound, so the signed residues are the exact values.
  const std::size_t len = static_cast<std::size_t>(n_max);
  Series e(len, 0);
  e[0] = 1;
  for (std::size_t m = 1; m < len; ++m) {
    for (std::size_t d = len - 1; d >= m; --d) e[d] -= e[d - m];
  }
  Series e2 = multiply(e, e);
  Series e3 = multiply(e2, e);
  Series e6 = multiply(e3, e3);
  Series e12 = multiply(e6, e6);
  Series e24 = multiply(e12, e12);

  CoefficientSequence coeffs;
  coeffs.reserve(len);
  for (std::size_t i = 0; i < len; ++i) coeffs.emplace_back(to_mpz(e24[i]));
  return CoefficientTable(std::move(coeffs), CoefficientTable::Source::eta_product);
}

// ---------------------------------------------------------------------- files

std::string CoefficientHeader::to_string() const {
  return "# eigenform k=" + std::to_string(weight_k) + " C=" + std::to_string(level_C) +
         " P=" + std::to_string(sign_P) + " nmax=" + std::to_string(n_max);
}

bool CoefficientHeader::matches(const EigenformSpec& spec) const {
  return weight_k == spec.weight_k && level_C == spec.level_C && sign_P == spec.sign_P;
}

namespace {

bool is_integer_literal(const std::string& s) {
  std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  return std::all_of(s.begin() + static_cast<long>(i), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; });
}

std::optional<CoefficientHeader> parse_header(const std::string& line) {
  std::istringstream in(line);
  std::string hash, word;
  in >> hash >> word;
  if (hash != "#" || word != "eigenform") return std::nullopt;
  CoefficientHeader h;
  int seen = 0;
  std::string field;
  while (in >> field) {
    auto eq = field.find('=');
    if (eq == std::string::npos) return std::nullopt;
    std::string key = field.substr(0, eq);
    std::string value = field.substr(eq + 1);
    try {
      if (key == "k") {
        h.weight_k = std::stoi(value);
      } else if (key == "C") {
        h.level_C = std::stol(value);
      } else if (key == "P") {
        h.sign_P = std::stoi(value);
      } else if (key == "nmax") {
        h.n_max = std::stol(value);
      } else {
        continue;
      }
    } catch (const std::exception&) {
      return std::nullopt;
    }
    ++seen;
  }
  if (seen != 4) return std::nullopt;
  return h;
}

}  // namespace

CoefficientTable parse_coefficients(std::istream& in, const std::string& origin) {
  CoefficientSequence coeffs;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string index_text, value_text, extra;
    if (!(fields >> index_text)) continue;
    auto where = [&] { return origin + ":" + std::to_string(line_no); };
    if (!(fields >> value_text) || (fields >> extra)) {
      throw ParseError(where() + ": expected \"n value\"");
    }
    if (!is_integer_literal(index_text)) throw ParseError(where() + ": index is not an integer");
    long index = 0;
    try {
      index = std::stol(index_text);
    } catch (const std::exception&) {
      throw ParseError(where() + ": index out of range");
    }
    long expected = static_cast<long>(coeffs.size()) + 1;
    if (index != expected) {
      throw ParseError(where() + ": expected index " + std::to_string(expected) + ", found " + index_text);
    }
    if (is_integer_literal(value_text)) {
      coeffs.emplace_back(mpz_class(value_text[0] == '+' ? value_text.substr(1) : value_text));
    } else {
      try {
        coeffs.push_back(Coefficient::decimal(value_text));
      } catch (const ParseError&) {
        throw ParseError(where() + ": malformed coefficient \"" + value_text + "\"");
      }
    }
  }
  if (coeffs.empty()) throw ParseError(origin + ": no coefficients found");
  return CoefficientTable(std::move(coeffs), CoefficientTable::Source::file);
}

std::optional<CoefficientHeader> read_coefficient_header(const std::string& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] != '#') return std::nullopt;
    if (auto h = parse_header(line)) return h;
  }
  return std::nullopt;
}

CoefficientTable load_coefficients(const std::string& path, const EigenformSpec& spec) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open coefficient file " + path);
  if (auto header = read_coefficient_header(path); header && !header->matches(spec)) {
    throw PreconditionError(path + ": header \"" + header->to_string() + "\" does not match the requested form");
  }
  return parse_coefficients(in, path);
}

void write_coefficients(std::ostream& out, const CoefficientTable& table, const EigenformSpec& spec) {
  CoefficientHeader h{spec.weight_k, spec.level_C, spec.sign_P, static_cast<long>(table.n_max())};
  out << h.to_string() << '\n';
  for (std::size_t n = 1; n <= table.n_max(); ++n) out << n << ' ' << table[n].to_string() << '\n';
}

void write_coefficients(const std::string& path, const CoefficientTable& table, const EigenformSpec& spec) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write coefficient file " + path);
  write_coefficients(out, table, spec);
  out.flush();
  if (!out) throw IoError("write failed for " + path);
}

// ---------------------------------------------------------------------- masks

SubseriesMask::SubseriesMask(std::size_t n_max, int N) : N_(N), p_N_(nth_prime(N)), smooth_(n_max, false) {
  auto spf = smallest_prime_factors(static_cast<long>(n_max));
  for (std::size_t n = 1; n <= n_max; ++n) {
    smooth_[n - 1] = largest_prime_factor(static_cast<long>(n), spf) <= p_N_;
  }
}

namespace {

CoefficientSequence masked(const CoefficientTable& table, int N, bool keep_smooth) {
  SubseriesMask mask(table.n_max(), N);
  CoefficientSequence out(table.n_max());
  for (std::size_t n = 1; n <= table.n_max(); ++n) {
    if (mask.is_smooth(n) == keep_smooth) out[n - 1] = table[n];
  }
  return out;
}

}  // namespace

CoefficientSequence smooth_subseries(const CoefficientTable& table, int N) { return masked(table, N, true); }

CoefficientSequence complement_series(const CoefficientTable& table, int N) { return masked(table, N, false); }

// ---------------------------------------------------------------- Hecke check

bool HeckeReport::contains(HeckeViolation::Kind kind, long first, long second) const {
  return std::any_of(violations.begin(), violations.end(), [&](const HeckeViolation& v) {
    return v.kind == kind && v.first == first && v.second == second;
  });
}

namespace {

class ExactChecker {
 public:
  ExactChecker(const CoefficientTable& table, const EigenformSpec& spec) : table_(table), spec_(spec) {}

  bool multiplicative(long m, long n) const { return a(m * n) == a(m) * a(n); }

  bool prime_power(long p, long r) const {
    long pr = ipow(p, r);
    mpz_class rhs = a(p) * a(pr);
    if (!spec_.chi.vanishes_at(p)) {
      mpz_class pk;
      mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(spec_.weight_k - 1));
      rhs -= pk * a(pr / p);
    }
    return a(pr * p) == rhs;
  }

  bool ramanujan(long p) const {
    mpz_class pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(spec_.weight_k - 1));
    return a(p) * a(p) <= 4 * pk;
  }

 private:
  static long ipow(long b, long e) {
    long r = 1;
    while (e-- > 0) r *= b;
    return r;
  }
  const mpz_class& a(long n) const { return table_[static_cast<std::size_t>(n)].exact(); }

  const CoefficientTable& table_;
  const EigenformSpec& spec_;
};

class NumericChecker {
 public:
  NumericChecker(const CoefficientTable& table, const EigenformSpec& spec, const PrecisionContext& ctx)
      : table_(table), spec_(spec), prec_(ctx.working()), tol_(-static_cast<double>(ctx.bits()) + 8.0) {}

  bool multiplicative(long m, long n) const { return close(BigComplex(a(m * n)), BigComplex(a(m) * a(n))); }

  bool prime_power(long p, long r) const {
    long pr = 1;
    for (long i = 0; i < r; ++i) pr *= p;
    BigComplex rhs(a(p) * a(pr));
    BigReal pk = pow(BigReal(p, prec_), BigReal(static_cast<long>(spec_.weight_k - 1), prec_));
    rhs -= spec_.chi.at(p, prec_) * pk * a(pr / p);
    return close(BigComplex(a(pr * p)), rhs);
  }

  bool ramanujan(long p) const {
    BigReal bound = sqrt(pow(BigReal(p, prec_), BigReal(static_cast<long>(spec_.weight_k - 1), prec_))) * 2L;
    BigReal slack = ldexp(bound, static_cast<long>(tol_));
    return abs(a(p)) <= bound + slack;
  }

 private:
  BigReal a(long n) const { return table_[static_cast<std::size_t>(n)].to_real(prec_); }
  bool close(const BigComplex& x, const BigComplex& y) const {
    BigReal scale = max(max(abs(x), abs(y)), BigReal(1L, prec_));
    return (abs(x - y) / scale).log2_abs() <= tol_;
  }

  const CoefficientTable& table_;
  const EigenformSpec& spec_;
  mpfr_prec_t prec_;
  double tol_;
};

template <class Checker>
void run_checks(const Checker& check, long n_max, HeckeReport& report) {
  using Kind = HeckeViolation::Kind;
  for (long m = 2; m * (m + 1) <= n_max; ++m) {
    for (long n = m + 1; m * n <= n_max; ++n) {
      if (gcd(m, n) != 1) continue;
      if (!check.multiplicative(m, n)) {
        report.violations.push_back({Kind::multiplicative, m, n,
                                     "a_" + std::to_string(m * n) + " != a_" + std::to_string(m) + " a_" +
                                         std::to_string(n)});
      }
    }
  }
  for (long p : primes_up_to(n_max)) {
    if (!check.ramanujan(p)) {
      report.violations.push_back({Kind::ramanujan_bound, p, 0, "|a_" + std::to_string(p) + "| exceeds 2 p^((k-1)/2)"});
    }
    long r = 1;
    for (long pr = p; pr <= n_max / p; pr *= p, ++r) {
      if (!check.prime_power(p, r)) {
        report.violations.push_back({Kind::prime_power, p, r,
                                     "recursion fails for a_" + std::to_string(pr * p)});
      }
    }
  }
}

}  // namespace

HeckeReport hecke_consistency_check(const CoefficientTable& table, const EigenformSpec& spec,
                                    const PrecisionContext& ctx) {
  if (table.n_max() < 4) throw PreconditionError("hecke_consistency_check needs at least 4 coefficients");
  HeckeReport report;
  report.n_max = table.n_max();
  const long n_max = static_cast<long>(table.n_max());
  if (table.all_exact() && spec.chi.is_principal()) {
    run_checks(ExactChecker(table, spec), n_max, report);
  } else {
    run_checks(NumericChecker(table, spec, ctx), n_max, report);
  }
  return report;
}

}  // namespace lfapprox
