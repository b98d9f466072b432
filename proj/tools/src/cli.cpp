#include "lfapprox_cli/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "lfapprox/approximation/z_function.hpp"
#include "lfapprox/eigenform/primes.hpp"
#include "lfapprox/errors.hpp"
#include "lfapprox/euler/local_factor.hpp"
#include "lfapprox/regularization/equidist.hpp"
#include "lfapprox/regularization/principal_parts.hpp"
#include "lfapprox/version.hpp"
#include "lfapprox/zerofinder/zeros.hpp"

#ifdef LFAPPROX_WITH_FETCH
#include "httplib.h"
#endif

namespace lfapprox::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

BigReal decimal(const std::string& option, const std::string& text, mpfr_prec_t prec) {
  try {
    return BigReal::from_string(text, prec);
  } catch (const ParseError&) {
    throw UsageError(option + ": \"" + text + "\" is not a decimal number");
  }
}

BigReal positive(const std::string& option, const std::string& text, mpfr_prec_t prec) {
  BigReal v = decimal(option, text, prec);
  if (!(v.sign() > 0)) throw UsageError(option + " must be positive");
  return v;
}

Mode parse_mode(const std::string& text) {
  if (text == "full") return Mode::full_mode();
  std::string digits = text.rfind("N=", 0) == 0 ? text.substr(2) : text;
  try {
    std::size_t used = 0;
    int N = std::stoi(digits, &used);
    if (used == digits.size() && N >= 1) return Mode::approx(N);
  } catch (const std::exception&) {
  }
  throw UsageError("mode \"" + text + "\" is neither \"full\" nor a positive N");
}

std::vector<Mode> parse_modes(const std::vector<std::string>& texts) {
  std::vector<Mode> modes;
  for (const auto& t : texts) {
    if (!t.empty()) modes.push_back(parse_mode(t));
  }
  if (modes.empty()) throw UsageError("--modes: at least one mode is required");
  return modes;
}

std::string default_cache_dir() {
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return (fs::path(xdg) / "lfapprox").string();
  if (const char* home = std::getenv("HOME"); home && *home) return (fs::path(home) / ".cache" / "lfapprox").string();
  return ".lfapprox-cache";
}

std::string fmt_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

json base_meta(const RunConfig& cfg, const std::string& subcommand, json params) {
  json config = cfg.to_json();
  for (auto& [key, value] : params.items()) config[key] = value;
  return json{{"tool", "lfapprox"}, {"version", kVersion}, {"subcommand", subcommand}, {"bits", cfg.bits},
              {"config", config}};
}

// Writes to cfg.out, or to `console` for "-".
template <typename Writer>
void emit(const RunConfig& cfg, std::ostream& console, Writer&& write) {
  if (cfg.out == "-") {
    write(console);
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open output file " + cfg.out);
  write(file);
  file.flush();
  if (!file) throw IoError("write failed for " + cfg.out);
}

// Table length that lets Lambda be certified at every s.
long needed_terms(const std::vector<BigComplex>& points, const std::vector<BigReal>& targets, const EigenformSpec& spec,
                  const PrecisionContext& ctx) {
  long need = 1;
  for (std::size_t i = 0; i < points.size(); ++i) {
    need = std::max(need, certified_tail_start(points[i], spec, targets[i], ctx));
  }
  return need + 16;
}

std::vector<BigReal> grid(const BigReal& lo, const BigReal& hi, const BigReal& step) {
  std::vector<BigReal> ts;
  if (hi < lo) return ts;
  long count = floor((hi - lo) / step).to_long();
  for (long i = 0; i <= count; ++i) ts.push_back(lo + step * i);
  if (ts.back() < hi) ts.push_back(hi);
  return ts;
}

long z_terms(const std::vector<BigReal>& ts, const BigReal& target, const EigenformSpec& spec,
             const PrecisionContext& ctx) {
  std::vector<BigComplex> points;
  std::vector<BigReal> targets;
  const std::size_t stride = std::max<std::size_t>(1, ts.size() / 24);
  PrecisionContext low = ctx.with_bits(64);
  auto add = [&](const BigReal& t) {
    BigComplex s(BigReal(static_cast<long>(spec.weight_k), 64) / 2L, t.rounded(64));
    points.push_back(s);
    targets.push_back(target * abs(gamma_factor_eval(s, spec, low).value));
  };
  for (std::size_t i = 0; i < ts.size(); i += stride) add(ts[i]);
  add(ts.back());
  return needed_terms(points, targets, spec, ctx);
}

[[noreturn]] void rethrow_with_hint(const PrecisionError& e, int bits) {
  throw PrecisionError(std::string(e.what()) + " (try --bits " + std::to_string(bits + 64) + " or more)");
}

// ------------------------------------------------------------------ commands

struct CoeffsArgs {
  long nmax = 100;
};

int cmd_coeffs(const RunConfig& cfg, const CoeffsArgs& a, std::ostream& out, std::ostream& err) {
  if (a.nmax < 1) throw UsageError("--nmax must be at least 1");
  CoefficientSource source(cfg, err);
  CoefficientTable table = source.obtain(a.nmax);
  if (!cfg.coeff_file.empty() && static_cast<long>(table.n_max()) < a.nmax) {
    throw UsageError("--nmax " + std::to_string(a.nmax) + " exceeds the " + std::to_string(table.n_max()) +
                     " entries of " + cfg.coeff_file);
  }
  json meta = base_meta(cfg, "coeffs", {{"nmax", a.nmax}});
  if (cfg.format == "json") {
    Table t{meta, {"n", "a_n"}, {}};
    for (std::size_t n = 1; n <= table.n_max(); ++n) t.rows.push_back({std::to_string(n), table[n].to_string()});
    emit(cfg, out, [&](std::ostream& os) { write_table(t, "json", os); });
  } else {
    emit(cfg, out, [&](std::ostream& os) {
      os << "# " << meta.dump() << '\n';
      write_coefficients(os, table, source.spec());
    });
  }
  return kOk;
}

struct ZfuncArgs {
  std::string t_lo = "0";
  std::string t_hi = "30";
  std::string step = "0.05";
  std::vector<std::string> modes;
};

int cmd_zfunc(const RunConfig& cfg, const ZfuncArgs& a, std::ostream& out, std::ostream& err) {
  const mpfr_prec_t prec = cfg.bits;
  BigReal lo = decimal("--t-lo", a.t_lo, prec);
  BigReal hi = decimal("--t-hi", a.t_hi, prec);
  BigReal step = positive("--step", a.step, prec);
  if (hi < lo) throw UsageError("--t-hi must not be below --t-lo");
  std::vector<std::string> mode_texts = a.modes;
  if (mode_texts.empty()) {
    mode_texts.push_back("full");
    for (int n = 1; n <= cfg.N; ++n) mode_texts.push_back(std::to_string(n));
  }
  std::vector<Mode> modes = parse_modes(mode_texts);
  BigReal target = positive("--target-error", cfg.target_error, 64);

  PrecisionContext ctx(cfg.bits);
  CoefficientSource source(cfg, err);
  auto ts = grid(lo, hi, step);
  CoefficientTable table = source.obtain(z_terms(ts, target, source.spec(), ctx));
  ApproxConfig acfg;
  acfg.N = cfg.N;
  acfg.target_abs_error = target;
  ZFunction Z(table, source.spec(), acfg, ctx);

  const int digits = decimal_digits(cfg.bits);
  Table t;
  t.meta = base_meta(cfg, "zfunc", {{"t_lo", a.t_lo}, {"t_hi", a.t_hi}, {"step", a.step}, {"modes", mode_texts}});
  t.meta["coefficients"] = table.n_max();
  t.columns.push_back("t");
  for (const auto& m : modes) {
    t.columns.push_back("Z[" + m.label() + "]");
    t.columns.push_back("err[" + m.label() + "]");
  }
  for (const auto& x : ts) {
    std::vector<RealEstimate> values;
    try {
      values = Z.evaluate(x, modes);
    } catch (const PrecisionError& e) {
      rethrow_with_hint(e, cfg.bits);
    }
    std::vector<std::string> row{x.to_string(20)};
    for (const auto& v : values) {
      row.push_back(v.value.to_string(digits));
      row.push_back(v.abs_error.to_string(6));
    }
    t.rows.push_back(std::move(row));
  }
  emit(cfg, out, [&](std::ostream& os) { write_table(t, cfg.format, os); });
  return kOk;
}

struct ZerosArgs {
  std::string t_lo = "0";
  std::string t_hi = "30";
  std::string step = "0.05";
  std::string tol = "1e-12";
  std::string window = "0.5";
  std::vector<std::string> modes;
  bool classify = false;
};

int cmd_zeros(const RunConfig& cfg, const ZerosArgs& a, std::ostream& out, std::ostream& err) {
  const mpfr_prec_t prec = cfg.bits;
  BigReal lo = decimal("--t-lo", a.t_lo, prec);
  BigReal hi = decimal("--t-hi", a.t_hi, prec);
  BigReal step = positive("--step", a.step, prec);
  BigReal tol = positive("--tol", a.tol, 64);
  BigReal window = positive("--window", a.window, 64);
  std::vector<std::string> mode_texts = a.modes;
  if (mode_texts.empty()) mode_texts = {"full", std::to_string(cfg.N)};
  std::vector<Mode> modes = parse_modes(mode_texts);
  BigReal target = positive("--target-error", cfg.target_error, 64);

  PrecisionContext ctx(cfg.bits);
  CoefficientSource source(cfg, err);
  auto ts = grid(lo, hi, step);
  if (ts.empty()) ts.push_back(lo);
  CoefficientTable table = source.obtain(z_terms(ts, target, source.spec(), ctx));
  ApproxConfig acfg;
  acfg.N = cfg.N;
  acfg.target_abs_error = target;
  ZFunction Z(table, source.spec(), acfg, ctx);

  std::vector<std::vector<ZeroRecord>> found;
  try {
    for (const auto& m : modes) {
      auto scan = scan_sign_changes(lo, hi, step, m, Z);
      std::vector<ZeroRecord> zeros;
      for (const auto& b : scan.brackets) {
        ZeroRecord z = refine_zero(b, m, tol, Z);
        if (a.classify) z.order = classify_order(z, Z);
        zeros.push_back(std::move(z));
      }
      found.push_back(std::move(zeros));
    }
  } catch (const PrecisionError& e) {
    rethrow_with_hint(e, cfg.bits);
  }

  const int digits = decimal_digits(cfg.bits);
  const std::string ref = modes.front().label();
  Table t;
  t.meta = base_meta(cfg, "zeros",
                     {{"t_lo", a.t_lo}, {"t_hi", a.t_hi}, {"step", a.step}, {"tol", a.tol}, {"window", a.window},
                      {"modes", mode_texts}, {"classify", a.classify}});
  t.meta["coefficients"] = table.n_max();
  json counts = json::object();
  for (std::size_t i = 0; i < modes.size(); ++i) counts[modes[i].label()] = found[i].size();
  t.meta["zero_counts"] = counts;

  t.columns = {"t0[" + ref + "]", "width[" + ref + "]"};
  if (a.classify) t.columns.push_back("order[" + ref + "]");
  for (std::size_t m = 1; m < modes.size(); ++m) {
    t.columns.push_back("t0[" + modes[m].label() + "]");
    t.columns.push_back("t0[" + ref + "]-t0[" + modes[m].label() + "]");
  }

  const auto& reference = found.front();
  std::vector<BigReal> ref_ts;
  for (const auto& z : reference) ref_ts.push_back(z.t);
  // partner[m][i]: row of comparison m matched to reference zero i.
  std::vector<std::vector<std::optional<ZeroComparisonRow>>> partner(modes.size());
  std::vector<std::vector<BigReal>> unmatched(modes.size());
  for (std::size_t m = 1; m < modes.size(); ++m) {
    std::vector<BigReal> other;
    for (const auto& z : found[m]) other.push_back(z.t);
    partner[m].resize(reference.size());
    for (auto& row : compare_zero_lists(ref_ts, other, window)) {
      if (!row.first) {
        unmatched[m].push_back(*row.second);
        continue;
      }
      for (std::size_t i = 0; i < ref_ts.size(); ++i) {
        if (ref_ts[i] == *row.first && !partner[m][i]) {
          partner[m][i] = row;
          break;
        }
      }
    }
  }
  for (std::size_t i = 0; i < reference.size(); ++i) {
    std::vector<std::string> row{reference[i].t.to_string(digits), reference[i].refined_error.to_string(6)};
    if (a.classify) row.push_back(std::to_string(reference[i].order));
    for (std::size_t m = 1; m < modes.size(); ++m) {
      const auto& p = partner[m][i];
      row.push_back(p && p->second ? p->second->to_string(digits) : "");
      row.push_back(p && p->difference ? p->difference->to_string(6) : "");
    }
    t.rows.push_back(std::move(row));
  }
  for (std::size_t m = 1; m < modes.size(); ++m) {
    for (const auto& u : unmatched[m]) {
      std::vector<std::string> row(t.columns.size());
      row[(a.classify ? 3 : 2) + 2 * (m - 1)] = u.to_string(digits);
      t.rows.push_back(std::move(row));
    }
  }
  emit(cfg, out, [&](std::ostream& os) { write_table(t, cfg.format, os); });
  return kOk;
}

struct OracleArgs {
  int samples = 10;
  unsigned seed = 1;
  std::string truncation = "auto";
  std::string budget_scale = "1";
};

int cmd_oracle_check(const RunConfig& cfg, const OracleArgs& a, std::ostream& out, std::ostream& err) {
  if (a.samples < 1) throw UsageError("--samples must be at least 1");
  if (cfg.N < 1) throw UsageError("--N must be at least 1");
  BigReal target = positive("--target-error", cfg.target_error, 64);
  BigReal scale = decimal("--budget-scale", a.budget_scale, 64);
  if (scale.sign() < 0) throw UsageError("--budget-scale must not be negative");

  PrecisionContext ctx(cfg.bits);
  CoefficientSource source(cfg, err);
  const EigenformSpec& spec = source.spec();
  BigReal T = a.truncation == "auto" ? default_truncation(spec, target, ctx) : positive("--truncation", a.truncation, 64);

  const double center = spec.weight_k / 2.0;
  std::mt19937_64 rng(a.seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<BigComplex> points;
  for (int i = 0; i < a.samples; ++i) {
    double r = 5.0 * std::sqrt(std::abs(u(rng)));
    double phi = M_PI * u(rng);
    points.emplace_back(center + r * std::cos(phi), r * std::sin(phi), cfg.bits);
  }
  std::vector<BigReal> targets(points.size(), target);
  CoefficientTable table = source.obtain(needed_terms(points, targets, spec, ctx));
  PrincipalPartSum pp(cfg.N, T, table, spec, ctx);
  ApproxConfig acfg;
  acfg.N = cfg.N;
  acfg.target_abs_error = target;

  const int digits = decimal_digits(cfg.bits);
  Table t;
  t.columns = {"re_s", "im_s", "regularized", "series", "discrepancy", "budget", "truncation_tail", "status"};
  BigReal worst(0L, 64);
  BigReal worst_budget(0L, 64);
  bool all_pass = true;
  for (const auto& s : points) {
    auto reg = pp.lambda_N(s);
    auto ser = lambda_N(s, table, spec, acfg, ctx);
    BigReal gap = abs(reg.value - ser.value).rounded(64);
    BigReal budget = (reg.abs_error + ser.abs_error) * scale;
    bool pass = gap <= budget;
    all_pass = all_pass && pass;
    if (gap > worst) {
      worst = gap;
      worst_budget = budget;
    }
    t.rows.push_back({s.re().to_string(17), s.im().to_string(17), reg.value.to_string(digits),
                      ser.value.to_string(digits), gap.to_string(6), budget.to_string(6),
                      reg.truncation_tail.to_string(6), pass ? "PASS" : "FAIL"});
  }
  t.meta = base_meta(cfg, "oracle-check",
                     {{"samples", a.samples}, {"seed", a.seed}, {"truncation", a.truncation},
                      {"budget_scale", a.budget_scale}});
  t.meta["truncation_height"] = T.to_string(6);
  t.meta["principal_parts"] = pp.parts().size();
  t.meta["coefficients"] = table.n_max();
  t.meta["max_discrepancy"] = worst.to_string(6);
  t.meta["budget_at_max"] = worst_budget.to_string(6);
  t.meta["status"] = all_pass ? "PASS" : "FAIL";
  emit(cfg, out, [&](std::ostream& os) { write_table(t, cfg.format, os); });
  err << "oracle-check N=" << cfg.N << ": " << (all_pass ? "PASS" : "FAIL") << " (max discrepancy "
      << worst.to_string(4) << ")\n";
  return all_pass ? kOk : kCheckFailed;
}

struct EquidistArgs {
  long p = 2;
  long q = 3;
  long M = 100000;
};

int cmd_equidist(const RunConfig& cfg, const EquidistArgs& a, std::ostream& out) {
  EquidistReport r = equidist_probe(a.p, a.q, a.M, PrecisionContext(cfg.bits));
  Table t;
  t.meta = base_meta(cfg, "equidist", {{"p", a.p}, {"q", a.q}, {"M", a.M}});
  t.columns = {"p", "q", "M", "min_scaled", "argmin", "star_discrepancy"};
  t.rows.push_back({std::to_string(r.p), std::to_string(r.q), std::to_string(r.M),
                    r.min_scaled.to_string(decimal_digits(cfg.bits)), std::to_string(r.argmin),
                    fmt_double(r.discrepancy)});
  emit(cfg, out, [&](std::ostream& os) { write_table(t, cfg.format, os); });
  return kOk;
}

struct FetchArgs {
  std::string url;
};

int cmd_fetch(const RunConfig& cfg, const FetchArgs& a, std::ostream& out, std::ostream& err) {
#ifdef LFAPPROX_WITH_FETCH
  auto scheme_end = a.url.find("://");
  if (scheme_end == std::string::npos) throw UsageError("--url must start with http:// or https://");
  auto path_start = a.url.find('/', scheme_end + 3);
  std::string origin = a.url.substr(0, path_start);
  std::string path = path_start == std::string::npos ? "/" : a.url.substr(path_start);
  httplib::Client client(origin);
  if (!client.is_valid()) throw UsageError("unsupported URL " + a.url + " (https needs an OpenSSL build)");
  client.set_follow_location(true);
  client.set_connection_timeout(30);
  client.set_read_timeout(120);
  auto res = client.Get(path);
  if (!res) throw IoError("fetch " + a.url + ": " + httplib::to_string(res.error()));
  if (res->status != 200) throw IoError("fetch " + a.url + ": HTTP status " + std::to_string(res->status));
  CoefficientTable table = parse_fetched_coefficients(res->body);

  EigenformSpec spec;
  spec.weight_k = cfg.weight.value_or(12);
  spec.level_C = cfg.level.value_or(1);
  spec.sign_P = cfg.sign.value_or(0);
  spec.chi = CharacterTable::principal(spec.level_C);
  spec.validate(PrecisionContext(cfg.bits));
  json meta = base_meta(cfg, "fetch", {{"url", a.url}});
  emit(cfg, out, [&](std::ostream& os) {
    os << "# " << meta.dump() << '\n';
    write_coefficients(os, table, spec);
  });
  err << "fetched " << table.n_max() << " coefficients from " << a.url << '\n';
  return kOk;
#else
  (void)cfg;
  (void)out;
  (void)err;
  throw UsageError("fetch " + a.url + ": this build has no HTTP support");
#endif
}

}  // namespace

// ------------------------------------------------------------------ config

json RunConfig::to_json() const {
  json j{{"form", form},        {"coeff_file", coeff_file},     {"bits", bits},     {"N", N},
         {"target_error", target_error}, {"out", out}, {"format", format}, {"cache_dir", cache_dir}};
  j["weight"] = weight ? json(*weight) : json(nullptr);
  j["level"] = level ? json(*level) : json(nullptr);
  j["sign"] = sign ? json(*sign) : json(nullptr);
  return j;
}

EigenformSpec resolve_spec(const RunConfig& cfg) {
  EigenformSpec spec;
  if (!cfg.coeff_file.empty()) {
    auto header = read_coefficient_header(cfg.coeff_file);
    if (!cfg.weight && !header) {
      throw UsageError(cfg.coeff_file + " has no header line; pass --weight (and --level, --sign if not 1, 0)");
    }
    spec.weight_k = cfg.weight.value_or(header ? header->weight_k : 12);
    spec.level_C = cfg.level.value_or(header ? header->level_C : 1);
    spec.sign_P = cfg.sign.value_or(header ? header->sign_P : 0);
    spec.chi = CharacterTable::principal(spec.level_C);
  } else {
    if (cfg.form != "delta" && cfg.form != "builtin:delta") {
      throw UsageError("--form \"" + cfg.form + "\": the builtin form is delta; use --coeff-file for others");
    }
    spec = EigenformSpec::delta();
    if ((cfg.weight && *cfg.weight != spec.weight_k) || (cfg.level && *cfg.level != spec.level_C) ||
        (cfg.sign && *cfg.sign != spec.sign_P)) {
      throw UsageError("--weight/--level/--sign contradict the builtin delta form (k=12, C=1, P=0)");
    }
  }
  spec.validate(PrecisionContext(cfg.bits));
  return spec;
}

// ------------------------------------------------------------------ coefficients

CoefficientSource::CoefficientSource(const RunConfig& cfg, std::ostream& warnings)
    : cfg_(cfg), spec_(resolve_spec(cfg)), warnings_(warnings) {}

std::string CoefficientSource::cache_path() const {
  if (!cfg_.coeff_file.empty() || cfg_.cache_dir.empty()) return {};
  return (fs::path(cfg_.cache_dir) / "delta.txt").string();
}

CoefficientTable CoefficientSource::obtain(long n_max) {
  last_hit_ = false;
  if (!cfg_.coeff_file.empty()) {
    CoefficientTable table = load_coefficients(cfg_.coeff_file, spec_);
    if (n_max > 0 && static_cast<long>(table.n_max()) > n_max) return table.prefix(static_cast<std::size_t>(n_max));
    return table;
  }

  const std::string path = cache_path();
  if (!path.empty() && fs::exists(path)) {
    auto header = read_coefficient_header(path);
    if (header && header->matches(spec_) && header->n_max >= n_max) {
      CoefficientTable cached = load_coefficients(path, spec_);
      if (static_cast<long>(cached.n_max()) >= n_max) {
        last_hit_ = true;
        warnings_ << "cache hit: " << path << '\n';
        return cached.prefix(static_cast<std::size_t>(n_max));
      }
    }
    if (!header || !header->matches(spec_)) {
      warnings_ << "warning: cache file " << path << " does not match the requested form; regenerating\n";
    }
  }

  CoefficientTable table = delta_coefficients(n_max);
  if (!path.empty()) {
    try {
      fs::create_directories(cfg_.cache_dir);
      write_coefficients(path, table, spec_);
      warnings_ << "cache store: " << path << '\n';
    } catch (const std::exception& e) {
      warnings_ << "warning: could not write cache " << path << ": " << e.what() << '\n';
    }
  }
  return table;
}

CoefficientTable parse_fetched_coefficients(const std::string& body) {
  auto open = body.find('[');
  if (open == std::string::npos) {
    std::istringstream in(body);
    return parse_coefficients(in, "<download>");
  }
  auto close = body.find(']', open);
  if (close == std::string::npos) throw ParseError("download: unterminated coefficient list");
  json list;
  try {
    list = json::parse(body.substr(open, close - open + 1));
  } catch (const json::exception& e) {
    throw ParseError(std::string("download: coefficient list is not a JSON array: ") + e.what());
  }
  CoefficientSequence seq;
  for (const auto& v : list) {
    std::string text;
    if (v.is_number_integer()) {
      text = v.dump();
    } else if (v.is_string()) {
      text = v.get<std::string>();
    } else {
      throw ParseError("download: coefficient list holds a non-integer entry " + v.dump());
    }
    try {
      seq.emplace_back(mpz_class(text));
    } catch (const std::invalid_argument&) {
      throw ParseError("download: \"" + text + "\" is not an integer");
    }
  }
  if (!seq.empty() && seq.front().is_zero()) seq.erase(seq.begin());
  return CoefficientTable(std::move(seq), CoefficientTable::Source::file);
}

// ------------------------------------------------------------------ output

int decimal_digits(int bits) { return static_cast<int>(std::ceil(bits * std::log10(2.0))) + 1; }

void write_table(const Table& table, const std::string& format, std::ostream& out) {
  if (format == "json") {
    json rows = json::array();
    for (const auto& r : table.rows) rows.push_back(r);
    json doc{{"meta", table.meta}, {"columns", table.columns}, {"rows", rows}};
    out << doc.dump(2) << '\n';
    return;
  }
  if (format != "csv") throw UsageError("--format must be csv or json");
  for (auto& [key, value] : table.meta.items()) out << "# " << key << '=' << value.dump() << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
  out << '\n';
  for (const auto& r : table.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << r[i];
    out << '\n';
  }
}

// ------------------------------------------------------------------ entry

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const UsageError*>(&e) || dynamic_cast<const PreconditionError*>(&e) ||
      dynamic_cast<const RegimeError*>(&e) || dynamic_cast<const ResourceError*>(&e)) {
    return kUsage;
  }
  if (dynamic_cast<const IoError*>(&e) || dynamic_cast<const ParseError*>(&e) ||
      dynamic_cast<const NormalizationError*>(&e) || dynamic_cast<const fs::filesystem_error*>(&e)) {
    return kIo;
  }
  return kNumeric;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"High-precision L-function values, truncated Euler product approximations and their zeros",
               "lfapprox"};
  app.set_version_flag("--version", std::string(kVersion));
  app.set_config("--config", "", "File of key=value lines supplying any global option");
  app.require_subcommand(1);

  RunConfig cfg;
  cfg.cache_dir = default_cache_dir();
  app.add_option("--form", cfg.form, "Builtin form (delta)")->capture_default_str();
  app.add_option("--coeff-file", cfg.coeff_file, "Coefficient file (\"n a_n\" lines) instead of a builtin form");
  app.add_option("--weight", cfg.weight, "Weight k");
  app.add_option("--level", cfg.level, "Level C");
  app.add_option("--sign", cfg.sign, "Sign exponent P in (-1)^P")->check(CLI::IsMember({0, 1}));
  app.add_option("--bits", cfg.bits, "Working precision in bits")->check(CLI::Range(64, 1 << 16))->capture_default_str();
  app.add_option("--N", cfg.N, "Number of Euler factors")->check(CLI::Range(1, 10000))->capture_default_str();
  app.add_option("--target-error", cfg.target_error, "Absolute error target")->capture_default_str();
  app.add_option("--out", cfg.out, "Output path, - for stdout")->capture_default_str();
  app.add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("--cache-dir", cfg.cache_dir, "Coefficient cache directory")
      ->envname("LFAPPROX_CACHE_DIR")
      ->capture_default_str();

  CoeffsArgs coeffs_args;
  auto* coeffs = app.add_subcommand("coeffs", "Write a_1..a_nmax in the coefficient file format");
  coeffs->add_option("--nmax", coeffs_args.nmax, "Number of coefficients")->capture_default_str();

  ZfuncArgs zfunc_args;
  auto* zfunc = app.add_subcommand("zfunc", "Tabulate Z(t) and Z_N(t) on a grid");
  zfunc->add_option("--t-lo", zfunc_args.t_lo)->capture_default_str();
  zfunc->add_option("--t-hi", zfunc_args.t_hi)->capture_default_str();
  zfunc->add_option("--step", zfunc_args.step)->capture_default_str();
  zfunc->add_option("--modes", zfunc_args.modes, "Comma list of full and N values (default full,1..N)")
      ->delimiter(',');

  ZerosArgs zeros_args;
  auto* zeros = app.add_subcommand("zeros", "Locate critical-line zeros and compare modes");
  zeros->add_option("--t-lo", zeros_args.t_lo)->capture_default_str();
  zeros->add_option("--t-hi", zeros_args.t_hi)->capture_default_str();
  zeros->add_option("--step", zeros_args.step, "Scan step")->capture_default_str();
  zeros->add_option("--tol", zeros_args.tol, "Bracket width for refined zeros")->capture_default_str();
  zeros->add_option("--window", zeros_args.window, "Matching window between modes")->capture_default_str();
  zeros->add_option("--modes", zeros_args.modes, "Reference mode first (default full,N)")->delimiter(',');
  zeros->add_flag("--classify", zeros_args.classify, "Also determine each zero's order from derivatives");

  OracleArgs oracle_args;
  auto* oracle = app.add_subcommand("oracle-check", "Compare the regularized and series constructions of Lambda_N");
  oracle->add_option("--samples", oracle_args.samples)->capture_default_str();
  oracle->add_option("--seed", oracle_args.seed)->capture_default_str();
  oracle->add_option("--truncation", oracle_args.truncation, "Pole height cutoff, or auto")->capture_default_str();
  oracle->add_option("--budget-scale", oracle_args.budget_scale, "Multiplier on the error budget")
      ->capture_default_str();

  EquidistArgs equidist_args;
  auto* equidist = app.add_subcommand("equidist", "Fractional parts of n log q / log p");
  equidist->add_option("--p", equidist_args.p)->capture_default_str();
  equidist->add_option("--q", equidist_args.q)->capture_default_str();
  equidist->add_option("--M", equidist_args.M)->capture_default_str();

  FetchArgs fetch_args;
  auto* fetch = app.add_subcommand("fetch", "Download a coefficient list (\"n a_n\" lines or a JSON array)");
  fetch->add_option("--url", fetch_args.url)->required();

  for (auto* sub : {coeffs, zfunc, zeros, oracle, equidist, fetch}) sub->fallthrough();

  std::vector<const char*> argv{"lfapprox"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*coeffs) return cmd_coeffs(cfg, coeffs_args, out, err);
    if (*zfunc) return cmd_zfunc(cfg, zfunc_args, out, err);
    if (*zeros) return cmd_zeros(cfg, zeros_args, out, err);
    if (*oracle) return cmd_oracle_check(cfg, oracle_args, out, err);
    if (*equidist) return cmd_equidist(cfg, equidist_args, out);
    if (*fetch) return cmd_fetch(cfg, fetch_args, out, err);
  } catch (const std::exception& e) {
    int code = exit_code_for(e);
    err << "lfapprox: " << (code == kUsage ? "usage error: " : "") << e.what() << '\n';
    return code;
  }
  return kUsage;
}

}  // namespace lfapprox::cli
