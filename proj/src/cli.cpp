#include "hp/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "hp/contour.hpp"
#include "hp/l1method.hpp"
#include "hp/numen.hpp"
#include "hp/padic_prob.hpp"
#include "hp/parallel.hpp"
#include "hp/quadrature.hpp"
#include "hp/summatory.hpp"
#include "hp/verify.hpp"

namespace hp::cli {

using nlohmann::json;
using T = Column::Type;

namespace {

const std::vector<std::string> kCommands = {
    "table1", "sweep",  "orbit",   "summatory", "blancmange", "takagi", "dirichlet-eval",
    "perron", "residues", "shifted", "quadcheck", "vdp",      "fourier", "fp",
    "phi",    "lipschitz", "bayes", "tau",       "l1",         "verify-all"};

std::string num_str(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

Rational parse_rational(const std::string& s, const char* what) {
  Rational q;
  if (q.set_str(s, 10) != 0 || q.get_den() == 0)
    throw DomainError(std::string(what) + ": not a rational number: '" + s + "'");
  q.canonicalize();
  return q;
}

Integer parse_integer(const std::string& s, const char* what) {
  Integer z;
  if (z.set_str(s, 10) != 0) throw DomainError(std::string(what) + ": not an integer: '" + s + "'");
  return z;
}

// "0110" lists j_1 j_2 ... from the left
BitWord parse_word(const std::string& s) {
  std::vector<std::uint8_t> b;
  for (char c : s) {
    if (c != '0' && c != '1') throw DomainError("--j: word must be a string of 0 and 1, got '" + s + "'");
    b.push_back(std::uint8_t(c - '0'));
  }
  if (b.empty()) throw DomainError("--j: word must be non-empty");
  return BitWord(std::move(b));
}

Method parse_method(const std::string& m) {
  if (m == "auto") return Method::automatic;
  if (m == "direct") return Method::direct;
  if (m == "dyadic") return Method::dyadic;
  if (m == "functional") return Method::functional;
  throw DomainError("--method: expected auto, direct, dyadic or functional for dirichlet-eval");
}

struct Builder {
  Report r;
  void cols(std::initializer_list<Column> c) { r.columns.insert(r.columns.end(), c); }
  void row(std::vector<Cell> v) { r.rows.push_back(std::move(v)); }
  void check(std::string name, bool pass, std::string detail = {}) {
    r.checks.push_back({std::move(name), pass, std::move(detail)});
  }
};

std::int64_t i64(std::uint64_t v) { return static_cast<std::int64_t>(v); }

// ---- commands --------------------------------------------------------------

void cmd_table1(const RunConfig& c, Builder& b) {
  b.cols({{"t", T::integer}, {"#1", T::integer}, {"lambda", T::integer}, {"chi_p", T::string},
          {"chi_p_B", T::string}, {"r_p", T::string}});
  for (auto p : c.p) b.r.columns.push_back({"chi_" + std::to_string(p) + "_B", T::string});
  std::size_t bad = 0;
  for (std::uint64_t t = 0; t <= c.t_max; ++t) {
    const Natural tn(static_cast<unsigned long>(t));
    const ChiSymbolic s = chi_symbolic(tn);
    std::string rp = s.ones == 0 ? "1" : s.ones == 1 ? "p" : "p^" + std::to_string(s.ones);
    if (s.lambda > 0) rp += "/" + pow2(s.lambda).get_str();
    std::vector<Cell> row = {i64(t), i64(s.ones), i64(s.lambda), s.chi_str(), s.chi_B_str(), rp};
    for (auto p : c.p) {
      const Rational v = t ? chi_of_B(tn, p) : Rational(0);
      if (t && v != s.chi_B_at(p)) ++bad;
      row.push_back(to_string(v));
    }
    b.row(std::move(row));
  }
  b.check("symbolic chi_p_B column agrees with chi_of_B", bad == 0, std::to_string(bad) + " mismatches");
}

void cmd_sweep(const RunConfig& c, Builder& b) {
  b.cols({{"p", T::integer}, {"t", T::string}, {"omega", T::string}, {"word", T::string},
          {"verified", T::boolean}});
  std::size_t bad = 0;
  for (auto p : c.p) {
    for (const auto& rec : find_periodic_points(p, Natural(static_cast<unsigned long>(c.t_max)), c.threads)) {
      bad += !rec.verified_by_orbit;
      b.row({i64(p), rec.witness_t.get_str(), rec.omega.get_str(), rec.word.str(), rec.verified_by_orbit});
    }
  }
  b.check("every witness verified by orbit iteration", bad == 0, std::to_string(bad) + " unverified");
}

void cmd_orbit(const RunConfig& c, Builder& b) {
  const Integer x = parse_integer(c.x, "--x");
  const std::uint64_t p = c.p.front();
  const OrbitReport o = hp_orbit(x, p, c.steps);
  b.cols({{"k", T::integer}, {"x_k", T::string}, {"parity", T::integer}, {"in_cycle", T::boolean}});
  for (std::size_t k = 0; k < o.iterates.size(); ++k)
    b.row({i64(k), o.iterates[k].get_str(), k < o.parity.size() ? std::int64_t(o.parity[k]) : std::int64_t(-1),
           o.cycle && k >= o.cycle_start});
}

void cmd_summatory(const RunConfig& c, Builder& b) {
  const std::uint64_t p = c.p.front(), N = c.n;
  if (N > 20) throw DomainError("summatory: --n must be <= 20 (sums up to 2^n - 1)");
  b.cols({{"N", T::integer}, {"sum_ones", T::string}, {"ones_closed", T::string}, {"sum_r_p", T::string},
          {"r_p_closed", T::string}, {"sum_chi_p", T::string}, {"chi_p_closed", T::string},
          {"chi_p_printed", T::string}});
  const std::uint64_t top = (std::uint64_t(1) << N) - 1;
  const auto ones = summatory(SumKind::ones, p, top), rs = summatory(SumKind::r_p, p, top),
             cs = summatory(SumKind::chi_p, p, top);
  std::size_t bad = 0;
  for (std::uint64_t k = 1; k <= N; ++k) {
    const std::size_t i = (std::size_t(1) << k) - 2;
    const ClosedSums cl = closed_sums(p, k);
    if (ones.ys[i] != Rational(cl.ones_closed) || rs.ys[i] != cl.r_closed || cs.ys[i] != cl.chi_closed) ++bad;
    b.row({i64(k), to_string(ones.ys[i]), cl.ones_closed.get_str(), to_string(rs.ys[i]), to_string(cl.r_closed),
           to_string(cs.ys[i]), to_string(cl.chi_closed), to_string(cl.chi_printed)});
  }
  b.check("brute-force sums equal the closed forms", bad == 0, std::to_string(bad) + " mismatches");
}

void cmd_blancmange(const RunConfig& c, Builder& b) {
  const auto bl = blancmange_tables(c.p.front(), c.t_max);
  b.cols({{"x", T::integer}, {"Bl", T::number}, {"Bl_p", T::number}, {"Bl_tilde_p", T::number}});
  for (std::size_t i = 0; i < bl.bl.xs.size(); ++i)
    b.row({std::int64_t(bl.bl.xs[i].get_si()), bl.bl.yf[i], bl.bl_p.yf[i], bl.bl_tilde.yf[i]});
}

void cmd_takagi(const RunConfig& c, Builder& b) {
  const Rational w = parse_rational(c.w, "--w"), x = parse_rational(c.x, "--x");
  const TakagiValue v = takagi(w, x, c.tol);
  b.cols({{"w", T::string}, {"x", T::string}, {"value", T::number}, {"exact", T::string}, {"terms", T::integer}});
  b.row({to_string(w), to_string(x), v.value, v.exact ? to_string(*v.exact) : std::string(), i64(v.terms)});
}

void cmd_dirichlet(const RunConfig& c, Builder& b) {
  const cplx s(c.s_re, c.s_im);
  const Method m = parse_method(c.method);
  b.cols({{"function", T::string}, {"p", T::integer}, {"re", T::number}, {"im", T::number}, {"error", T::number}});
  for (auto p : c.p) {
    auto add = [&](const char* name, const Estimate& e) {
      b.row({std::string(name), i64(p), e.value.real(), e.value.imag(), e.error});
    };
    add("zeta", riemann_zeta(s));
    add("zeta_p", zeta_p(s, p, c.eval, m));
    add("xi_p", xi_p(s, p, c.eval, m));
    add("F_p", aux_F(s, p, c.eval, m));
    add("G_p", aux_G(s, p, c.eval, m));
  }
}

void cmd_perron(const RunConfig& c, Builder& b) {
  const LineResult lr = perron_integral(c.n, c.omega, c.eval, Kernel::riesz, c.b);
  const double want = to_double(c_omega_coefficient(c.n, Rational(c.omega), 3));
  b.cols({{"n", T::integer}, {"omega", T::number}, {"b", T::number}, {"value", T::number}, {"expected", T::number},
          {"quad_error", T::number}, {"tail_error", T::number}});
  b.row({i64(c.n), c.omega, c.b, lr.value, want, lr.quad_error, lr.tail_error});
  b.check("line integral within 5e-3 of 3/2 - r_3(n) - chi_3(n)/omega", std::abs(lr.value - want) < 5e-3,
          "diff " + num_str(std::abs(lr.value - want)));
}

void cmd_residues(const RunConfig& c, Builder& b) {
  b.cols({{"formula", T::string}, {"n", T::integer}, {"omega", T::number}, {"re", T::number}, {"im", T::number},
          {"mode_tail", T::number}});
  auto add = [&](const char* name, const ResidueResult& r) {
    b.row({std::string(name), i64(c.n), c.omega, r.value.real(), r.value.imag(), r.mode_tail});
  };
  add("printed", residue_R3(c.omega, c.n, c.eval));
  add("corrected", residue_R3_corrected(c.omega, c.n, c.eval));
  add("circles", residue_R3_numeric(c.omega, c.n, c.eval, c.k_max));
}

void cmd_shifted(const RunConfig& c, Builder& b) {
  const LineResult lr = shifted_integral(c.n, c.omega, c.eval);
  b.cols({{"n", T::integer}, {"omega", T::number}, {"value", T::number}, {"quad_error", T::number},
          {"tail_error", T::number}, {"over_n_3_4", T::number}});
  b.row({i64(c.n), c.omega, lr.value, lr.quad_error, lr.tail_error,
         std::abs(lr.value) / std::pow(double(c.n), 0.75)});
}

void cmd_quadcheck(const RunConfig& c, Builder& b) {
  const double bb = c.b, T_ = c.eval.quad_T;
  double err = 0;
  const double v = gk15_adaptive(
      [&](double t) { return 1 / (std::hypot(bb, t) * ((bb + 1) * (bb + 1) + t * t)); }, 0, T_, c.eval.quad_step,
      c.eval.quad_tol, &err);
  const double total = 2 * (v + 1 / (2 * T_ * T_)), ref = quadrature_reference(bb);
  b.cols({{"b", T::number}, {"numeric", T::number}, {"closed_form", T::number}, {"diff", T::number},
          {"quad_error", T::number}});
  b.row({bb, total, ref, std::abs(total - ref), err});
  b.check("quadrature within 1e-6 of the closed form", std::abs(total - ref) < 1e-6);
}

void cmd_vdp(const RunConfig& c, Builder& b) {
  b.cols({{"t", T::integer}, {"p", T::integer}, {"c_t", T::string}});
  for (auto p : c.p)
    for (std::uint64_t t = 0; t <= c.t_max; ++t)
      b.row({i64(t), i64(p), to_string(vdp_coeff(Natural(static_cast<unsigned long>(t)), p))});
}

void cmd_fourier(const RunConfig& c, Builder& b) {
  const std::uint64_t p = c.p.front(), N = c.n;
  if (N > 12) throw DomainError("fourier: --n must be <= 12");
  const auto dft = chi_N_hat_all(N, p);
  b.cols({{"k", T::integer}, {"re", T::number}, {"im", T::number}, {"dft_diff", T::number}});
  double worst = 0;
  for (std::uint64_t k = 0; k < dft.size(); ++k) {
    const cplx v = chi_N_hat(Natural(static_cast<unsigned long>(k)), N, p);
    worst = std::max(worst, std::abs(v - dft[k]));
    b.row({i64(k), v.real(), v.imag(), std::abs(v - dft[k])});
  }
  b.check("closed form matches the defining sum", worst < 1e-9, "max diff " + num_str(worst));
}

void cmd_fp(const RunConfig& c, Builder& b) {
  const std::uint64_t p = c.p.front(), n = c.n;
  const ProbMass f = f_p_distribution(n, p);
  b.cols({{"k", T::integer}, {"f_p", T::string}, {"value", T::number}});
  const bool oracle = c.method == "enumerate" || c.method == "montecarlo";
  if (c.method != "auto" && !oracle) throw DomainError("--method: expected enumerate or montecarlo for fp");
  if (oracle) b.cols({{"oracle_lo", T::number}, {"oracle_hi", T::number}});
  std::vector<std::uint64_t> counts;
  EnumeratedMass en;
  if (c.method == "enumerate") en = f_p_enumerate(n, p, c.depth);
  if (c.method == "montecarlo") counts = f_p_sample_counts(n, p, MonteCarloMethod{c.samples, c.seed});
  std::size_t outside = 0;
  for (std::size_t k = 0; k < f.masses.size(); ++k) {
    std::vector<Cell> row = {i64(k), to_string(f[k]), to_double(f[k])};
    if (oracle) {
      double lo, hi;
      if (c.method == "enumerate") {
        lo = to_double(en.lower[k]);
        hi = to_double(en.lower[k] + en.tail);
        outside += f[k] < en.lower[k] || f[k] > en.lower[k] + en.tail;
      } else {
        const double q = double(counts[k]) / double(c.samples), sd = std::sqrt(q * (1 - q) / double(c.samples));
        lo = q - 3 * sd;
        hi = q + 3 * sd;
        outside += to_double(f[k]) < lo || to_double(f[k]) > hi;
      }
      row.push_back(lo);
      row.push_back(hi);
    }
    b.row(std::move(row));
  }
  b.check("masses sum to 1", f.total() == 1, to_string(f.total()));
  if (c.method == "enumerate") b.check("exact masses inside the enumeration interval", outside == 0);
  // 3 sigma is a screen, not a proof; a rare miss is expected at large p^n
  if (c.method == "montecarlo")
    b.check("exact masses within 3 sigma of the sample frequencies",
            outside <= f.masses.size() / 100, std::to_string(outside) + " outside");
}

void cmd_phi(const RunConfig& c, Builder& b) {
  const std::uint64_t p = c.p.front(), n = c.n;
  if (n > 8) throw DomainError("phi: --n must be <= 8");
  const std::uint64_t M = pow_ui(p, n).get_ui();
  b.cols({{"a", T::integer}, {"t", T::string}, {"re", T::number}, {"im", T::number}, {"abs", T::number}});
  for (std::uint64_t a = 0; a < M; ++a) {
    const auto t = PadicCharacter::make(Integer(static_cast<unsigned long>(a)), n, p);
    const cplx v = phi_p(t);
    b.row({i64(a), to_string(t.value()), v.real(), v.imag(), std::abs(v)});
  }
}

void cmd_lipschitz(const RunConfig& c, Builder& b) {
  const std::uint64_t p = c.p.front();
  const Rational s = parse_rational(c.s, "--s"), t = parse_rational(c.t, "--t");
  const auto lb = lipschitz_bound(TwoAdicSpec(s), TwoAdicSpec(t), p, c.K);
  b.cols({{"s", T::string}, {"t", T::string}, {"p", T::integer}, {"bound_exponent", T::string},
          {"bound", T::number}, {"actual_exponent", T::string}});
  std::string actual = "n/a";
  const bool nat = s.get_den() == 1 && t.get_den() == 1 && s >= 0 && t >= 0;
  std::optional<std::uint64_t> e;
  if (nat) {
    e = chi_distance_exponent(s.get_num(), t.get_num(), p);
    actual = e ? std::to_string(*e) : "inf";
  }
  b.row({to_string(s), to_string(t), i64(p), lb.exponent ? std::to_string(*lb.exponent) : "inf", lb.bound(), actual});
  if (nat && e) b.check("bound dominates the distance", lb.exponent && *lb.exponent <= *e);
}

void cmd_bayes(const RunConfig& c, Builder& b) {
  const std::uint64_t p = c.p.front();
  const BayesResult r = bayes_check(parse_integer(c.x, "--x"), parse_word(c.j), c.n, p);
  b.cols({{"x", T::string}, {"j", T::string}, {"n", T::integer}, {"bracket", T::integer}, {"f", T::string},
          {"bound", T::string}, {"bound_holds", T::boolean}, {"length_ok", T::boolean}});
  b.row({c.x, c.j, i64(c.n), std::int64_t(r.bracket), to_string(r.f), to_string(r.bound), r.bound_holds, r.length_ok});
  b.check("bracket <= 2^{n|j|} f_p", r.bound_holds);
  b.check("bracket = 1 forces n|j| >= -log2 f_p", r.length_ok);
}

void cmd_tau(const RunConfig& c, Builder& b) {
  const Rational z = parse_rational(c.z, "--z");
  const TwoAdicSpec tz = tau_kappa(TwoAdicSpec(z), c.kappa);
  b.cols({{"z", T::string}, {"kappa", T::integer}, {"tau", T::string}, {"prefix", T::string},
          {"period", T::string}, {"p", T::integer}, {"chi_prime", T::string}});
  for (auto p : c.p) {
    std::string v;
    try {
      v = to_string(chi_prime_real(tz, p));
    } catch (const DomainError&) {
      v = "diverges";
    }
    b.row({to_string(z), i64(c.kappa), to_string(tz.value()), tz.prefix().str(), tz.period().str(), i64(p), v});
  }
}

void cmd_l1(const RunConfig& c, Builder& b) {
  const KappaParams k{c.p.front(), c.kappa};
  const L1Truncation tr = l1_norm_truncated(k, c.M);
  const Rational bound = l1_bound(k);
  b.cols({{"m", T::integer}, {"shell", T::number}, {"cumulative", T::number}});
  double acc = 0;
  for (std::size_t m = 0; m < tr.shells.size(); ++m) {
    acc += tr.shells[m];
    b.row({i64(m), tr.shells[m], acc});
  }
  b.check("truncated L1 norm <= bound " + to_string(bound), tr.value <= to_double(bound),
          num_str(tr.value) + " + tail " + num_str(tr.tail));
}

void cmd_verify_all(const RunConfig& c, Builder& b) {
  VerifyOptions opt;
  opt.eval = c.eval;
  opt.seed = c.seed;
  opt.contour = !c.quick;
  b.cols({{"criterion", T::integer}, {"title", T::string}, {"check", T::string}, {"status", T::string},
          {"detail", T::string}});
  for (int id = 1; id <= kCriteria; ++id) {
    const CriterionReport rep = run_criterion(id, opt);
    if (rep.skipped) {
      b.row({std::int64_t(id), rep.title, std::string(), std::string("skip"), std::string("--quick")});
      continue;
    }
    for (const auto& l : rep.lines)
      b.row({std::int64_t(id), rep.title, l.name, std::string(l.info ? "info" : l.pass ? "ok" : "FAIL"), l.detail});
    b.check("criterion " + std::to_string(id) + " " + rep.title, rep.pass());
  }
}

using Handler = void (*)(const RunConfig&, Builder&);
const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> h = {
      {"table1", cmd_table1},       {"sweep", cmd_sweep},         {"orbit", cmd_orbit},
      {"summatory", cmd_summatory}, {"blancmange", cmd_blancmange}, {"takagi", cmd_takagi},
      {"dirichlet-eval", cmd_dirichlet}, {"perron", cmd_perron}, {"residues", cmd_residues},
      {"shifted", cmd_shifted},     {"quadcheck", cmd_quadcheck}, {"vdp", cmd_vdp},
      {"fourier", cmd_fourier},     {"fp", cmd_fp},               {"phi", cmd_phi},
      {"lipschitz", cmd_lipschitz}, {"bayes", cmd_bayes},         {"tau", cmd_tau},
      {"l1", cmd_l1},               {"verify-all", cmd_verify_all}};
  return h;
}

const char* type_name(T t) {
  switch (t) {
    case T::string: return "string";
    case T::integer: return "integer";
    case T::number: return "number";
    case T::boolean: return "boolean";
  }
  return "?";
}

std::string cell_text(const Cell& c) {
  if (auto s = std::get_if<std::string>(&c)) return *s;
  if (auto i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  if (auto d = std::get_if<double>(&c)) return num_str(*d);
  return std::get<bool>(c) ? "true" : "false";
}

json cell_json(const Cell& c) {
  if (auto s = std::get_if<std::string>(&c)) return *s;
  if (auto i = std::get_if<std::int64_t>(&c)) return *i;
  if (auto d = std::get_if<double>(&c)) return *d;
  return std::get<bool>(c);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

void RunConfig::validate() const {
  if (!handlers().count(command)) throw DomainError("unknown command '" + command + "'");
  if (p.empty()) throw DomainError("--p: at least one prime is required");
  for (auto q : p) require_odd_prime(q, "--p");
  if (format != "csv" && format != "json" && format != "pretty")
    throw DomainError("--format: expected csv, json or pretty");
  if (command == "perron" || command == "shifted" || command == "residues") {
    if (n < 1) throw DomainError(command + ": --n must be >= 1");
    if (omega == 0) throw DomainError(command + ": --omega must be nonzero");
  }
  if ((command == "perron" || command == "quadcheck") && !(b > 1))
    throw DomainError(command + ": --b must exceed 1 (the line must lie in the half-plane of convergence)");
  if ((command == "fp" || command == "phi" || command == "fourier" || command == "summatory") && n < 1)
    throw DomainError(command + ": --n must be >= 1");
  if (command == "bayes" && n < 1) throw DomainError("bayes: --n must be >= 1");
  if (command == "sweep" && t_max > (std::uint64_t(1) << 26)) throw DomainError("sweep: --t-max must be <= 2^26");
  if (command == "table1" && t_max > 4096) throw DomainError("table1: --t-max must be <= 4096");
  if (command == "vdp" && t_max > 1u << 16) throw DomainError("vdp: --t-max must be <= 65536");
  if (command == "blancmange" && (t_max < 1 || t_max > 1u << 20))
    throw DomainError("blancmange: --t-max must be in [1, 2^20]");
  if (command == "orbit" && steps > 10000000) throw DomainError("orbit: --steps must be <= 10^7");
  if (command == "fp" && method == "montecarlo" && samples < 1) throw DomainError("fp: --samples must be >= 1");
  if (tol <= 0) throw DomainError("--tol must be positive");
  eval.validate();
}

RunConfig config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw DomainError(std::string("--config: ") + e.what());
  }
  if (!j.is_object()) throw DomainError("--config: top level must be an object");
  RunConfig c;
  try {
    auto get = [&](const char* key, auto& dst) {
      if (j.contains(key)) j.at(key).get_to(dst);
    };
    get("command", c.command);
    if (j.contains("p")) {
      if (j["p"].is_array()) j["p"].get_to(c.p);
      else c.p = {j["p"].get<std::uint64_t>()};
    }
    get("t_max", c.t_max);
    get("n", c.n);
    get("steps", c.steps);
    get("kappa", c.kappa);
    get("M", c.M);
    get("K", c.K);
    get("depth", c.depth);
    get("samples", c.samples);
    get("seed", c.seed);
    get("k_max", c.k_max);
    get("threads", c.threads);
    get("omega", c.omega);
    get("b", c.b);
    get("s_re", c.s_re);
    get("s_im", c.s_im);
    get("tol", c.tol);
    get("method", c.method);
    get("x", c.x);
    get("w", c.w);
    get("z", c.z);
    get("s", c.s);
    get("t", c.t);
    get("j", c.j);
    get("quick", c.quick);
    get("format", c.format);
    get("output", c.output);
    if (j.contains("eval")) {
      const json& e = j["eval"];
      auto eg = [&](const char* key, auto& dst) {
        if (e.contains(key)) e.at(key).get_to(dst);
      };
      eg("series_terms", c.eval.series_terms);
      eg("binom_terms", c.eval.binom_terms);
      eg("recursion_depth", c.eval.recursion_depth);
      eg("quad_T", c.eval.quad_T);
      eg("quad_step", c.eval.quad_step);
      eg("k_modes", c.eval.k_modes);
      eg("quad_tol", c.eval.quad_tol);
    }
  } catch (const json::exception& e) {
    throw DomainError(std::string("--config: ") + e.what());
  }
  return c;
}

std::string config_to_json(const RunConfig& c) {
  json j = {{"command", c.command}, {"p", c.p},           {"t_max", c.t_max},   {"n", c.n},
            {"steps", c.steps},     {"kappa", c.kappa},   {"M", c.M},           {"K", c.K},
            {"depth", c.depth},     {"samples", c.samples}, {"seed", c.seed},   {"k_max", c.k_max},
            {"omega", c.omega},     {"b", c.b},           {"s_re", c.s_re},     {"s_im", c.s_im},
            {"tol", c.tol},         {"method", c.method}, {"x", c.x},           {"w", c.w},
            {"z", c.z},             {"s", c.s},           {"t", c.t},           {"j", c.j},
            {"quick", c.quick}};
  j["eval"] = {{"series_terms", c.eval.series_terms}, {"binom_terms", c.eval.binom_terms},
               {"recursion_depth", c.eval.recursion_depth}, {"quad_T", c.eval.quad_T},
               {"quad_step", c.eval.quad_step}, {"k_modes", c.eval.k_modes}, {"quad_tol", c.eval.quad_tol}};
  return j.dump();
}

bool Report::ok() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

void Report::validate() const {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != columns.size())
      throw std::logic_error(command + ": row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                             " cells for " + std::to_string(columns.size()) + " columns");
    for (std::size_t k = 0; k < columns.size(); ++k) {
      const auto idx = rows[i][k].index();
      const T want = columns[k].type;
      const bool ok = (want == T::string && idx == 0) || (want == T::integer && idx == 1) ||
                      (want == T::number && idx == 2) || (want == T::boolean && idx == 3);
      if (!ok)
        throw std::logic_error(command + ": column '" + columns[k].name + "' expects " + type_name(want) +
                               " in row " + std::to_string(i));
    }
  }
}

Report execute(const RunConfig& c) {
  c.validate();
  if (c.threads) set_threads(c.threads);
  Builder b;
  b.r.command = c.command;
  handlers().at(c.command)(c, b);
  b.r.validate();
  return std::move(b.r);
}

std::string emit_csv(const Report& r) {
  r.validate();
  std::string out;
  for (std::size_t k = 0; k < r.columns.size(); ++k) out += (k ? "," : "") + csv_field(r.columns[k].name);
  out += "\r\n";
  for (const auto& row : r.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) out += (k ? "," : "") + csv_field(cell_text(row[k]));
    out += "\r\n";
  }
  return out;
}

std::string emit_json(const Report& r, const RunConfig& c) {
  r.validate();
  json j;
  j["schema"] = "hpmap/" + r.command + "/v" + std::to_string(r.schema_version);
  j["schema_version"] = r.schema_version;
  j["command"] = r.command;
  j["config"] = json::parse(config_to_json(c));
  j["columns"] = json::array();
  for (const auto& col : r.columns) j["columns"].push_back({{"name", col.name}, {"type", type_name(col.type)}});
  j["rows"] = json::array();
  for (const auto& row : r.rows) {
    json jr = json::array();
    for (const auto& cell : row) jr.push_back(cell_json(cell));
    j["rows"].push_back(std::move(jr));
  }
  j["checks"] = json::array();
  for (const auto& ch : r.checks) j["checks"].push_back({{"name", ch.name}, {"pass", ch.pass}, {"detail", ch.detail}});
  j["ok"] = r.ok();
  return j.dump(2) + "\n";
}

std::string emit_pretty(const Report& r) {
  r.validate();
  std::vector<std::size_t> w(r.columns.size());
  for (std::size_t k = 0; k < r.columns.size(); ++k) w[k] = r.columns[k].name.size();
  std::vector<std::vector<std::string>> text;
  for (const auto& row : r.rows) {
    text.emplace_back();
    for (std::size_t k = 0; k < row.size(); ++k) {
      text.back().push_back(cell_text(row[k]));
      w[k] = std::max(w[k], text.back().back().size());
    }
  }
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t k = 0; k < cells.size(); ++k) {
      const bool right = r.columns[k].type == T::integer || r.columns[k].type == T::number;
      const std::string pad(w[k] - cells[k].size(), ' ');
      os << (k ? "  " : "") << (right ? pad + cells[k] : cells[k] + (k + 1 < cells.size() ? pad : ""));
    }
    os << "\n";
  };
  std::vector<std::string> head;
  for (const auto& c : r.columns) head.push_back(c.name);
  line(head);
  for (const auto& t : text) line(t);
  for (const auto& ch : r.checks)
    os << (ch.pass ? "[ok]   " : "[FAIL] ") << ch.name << (ch.detail.empty() ? "" : ": " + ch.detail) << "\n";
  return os.str();
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"hpmap: numen, periodic points and Dirichlet series of the maps H_p"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON RunConfig; flags given on the command line override it");
  app.add_option("--p", c.p, "odd prime, repeatable (default 3)");
  app.add_option("--t-max", c.t_max, "largest t for table1, sweep, vdp, blancmange");
  app.add_option("--n", c.n, "coefficient index (perron, shifted, residues), level (fp, phi, fourier, summatory)");
  app.add_option("--steps", c.steps, "orbit length cap");
  app.add_option("--kappa", c.kappa, "spreading factor for tau and l1");
  app.add_option("--M", c.M, "L1 truncation level, shells |t|_2 <= 2^M");
  app.add_option("--K", c.K, "one-positions examined by lipschitz");
  app.add_option("--depth", c.depth, "enumeration depth for fp --method enumerate");
  app.add_option("--samples", c.samples, "Monte Carlo sample count");
  app.add_option("--seed", c.seed, "Monte Carlo seed");
  app.add_option("--k-max", c.k_max, "circle-integral modes for residues");
  app.add_option("--threads", c.threads, "worker threads, 0 = hardware");
  app.add_option("--omega", c.omega, "omega for perron, shifted, residues");
  app.add_option("--b", c.b, "abscissa of the Perron line");
  app.add_option("--s-re", c.s_re, "Re s for dirichlet-eval");
  app.add_option("--s-im", c.s_im, "Im s for dirichlet-eval");
  app.add_option("--tol", c.tol, "takagi tolerance");
  app.add_option("--method", c.method, "dirichlet-eval: auto|direct|dyadic|functional; fp: enumerate|montecarlo");
  app.add_option("--x", c.x, "orbit start, takagi abscissa, bayes target");
  app.add_option("--w", c.w, "takagi weight");
  app.add_option("--z", c.z, "2-adic rational for tau");
  app.add_option("--s", c.s, "first argument of lipschitz");
  app.add_option("--t", c.t, "second argument of lipschitz");
  app.add_option("--j", c.j, "bit word j_1 j_2 ... for bayes, e.g. 01");
  app.add_option("--quad-T", c.eval.quad_T, "half-length of truncated lines");
  app.add_option("--k-modes", c.eval.k_modes, "modes kept in residue sums");
  app.add_flag("--quick", c.quick, "verify-all: skip the contour criteria 5 and 6");
  app.add_option("--format", c.format, "csv, json or pretty");
  app.add_option("--output,-o", c.output, "write the artifact here instead of stdout");
  app.fallthrough();
  for (const auto& name : kCommands) app.add_subcommand(name)->fallthrough();

  // --config is applied first so that explicit flags override it
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--config") {
      std::ifstream f(argv[i + 1]);
      if (!f) {
        err << "error: cannot read config file '" << argv[i + 1] << "'\n";
        return kUsage;
      }
      std::stringstream ss;
      ss << f.rdbuf();
      try {
        c = config_from_json(ss.str());
      } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
      }
    }
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  for (auto* sub : app.get_subcommands()) c.command = sub->get_name();

  Report rep;
  try {
    rep = execute(c);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  const std::string text =
      c.format == "csv" ? emit_csv(rep) : c.format == "json" ? emit_json(rep, c) : emit_pretty(rep);
  if (c.output.empty()) {
    out << text;
  } else {
    std::ofstream f(c.output, std::ios::binary);
    if (!(f << text)) {
      err << "error: cannot write '" << c.output << "'\n";
      return kUsage;
    }
  }
  if (c.format == "csv")
    for (const auto& ch : rep.checks)
      if (!ch.pass) err << "check failed: " << ch.name << (ch.detail.empty() ? "" : ": " + ch.detail) << "\n";
  return rep.ok() ? kOk : kCheckFailed;
}

}  // namespace hp::cli
