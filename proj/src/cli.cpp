#include "serrelab/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include "serrelab/experiments.hpp"
#include "serrelab/families.hpp"
#include "serrelab/frobenius.hpp"
#include "serrelab/serre.hpp"

#ifndef SERRELAB_VERSION
#define SERRELAB_VERSION "0.0.0"
#endif

namespace serrelab {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

namespace {

using ordered_json = nlohmann::ordered_json;

// Thrown for bad user input that CLI11 cannot catch on its own.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A result table with a fixed column order. Cells keep their exact text;
// the kind only decides how JSON renders them.
class Table {
 public:
  enum class Kind { Integer, Real, Text, Boolean };
  struct Cell {
    std::string text;
    Kind kind;
  };

  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add_row(std::vector<Cell> row) {
    if (row.size() != columns_.size()) throw std::logic_error("row width does not match the header");
    rows_.push_back(std::move(row));
  }

  std::string csv() const {
    std::string out;
    append_csv_line(out, columns_);
    for (const auto& row : rows_) {
      std::vector<std::string> texts;
      for (const auto& c : row) texts.push_back(c.text);
      append_csv_line(out, texts);
    }
    return out;
  }

  std::string json() const {
    ordered_json arr = ordered_json::array();
    for (const auto& row : rows_) {
      ordered_json obj = ordered_json::object();
      for (std::size_t i = 0; i < columns_.size(); ++i) obj[columns_[i]] = to_json(row[i]);
      arr.push_back(std::move(obj));
    }
    return arr.dump(2) + "\n";
  }

 private:
  static void append_csv_line(std::string& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out += ',';
      const std::string& f = fields[i];
      if (f.find_first_of(",\"\n") == std::string::npos) {
        out += f;
      } else {
        out += '"';
        for (char ch : f) {
          if (ch == '"') out += '"';
          out += ch;
        }
        out += '"';
      }
    }
    out += '\n';
  }

  static ordered_json to_json(const Cell& c) {
    switch (c.kind) {
      case Kind::Boolean: return c.text == "true";
      case Kind::Real: return std::strtod(c.text.c_str(), nullptr);
      case Kind::Integer: {
        // Values beyond 64 bits stay strings so no digits are lost.
        const BigInt v(c.text);
        if (v.fits_slong_p()) return static_cast<std::int64_t>(v.get_si());
        return c.text;
      }
      case Kind::Text: return c.text;
    }
    return c.text;
  }

  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

Table::Cell num(const BigInt& v) { return {v.get_str(), Table::Kind::Integer}; }
template <typename T>
  requires std::is_integral_v<T>
Table::Cell num(T v) {
  return {std::to_string(v), Table::Kind::Integer};
}
Table::Cell text(std::string v) { return {std::move(v), Table::Kind::Text}; }
Table::Cell flag(bool v) { return {v ? "true" : "false", Table::Kind::Boolean}; }
Table::Cell real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9e", v);
  return {buf, Table::Kind::Real};
}
Table::Cell rat(const Rational& q) { return text(q.get_str()); }

// Flat "key = value" lines; '#' starts a comment.
std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file " + path);
  std::map<std::string, std::string> out;
  std::string line;
  int line_no = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string();
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path + ":" + std::to_string(line_no) + ": expected key = value");
    }
    std::string key = trim(line.substr(0, eq));
    while (!key.empty() && key.front() == '-') key.erase(0, 1);
    if (key.empty()) throw UsageError(path + ":" + std::to_string(line_no) + ": empty key");
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

BigInt parse_integer(const std::string& name, const std::string& value) {
  BigInt v;
  if (value.empty() || v.set_str(value, 10) != 0) throw UsageError("--" + name + " must be an integer");
  return v;
}

std::uint64_t require_prime(std::uint64_t p) {
  if (p < 5 || !is_prime(p)) throw UsageError("--p must be a prime >= 5");
  if (p > kMaxWordModulus) throw UsageError("--p is too large");
  return p;
}

std::uint32_t require_level(std::uint64_t n) {
  if (n < 1 || n > kDefaultEnumerationBound) {
    throw UsageError("--level must lie in [1, " + std::to_string(kDefaultEnumerationBound) + "]");
  }
  return static_cast<std::uint32_t>(n);
}

std::vector<Table::Cell> descriptor_cells(const ClassDescriptor& d) {
  return {num(d.m), num(d.lambda), num(d.tbar), num(d.dbar)};
}

// Storage for every option; CLI11 writes into it during parsing.
struct Inputs {
  std::string format = "csv";
  std::string output;
  std::string manifest;
  std::string config;
  unsigned threads = 1;

  std::uint64_t p = 0;
  std::uint64_t level = 0;
  std::uint64_t mod = 0;
  std::uint64_t x = 0;
  std::uint64_t family_height = 2;
  std::uint64_t sample = 100000;
  std::uint64_t seed = 1;
  std::uint64_t bound = 0;
  std::int64_t class_index = -1;
  std::string r, s, s_num, s_den = "1";
  bool check = false;
  bool verify = false;
};

// A subcommand's table producer. It may report a failed --check/--verify
// through `check_failure`; the table is still written in that case.
using Runner = std::function<Table(ordered_json& config, std::string& check_failure)>;

void require(CLI::App* app, std::initializer_list<const char*> names) {
  for (const char* name : names) {
    if (app->get_option(std::string("--") + name)->count() == 0) {
      throw UsageError(std::string("--") + name + " is required");
    }
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Galois images of elliptic-curve torsion: Frobenius classes, counting experiments and "
               "Serre curve certification.",
               "serrelab");
  app.require_subcommand(1);
  app.set_version_flag("--version", SERRELAB_VERSION);

  Inputs in;
  app.add_option("--out", in.format, "Result format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--output", in.output, "Write results to this file instead of stdout");
  app.add_option("--manifest", in.manifest, "Run manifest path (default: <output>.manifest.json)");
  app.add_option("--config", in.config, "Flat key = value file; command-line flags take precedence");
  auto* threads_opt =
      app.add_option("--threads", in.threads, "Worker threads (default: env SERRE_LAB_THREADS, else 1)")
          ->check(CLI::Range(1u, 1024u));

  const auto prime_bound_check = CLI::Range(std::uint64_t{5}, std::uint64_t{1} << 20);
  std::map<std::string, std::pair<std::string, Runner>> commands;  // name -> (schema, runner)
  auto add = [&](const char* name, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    return sub;
  };

  {
    CLI::App* sub = add("frob", "Frobenius data (a, b, Delta, sigma) of one curve over F_p");
    sub->add_option("--p", in.p, "Prime p >= 5");
    sub->add_option("--r", in.r, "Coefficient of x");
    sub->add_option("--s", in.s, "Constant coefficient");
    sub->add_option("--mod", in.mod, "Also print sigma mod N")
        ->check(CLI::Range(std::uint64_t{2}, std::uint64_t{kMaxWordModulus}));
    commands["frob"] = {"frob/1", [&, sub](ordered_json& cfg, std::string&) {
      require(sub, {"p", "r", "s"});
      const std::uint64_t p = require_prime(in.p);
      const BigInt r = parse_integer("r", in.r);
      const BigInt s = parse_integer("s", in.s);
      cfg["p"] = p;
      cfg["r"] = r.get_str();
      cfg["s"] = s.get_str();
      if (in.mod) cfg["mod"] = in.mod;
      const FrobeniusData fd = sigma_matrix(CurveFp(p, r, s));
      std::vector<std::string> cols = {"p", "r", "s", "a", "b", "delta",
                                       "sigma_11", "sigma_12", "sigma_21", "sigma_22"};
      std::vector<Table::Cell> row = {num(p),          num(r),          num(s),          num(fd.a),
                                      num(fd.b),       num(fd.delta),   num(fd.sigma.a), num(fd.sigma.b),
                                      num(fd.sigma.c), num(fd.sigma.d)};
      if (in.mod) {
        const MatrixModN m = MatrixModN::from(fd.sigma, static_cast<std::uint32_t>(in.mod));
        for (const char* c : {"N", "sigma_mod_11", "sigma_mod_12", "sigma_mod_21", "sigma_mod_22", "scalar_mod_N"})
          cols.emplace_back(c);
        row.insert(row.end(), {num(in.mod), num(m.a()), num(m.b()), num(m.c()), num(m.d()), flag(m.is_scalar())});
      }
      Table t(std::move(cols));
      t.add_row(std::move(row));
      return t;
    }};
  }

  {
    CLI::App* sub = add("omega", "Curves over F_p per conjugacy class mod N: count, formula and main term");
    sub->add_option("--p", in.p, "Prime p >= 5 not dividing N");
    sub->add_option("--level", in.level, "Level N <= 24");
    sub->add_option("--class-index", in.class_index, "Only this class")->check(CLI::NonNegativeNumber);
    sub->add_flag("--check", in.check, "Exit 3 unless enumeration and formula agree");
    commands["omega"] = {"omega/1", [&, sub](ordered_json& cfg, std::string& failure) {
      require(sub, {"p", "level"});
      const std::uint64_t p = require_prime(in.p);
      const std::uint32_t n = require_level(in.level);
      if (n % p == 0) throw UsageError("--p must not divide --level");
      cfg["p"] = p;
      cfg["level"] = n;
      if (in.class_index >= 0) cfg["class_index"] = in.class_index;
      cfg["check"] = in.check;
      const ClassTable table = conjugacy_classes(n);
      if (in.class_index >= static_cast<std::int64_t>(table.classes().size())) {
        throw UsageError("--class-index out of range for this level");
      }
      Table t({"p", "N", "class_index", "M", "lambda", "Tbar", "Dbar", "enumerated", "formula", "main_term_num",
               "main_term_den", "residual"});
      for (const auto& rep : omega_reports(p, table, true)) {
        if (in.class_index >= 0 && rep.class_index != static_cast<std::size_t>(in.class_index)) continue;
        std::vector<Table::Cell> row = {num(p), num(n), num(rep.class_index)};
        for (auto& c : descriptor_cells(rep.descriptor)) row.push_back(std::move(c));
        row.insert(row.end(), {num(*rep.enumerated), num(rep.formula), num(BigInt(rep.main_term.get_num())),
                               num(BigInt(rep.main_term.get_den())), num(rep.residual)});
        t.add_row(std::move(row));
        if (in.check && BigInt(static_cast<unsigned long>(*rep.enumerated)) != rep.formula && failure.empty()) {
          failure = "class " + std::to_string(rep.class_index) + ": enumerated count differs from the formula";
        }
      }
      return t;
    }};
  }

  {
    CLI::App* sub = add("cheb", "Mean-square Chebotarev deviation over the height family");
    sub->add_option("--X", in.x, "Prime bound X");
    sub->add_option("--level", in.level, "Level N <= 24");
    sub->add_option("--class-index", in.class_index, "Only this class (default: all)")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--family-height", in.family_height, "Height bound H of the curve family C(H)");
    sub->add_option("--sample", in.sample, "Sample this many curves when the family is larger")
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", in.seed, "Seed of the sampler");
    commands["cheb"] = {"cheb/1", [&, sub](ordered_json& cfg, std::string&) {
      require(sub, {"X", "level"});
      const std::uint32_t n = require_level(in.level);
      cfg["X"] = in.x;
      cfg["level"] = n;
      if (in.class_index >= 0) cfg["class_index"] = in.class_index;
      cfg["family_height"] = in.family_height;
      cfg["sample"] = in.sample;
      cfg["seed"] = in.seed;
      cfg["prng"] = "mt19937_64, rejection-sampled uniform index";
      const ClassTable table = conjugacy_classes(n);
      if (in.class_index >= static_cast<std::int64_t>(table.classes().size())) {
        throw UsageError("--class-index out of range for this level");
      }
      const auto family = enumerate_family(in.family_height);
      MeanSquareOptions opts;
      opts.cap = in.sample;
      opts.seed = in.seed;
      opts.threads = in.threads;
      std::vector<MeanSquareReport> reports;
      if (in.class_index >= 0) {
        reports.push_back(chebotarev_mean_square(in.x, table, static_cast<std::size_t>(in.class_index), family, opts));
      } else {
        reports = chebotarev_mean_square_all(in.x, table, family, opts);
      }
      Table t({"X", "N", "class_index", "M", "lambda", "Tbar", "Dbar", "family_size", "curves_used", "sampled",
               "expected", "mean_square", "bound_ratio", "bound_ratio_approx"});
      for (const auto& rep : reports) {
        std::vector<Table::Cell> row = {num(rep.x), num(rep.level), num(rep.class_index)};
        for (auto& c : descriptor_cells(rep.descriptor)) row.push_back(std::move(c));
        row.insert(row.end(), {num(rep.family_size), num(rep.curves_used), flag(rep.sampled), rat(rep.expected),
                               rat(rep.mean_square), rat(rep.bound_ratio), real(rep.bound_ratio.get_d())});
        t.add_row(std::move(row));
      }
      return t;
    }};
  }

  {
    CLI::App* sub = add("certify", "Sufficient-condition Serre curve test for y^2 = x^3 + r x + s");
    sub->add_option("--r", in.r, "Coefficient of x");
    sub->add_option("--s", in.s, "Constant coefficient");
    sub->add_option("--prime-bound", in.bound, "Largest sampled prime B (default 37)")->check(prime_bound_check);
    commands["certify"] = {"certify/1", [&, sub](ordered_json& cfg, std::string&) {
      require(sub, {"r", "s"});
      const RationalCurve e = canonical_model(parse_integer("r", in.r), parse_integer("s", in.s));
      const std::uint64_t bound = in.bound ? in.bound : kDefaultPrimeBound;
      cfg["r"] = in.r;
      cfg["s"] = in.s;
      cfg["prime_bound"] = bound;
      const SerreVerdict v = certify_serre_curve(e, bound);
      std::string levels;
      for (auto l : v.open_levels) {
        if (!levels.empty()) levels += ' ';
        levels += std::to_string(l);
      }
      Table t({"r", "s", "prime_bound", "verdict", "failed_condition", "condition_1", "condition_2", "condition_3",
               "condition_4", "W", "D_W", "M_W", "open_levels", "witness"});
      t.add_row({num(e.r), num(e.s), num(v.prime_bound), text(std::string(to_string(v.verdict))),
                 num(v.failed_condition), text(std::string(to_string(v.conditions[0]))),
                 text(std::string(to_string(v.conditions[1]))), text(std::string(to_string(v.conditions[2]))),
                 text(std::string(to_string(v.conditions[3]))), num(v.serre.w.value()), num(v.serre.d_w),
                 num(v.serre.m_w), text(levels), text(v.witness)});
      return t;
    }};
  }

  {
    CLI::App* sub = add("census", "Certified Serre curve fraction over the height family C(X)");
    sub->add_option("--X", in.x, "Height bound X")->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1000}));
    sub->add_option("--prime-bound", in.bound, "Largest sampled prime B (default 37)")->check(prime_bound_check);
    commands["census"] = {"census/1", [&, sub](ordered_json& cfg, std::string&) {
      require(sub, {"X"});
      const std::uint64_t bound = in.bound ? in.bound : kDefaultPrimeBound;
      cfg["X"] = in.x;
      cfg["prime_bound"] = bound;
      const CensusReport rep = serre_census(in.x, bound, in.threads);
      Rational fraction(0);
      if (rep.total) {
        fraction = Rational(BigInt(static_cast<unsigned long>(rep.certified)),
                            BigInt(static_cast<unsigned long>(rep.total)));
        fraction.canonicalize();
      }
      Table t({"X", "prime_bound", "total", "certified", "certified_fraction", "certified_fraction_approx",
               "not_passed_1", "not_passed_2", "not_passed_3", "not_passed_4", "witnessed_1", "witnessed_2",
               "witnessed_3", "witnessed_4"});
      std::vector<Table::Cell> row = {num(rep.x),     num(rep.prime_bound), num(rep.total),
                                      num(rep.certified), rat(fraction), real(rep.certified_fraction())};
      for (auto v : rep.failures_by_condition) row.push_back(num(v));
      for (auto v : rep.witnessed_by_condition) row.push_back(num(v));
      t.add_row(std::move(row));
      return t;
    }};
  }

  {
    CLI::App* sub = add("family-es", "The one-parameter family E_s exceptional at 4");
    sub->add_option("--s-num", in.s_num, "Numerator of s");
    sub->add_option("--s-den", in.s_den, "Denominator of s (default 1)");
    sub->add_flag("--verify", in.verify, "Exit 3 if any identity fails");
    sub->add_option("--prime-bound", in.bound, "Also sample the mod-4 image up to this prime")
        ->check(prime_bound_check);
    commands["family-es"] = {"family-es/1", [&, sub](ordered_json& cfg, std::string& failure) {
      require(sub, {"s-num"});
      const BigInt num_s = parse_integer("s-num", in.s_num);
      const BigInt den_s = parse_integer("s-den", in.s_den);
      if (den_s == 0) throw UsageError("--s-den must be nonzero");
      Rational s(num_s, den_s);
      s.canonicalize();
      cfg["s"] = s.get_str();
      cfg["verify"] = in.verify;
      if (in.bound) cfg["prime_bound"] = in.bound;
      const EsCurve es = es_curve(s);
      const EsIdentityReport id = verify_es_identities(s);
      std::vector<std::string> cols = {"s",       "A",       "B",      "g2", "g3", "disc", "j", "model_r",
                                       "model_s", "f1_root", "f1_linear_factor", "disc_identity", "j_identity"};
      std::vector<Table::Cell> row = {rat(s),
                                      rat(es.a_coeff),
                                      rat(es.b_coeff),
                                      rat(es.g2),
                                      rat(es.g3),
                                      rat(es.disc),
                                      rat(es.j),
                                      num(es.integral_model.r),
                                      num(es.integral_model.s),
                                      rat(id.f1_root),
                                      flag(id.f1_linear_factor),
                                      flag(id.disc_identity),
                                      flag(id.j_identity)};
      if (in.bound) {
        const EsMod4Report m4 = es_mod4_image(s, in.bound);
        for (const char* c : {"prime_bound", "generators_used", "index_at_4", "full_at_2", "cover_surjects_mod_2"})
          cols.emplace_back(c);
        row.insert(row.end(), {num(m4.bound), num(m4.generators_used), num(m4.index_at_4), flag(m4.full_at_2),
                               flag(m4.cover_surjects_mod_2)});
      }
      Table t(std::move(cols));
      t.add_row(std::move(row));
      if (in.verify && !id.all()) failure = "an E_s identity does not hold";
      return t;
    }};
  }

  {
    CLI::App* sub = add("epsilon", "Curves of C(X) whose sampled image misses a (trace, det) pair mod N");
    sub->add_option("--X", in.x, "Height bound X")->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1000}));
    sub->add_option("--level", in.level, "Level N in {4, 6, 8, 9, 12, 24}");
    sub->add_option("--prime-bound", in.bound, "Largest sampled prime B (default 200)")->check(prime_bound_check);
    commands["epsilon"] = {"epsilon/1", [&, sub](ordered_json& cfg, std::string&) {
      require(sub, {"X", "level"});
      const std::uint32_t n = require_level(in.level);
      const std::uint64_t bound = in.bound ? in.bound : kDefaultCensusPrimeBound;
      cfg["X"] = in.x;
      cfg["level"] = n;
      cfg["prime_bound"] = bound;
      const EpsilonCensusReport rep = epsilon_n_census(in.x, n, bound, in.threads);
      Table t({"X", "N", "prime_bound", "total", "flagged"});
      t.add_row({num(rep.x), num(rep.level), num(rep.prime_bound), num(rep.total), num(rep.flagged)});
      return t;
    }};
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  const std::string started = utc_timestamp();
  try {
    CLI::App* selected = app.get_subcommands().front();
    const auto& [schema, runner] = commands.at(selected->get_name());

    // Config values only fill options absent from the command line.
    if (!in.config.empty()) {
      for (const auto& [key, value] : read_config(in.config)) {
        if (key == "config") continue;
        CLI::Option* opt = selected->get_option_no_throw("--" + key);
        if (!opt) opt = app.get_option_no_throw("--" + key);
        if (!opt || opt->count() > 0) continue;
        opt->add_result(value);
        try {
          opt->run_callback();
        } catch (const CLI::Error& e) {
          throw UsageError("config key " + key + ": " + e.what());
        }
      }
    }
    if (threads_opt->count() == 0) {
      if (const char* env = std::getenv("SERRE_LAB_THREADS"); env && *env) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (*end != '\0' || v < 1 || v > 1024) throw UsageError("SERRE_LAB_THREADS must be in [1, 1024]");
        in.threads = static_cast<unsigned>(v);
      }
    }

    ordered_json config = ordered_json::object();
    std::string failure;
    const Table table = runner(config, failure);
    config["threads"] = in.threads;
    config["out"] = in.format;
    const std::string body = in.format == "json" ? table.json() : table.csv();

    if (in.output.empty()) {
      out << body;
    } else {
      std::ofstream file(in.output, std::ios::binary);
      if (!file || !(file << body)) throw UsageError("cannot write " + in.output);
    }

    const std::string manifest_path =
        !in.manifest.empty() ? in.manifest : (in.output.empty() ? std::string() : in.output + ".manifest.json");
    if (!manifest_path.empty()) {
      char digest[17];
      std::snprintf(digest, sizeof digest, "%016llx", static_cast<unsigned long long>(fnv1a64(body)));
      ordered_json manifest = ordered_json::object();
      manifest["command"] = selected->get_name();
      manifest["schema"] = schema;
      manifest["config"] = config;
      manifest["version"] = SERRELAB_VERSION;
      manifest["started"] = started;
      manifest["finished"] = utc_timestamp();
      manifest["output_digest"] = std::string("fnv1a64:") + digest;
      manifest["check_passed"] = failure.empty();
      std::ofstream file(manifest_path, std::ios::binary);
      if (!file || !(file << manifest.dump(2) << "\n")) throw UsageError("cannot write " + manifest_path);
    }

    if (!failure.empty()) {
      err << "check failed: " << failure << "\n";
      return kExitCheckFailed;
    }
    return kExitOk;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == Errc::EmptyFamily ? kExitCheckFailed : kExitInputError;
  }
}

}  // namespace serrelab
