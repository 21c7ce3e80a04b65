#include "weingarten/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "weingarten/engine.hpp"
#include "weingarten/errors.hpp"
#include "weingarten/moments.hpp"
#include "weingarten/sampler.hpp"
#include "weingarten/serialize.hpp"
#include "weingarten/verify.hpp"

namespace weingarten {

namespace {

using RF = RationalFunction;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Options {
  int k = 0;
  std::optional<long> n;
  bool symbolic = false;
  std::string route = "char";
  std::string format = "human";
  std::optional<std::string> out;
  bool decimal = false;
  int dense_bound = kDefaultDenseBound;
  std::string query;
  std::string method = "weingarten";
  std::string suite;
  std::optional<int> kmax;
  std::optional<int> nmax;
  std::optional<int> nmin;
  std::optional<int> count;
  std::uint64_t seed = 1;
  std::size_t samples = 100'000;
  std::optional<int> workers;
  std::string object;
};

std::string decimal(const Rational& v) {
  std::ostringstream os;
  os << std::setprecision(12) << v.to_double();
  return os.str();
}

// Exact value, plus a decimal rendering when requested and meaningful.
template <class Scalar>
std::string render(const Scalar& v, bool with_decimal) {
  std::string s = ScalarTraits<Scalar>::to_string(v);
  if constexpr (!ScalarTraits<Scalar>::symbolic) {
    if (with_decimal) s += " ~ " + decimal(v);
  }
  return s;
}

template <class Scalar>
void print_class_function(std::ostream& os, const ClassFunction<Scalar>& f, const Options& opt) {
  if (opt.format == "json") {
    os << to_json(f).dump(2) << '\n';
  } else if (opt.format == "csv") {
    os << to_csv(f);
  } else {
    const ClassTable& table = class_table(f.degree());
    for (std::size_t c = 0; c < table.size(); ++c) os << table.classes[c].label() << ": " << render(f.at(c), opt.decimal) << '\n';
  }
}

void require_dimension(const Options& opt) {
  if (opt.symbolic == opt.n.has_value()) throw UsageError("give exactly one of -n N or --symbolic");
}

WgRoute parse_route(const std::string& route) {
  if (route == "char") return WgRoute::CharacterExpansion;
  if (route == "gram") return WgRoute::GramInverse;
  if (route == "recursive") return WgRoute::RecursiveAscension;
  throw UsageError("unknown route '" + route + "'");
}

// Evaluates a class-function-valued object at a numeric or formal dimension.
template <class Scalar>
ClassFunction<Scalar> compute_object(const std::string& object, const Options& opt, const Scalar& n) {
  EngineOptions engine;
  engine.dense_bound = opt.dense_bound;
  if (object == "wg") {
    if (opt.route == "ladder") {
      if constexpr (ScalarTraits<Scalar>::symbolic) {
        throw DomainError("the ladder route is dimension-specific; give -n");
      } else {
        const auto v = ScalarTraits<Scalar>::integer_value(n);
        if (!v) throw DomainError("the ladder route needs an integer dimension");
        if (*v < opt.k) detail::require_invertible_gram(opt.k, n);
        return weingarten_by_ladder(opt.k, *v, opt.dense_bound);
      }
    }
    return weingarten(opt.k, n, parse_route(opt.route), engine);
  }
  if (object == "raise") return ascension(opt.k, n);
  if (object == "lower") return descension(opt.k, n);
  if (object == "gram") return gram_function(opt.k, n);
  if (object == "pseudo-wg") {
    if constexpr (ScalarTraits<Scalar>::symbolic) {
      throw DomainError("pseudo-wg needs a concrete dimension -n");
    } else {
      const auto v = ScalarTraits<Scalar>::integer_value(n);
      if (!v) throw DomainError("pseudo-wg needs an integer dimension");
      return pseudo_weingarten(opt.k, *v);
    }
  }
  throw UsageError("unknown object '" + object + "'");
}

void class_function_command(std::ostream& os, const std::string& object, const Options& opt) {
  require_dimension(opt);
  if (opt.k < 1) throw UsageError("-k must be >= 1");
  if (opt.symbolic) {
    print_class_function(os, compute_object(object, opt, RF::variable()), opt);
  } else {
    print_class_function(os, compute_object(object, opt, Rational(*opt.n)), opt);
  }
}

void moment_command(std::ostream& os, const Options& opt) {
  require_dimension(opt);
  const MomentQuery query = MomentQuery::parse(opt.query);
  std::string value;
  if (opt.method == "recursive") {
    if (query.target() != EntryKind::U) throw UsageError("--method recursive applies to u-queries");
    if (opt.symbolic) throw DomainError("the recursive route needs a concrete dimension -n");
    value = render(moment_u_recursive(query, *opt.n), opt.decimal);
  } else if (opt.method != "weingarten") {
    throw UsageError("unknown method '" + opt.method + "'");
  } else if (opt.symbolic) {
    value = render(exact_moment(query, RF::variable(), opt.dense_bound), false);
  } else {
    value = render(exact_moment(query, Rational(*opt.n), opt.dense_bound), opt.decimal);
  }
  if (opt.format == "json") {
    nlohmann::ordered_json j;
    j["query"] = query.str();
    j["n"] = opt.symbolic ? nlohmann::ordered_json("n") : nlohmann::ordered_json(*opt.n);
    j["value"] = value;
    os << j.dump(2) << '\n';
  } else {
    os << value << '\n';
  }
}

int verify_command(std::ostream& os, const Options& opt) {
  VerifyBounds bounds;
  bounds.kmax = opt.kmax;
  bounds.nmax = opt.nmax;
  if (opt.k > 0) bounds.k = opt.k;
  bounds.n = opt.n;
  bounds.seed = opt.seed;
  bounds.count = opt.count;
  std::vector<std::string> suites{opt.suite};
  if (opt.suite == "all") suites = suite_names();
  bool all_ok = true;
  nlohmann::ordered_json summary = nlohmann::ordered_json::array();
  for (const auto& name : suites) {
    const VerifyReport report = run_suite(name, bounds);
    all_ok &= report.passed();
    if (opt.format == "json") {
      nlohmann::ordered_json r;
      r["suite"] = report.suite;
      r["checks"] = report.checks.size();
      r["failures"] = report.failures();
      nlohmann::ordered_json failed = nlohmann::ordered_json::array();
      for (const auto& c : report.checks) {
        if (!c.passed) failed.push_back({{"name", c.name}, {"detail", c.detail}});
      }
      r["failed"] = std::move(failed);
      summary.push_back(std::move(r));
    } else {
      for (const auto& c : report.checks) {
        if (!c.passed || opt.decimal) os << (c.passed ? "PASS " : "FAIL ") << c.name << (c.detail.empty() ? "" : "  [" + c.detail + "]") << '\n';
      }
      os << report.suite << ": " << report.checks.size() - report.failures() << "/" << report.checks.size() << " passed\n";
    }
  }
  if (opt.format == "json") os << summary.dump(2) << '\n';
  return all_ok ? 0 : 1;
}

int default_workers() {
  if (const char* env = std::getenv("WEINGARTEN_WORKERS")) {
    try {
      const int w = std::stoi(env);
      if (w >= 1) return w;
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("WEINGARTEN_WORKERS must be a positive integer (got '") + env + "')");
  }
  return 1;
}

void sample_command(std::ostream& os, const Options& opt) {
  if (!opt.n) throw UsageError("sample needs -n N");
  const MomentQuery query = MomentQuery::parse(opt.query);
  SamplerConfig config;
  config.seed = opt.seed;
  config.samples = opt.samples;
  config.workers = opt.workers.value_or(default_workers());
  const MomentEstimate estimate = estimate_moment(query, *opt.n, config);
  std::optional<std::string> exact;
  std::optional<Complex> exact_value;
  try {
    const Rational v = exact_moment(query, Rational(*opt.n), opt.dense_bound);
    exact = v.str();
    exact_value = Complex(v.to_double(), 0.0);
  } catch (const DomainError&) {
  }
  if (opt.format == "json") {
    os << run_report_json(estimate, *opt.n, opt.seed, exact, exact_value) << '\n';
    return;
  }
  os << std::setprecision(8) << "query:  " << estimate.query << "\nn:      " << *opt.n << "\nN:      " << estimate.samples
     << "\nseed:   " << opt.seed << "\nmean:   " << estimate.mean.real() << (estimate.mean.imag() < 0 ? " - " : " + ")
     << std::abs(estimate.mean.imag()) << "i\nstderr: " << estimate.standard_error << '\n';
  if (exact) os << "exact:  " << *exact << "\nz:      " << z_score(estimate, *exact_value) << '\n';
}

void table_command(std::ostream& os, const Options& opt) {
  if (opt.k < 1) throw UsageError("-k must be >= 1");
  std::vector<long> dims;
  if (!opt.symbolic) {
    const long lo = opt.nmin.value_or(opt.n.value_or(opt.k));
    const long hi = opt.nmax.value_or(opt.n.value_or(static_cast<long>(lo)));
    if (lo < 1 || hi < lo) throw UsageError("table needs 1 <= nmin <= nmax");
    for (long n = lo; n <= hi; ++n) dims.push_back(n);
  }
  nlohmann::ordered_json tables = nlohmann::ordered_json::array();
  bool header = true;
  auto emit = [&](const auto& f, const std::string& n_text, nlohmann::ordered_json n_json) {
    if (opt.format == "json") {
      nlohmann::ordered_json j;
      j["object"] = opt.object;
      j["n"] = std::move(n_json);
      const auto body = to_json(f);
      for (const auto& [key, value] : body.items()) j[key] = value;
      tables.push_back(std::move(j));
    } else if (opt.format == "csv") {
      if (header) os << "n,cycle_type,value\n";
      header = false;
      os << to_csv(f, false, n_text + ",");
    } else {
      os << opt.object << " k=" << opt.k << " n=" << n_text << '\n';
      print_class_function(os, f, opt);
    }
  };
  if (opt.symbolic) {
    emit(compute_object(opt.object, opt, RF::variable()), "n", "n");
  } else {
    for (long n : dims) emit(compute_object(opt.object, opt, Rational(n)), std::to_string(n), n);
  }
  if (opt.format == "json") os << tables.dump(2) << '\n';
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact Weingarten calculus on U(n) with a Monte Carlo cross-check"};
  app.require_subcommand(1);
  Options opt;

  auto add_dimension = [&](CLI::App* sub) {
    sub->add_option("-n", opt.n, "Dimension n")->check(CLI::PositiveNumber);
    sub->add_flag("--symbolic", opt.symbolic, "Work with the formal dimension symbol n");
  };
  auto add_output = [&](CLI::App* sub, std::vector<std::string> formats) {
    sub->add_option("--format", opt.format, "Output format")->check(CLI::IsMember(formats));
    sub->add_option("--out", opt.out, "Write output to PATH");
    sub->add_flag("--decimal", opt.decimal, "Append decimal renderings of exact values");
  };
  auto add_class_function = [&](const std::string& name, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("-k", opt.k, "Degree k")->required();
    add_dimension(sub);
    add_output(sub, {"human", "json", "csv"});
    sub->add_option("--dense-bound", opt.dense_bound, "Largest k for dense S_k sums");
    return sub;
  };

  CLI::App* wg = add_class_function("wg", "Weingarten function Wg_{k,n}");
  wg->add_option("--route", opt.route, "char | gram | recursive | ladder")
      ->check(CLI::IsMember({"char", "gram", "recursive", "ladder"}));
  CLI::App* pseudo = add_class_function("pseudo-wg", "Pseudo-Weingarten W_{k,n} (any k, n >= 1)");
  CLI::App* raise = add_class_function("raise", "Ascension function Raise_{k,n}");
  CLI::App* lower = add_class_function("lower", "Descension function Lower_{k,n}");
  CLI::App* gram = add_class_function("gram", "Gram function G_{k,n}(pi) = n^kappa(pi)");

  CLI::App* moment = app.add_subcommand("moment", "Exact moment of matrix entries, e.g. \"p[1,1]^2 p~[n,n]\"");
  moment->add_option("query", opt.query, "Monomial in x[i], p[i,j], r[i,j], u[i,j]; ~ conjugates")->required();
  add_dimension(moment);
  add_output(moment, {"human", "json"});
  moment->add_option("--method", opt.method, "weingarten | recursive (u-queries)")
      ->check(CLI::IsMember({"weingarten", "recursive"}));
  moment->add_option("--dense-bound", opt.dense_bound, "Largest degree for the Weingarten sum");

  CLI::App* verify = app.add_subcommand("verify", "Run an identity suite");
  std::vector<std::string> suites = suite_names();
  suites.push_back("all");
  verify->add_option("suite", opt.suite, "Suite name")->required()->check(CLI::IsMember(suites));
  verify->add_option("--kmax", opt.kmax, "Largest k");
  verify->add_option("--nmax", opt.nmax, "Largest n");
  verify->add_option("-k,--k", opt.k, "Single k (pseudo)");
  verify->add_option("-n,--n", opt.n, "Single n (pseudo, haar)");
  verify->add_option("--seed", opt.seed, "Seed for randomized queries");
  verify->add_option("--count", opt.count, "Number of randomized queries");
  verify->add_option("--format", opt.format, "human | json")->check(CLI::IsMember({"human", "json"}));
  verify->add_flag("--verbose", opt.decimal, "List passing checks too");
  verify->add_option("--out", opt.out, "Write output to PATH");

  CLI::App* sample = app.add_subcommand("sample", "Monte Carlo estimate of a moment with a z-score");
  sample->add_option("query", opt.query, "Monomial, as for moment")->required();
  sample->add_option("-n", opt.n, "Dimension n")->required()->check(CLI::PositiveNumber);
  sample->add_option("--seed", opt.seed, "RNG seed");
  sample->add_option("--samples", opt.samples, "Number of draws N")->check(CLI::Range(std::size_t{2}, std::size_t{1} << 40));
  sample->add_option("--workers", opt.workers, "Worker threads (default $WEINGARTEN_WORKERS or 1)")->check(CLI::PositiveNumber);
  sample->add_option("--format", opt.format, "human | json")->check(CLI::IsMember({"human", "json"}));
  sample->add_option("--out", opt.out, "Write output to PATH");
  sample->add_option("--dense-bound", opt.dense_bound, "Largest degree for the exact prediction");

  CLI::App* table = app.add_subcommand("table", "Emit tables of wg, raise, lower, gram or pseudo-wg");
  table->add_option("object", opt.object, "wg | raise | lower | gram | pseudo-wg")
      ->required()
      ->check(CLI::IsMember({"wg", "raise", "lower", "gram", "pseudo-wg"}));
  table->add_option("-k", opt.k, "Degree k")->required();
  table->add_option("-n", opt.n, "Single dimension n")->check(CLI::PositiveNumber);
  table->add_option("--nmin", opt.nmin, "First dimension")->check(CLI::PositiveNumber);
  table->add_option("--nmax", opt.nmax, "Last dimension")->check(CLI::PositiveNumber);
  table->add_flag("--symbolic", opt.symbolic, "Formal dimension n");
  table->add_option("--route", opt.route, "Weingarten route")->check(CLI::IsMember({"char", "gram", "recursive", "ladder"}));
  add_output(table, {"human", "json", "csv"});

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  }

  std::ofstream file;
  std::ostream* os = &out;
  try {
    if (opt.out) {
      file.open(*opt.out);
      if (!file) throw std::runtime_error("cannot open output file '" + *opt.out + "'");
      os = &file;
    }
    int code = 0;
    if (wg->parsed()) {
      class_function_command(*os, "wg", opt);
    } else if (pseudo->parsed()) {
      class_function_command(*os, "pseudo-wg", opt);
    } else if (raise->parsed()) {
      class_function_command(*os, "raise", opt);
    } else if (lower->parsed()) {
      class_function_command(*os, "lower", opt);
    } else if (gram->parsed()) {
      class_function_command(*os, "gram", opt);
    } else if (moment->parsed()) {
      moment_command(*os, opt);
    } else if (verify->parsed()) {
      code = verify_command(*os, opt);
    } else if (sample->parsed()) {
      sample_command(*os, opt);
    } else if (table->parsed()) {
      table_command(*os, opt);
    }
    os->flush();
    if (opt.out && !*os) throw std::runtime_error("failed writing '" + *opt.out + "'");
    return code;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace weingarten
