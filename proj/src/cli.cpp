#include "qmexpect/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qmexpect/errors.hpp"
#include "qmexpect/operators.hpp"
#include "qmexpect/report.hpp"
#include "qmexpect/suites.hpp"

namespace qmexpect {

namespace {

enum class Format { Text, Json };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ExpectArgs {
  std::string family;
  std::string op;
  std::optional<int> n, L, M, branch;
  std::optional<double> lambda;
  std::string parity;
  std::vector<std::string> params;
};

std::pair<std::string, std::string> split_param(const std::string& kv) {
  const auto eq = kv.find('=');
  if (eq == std::string::npos || eq == 0) throw UsageError("--param expects key=value, got '" + kv + "'");
  return {kv.substr(0, eq), kv.substr(eq + 1)};
}

std::size_t node_budget_from_env(std::size_t fallback) {
  const char* raw = std::getenv("QMEXPECT_NODE_BUDGET");
  if (!raw || !*raw) return fallback;
  char* end = nullptr;
  const long long v = std::strtoll(raw, &end, 10);
  if (*end != '\0' || v <= 0) throw UsageError(std::string("QMEXPECT_NODE_BUDGET must be a positive integer, got '") + raw + "'");
  return static_cast<std::size_t>(v);
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open output file '" + path + "'");
  f << text;
}

OperatorSpec parse_operator(const std::string& name, double hbar) {
  if (name == "px" || name == "p") return ops::px(hbar);
  if (name == "pr") return ops::pr_dirac(hbar);
  if (name == "pr_naive") return ops::pr_naive(hbar);
  if (name == "l_phi") return ops::l_phi(hbar);
  if (name == "l_theta") return ops::l_theta(hbar);
  if (name == "l_theta_naive") return ops::l_theta_naive(hbar);
  if (name == "x") return ops::position();
  if (name.size() == 2 && name[0] == 'x' && name[1] >= '2' && name[1] <= '6') return ops::position_power(name[1] - '0');
  if (name.rfind("inv_r", 0) == 0 && name.size() == 6 && name[5] >= '1' && name[5] <= '4') return ops::inv_r(name[5] - '0');
  throw UsageError("unknown operator '" + name + "'");
}

Parity parse_parity(const std::string& s, Parity fallback) {
  if (s.empty()) return fallback;
  if (s == "even") return Parity::Even;
  if (s == "odd") return Parity::Odd;
  throw UsageError("--parity must be even or odd");
}

BoundState build_state(const ExpectArgs& a, const std::map<std::string, double>& p, const std::string& op, Units u) {
  auto get = [&](const std::string& k, double fallback) {
    const auto it = p.find(k);
    return it == p.end() ? fallback : it->second;
  };
  auto need = [&](const std::optional<int>& v, const char* flag) {
    if (!v) throw UsageError(std::string("family ") + a.family + " requires --" + flag);
    return *v;
  };
  const std::string& f = a.family;
  if (f == "infinite_well") return make_infinite_well(need(a.n, "n"), parse_parity(a.parity, Parity::Even), get("width", 1.0), u);
  if (f == "infinite_well_shifted") return make_infinite_well_shifted(need(a.n, "n"), get("width", 1.0), u);
  if (f == "finite_well")
    return make_finite_well(get("V0", 10.0), get("a", 1.0), parse_parity(a.parity, Parity::Even), a.branch.value_or(0), u);
  if (f == "delta") return make_delta(get("V0", 1.0), u);
  if (f == "lho") return make_lho(need(a.n, "n"), get("omega", 1.0), u);
  if (f == "poschl_teller") {
    if (!a.lambda) throw UsageError("family poschl_teller requires --lambda");
    return make_poschl_teller(need(a.n, "n"), *a.lambda, get("a", 1.0), u);
  }
  if (f == "morse") {
    if (!a.lambda) throw UsageError("family morse requires --lambda");
    return make_morse(need(a.n, "n"), *a.lambda, get("beta", 1.0), get("r0", 1.0), u);
  }
  if (f == "hydrogen") {
    const auto h = make_hydrogen(need(a.n, "n"), need(a.L, "L"), a.M.value_or(0), get("a0", 1.0), u);
    if (op == "l_phi") return h.phi;
    if (op == "l_theta" || op == "l_theta_naive") return h.theta;
    return h.radial;
  }
  if (f == "angular_theta") return make_angular_theta(need(a.L, "L"), a.M.value_or(0), u);
  if (f == "angular_phi") return make_angular_phi(need(a.M, "M"), u);
  throw UsageError("unknown family '" + f + "'");
}

std::string expect_text(const BoundState& s, const std::string& op, const ExpectationResult& r) {
  std::ostringstream os;
  os.precision(15);
  os << "state     " << s.label() << "\n";
  os << "operator  " << op << "\n";
  os << "value     " << r.value.real() << (r.value.imag() < 0 ? " - " : " + ") << std::abs(r.value.imag()) << "i\n";
  os << "abs_error " << r.abs_error << "\n";
  os << "nodes     " << r.nodes_used << "\n";
  for (const auto& c : r.decomposition) {
    os << "  " << c.name << " = " << c.value.real();
    if (c.closed_form) os << "   closed form " << *c.closed_form;
    os << "\n";
  }
  return os.str();
}

std::string expect_json(const BoundState& s, const std::string& op, const ExpectationResult& r) {
  nlohmann::ordered_json j;
  j["state"] = s.label();
  j["operator"] = op;
  j["value"] = {{"re", r.value.real()}, {"im", r.value.imag()}};
  j["abs_error"] = r.abs_error;
  j["nodes_used"] = r.nodes_used;
  auto parts = nlohmann::ordered_json::array();
  for (const auto& c : r.decomposition) {
    nlohmann::ordered_json e;
    e["name"] = c.name;
    e["value"] = {{"re", c.value.real()}, {"im", c.value.imag()}};
    e["closed_form"] = c.closed_form ? nlohmann::ordered_json(*c.closed_form) : nlohmann::ordered_json(nullptr);
    parts.push_back(std::move(e));
  }
  j["decomposition"] = std::move(parts);
  return j.dump(2) + "\n";
}

ExpectationResult evaluate(const BoundState& s, const std::string& op, double hbar, const QuadOptions& opts) {
  if (op.size() == 2 && op[0] == 'p' && op[1] >= '2' && op[1] <= '4') return momentum_moment(s, op[1] - '0', opts);
  return expectation(s, parse_operator(op, hbar), opts);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Expectation values of momentum, position and angular momentum in bound states"};
  app.require_subcommand(1);

  std::map<std::string, Format> formats{{"text", Format::Text}, {"json", Format::Json}};
  Format format = Format::Text;
  std::string out_path;
  std::string suite_name;
  std::optional<double> tol;
  std::vector<std::string> suite_params;

  auto* suite = app.add_subcommand("suite", "Run a verification suite");
  suite->add_option("name", suite_name, "Suite name")->required()->check(CLI::IsMember(suite_names()));
  suite->add_option("--tol", tol, "Override the relative and zero-check tolerances")->check(CLI::PositiveNumber);
  suite->add_option("--format", format, "text or json")->transform(CLI::CheckedTransformer(formats));
  suite->add_option("--out", out_path, "Write the report to this file instead of stdout");
  suite->add_option("--param", suite_params, "Suite parameter key=value (repeatable)");

  ExpectArgs ea;
  auto* expect = app.add_subcommand("expect", "Compute a single expectation value");
  expect->add_option("--family", ea.family, "infinite_well, infinite_well_shifted, finite_well, delta, lho, "
                                            "poschl_teller, morse, hydrogen, angular_theta, angular_phi")
      ->required();
  expect->add_option("--op", ea.op, "px, p2, p3, p4, pr, pr_naive, l_phi, l_theta, l_theta_naive, x, x2..x6, "
                                    "inv_r1..inv_r4")
      ->required();
  expect->add_option("--n", ea.n, "Principal or vibrational quantum number");
  expect->add_option("--L", ea.L, "Orbital quantum number");
  expect->add_option("--M", ea.M, "Magnetic quantum number");
  expect->add_option("--lambda", ea.lambda, "Poschl-Teller or Morse lambda");
  expect->add_option("--parity", ea.parity, "even or odd");
  expect->add_option("--branch", ea.branch, "Finite-well branch index");
  expect->add_option("--param", ea.params, "Physical parameter key=value (repeatable): hbar, mass, width, V0, a, "
                                           "omega, beta, r0, a0");
  expect->add_option("--format", format, "text or json")->transform(CLI::CheckedTransformer(formats));
  expect->add_option("--out", out_path, "Write the result to this file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (suite->parsed()) {
      SuiteConfig cfg;
      cfg.node_budget = node_budget_from_env(cfg.node_budget);
      try {
        for (const auto& kv : suite_params) {
          const auto [k, v] = split_param(kv);
          cfg.set(k, v);
        }
      } catch (const DomainError& e) {
        throw UsageError(e.what());
      }
      if (tol) cfg.rel_tol = cfg.zero_tol = *tol;
      const auto report = run_suite(suite_name, cfg);
      emit(format == Format::Json ? to_json(report) : to_text(report), out_path, out);
      return report.all_passed ? 0 : 1;
    }

    QuadOptions opts;
    opts.node_budget = node_budget_from_env(opts.node_budget);
    std::map<std::string, double> params;
    for (const auto& kv : ea.params) {
      const auto [k, v] = split_param(kv);
      char* end = nullptr;
      const double d = std::strtod(v.c_str(), &end);
      if (v.empty() || *end != '\0') throw UsageError("--param " + k + ": expected a number, got '" + v + "'");
      params[k] = d;
    }
    Units units;
    if (params.count("hbar")) units.hbar = params["hbar"];
    if (params.count("mass")) units.mass = params["mass"];
    std::optional<BoundState> state;
    try {
      state = build_state(ea, params, ea.op, units);
    } catch (const DomainError& e) {
      throw UsageError(std::string(e.kind()) + ": " + e.what());
    } catch (const NoSuchBranch& e) {
      throw UsageError(std::string(e.kind()) + ": " + e.what());
    } catch (const NoBoundState& e) {
      throw UsageError(std::string(e.kind()) + ": " + e.what());
    }
    const auto r = evaluate(*state, ea.op, units.hbar, opts);
    emit(format == Format::Json ? expect_json(*state, ea.op, r) : expect_text(*state, ea.op, r), out_path, out);
    return 0;
  } catch (const UsageError& e) {
    err << "qmexpect: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "qmexpect: " << e.kind() << ": " << e.what() << "\n";
    return 1;
  }
}

}  // namespace qmexpect
