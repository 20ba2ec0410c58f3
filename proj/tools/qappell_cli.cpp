// Command-line front door: evaluate a q-Appell function, check identities
// over seeded random samples, expand a recursion into its term list, and
// print the identity catalog.
//
// Exit codes: 0 success, 1 identity failure, 2 usage error, 3 evaluation error.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qappell/json_io.hpp"
#include "qappell/verifier.hpp"

namespace {

using qappell::Complex;
using qappell::PhiKind;
using qappell::PhiSpec;
using Json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Complex flag syntax: "0.5" or "0.5,0.1" for re,im.
Complex parse_complex(const std::string& s, const std::string& flag) {
  const auto comma = s.find(',');
  try {
    size_t pos = 0;
    const double re = std::stod(s.substr(0, comma), &pos);
    if (pos != (comma == std::string::npos ? s.size() : comma)) {
      throw std::invalid_argument("trailing characters");
    }
    double im = 0.0;
    if (comma != std::string::npos) {
      const std::string rest = s.substr(comma + 1);
      im = std::stod(rest, &pos);
      if (pos != rest.size()) throw std::invalid_argument("trailing characters");
    }
    return Complex(re, im);
  } catch (const std::exception&) {
    throw UsageError("could not parse --" + flag + " value '" + s +
                     "' (expected re or re,im)");
  }
}

struct SpecFlags {
  std::string kind;
  std::optional<std::string> q, a, ap, b, bp, c, cp, x, y;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--kind", kind, "phi1|phi2|phi3|phi4")->required();
    auto opt = [&](const char* name, std::optional<std::string>& slot,
                   const char* desc) { cmd->add_option(name, slot, desc); };
    opt("--q", q, "base q, 0 < |q| < 1 (re or re,im)");
    opt("--a", a, "parameter a");
    opt("--ap", ap, "parameter a' (phi3)");
    opt("--b", b, "parameter b");
    opt("--bp", bp, "parameter b' (phi1, phi2, phi3)");
    opt("--c", c, "denominator parameter c");
    opt("--cp", cp, "denominator parameter c' (phi2, phi4)");
    opt("--x", x, "first argument, |x| < 1");
    opt("--y", y, "second argument, |y| < 1");
  }

  PhiSpec build() const {
    const PhiKind k = [&] {
      try {
        return qappell::phi_kind_from_string(kind);
      } catch (const qappell::Error& e) {
        throw UsageError(e.what());
      }
    }();
    auto need = [&](const std::optional<std::string>& slot,
                    const char* flag) -> Complex {
      if (!slot) throw UsageError(std::string("--") + flag + " is required for " + kind);
      return parse_complex(*slot, flag);
    };
    auto forbid = [&](const std::optional<std::string>& slot, const char* flag) {
      if (slot) throw UsageError(std::string("--") + flag + " does not apply to " + kind);
    };
    const Complex qv = need(q, "q");
    const Complex xv = need(x, "x");
    const Complex yv = need(y, "y");
    switch (k) {
      case PhiKind::Phi1:
        forbid(ap, "ap"); forbid(cp, "cp");
        return PhiSpec::phi1(qv, need(a, "a"), need(b, "b"), need(bp, "bp"),
                             need(c, "c"), xv, yv);
      case PhiKind::Phi2:
        forbid(ap, "ap");
        return PhiSpec::phi2(qv, need(a, "a"), need(b, "b"), need(bp, "bp"),
                             need(c, "c"), need(cp, "cp"), xv, yv);
      case PhiKind::Phi3:
        forbid(cp, "cp");
        return PhiSpec::phi3(qv, need(a, "a"), need(ap, "ap"), need(b, "b"),
                             need(bp, "bp"), need(c, "c"), xv, yv);
      case PhiKind::Phi4:
        forbid(ap, "ap"); forbid(bp, "bp");
        return PhiSpec::phi4(qv, need(a, "a"), need(b, "b"), need(c, "c"),
                             need(cp, "cp"), xv, yv);
    }
    throw UsageError("unreachable kind");
  }
};

int run_eval(const SpecFlags& flags, double tol, int max_layers) {
  const PhiSpec spec = flags.build();
  qappell::EvalConfig cfg;
  cfg.tol = tol;
  cfg.max_layers = max_layers;
  const qappell::SeriesValue v = qappell::eval_phi(spec, cfg);
  Json j;
  j["value"] = qappell::to_json(v.value);
  j["layers_used"] = v.layers_used;
  j["tail_bound"] = v.tail_bound;
  std::cout << j.dump(2) << "\n";
  return 0;
}

int run_check(std::vector<std::string> ids, qappell::SuiteOptions opt) {
  if (ids.size() == 1 && ids[0] == "all") ids = qappell::all_identity_ids();
  const auto reports = qappell::run_suite(ids, opt);
  std::cout << qappell::reports_to_json(reports);
  return qappell::suite_passed(reports, opt.threshold) ? 0 : 1;
}

int run_expand(const std::string& identity, std::optional<int> n,
               const SpecFlags& flags) {
  const PhiSpec base = flags.build();
  qappell::TermList tl;
  if (identity.rfind("thm", 0) == 0) {
    const qappell::ParsedTheorem parsed = qappell::parse_theorem(identity);
    if (qappell::is_flagged(parsed.id) && !parsed.variant_pinned) {
      throw UsageError("identity " + identity + " has two printings; use " +
                       identity + ".printed or " + identity + ".derived");
    }
    if (!n) throw UsageError("--n is required for recursion identities");
    tl = qappell::recursion_rhs({parsed.id, base, *n});
  } else {
    const qappell::ParsedRelation parsed = qappell::parse_relation(identity);
    if (qappell::is_flagged(parsed.id) && !parsed.variant_pinned) {
      throw UsageError("identity " + identity + " has two printings; use " +
                       identity + ".printed or " + identity + ".derived");
    }
    if (n) throw UsageError("--n does not apply to contiguous relations");
    tl = qappell::contiguous_rhs(parsed.id, base);
  }
  std::cout << qappell::to_json(tl).dump(2) << "\n";
  return 0;
}

int run_catalog(bool as_json, bool flagged_only) {
  std::vector<qappell::CatalogRow> rows = qappell::full_catalog();
  if (flagged_only) {
    std::erase_if(rows, [](const qappell::CatalogRow& r) { return !r.flagged; });
  }
  if (as_json) {
    Json arr = Json::array();
    for (const auto& r : rows) {
      Json j;
      j["id"] = r.id;
      j["kind"] = r.kind;
      j["anchor"] = r.anchor;
      j["flagged"] = r.flagged;
      if (!r.note.empty()) j["note"] = r.note;
      arr.push_back(std::move(j));
    }
    std::cout << arr.dump(2) << "\n";
  } else {
    for (const auto& r : rows) {
      std::printf("%-12s %-5s %-24s %s%s\n", r.id.c_str(), r.kind.c_str(),
                  r.anchor.c_str(), r.flagged ? "[flagged] " : "",
                  r.note.c_str());
    }
  }
  return 0;
}

std::string error_kind(const qappell::Error& e) {
  if (dynamic_cast<const qappell::DegenerateDenominator*>(&e))
    return "DegenerateDenominator";
  if (dynamic_cast<const qappell::DegenerateCoefficient*>(&e))
    return "DegenerateCoefficient";
  if (dynamic_cast<const qappell::NoConvergence*>(&e)) return "NoConvergence";
  if (dynamic_cast<const qappell::DomainError*>(&e)) return "DomainError";
  if (dynamic_cast<const qappell::UnsupportedRelation*>(&e))
    return "UnsupportedRelation";
  return "Error";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"q-Appell functions: evaluation and identity verification"};
  app.require_subcommand(1);

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "evaluate one function value");
  SpecFlags eval_flags;
  eval_flags.add_to(eval_cmd);
  double tol = 1e-13;
  int max_layers = 500;
  eval_cmd->add_option("--tol", tol, "series tolerance");
  eval_cmd->add_option("--max-layers", max_layers, "layer cap on m+n");

  // check
  auto* check_cmd = app.add_subcommand("check", "verify identities on samples");
  std::vector<std::string> identities;
  check_cmd->add_option("--identity", identities,
                        "identity ID (repeatable), or 'all'")
      ->required();
  qappell::SuiteOptions opt;
  check_cmd->add_option("--samples", opt.samples_per_identity, "samples per identity");
  check_cmd->add_option("--seed", opt.domain.seed, "sample stream seed");
  std::vector<int> n_values;
  check_cmd->add_option("--n", n_values, "recursion orders (repeatable)");
  check_cmd->add_option("--threshold", opt.threshold, "pass threshold");
  check_cmd->add_option("--tol", opt.eval.tol, "series tolerance");
  check_cmd->add_option("--max-layers", opt.eval.max_layers, "layer cap");
  bool serial = false;
  check_cmd->add_flag("--serial", serial, "disable the parallel sweep");

  // expand
  auto* expand_cmd = app.add_subcommand("expand", "print a right-hand side term list");
  std::string expand_identity;
  expand_cmd->add_option("--identity", expand_identity, "identity ID")->required();
  std::optional<int> expand_n;
  expand_cmd->add_option("--n", expand_n, "shift order");
  SpecFlags expand_flags;
  expand_flags.add_to(expand_cmd);

  // catalog
  auto* catalog_cmd = app.add_subcommand("catalog", "list the identity catalog");
  bool catalog_json = false, catalog_flagged = false;
  catalog_cmd->add_flag("--json", catalog_json, "JSON output");
  catalog_cmd->add_flag("--flagged", catalog_flagged, "only discrepancy-flagged entries");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*eval_cmd) return run_eval(eval_flags, tol, max_layers);
    if (*check_cmd) {
      if (!n_values.empty()) opt.n_values = n_values;
      opt.parallel = !serial;
      return run_check(identities, opt);
    }
    if (*expand_cmd) return run_expand(expand_identity, expand_n, expand_flags);
    if (*catalog_cmd) return run_catalog(catalog_json, catalog_flagged);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const qappell::UnknownIdentity& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const qappell::Error& e) {
    Json j;
    j["error"] = error_kind(e);
    j["message"] = e.what();
    std::cout << j.dump(2) << "\n";
    return 3;
  }
  return 2;
}
