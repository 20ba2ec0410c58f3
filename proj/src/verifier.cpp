#include "qappell/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qappell/json_io.hpp"

namespace qappell {

namespace {

// SplitMix64 (Steele, Lea, Flood 2014): state advances by the golden-ratio
// increment, output is the murmur-style finalizer. Counter-based and
// splittable, so sample streams are pure functions of (seed, kind, index).
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}
  std::uint64_t next() {
    state_ += kGolden;
    return mix64(state_);
  }
  // Uniform in [0, 1) with 53 significant bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

constexpr double kPi = 3.14159265358979323846;

Complex draw_complex(SplitMix64& rng, double mod_min, double mod_max,
                     bool complex_phase) {
  const double mod = mod_min + (mod_max - mod_min) * rng.uniform();
  const double phase = complex_phase ? 2.0 * kPi * rng.uniform() : 0.0;
  return std::polar(mod, phase);
}

bool params_admissible(const PhiSpec& spec, const SampleDomain& dom) {
  for (const Complex& p : spec.numerators) {
    if (std::abs(Complex(1.0, 0.0) - p) < dom.pole_margin) return false;
  }
  const Complex q = spec.q.value();
  for (const Complex& d : spec.denominators) {
    if (std::abs(Complex(1.0, 0.0) - d) < dom.pole_margin) return false;
    Complex qj(1.0, 0.0);
    for (int j = 0; j <= 40; ++j) {
      if (std::abs(d * qj - Complex(1.0, 0.0)) < dom.pole_margin) return false;
      qj *= q;
    }
    qj = q;
    for (int j = 1; j <= kMaxShiftOrder; ++j) {
      if (std::abs(d - qj) < dom.pole_margin) return false;
      qj *= q;
    }
  }
  return true;
}

}  // namespace

PhiSpec sample_point(PhiKind kind, const SampleDomain& dom, int index) {
  std::uint64_t h = dom.seed;
  h = mix64(h ^ (kGolden * static_cast<std::uint64_t>(index + 1)));
  h = mix64(h ^ (0xBF58476D1CE4E5B9ULL * (static_cast<std::uint64_t>(kind) + 1)));
  SplitMix64 rng(h);

  for (;;) {
    const Complex q = draw_complex(rng, dom.q_modulus_min, dom.q_modulus_max,
                                   dom.q_complex);
    auto param = [&] { return draw_complex(rng, 0.0, dom.param_modulus_max, true); };
    auto arg = [&] { return draw_complex(rng, 0.0, dom.arg_modulus_max, true); };
    PhiSpec spec = [&] {
      switch (kind) {
        case PhiKind::Phi1: {
          const Complex a = param(), b = param(), bp = param(), c = param();
          return PhiSpec::phi1(q, a, b, bp, c, arg(), arg());
        }
        case PhiKind::Phi2: {
          const Complex a = param(), b = param(), bp = param(), c = param(),
                        cp = param();
          return PhiSpec::phi2(q, a, b, bp, c, cp, arg(), arg());
        }
        case PhiKind::Phi3: {
          const Complex a = param(), ap = param(), b = param(), bp = param(),
                        c = param();
          return PhiSpec::phi3(q, a, ap, b, bp, c, arg(), arg());
        }
        case PhiKind::Phi4: {
          const Complex a = param(), b = param(), c = param(), cp = param();
          return PhiSpec::phi4(q, a, b, c, cp, arg(), arg());
        }
      }
      std::abort();
    }();
    if (params_admissible(spec, dom)) return spec;
  }
}

namespace {

// One report to fill: a contiguous relation, or a theorem formula at fixed n.
struct ReportPlan {
  std::string identity;
  PhiKind kind;
  bool is_relation = true;
  RelationId rel{};
  TheoremId thm{};
  int n = 0;
  bool adjudicate = false;
};

constexpr double kErrorResidual = std::numeric_limits<double>::max();

double one_residual(const ReportPlan& plan, Variant variant, const PhiSpec& base,
                    const EvalConfig& cfg) {
  try {
    if (plan.is_relation) {
      RelationId rel = plan.rel;
      rel.variant = variant;
      return contiguous_residual(rel, base, cfg);
    }
    TheoremId id = plan.thm;
    id.variant = variant;
    return recursion_residual({id, base, plan.n}, cfg);
  } catch (const Error&) {
    return kErrorResidual;
  }
}

std::vector<ReportPlan> make_plans(const std::vector<std::string>& ids,
                                   const SuiteOptions& opt) {
  std::vector<ReportPlan> plans;
  for (const std::string& id : ids) {
    if (id.rfind("phi", 0) == 0) {
      const ParsedRelation parsed = parse_relation(id);
      ReportPlan plan;
      plan.identity = relation_name(parsed.id, parsed.variant_pinned);
      plan.kind = parsed.id.kind;
      plan.is_relation = true;
      plan.rel = parsed.id;
      plan.adjudicate = is_flagged(parsed.id) && !parsed.variant_pinned;
      plans.push_back(std::move(plan));
    } else {
      const ParsedTheorem parsed = parse_theorem(id);
      for (int n : opt.n_values) {
        if (n < 1 || n > kMaxShiftOrder) {
          throw DomainError("suite n values must lie in [1, " +
                            std::to_string(kMaxShiftOrder) + "]");
        }
        ReportPlan plan;
        plan.identity = theorem_name(parsed.id, parsed.variant_pinned) +
                        "#n=" + std::to_string(n);
        plan.kind = theorem_kind(parsed.id.theorem);
        plan.is_relation = false;
        plan.thm = parsed.id;
        plan.n = n;
        plan.adjudicate = is_flagged(parsed.id) && !parsed.variant_pinned;
        plans.push_back(std::move(plan));
      }
    }
  }
  return plans;
}

}  // namespace

std::vector<ResidualReport> run_suite(const std::vector<std::string>& ids,
                                      const SuiteOptions& opt) {
  if (opt.samples_per_identity < 1) {
    throw DomainError("samples_per_identity must be positive");
  }
  const std::vector<ReportPlan> plans = make_plans(ids, opt);
  const int samples = opt.samples_per_identity;

  // Residual matrix: primary variant plus the second variant where adjudicating.
  // Slots are written independently, so the sweep order never matters.
  std::vector<std::vector<double>> primary(plans.size()),
      secondary(plans.size());
  for (size_t p = 0; p < plans.size(); ++p) {
    primary[p].assign(samples, 0.0);
    if (plans[p].adjudicate) secondary[p].assign(samples, 0.0);
  }

  const long total_jobs = static_cast<long>(plans.size()) * samples;
  auto run_job = [&](long job) {
    const size_t p = static_cast<size_t>(job) / samples;
    const int s = static_cast<int>(job % samples);
    const ReportPlan& plan = plans[p];
    const PhiSpec base = sample_point(plan.kind, opt.domain, s);
    if (plan.adjudicate) {
      primary[p][s] = one_residual(plan, Variant::AsPrinted, base, opt.eval);
      secondary[p][s] = one_residual(plan, Variant::DefinitionDerived, base, opt.eval);
    } else {
      const Variant v = plan.is_relation ? plan.rel.variant : plan.thm.variant;
      primary[p][s] = one_residual(plan, v, base, opt.eval);
    }
  };

  if (opt.parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long job = 0; job < total_jobs; ++job) run_job(job);
  } else {
    for (long job = 0; job < total_jobs; ++job) run_job(job);
  }

  std::vector<ResidualReport> reports;
  reports.reserve(plans.size());
  for (size_t p = 0; p < plans.size(); ++p) {
    const ReportPlan& plan = plans[p];
    ResidualReport rep;
    rep.identity = plan.identity;
    rep.samples = samples;

    const std::vector<double>* winner = &primary[p];
    if (plan.adjudicate) {
      const double max_printed = *std::max_element(primary[p].begin(), primary[p].end());
      const double max_derived =
          *std::max_element(secondary[p].begin(), secondary[p].end());
      const bool derived_wins = max_derived < max_printed;
      winner = derived_wins ? &secondary[p] : &primary[p];
      rep.adjudication = Adjudication{
          derived_wins ? Variant::DefinitionDerived : Variant::AsPrinted,
          derived_wins ? max_printed : max_derived};
    }

    double sum = 0.0, maxr = 0.0;
    for (int s = 0; s < samples; ++s) {
      const double r = (*winner)[s];
      sum += r;
      maxr = std::max(maxr, r);
      if (r > opt.threshold) {
        rep.failures.push_back({s, sample_point(plan.kind, opt.domain, s), r});
      }
    }
    rep.max_residual = maxr;
    rep.mean_residual = sum / samples;
    reports.push_back(std::move(rep));
  }
  return reports;
}

bool suite_passed(const std::vector<ResidualReport>& reports, double threshold) {
  for (const ResidualReport& rep : reports) {
    if (rep.adjudication) {
      // Exactly one passing variant: winner within, loser outside.
      if (rep.max_residual > threshold) return false;
      if (rep.adjudication->loser_max_residual <= threshold) return false;
    } else if (rep.max_residual > threshold) {
      return false;
    }
  }
  return true;
}

std::string reports_to_json(const std::vector<ResidualReport>& reports) {
  using Json = nlohmann::ordered_json;
  Json arr = Json::array();
  for (const ResidualReport& rep : reports) {
    Json j;
    j["identity"] = rep.identity;
    j["samples"] = rep.samples;
    j["max_residual"] = rep.max_residual;
    j["mean_residual"] = rep.mean_residual;
    Json failures = Json::array();
    for (const SampleFailure& f : rep.failures) {
      Json fj;
      fj["sample_index"] = f.sample_index;
      fj["parameters"] = to_json(f.parameters);
      fj["residual"] = f.residual;
      failures.push_back(std::move(fj));
    }
    j["failures"] = std::move(failures);
    if (rep.adjudication) {
      Json aj;
      aj["winner"] = to_string(rep.adjudication->winner);
      aj["loser_max_residual"] = rep.adjudication->loser_max_residual;
      j["variant_adjudication"] = std::move(aj);
    }
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

std::vector<CatalogRow> full_catalog() {
  std::vector<CatalogRow> rows;
  for (const RelationEntry& e : relations_catalog()) {
    rows.push_back({relation_name(e.id, false), to_string(e.id.kind), e.anchor,
                    e.flagged, e.note});
  }
  for (const TheoremEntry& e : recursions_catalog()) {
    rows.push_back({theorem_name(e.id, false), to_string(e.kind), e.anchor,
                    e.flagged, e.note});
  }
  return rows;
}

std::vector<std::string> all_identity_ids() {
  std::vector<std::string> ids;
  for (const CatalogRow& row : full_catalog()) ids.push_back(row.id);
  return ids;
}

}  // namespace qappell
