#include <omp.h>

#include <chrono>
#include <exception>

#include "prokit/battery.hpp"
#include "prokit/checks.hpp"
#include "prokit/harness.hpp"

namespace prokit {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

unsigned resolve_m_max(const AnalysisSpec& a, const RunOptions& o) {
  unsigned m = o.m_max ? o.m_max : a.bounds.m_max;
  if (m && m < a.bounds.n_max) throw BoundViolation("m_max " + std::to_string(m) + " is below n_max");
  return m;
}

CheckOutcome profile_outcome(const AnalysisSpec& a, const RunOptions& o) {
  const unsigned k = unsigned(a.xs.size()), n_max = a.bounds.n_max;
  unsigned m_max = resolve_m_max(a, o);
  if (!m_max) m_max = default_m_max(a.module, k, n_max);
  ProfileKind kind = *profile_kind_from_string(a.profile);
  Profile p;
  if (kind == ProfileKind::lipman) p = lipman_profile(a.module, a.xs, n_max, m_max, o.jobs);
  else if (kind == ProfileKind::greenlees_may) p = gm_profile(a.module, a.xs, n_max, m_max, o.jobs);
  else p = weak_profile(a.module, a.xs, n_max, m_max, a.bounds.i_max ? a.bounds.i_max : k, o.jobs);
  CheckOutcome out;
  out.name = "profile:" + a.profile;
  out.fact("conclusive", p.conclusive());
  out.inconclusive = !p.conclusive();
  if (out.inconclusive)
    out.notes.push_back(std::to_string(p.inconclusive_count()) + " entries inconclusive up to m_max " +
                        std::to_string(m_max));
  out.profiles.emplace_back(a.profile, std::move(p));
  return out;
}

CheckOutcome dispatch(const AnalysisSpec& a, const RunOptions& o) {
  const std::string& k = a.kind;
  const unsigned n_max = a.bounds.n_max;
  if (k == "profile") return profile_outcome(a, o);
  if (k == "single_element_law") return single_element_law_check(a.module, a.xs[0], n_max, resolve_m_max(a, o), o.jobs);
  if (k == "bound_transfer") return bound_transfer_check(a.module, a.xs, n_max, resolve_m_max(a, o), o.jobs);
  if (k == "finite_proregular") return finite_proregular_check(a.module, a.xs, n_max, resolve_m_max(a, o), o.jobs);
  if (k == "power_stability") return power_stability_check(a.module, a.xs, a.exponents, n_max);
  if (k == "injective_criterion") return injective_criterion(a.module, a.xs, a.mode, n_max);
  if (k == "regular_then_bounded") return regular_then_bounded(a.module, a.xs, a.element, n_max);
  if (k == "local_global") return local_global_check(a.module, a.xs, a.covering, n_max, a.bounds.i_max);
  if (k == "cartier") {
    const RingPtr& r = a.module.ring();
    unsigned m_max = resolve_m_max(a, o);
    if (!m_max) m_max = n_max + 3 * ceil_log2(r->order());
    return cartier_check(Ideal(r, a.xs), a.element, n_max, m_max);
  }
  if (k == "effective_cartier") return is_effective_cartier(Ideal(a.module.ring(), a.xs), a.covering);
  if (k == "colon_identification") {
    unsigned top = resolve_m_max(a, o);
    return colon_identification_check(a.module, a.xs, a.level, std::max(a.level, top ? top : 4U));
  }
  if (k == "cech_vanishing") return cech_vanishing_check(a.module, a.xs);
  if (k == "cech_tor_compare") return tor_compare_check(a.module, a.other, a.xs, a.degrees);
  if (k == "hom_injective") return hom_injective_check(a.module.ring(), a.xs);
  throw std::logic_error("unhandled analysis kind '" + k + "'");
}

ReportEntry error_entry(ReportEntry e, const std::string& type, const std::exception& ex) {
  e.outcome.reset();
  e.error = ReportError{type, ex.what()};
  return e;
}

ReportEntry run_entry(const std::string& kind, const std::string& label, const std::function<CheckOutcome()>& fn,
                      double& seconds) {
  ReportEntry e;
  e.kind = kind;
  e.label = label;
  auto t0 = Clock::now();
  try {
    e.outcome = fn();
  } catch (const BoundViolation&) {
    throw;
  } catch (const InsufficientBound& ex) {
    e = error_entry(e, "InsufficientBound", ex);
  } catch (const NotStabilized& ex) {
    e = error_entry(e, "NotStabilized", ex);
  } catch (const DecompositionBoundExceeded& ex) {
    e = error_entry(e, "DecompositionBoundExceeded", ex);
  } catch (const IdentificationFailure& ex) {
    e = error_entry(e, "IdentificationFailure", ex);
  } catch (const NotCovering& ex) {
    e = error_entry(e, "NotCovering", ex);
  } catch (const std::exception& ex) {
    e = error_entry(e, "Error", ex);
  }
  seconds = since(t0);
  if (e.outcome) e.outcome->seconds = seconds;
  return e;
}

RingPtr family_ring(const SweepSpec& s, unsigned n) {
  return s.family == Family::truncated_two_power ? truncated_two_power(n) : truncated_polynomial_product(s.modulus, n);
}

SweepPoint sweep_point(const SweepSpec& s, unsigned parameter) {
  auto t0 = Clock::now();
  RingPtr r = family_ring(s, parameter);
  std::vector<Vec> xs;
  for (const auto& name : s.sequence) {
    if (name == "one") xs.push_back(r->one());
    else if (name == "zero") xs.push_back(r->zero());
    else xs.push_back(r->named().at(name));
  }
  FgModule m = FgModule::regular(r);
  const unsigned k = unsigned(xs.size()), n_max = s.bounds.n_max;
  unsigned m_max = s.bounds.m_max ? s.bounds.m_max : default_m_max(m, k, n_max);
  ProfileKind kind = *profile_kind_from_string(s.profile);
  Profile p;
  if (kind == ProfileKind::lipman) p = lipman_profile(m, xs, n_max, m_max, 1);
  else if (kind == ProfileKind::greenlees_may) p = gm_profile(m, xs, n_max, m_max, 1);
  else p = weak_profile(m, xs, n_max, m_max, k, 1);

  SweepPoint out;
  out.parameter = parameter;
  auto value = [](const Witness& w) { return w.m ? long(*w.m) : -1L; };
  if (s.track == "entry") {
    out.tracked.push_back(value(p.at(s.i, s.n)));
  } else if (s.track == "all") {
    for (const auto& w : p.entries) out.tracked.push_back(value(w));
  } else {
    out.tracked.push_back(long(bounded_torsion_index(m, xs.back()).c));
  }
  out.profiles.emplace_back(s.profile, std::move(p));
  out.seconds = since(t0);
  return out;
}

}  // namespace

std::pair<bool, bool> series_flags(const std::vector<long>& v) {
  if (v.size() < 2 || std::any_of(v.begin(), v.end(), [](long x) { return x < 0; })) return {false, false};
  bool increasing = true, constant = true;
  for (std::size_t j = 1; j < v.size(); ++j) {
    increasing = increasing && v[j] > v[j - 1];
    constant = constant && v[j] == v[j - 1];
  }
  return {increasing, constant};
}

SweepResult family_sweep(const SweepSpec& s, int jobs) {
  SweepResult out;
  out.family = s.family == Family::truncated_two_power ? "truncated_two_power" : "truncated_polynomial";
  out.profile = s.profile;
  out.track = s.track == "entry" ? "entry(" + std::to_string(s.i) + "," + std::to_string(s.n) + ")" : s.track;
  out.sequence = s.sequence;
  out.expect = s.expect;

  const long count = long(s.to) - long(s.from) + 1;
  out.points.resize(std::size_t(count));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
  const int threads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (long j = 0; j < count; ++j) {
    try {
      out.points[std::size_t(j)] = sweep_point(s, s.from + unsigned(j));
    } catch (...) {
      errors[std::size_t(j)] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  const std::size_t series = out.points.front().tracked.size();
  bool any_increasing = false, all_constant = true;
  for (std::size_t t = 0; t < series; ++t) {
    std::vector<long> values;
    for (const auto& p : out.points) values.push_back(p.tracked[t]);
    auto [increasing, constant] = series_flags(values);
    any_increasing = any_increasing || increasing;
    all_constant = all_constant && constant;
  }
  out.divergent = any_increasing;
  out.bounded = all_constant;
  return out;
}

Status ReportEntry::status() const {
  if (outcome) return outcome->status();
  return error && error->type == "IdentificationFailure" ? Status::counterexample : Status::inconclusive;
}

Status Report::status() const {
  bool inconclusive = false;
  for (const auto& e : entries) {
    Status s = e.status();
    if (s == Status::counterexample) return s;
    inconclusive = inconclusive || s == Status::inconclusive;
  }
  if (sweep) {
    if ((sweep->expect == "divergent" && !sweep->divergent) || (sweep->expect == "bounded" && !sweep->bounded)) {
      bool incomplete = false;
      for (const auto& p : sweep->points)
        for (long v : p.tracked) incomplete = incomplete || v < 0;
      if (!incomplete) return Status::counterexample;
      inconclusive = true;
    }
    for (const auto& p : sweep->points)
      for (long v : p.tracked) inconclusive = inconclusive || v < 0;
  }
  return inconclusive ? Status::inconclusive : Status::pass;
}

int Report::exit_code() const {
  switch (status()) {
    case Status::pass:
      return 0;
    case Status::counterexample:
      return 1;
    case Status::inconclusive:
      return 2;
  }
  return 2;
}

Report run_task(const TaskSpec& t, const RunOptions& o) {
  auto t0 = Clock::now();
  Report r;
  r.command = o.profiles_only ? "profile" : (o.analyses ? "check" : "sweep");
  r.seed = o.seed;
  r.task = t.source;
  if (o.analyses) {
    for (const auto& a : t.analyses) {
      if (o.profiles_only && a.kind != "profile") continue;
      if (a.bounds.n_max < 1) throw BoundViolation(a.label + ": n_max must be positive");
      double seconds = 0;
      if (a.kind == "random_battery") {
        for (const auto& b : batteries()) {
          if (a.battery != "all" && a.battery != b.name) continue;
          std::string label = a.battery == "all" ? "battery:" + b.name : a.label;
          r.entries.push_back(run_entry(a.kind, label, [&] { return run_battery(b.name, o.seed, a.count); }, seconds));
        }
        continue;
      }
      r.entries.push_back(run_entry(a.kind, a.label, [&] { return dispatch(a, o); }, seconds));
    }
  }
  if (o.sweep && t.sweep && !o.profiles_only) {
    SweepSpec s = *t.sweep;
    if (o.m_max) {
      if (o.m_max < s.bounds.n_max) throw BoundViolation("m_max is below the sweep n_max");
      s.bounds.m_max = o.m_max;
    }
    r.sweep = family_sweep(s, o.jobs);
  }
  r.seconds = since(t0);
  return r;
}

}  // namespace prokit
