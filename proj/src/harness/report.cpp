#include <iomanip>
#include <sstream>

#include "prokit/harness.hpp"

namespace prokit {

namespace {

Json int_json(const Int& v) {
  if (v.fits_slong_p()) return Json(v.get_si());
  return Json(v.get_str());
}

Int int_from(const Json& j) {
  if (j.is_string()) return Int(j.get<std::string>());
  if (j.is_number_unsigned()) return Int(j.get<unsigned long>());
  return Int(j.get<long>());
}

Json vec_json(const Vec& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(int_json(x));
  return out;
}

Vec vec_from(const Json& j) {
  Vec out;
  for (const auto& x : j) out.push_back(int_from(x));
  return out;
}

Json certificate_json(const Certificate& c) {
  return Json{{"kind", c.kind}, {"i", c.i}, {"n", c.n}, {"m", c.m}, {"element", vec_json(c.element)}};
}

Certificate certificate_from(const Json& j) {
  return Certificate{j.at("kind").get<std::string>(), j.at("i").get<unsigned>(), j.at("n").get<unsigned>(),
                     j.at("m").get<unsigned>(), vec_from(j.at("element"))};
}

Json certificates_json(const std::vector<Certificate>& cs) {
  Json out = Json::array();
  for (const auto& c : cs) out.push_back(certificate_json(c));
  return out;
}

std::vector<Certificate> certificates_from(const Json& j) {
  std::vector<Certificate> out;
  for (const auto& c : j) out.push_back(certificate_from(c));
  return out;
}

Json profile_json(const std::string& label, const Profile& p) {
  Json entries = Json::array();
  for (unsigned i = 1; i <= p.rows; ++i)
    for (unsigned n = 1; n <= p.n_max; ++n) {
      const Witness& w = p.at(i, n);
      entries.push_back(Json{{"i", i}, {"n", n}, {"m", w.m ? Json(*w.m) : Json(nullptr)}, {"bound", w.bound}});
    }
  return Json{{"label", label},     {"kind", to_string(p.kind)}, {"rows", p.rows},
              {"n_max", p.n_max},   {"m_max", p.m_max},          {"entries", entries},
              {"certificates", certificates_json(p.certificates)}};
}

std::pair<std::string, Profile> profile_from(const Json& j) {
  Profile p;
  p.kind = *profile_kind_from_string(j.at("kind").get<std::string>());
  p.rows = j.at("rows").get<unsigned>();
  p.n_max = j.at("n_max").get<unsigned>();
  p.m_max = j.at("m_max").get<unsigned>();
  for (const auto& e : j.at("entries")) {
    Witness w;
    if (!e.at("m").is_null()) w.m = e.at("m").get<unsigned>();
    w.bound = e.at("bound").get<unsigned>();
    p.entries.push_back(w);
  }
  p.certificates = certificates_from(j.at("certificates"));
  return {j.at("label").get<std::string>(), std::move(p)};
}

Json profiles_json(const std::vector<std::pair<std::string, Profile>>& ps) {
  Json out = Json::array();
  for (const auto& [label, p] : ps) out.push_back(profile_json(label, p));
  return out;
}

std::vector<std::pair<std::string, Profile>> profiles_from(const Json& j) {
  std::vector<std::pair<std::string, Profile>> out;
  for (const auto& p : j) out.push_back(profile_from(p));
  return out;
}

Json pairs_json(const std::vector<std::pair<std::string, bool>>& v, const char* value_key) {
  Json out = Json::array();
  for (const auto& [k, b] : v) out.push_back(Json{{"name", k}, {value_key, b}});
  return out;
}

std::vector<std::pair<std::string, bool>> pairs_from(const Json& j, const char* value_key) {
  std::vector<std::pair<std::string, bool>> out;
  for (const auto& e : j) out.emplace_back(e.at("name").get<std::string>(), e.at(value_key).get<bool>());
  return out;
}

Json outcome_json(const CheckOutcome& o) {
  return Json{{"name", o.name},
              {"status", status_name(o.status())},
              {"checks", pairs_json(o.checks, "pass")},
              {"facts", pairs_json(o.facts, "value")},
              {"inconclusive", o.inconclusive},
              {"notes", o.notes},
              {"certificates", certificates_json(o.certificates)},
              {"profiles", profiles_json(o.profiles)}};
}

CheckOutcome outcome_from(const Json& j) {
  CheckOutcome o;
  o.name = j.at("name").get<std::string>();
  o.checks = pairs_from(j.at("checks"), "pass");
  o.facts = pairs_from(j.at("facts"), "value");
  o.inconclusive = j.at("inconclusive").get<bool>();
  o.notes = j.at("notes").get<std::vector<std::string>>();
  o.certificates = certificates_from(j.at("certificates"));
  o.profiles = profiles_from(j.at("profiles"));
  return o;
}

Json sweep_json(const SweepResult& s) {
  Json points = Json::array();
  for (const auto& p : s.points)
    points.push_back(Json{{"schema", kSchemaVersion},
                          {"N", p.parameter},
                          {"tracked", p.tracked},
                          {"profiles", profiles_json(p.profiles)}});
  Json out{{"family", s.family},     {"profile", s.profile}, {"track", s.track},
           {"sequence", s.sequence}, {"divergent", s.divergent}, {"bounded", s.bounded}};
  if (!s.expect.empty()) out["expect"] = s.expect;
  out["points"] = points;
  return out;
}

SweepResult sweep_from(const Json& j) {
  SweepResult s;
  s.family = j.at("family").get<std::string>();
  s.profile = j.at("profile").get<std::string>();
  s.track = j.at("track").get<std::string>();
  s.sequence = j.at("sequence").get<std::vector<std::string>>();
  s.divergent = j.at("divergent").get<bool>();
  s.bounded = j.at("bounded").get<bool>();
  s.expect = j.value("expect", "");
  for (const auto& p : j.at("points")) {
    SweepPoint sp;
    sp.parameter = p.at("N").get<unsigned>();
    sp.tracked = p.at("tracked").get<std::vector<long>>();
    sp.profiles = profiles_from(p.at("profiles"));
    s.points.push_back(std::move(sp));
  }
  return s;
}

std::string cell(const Witness& w) { return w.m ? std::to_string(*w.m) : "-"; }

void text_profile(std::ostringstream& out, const std::string& label, const Profile& p, const std::string& indent) {
  out << indent << label << " profile (n_max " << p.n_max << ", m_max " << p.m_max << ")\n";
  out << indent << "  i\\n";
  for (unsigned n = 1; n <= p.n_max; ++n) out << std::setw(5) << n;
  out << "\n";
  for (unsigned i = 1; i <= p.rows; ++i) {
    out << indent << "  " << std::setw(3) << std::left << i << std::right;
    for (unsigned n = 1; n <= p.n_max; ++n) out << std::setw(5) << cell(p.at(i, n));
    out << "\n";
  }
}

std::string emit_text(const Report& r) {
  std::ostringstream out;
  out << "prokit " << kToolVersion << "  " << r.command << "  seed " << r.seed << "  status "
      << status_name(r.status()) << " (exit " << r.exit_code() << ")\n";
  for (const auto& e : r.entries) {
    out << "[" << status_name(e.status()) << "] " << e.label << "\n";
    if (e.error) {
      out << "  " << e.error->type << ": " << e.error->message << "\n";
      continue;
    }
    const CheckOutcome& o = *e.outcome;
    for (const auto& [k, v] : o.checks)
      if (!v) out << "  failed: " << k << "\n";
    for (const auto& [k, v] : o.facts) out << "  " << k << ": " << (v ? "true" : "false") << "\n";
    for (const auto& n : o.notes) out << "  " << n << "\n";
    for (const auto& [label, p] : o.profiles) text_profile(out, label, p, "  ");
  }
  if (r.sweep) {
    const SweepResult& s = *r.sweep;
    out << "sweep " << s.family << " (";
    for (std::size_t j = 0; j < s.sequence.size(); ++j) out << (j ? ", " : "") << s.sequence[j];
    out << ") " << s.profile << " track " << s.track << "\n";
    for (const auto& p : s.points) {
      out << "  N=" << p.parameter << ":";
      for (long v : p.tracked) out << " " << (v < 0 ? std::string("-") : std::to_string(v));
      out << "\n";
    }
    out << "  divergent: " << (s.divergent ? "yes" : "no") << ", bounded: " << (s.bounded ? "yes" : "no") << "\n";
  }
  return out.str();
}

void csv_rows(std::ostringstream& out, const Profile& p) {
  for (unsigned i = 1; i <= p.rows; ++i)
    for (unsigned n = 1; n <= p.n_max; ++n) {
      const Witness& w = p.at(i, n);
      out << i << "," << n << "," << (w.m ? std::to_string(*w.m) : "") << "," << (w.m ? "true" : "false") << "\n";
    }
}

std::string emit_csv(const Report& r) {
  std::ostringstream out;
  out << "i,n,m,conclusive\n";
  for (const auto& e : r.entries)
    if (e.outcome)
      for (const auto& [label, p] : e.outcome->profiles) csv_rows(out, p);
  if (r.sweep)
    for (const auto& pt : r.sweep->points)
      for (const auto& [label, p] : pt.profiles) csv_rows(out, p);
  return out.str();
}

}  // namespace

std::string status_name(Status s) {
  switch (s) {
    case Status::pass:
      return "pass";
    case Status::counterexample:
      return "counterexample";
    case Status::inconclusive:
      return "inconclusive";
  }
  return "?";
}

std::optional<Format> format_from_string(const std::string& s) {
  if (s == "json") return Format::json;
  if (s == "csv") return Format::csv;
  if (s == "text") return Format::text;
  return std::nullopt;
}

Json report_to_json(const Report& r, bool with_timing) {
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    Json j{{"kind", e.kind}, {"label", e.label}, {"status", status_name(e.status())}};
    if (e.outcome) j["outcome"] = outcome_json(*e.outcome);
    if (e.error) j["error"] = Json{{"type", e.error->type}, {"message", e.error->message}};
    entries.push_back(std::move(j));
  }
  Json out{{"schema", kSchemaVersion}, {"tool", "prokit"},
           {"version", kToolVersion},  {"command", r.command},
           {"seed", r.seed},           {"status", status_name(r.status())},
           {"exit_code", r.exit_code()}, {"task", r.task},
           {"entries", entries}};
  if (r.sweep) out["sweep"] = sweep_json(*r.sweep);
  if (with_timing) {
    Json per = Json::array();
    for (const auto& e : r.entries) per.push_back(e.outcome ? e.outcome->seconds : 0.0);
    Json points = Json::array();
    if (r.sweep)
      for (const auto& p : r.sweep->points) points.push_back(p.seconds);
    out["timing"] = Json{{"total_seconds", r.seconds}, {"entries", per}, {"sweep_points", points}};
  }
  return out;
}

Report report_from_json(const Json& j) {
  Report r;
  if (j.at("schema").get<int>() != kSchemaVersion) throw std::invalid_argument("unsupported report schema");
  r.command = j.at("command").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.task = j.at("task");
  for (const auto& e : j.at("entries")) {
    ReportEntry re;
    re.kind = e.at("kind").get<std::string>();
    re.label = e.at("label").get<std::string>();
    if (e.contains("outcome")) re.outcome = outcome_from(e["outcome"]);
    if (e.contains("error"))
      re.error = ReportError{e["error"].at("type").get<std::string>(), e["error"].at("message").get<std::string>()};
    r.entries.push_back(std::move(re));
  }
  if (j.contains("sweep")) r.sweep = sweep_from(j["sweep"]);
  if (j.contains("timing")) {
    const Json& t = j["timing"];
    r.seconds = t.at("total_seconds").get<double>();
    const Json& per = t.at("entries");
    for (std::size_t k = 0; k < r.entries.size() && k < per.size(); ++k)
      if (r.entries[k].outcome) r.entries[k].outcome->seconds = per[k].get<double>();
    if (r.sweep) {
      const Json& pts = t.at("sweep_points");
      for (std::size_t k = 0; k < r.sweep->points.size() && k < pts.size(); ++k)
        r.sweep->points[k].seconds = pts[k].get<double>();
    }
  }
  return r;
}

std::string report_body(const Report& r) { return report_to_json(r, false).dump(2); }

std::string emit_report(const Report& r, Format f) {
  switch (f) {
    case Format::json:
      return report_to_json(r).dump(2) + "\n";
    case Format::csv:
      return emit_csv(r);
    case Format::text:
      return emit_text(r);
  }
  return {};
}

}  // namespace prokit
