#include <algorithm>
#include <map>
#include <set>

#include "prokit/battery.hpp"
#include "prokit/harness.hpp"
#include "prokit/random.hpp"

namespace prokit {

ParseError::ParseError(const std::string& message, std::size_t line, std::string field)
    : std::runtime_error(message), line_(line), field_(std::move(field)) {}

namespace {

std::size_t line_at(const std::string& text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return std::size_t(std::count(text.begin(), text.begin() + long(offset), '\n')) + 1;
}

// Line of the last key of a dotted path, found by locating each key in turn.
std::size_t line_of_path(const std::string& text, const std::string& path) {
  std::size_t pos = 0, found = std::string::npos;
  std::size_t start = 0;
  while (start <= path.size() && !path.empty()) {
    std::size_t dot = path.find('.', start);
    std::string key = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    key = key.substr(0, key.find('['));
    if (!key.empty()) {
      std::size_t at = text.find("\"" + key + "\"", pos);
      if (at == std::string::npos) break;
      found = pos = at;
    }
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  return found == std::string::npos ? 0 : line_at(text, found);
}

const std::set<std::string> kAnalysisKinds{
    "profile",       "single_element_law", "bound_transfer",   "finite_proregular",   "power_stability",
    "injective_criterion", "regular_then_bounded", "local_global", "cartier",        "effective_cartier",
    "colon_identification", "cech_vanishing", "cech_tor_compare", "hom_injective",   "random_battery",
    "verify"};

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  Json document() {
    try {
      return Json::parse(text_, nullptr, true, true);
    } catch (const Json::parse_error& e) {
      throw ParseError(std::string("malformed task text: ") + e.what(), line_at(text_, e.byte ? e.byte - 1 : 0),
                       "");
    }
  }

  TaskSpec parse() {
    TaskSpec t;
    t.source = document();
    const Json& d = t.source;
    if (!d.is_object()) fail("", "task must be a JSON object");
    allow(d, "", {"schema", "name", "description", "ring", "elements", "modules", "sequences", "analysis", "bounds",
                  "sweep"});
    if (!d.contains("schema")) fail("schema", "missing schema version");
    if (!d["schema"].is_number_integer() || d["schema"].get<long>() != kSchemaVersion)
      fail("schema", "unsupported schema version (expected 1)");

    if (d.contains("bounds")) t.bounds = bounds(d["bounds"], "bounds", Bounds{});
    if (d.contains("ring")) {
      ring_ = ring(d["ring"], "ring");
      t.ring = ring_;
    }
    if (d.contains("elements")) elements(d["elements"]);
    if (d.contains("modules")) modules(d["modules"]);
    if (d.contains("sequences")) sequences(d["sequences"]);
    if (d.contains("analysis")) {
      const Json& a = d["analysis"];
      if (!a.is_array()) fail("analysis", "analysis must be an array");
      for (std::size_t j = 0; j < a.size(); ++j) analysis(a[j], "analysis[" + std::to_string(j) + "]", t);
    }
    if (d.contains("sweep")) t.sweep = sweep(d["sweep"], "sweep", t.bounds);
    if (t.analyses.empty() && !t.sweep) fail("analysis", "task requests neither an analysis nor a sweep");
    return t;
  }

  RingPtr ring(const Json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "ring spec must be an object");
    std::string kind = str(j, "kind", path);
    try {
      if (kind == "zmod") {
        allow(j, path, {"kind", "modulus"});
        return zmod(integer(field(j, "modulus", path), path + ".modulus"));
      }
      if (kind == "truncated_two_power") {
        allow(j, path, {"kind", "levels"});
        return truncated_two_power(positive(j, "levels", path));
      }
      if (kind == "truncated_polynomial") {
        allow(j, path, {"kind", "modulus", "degree"});
        return truncated_polynomial(integer(field(j, "modulus", path), path + ".modulus"),
                                    positive(j, "degree", path));
      }
      if (kind == "truncated_polynomial_product") {
        allow(j, path, {"kind", "modulus", "levels"});
        return truncated_polynomial_product(integer(field(j, "modulus", path), path + ".modulus"),
                                            positive(j, "levels", path));
      }
      if (kind == "quadratic_extension") {
        allow(j, path, {"kind", "modulus", "a", "b"});
        return quadratic_extension(integer(field(j, "modulus", path), path + ".modulus"),
                                   integer(field(j, "a", path), path + ".a"),
                                   integer(field(j, "b", path), path + ".b"));
      }
      if (kind == "monomial_algebra") {
        allow(j, path, {"kind", "modulus", "a", "b"});
        return monomial_algebra(integer(field(j, "modulus", path), path + ".modulus"), positive(j, "a", path),
                                positive(j, "b", path));
      }
      if (kind == "product") {
        allow(j, path, {"kind", "factors"});
        const Json& fs = field(j, "factors", path);
        if (!fs.is_array() || fs.empty()) fail(path + ".factors", "factors must be a nonempty array");
        std::vector<RingPtr> parts;
        for (std::size_t k = 0; k < fs.size(); ++k)
          parts.push_back(ring(fs[k], path + ".factors[" + std::to_string(k) + "]"));
        return product(parts);
      }
      if (kind == "quotient") {
        allow(j, path, {"kind", "ring", "ideal"});
        RingPtr base = ring(field(j, "ring", path), path + ".ring");
        std::vector<Vec> gens = element_list(field(j, "ideal", path), path + ".ideal", *base);
        return quotient(base, Ideal(base, gens));
      }
      if (kind == "structure") {
        allow(j, path, {"kind", "orders", "constants", "unit", "names"});
        RingData data = structure_data(j, path);
        auto r = std::make_shared<FiniteRing>(std::move(data), "structure");
        if (j.contains("names")) {
          const Json& names = j["names"];
          if (!names.is_object()) fail(path + ".names", "names must be an object");
          for (const auto& [name, v] : names.items()) r->set_named(name, element(v, path + ".names." + name, *r));
        }
        return r;
      }
    } catch (const InvalidSpec& e) {
      fail(path, std::string("invalid ring: ") + e.what());
    } catch (const AxiomViolation& e) {
      fail(path, std::string("ring axioms fail: ") + e.what());
    }
    fail(path + ".kind", "unknown ring kind '" + kind + "'");
  }

  RingData structure_data(const Json& j, const std::string& path) {
    Vec orders = integers(field(j, "orders", path), path + ".orders");
    const Json& c = field(j, "constants", path);
    if (!c.is_array() || c.size() != orders.size())
      fail(path + ".constants", "constants must be an r x r array of coordinate vectors");
    std::vector<std::vector<Vec>> constants;
    for (std::size_t a = 0; a < c.size(); ++a) {
      std::string pa = path + ".constants[" + std::to_string(a) + "]";
      if (!c[a].is_array() || c[a].size() != orders.size()) fail(pa, "row must have r entries");
      std::vector<Vec> row;
      for (std::size_t b = 0; b < c[a].size(); ++b) {
        Vec v = integers(c[a][b], pa + "[" + std::to_string(b) + "]");
        if (v.size() != orders.size()) fail(pa + "[" + std::to_string(b) + "]", "vector must have r coordinates");
        row.push_back(std::move(v));
      }
      constants.push_back(std::move(row));
    }
    Vec unit = integers(field(j, "unit", path), path + ".unit");
    if (unit.size() != orders.size()) fail(path + ".unit", "unit must have r coordinates");
    return ring_data_from_constants(orders, constants, unit);
  }

  [[noreturn]] void fail(const std::string& path, const std::string& message) const {
    throw ParseError(message, line_of_path(text_, path), path);
  }

 private:
  const std::string& text_;
  RingPtr ring_;
  std::map<std::string, Vec> elements_;
  std::vector<std::pair<std::string, FgModule>> modules_;
  std::vector<std::pair<std::string, std::vector<Vec>>> sequences_;

  void allow(const Json& j, const std::string& path, std::initializer_list<const char*> keys) const {
    for (const auto& [key, value] : j.items()) {
      (void)value;
      if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return key == k; }))
        fail(path.empty() ? key : path + "." + key, "unknown field '" + key + "'");
    }
  }

  const Json& field(const Json& j, const std::string& key, const std::string& path) const {
    if (!j.contains(key)) fail(path + "." + key, "missing field '" + key + "'");
    return j[key];
  }

  std::string str(const Json& j, const std::string& key, const std::string& path) const {
    const Json& v = field(j, key, path);
    if (!v.is_string()) fail(path + "." + key, "'" + key + "' must be a string");
    return v.get<std::string>();
  }

  Int integer(const Json& v, const std::string& path) const {
    if (v.is_number_integer()) return v.is_number_unsigned() ? Int(v.get<unsigned long>()) : Int(v.get<long>());
    if (v.is_string()) {
      Int out;
      if (out.set_str(v.get<std::string>(), 10) == 0) return out;
    }
    fail(path, "expected an integer");
  }

  Vec integers(const Json& v, const std::string& path) const {
    if (!v.is_array()) fail(path, "expected an array of integers");
    Vec out;
    for (std::size_t k = 0; k < v.size(); ++k) out.push_back(integer(v[k], path + "[" + std::to_string(k) + "]"));
    return out;
  }

  unsigned positive(const Json& j, const std::string& key, const std::string& path) const {
    Int v = integer(field(j, key, path), path + "." + key);
    if (v < 1 || v > 1000000) throw BoundViolation(path + "." + key + " must be a positive integer");
    return unsigned(v.get_ui());
  }

  std::optional<unsigned> optional_positive(const Json& j, const std::string& key, const std::string& path) const {
    if (!j.contains(key)) return std::nullopt;
    return positive(j, key, path);
  }

  const RingPtr& need_ring(const std::string& path) const {
    if (!ring_) fail(path, "this section needs a ring");
    return ring_;
  }

  Vec element(const Json& v, const std::string& path, const FiniteRing& r) const {
    if (v.is_number_integer()) return r.from_integer(integer(v, path));
    if (v.is_array()) {
      Vec c = integers(v, path);
      if (c.size() != r.rank())
        fail(path, "element has " + std::to_string(c.size()) + " coordinates, ring rank is " +
                       std::to_string(r.rank()));
      return r.reduce(c);
    }
    if (v.is_string()) {
      const std::string name = v.get<std::string>();
      if (&r == ring_.get()) {
        auto it = elements_.find(name);
        if (it != elements_.end()) return it->second;
      }
      auto nt = r.named().find(name);
      if (nt != r.named().end()) return nt->second;
      if (name == "one") return r.one();
      if (name == "zero") return r.zero();
      throw UnknownReference("unknown element '" + name + "' at " + path);
    }
    fail(path, "element must be a name, an integer or a coordinate array");
  }

  std::vector<Vec> element_list(const Json& v, const std::string& path, const FiniteRing& r) const {
    if (!v.is_array()) fail(path, "expected an array of elements");
    std::vector<Vec> out;
    for (std::size_t k = 0; k < v.size(); ++k) out.push_back(element(v[k], path + "[" + std::to_string(k) + "]", r));
    return out;
  }

  void elements(const Json& j) {
    if (!j.is_object()) fail("elements", "elements must be an object");
    const FiniteRing& r = *need_ring("elements");
    for (const auto& [name, v] : j.items()) elements_[name] = element(v, "elements." + name, r);
  }

  const FgModule& module_ref(const Json& v, const std::string& path) const {
    if (!v.is_string()) fail(path, "module reference must be a name");
    for (const auto& [name, m] : modules_)
      if (name == v.get<std::string>()) return m;
    throw UnknownReference("unknown module '" + v.get<std::string>() + "' at " + path);
  }

  FgModule module(const Json& j, const std::string& path) {
    const RingPtr& r = need_ring(path);
    if (j.is_string()) return module_ref(j, path);
    if (!j.is_object()) fail(path, "module spec must be an object or a module name");
    std::string kind = str(j, "kind", path);
    try {
      if (kind == "regular") {
        allow(j, path, {"kind"});
        return FgModule::regular(r);
      }
      if (kind == "free") {
        allow(j, path, {"kind", "rank"});
        return FgModule::free(r, positive(j, "rank", path));
      }
      if (kind == "cyclic") {
        allow(j, path, {"kind", "relations"});
        std::vector<std::vector<Vec>> rel;
        for (auto& a : element_list(field(j, "relations", path), path + ".relations", *r)) rel.push_back({a});
        return module_from_presentation(r, 1, rel);
      }
      if (kind == "presentation") {
        allow(j, path, {"kind", "generators", "relations"});
        unsigned s = positive(j, "generators", path);
        const Json& rels = field(j, "relations", path);
        if (!rels.is_array()) fail(path + ".relations", "relations must be an array of rows");
        std::vector<std::vector<Vec>> rel;
        for (std::size_t k = 0; k < rels.size(); ++k) {
          std::string pk = path + ".relations[" + std::to_string(k) + "]";
          auto row = element_list(rels[k], pk, *r);
          if (row.size() != s) fail(pk, "relation must have one entry per generator");
          rel.push_back(std::move(row));
        }
        return module_from_presentation(r, s, rel);
      }
      if (kind == "ideal") {
        allow(j, path, {"kind", "generators"});
        FgModule reg = FgModule::regular(r);
        auto gens = element_list(field(j, "generators", path), path + ".generators", *r);
        return submodule_as_module(reg, generated_submodule(reg, gens)).module;
      }
      if (kind == "dual") {
        allow(j, path, {"kind", "of"});
        return matlis_dual(module(field(j, "of", path), path + ".of"));
      }
      if (kind == "sum") {
        allow(j, path, {"kind", "of"});
        const Json& of = field(j, "of", path);
        if (!of.is_array() || of.empty()) fail(path + ".of", "'of' must be a nonempty array");
        std::vector<FgModule> parts;
        for (std::size_t k = 0; k < of.size(); ++k) parts.push_back(module(of[k], path + ".of[" + std::to_string(k) + "]"));
        return direct_sum(parts);
      }
      if (kind == "hom") {
        allow(j, path, {"kind", "source", "target"});
        return hom_module(module(field(j, "source", path), path + ".source"),
                          module(field(j, "target", path), path + ".target"))
            .module;
      }
      if (kind == "tensor") {
        allow(j, path, {"kind", "left", "right"});
        return tensor_module(module(field(j, "left", path), path + ".left"),
                             module(field(j, "right", path), path + ".right"))
            .module;
      }
      if (kind == "structure") {
        allow(j, path, {"kind", "orders", "actions"});
        return FgModule(r, FinAbGroup(integers(field(j, "orders", path), path + ".orders")),
                        actions(field(j, "actions", path), path + ".actions"));
      }
    } catch (const ModuleAxiomViolation& e) {
      fail(path, std::string("module axioms fail: ") + e.what());
    }
    fail(path + ".kind", "unknown module kind '" + kind + "'");
  }

 public:
  std::vector<IntMatrix> actions(const Json& j, const std::string& path) const {
    if (!j.is_array()) fail(path, "actions must be an array of matrices, one per ring basis element");
    std::vector<IntMatrix> out;
    for (std::size_t k = 0; k < j.size(); ++k) {
      std::string pk = path + "[" + std::to_string(k) + "]";
      if (!j[k].is_array()) fail(pk, "matrix must be an array of rows");
      std::vector<Vec> rows;
      for (std::size_t i = 0; i < j[k].size(); ++i) rows.push_back(integers(j[k][i], pk + "[" + std::to_string(i) + "]"));
      std::size_t cols = rows.empty() ? 0 : rows[0].size();
      for (std::size_t i = 0; i < rows.size(); ++i)
        if (rows[i].size() != cols) fail(pk, "ragged matrix");
      out.push_back(IntMatrix::from_rows(rows, cols));
    }
    return out;
  }

 private:
  void modules(const Json& j) {
    if (!j.is_object()) fail("modules", "modules must be an object");
    for (const auto& [name, spec] : j.items()) {
      FgModule m = module(spec, "modules." + name);
      modules_.emplace_back(name, std::move(m));
    }
  }

  void sequences(const Json& j) {
    if (!j.is_object()) fail("sequences", "sequences must be an object");
    const FiniteRing& r = *need_ring("sequences");
    for (const auto& [name, v] : j.items()) sequences_.emplace_back(name, element_list(v, "sequences." + name, r));
  }

  std::vector<Vec> sequence_ref(const Json& v, const std::string& path) const {
    if (v.is_array()) return element_list(v, path, *need_ring(path));
    if (!v.is_string()) fail(path, "sequence must be a name or an array of elements");
    for (const auto& [name, xs] : sequences_)
      if (name == v.get<std::string>()) return xs;
    throw UnknownReference("unknown sequence '" + v.get<std::string>() + "' at " + path);
  }

  Bounds bounds(const Json& j, const std::string& path, Bounds base, bool strict = true) const {
    if (!j.is_object()) fail(path, "bounds must be an object");
    if (strict) allow(j, path, {"n_max", "m_max", "i_max"});
    if (auto v = optional_positive(j, "n_max", path)) base.n_max = *v;
    if (auto v = optional_positive(j, "m_max", path)) base.m_max = *v;
    if (auto v = optional_positive(j, "i_max", path)) base.i_max = *v;
    if (base.m_max && base.m_max < base.n_max) throw BoundViolation(path + ": m_max must be at least n_max");
    return base;
  }

  void analysis(const Json& raw, const std::string& path, TaskSpec& t) {
    Json j = raw.is_string() ? Json{{"kind", raw}} : raw;
    if (!j.is_object()) fail(path, "analysis entry must be an object or a kind name");
    std::string kind = str(j, "kind", path);
    if (!kAnalysisKinds.count(kind)) fail(path + ".kind", "unknown analysis kind '" + kind + "'");
    allow(j, path, {"kind", "label", "profile", "module", "other", "sequence", "covering", "exponents", "degrees",
                    "element", "ideal", "mode", "battery", "count", "level", "n_max", "m_max", "i_max"});

    AnalysisSpec a;
    a.kind = kind;
    a.bounds = bounds(j, path, t.bounds, false);
    if (j.contains("label")) a.label = str(j, "label", path);

    if (kind == "random_battery") {
      a.battery = j.contains("battery") ? str(j, "battery", path) : "all";
      if (a.battery != "all" && std::none_of(batteries().begin(), batteries().end(),
                                             [&](const BatteryInfo& b) { return b.name == a.battery; }))
        throw UnknownReference("unknown battery '" + a.battery + "' at " + path + ".battery");
      if (j.contains("count")) a.count = positive(j, "count", path);
      if (a.label.empty()) a.label = "battery:" + a.battery;
      t.analyses.push_back(std::move(a));
      return;
    }

    const RingPtr& r = need_ring(path);
    if (j.contains("module")) {
      a.module = module(j["module"], path + ".module");
    } else {
      a.module = modules_.empty() ? FgModule::regular(r) : modules_.front().second;
    }
    if (j.contains("sequence")) {
      a.xs = sequence_ref(j["sequence"], path + ".sequence");
    } else if (j.contains("ideal")) {
      a.xs = sequence_ref(j["ideal"], path + ".ideal");
    } else if (!sequences_.empty()) {
      a.xs = sequences_.front().second;
    }
    if (j.contains("covering")) {
      const Json& c = j["covering"];
      if (!(c.is_string() && c.get<std::string>() == "maximal")) a.covering = sequence_ref(c, path + ".covering");
    }
    if (j.contains("element")) a.element = element(j["element"], path + ".element", *r);
    if (j.contains("other")) a.other = module(j["other"], path + ".other");
    if (j.contains("level")) a.level = positive(j, "level", path);
    if (j.contains("exponents")) {
      for (const Int& e : integers(j["exponents"], path + ".exponents")) {
        if (e < 1) throw BoundViolation(path + ".exponents must be positive");
        a.exponents.push_back(unsigned(e.get_ui()));
      }
    }
    if (j.contains("degrees"))
      for (const Int& e : integers(j["degrees"], path + ".degrees")) a.degrees.push_back(unsigned(e.get_ui()));
    if (j.contains("mode")) {
      std::string mode = str(j, "mode", path);
      if (mode == "proregular") a.mode = CriterionMode::proregular;
      else if (mode == "weak") a.mode = CriterionMode::weak;
      else fail(path + ".mode", "mode must be 'proregular' or 'weak'");
    }

    if (a.xs.empty()) {
      bool ideal = kind == "cartier" || kind == "effective_cartier";
      fail(path + (ideal ? ".ideal" : ".sequence"), kind + " needs a nonempty " + (ideal ? "ideal" : "sequence"));
    }
    const std::size_t k = a.xs.size();
    if (a.bounds.i_max > k && k > 0) throw BoundViolation(path + ": i_max exceeds the sequence length");

    if (kind == "profile") {
      a.profile = j.contains("profile") ? str(j, "profile", path) : "lipman";
      auto pk = profile_kind_from_string(a.profile);
      if (!pk || *pk == ProfileKind::cartier) fail(path + ".profile", "profile must be lipman, gm or weak");
      if (a.label.empty()) a.label = "profile:" + a.profile;
    } else if (kind == "single_element_law") {
      if (k != 1) fail(path + ".sequence", "single_element_law needs a sequence of length 1");
    } else if (kind == "power_stability") {
      if (a.exponents.empty()) a.exponents.assign(k, 2);
      if (a.exponents.size() != k) fail(path + ".exponents", "one exponent per sequence element");
    } else if (kind == "regular_then_bounded" || kind == "cartier") {
      if (!j.contains("element")) fail(path + ".element", kind + " needs an element");
    } else if (kind == "effective_cartier") {
      if (a.covering.empty()) fail(path + ".covering", "effective_cartier needs an explicit covering");
    } else if (kind == "cech_tor_compare") {
      if (!j.contains("other")) fail(path + ".other", "cech_tor_compare needs a second module");
      if (a.degrees.empty()) a.degrees = {0, 1};
    }
    if (a.label.empty()) a.label = kind;

    if (kind == "verify") {
      expand_verify(a, t);
      return;
    }
    t.analyses.push_back(std::move(a));
  }

  static void expand_verify(const AnalysisSpec& base, TaskSpec& t) {
    auto add = [&](const std::string& kind, auto&& tweak) {
      AnalysisSpec a = base;
      a.kind = kind;
      a.label = base.label + ":" + kind;
      tweak(a);
      t.analyses.push_back(std::move(a));
    };
    auto none = [](AnalysisSpec&) {};
    add("finite_proregular", none);
    add("bound_transfer", none);
    if (base.xs.size() == 1) add("single_element_law", none);
    add("power_stability", [](AnalysisSpec& a) { a.exponents.assign(a.xs.size(), 2); });
    add("injective_criterion", [](AnalysisSpec& a) { a.mode = CriterionMode::proregular; });
    add("injective_criterion", [](AnalysisSpec& a) {
      a.mode = CriterionMode::weak;
      a.label += ":weak";
    });
    add("cech_vanishing", none);
    add("colon_identification", none);
    add("local_global", [](AnalysisSpec& a) { a.covering.clear(); });
  }

  SweepSpec sweep(const Json& j, const std::string& path, const Bounds& b) const {
    if (!j.is_object()) fail(path, "sweep must be an object");
    allow(j, path, {"family", "from", "to", "modulus", "sequence", "profile", "track", "entry", "expect", "n_max",
                    "m_max"});
    SweepSpec s;
    std::string family = str(j, "family", path);
    if (family == "truncated_two_power") s.family = Family::truncated_two_power;
    else if (family == "truncated_polynomial") s.family = Family::truncated_polynomial;
    else fail(path + ".family", "family must be truncated_two_power or truncated_polynomial");
    s.from = positive(j, "from", path);
    s.to = positive(j, "to", path);
    if (s.to < s.from) throw BoundViolation(path + ": 'to' must be at least 'from'");
    if (j.contains("modulus")) {
      s.modulus = integer(j["modulus"], path + ".modulus");
      if (s.modulus < 2) throw BoundViolation(path + ".modulus must be at least 2");
    }
    const Json& seq = field(j, "sequence", path);
    if (!seq.is_array() || seq.empty()) fail(path + ".sequence", "sequence must be a nonempty array of names");
    for (std::size_t k = 0; k < seq.size(); ++k) {
      std::string pk = path + ".sequence[" + std::to_string(k) + "]";
      if (!seq[k].is_string()) fail(pk, "family sequences use the names x, one, zero");
      std::string name = seq[k].get<std::string>();
      if (name != "x" && name != "one" && name != "zero") throw UnknownReference("unknown element '" + name + "' at " + pk);
      s.sequence.push_back(name);
    }
    if (j.contains("profile")) {
      s.profile = str(j, "profile", path);
      auto pk = profile_kind_from_string(s.profile);
      if (!pk || *pk == ProfileKind::cartier) fail(path + ".profile", "profile must be lipman, gm or weak");
    }
    if (j.contains("track")) {
      s.track = str(j, "track", path);
      if (s.track != "entry" && s.track != "all" && s.track != "torsion_index")
        fail(path + ".track", "track must be entry, all or torsion_index");
    }
    s.bounds = b;
    if (auto v = optional_positive(j, "n_max", path)) s.bounds.n_max = *v;
    if (auto v = optional_positive(j, "m_max", path)) s.bounds.m_max = *v;
    if (s.bounds.m_max && s.bounds.m_max < s.bounds.n_max) throw BoundViolation(path + ": m_max must be at least n_max");
    if (j.contains("entry")) {
      const Json& e = j["entry"];
      if (!e.is_array() || e.size() != 2) fail(path + ".entry", "entry must be [i, n]");
      s.i = unsigned(integer(e[0], path + ".entry[0]").get_ui());
      s.n = unsigned(integer(e[1], path + ".entry[1]").get_ui());
      if (s.i < 1 || s.i > seq.size() || s.n < 1 || s.n > s.bounds.n_max)
        throw BoundViolation(path + ".entry is outside the profile");
    }
    if (j.contains("expect")) {
      s.expect = str(j, "expect", path);
      if (s.expect != "divergent" && s.expect != "bounded")
        fail(path + ".expect", "expect must be divergent or bounded");
    }
    return s;
  }
};

}  // namespace

TaskSpec parse_spec(const std::string& text) { return Parser(text).parse(); }

namespace {

void ring_axioms(Parser& p, const Json& j, const std::string& path, CheckOutcome& out, RingPtr& ring) {
  if (j.is_object() && j.value("kind", "") == "structure") {
    RingData data = p.structure_data(j, path);
    auto failures = check_ring_axioms(data);
    for (const char* law : {"shape", "well-definedness", "commutativity", "associativity", "unit"}) {
      bool ok = std::none_of(failures.begin(), failures.end(), [&](const AxiomFailure& f) { return f.law == law; });
      out.check(law, ok);
    }
    for (std::size_t k = 0; k < failures.size() && k < 20; ++k) {
      const auto& f = failures[k];
      out.notes.push_back(f.law + " (" + std::to_string(f.i) + "," + std::to_string(f.j) + "," + std::to_string(f.k) +
                          "): " + f.detail);
    }
    if (failures.size() > 20) out.notes.push_back(std::to_string(failures.size() - 20) + " more failures");
    if (failures.empty()) ring = p.ring(j, path);
    return;
  }
  ring = p.ring(j, path);
  out.check("ring_axioms", true);
  out.notes.push_back(ring->label() + ", order " + ring->order().get_str());
}

}  // namespace

Report check_axioms(const std::string& text) {
  Parser p(text);
  Json d = p.document();
  Report r;
  r.command = "axioms";
  r.task = d;
  if (!d.is_object() || !d.contains("ring")) p.fail("ring", "axioms needs a ring section");
  ReportEntry e;
  e.kind = "axioms";
  e.label = "ring";
  CheckOutcome out;
  out.name = "ring_axioms";
  RingPtr ring;
  ring_axioms(p, d["ring"], "ring", out, ring);
  e.outcome = std::move(out);
  r.entries.push_back(std::move(e));

  if (ring && d.contains("modules") && d["modules"].is_object()) {
    for (const auto& [name, spec] : d["modules"].items()) {
      if (!spec.is_object() || spec.value("kind", "") != "structure") continue;
      std::string path = "modules." + name;
      ReportEntry me;
      me.kind = "axioms";
      me.label = "module:" + name;
      CheckOutcome mo;
      mo.name = "module_axioms";
      if (!spec.contains("orders") || !spec.contains("actions")) p.fail(path, "structure module needs orders and actions");
      Vec orders;
      for (const auto& o : spec["orders"]) orders.push_back(o.is_string() ? Int(o.get<std::string>()) : Int(o.get<long>()));
      std::vector<IntMatrix> acts = p.actions(spec["actions"], path + ".actions");
      std::vector<std::string> failures;
      if (acts.size() != ring->rank()) {
        failures.push_back("expected " + std::to_string(ring->rank()) + " action matrices");
      } else {
        failures = FgModule::unchecked(ring, FinAbGroup(orders), acts).check();
      }
      mo.check("module_axioms", failures.empty());
      for (auto& f : failures) mo.notes.push_back(f);
      me.outcome = std::move(mo);
      r.entries.push_back(std::move(me));
    }
  }
  return r;
}

}  // namespace prokit
