#include "hamlie/report.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include "hamlie/automorphism.hpp"
#include "hamlie/bilinear.hpp"
#include "hamlie/errors.hpp"
#include "hamlie/hamiltonian.hpp"
#include "hamlie/lie_structure.hpp"
#include "hamlie/serialization.hpp"
#include "json_detail.hpp"

#ifndef HAMLIE_VERSION
#define HAMLIE_VERSION "0.1.0"
#endif

namespace hamlie {

using detail::ordered_json;

namespace {

Heights heights_of(const ordered_json& in) { return detail::heights_from(in.at("heights")); }
Field field_of(const ordered_json& in) { return Field(in.value("field_exp", 1)); }

int form_tag_of(const ordered_json& in) {
  const int t = builtin_tag(in.value("form", std::string("omega1")));
  if (!t) throw InputError("unknown form " + in.value("form", std::string()));
  return t;
}

AlgebraSpec spec_of(const ordered_json& in) {
  AlgebraSpec s;
  s.heights = heights_of(in);
  s.form_tag = form_tag_of(in);
  s.field_exp = in.value("field_exp", 1);
  const auto v = parse_variant(in.value("variant", std::string("P")));
  if (!v) throw InputError("unknown variant");
  s.variant = *v;
  return s;
}

std::uint64_t estimated_dim(const ordered_json& in) {
  if (!in.contains("heights")) return 0;
  const Heights h = heights_of(in);
  std::uint64_t d = (1ull << h.total()) - 1;
  if (in.value("variant", std::string("P")) == "Ptilde") d += 3;
  return d;
}

bool is_xbar_line(const LieAlg& l, const std::vector<Vec>& argmin, const Heights& h) {
  if (argmin.size() != 1 || l.monomials().empty()) return false;
  const Monomial top = top_monomial(h);
  for (int a = 0; a < l.dim(); ++a)
    if (l.monomials()[a] == top) return argmin[0] == l.unit(a);
  return false;
}

ordered_json check_form_predicates(const ordered_json& in) {
  const Form2 w = builtin_form(form_tag_of(in), heights_of(in), field_of(in));
  return {{"closed", is_closed(w).closed}, {"nondegenerate", is_nondegenerate(w)},
          {"nonalternating", is_nonalternating(w)}};
}

ordered_json check_elimination(const ordered_json& in) {
  const Heights h = heights_of(in);
  const Field f = field_of(in);
  int cases = 0, exact = 0;
  for (FieldElem c13 : f.elements())
    for (FieldElem c23 : f.elements()) {
      ++cases;
      const Elimination e = eliminate_cross_term(h, f, c13, c23);
      const Form2 image = apply_form2(e.word, cross_term_form(h, f, c13, c23));
      if (e.word.validate().ok && image == e.result && image == cross_term_form(e.word.target(), f, e.c, kZero))
        ++exact;
    }
  return {{"exact", exact == cases}, {"cases", cases}};
}

ordered_json check_scale(const ordered_json& in) {
  const Heights h = heights_of(in);
  const Field f = field_of(in);
  const FieldElem a = in.contains("a") ? f.element(in.at("a").get<std::uint64_t>()) : f.generator();
  const Admissible s{h, f, {ScaleGen{{kOne, a, f.sqrt(a)}}}};
  return {{"exact", apply_form2(s, builtin_form(4, h, f)) == builtin_form(4, h, f).scaled(a)}};
}

ordered_json check_swap(const ordered_json& in) {
  const Heights h = heights_of(in);
  const Field f = field_of(in);
  const Admissible s{h, f, {swap_gen(0, 1, h, f)}};
  // c13 term on (m1, m2, 1) becomes the c23 term on (m2, m1, 1).
  Form2 w = cross_term_form(h, f, kOne, kZero);
  Form2 goal = cross_term_form(h.swapped(0, 1), f, kZero, kOne);
  return {{"exact", s.validate().ok && apply_form2(s, w) == goal}};
}

ordered_json check_bilinear_sweep(const ordered_json& in) {
  const Field f = field_of(in);
  const auto forms = all_nonalternating_forms(f);
  std::vector<std::vector<int>> hs;
  const int top = in.value("max_height", 3);
  for (int a = 1; a <= top; ++a)
    for (int b = 1; b <= top; ++b)
      for (int c = 1; c <= top; ++c)
        if (!(a == 1 && b == 1 && c == 1)) hs.push_back({a, b, c});
  long pairs = 0, mismatches = 0, unsound = 0;
  for (const auto& ha : hs)
    for (const Matrix& ba : forms) {
      const BilinPair a{Heights(ha), ba};
      const Canonical ca = canonicalize(a);
      if (!(ca.change.transpose() * ba * ca.change == canonical_matrix(ca.tag, f))) ++unsound;
      auto sa = ha;
      std::sort(sa.begin(), sa.end());
      for (const auto& hb : hs) {
        auto sb = hb;
        std::sort(sb.begin(), sb.end());
        if (sa != sb) {
          pairs += static_cast<long>(forms.size());
          for (const Matrix& bb : forms)
            if (pairs_equivalent(ca, canonicalize(BilinPair{Heights(hb), bb}))) ++mismatches;
          continue;
        }
        const auto orbit = congruence_orbit(a, Heights(hb));
        for (const Matrix& bb : forms) {
          ++pairs;
          const bool truth = orbit.count(pack_upper(bb)) > 0;
          if (truth != pairs_equivalent(ca, canonicalize(BilinPair{Heights(hb), bb}))) ++mismatches;
        }
      }
    }
  return {{"mismatches", mismatches}, {"pairs", pairs}, {"unsound", unsound}};
}

ordered_json check_bilinear_invariants(const ordered_json& in) {
  const Field f = field_of(in);
  const std::string tag = in.at("tag").get<std::string>();
  BilinTag t = tag == "B1" ? BilinTag::B1 : tag == "B2" ? BilinTag::B2 : BilinTag::B3;
  const auto n = n_invariants(BilinPair{heights_of(in), canonical_matrix(t, f)});
  return {{"n", n}, {"has_zero", std::find(n.begin(), n.end(), 0) != n.end()}};
}

ordered_json check_bilinear_canonicalize(const ordered_json& in) {
  const Field f = field_of(in);
  std::array<FieldElem, 6> u;
  const auto m = in.at("matrix").get<std::vector<std::uint64_t>>();
  if (m.size() != 6) throw InputError("matrix needs 6 upper-triangle entries");
  for (int i = 0; i < 6; ++i) u[i] = f.element(m[i]);
  const Canonical c = canonicalize(BilinPair::from_upper(heights_of(in), f, u));
  return {{"tag", tag_name(c.tag)}, {"rewritten", c.rewritten}, {"heights", c.heights.values()}};
}

ordered_json check_classify(const ordered_json& in, const ordered_json& expected, std::uint64_t seed) {
  const AlgebraSpec spec = spec_of(in);
  const LieAlg l = build_algebra(spec);
  ordered_json m;
  m["algebra"] = spec.name();
  m["dim"] = l.dim();
  for (const auto& [key, _] : expected.items()) {
    if (key == "dim") continue;
    if (key == "simple") {
      const SimplicityResult s = is_simple(l, seed);
      m[key] = s.certified ? ordered_json(s.simple) : ordered_json();
    } else if (key == "certifiers_agree") {
      const SimplicityResult e = is_simple_exhaustive(l);
      const SimplicityResult n = is_simple_norton(l, seed);
      m[key] = n.certified && e.simple == n.simple;
    } else if (key == "derived") {
      m[key] = derived_dims(l);
    } else if (key == "center") {
      m[key] = center(l).rows();
    } else if (key == "R" || key == "argmin_xbar") {
      if (m.contains("R")) {
        continue;
      }
      const auto mode = parse_mode(in.value("mode", std::string("exhaustive")));
      if (!mode) throw InputError("unknown rank mode");
      const MinRank r = min_ad_rank(l, *mode, seed);
      m["R"] = r.R;
      m["argmin_xbar"] = is_xbar_line(l, r.argmin, spec.heights);
      m["argmin_size"] = r.argmin.size();
    } else if (key == "jacobi") {
      m[key] = check_jacobi(l).holds;
    } else if (key == "alternation") {
      m[key] = check_alternation(l, seed);
    } else if (key == "graded") {
      m[key] = grading_profile(l).dims;
    } else if (key == "normalizer_top") {
      const auto top = top_line(l);
      m[key] = top ? normalizer_of_span(l, Matrix::from_rows(l.field(), l.dim(), {*top})).rows() : -1;
    } else {
      throw InputError("unknown classify key " + key);
    }
  }
  return m;
}

ordered_json check_fingerprints(const ordered_json& in, std::uint64_t seed) {
  const Heights h = heights_of(in);
  std::vector<Fingerprint> fps;
  for (const auto& f : in.at("forms")) {
    ordered_json one = in;
    one["form"] = f;
    fps.push_back(fingerprint(build_algebra(spec_of(one)), seed));
  }
  bool distinct = true;
  for (std::size_t i = 0; i < fps.size(); ++i)
    for (std::size_t j = i + 1; j < fps.size(); ++j) distinct = distinct && fingerprints_distinct(fps[i], fps[j]);
  ordered_json prints = ordered_json::array();
  for (const auto& fp : fps) prints.push_back(fp.str());
  return {{"pairwise_distinct", distinct}, {"fingerprints", prints}};
}

ordered_json check_gr(const ordered_json& in) {
  ordered_json w4 = in, w1 = in;
  w4["form"] = "omega4";
  w1["form"] = "omega1";
  return {{"equal", graded_algebra(build_algebra(spec_of(w4))) == build_algebra(spec_of(w1))}};
}

ordered_json run_check(const std::string& check, const ordered_json& in, const ordered_json& expected,
                       std::uint64_t seed) {
  if (check == "form-predicates") return check_form_predicates(in);
  if (check == "elimination") return check_elimination(in);
  if (check == "scale-omega4") return check_scale(in);
  if (check == "swap") return check_swap(in);
  if (check == "bilinear-sweep") return check_bilinear_sweep(in);
  if (check == "bilinear-invariants") return check_bilinear_invariants(in);
  if (check == "bilinear-canonicalize") return check_bilinear_canonicalize(in);
  if (check == "classify") return check_classify(in, expected, seed);
  if (check == "fingerprints-distinct") return check_fingerprints(in, seed);
  if (check == "gr-consistency") return check_gr(in);
  throw InputError("unknown check " + check);
}

bool matches(const ordered_json& expected, const ordered_json& measured) {
  for (const auto& [key, v] : expected.items())
    if (!measured.contains(key) || measured.at(key) != v) return false;
  return true;
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

int Report::count(const std::string& status) const {
  return static_cast<int>(std::count_if(results.begin(), results.end(),
                                        [&](const ScenarioResult& r) { return r.status == status; }));
}

std::vector<std::string> known_suites() { return {"forms", "bilinear", "algebras", "invariants", "all"}; }

std::string default_scenarios_path() {
  if (const char* env = std::getenv("HAMLIE_SCENARIOS")) return env;
#ifdef HAMLIE_DATA_DIR
  return std::string(HAMLIE_DATA_DIR) + "/scenarios.json";
#else
  return "scenarios.json";
#endif
}

Report run_verify(const VerifyOptions& opt) {
  const auto suites = known_suites();
  if (std::find(suites.begin(), suites.end(), opt.suite) == suites.end())
    throw InputError("unknown suite " + opt.suite);
  const std::string path = opt.scenarios_path.empty() ? default_scenarios_path() : opt.scenarios_path;
  ordered_json registry;
  try {
    registry = ordered_json::parse(read_file(path));
  } catch (const ordered_json::exception& e) {
    throw InputError("malformed scenario registry " + path + ": " + e.what());
  }
  if (registry.is_object()) registry = registry.at("scenarios");
  if (!registry.is_array()) throw InputError("scenario registry must be an array");

  std::vector<ordered_json> chosen;
  for (const auto& s : registry)
    if (opt.suite == "all" || s.value("suite", std::string()) == opt.suite) chosen.push_back(s);

  Report report{opt.suite, opt.max_dim, opt.seed, std::vector<ScenarioResult>(chosen.size())};
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < chosen.size(); i = next++) {
      const ordered_json& s = chosen[i];
      ScenarioResult& r = report.results[i];
      r.id = s.value("id", "scenario-" + std::to_string(i));
      r.suite = s.value("suite", std::string());
      r.description = s.value("description", std::string());
      r.anchor = s.value("anchor", std::string());
      r.provenance = s.value("provenance", std::string());
      r.budget = s.value("budget_s", 60.0);
      const ordered_json in = s.value("inputs", ordered_json::object());
      const ordered_json expected = s.value("expected", ordered_json::object());
      r.expected = expected.dump();
      if (estimated_dim(in) > static_cast<std::uint64_t>(opt.max_dim)) {
        r.status = "skipped";
        r.detail = "dimension above --max-dim";
        continue;
      }
      const auto t0 = std::chrono::steady_clock::now();
      try {
        const ordered_json measured = run_check(s.at("check").get<std::string>(), in, expected, opt.seed);
        r.measured = measured.dump();
        r.status = matches(expected, measured) ? "pass" : "fail";
      } catch (const std::exception& e) {
        r.status = "error";
        r.detail = e.what();
      }
      r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      if (r.seconds > r.budget) {
        std::cerr << "warning: " << r.id << " took " << r.seconds << " s (budget " << r.budget << " s)\n";
        if (opt.strict_time && r.status == "pass") {
          r.status = "fail";
          r.detail = "over time budget";
        }
      }
    }
  };
  const int threads = opt.threads > 0 ? opt.threads
                                      : std::max(1, std::min<int>(static_cast<int>(std::thread::hardware_concurrency()), 8));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return report;
}

std::string emit(const Report& r, const std::string& format, bool timings) {
  if (format == "json") {
    ordered_json out;
    out["header"] = {{"tool", "hamlie"},
                     {"version", HAMLIE_VERSION},
                     {"field", detail::field_json(Field(1))},
                     {"suite", r.suite},
                     {"max_dim", r.max_dim},
                     {"seed", r.seed}};
    ordered_json results = ordered_json::array();
    for (const auto& s : r.results) {
      ordered_json j{{"id", s.id},
                     {"suite", s.suite},
                     {"description", s.description},
                     {"anchor", s.anchor},
                     {"provenance", s.provenance},
                     {"status", s.status},
                     {"expected", s.expected.empty() ? ordered_json() : ordered_json::parse(s.expected)},
                     {"measured", s.measured.empty() ? ordered_json() : ordered_json::parse(s.measured)}};
      if (!s.detail.empty()) j["detail"] = s.detail;
      if (timings) j["seconds"] = s.seconds;
      results.push_back(j);
    }
    out["results"] = results;
    out["summary"] = {{"pass", r.count("pass")}, {"fail", r.count("fail")}, {"error", r.count("error")},
                      {"skipped", r.count("skipped")}};
    return out.dump(2) + "\n";
  }
  if (format == "md") {
    std::ostringstream os;
    os << "# hamlie verification report\n\n";
    os << "- version: " << HAMLIE_VERSION << "\n- suite: " << r.suite << "\n- max dim: " << r.max_dim
       << "\n- seed: " << r.seed << "\n- summary: " << r.count("pass") << " pass, " << r.count("fail") << " fail, "
       << r.count("error") << " error, " << r.count("skipped") << " skipped\n\n";
    // One row per algebra, merged across the scenarios that measured it.
    std::vector<std::string> names;
    std::map<std::string, ordered_json> rows;
    for (const auto& s : r.results) {
      if (s.measured.empty()) continue;
      const ordered_json m = ordered_json::parse(s.measured);
      if (!m.contains("algebra")) continue;
      const std::string name = m.at("algebra").get<std::string>();
      if (!rows.count(name)) names.push_back(name);
      for (const auto& [k, v] : m.items()) rows[name][k] = v;
    }
    if (!names.empty()) {
      os << "## Classification\n\n| algebra | dim | simple | R |\n|---|---|---|---|\n";
      for (const auto& name : names) {
        const ordered_json& m = rows[name];
        auto cell = [&](const char* k) { return m.contains(k) ? m.at(k).dump() : std::string("-"); };
        os << "| " << name << " | " << cell("dim") << " | " << cell("simple") << " | " << cell("R") << " |\n";
      }
      os << "\n";
    }
    os << "## Scenarios\n\n| id | status | expected | measured |";
    if (timings) os << " seconds |";
    os << "\n|---|---|---|---|" << (timings ? "---|" : "") << "\n";
    for (const auto& s : r.results) {
      os << "| " << s.id << " | " << s.status << " | `" << s.expected << "` | `"
         << (s.measured.empty() ? s.detail : s.measured) << "` |";
      if (timings) os << " " << s.seconds << " |";
      os << "\n";
    }
    return os.str();
  }
  if (format == "csv") {
    std::ostringstream os;
    os << "id,suite,status,expected,measured,detail" << (timings ? ",seconds" : "") << "\n";
    for (const auto& s : r.results) {
      os << csv_quote(s.id) << ',' << csv_quote(s.suite) << ',' << s.status << ',' << csv_quote(s.expected) << ','
         << csv_quote(s.measured) << ',' << csv_quote(s.detail);
      if (timings) os << ',' << s.seconds;
      os << "\n";
    }
    return os.str();
  }
  throw InputError("unknown format " + format);
}

std::string analyze(const LieAlg& l, const std::vector<std::string>& checks, const std::string& mode,
                    std::uint64_t seed, const std::string& format) {
  ordered_json out;
  out["field"] = detail::field_json(l.field());
  out["algebra"] = l.name;
  out["dim"] = l.dim();
  for (const std::string& c : checks) {
    if (c == "simple") {
      const SimplicityResult s = is_simple(l, seed);
      ordered_json j{{"simple", s.simple}, {"certified", s.certified}, {"method", s.method}};
      if (s.witness) j["witness_dim"] = s.witness->rows();
      out[c] = j;
    } else if (c == "derived") {
      out[c] = derived_dims(l);
    } else if (c == "center") {
      out[c] = center(l).rows();
    } else if (c == "rank-invariant") {
      const auto m = parse_mode(mode);
      if (!m) throw InputError("unknown mode " + mode);
      const MinRank r = min_ad_rank(l, *m, seed);
      ordered_json argmin = ordered_json::array();
      for (const Vec& v : r.argmin) {
        std::string s;
        for (int a = 0; a < l.dim(); ++a)
          if (!v[a].is_zero()) {
            if (!s.empty()) s += " + ";
            if (v[a] != kOne) s += std::to_string(v[a].bits) + "*";
            s += l.labels()[a];
          }
        argmin.push_back(s);
      }
      out[c] = {{"R", r.R}, {"mode", mode_name(r.mode)}, {"exact", r.exact}, {"examined", r.examined},
                {"argmin", argmin}};
    } else if (c == "normalizer") {
      const auto top = top_line(l);
      out[c] = top ? normalizer_of_span(l, Matrix::from_rows(l.field(), l.dim(), {*top})).rows() : -1;
    } else if (c == "grading") {
      const GradingProfile g = grading_profile(l);
      out[c] = {{"min_degree", g.min_degree}, {"dims", g.dims}};
    } else if (c == "jacobi") {
      out[c] = check_jacobi(l).holds;
    } else {
      throw InputError("unknown check " + c);
    }
  }
  if (format == "json") return out.dump(2) + "\n";
  if (format == "md") {
    std::ostringstream os;
    os << "# " << (l.name.empty() ? std::string("algebra") : l.name) << "\n\n| check | result |\n|---|---|\n";
    os << "| dim | " << l.dim() << " |\n";
    for (const std::string& c : checks) os << "| " << c << " | `" << out[c].dump() << "` |\n";
    return os.str();
  }
  throw InputError("analyze supports json and md output");
}

}  // namespace hamlie
