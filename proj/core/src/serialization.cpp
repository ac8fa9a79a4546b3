#include "hamlie/serialization.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "hamlie/errors.hpp"
#include "json_detail.hpp"

namespace hamlie {

namespace detail {

namespace {

FieldElem elem_from(const ordered_json& j, const Field& f) {
  if (!j.is_number_unsigned()) throw InputError("field element must be a non-negative integer");
  const auto bits = j.get<std::uint64_t>();
  return f.element(bits);
}

Monomial alpha_from(const ordered_json& j, const Heights& h) {
  if (!j.is_array() || static_cast<int>(j.size()) != h.n()) throw InputError("alpha has the wrong length");
  Monomial m;
  for (int i = 0; i < h.n(); ++i) {
    if (!j[i].is_number_unsigned()) throw InputError("alpha entries must be non-negative integers");
    m[i] = j[i].get<std::uint32_t>();
  }
  return m;
}

}  // namespace

ordered_json field_json(const Field& f) { return {{"k", f.k()}, {"irreducible", f.irreducible()}}; }

Field field_from(const ordered_json& j) {
  if (j.is_null()) return Field(1);
  if (j.is_number_integer()) return Field(j.get<int>());
  if (!j.is_object() || !j.contains("k")) throw InputError("field descriptor needs k");
  const int k = j.at("k").get<int>();
  if (j.contains("irreducible")) return Field(k, j.at("irreducible").get<std::uint32_t>());
  return Field(k);
}

ordered_json heights_json(const Heights& h) { return h.values(); }

Heights heights_from(const ordered_json& j) {
  if (!j.is_array()) throw InputError("heights must be an array");
  return Heights(j.get<std::vector<int>>());
}

ordered_json poly_json(const Poly& p) {
  ordered_json terms = ordered_json::array();
  for (const auto& [m, c] : p.terms()) {
    std::vector<std::uint32_t> alpha(m.a.begin(), m.a.begin() + p.heights().n());
    terms.push_back({{"alpha", alpha}, {"coeff", c.bits}});
  }
  return {{"heights", heights_json(p.heights())}, {"field", field_json(p.field())}, {"terms", terms}};
}

Poly poly_from(const ordered_json& j, const Heights& h, const Field& f) {
  Poly p(h, f);
  const ordered_json& terms = j.is_array() ? j : j.at("terms");
  for (const auto& t : terms) p.add_term(alpha_from(t.at("alpha"), h), elem_from(t.at("coeff"), f));
  return p;
}

ordered_json form_json(const Form2& w) {
  ordered_json squares = ordered_json::object(), mixed = ordered_json::object();
  for (int i = 0; i < w.n(); ++i) squares[std::to_string(i + 1)] = poly_json(w.square(i));
  for (int i = 0; i < w.n(); ++i)
    for (int j = i + 1; j < w.n(); ++j)
      mixed[std::to_string(i + 1) + "," + std::to_string(j + 1)] = poly_json(w.mixed(i, j));
  return {{"heights", heights_json(w.heights())}, {"field", field_json(w.field())}, {"squares", squares},
          {"mixed", mixed}};
}

Form2 form_from(const ordered_json& j) {
  const Heights h = heights_from(j.at("heights"));
  const Field f = field_from(j.value("field", ordered_json()));
  Form2 w(h, f);
  auto index = [&](const std::string& s) {
    const int i = std::stoi(s) - 1;
    if (i < 0 || i >= h.n()) throw InputError("form index out of range: " + s);
    return i;
  };
  if (j.contains("squares"))
    for (const auto& [k, v] : j.at("squares").items()) w.square(index(k)) = poly_from(v, h, f);
  if (j.contains("mixed"))
    for (const auto& [k, v] : j.at("mixed").items()) {
      const auto comma = k.find(',');
      if (comma == std::string::npos) throw InputError("mixed key must look like \"1,2\"");
      const int a = index(k.substr(0, comma)), b = index(k.substr(comma + 1));
      if (a == b) throw InputError("mixed key repeats an index");
      w.mixed(a, b) = poly_from(v, h, f);
    }
  return w;
}

ordered_json vec_json(const Vec& v) {
  ordered_json out = ordered_json::array();
  for (FieldElem e : v) out.push_back(e.bits);
  return out;
}

}  // namespace detail

using detail::ordered_json;

namespace {

ordered_json parse(const std::string& text) {
  try {
    return ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

// Wraps nlohmann type/key errors as InputError.
template <typename Fn>
auto guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const ordered_json::exception& e) {
    throw InputError(std::string("bad document: ") + e.what());
  }
}

ordered_json gen_json(const AutoGen& g) {
  return std::visit(
      [](const auto& x) -> ordered_json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, LinearGen>) {
          ordered_json m = ordered_json::array();
          for (int i = 0; i < x.m.rows(); ++i) m.push_back(detail::vec_json(x.m.row(i)));
          ordered_json out{{"kind", "linear"}, {"m", m}};
          if (x.target) out["target"] = detail::heights_json(*x.target);
          return out;
        } else if constexpr (std::is_same_v<T, AddSubGen>) {
          return {{"kind", "addsub"}, {"i", x.i + 1}, {"j", x.j + 1}, {"t", x.t}, {"c", x.c.bits}};
        } else if constexpr (std::is_same_v<T, ScaleGen>) {
          return {{"kind", "scale"}, {"c", detail::vec_json(x.c)}};
        } else {
          return {{"kind", "subst"}, {"i", x.i + 1}, {"h", detail::poly_json(x.h)}};
        }
      },
      g);
}

AutoGen gen_from(const ordered_json& j, const Heights& h, const Field& f) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "addsub") {
    return AddSubGen{j.at("i").get<int>() - 1, j.at("j").get<int>() - 1, j.value("t", 0),
                     f.element(j.value("c", 1u))};
  }
  if (kind == "scale") {
    std::vector<FieldElem> c;
    for (const auto& e : j.at("c")) c.push_back(f.element(e.get<std::uint64_t>()));
    return ScaleGen{c};
  }
  if (kind == "linear") {
    const auto& rows = j.at("m");
    Matrix m(static_cast<int>(rows.size()), h.n(), f);
    for (int r = 0; r < m.rows(); ++r) {
      if (static_cast<int>(rows[r].size()) != h.n()) throw InputError("linear matrix row has the wrong length");
      for (int c = 0; c < h.n(); ++c) m(r, c) = f.element(rows[r][c].get<std::uint64_t>());
    }
    std::optional<Heights> target;
    if (j.contains("target")) target = detail::heights_from(j.at("target"));
    return LinearGen{m, target};
  }
  if (kind == "subst") {
    return SubstGen{j.at("i").get<int>() - 1, detail::poly_from(j.at("h"), h, f)};
  }
  throw InputError("unknown generator kind: " + kind);
}

}  // namespace

std::string poly_to_json(const Poly& p) { return detail::poly_json(p).dump(2); }

Poly poly_from_json(const std::string& text) {
  return guarded([&] {
    const ordered_json j = parse(text);
    return detail::poly_from(j, detail::heights_from(j.at("heights")), detail::field_from(j.value("field", ordered_json())));
  });
}

std::string form_to_json(const Form2& w) { return detail::form_json(w).dump(2); }

Form2 form_from_json(const std::string& text, const std::optional<Heights>& h, const Field& f) {
  std::string tag = text;
  while (!tag.empty() && std::isspace(static_cast<unsigned char>(tag.back()))) tag.pop_back();
  if (tag.size() >= 2 && tag.front() == '"' && tag.back() == '"') tag = tag.substr(1, tag.size() - 2);
  if (const int t = builtin_tag(tag)) {
    if (!h) throw InputError("builtin form " + tag + " needs heights");
    return builtin_form(t, *h, f);
  }
  return guarded([&] { return detail::form_from(parse(text)); });
}

std::string admissible_to_json(const Admissible& s) {
  ordered_json word = ordered_json::array();
  for (const AutoGen& g : s.word) word.push_back(gen_json(g));
  ordered_json out{{"heights", detail::heights_json(s.source)}, {"field", detail::field_json(s.field)}, {"word", word}};
  return out.dump(2);
}

Admissible admissible_from_json(const std::string& text, const Field& fallback) {
  return guarded([&] {
    const ordered_json j = parse(text);
    const Heights h = detail::heights_from(j.at("heights"));
    const Field f = j.contains("field") ? detail::field_from(j.at("field")) : fallback;
    Admissible s = Admissible::identity(h, f);
    Heights cur = h;
    for (const auto& g : j.at("word")) {
      AutoGen gen = gen_from(g, cur, f);
      cur = target_heights(gen, cur);
      s.word.push_back(std::move(gen));
    }
    return s;
  });
}

std::string algebra_to_json(const LieAlg& l, const std::optional<AlgebraSpec>& spec) {
  ordered_json out;
  out["field"] = detail::field_json(l.field());
  ordered_json sj = {{"name", l.name}};
  if (spec) {
    sj["heights"] = detail::heights_json(spec->heights);
    sj["form"] = spec->form_tag == 0 ? std::string("explicit") : "omega" + std::to_string(spec->form_tag);
    if (spec->form_tag == 0) sj["form_data"] = detail::form_json(spec->form());
    sj["field_exp"] = spec->field_exp;
    sj["variant"] = variant_name(spec->variant);
  }
  out["spec"] = sj;
  out["dim"] = l.dim();
  ordered_json basis = ordered_json::array();
  if (!l.monomials().empty()) {
    const int n = spec ? spec->heights.n() : 3;
    for (const Monomial& m : l.monomials()) basis.push_back(std::vector<std::uint32_t>(m.a.begin(), m.a.begin() + n));
  }
  out["basis"] = basis;
  out["labels"] = l.labels();
  out["degrees"] = l.degrees();
  ordered_json sc = ordered_json::array();
  for (int a = 0; a < l.dim(); ++a)
    for (int b = a; b < l.dim(); ++b) {
      const SparseVec& v = l.bracket(a, b);
      if (v.empty()) continue;
      ordered_json c = ordered_json::array();
      for (const auto& [g, x] : v) c.push_back({g, x.bits});
      sc.push_back({{"a", a}, {"b", b}, {"c", c}});
    }
  out["sc"] = sc;
  return out.dump(1);
}

LieAlg algebra_from_json(const std::string& text) {
  return guarded([&] {
    const ordered_json j = parse(text);
    const Field f = detail::field_from(j.value("field", ordered_json()));
    const int d = j.at("dim").get<int>();
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
    else
      for (int i = 0; i < d; ++i) labels.push_back("e" + std::to_string(i + 1));
    if (static_cast<int>(labels.size()) != d) throw InputError("label count differs from dim");
    std::vector<int> degrees;
    if (j.contains("degrees")) degrees = j.at("degrees").get<std::vector<int>>();
    LieAlg l(f, labels, degrees);
    if (j.contains("spec")) l.name = j.at("spec").value("name", std::string());
    const auto& basis = j.value("basis", ordered_json::array());
    if (!basis.empty()) {
      if (static_cast<int>(basis.size()) != d) throw InputError("basis size differs from dim");
      std::vector<Monomial> monos;
      for (const auto& a : basis) {
        Monomial m;
        for (std::size_t i = 0; i < a.size(); ++i) m[static_cast<int>(i)] = a[i].get<std::uint32_t>();
        monos.push_back(m);
      }
      l.set_monomials(monos);
    }
    for (const auto& e : j.at("sc")) {
      SparseVec v;
      for (const auto& c : e.at("c")) v.emplace_back(c.at(0).get<int>(), f.element(c.at(1).get<std::uint64_t>()));
      std::sort(v.begin(), v.end());
      l.set_bracket(e.at("a").get<int>(), e.at("b").get<int>(), v);
    }
    return l;
  });
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << text;
  if (text.empty() || text.back() != '\n') out << '\n';
}

}  // namespace hamlie
