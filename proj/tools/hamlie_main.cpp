#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <sstream>

#include "hamlie/automorphism.hpp"
#include "hamlie/bilinear.hpp"
#include "hamlie/errors.hpp"
#include "hamlie/forms.hpp"
#include "hamlie/hamiltonian.hpp"
#include "hamlie/report.hpp"
#include "hamlie/serialization.hpp"

#include <json.hpp>

using namespace hamlie;
using json = nlohmann::ordered_json;

namespace {

struct Globals {
  int field_exp = 1;
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "json";
};

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stoi(item, &used));
      if (used != item.size()) throw InputError("");
    } catch (const std::exception&) {
      throw InputError("not an integer list: " + s);
    }
  }
  return v;
}

std::vector<std::string> parse_words(const std::string& s) {
  std::vector<std::string> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) v.push_back(item);
  return v;
}

void output(const Globals& g, const std::string& text) {
  if (g.out.empty())
    std::cout << text;
  else
    write_file(g.out, text);
}

/// A builtin tag or a path to a form document.
Form2 load_form(const std::string& arg, const std::optional<Heights>& h, const Field& f) {
  if (std::filesystem::exists(arg)) return form_from_json(read_file(arg), h, f);
  return form_from_json(arg, h, f);
}

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c).bits);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hamiltonian Lie algebras in three variables over GF(2^k)"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--field-exp", g.field_exp, "field GF(2^k)")->check(CLI::Range(1, 16));
  app.add_option("--seed", g.seed, "random seed");
  app.add_option("--out", g.out, "output path (default stdout)");
  app.add_option("--format", g.format, "json, md or csv")->check(CLI::IsMember({"json", "md", "csv"}));

  std::string heights, form = "omega1", variant = "P";
  auto* build = app.add_subcommand("build", "build structure constants");
  build->add_option("--heights", heights, "m1,m2,m3")->required();
  build->add_option("--form", form, "omega1..omega4 or a form file");
  build->add_option("--variant", variant, "P, Ptilde or P1");

  std::string in, checks = "simple,derived,center,rank-invariant", mode = "exhaustive";
  auto* an = app.add_subcommand("analyze", "structural checks on a built algebra");
  an->add_option("--in", in, "algebra file")->required();
  an->add_option("--checks", checks, "simple,derived,center,rank-invariant,normalizer,grading,jacobi");
  an->add_option("--mode", mode, "exhaustive, homogeneous or sampled");
  an->add_option("--report", g.format, "json or md");

  std::string matrix;
  auto* cb = app.add_subcommand("classify-bilinear", "canonical class of a flagged bilinear form");
  cb->add_option("--heights", heights, "m1,m2,m3")->required();
  cb->add_option("--matrix", matrix, "b11,b12,b13,b22,b23,b33")->required();

  std::string form_checks = "closed,nondeg,nonalt";
  auto* fm = app.add_subcommand("form", "predicates of a 2-form");
  fm->add_option("--heights", heights, "m1,m2,m3");
  fm->add_option("--form", form, "omega1..omega4 or a form file");
  fm->add_option("--check", form_checks, "closed, nondeg, nonalt (comma separated)");

  std::string auto_path, poly_path;
  auto* aa = app.add_subcommand("apply-auto", "apply an admissible automorphism");
  aa->add_option("--auto", auto_path, "automorphism file")->required();
  aa->add_option("--form", form, "omega1..omega4 or a form file");
  aa->add_option("--poly", poly_path, "polynomial file (instead of a form)");

  VerifyOptions vo;
  bool timings = false;
  auto* vf = app.add_subcommand("verify", "run the scenario registry");
  vf->add_option("--suite", vo.suite, "forms, bilinear, algebras, invariants or all");
  vf->add_option("--max-dim", vo.max_dim, "skip algebras above this dimension");
  vf->add_option("--scenarios", vo.scenarios_path, "scenario registry");
  vf->add_option("--threads", vo.threads, "worker threads");
  vf->add_flag("--strict-time", vo.strict_time, "over-budget scenarios fail");
  vf->add_flag("--timings", timings, "include timings in the report");

  for (auto* s : {build, an, cb, fm, aa, vf}) s->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const Field field(g.field_exp);
  try {
    if (*build) {
      AlgebraSpec spec;
      spec.heights = Heights(parse_ints(heights));
      spec.field_exp = g.field_exp;
      const auto v = parse_variant(variant);
      if (!v) throw InputError("unknown variant " + variant);
      spec.variant = *v;
      spec.form_tag = builtin_tag(form);
      if (!spec.form_tag) spec.explicit_form = load_form(form, spec.heights, field);
      output(g, algebra_to_json(build_algebra(spec), spec));
    } else if (*an) {
      const LieAlg l = algebra_from_json(read_file(in));
      output(g, analyze(l, parse_words(checks), mode, g.seed, g.format));
    } else if (*cb) {
      const auto m = parse_ints(matrix);
      if (m.size() != 6) throw InputError("--matrix needs 6 entries");
      std::array<FieldElem, 6> u;
      for (int i = 0; i < 6; ++i) {
        if (m[i] < 0) throw InputError("matrix entry outside the field");
        u[i] = field.element(static_cast<std::uint64_t>(m[i]));
      }
      const BilinPair p = BilinPair::from_upper(Heights(parse_ints(heights)), field, u);
      const Canonical c = canonicalize(p);
      json j{{"tag", tag_name(c.tag)}, {"change", matrix_json(c.change)}, {"n_invariants", n_invariants(p)},
             {"rewritten", c.rewritten}};
      output(g, j.dump(2) + "\n");
    } else if (*fm) {
      std::optional<Heights> h;
      if (!heights.empty()) h = Heights(parse_ints(heights));
      const Form2 w = load_form(form, h, field);
      json j;
      bool all = true;
      for (const std::string& c : parse_words(form_checks)) {
        bool r;
        if (c == "closed")
          r = is_closed(w).closed;
        else if (c == "nondeg")
          r = is_nondegenerate(w);
        else if (c == "nonalt")
          r = is_nonalternating(w);
        else
          throw InputError("unknown check " + c);
        j[c] = r;
        all = all && r;
      }
      output(g, j.dump(2) + "\n");
      return all ? 0 : 1;
    } else if (*aa) {
      const Admissible s = admissible_from_json(read_file(auto_path), field);
      const Verdict v = s.validate();
      if (!v.ok) throw PreconditionError("automorphism is not admissible: " + v.reason);
      if (!poly_path.empty())
        output(g, poly_to_json(apply_poly(s, poly_from_json(read_file(poly_path)))));
      else
        output(g, form_to_json(apply_form2(s, load_form(form, s.source, s.field))));
    } else if (*vf) {
      vo.seed = g.seed;
      const Report r = run_verify(vo);
      output(g, emit(r, g.format, timings));
      std::cerr << r.count("pass") << " pass, " << r.count("fail") << " fail, " << r.count("error") << " error, "
                << r.count("skipped") << " skipped\n";
      return r.ok() ? 0 : 1;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
