#include "malcev/cli.hpp"

#include <CLI11.hpp>
#include <climits>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "malcev/json_io.hpp"

namespace malcev {

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kUndecided = 2;

std::string read_file(const std::string& path) {
  if (path.empty()) throw Error("missing input file argument");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("file not found: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> content_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    auto e = line.find_last_not_of(" \t\r");
    out.push_back(line.substr(b, e - b + 1));
  }
  return out;
}

VarietyPresentation load_basis(const std::string& path) {
  IdentityFile f = parse_identity_file(read_file(path));
  return {f.sig, std::move(f.ids)};
}

/// Header of --sig, explicit --ell/--n, or the smallest signature containing the terms.
Signature term_signature(const RunConfig& c, const std::vector<std::string>& texts) {
  if (!c.sig_file.empty()) return parse_identity_file(read_file(c.sig_file)).sig;
  if (c.ell || c.n) {
    if (!c.ell || !c.n) throw SignatureError("give both --ell and --n");
    return Signature::make(*c.ell, *c.n);
  }
  const Signature wide{INT_MAX, INT_MAX};
  int ell = 0;
  int n = 0;
  for (const auto& t : texts) {
    Term term = parse_term(t, wide);
    ell = std::max(ell, term.max_unary());
    n = std::max({n, term.max_binary(), term.max_unary()});
  }
  return Signature::make(ell, n);
}

SearchParams search_params(const RunConfig& c) {
  if (c.max_q < 2) throw Error("--max-q must be >= 2");
  if (c.max_dim < 1) throw Error("--max-dim must be >= 1");
  if (c.trials < 1) throw Error("--trials must be >= 1");
  return {c.max_q, c.max_dim, c.trials, c.seed};
}

void check_bound(const std::optional<int>& b) {
  if (b && *b < 0) throw Error("--degree-bound must be non-negative");
}

Json envelope(const std::string& command) {
  return Json{{"schema_version", kSchemaVersion}, {"command", command}};
}

void emit(const RunConfig& c, std::ostream& out, Json j, const std::string& human) {
  if (c.json)
    out << j.dump(2) << "\n";
  else
    out << human;
}

std::string indent_lines(const std::vector<std::string>& lines) {
  std::string s;
  for (const auto& l : lines) s += "  " + l + "\n";
  if (lines.empty()) s += "  (none)\n";
  return s;
}

std::vector<std::string> poly_texts(const std::vector<NCPoly>& ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(print_poly(p));
  return out;
}

std::vector<std::string> vec_texts(const std::vector<ModuleVec>& vs) {
  std::vector<std::string> out;
  for (const auto& v : vs) out.push_back(print_module_vec(v));
  return out;
}

std::string model_text(const Separation& s) {
  return to_json(s.model).dump() + "\n  assignment: " + to_json(s.assignment).dump() + "\n";
}

int cmd_normalize(const RunConfig& c, std::ostream& out) {
  Signature sig = term_signature(c, {c.term});
  Term t = parse_term(c.term, sig);
  NormalForm nf = normalize(t, sig);
  Term canon = denormalize(nf, sig);
  Json j = envelope("normalize");
  j["signature"] = Json{{"l", sig.ell}, {"n", sig.n}};
  j["term"] = print_term(t);
  j["normal_form"] = to_json(nf);
  j["canonical_term"] = print_term(canon);
  std::string h = "Normal form in the free algebra of the canonical variety\n";
  for (const auto& [i, p] : nf.coeffs)
    h += "  x" + std::to_string(i) + ": " + print_poly(p) + "\n";
  h += "  constant: " + print_module_vec(nf.constant) + "\n";
  h += "  canonical term: " + print_term(canon) + "\n";
  emit(c, out, j, h);
  return kOk;
}

int cmd_equal_u(const RunConfig& c, std::ostream& out) {
  Signature sig = term_signature(c, {c.term_a, c.term_b});
  Term a = parse_term(c.term_a, sig);
  Term b = parse_term(c.term_b, sig);
  bool equal = nf_equal(a, b, sig);
  Json j = envelope("equal-u");
  j["verdict"] = equal ? "equal" : "distinct";
  j["normal_form_a"] = to_json(normalize(a, sig));
  j["normal_form_b"] = to_json(normalize(b, sig));
  std::string h = "Validity in the canonical variety (normal-form comparison)\n  verdict: " +
                  std::string(equal ? "equal" : "distinct") + "\n";
  if (!equal) {
    auto sep = find_separating_model(a, b, VarietyPresentation{sig, {}}, search_params(c));
    if (sep) {
      j["separating_model"] =
          Json{{"model", to_json(sep->model)}, {"assignment", to_json(sep->assignment)}};
      h += "  separating model: " + model_text(*sep);
    }
  }
  emit(c, out, j, h);
  return kOk;
}

int cmd_equal(const RunConfig& c, std::ostream& out) {
  check_bound(c.degree_bound);
  VarietyPresentation vp = load_basis(c.basis);
  Term a = parse_term(c.term_a, vp.sig);
  Term b = parse_term(c.term_b, vp.sig);
  int bound = c.degree_bound ? *c.degree_bound
                             : 2 * std::max({normalize(a, vp.sig).degree(),
                                             normalize(b, vp.sig).degree(), 0}) + 2;
  EqualityResult r = equal_in_variety(a, b, vp, bound, search_params(c));
  Json j = envelope("equal");
  j["result"] = to_json(r);
  std::string h = "Validity in the subvariety (slice differences in I + N)\n  verdict: " +
                  to_string(r.kind) + "\n  bound: " + std::to_string(r.bound) + "\n";
  for (const auto& s : r.slices) {
    h += "  slice " + std::to_string(s.slice) + ": ring " + print_poly(s.ring_part) +
         (s.ring ? " [" + to_string(s.ring->verdict) + "]" : "") + ", module " +
         print_module_vec(s.module_part) +
         (s.module ? " [" + to_string(s.module->verdict) + "]" : "") + "\n";
  }
  if (r.separation) h += "  separating model: " + model_text(*r.separation);
  emit(c, out, j, h);
  return r.kind == EqualityResult::Kind::Unknown ? kUndecided : kOk;
}

int cmd_present(const RunConfig& c, std::ostream& out) {
  VarietyPresentation vp = load_basis(c.basis);
  ModulePresentation mp = present_module(vp);
  Json j = envelope("present");
  j["ring_presentation"] = to_json(mp.over);
  j["module_presentation"] = to_json(mp);
  std::string h = "Presentations of the ring of idempotent binary terms and the module of unary terms\n";
  h += "ring: " + std::to_string(mp.over.n) + " generators, relations\n" +
       indent_lines(poly_texts(mp.over.relations));
  h += "module: " + std::to_string(mp.ell) + " generators, relations\n" +
       indent_lines(vec_texts(mp.relations));
  emit(c, out, j, h);
  return kOk;
}

int cmd_synthesize(const RunConfig& c, std::ostream& out) {
  RingPresentation rp = ring_presentation_from_json(Json::parse(read_file(c.ring)));
  ModulePresentation mp =
      module_presentation_from_json(Json::parse(read_file(c.module)), rp);
  VarietyPresentation vp = synthesize_basis(rp, mp);
  std::string file = print_identity_file({vp.sig, vp.ids});
  if (!c.output.empty()) {
    std::ofstream f(c.output, std::ios::binary);
    if (!f) throw Error("cannot write " + c.output);
    f << file;
  }
  Json j = envelope("synthesize");
  j["identity_file"] = file;
  emit(c, out, j, "# Finite basis synthesized from ring and module presentations\n" + file);
  return kOk;
}

int cmd_member(const RunConfig& c, std::ostream& out) {
  check_bound(c.degree_bound);
  if (c.ring_mode == c.module_mode) throw Error("give exactly one of --ring or --module");
  auto lines = content_lines(read_file(c.gens));
  MembershipResult r;
  Json j = envelope("member");
  std::string h;
  if (c.ring_mode) {
    NCPoly target = parse_poly(c.target);
    std::vector<NCPoly> gens;
    for (const auto& l : lines) gens.push_back(parse_poly(l));
    int bound = c.degree_bound ? *c.degree_bound : default_bound(target, gens);
    r = ideal_member(target, gens, bound);
    j["mode"] = "ring";
    j["target"] = print_poly(target);
    j["generators"] = poly_texts(gens);
    h = "Two-sided ideal membership in the free ring\n";
  } else {
    if (!c.ell) throw Error("--module needs --ell");
    ModuleVec target = parse_module_vec(c.target, *c.ell);
    std::vector<ModuleVec> mod_gens;
    std::vector<NCPoly> ideal_gens;
    for (const auto& l : lines) {
      if (l.rfind("module ", 0) == 0)
        mod_gens.push_back(parse_module_vec(l.substr(7), *c.ell));
      else if (l.rfind("ideal ", 0) == 0)
        ideal_gens.push_back(parse_poly(l.substr(6)));
      else
        throw ParseError("generator lines must start with 'module ' or 'ideal '", 0);
    }
    int bound = c.degree_bound ? *c.degree_bound
                               : default_bound(target, mod_gens, ideal_gens);
    r = submodule_member(target, mod_gens, ideal_gens, bound);
    j["mode"] = "module";
    j["target"] = print_module_vec(target);
    j["module_generators"] = vec_texts(mod_gens);
    j["ideal_generators"] = poly_texts(ideal_gens);
    h = "Submodule membership in the free module (I*M always adjoined)\n";
  }
  j["result"] = to_json(r);
  h += "  verdict: " + to_string(r.verdict) + "\n  degree used: " +
       std::to_string(r.degree_used) + "\n  certificate terms: " +
       std::to_string(r.certificate.size()) + "\n";
  emit(c, out, j, h);
  return r.verdict == Verdict::NotAtBound ? kUndecided : kOk;
}

int cmd_check_fb(const RunConfig& c, std::ostream& out) {
  check_bound(c.degree_bound);
  VarietyPresentation vp = load_basis(c.basis);
  FBReport r = check_finite_basis(vp, c.degree_bound);
  Json j = envelope("check-fb");
  j["report"] = to_json(r);
  std::string h = "Finite basis check: finite basis gives finite ring and module presentations\n";
  h += "  conclusion: " + to_string(r.conclusion) + "\n  " + r.details + "\n";
  h += "ring relations (" + std::to_string(r.ring.n) + " generators)\n" +
       indent_lines(poly_texts(r.ring.relations));
  h += "module relations (" + std::to_string(r.module.ell) + " generators)\n" +
       indent_lines(vec_texts(r.module.relations));
  h += "congruence conditions: (a)-(d) by construction, unary shift:\n";
  if (r.fic.unary_shift.empty()) h += "  (no submodule generators)\n";
  for (const auto& s : r.fic.unary_shift)
    h += "  generator " + std::to_string(s.generator) + ": " + print_poly(s.defect) + " [" +
         to_string(s.result.verdict) + "]\n";
  emit(c, out, j, h);
  return r.conclusion == Conclusion::Inconclusive ? kUndecided : kOk;
}

int cmd_chain(const RunConfig& c, std::ostream& out) {
  if (c.kmax < 0) throw Error("--kmax must be non-negative");
  check_bound(c.degree_bound);
  auto schema = builtin_schema(c.schema);
  if (!schema) {
    std::vector<NCPoly> members;
    for (const auto& l : content_lines(read_file(c.schema))) members.push_back(parse_poly(l));
    if (static_cast<int>(members.size()) < c.kmax + 1)
      throw Error("relation family file lists fewer than kmax + 1 members");
    schema = list_schema(std::move(members));
  }
  int bound = c.degree_bound ? *c.degree_bound : 8;
  ChainReport r = witness_ascending_chain(*schema, c.kmax, bound);
  Json j = envelope("chain");
  j["schema"] = c.schema;
  j["kmax"] = c.kmax;
  j["degree_bound"] = bound;
  j["report"] = to_json(r);
  std::string h = "Ascending chain of ideals (evidence for non-finite generation)\n";
  for (const auto& s : r.steps)
    h += "  k=" + std::to_string(s.k) + ": " + print_poly(s.relation) + " [" +
         to_string(s.result.verdict) + "]\n";
  h += "  " + r.summary + "\n";
  emit(c, out, j, h);
  return (r.strict || r.collapse_at) ? kOk : kUndecided;
}

int cmd_separate(const RunConfig& c, std::ostream& out) {
  VarietyPresentation vp = load_basis(c.basis);
  Term a = parse_term(c.term_a, vp.sig);
  Term b = parse_term(c.term_b, vp.sig);
  auto sep = find_separating_model(a, b, vp, search_params(c));
  Json j = envelope("separate");
  j["found"] = sep.has_value();
  std::string h = "Separating affine model search\n";
  if (sep) {
    j["model"] = to_json(sep->model);
    j["assignment"] = to_json(sep->assignment);
    h += "  found: " + model_text(*sep);
  } else {
    h += "  none found within the search space (Unknown)\n";
  }
  emit(c, out, j, h);
  return sep ? kOk : kUndecided;
}

int cmd_interpret(const RunConfig& c, std::ostream& out) {
  GeneralPresentation gp = parse_general_presentation(read_file(c.general));
  TypeVerdict tv = check_infinite_type(gp.gsig);
  Json j = envelope("interpret");
  if (!tv.finite) {
    j["conclusion"] = to_string(Conclusion::NotFinitelyBased);
    j["reason"] = tv.reason;
    emit(c, out, j, "Type check\n  NotFinitelyBased: " + tv.reason + "\n");
    return kOk;
  }
  Canonicalization canon = canonicalize(gp);
  std::string file = print_identity_file({canon.vp.sig, canon.vp.ids});
  if (!c.output.empty()) {
    std::ofstream f(c.output, std::ios::binary);
    if (!f) throw Error("cannot write " + c.output);
    f << file;
  }
  j["interpretation"] = to_json(canon.map);
  j["identity_file"] = file;
  std::string h = "Equivalent presentation over the canonical type\n  signature: l=" +
                  std::to_string(canon.map.sig.ell) + " n=" +
                  std::to_string(canon.map.sig.n) + "\n";
  for (std::size_t i = 0; i < canon.map.unary_terms.size(); ++i)
    h += "  u" + std::to_string(i + 1) + " = " + print_general_term(canon.map.unary_terms[i]) + "\n";
  for (std::size_t i = 0; i < canon.map.binary_terms.size(); ++i)
    h += "  r" + std::to_string(i + 1) + " = " + print_general_term(canon.map.binary_terms[i]) + "\n";
  h += file;
  int status = kOk;
  if (!c.table_models.empty()) {
    std::vector<TableModel> tables;
    for (const auto& p : c.table_models)
      tables.push_back(table_model_from_json(Json::parse(read_file(p))));
    EquivalenceReport rep =
        verify_equivalence(canon.map, gp, canon.vp, search_params(c), tables);
    j["verification"] = to_json(rep);
    h += "verification\n";
    for (const auto& ch : rep.checks)
      h += std::string("  ") + (ch.passed ? "pass " : "FAIL ") + ch.name + " (" + ch.detail + ")\n";
    if (!rep.all_passed()) status = kUndecided;
  }
  emit(c, out, j, h);
  return status;
}

}  // namespace

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    if (c.command == "normalize") return cmd_normalize(c, out);
    if (c.command == "equal-u") return cmd_equal_u(c, out);
    if (c.command == "equal") return cmd_equal(c, out);
    if (c.command == "present") return cmd_present(c, out);
    if (c.command == "synthesize") return cmd_synthesize(c, out);
    if (c.command == "member") return cmd_member(c, out);
    if (c.command == "check-fb") return cmd_check_fb(c, out);
    if (c.command == "chain") return cmd_chain(c, out);
    if (c.command == "separate") return cmd_separate(c, out);
    if (c.command == "interpret") return cmd_interpret(c, out);
    err << "error: unknown command '" << c.command << "'\n";
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
  } catch (const SignatureError& e) {
    err << "signature error: " << e.what() << "\n";
  } catch (const nlohmann::json::exception& e) {
    err << "JSON error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kInputError;
}

int run_main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  if (const char* env = std::getenv("MALCEV_SEED")) {
    try {
      c.seed = std::stoull(env);
    } catch (const std::exception&) {
      err << "error: MALCEV_SEED must be a non-negative integer\n";
      return kInputError;
    }
  }
  CLI::App app{"Finitely based abelian Mal'cev varieties: normal forms, presentations, "
               "bounded membership and model search"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", c.json, "Emit JSON instead of text");

  auto search = [&](CLI::App* s) {
    s->add_option("--seed", c.seed, "Random seed for model search");
    s->add_option("--max-q", c.max_q, "Largest modulus");
    s->add_option("--max-dim", c.max_dim, "Largest dimension");
    s->add_option("--trials", c.trials, "Candidate models per modulus and dimension");
  };
  auto sig_opts = [&](CLI::App* s) {
    s->add_option("--sig", c.sig_file, "File whose 'sig l=.. n=..' header fixes the signature");
    s->add_option("--ell", c.ell, "Number of unary symbols");
    s->add_option("--n", c.n, "Number of binary symbols");
  };

  auto* normalize_cmd = app.add_subcommand("normalize", "Normal form of a term");
  normalize_cmd->add_option("--term", c.term)->required();
  sig_opts(normalize_cmd);

  auto* equal_u = app.add_subcommand("equal-u", "Validity of s = t in the canonical variety");
  equal_u->add_option("--term-a", c.term_a)->required();
  equal_u->add_option("--term-b", c.term_b)->required();
  sig_opts(equal_u);
  search(equal_u);

  auto* equal = app.add_subcommand("equal", "Validity of s = t in a finitely based subvariety");
  equal->add_option("--basis", c.basis)->required();
  equal->add_option("--term-a", c.term_a)->required();
  equal->add_option("--term-b", c.term_b)->required();
  equal->add_option("--degree-bound", c.degree_bound);
  search(equal);

  auto* present = app.add_subcommand("present", "Ring and module presentations of a basis");
  present->add_option("--basis", c.basis)->required();

  auto* synth = app.add_subcommand("synthesize", "Identity basis from presentations");
  synth->add_option("--ring", c.ring, "Ring presentation JSON")->required();
  synth->add_option("--module", c.module, "Module presentation JSON")->required();
  synth->add_option("--output", c.output, "Also write the identity file here");

  auto* member = app.add_subcommand("member", "Bounded ideal or submodule membership");
  member->add_flag("--ring", c.ring_mode);
  member->add_flag("--module", c.module_mode);
  member->add_option("--target", c.target)->required();
  member->add_option("--gens", c.gens)->required();
  member->add_option("--degree-bound", c.degree_bound);
  member->add_option("--ell", c.ell, "Module rank (module mode)");

  auto* fb = app.add_subcommand("check-fb", "Finite basis report");
  fb->add_option("--basis", c.basis)->required();
  fb->add_option("--degree-bound", c.degree_bound);

  auto* chain = app.add_subcommand("chain", "Ascending chain witness for a relation family");
  chain->add_option("--schema", c.schema, "xyx, pow, const or a file of polynomials")->required();
  chain->add_option("--kmax", c.kmax);
  chain->add_option("--degree-bound", c.degree_bound);

  auto* sep = app.add_subcommand("separate", "Search an affine model separating two terms");
  sep->add_option("--basis", c.basis)->required();
  sep->add_option("--term-a", c.term_a)->required();
  sep->add_option("--term-b", c.term_b)->required();
  search(sep);

  auto* interp = app.add_subcommand("interpret", "Translate a general presentation");
  interp->add_option("--general", c.general)->required();
  interp->add_option("--output", c.output, "Write the translated identity file here");
  interp->add_option("--table-model", c.table_models, "Finite model of the general type (JSON)");
  search(interp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  c.command = app.get_subcommands().front()->get_name();
  return run(c, out, err);
}

}  // namespace malcev
