// sbforge: construct, verify and classify the simple skew braces of order
// p^p q, and check the induced Yang-Baxter solutions.

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <sstream>

#include "sbforge/classify.hpp"
#include "sbforge/json_io.hpp"
#include "sbforge/ybe.hpp"

using namespace sbforge;

namespace {

struct Options {
  i64 p = 0, q = 0;
  std::string which = "B";
  std::string effort = "exhaustive";
  std::string out;
  std::string from_file;
  int threads = 1;
  bool json = false;
};

i64 budget_from_env() {
  const char* env = std::getenv("SBFORGE_BUDGET");
  if (!env) return 10'000'000;
  char* end = nullptr;
  i64 v = std::strtoll(env, &end, 10);
  if (end == env || v <= 0) throw Error(Errc::BadConfig, "SBFORGE_BUDGET must be a positive integer");
  return v;
}

Effort parse_effort(const std::string& s, int threads) {
  if (s == "exhaustive") return Effort::Exhaustive(threads);
  if (s.rfind("sampled:", 0) == 0) {
    i64 count = std::strtoll(s.c_str() + 8, nullptr, 10);
    if (count <= 0) throw Error(Errc::BadConfig, "sampled:<count> needs a positive count");
    return Effort::Sampled(count);
  }
  throw Error(Errc::BadConfig, "--effort must be 'exhaustive' or 'sampled:<count>'");
}

// Ordered key=value report with a JSON twin; identical runs emit identical
// bytes.
class Report {
 public:
  explicit Report(bool json_mode) : json_(json_mode) {}

  void add(const std::string& key, const std::string& value) {
    lines_.emplace_back(key, value);
    j_[key] = value;
  }
  void add(const std::string& key, bool value) {
    lines_.emplace_back(key, value ? "true" : "false");
    j_[key] = value;
  }
  void add(const std::string& key, i64 value) {
    lines_.emplace_back(key, std::to_string(value));
    j_[key] = value;
  }
  void add_check(const std::string& key, bool pass, const std::string& detail = "") {
    lines_.emplace_back(key, pass ? "pass" : ("FAIL" + (detail.empty() ? "" : " (" + detail + ")")));
    j_[key] = pass ? "pass" : "fail";
    if (!detail.empty() && !pass) j_[key + ".detail"] = detail;
    all_pass_ = all_pass_ && pass;
  }
  void add_report(const std::string& prefix, const CheckReport& rep) {
    for (const CheckItem& it : rep.items) add_check(prefix + "." + it.name, it.pass, it.detail);
  }
  void attach_json(const std::string& key, ordered_json j) { j_[key] = std::move(j); }

  bool all_pass() const { return all_pass_; }

  int emit() {
    add("result", std::string(all_pass_ ? "pass" : "fail"));
    if (json_) {
      std::cout << j_.dump(2) << "\n";
    } else {
      for (auto& [k, v] : lines_) std::cout << k << "=" << v << "\n";
    }
    return all_pass_ ? 0 : 1;
  }

 private:
  bool json_;
  bool all_pass_ = true;
  std::vector<std::pair<std::string, std::string>> lines_;
  ordered_json j_ = ordered_json::object();
};

struct Workspace {
  std::shared_ptr<Holo> holo;
  std::unique_ptr<Construct> cons;
  PrimePair pair;

  explicit Workspace(const Options& opt) {
    pair = validate_prime_pair(opt.p, opt.q);
    holo = std::make_shared<Holo>(build_frame(pair));
    cons = std::make_unique<Construct>(holo);
  }

  RegularSubgroupMap chosen_map(const std::string& which) const {
    if (which == "B") return cons->build_G();
    if (which == "Bopp") return cons->build_G_star();
    throw Error(Errc::BadConfig, "--which must be B or Bopp");
  }
};

std::string aut_to_string(const AutNElem& a) {
  return "(i=" + std::to_string(a.i) + ",j=" + std::to_string(a.j) + ",w=" + vec_to_string(a.w) + ")";
}

void emit_payload(const Options& opt, const ordered_json& j) {
  std::string text = j.dump(2) + "\n";
  if (opt.out.empty())
    std::cout << text;
  else
    write_text_file(opt.out, text);
}

int cmd_frame(const Options& opt) {
  Workspace ws(opt);
  emit_payload(opt, frame_to_json(ws.holo->frame()));
  return 0;
}

int cmd_build(const Options& opt) {
  Workspace ws(opt);
  Provenance prov;
  prov.which = opt.which;
  SkewBrace b = brace_from_regular(ws.holo, ws.chosen_map(opt.which), prov);
  emit_payload(opt, brace_to_json(b));
  return 0;
}

int cmd_export(const Options& opt) {
  if (opt.from_file.empty()) throw Error(Errc::BadConfig, "export needs --from-file");
  SkewBrace b = brace_from_json(read_json_file(opt.from_file));
  if (b.mode() == BraceMode::Structural) {
    if (b.n() > kTableBudget)
      throw Error(Errc::BudgetExceeded, "order " + std::to_string(b.n()) + " exceeds the table budget");
    SkewBrace table = brace_from_regular(b.holo_ptr(), *b.gmap(), b.provenance());
    emit_payload(opt, brace_to_json(table));
  } else {
    emit_payload(opt, brace_to_json(b));
  }
  return 0;
}

int cmd_verify(const Options& opt) {
  Report rep(opt.json);
  Effort effort = parse_effort(opt.effort, opt.threads);

  if (!opt.from_file.empty()) {
    SkewBrace b = brace_from_json(read_json_file(opt.from_file));
    rep.add("pair.p", static_cast<i64>(b.p()));
    rep.add("pair.q", static_cast<i64>(b.q()));
    rep.add("pair.n", b.n());
    rep.add("which", b.provenance().which);
    rep.add("mode", std::string(b.mode() == BraceMode::Table ? "table" : "structural"));
    rep.add("effort", opt.effort);
    if (b.mode() == BraceMode::Structural && effort.exhaustive)
      throw Error(Errc::BadConfig, "exhaustive verification needs a table brace; use --effort sampled:<count>");
    rep.add_report("axioms", verify_axioms(b, effort));
    if (b.provenance().dot_is_N && b.mode() == BraceMode::Table) {
      rep.add("simplicity.simple", is_simple(b));
    }
    return rep.emit();
  }

  Workspace ws(opt);
  const Holo& h = *ws.holo;
  rep.add("pair.p", static_cast<i64>(ws.pair.p));
  rep.add("pair.q", static_cast<i64>(ws.pair.q));
  rep.add("pair.n", ws.pair.n);
  rep.add("which", opt.which);
  rep.add("effort", opt.effort);

  rep.add_report("frame", verify_frame(h.frame()));
  rep.add_report("relations", ws.cons->check_relations());

  RegularSubgroupMap g = ws.cons->build_G();
  RegularSubgroupMap gs = ws.cons->build_G_star();
  const RegularSubgroupMap& chosen = opt.which == "Bopp" ? gs : g;
  if (opt.which != "B" && opt.which != "Bopp") throw Error(Errc::BadConfig, "--which must be B or Bopp");

  bool table_mode = ws.pair.n <= kTableBudget;
  rep.add("mode", std::string(table_mode ? "table" : "structural"));
  if (!table_mode && effort.exhaustive)
    throw Error(Errc::BadConfig,
                "order " + std::to_string(ws.pair.n) + " is structural; use --effort sampled:<count>");
  Provenance prov;
  prov.which = opt.which;
  SkewBrace b = brace_from_regular(ws.holo, chosen, prov);
  rep.add_check("regular", h.is_regular(chosen.image(h)));
  rep.add_report("axioms", verify_axioms(b, effort));

  if (table_mode) {
    rep.add("simplicity.simple", is_simple(b));
    rep.add_check("simplicity.check", is_simple(b));
    if (ws.pair.n <= 12) {
      std::set<std::vector<int>> fast_ideals, generic_ideals;
      for (const Ideal& ideal : enumerate_ideals(b))
        if (ideal.is_ideal()) fast_ideals.insert(ideal.elements);
      for (const Ideal& ideal : enumerate_ideals_generic(b))
        if (ideal.is_ideal()) generic_ideals.insert(ideal.elements);
      rep.add_check("simplicity.ideal_paths_agree", fast_ideals == generic_ideals);
    }
  }

  // Non-isomorphism of B and its opposite. The exhaustive Aut(N) sweep is a
  // table-scale check; structural stretch orders run sampled suites only.
  if (table_mode) {
    IsoResult iso = are_isomorphic(h, g, gs);
    rep.add("noniso.candidates", iso.candidates_checked);
    rep.add("noniso.witness", iso.witness ? aut_to_string(*iso.witness) : std::string("none"));
    rep.add_check("noniso.check", !iso.witness.has_value());
  } else {
    rep.add("noniso.skipped", std::string("structural"));
  }

  if (table_mode) {
    StructureDescriptor d = identify_structure(b);
    rep.add("structure.dot.sylow_p_normal", d.dot.sylow_p_normal);
    rep.add("structure.dot.sylow_q_normal", d.dot.sylow_q_normal);
    rep.add("structure.circ.sylow_p_normal", d.circ.sylow_p_normal);
    rep.add("structure.circ.sylow_q_normal", d.circ.sylow_q_normal);
    rep.add("structure.circ.sylow_p_exponent", d.circ.sylow_p_exponent);
    rep.add("structure.circ.sylow_p_class", static_cast<i64>(d.circ.sylow_p_class));
    bool expected = d.dot.sylow_p_normal && !d.dot.sylow_q_normal && !d.circ.sylow_p_normal &&
                    d.circ.sylow_q_normal && d.circ.sylow_p_exponent == ws.pair.p * ws.pair.p &&
                    d.circ.sylow_p_class == ws.pair.p - 1;
    rep.add_check("structure.check", expected);
    if (opt.json) rep.attach_json("structure.full", structure_to_json(d));
  }

  // Opposite coherence.
  {
    RegularSubgroupMap gss = opposite_regular(h, gs);
    bool dbl = true;
    for (i64 idx = 0; idx < h.n(); ++idx)
      if (!(gss.alpha[idx] == g.alpha[idx])) { dbl = false; break; }
    rep.add_check("opposite.double_star", dbl);
    if (table_mode) {
      Provenance prov_b;
      prov_b.which = "B";
      SkewBrace base = opt.which == "B" ? b : brace_from_regular(ws.holo, g, prov_b);
      Provenance prov_s;
      prov_s.which = "Bopp";
      SkewBrace bstar = opt.which == "Bopp" ? b : brace_from_regular(ws.holo, gs, prov_s);
      SkewBrace bop = opposite_brace(base);
      // Inversion in dot is a skew-brace isomorphism B^op -> brace(G*).
      bool iso_ok = true;
      for (i64 a = 0; a < base.n() && iso_ok; ++a)
        for (i64 x = 0; x < base.n(); ++x) {
          int ta = base.dot_inv(static_cast<int>(a)), tx = base.dot_inv(static_cast<int>(x));
          if (base.dot_inv(bop.dot(static_cast<int>(a), static_cast<int>(x))) != bstar.dot(ta, tx) ||
              base.dot_inv(bop.circ(static_cast<int>(a), static_cast<int>(x))) != bstar.circ(ta, tx)) {
            iso_ok = false;
            break;
          }
        }
      rep.add_check("opposite.inversion_iso", iso_ok);
    }
  }

  return rep.emit();
}

int cmd_aut(const Options& opt) {
  Report rep(opt.json);
  Workspace ws(opt);
  const Holo& h = *ws.holo;
  if (ws.pair.n > kTableBudget)
    throw Error(Errc::BadConfig, "aut needs a table-sized order (n <= 4096)");
  rep.add("pair.p", static_cast<i64>(ws.pair.p));
  rep.add("pair.q", static_cast<i64>(ws.pair.q));
  rep.add("pair.n", ws.pair.n);
  rep.add("which", opt.which);
  RegularSubgroupMap g = ws.chosen_map(opt.which);
  Provenance prov;
  prov.which = opt.which;
  SkewBrace b = brace_from_regular(ws.holo, g, prov);
  BraceAutGroup aut = brace_automorphisms(h, b, g);
  rep.add("autsb.order", static_cast<i64>(aut.elements.size()));
  rep.add("autsb.cyclic", aut.cyclic);
  rep.add("autsb.generator", aut.generator ? aut_to_string(*aut.generator) : std::string("none"));
  AutNElem conj_j{0, 1, FpVec::zero(ws.pair.p, ws.pair.p)};
  bool gen_is_conj_j = aut.generator && *aut.generator == conj_j;
  rep.add("autsb.generator_is_conj_J", gen_is_conj_j);
  bool expected = static_cast<int>(aut.elements.size()) == ws.pair.p && aut.cyclic && gen_is_conj_j;
  if (ws.pair.n <= 12) {
    std::vector<AutNElem> raw = brace_automorphisms_raw(h, b);
    bool agree = raw.size() == aut.elements.size();
    for (size_t i = 0; agree && i < raw.size(); ++i) agree = raw[i] == aut.elements[i];
    rep.add_check("autsb.raw_sweep_agrees", agree);
  }
  rep.add_check("autsb.check", expected);
  return rep.emit();
}

int cmd_classify(const Options& opt) {
  Report rep(opt.json);
  Workspace ws(opt);
  const Holo& h = *ws.holo;
  const i64 budget = budget_from_env();
  bool full = ws.pair.n <= 12;
  rep.add("pair.p", static_cast<i64>(ws.pair.p));
  rep.add("pair.q", static_cast<i64>(ws.pair.q));
  rep.add("pair.n", ws.pair.n);
  rep.add("census.mode", std::string(full ? "full" : "structured"));
  CensusResult res = census(h, *ws.cons, full, budget);
  i64 total = 0;
  for (const CensusEntry& e : res.entries) total += e.multiplicity;
  rep.add("census.classes", static_cast<i64>(res.entries.size()));
  rep.add("census.regular_subgroups", total);
  rep.add("census.simple_classes", res.simple_classes);
  rep.add("census.simple_mutually_opposite", res.simple_pair_mutually_opposite);
  for (const CensusEntry& e : res.entries) {
    std::string pre = "class." + std::to_string(e.iso_class);
    rep.add(pre + ".size", e.size);
    rep.add(pre + ".multiplicity", e.multiplicity);
    rep.add(pre + ".simple", e.simple);
    rep.add(pre + ".dot_structure", std::string(to_string(e.dot_tag)));
    rep.add(pre + ".circ_structure", std::string(to_string(e.circ_tag)));
    rep.add(pre + ".opposite_class", static_cast<i64>(e.opposite_class));
    std::string gens;
    for (size_t i = 0; i < e.witness_generators.size(); ++i)
      gens += (i ? " | " : "") + e.witness_generators[i];
    rep.add(pre + ".generators", gens);
  }

  if (full) {
    // Taxonomy of free order-q subgroups and the overgroup counts per type.
    std::vector<CanonicalQGen> types = order_q_canonical_types(h);
    rep.add("qtypes.total", static_cast<i64>(types.size()));
    bool unique = true;
    std::set<std::vector<i64>> seen;
    for (i64 gi = 0; gi < h.hol_count(); ++gi) {
      HolElem g = h.hol_from_index(gi);
      if (h.hol_order(g, ws.pair.q) != ws.pair.q) continue;
      std::vector<HolElem> sub = h.subgroup_closure({g}, ws.pair.q);
      std::vector<i64> key;
      for (const HolElem& e : sub) key.push_back(h.hol_index(e));
      if (!seen.insert(key).second) continue;
      if (!h.acts_freely(sub)) continue;
      if (canonical_tags_hit(h, sub).size() != 1) unique = false;
    }
    rep.add_check("qtypes.unique_reduction", unique);
    i64 t1 = 0, t2 = 0, t3 = 0;
    for (const auto& t : types) {
      i64 found = static_cast<i64>(regular_overgroups(h, t.gen, budget).size());
      if (t.type.tag == QTypeTag::TypeI) t1 = found;
      else if (t.type.tag == QTypeTag::TypeII) t2 = found;
      else t3 += found;
    }
    rep.add("overgroups.type_i_classes", t1);
    rep.add("overgroups.type_ii_classes", t2);
    rep.add("overgroups.type_iii_classes", t3);
    rep.add_check("overgroups.check", t1 == 1 && t2 == 1 && t3 == 0);
  }

  rep.add_check("census.check", res.simple_classes == 2 && res.simple_pair_mutually_opposite);
  if (opt.json) rep.attach_json("census.entries", census_to_json(res));
  return rep.emit();
}

int cmd_ybe(const Options& opt) {
  Report rep(opt.json);
  Workspace ws(opt);
  if (ws.pair.n > kTableBudget)
    throw Error(Errc::BadConfig, "ybe needs a table-sized order (n <= 4096)");
  rep.add("pair.p", static_cast<i64>(ws.pair.p));
  rep.add("pair.q", static_cast<i64>(ws.pair.q));
  rep.add("pair.n", ws.pair.n);
  rep.add("which", opt.which);
  Provenance prov;
  prov.which = opt.which;
  SkewBrace b = brace_from_regular(ws.holo, ws.chosen_map(opt.which), prov);
  YBESolution s = solution_from_brace(b);
  bool bij = check_bijective(s);
  bool braid = check_braid(s, opt.threads);
  bool nondeg = check_nondegenerate(s);
  bool invol = check_involutive(s);
  rep.add("ybe.bijective", bij);
  rep.add_check("ybe.braid", braid);
  rep.add("ybe.nondegenerate", nondeg);
  rep.add("ybe.involutive", invol);
  // The solutions of these braces are nondegenerate but never involutive.
  rep.add_check("ybe.check", bij && braid && nondeg && !invol);
  if (!opt.out.empty()) write_text_file(opt.out, solution_to_json(s).dump(2) + "\n");
  return rep.emit();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"simple skew braces of order p^p q: construction, verification, classification"};
  app.require_subcommand(1);

  Options opt;
  auto add_common = [&](CLI::App* cmd, bool needs_pair) {
    if (needs_pair) {
      cmd->add_option("--p", opt.p, "prime p")->required();
      cmd->add_option("--q", opt.q, "prime q with q | (p^p-1)/(p-1)")->required();
    } else {
      cmd->add_option("--p", opt.p, "prime p");
      cmd->add_option("--q", opt.q, "prime q");
    }
    cmd->add_option("--which", opt.which, "B or Bopp")->check(CLI::IsMember({"B", "Bopp"}));
    cmd->add_option("--effort", opt.effort, "exhaustive or sampled:<count>");
    cmd->add_option("--out", opt.out, "output file path");
    cmd->add_option("--from-file", opt.from_file, "input brace file");
    cmd->add_option("--threads", opt.threads, "worker count (default 1)")->check(CLI::PositiveNumber);
    cmd->add_flag("--json", opt.json, "machine-readable JSON report");
  };

  CLI::App* c_frame = app.add_subcommand("frame", "emit the frame (M, T, J) as JSON");
  add_common(c_frame, true);
  CLI::App* c_build = app.add_subcommand("build", "emit the brace file for B or Bopp");
  add_common(c_build, true);
  CLI::App* c_verify = app.add_subcommand("verify", "run the axiom/relation/simplicity suites");
  add_common(c_verify, false);
  CLI::App* c_classify = app.add_subcommand("classify", "census of regular subgroups");
  add_common(c_classify, true);
  CLI::App* c_aut = app.add_subcommand("aut", "brace automorphism group");
  add_common(c_aut, true);
  CLI::App* c_ybe = app.add_subcommand("ybe", "Yang-Baxter solution checks");
  add_common(c_ybe, true);
  CLI::App* c_export = app.add_subcommand("export", "convert a structural brace file to tables");
  add_common(c_export, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (c_frame->parsed()) return cmd_frame(opt);
    if (c_build->parsed()) return cmd_build(opt);
    if (c_verify->parsed()) {
      if (opt.from_file.empty() && (opt.p == 0 || opt.q == 0))
        throw Error(Errc::BadConfig, "verify needs --p/--q or --from-file");
      return cmd_verify(opt);
    }
    if (c_classify->parsed()) return cmd_classify(opt);
    if (c_aut->parsed()) return cmd_aut(opt);
    if (c_ybe->parsed()) return cmd_ybe(opt);
    if (c_export->parsed()) return cmd_export(opt);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case Errc::BudgetExceeded:
      case Errc::BoundExceeded:
        return 3;
      case Errc::NotPrime:
      case Errc::DivisibilityFails:
      case Errc::Unsupported:
      case Errc::BadConfig:
      case Errc::BadFile:
        return 2;
      default:
        return 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
