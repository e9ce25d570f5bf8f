#include "sbforge/json_io.hpp"

#include <fstream>
#include <memory>

#include "sbforge/error.hpp"

namespace sbforge {

namespace {

ordered_json mat_to_json(const FpMat& m) {
  ordered_json rows = ordered_json::array();
  for (int r = 0; r < m.dim; ++r) {
    ordered_json row = ordered_json::array();
    for (int c = 0; c < m.dim; ++c) row.push_back(m.at(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

FpMat mat_from_json(const ordered_json& j, int p) {
  const int dim = static_cast<int>(j.size());
  FpMat m = FpMat::zero(p, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) m.set(r, c, j[r][c].get<int>());
  return m;
}

}  // namespace

ordered_json frame_to_json(const Frame& f) {
  ordered_json j;
  j["p"] = f.pair.p;
  j["q"] = f.pair.q;
  j["M"] = mat_to_json(f.M);
  j["T"] = mat_to_json(f.T);
  j["J"] = mat_to_json(f.J);
  return j;
}

Frame frame_from_json(const ordered_json& j) {
  Frame f;
  f.pair = validate_prime_pair(j.at("p").get<i64>(), j.at("q").get<i64>());
  f.M = mat_from_json(j.at("M"), f.pair.p);
  f.T = mat_from_json(j.at("T"), f.pair.p);
  f.J = mat_from_json(j.at("J"), f.pair.p);
  return f;
}

ordered_json brace_to_json(const SkewBrace& b) {
  ordered_json j;
  j["n"] = b.n();
  j["p"] = b.p();
  j["q"] = b.q();
  j["which"] = b.provenance().which;
  if (b.mode() == BraceMode::Table) {
    ordered_json dot = ordered_json::array(), circ = ordered_json::array();
    for (i64 a = 0; a < b.n(); ++a) {
      ordered_json drow = ordered_json::array(), crow = ordered_json::array();
      for (i64 x = 0; x < b.n(); ++x) {
        drow.push_back(b.dot(static_cast<int>(a), static_cast<int>(x)));
        crow.push_back(b.circ(static_cast<int>(a), static_cast<int>(x)));
      }
      dot.push_back(std::move(drow));
      circ.push_back(std::move(crow));
    }
    j["dot"] = std::move(dot);
    j["circ"] = std::move(circ);
    return j;
  }
  j["mode"] = "structural";
  j["frame"] = frame_to_json(b.holo()->frame());
  ordered_json gmap = ordered_json::array();
  const RegularSubgroupMap* g = b.gmap();
  for (const AutNElem& a : g->alpha) {
    ordered_json w = ordered_json::array();
    for (int i = 0; i < b.p(); ++i) w.push_back(a.w.at(i));
    gmap.push_back(ordered_json::array({a.i, a.j, std::move(w)}));
  }
  j["gmap"] = std::move(gmap);
  return j;
}

SkewBrace brace_from_json(const ordered_json& j) {
  const int n = j.at("n").get<int>();
  const int p = j.at("p").get<int>();
  const int q = j.at("q").get<int>();
  Provenance prov;
  prov.which = j.at("which").get<std::string>();
  if (j.contains("dot")) {
    std::vector<std::uint16_t> dot, circ;
    dot.reserve(static_cast<size_t>(n) * n);
    circ.reserve(static_cast<size_t>(n) * n);
    for (const auto& row : j.at("dot"))
      for (const auto& v : row) dot.push_back(v.get<std::uint16_t>());
    for (const auto& row : j.at("circ"))
      for (const auto& v : row) circ.push_back(v.get<std::uint16_t>());
    if (static_cast<i64>(dot.size()) != static_cast<i64>(n) * n ||
        static_cast<i64>(circ.size()) != static_cast<i64>(n) * n)
      throw Error(Errc::BadFile, "table size mismatch");
    // dot_is_N when the dot table is N's multiplication (or its transpose)
    // in canonical index order; checked against a rebuilt frame.
    try {
      Holo h(build_frame(validate_prime_pair(p, q)));
      bool plain = true, transposed = true;
      for (i64 a = 0; a < n && (plain || transposed); ++a)
        for (i64 x = 0; x < n; ++x) {
          int prod = static_cast<int>(h.n_index(h.n_mul(h.n_from_index(a), h.n_from_index(x))));
          if (dot[a * n + x] != prod) plain = false;
          if (dot[x * n + a] != prod) transposed = false;
          if (!plain && !transposed) break;
        }
      prov.dot_is_N = plain || transposed;
    } catch (const Error&) {
      prov.dot_is_N = false;
    }
    return SkewBrace::from_tables(p, q, n, std::move(dot), std::move(circ), prov);
  }
  if (!j.contains("gmap")) throw Error(Errc::BadFile, "brace file has neither tables nor gmap");
  auto holo = std::make_shared<Holo>(frame_from_json(j.at("frame")));
  RegularSubgroupMap g;
  for (const auto& entry : j.at("gmap")) {
    AutNElem a;
    a.i = entry[0].get<int>();
    a.j = entry[1].get<int>();
    a.w = FpVec::zero(p, p);
    for (int i = 0; i < p; ++i) a.w.e[i] = static_cast<std::uint8_t>(entry[2][i].get<int>());
    g.alpha.push_back(a);
  }
  if (static_cast<i64>(g.alpha.size()) != holo->n())
    throw Error(Errc::BadFile, "gmap length mismatch");
  prov.dot_is_N = true;
  return SkewBrace::structural(holo, std::move(g), prov);
}

ordered_json solution_to_json(const YBESolution& s) {
  ordered_json j;
  j["n"] = s.n;
  ordered_json rows = ordered_json::array();
  for (i64 a = 0; a < s.n; ++a) {
    ordered_json row = ordered_json::array();
    for (i64 b = 0; b < s.n; ++b) {
      auto [c, d] = s.apply(static_cast<int>(a), static_cast<int>(b));
      row.push_back(ordered_json::array({c, d}));
    }
    rows.push_back(std::move(row));
  }
  j["r"] = std::move(rows);
  return j;
}

ordered_json census_to_json(const CensusResult& res) {
  ordered_json arr = ordered_json::array();
  for (const CensusEntry& e : res.entries) {
    ordered_json j;
    j["iso_class"] = e.iso_class;
    j["size"] = e.size;
    j["multiplicity"] = e.multiplicity;
    j["simple"] = e.simple;
    j["dot_structure"] = to_string(e.dot_tag);
    j["circ_structure"] = to_string(e.circ_tag);
    j["dot_sylow_p_normal"] = e.dot_sylow_p_normal;
    j["dot_sylow_q_normal"] = e.dot_sylow_q_normal;
    j["circ_sylow_p_normal"] = e.circ_sylow_p_normal;
    j["circ_sylow_q_normal"] = e.circ_sylow_q_normal;
    j["opposite_class"] = e.opposite_class;
    j["witness_generators"] = e.witness_generators;
    arr.push_back(std::move(j));
  }
  return arr;
}

namespace {

ordered_json group_structure_to_json(const GroupStructure& s) {
  ordered_json j;
  ordered_json prof = ordered_json::object();
  for (auto [o, c] : s.order_profile) prof[std::to_string(o)] = c;
  j["order_profile"] = std::move(prof);
  j["abelian"] = s.abelian;
  j["center_size"] = s.center_size;
  j["sylow_p_normal"] = s.sylow_p_normal;
  j["sylow_q_normal"] = s.sylow_q_normal;
  j["sylow_p_exponent"] = s.sylow_p_exponent;
  j["sylow_p_class"] = s.sylow_p_class;
  return j;
}

}  // namespace

ordered_json structure_to_json(const StructureDescriptor& d) {
  ordered_json j;
  j["dot"] = group_structure_to_json(d.dot);
  j["circ"] = group_structure_to_json(d.circ);
  return j;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::BadFile, "cannot open " + path + " for writing");
  out << content;
  if (!out) throw Error(Errc::BadFile, "write failed for " + path);
}

ordered_json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::BadFile, "cannot open " + path);
  ordered_json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw Error(Errc::BadFile, std::string("JSON parse error: ") + e.what());
  }
  return j;
}

}  // namespace sbforge
