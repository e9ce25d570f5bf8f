#include "sbforge/grouptab.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "sbforge/error.hpp"

namespace sbforge {

namespace {

void validate(GroupTable& g) {
  const int n = g.n;
  // Latin square.
  std::vector<bool> seen(n);
  for (int a = 0; a < n; ++a) {
    std::fill(seen.begin(), seen.end(), false);
    for (int b = 0; b < n; ++b) {
      int c = g.at(a, b);
      if (c < 0 || c >= n || seen[c]) throw Error(Errc::NotAGroup, "row is not a permutation");
      seen[c] = true;
    }
  }
  for (int b = 0; b < n; ++b) {
    std::fill(seen.begin(), seen.end(), false);
    for (int a = 0; a < n; ++a) {
      int c = g.at(a, b);
      if (seen[c]) throw Error(Errc::NotAGroup, "column is not a permutation");
      seen[c] = true;
    }
  }
  // Two-sided identity.
  int id = -1;
  for (int e = 0; e < n; ++e) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) ok = g.at(e, a) == a && g.at(a, e) == a;
    if (ok) { id = e; break; }
  }
  if (id < 0) throw Error(Errc::NotAGroup, "no identity element");
  g.id = id;
  // Inverses.
  g.inv.assign(n, 0);
  for (int a = 0; a < n; ++a) {
    int found = -1;
    for (int b = 0; b < n; ++b)
      if (g.at(a, b) == id && g.at(b, a) == id) { found = b; break; }
    if (found < 0) throw Error(Errc::NotAGroup, "missing inverse");
    g.inv[a] = static_cast<std::uint16_t>(found);
  }
  // Associativity, exhaustive.
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int ab = g.at(a, b);
      for (int c = 0; c < n; ++c)
        if (g.at(ab, c) != g.at(a, g.at(b, c))) throw Error(Errc::NotAGroup, "associativity fails");
    }
}

}  // namespace

GroupTable table_from_fn(int n, const std::function<int(int, int)>& f) {
  GroupTable g;
  g.n = n;
  g.mul.resize(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) g.mul[static_cast<size_t>(a) * n + b] = static_cast<std::uint16_t>(f(a, b));
  validate(g);
  return g;
}

GroupTable table_from_raw(int n, std::vector<std::uint16_t> mul) {
  GroupTable g;
  g.n = n;
  g.mul = std::move(mul);
  if (static_cast<i64>(g.mul.size()) != static_cast<i64>(n) * n)
    throw Error(Errc::NotAGroup, "table size mismatch");
  validate(g);
  return g;
}

std::vector<i64> element_orders(const GroupTable& g) {
  std::vector<i64> ord(g.n);
  for (int a = 0; a < g.n; ++a) {
    int x = a;
    i64 o = 1;
    while (x != g.id) {
      x = g.at(x, a);
      ++o;
    }
    ord[a] = o;
  }
  return ord;
}

std::map<i64, i64> order_profile(const GroupTable& g) {
  std::map<i64, i64> prof;
  for (i64 o : element_orders(g)) ++prof[o];
  return prof;
}

bool is_abelian(const GroupTable& g) {
  for (int a = 0; a < g.n; ++a)
    for (int b = a + 1; b < g.n; ++b)
      if (g.at(a, b) != g.at(b, a)) return false;
  return true;
}

i64 center_size(const GroupTable& g) {
  i64 c = 0;
  for (int a = 0; a < g.n; ++a) {
    bool central = true;
    for (int b = 0; b < g.n && central; ++b) central = g.at(a, b) == g.at(b, a);
    if (central) ++c;
  }
  return c;
}

std::vector<int> closure(const GroupTable& g, std::vector<int> gens) {
  std::vector<bool> in(g.n, false);
  std::vector<int> out;
  auto add = [&](int x) {
    if (!in[x]) {
      in[x] = true;
      out.push_back(x);
    }
  };
  add(g.id);
  for (int x : gens) add(x);
  // Product fixpoint; the outer loop keeps covering freshly added elements.
  for (size_t i = 0; i < out.size(); ++i)
    for (size_t j = 0; j <= i; ++j) {
      add(g.at(out[i], out[j]));
      add(g.at(out[j], out[i]));
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<int>> all_subgroups(const GroupTable& g, i64 node_budget) {
  std::set<std::vector<int>> found;
  std::vector<std::vector<int>> worklist;
  std::vector<int> trivial{g.id};
  found.insert(trivial);
  worklist.push_back(trivial);
  i64 nodes = 0;
  while (!worklist.empty()) {
    std::vector<int> h = worklist.back();
    worklist.pop_back();
    std::vector<bool> in(g.n, false);
    for (int x : h) in[x] = true;
    for (int x = 0; x < g.n; ++x) {
      if (in[x]) continue;
      if (++nodes > node_budget) throw Error(Errc::BudgetExceeded, "subgroup enumeration budget");
      std::vector<int> gens = h;
      gens.push_back(x);
      std::vector<int> k = closure(g, gens);
      if (found.insert(k).second) worklist.push_back(k);
    }
  }
  std::vector<std::vector<int>> out(found.begin(), found.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

bool is_normal_subgroup(const GroupTable& g, const std::vector<int>& sub) {
  std::vector<bool> in(g.n, false);
  for (int x : sub) in[x] = true;
  for (int a = 0; a < g.n; ++a)
    for (int x : sub)
      if (!in[g.at(g.at(a, x), g.inv[a])]) return false;
  return true;
}

bool sylow_normal_by_count(const GroupTable& g, i64 prime, i64 sylow_order) {
  i64 count = 0;
  for (i64 o : element_orders(g)) {
    bool power = true;
    i64 r = o;
    while (r > 1) {
      if (r % prime) { power = false; break; }
      r /= prime;
    }
    if (power) ++count;
  }
  return count == sylow_order;
}

std::vector<int> sylow_subgroup(const GroupTable& g, int prime, i64 sylow_order) {
  std::vector<i64> ord = element_orders(g);
  auto is_p_power = [&](i64 o) {
    while (o > 1) {
      if (o % prime) return false;
      o /= prime;
    }
    return true;
  };
  // Seed with an element of maximal p-power order.
  int seed = g.id;
  i64 best = 1;
  for (int a = 0; a < g.n; ++a)
    if (is_p_power(ord[a]) && ord[a] > best) { best = ord[a]; seed = a; }
  std::vector<int> cur = closure(g, {seed});
  while (static_cast<i64>(cur.size()) < sylow_order) {
    std::vector<bool> in(g.n, false);
    for (int x : cur) in[x] = true;
    // Normaliser of cur.
    bool grown = false;
    for (int a = 0; a < g.n && !grown; ++a) {
      if (in[a] || !is_p_power(ord[a])) continue;
      bool normalises = true;
      for (int x : cur)
        if (!in[g.at(g.at(a, x), g.inv[a])]) { normalises = false; break; }
      if (!normalises) continue;
      std::vector<int> gens = cur;
      gens.push_back(a);
      std::vector<int> bigger = closure(g, gens);
      if (static_cast<i64>(bigger.size()) == static_cast<i64>(cur.size()) * prime) {
        cur = bigger;
        grown = true;
      }
    }
    if (!grown) throw Error(Errc::InternalSearchExhausted, "sylow growth stalled");
  }
  return cur;
}

i64 subgroup_exponent(const GroupTable& g, const std::vector<int>& sub) {
  std::vector<i64> ord = element_orders(g);
  i64 e = 1;
  for (int x : sub) e = std::lcm(e, ord[x]);
  return e;
}

int nilpotency_class(const GroupTable& g, const std::vector<int>& sub) {
  if (sub.size() <= 1) return 0;
  std::vector<int> layer = sub;
  int cls = 0;
  while (layer.size() > 1) {
    ++cls;
    std::vector<int> comms{g.id};
    for (int x : sub)
      for (int y : layer) {
        int c = g.at(g.at(g.inv[x], g.inv[y]), g.at(x, y));
        comms.push_back(c);
      }
    std::vector<int> next = closure(g, comms);
    if (next == layer) throw Error(Errc::InternalSearchExhausted, "lower central series stalls (not nilpotent)");
    layer = next;
  }
  return cls;
}

}  // namespace sbforge
