#pragma once

// Analysis utilities over explicit Cayley tables: orders, centers, Sylow
// normality, subgroup enumeration, nilpotency class. Everything here is
// oblivious to where the table came from.

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "sbforge/fp.hpp"

namespace sbforge {

struct GroupTable {
  int n = 0;
  int id = 0;
  std::vector<std::uint16_t> mul;  // n*n, row-major
  std::vector<std::uint16_t> inv;  // n

  int at(int a, int b) const { return mul[static_cast<size_t>(a) * n + b]; }
};

// Builds and validates a table: two-sided identity, inverses, associativity
// (exhaustive), Latin-square rows/columns. Throws NotAGroup.
GroupTable table_from_fn(int n, const std::function<int(int, int)>& f);

// Same checks over an existing raw table.
GroupTable table_from_raw(int n, std::vector<std::uint16_t> mul);

std::vector<i64> element_orders(const GroupTable& g);
std::map<i64, i64> order_profile(const GroupTable& g);
bool is_abelian(const GroupTable& g);
i64 center_size(const GroupTable& g);

std::vector<int> closure(const GroupTable& g, std::vector<int> gens);

// Whole subgroup lattice by closure of grown generator sets, sorted sets in
// deterministic order. node_budget caps closure invocations (BudgetExceeded).
std::vector<std::vector<int>> all_subgroups(const GroupTable& g, i64 node_budget = 10'000'000);

bool is_normal_subgroup(const GroupTable& g, const std::vector<int>& sub);

// For |G| = p^p * q: the Sylow subgroup for the given prime power is normal
// iff the element count of that order class is exactly the subgroup size.
bool sylow_normal_by_count(const GroupTable& g, i64 prime, i64 sylow_order);

// One Sylow p-subgroup of order p^e, grown along the normaliser chain.
std::vector<int> sylow_subgroup(const GroupTable& g, int prime, i64 sylow_order);

i64 subgroup_exponent(const GroupTable& g, const std::vector<int>& sub);

// Nilpotency class via the lower central series; 0 for the trivial subgroup.
int nilpotency_class(const GroupTable& g, const std::vector<int>& sub);

}  // namespace sbforge
