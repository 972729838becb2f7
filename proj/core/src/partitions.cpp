#include "orthotau/partitions.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <sstream>

namespace orthotau {

namespace {

// Partitions of w into strictly decreasing positive parts, each list built
// largest-part-first.  Shifting every part down by one turns these into the
// strict partitions of weight w (trailing zero included).
void distinct_partitions_rec(int remaining, int max_part,
                             std::vector<int>& acc,
                             std::vector<std::vector<int>>& out) {
  if (remaining == 0) {
    out.push_back(acc);
    return;
  }
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    // The tail below `part` can hold at most part-1 + part-2 + ... = C(part,2).
    if (remaining - part > part * (part - 1) / 2) continue;
    acc.push_back(part);
    distinct_partitions_rec(remaining - part, part - 1, acc, out);
    acc.pop_back();
  }
}

void tuples_rec(const std::vector<std::vector<StrictPartition>>& by_weight,
                int alpha, int n, int remaining, StrictTuple& acc,
                std::vector<StrictTuple>& out) {
  if (alpha == n) {
    if (remaining == 0) out.push_back(acc);
    return;
  }
  // The last component must absorb exactly the remaining weight; earlier
  // components may take any share of it.
  for (int w = 0; w <= remaining; ++w) {
    if (alpha == n - 1 && w != remaining) continue;
    for (const StrictPartition& p : by_weight[static_cast<size_t>(w)]) {
      acc.components[static_cast<size_t>(alpha)] = p;
      tuples_rec(by_weight, alpha + 1, n, remaining - w, acc, out);
    }
  }
}

}  // namespace

bool strict_partition_valid(const StrictPartition& p) {
  for (size_t i = 0; i < p.parts.size(); ++i) {
    if (p.parts[i] < 0) return false;
    if (i > 0 && p.parts[i - 1] <= p.parts[i]) return false;
  }
  return true;
}

int strict_partition_weight(const StrictPartition& p) {
  int w = 0;
  for (int x : p.parts) w += x + 1;
  return w;
}

std::string strict_partition_to_text(const StrictPartition& p) {
  if (p.parts.empty()) return "∅";
  std::ostringstream os;
  os << '(';
  for (size_t i = 0; i < p.parts.size(); ++i) {
    if (i) os << ',';
    os << p.parts[i];
  }
  os << ')';
  return os.str();
}

bool strict_partition_less(const StrictPartition& a, const StrictPartition& b) {
  int wa = strict_partition_weight(a), wb = strict_partition_weight(b);
  if (wa != wb) return wa < wb;
  if (a.parts.size() != b.parts.size()) return a.parts.size() < b.parts.size();
  return a.parts < b.parts;
}

bool tuple_valid(const StrictTuple& t) {
  for (const StrictPartition& p : t.components)
    if (!strict_partition_valid(p)) return false;
  return true;
}

int tuple_cardinality(const StrictTuple& t) {
  int c = 0;
  for (const StrictPartition& p : t.components)
    c += static_cast<int>(p.parts.size());
  return c;
}

int tuple_weight(const StrictTuple& t) {
  int w = 0;
  for (const StrictPartition& p : t.components)
    w += strict_partition_weight(p);
  return w;
}

std::string tuple_to_text(const StrictTuple& t) {
  std::ostringstream os;
  os << '(';
  for (size_t i = 0; i < t.components.size(); ++i) {
    if (i) os << ',';
    os << strict_partition_to_text(t.components[i]);
  }
  os << ')';
  return os.str();
}

bool tuple_less(const StrictTuple& a, const StrictTuple& b) {
  int wa = tuple_weight(a), wb = tuple_weight(b);
  if (wa != wb) return wa < wb;
  if (a.components.size() != b.components.size())
    return a.components.size() < b.components.size();
  for (size_t i = 0; i < a.components.size(); ++i) {
    if (strict_partition_less(a.components[i], b.components[i])) return true;
    if (strict_partition_less(b.components[i], a.components[i])) return false;
  }
  return false;
}

std::vector<TupleSlot> tuple_slots(const StrictTuple& t) {
  std::vector<TupleSlot> slots;
  for (size_t c = 0; c < t.components.size(); ++c) {
    // Parts are stored strictly decreasing, so iterating in storage order
    // yields p descending within the component.
    for (int part : t.components[c].parts)
      slots.push_back(TupleSlot{static_cast<int>(c) + 1, part_plus_half(part)});
  }
  return slots;
}

std::vector<StrictPartition> strict_partitions_of_weight(int w) {
  if (w < 0) throw config_error("strict_partitions_of_weight: negative weight");
  std::vector<std::vector<int>> raw;
  std::vector<int> acc;
  distinct_partitions_rec(w, w, acc, raw);
  std::vector<StrictPartition> out;
  out.reserve(raw.size());
  for (const std::vector<int>& parts : raw) {
    StrictPartition p;
    p.parts.reserve(parts.size());
    for (int x : parts) p.parts.push_back(x - 1);
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<StrictTuple> enumerate_strict_tuples(int n, int max_weight) {
  if (n < 1) throw config_error("enumerate_strict_tuples: need n >= 1");
  if (max_weight < 0)
    throw config_error("enumerate_strict_tuples: negative max_weight");
  std::vector<std::vector<StrictPartition>> by_weight;
  by_weight.reserve(static_cast<size_t>(max_weight) + 1);
  for (int w = 0; w <= max_weight; ++w)
    by_weight.push_back(strict_partitions_of_weight(w));

  std::vector<StrictTuple> out;
  StrictTuple acc;
  acc.components.resize(static_cast<size_t>(n));
  for (int w = 0; w <= max_weight; ++w)
    tuples_rec(by_weight, 0, n, w, acc, out);
  return out;
}

bool maya_component_valid(const MayaComponent& m) {
  auto check = [](const std::vector<HalfInt>& v) {
    for (size_t i = 0; i < v.size(); ++i) {
      if (v[i].twice <= 0 || v[i].twice % 2 == 0) return false;
      if (i > 0 && !(v[i] < v[i - 1])) return false;
    }
    return true;
  };
  return check(m.particles) && check(m.holes);
}

int maya_charge(const MayaComponent& m) {
  return static_cast<int>(m.particles.size()) -
         static_cast<int>(m.holes.size());
}

ChargedYoung maya_component_to_charged_young(const MayaComponent& m) {
  if (!maya_component_valid(m))
    throw config_error("maya_component_to_charged_young: invalid component");
  const int n = maya_charge(m);

  // Occupied positions, largest first: the particles, then every negative
  // half-integer that is not a hole.  Row k of the diagram is
  // rows[k] = m_k + k - 1/2 - n (1-based k), which hits zero for good once
  // the occupied positions become consecutive; scanning past all particles
  // and all holes is enough.
  std::set<int> hole_twice;
  for (const HalfInt& q : m.holes) hole_twice.insert(-q.twice);

  std::vector<int> rows;
  size_t pi = 0;
  int neg = -1;  // twice the next negative candidate
  int k = 0;
  while (true) {
    int mk;
    if (pi < m.particles.size()) {
      mk = m.particles[pi].twice;
      ++pi;
    } else {
      while (hole_twice.count(neg)) neg -= 2;
      mk = neg;
      neg -= 2;
    }
    ++k;
    int num = mk + 2 * k - 1 - 2 * n;  // twice the row length
    if (num % 2 != 0)
      throw internal_error("maya conversion: non-integer row length");
    int row = num / 2;
    if (row < 0)
      throw internal_error("maya conversion: negative row length");
    if (row == 0 && pi >= m.particles.size() &&
        (hole_twice.empty() || mk < *hole_twice.begin()))
      break;  // past all particles and holes: zero from here on
    if (row > 0) rows.push_back(row);
    if (k > 4 * static_cast<int>(m.particles.size() + m.holes.size()) +
            2 * std::abs(n) + 8)
      throw internal_error("maya conversion: row scan failed to terminate");
  }
  for (size_t i = 1; i < rows.size(); ++i)
    if (rows[i] > rows[i - 1])
      throw internal_error("maya conversion: rows not weakly decreasing");
  return ChargedYoung{std::move(rows), n};
}

MayaComponent charged_young_to_maya_component(const ChargedYoung& y) {
  for (size_t i = 0; i < y.rows.size(); ++i) {
    if (y.rows[i] <= 0)
      throw config_error("charged_young_to_maya_component: nonpositive row");
    if (i > 0 && y.rows[i] > y.rows[i - 1])
      throw config_error("charged_young_to_maya_component: rows increase");
  }
  const int n = y.charge;
  const int len = static_cast<int>(y.rows.size());

  // Occupied positions m_k = rows[k] - k + 1/2 + n for k <= len, then the
  // consecutive tail -k + 1/2 + n for k > len.
  std::set<int> occupied_twice;  // only those > some floor matter
  std::vector<int> listed;
  int k0 = std::max(len, std::max(n, 0));
  for (int k = 1; k <= k0; ++k) {
    int row = (k <= len) ? y.rows[static_cast<size_t>(k) - 1] : 0;
    listed.push_back(2 * row - 2 * k + 1 + 2 * n);
  }
  // Below this value every position is occupied.
  int floor_twice = -2 * (k0 + 1) + 1 + 2 * n;

  MayaComponent m;
  for (int t : listed) {
    if (t > 0) m.particles.push_back(HalfInt{t});
    occupied_twice.insert(t);
  }
  for (int t = -1; t > floor_twice; t -= 2)
    if (!occupied_twice.count(t)) m.holes.push_back(HalfInt{-t});
  // particles were pushed in m_k order (decreasing); holes ascend in |t|, so
  // reverse to make them decreasing.
  std::sort(m.holes.begin(), m.holes.end(),
            [](const HalfInt& a, const HalfInt& b) { return b < a; });
  if (!maya_component_valid(m) || maya_charge(m) != n)
    throw internal_error("charged_young_to_maya_component: bad reconstruction");
  return m;
}

std::vector<ChargedYoung> maya_to_charged_young(const MayaTuple& m) {
  std::vector<ChargedYoung> out;
  out.reserve(m.components.size());
  for (const MayaComponent& c : m.components)
    out.push_back(maya_component_to_charged_young(c));
  return out;
}

CombinedPartition combined_strict_partition(const StrictTuple& t, int n) {
  if (static_cast<int>(t.components.size()) != n)
    throw config_error("combined_strict_partition: tuple size != n");
  CombinedPartition cp;
  for (int alpha = 1; alpha <= n; ++alpha)
    for (int part : t.components[static_cast<size_t>(alpha) - 1].parts)
      cp.entries.push_back((n - alpha) + part * (n - 1));
  std::sort(cp.entries.begin(), cp.entries.end(), std::greater<int>());
  cp.strict = true;
  for (size_t i = 1; i < cp.entries.size(); ++i)
    if (cp.entries[i] == cp.entries[i - 1]) cp.strict = false;
  return cp;
}

}  // namespace orthotau
