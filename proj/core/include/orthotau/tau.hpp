#pragma once

// Tau-function expansion engines over the factor kernels.
//
// Pfaffian expansion: over tuples of strict partitions (one per matrix
// component, even total cardinality) with the canonical slot ordering,
//   tau_pf = sum_tuples Pf(S a)_slots * Pf(d S)_slots,
// where the minors are (S a^{p_i}_{-p_j}) and (d^{-p_i}_{p_j} S) evaluated at
// the slots' component indices.  The empty tuple contributes +1.
//
// Determinant expansion: over pairs of equal-cardinality tuples,
//   tau_det = sum (-1)^k det(a^{p_i}_{-q_j}) det(d^{-q_i}_{p_j}),
// graded by the combined weight of both tuples.  For orthogonal data
// tau_det = tau_pf^2, which square_check verifies weight by weight.
//
// fredholm_pfaffian_truncated assembles the same Pfaffian value as a single
// finite antisymmetric form on all modes up to a cutoff instead of a sum over
// tuples; the two must agree at matching truncations.

#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "orthotau/error.hpp"
#include "orthotau/halfint.hpp"
#include "orthotau/kernels.hpp"
#include "orthotau/linalg.hpp"
#include "orthotau/matrix.hpp"
#include "orthotau/partitions.hpp"
#include "orthotau/ring.hpp"

namespace orthotau {

// One retained term of the Pfaffian expansion (also the minor-table row).
template <class Elem>
struct MinorRow {
  StrictTuple tuple;
  Elem pf_d;  // Pf(d S) minor
  Elem pf_a;  // Pf(S a) minor
};

template <class Elem>
struct PfTauResult {
  Elem value;
  long max_weight = 0;
  bool exact = false;  // no tuple beyond max_weight can contribute
  std::vector<MinorRow<Elem>> ledger;  // rows with nonzero Pf(d S), weight-ascending
};

// One retained term of the determinant expansion.
template <class Elem>
struct WidomTerm {
  StrictTuple rows;  // p-side tuple
  StrictTuple cols;  // q-side tuple
  Elem det_a;
  Elem det_d;
};

template <class Elem>
struct WidomTauResult {
  Elem value;
  long max_weight = 0;
  bool exact = false;
  std::vector<WidomTerm<Elem>> ledger;  // terms with nonzero det_d, weight-ascending
};

namespace tau_detail {

// (S * a^{p}_{-q}) entry at 1-based (row, col).
template <ScalarRing R>
typename R::Elem sa_entry(const R& ring, const KernelBlocks<typename R::Elem>& a,
                          const Mat<typename R::Elem>& s, const HalfInt& p, const HalfInt& q,
                          int row, int col) {
  Mat<typename R::Elem> blk = kernel_block(ring, a, p, q);
  typename R::Elem acc = ring.zero();
  for (int m = 0; m < s.n; ++m)
    acc = ring.add(acc, ring.mul(s.at(row - 1, m), blk.at(m, col - 1)));
  return acc;
}

// (d^{-q}_{p} * S) entry at 1-based (row, col); the block is stored under the
// key (p, q).
template <ScalarRing R>
typename R::Elem ds_entry(const R& ring, const KernelBlocks<typename R::Elem>& d,
                          const Mat<typename R::Elem>& s, const HalfInt& q, const HalfInt& p,
                          int row, int col) {
  Mat<typename R::Elem> blk = kernel_block(ring, d, p, q);
  typename R::Elem acc = ring.zero();
  for (int m = 0; m < s.n; ++m)
    acc = ring.add(acc, ring.mul(blk.at(row - 1, m), s.at(m, col - 1)));
  return acc;
}

// Blocks touched by weight-w terms have index sums at most w - 1, so the
// kernels must either cover that window or be exhausted.
template <class Elem>
void require_window(const KernelBlocks<Elem>& kb, long max_weight, const char* who) {
  if (kb.exhausted || kb.max_weight >= max_weight - 1) return;
  throw config_error(std::string(who) + ": kernel truncation smaller than the requested weight");
}

template <ScalarRing R>
void require_orthogonal(const R& ring, const KernelBlocks<typename R::Elem>& kb,
                        const Mat<typename R::Elem>& s, const char* who) {
  if (!check_antisymmetry(ring, kb, s).empty())
    throw config_error(std::string(who) +
                       ": kernel blocks violate the orthogonal antisymmetry relations");
}

inline int slot_weight(int twice_p) { return (twice_p + 1) / 2; }

}  // namespace tau_detail

// Largest total weight an even-cardinality tuple can reach while every slot
// still touches a nonzero block of d; Pfaffian-expansion terms of any greater
// weight vanish.  A slot (component, p) participates when some stored block
// gives it a nonzero row or a nonzero S-paired column.
template <ScalarRing R>
long pf_support_bound(const R& ring, const KernelBlocks<typename R::Elem>& d,
                      const Mat<typename R::Elem>& s) {
  std::set<std::pair<int, int>> slots;  // (component alpha, twice p)
  for (const auto& [key, blk] : d.blocks) {
    for (int r = 0; r < d.n; ++r)
      for (int c = 0; c < d.n; ++c) {
        if (ring.is_zero(blk.at(r, c))) continue;
        slots.insert({r + 1, key.second});
        for (int b = 0; b < d.n; ++b)
          if (!ring.is_zero(s.at(c, b))) slots.insert({b + 1, key.first});
      }
  }
  long total = 0;
  int min_w = 0;
  for (const auto& [alpha, tp] : slots) {
    (void)alpha;
    const int w = tau_detail::slot_weight(tp);
    total += w;
    min_w = min_w == 0 ? w : std::min(min_w, w);
  }
  if (slots.size() % 2 != 0) total -= min_w;
  return total;
}

// Same bound for the determinant expansion: the d minor needs k row slots and
// k column slots, so the best weight is the heaviest k-subset of each side.
template <ScalarRing R>
long widom_support_bound(const R& ring, const KernelBlocks<typename R::Elem>& d) {
  std::set<std::pair<int, int>> qslots, pslots;
  for (const auto& [key, blk] : d.blocks) {
    for (int r = 0; r < d.n; ++r)
      for (int c = 0; c < d.n; ++c) {
        if (ring.is_zero(blk.at(r, c))) continue;
        qslots.insert({r + 1, key.second});
        pslots.insert({c + 1, key.first});
      }
  }
  std::vector<long> qw, pw;
  for (const auto& [alpha, tp] : qslots) {
    (void)alpha;
    qw.push_back(tau_detail::slot_weight(tp));
  }
  for (const auto& [alpha, tp] : pslots) {
    (void)alpha;
    pw.push_back(tau_detail::slot_weight(tp));
  }
  std::sort(qw.rbegin(), qw.rend());
  std::sort(pw.rbegin(), pw.rend());
  long best = 0, qsum = 0, psum = 0;
  const std::size_t kmax = std::min(qw.size(), pw.size());
  for (std::size_t k = 0; k < kmax; ++k) {
    qsum += qw[k];
    psum += pw[k];
    best = std::max(best, qsum + psum);
  }
  return best;
}

// Pfaffian minor expansion of tau.  Requires orthogonal kernels (the minors
// must be antisymmetric) and windows covering the requested weight.
template <ScalarRing R>
PfTauResult<typename R::Elem> pfaffian_tau(const R& ring,
                                           const KernelBlocks<typename R::Elem>& a,
                                           const KernelBlocks<typename R::Elem>& d,
                                           const Mat<typename R::Elem>& s, long max_weight,
                                           bool keep_ledger = true) {
  using Elem = typename R::Elem;
  if (a.kind != KernelKind::A || d.kind != KernelKind::D)
    throw config_error("pfaffian_tau: kernel kinds mismatched");
  if (a.n != d.n || s.n != a.n) throw config_error("pfaffian_tau: dimension mismatch");
  tau_detail::require_window(a, max_weight, "pfaffian_tau");
  tau_detail::require_window(d, max_weight, "pfaffian_tau");
  tau_detail::require_orthogonal(ring, a, s, "pfaffian_tau");
  tau_detail::require_orthogonal(ring, d, s, "pfaffian_tau");

  PfTauResult<Elem> res;
  res.value = ring.one();  // empty tuple
  res.max_weight = max_weight;
  for (const StrictTuple& t : enumerate_strict_tuples(a.n, static_cast<int>(max_weight))) {
    const int k = tuple_cardinality(t);
    if (k == 0 || k % 2 != 0) continue;
    const std::vector<TupleSlot> slots = tuple_slots(t);

    Mat<Elem> mds(k, ring.zero());
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        if (i == j) continue;
        mds.at(i, j) = tau_detail::ds_entry(ring, d, s, slots[static_cast<std::size_t>(i)].p,
                                            slots[static_cast<std::size_t>(j)].p,
                                            slots[static_cast<std::size_t>(i)].alpha,
                                            slots[static_cast<std::size_t>(j)].alpha);
      }
    const Elem pf_d = pfaffian(ring, mds);
    if (ring.is_zero(pf_d)) continue;

    Mat<Elem> msa(k, ring.zero());
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        if (i == j) continue;
        msa.at(i, j) = tau_detail::sa_entry(ring, a, s, slots[static_cast<std::size_t>(i)].p,
                                            slots[static_cast<std::size_t>(j)].p,
                                            slots[static_cast<std::size_t>(i)].alpha,
                                            slots[static_cast<std::size_t>(j)].alpha);
      }
    const Elem pf_a = pfaffian(ring, msa);
    res.value = ring.add(res.value, ring.mul(pf_d, pf_a));
    if (keep_ledger) res.ledger.push_back(MinorRow<Elem>{t, pf_d, pf_a});
  }
  res.exact = d.exhausted && max_weight >= pf_support_bound(ring, d, s);
  return res;
}

// The minor-table rows: every tuple with a nonzero Pf(d S) minor, weight by
// weight, together with its Pf(S a) companion.
template <ScalarRing R>
std::vector<MinorRow<typename R::Elem>> minor_tables(const R& ring,
                                                     const KernelBlocks<typename R::Elem>& a,
                                                     const KernelBlocks<typename R::Elem>& d,
                                                     const Mat<typename R::Elem>& s,
                                                     long max_weight) {
  return pfaffian_tau(ring, a, d, s, max_weight, true).ledger;
}

// Determinant minor expansion of tau.  No orthogonality is required.
template <ScalarRing R>
WidomTauResult<typename R::Elem> widom_tau(const R& ring,
                                           const KernelBlocks<typename R::Elem>& a,
                                           const KernelBlocks<typename R::Elem>& d,
                                           long max_weight, bool keep_ledger = true) {
  using Elem = typename R::Elem;
  if (a.kind != KernelKind::A || d.kind != KernelKind::D)
    throw config_error("widom_tau: kernel kinds mismatched");
  if (a.n != d.n) throw config_error("widom_tau: dimension mismatch");
  tau_detail::require_window(a, max_weight, "widom_tau");
  tau_detail::require_window(d, max_weight, "widom_tau");

  const std::vector<StrictTuple> tuples =
      enumerate_strict_tuples(a.n, static_cast<int>(max_weight));
  WidomTauResult<Elem> res;
  res.value = ring.one();  // empty index pair
  res.max_weight = max_weight;
  // Weight-major enumeration over pairs keeps the ledger graded.
  for (long w = 1; w <= max_weight; ++w) {
    for (const StrictTuple& tp : tuples) {
      const long wp = tuple_weight(tp);
      if (wp == 0 || wp > w) continue;
      const int k = tuple_cardinality(tp);
      for (const StrictTuple& tq : tuples) {
        if (tuple_weight(tq) != w - wp) continue;
        if (tuple_cardinality(tq) != k) continue;
        if (k > 16) throw internal_error("widom_tau: minor size above the exact-determinant cap");
        const std::vector<TupleSlot> ps = tuple_slots(tp);
        const std::vector<TupleSlot> qs = tuple_slots(tq);

        Mat<Elem> dm(k, ring.zero());
        for (int i = 0; i < k; ++i)
          for (int j = 0; j < k; ++j) {
            Mat<Elem> blk = kernel_block(ring, d, ps[static_cast<std::size_t>(j)].p,
                                         qs[static_cast<std::size_t>(i)].p);
            dm.at(i, j) = blk.at(qs[static_cast<std::size_t>(i)].alpha - 1,
                                 ps[static_cast<std::size_t>(j)].alpha - 1);
          }
        const Elem det_d = det_subset_dp(ring, dm);
        if (ring.is_zero(det_d)) continue;

        Mat<Elem> am(k, ring.zero());
        for (int i = 0; i < k; ++i)
          for (int j = 0; j < k; ++j) {
            Mat<Elem> blk = kernel_block(ring, a, ps[static_cast<std::size_t>(i)].p,
                                         qs[static_cast<std::size_t>(j)].p);
            am.at(i, j) = blk.at(ps[static_cast<std::size_t>(i)].alpha - 1,
                                 qs[static_cast<std::size_t>(j)].alpha - 1);
          }
        const Elem det_a = det_subset_dp(ring, am);
        Elem term = ring.mul(det_a, det_d);
        if (k % 2 != 0) term = ring.neg(term);
        res.value = ring.add(res.value, term);
        if (keep_ledger) res.ledger.push_back(WidomTerm<Elem>{tp, tq, det_a, det_d});
      }
    }
  }
  res.exact = d.exhausted && max_weight >= widom_support_bound(ring, d);
  return res;
}

// Weight-graded comparison of the determinant expansion against the square of
// the Pfaffian expansion.  Both sides are complete for every weight up to
// max_weight, so the difference must vanish there (exactly over exact rings).
template <class Elem>
struct SquareCheckReport {
  bool ok = true;
  long max_weight = 0;
  std::vector<Elem> det_by_weight;     // graded determinant expansion
  std::vector<Elem> square_by_weight;  // graded square of the Pfaffian expansion
};

template <ScalarRing R>
SquareCheckReport<typename R::Elem> square_check(const R& ring,
                                                 const KernelBlocks<typename R::Elem>& a,
                                                 const KernelBlocks<typename R::Elem>& d,
                                                 const Mat<typename R::Elem>& s,
                                                 long max_weight) {
  using Elem = typename R::Elem;
  PfTauResult<Elem> pf = pfaffian_tau(ring, a, d, s, max_weight, true);
  WidomTauResult<Elem> det = widom_tau(ring, a, d, max_weight, true);

  const std::size_t nw = static_cast<std::size_t>(max_weight) + 1;
  std::vector<Elem> po(nw, ring.zero()), wi(nw, ring.zero());
  po[0] = ring.one();
  wi[0] = ring.one();
  for (const MinorRow<Elem>& row : pf.ledger)
    po[static_cast<std::size_t>(tuple_weight(row.tuple))] =
        ring.add(po[static_cast<std::size_t>(tuple_weight(row.tuple))],
                 ring.mul(row.pf_d, row.pf_a));
  for (const WidomTerm<Elem>& term : det.ledger) {
    const std::size_t w =
        static_cast<std::size_t>(tuple_weight(term.rows) + tuple_weight(term.cols));
    Elem v = ring.mul(term.det_a, term.det_d);
    if (tuple_cardinality(term.rows) % 2 != 0) v = ring.neg(v);
    wi[w] = ring.add(wi[w], v);
  }

  SquareCheckReport<Elem> rep;
  rep.max_weight = max_weight;
  for (std::size_t w = 0; w < nw; ++w) {
    Elem sq = ring.zero();
    for (std::size_t u = 0; u <= w; ++u) sq = ring.add(sq, ring.mul(po[u], po[w - u]));
    rep.det_by_weight.push_back(wi[w]);
    rep.square_by_weight.push_back(sq);
    if (!ring.equal(wi[w], sq)) rep.ok = false;
  }
  return rep;
}

// Tau as the Pfaffian of one finite antisymmetric form on all modes with
// index <= mode_cutoff: pairing of plus and minus modes on the diagonal
// blocks' complement, -(S a) on the plus block and +(d S) on the minus block.
// The overall sign normalizes the kernel-free value to +1.  Agrees with
// pfaffian_tau at matching truncation (max_weight ~ 2 * mode_cutoff).
template <ScalarRing R>
typename R::Elem fredholm_pfaffian_truncated(const R& ring,
                                             const KernelBlocks<typename R::Elem>& a,
                                             const KernelBlocks<typename R::Elem>& d,
                                             const Mat<typename R::Elem>& s, long mode_cutoff) {
  using Elem = typename R::Elem;
  if (a.kind != KernelKind::A || d.kind != KernelKind::D)
    throw config_error("fredholm_pfaffian_truncated: kernel kinds mismatched");
  if (a.n != d.n || s.n != a.n)
    throw config_error("fredholm_pfaffian_truncated: dimension mismatch");
  if (mode_cutoff < 0) throw config_error("fredholm_pfaffian_truncated: negative mode cutoff");
  tau_detail::require_window(a, 2 * mode_cutoff, "fredholm_pfaffian_truncated");
  tau_detail::require_window(d, 2 * mode_cutoff, "fredholm_pfaffian_truncated");

  const int n = a.n;
  const int kdim = n * static_cast<int>(mode_cutoff);
  // Slot (m, alpha) at flat index m*n + alpha - 1 carries p = m + 1/2.
  Mat<Elem> t(2 * kdim, ring.zero());
  for (int mi = 0; mi < mode_cutoff; ++mi)
    for (int ai = 1; ai <= n; ++ai) {
      const int i = mi * n + ai - 1;
      const HalfInt pi = part_plus_half(mi);
      for (int mj = 0; mj < mode_cutoff; ++mj)
        for (int aj = 1; aj <= n; ++aj) {
          const int j = mj * n + aj - 1;
          const HalfInt pj = part_plus_half(mj);
          t.at(i, j) = ring.neg(tau_detail::sa_entry(ring, a, s, pi, pj, ai, aj));
          t.at(kdim + i, kdim + j) = tau_detail::ds_entry(ring, d, s, pi, pj, ai, aj);
        }
      t.at(i, kdim + i) = ring.one();
      t.at(kdim + i, i) = ring.neg(ring.one());
    }
  const Elem pf = pfaffian(ring, t);
  const bool flip = (static_cast<long>(kdim) * (kdim - 1) / 2) % 2 != 0;
  return flip ? ring.neg(pf) : pf;
}

}  // namespace orthotau
