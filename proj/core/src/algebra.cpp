#include "orthotau/algebra.hpp"

#include <sstream>

namespace orthotau {

namespace {

const RationalRing kQ{};

// s_i for the signed antidiagonal S (1-based i).  Signs alternate starting
// from +1 at each end; for even sizes this makes the two middle entries
// equal.  Validated below through G^T = -S G S for every generator.
int involution_sign(const AlgebraSpec& spec, int i) {
  int n = spec.size();
  int k = std::min(i, n + 1 - i);
  return (k % 2 == 1) ? 1 : -1;
}

RMat build_involution(const AlgebraSpec& spec) {
  int n = spec.size();
  RMat s = mat_zero(kQ, n);
  for (int i = 1; i <= n; ++i)
    add_entry(kQ, s, i, n + 1 - i, Rational(involution_sign(spec, i)));
  return s;
}

struct GeneratorSet {
  std::vector<RMat> E, F, H;
};

GeneratorSet build_generators(const AlgebraSpec& spec) {
  const int l = spec.rank;
  const int n = spec.size();
  const Rational one(1), two(2), half(1, 2), mone(-1);

  GeneratorSet g;
  g.E.assign(l + 1, mat_zero(kQ, n));
  g.F.assign(l + 1, mat_zero(kQ, n));
  g.H.assign(l + 1, mat_zero(kQ, n));

  if (spec.series == Series::B) {
    // Affine node.
    add_entry(kQ, g.E[0], 1, 2 * l, half);
    add_entry(kQ, g.E[0], 2, 2 * l + 1, half);
    add_entry(kQ, g.F[0], 2 * l, 1, two);
    add_entry(kQ, g.F[0], 2 * l + 1, 2, two);
    add_entry(kQ, g.H[0], 1, 1, one);
    add_entry(kQ, g.H[0], 2, 2, one);
    add_entry(kQ, g.H[0], 2 * l, 2 * l, mone);
    add_entry(kQ, g.H[0], 2 * l + 1, 2 * l + 1, mone);
    // Interior nodes.
    for (int i = 1; i <= l - 1; ++i) {
      add_entry(kQ, g.E[i], i + 1, i, one);
      add_entry(kQ, g.E[i], 2 * l + 2 - i, 2 * l + 1 - i, one);
      add_entry(kQ, g.F[i], i, i + 1, one);
      add_entry(kQ, g.F[i], 2 * l + 1 - i, 2 * l + 2 - i, one);
      add_entry(kQ, g.H[i], i, i, mone);
      add_entry(kQ, g.H[i], i + 1, i + 1, one);
      add_entry(kQ, g.H[i], 2 * l + 1 - i, 2 * l + 1 - i, mone);
      add_entry(kQ, g.H[i], 2 * l + 2 - i, 2 * l + 2 - i, one);
    }
    // Short node.
    add_entry(kQ, g.E[l], l + 1, l, one);
    add_entry(kQ, g.E[l], l + 2, l + 1, one);
    add_entry(kQ, g.F[l], l, l + 1, one);
    add_entry(kQ, g.F[l], l + 1, l + 2, one);
    add_entry(kQ, g.H[l], l, l, mone);
    add_entry(kQ, g.H[l], l + 2, l + 2, one);
  } else {
    // Affine node.
    add_entry(kQ, g.E[0], 1, 2 * l - 1, half);
    add_entry(kQ, g.E[0], 2, 2 * l, half);
    add_entry(kQ, g.F[0], 2 * l - 1, 1, two);
    add_entry(kQ, g.F[0], 2 * l, 2, two);
    add_entry(kQ, g.H[0], 1, 1, one);
    add_entry(kQ, g.H[0], 2, 2, one);
    add_entry(kQ, g.H[0], 2 * l - 1, 2 * l - 1, mone);
    add_entry(kQ, g.H[0], 2 * l, 2 * l, mone);
    // Interior nodes.
    for (int i = 1; i <= l - 1; ++i) {
      add_entry(kQ, g.E[i], i + 1, i, one);
      add_entry(kQ, g.E[i], 2 * l + 1 - i, 2 * l - i, one);
      add_entry(kQ, g.F[i], i, i + 1, one);
      add_entry(kQ, g.F[i], 2 * l - i, 2 * l + 1 - i, one);
      add_entry(kQ, g.H[i], i, i, mone);
      add_entry(kQ, g.H[i], i + 1, i + 1, one);
      add_entry(kQ, g.H[i], 2 * l - i, 2 * l - i, mone);
      add_entry(kQ, g.H[i], 2 * l + 1 - i, 2 * l + 1 - i, one);
    }
    // Fork node.
    add_entry(kQ, g.E[l], l + 1, l - 1, half);
    add_entry(kQ, g.E[l], l + 2, l, half);
    add_entry(kQ, g.F[l], l - 1, l + 1, two);
    add_entry(kQ, g.F[l], l, l + 2, two);
    add_entry(kQ, g.H[l], l - 1, l - 1, mone);
    add_entry(kQ, g.H[l], l, l, mone);
    add_entry(kQ, g.H[l], l + 1, l + 1, one);
    add_entry(kQ, g.H[l], l + 2, l + 2, one);
  }
  return g;
}

RMat bracket(const RMat& a, const RMat& b) {
  return mat_sub(kQ, mat_mul(kQ, a, b), mat_mul(kQ, b, a));
}

[[noreturn]] void construction_failure(const std::string& what) {
  throw internal_error("build_algebra: construction self-check failed: " +
                       what);
}

// Solve bracket = c * base for an integer scalar c, requiring exact equality.
long pairing_scalar(const RMat& br, const RMat& base, const std::string& ctx) {
  // base is nonzero by construction; find its first nonzero entry.
  int pi = -1, pj = -1;
  for (int i = 0; i < base.n && pi < 0; ++i)
    for (int j = 0; j < base.n; ++j)
      if (!kQ.is_zero(base.at(i, j))) {
        pi = i;
        pj = j;
        break;
      }
  if (pi < 0) construction_failure(ctx + ": zero generator");
  Rational c = br.at(pi, pj) / base.at(pi, pj);
  c.canonicalize();
  if (c.get_den() != 1)
    construction_failure(ctx + ": non-integer pairing scalar");
  if (!mat_equal(kQ, br, mat_scale(kQ, c, base)))
    construction_failure(ctx + ": bracket is not a multiple of the generator");
  return static_cast<long>(c.get_num().get_si());
}

void verify_chevalley(const ChevalleyData& d) {
  const int l = d.spec.rank;
  const int n = d.spec.size();
  const RMat id = mat_identity(kQ, n);

  if (!mat_equal(kQ, d.S, mat_transpose(d.S)))
    construction_failure("S is not symmetric");
  if (!mat_equal(kQ, mat_mul(kQ, d.S, d.S), id))
    construction_failure("S is not an involution");

  for (int i = 0; i <= l; ++i) {
    for (const RMat* g : {&d.E[i], &d.F[i], &d.H[i]}) {
      RMat lhs = mat_transpose(*g);
      RMat rhs = mat_neg(kQ, mat_mul(kQ, d.S, mat_mul(kQ, *g, d.S)));
      if (!mat_equal(kQ, lhs, rhs))
        construction_failure("generator is not S-skew at node " +
                             std::to_string(i));
    }
  }

  for (int i = 0; i <= l; ++i) {
    for (int j = 0; j <= l; ++j) {
      std::string ctx = "nodes (" + std::to_string(i) + "," +
                        std::to_string(j) + ")";
      long a = d.cartan[i][j];
      if (!mat_equal(kQ, bracket(d.H[i], d.E[j]),
                     mat_scale(kQ, Rational(a), d.E[j])))
        construction_failure("[H,E] pairing at " + ctx);
      if (!mat_equal(kQ, bracket(d.H[i], d.F[j]),
                     mat_scale(kQ, Rational(-a), d.F[j])))
        construction_failure("[H,F] pairing at " + ctx);
      RMat ef = bracket(d.E[i], d.F[j]);
      RMat want = (i == j) ? d.H[i] : mat_zero(kQ, n);
      if (!mat_equal(kQ, ef, want))
        construction_failure("[E,F] relation at " + ctx);
    }
  }
}

}  // namespace

Series series_from_string(const std::string& s) {
  if (s == "B" || s == "b") return Series::B;
  if (s == "D" || s == "d") return Series::D;
  throw config_error("unknown algebra series '" + s + "' (expected B or D)");
}

std::string series_to_string(Series s) {
  return s == Series::B ? "B" : "D";
}

AlgebraSpec make_algebra_spec(Series series, int rank) {
  int min_rank = (series == Series::B) ? 1 : 2;
  if (rank < min_rank) {
    std::ostringstream os;
    os << "series " << series_to_string(series) << " requires rank >= "
       << min_rank << " (got " << rank << ")";
    throw config_error(os.str());
  }
  return AlgebraSpec{series, rank};
}

ChevalleyData build_algebra(const AlgebraSpec& spec) {
  // Re-validate so a hand-rolled spec cannot bypass the rank check.
  make_algebra_spec(spec.series, spec.rank);

  ChevalleyData d;
  d.spec = spec;
  GeneratorSet g = build_generators(spec);
  d.E = std::move(g.E);
  d.F = std::move(g.F);
  d.H = std::move(g.H);
  d.S = build_involution(spec);

  const int l = spec.rank;
  d.cartan.assign(l + 1, std::vector<long>(l + 1, 0));
  for (int i = 0; i <= l; ++i)
    for (int j = 0; j <= l; ++j)
      d.cartan[i][j] = pairing_scalar(
          bracket(d.H[i], d.E[j]), d.E[j],
          "pairing (" + std::to_string(i) + "," + std::to_string(j) + ")");

  verify_chevalley(d);
  return d;
}

MatSeries<Rational> shift_matrix(const AlgebraSpec& spec) {
  ChevalleyData d = build_algebra(spec);
  RMat c0 = mat_zero(kQ, spec.size());
  for (int i = 1; i <= spec.rank; ++i) c0 = mat_add(kQ, c0, d.E[i]);
  MatSeries<Rational> lam = series_from_term(kQ, c0, 0);
  MatSeries<Rational> z1 = series_from_term(kQ, d.E[0], 1);
  return series_add(kQ, lam, z1);
}

}  // namespace orthotau
