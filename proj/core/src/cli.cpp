#include "orthotau/cli.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <sstream>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "orthotau/algebra.hpp"
#include "orthotau/config.hpp"
#include "orthotau/error.hpp"
#include "orthotau/iso.hpp"
#include "orthotau/kernels.hpp"
#include "orthotau/partitions.hpp"
#include "orthotau/poly.hpp"
#include "orthotau/qschur.hpp"
#include "orthotau/tau.hpp"
#include "orthotau/textio.hpp"

namespace orthotau {

namespace {

using nlohmann::json;

std::string algebra_label(const RunConfig& cfg) {
  return series_to_string(cfg.series) + std::to_string(cfg.rank);
}

// Dressing data shared by ds-tau, tables, and square-check: the algebra, the
// polynomial ring (parameters at weight 0, then one variable per flow), both
// kernel block families, and the time list used for Q-function labels.
struct DsSetup {
  ChevalleyData g;
  PolyRing ring;
  Mat<PolyScalar> s;
  KernelBlocks<PolyScalar> a;
  KernelBlocks<PolyScalar> d;
  TimeList qtimes;
};

DsSetup build_ds_setup(const RunConfig& cfg) {
  if (!cfg.has_algebra)
    throw config_error("config: this subcommand needs an \"algebra\" block");
  ChevalleyData g = build_algebra(make_algebra_spec(cfg.series, cfg.rank));
  const int n = g.spec.size();

  std::vector<std::string> names = cfg.parameters;
  std::vector<int> weights(names.size(), 0);
  for (int k : cfg.times) {
    names.push_back("t" + std::to_string(k));
    weights.push_back(k);
  }
  PolyRing ring(make_varset(std::move(names)), std::move(weights));
  const std::size_t base = cfg.parameters.size();

  Mat<PolyScalar> s = mat_zero(ring, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s.at(i, j) = ring.from_rational(g.S.at(i, j));

  // Initial-condition series, one constant matrix per z-power.
  std::map<int, Mat<PolyScalar>> xk;
  for (const IcEntry& e : cfg.initial_condition) {
    if (e.row > n || e.col > n)
      throw config_error("config: initial condition entry (" + std::to_string(e.row) + "," +
                         std::to_string(e.col) + ") is outside the " + std::to_string(n) + "x" +
                         std::to_string(n) + " matrix");
    PolyScalar c;
    try {
      c = poly_parse(ring.vars, e.coeff);
    } catch (const std::exception& ex) {
      throw config_error("config: cannot parse coefficient \"" + e.coeff + "\": " + ex.what());
    }
    for (const auto& [expo, coef] : c.terms) {
      (void)coef;
      for (std::size_t i = base; i < expo.size(); ++i)
        if (expo[i] != 0)
          throw config_error("config: coefficient \"" + e.coeff +
                             "\" uses a time variable; only rational literals and declared "
                             "parameters are allowed");
    }
    auto it = xk.try_emplace(e.z_power, mat_zero(ring, n)).first;
    it->second.at(e.row - 1, e.col - 1) = poly_add(it->second.at(e.row - 1, e.col - 1), c);
  }

  // The quadratic antisymmetry relation, checked entry by entry so the error
  // can name every violating position.
  std::vector<std::string> violations;
  for (const auto& [k, m] : xk) {
    Mat<PolyScalar> v = mat_add(ring, mat_transpose(m), mat_mul(ring, mat_mul(ring, s, m), s));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (!poly_is_zero(v.at(i, j)))
          violations.push_back("z^" + std::to_string(k) + " (" + std::to_string(i + 1) + "," +
                               std::to_string(j + 1) + ")");
  }
  if (!violations.empty()) {
    std::string joined;
    const std::size_t shown = std::min<std::size_t>(violations.size(), 8);
    for (std::size_t i = 0; i < shown; ++i) {
      if (i) joined += ", ";
      joined += violations[i];
    }
    if (violations.size() > shown)
      joined += ", ... (" + std::to_string(violations.size()) + " total)";
    throw config_error("initial condition violates X(z)^t = -S X(z) S at: " + joined);
  }

  MatSeries<PolyScalar> xser = series_zero(ring, n);
  if (!xk.empty()) {
    xser.kmin = xk.begin()->first;
    xser.kmax = xk.rbegin()->first;
    for (auto& [k, m] : xk) xser.coeffs.emplace(k, std::move(m));
    series_normalize(ring, xser);
  }

  std::vector<std::pair<int, PolyScalar>> flows;
  for (std::size_t i = 0; i < cfg.times.size(); ++i) {
    PolyScalar tv = poly_var(ring.vars, base + i);
    flows.emplace_back(cfg.times[i], cfg.negate_times ? poly_neg(tv) : tv);
  }

  const int cutoff = (n - 1) * static_cast<int>(std::max<long>(cfg.max_weight, 1));
  MatSeries<PolyScalar> lam = series_from_rational(ring, shift_matrix(g.spec));

  DsSetup st{std::move(g),
             std::move(ring),
             std::move(s),
             KernelBlocks<PolyScalar>{},
             KernelBlocks<PolyScalar>{},
             TimeList{}};
  st.a = build_a(st.ring, plus_wave(st.ring, lam, flows, cutoff), cfg.max_weight);
  st.d = build_d(st.ring, series_exp(st.ring, xser, n + 2));
  for (std::size_t i = 0; i < cfg.times.size(); ++i) st.qtimes.emplace_back(base + i, cfg.times[i]);
  return st;
}

// Tries to express pf_a as a rational multiple of the Q-function labeled by
// the combined partition of the tuple; empty when the rule does not apply.
std::string minor_q_label(const DsSetup& st, const StrictTuple& tuple, const PolyScalar& pf_a) {
  CombinedPartition comb = combined_strict_partition(tuple, st.g.spec.size());
  if (!comb.strict) return {};
  PolyScalar q = q_lambda(st.ring, st.qtimes, StrictPartition{comb.entries});
  if (poly_is_zero(q) || poly_is_zero(pf_a)) return {};
  const auto& lead = *q.terms.begin();
  auto it = pf_a.terms.find(lead.first);
  if (it == pf_a.terms.end()) return {};
  const Rational coef = it->second / lead.second;
  if (!poly_equal(pf_a, poly_scale(q, coef))) return {};
  return q_label_text(coef, comb.entries);
}

void emit_kv(std::ostream& out, const std::string& key, const std::string& value) {
  out << key << ": " << value << "\n";
}

int run_ds_tau(const RunConfig& cfg, bool widom, std::ostream& out) {
  DsSetup st = build_ds_setup(cfg);
  PfTauResult<PolyScalar> pf =
      pfaffian_tau(st.ring, st.a, st.d, st.s, cfg.max_weight, /*keep_ledger=*/false);
  WidomTauResult<PolyScalar> det;
  if (widom) det = widom_tau(st.ring, st.a, st.d, cfg.max_weight, /*keep_ledger=*/false);

  if (cfg.output == "json") {
    json j;
    j["subcommand"] = "ds-tau";
    j["algebra"] = algebra_label(cfg);
    j["max_weight"] = cfg.max_weight;
    j["tau_o"] = poly_to_text(pf.value);
    j["tau_o_exact"] = pf.exact;
    if (widom) {
      j["tau_w"] = poly_to_text(det.value);
      j["tau_w_exact"] = det.exact;
    }
    out << j.dump(2) << "\n";
  } else {
    emit_kv(out, "subcommand", "ds-tau");
    emit_kv(out, "algebra", algebra_label(cfg));
    emit_kv(out, "max_weight", std::to_string(cfg.max_weight));
    emit_kv(out, "tau_o", poly_to_text(pf.value));
    emit_kv(out, "tau_o_exact", pf.exact ? "true" : "false");
    if (widom) {
      emit_kv(out, "tau_w", poly_to_text(det.value));
      emit_kv(out, "tau_w_exact", det.exact ? "true" : "false");
    }
  }
  return 0;
}

int run_tables(const RunConfig& cfg, std::ostream& out) {
  DsSetup st = build_ds_setup(cfg);
  PfTauResult<PolyScalar> pf =
      pfaffian_tau(st.ring, st.a, st.d, st.s, cfg.max_weight, /*keep_ledger=*/true);

  StrictTuple unit;
  unit.components.resize(static_cast<std::size_t>(st.g.spec.size()));
  std::vector<MinorRow<PolyScalar>> rows;
  rows.push_back(MinorRow<PolyScalar>{unit, st.ring.one(), st.ring.one()});
  rows.insert(rows.end(), pf.ledger.begin(), pf.ledger.end());

  if (cfg.output == "json") {
    json j;
    j["subcommand"] = "tables";
    j["algebra"] = algebra_label(cfg);
    j["max_weight"] = cfg.max_weight;
    j["rows"] = json::array();
    for (const MinorRow<PolyScalar>& row : rows) {
      json r;
      r["tuple"] = tuple_to_text(row.tuple);
      r["pf_d"] = poly_to_text(row.pf_d);
      r["pf_a"] = poly_to_text(row.pf_a);
      const std::string label = minor_q_label(st, row.tuple, row.pf_a);
      if (label.empty())
        r["q_label"] = nullptr;
      else
        r["q_label"] = label;
      j["rows"].push_back(std::move(r));
    }
    out << j.dump(2) << "\n";
  } else {
    emit_kv(out, "subcommand", "tables");
    emit_kv(out, "algebra", algebra_label(cfg));
    emit_kv(out, "max_weight", std::to_string(cfg.max_weight));
    emit_kv(out, "columns", "tuple | pf_d | pf_a | q_label");
    for (const MinorRow<PolyScalar>& row : rows) {
      const std::string label = minor_q_label(st, row.tuple, row.pf_a);
      out << tuple_to_text(row.tuple) << " | " << poly_to_text(row.pf_d) << " | "
          << poly_to_text(row.pf_a) << " | " << (label.empty() ? "-" : label) << "\n";
    }
  }
  return 0;
}

int run_square_check(const RunConfig& cfg, std::ostream& out) {
  DsSetup st = build_ds_setup(cfg);
  SquareCheckReport<PolyScalar> rep = square_check(st.ring, st.a, st.d, st.s, cfg.max_weight);

  if (cfg.output == "json") {
    json j;
    j["subcommand"] = "square-check";
    j["algebra"] = algebra_label(cfg);
    j["max_weight"] = cfg.max_weight;
    j["ok"] = rep.ok;
    j["by_weight"] = json::array();
    for (std::size_t w = 0; w < rep.det_by_weight.size(); ++w) {
      json r;
      r["weight"] = w;
      r["det"] = poly_to_text(rep.det_by_weight[w]);
      r["square"] = poly_to_text(rep.square_by_weight[w]);
      r["ok"] = poly_equal(rep.det_by_weight[w], rep.square_by_weight[w]);
      j["by_weight"].push_back(std::move(r));
    }
    out << j.dump(2) << "\n";
  } else {
    emit_kv(out, "subcommand", "square-check");
    emit_kv(out, "algebra", algebra_label(cfg));
    emit_kv(out, "max_weight", std::to_string(cfg.max_weight));
    for (std::size_t w = 0; w < rep.det_by_weight.size(); ++w) {
      const bool ok = poly_equal(rep.det_by_weight[w], rep.square_by_weight[w]);
      out << "weight " << w << ": " << (ok ? "ok" : "MISMATCH") << "\n";
      if (!ok) {
        emit_kv(out, "  det", poly_to_text(rep.det_by_weight[w]));
        emit_kv(out, "  square", poly_to_text(rep.square_by_weight[w]));
      }
    }
    emit_kv(out, "ok", rep.ok ? "true" : "false");
  }
  return rep.ok ? 0 : 1;
}

StrictPartition parse_partition_text(const std::string& text) {
  std::string body;
  for (char ch : text)
    if (ch != '(' && ch != ')' && ch != ' ') body += ch;
  StrictPartition p;
  if (!body.empty()) {
    std::istringstream in(body);
    std::string item;
    while (std::getline(in, item, ',')) {
      if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
        throw config_error("qschur: partition entries must be nonnegative integers");
      p.parts.push_back(std::stoi(item));
    }
  }
  if (!strict_partition_valid(p))
    throw config_error("qschur: \"" + text + "\" is not a strict partition (distinct, decreasing)");
  return p;
}

int run_qschur(const std::string& partition_text, const std::string& output, std::ostream& out) {
  StrictPartition p = parse_partition_text(partition_text);
  const int weight = strict_partition_weight(p);

  std::vector<std::string> names;
  std::vector<int> weights;
  TimeList times;
  for (int k = 1; k <= std::max(weight, 1); k += 2) {
    times.emplace_back(names.size(), k);
    names.push_back("t" + std::to_string(k));
    weights.push_back(k);
  }
  PolyRing ring(make_varset(std::move(names)), std::move(weights));
  PolyScalar q = q_lambda(ring, times, p);

  if (output == "json") {
    json j;
    j["subcommand"] = "qschur";
    j["partition"] = strict_partition_to_text(p);
    j["weight"] = weight;
    j["q"] = poly_to_text(q);
    out << j.dump(2) << "\n";
  } else {
    emit_kv(out, "subcommand", "qschur");
    emit_kv(out, "partition", strict_partition_to_text(p));
    emit_kv(out, "weight", std::to_string(weight));
    emit_kv(out, "q", poly_to_text(q));
  }
  return 0;
}

json complex_json(const std::complex<double>& v) {
  return json::array({format_double(v.real()), format_double(v.imag())});
}

int run_iso(const RunConfig& cfg, bool convergence, std::ostream& out) {
  if (!cfg.has_iso) throw config_error("config: the iso subcommand needs an \"iso\" block");

  IsoSquareReport rep = iso_square_check(cfg.iso);

  // Refinement rows at roughly half, three-quarter, and full cutoff.
  std::vector<int> cutoffs;
  std::vector<IsoSquareReport> refine;
  if (convergence) {
    const int m = cfg.iso.mode_cutoff;
    for (int c : {(m + 1) / 2, (3 * m + 3) / 4, m})
      if (c >= 1 && (cutoffs.empty() || c > cutoffs.back())) cutoffs.push_back(c);
    for (int c : cutoffs) {
      IsoParams p = cfg.iso;
      p.mode_cutoff = c;
      refine.push_back(c == cfg.iso.mode_cutoff ? rep : iso_square_check(p));
    }
  }

  if (cfg.output == "json") {
    json j;
    j["subcommand"] = "iso";
    j["tau_w_sl2"] = complex_json(rep.tau_w);
    j["tau_o_so3"] = complex_json(rep.tau_o);
    j["residual"] = format_double(rep.residual);
    j["exponent"] = complex_json(rep.exponent);
    j["ortho_residual"] = format_double(rep.ortho_residual);
    j["antisym_residual"] = format_double(rep.antisym_residual);
    j["tail_ratio"] = format_double(rep.tail_ratio);
    j["underresolved"] = rep.underresolved;
    if (convergence) {
      j["convergence_table"] = json::array();
      for (std::size_t i = 0; i < refine.size(); ++i) {
        json r;
        r["mode_cutoff"] = cutoffs[i];
        r["residual"] = format_double(refine[i].residual);
        r["tau_w_sl2"] = complex_json(refine[i].tau_w);
        r["tau_o_so3"] = complex_json(refine[i].tau_o);
        j["convergence_table"].push_back(std::move(r));
      }
    }
    out << j.dump(2) << "\n";
  } else {
    emit_kv(out, "subcommand", "iso");
    emit_kv(out, "tau_w_sl2", format_complex(rep.tau_w));
    emit_kv(out, "tau_o_so3", format_complex(rep.tau_o));
    emit_kv(out, "residual", format_double(rep.residual));
    emit_kv(out, "exponent", format_complex(rep.exponent));
    emit_kv(out, "ortho_residual", format_double(rep.ortho_residual));
    emit_kv(out, "antisym_residual", format_double(rep.antisym_residual));
    emit_kv(out, "tail_ratio", format_double(rep.tail_ratio));
    emit_kv(out, "underresolved", rep.underresolved ? "true" : "false");
    for (std::size_t i = 0; i < refine.size(); ++i)
      out << "mode_cutoff " << cutoffs[i] << ": residual " << format_double(refine[i].residual)
          << " tau_w " << format_complex(refine[i].tau_w) << " tau_o "
          << format_complex(refine[i].tau_o) << "\n";
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"tau functions of orthogonal dressing flows and four-point factorizations"};
  app.name("orthotau");
  app.require_subcommand(1);

  std::string config_path, output_override, partition_text;
  long max_weight_override = -1;
  bool convergence = false, widom = false;

  CLI::App* ds = app.add_subcommand("ds-tau", "tau polynomial of a dressing flow");
  CLI::App* tb = app.add_subcommand("tables", "minor table with Q-function labels");
  CLI::App* qs = app.add_subcommand("qschur", "print one Schur Q-function");
  CLI::App* sq = app.add_subcommand("square-check", "determinant expansion vs squared Pfaffian");
  CLI::App* is = app.add_subcommand("iso", "numeric four-point square-relation report");

  for (CLI::App* sub : {ds, tb, sq, is}) {
    sub->add_option("--config", config_path, "JSON run configuration file")->required();
    sub->add_option("--output", output_override, "override output format: text or json");
  }
  for (CLI::App* sub : {ds, tb, sq})
    sub->add_option("--max-weight", max_weight_override, "override config max_weight");
  qs->add_option("--partition", partition_text, "strict partition, e.g. \"(4,2)\"")->required();
  qs->add_option("--output", output_override, "output format: text or json");
  ds->add_flag("--widom", widom, "also emit the determinant expansion");
  is->add_flag("--convergence", convergence, "emit the cutoff refinement table");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (output_override != "" && output_override != "text" && output_override != "json")
      throw config_error("output must be \"text\" or \"json\"");

    if (qs->parsed()) return run_qschur(partition_text, output_override, out);

    RunConfig cfg = load_run_config(config_path);
    if (max_weight_override >= 0) cfg.max_weight = max_weight_override;
    if (!output_override.empty()) cfg.output = output_override;

    if (ds->parsed()) return run_ds_tau(cfg, widom, out);
    if (tb->parsed()) return run_tables(cfg, out);
    if (sq->parsed()) return run_square_check(cfg, out);
    if (is->parsed()) return run_iso(cfg, convergence, out);
    throw internal_error("no subcommand dispatched");
  } catch (const config_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const numeric_error& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace orthotau
