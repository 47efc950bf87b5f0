#include <metlie/report.hpp>

#include <iomanip>
#include <sstream>

namespace metlie {

using json = nlohmann::ordered_json;

namespace {

ReportLemmas lemma_summary(const AdaptedDecomposition<double>& d, const Tolerances<double>& tol) {
  ReportLemmas out;
  if (d.l == 0) return out;
  const auto n = MetricLieAlgebra<double>::with_identity(d.derived_subalgebra(tol));
  const auto ds = derivation_algebra(n.algebra(), tol);
  if (!ds.nilpotent()) return out;
  out.applicable = true;
  out.der_dim = ds.der_dim();
  out.inner_dim = ds.inner_dim();
  out.all_hold = true;
  for (const auto& a : d.a_blocks) {
    const auto lc = lemma_checks(ds, a);
    const auto rc = riccider_check(n, a, tol);
    ReportLemmaGenerator g;
    g.symmetric_slack = lc.symmetric_slack;
    g.equality_case_consistent = lc.equality_case_consistent;
    g.in_l1 = lc.membership.in_l1;
    g.in_l2 = lc.membership.in_l2;
    g.in_l3 = lc.membership.in_l3;
    g.riccider_value = rc.value;
    g.riccider_consistent = rc.consistent;
    const bool holds = g.in_l1 && g.equality_case_consistent && rc.consistent &&
                       g.symmetric_slack >= -tol.predicate * (1 + a.squaredNorm()) &&
                       (!lc.transpose_pair_in_l2 || *lc.transpose_pair_in_l2);
    out.all_hold = out.all_hold && holds;
    out.generators.push_back(g);
  }
  return out;
}

json signature_json(const Signature& s) { return json::array({s.negative, s.zero, s.positive}); }

Signature signature_from(const json& j) {
  if (!j.is_array() || j.size() != 3) throw ParseError("report: signature must be [neg, zero, pos]");
  return {j[0].get<int>(), j[1].get<int>(), j[2].get<int>()};
}

template <typename T>
std::optional<T> optional_from(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

}  // namespace

AnalysisReport analyze(const ReportInput& input, const Tolerances<double>& tol) {
  AnalysisReport r;
  r.input = input;
  r.tolerances = tol;
  const auto m = metric_algebra_of(input.algebra, tol);
  const auto& alg = m.onb_algebra();

  const auto p = structural_predicates(alg, tol);
  r.structure.abelian = p.is_abelian;
  r.structure.nilpotent = p.is_nilpotent;
  r.structure.solvable = p.is_solvable;
  r.structure.unimodular = p.is_unimodular;
  r.structure.nilpotency_degree = p.nilpotency_degree;
  r.structure.derived_dim = derived_algebra(alg, tol).dim();

  if (!p.is_solvable) {
    const auto ric = ricci_direct(m, tol);
    r.ricci.matrix = to_rows(ric.ricci);
    r.ricci.eigenvalues.assign(ric.eigenvalues.data(), ric.eigenvalues.data() + ric.eigenvalues.size());
    r.ricci.signature = ric.signature;
    r.ricci.scalar_curvature = ric.scalar_curvature;
    r.ricci.zero_tol = ric.zero_tol;
    r.ricci.zero_band = ric.zero_band;
    r.classification.reason = "algebra is not solvable";
    r.lemmas.applicable = false;
    return r;
  }

  const auto c = classify_unchecked(m, tol);
  r.ricci.matrix = to_rows(c.ricci.ricci);
  r.ricci.eigenvalues.assign(c.ricci.eigenvalues.data(), c.ricci.eigenvalues.data() + c.ricci.eigenvalues.size());
  r.ricci.signature = c.ricci.signature;
  r.ricci.scalar_curvature = c.ricci.scalar_curvature;
  r.ricci.zero_tol = c.ricci.zero_tol;
  r.ricci.zero_band = c.ricci.zero_band;

  auto& rc = r.classification;
  rc.applicable = true;
  rc.ricci_case = to_string(c.ricci_case);
  rc.branch = to_string(c.branch);
  rc.n_abelian = c.n_abelian;
  rc.a_abelian = c.a_abelian;
  rc.n_dim = c.n_dim;
  rc.a_dim = c.a_dim;
  rc.codim_b = c.codim_b;
  rc.skew_directions_dim = c.skew_directions_dim;
  for (const auto& g : c.generator_predicates) rc.generators.push_back({g.is_skew, g.is_normal, g.is_traceless});
  rc.consistent = c.consistent;

  const auto d = adapted_decomposition(m, tol);
  rc.mean_curvature = d.t;
  rc.route_deviation = route_deviation(m, d);
  if (d.m == 1) {
    try {
      const auto red = codim1_reduction(d, tol);
      rc.codim1 = ReportCodim1{red.r, red.r2_block.squaredNorm(), red.trace_test, red.r_tilde_signature,
                               red.equivalence_holds};
    } catch (const DomainError&) {
      // ad(f)|n skew: no reduction
    }
  }
  r.lemmas = lemma_summary(d, tol);
  return r;
}

json to_json(const Tolerances<double>& t) {
  return json{{"jacobi", t.jacobi}, {"rank", t.rank},   {"pd", t.pd},
              {"predicate", t.predicate}, {"zero", t.zero}, {"derivation", t.derivation}};
}

Tolerances<double> tolerances_from_json(const json& j) {
  Tolerances<double> t;
  t.jacobi = j.at("jacobi").get<double>();
  t.rank = j.at("rank").get<double>();
  t.pd = j.at("pd").get<double>();
  t.predicate = j.at("predicate").get<double>();
  t.zero = j.at("zero").get<double>();
  t.derivation = j.at("derivation").get<double>();
  return t;
}

json to_json(const AnalysisReport& r) {
  json j;
  j["tool_version"] = r.tool_version;

  json in;
  in["source"] = r.input.source;
  in["value"] = r.input.value;
  in["seed"] = r.input.seed ? json(*r.input.seed) : json(nullptr);
  in["metric_seed"] = r.input.metric_seed ? json(*r.input.metric_seed) : json(nullptr);
  in["algebra"] = to_json(r.input.algebra);
  j["input"] = std::move(in);

  j["tolerances"] = to_json(r.tolerances);

  const auto& s = r.structure;
  j["structure"] = json{{"abelian", s.abelian},     {"nilpotent", s.nilpotent},
                        {"solvable", s.solvable},   {"unimodular", s.unimodular},
                        {"nilpotency_degree", s.nilpotency_degree}, {"derived_dim", s.derived_dim}};

  const auto& ric = r.ricci;
  j["ricci"] = json{{"matrix", ric.matrix},
                    {"eigenvalues", ric.eigenvalues},
                    {"signature", signature_json(ric.signature)},
                    {"scalar_curvature", ric.scalar_curvature},
                    {"zero_tol", ric.zero_tol},
                    {"zero_band", ric.zero_band}};

  const auto& c = r.classification;
  json cj;
  cj["applicable"] = c.applicable;
  if (!c.applicable) {
    cj["reason"] = c.reason;
  } else {
    cj["case"] = c.ricci_case;
    cj["branch"] = c.branch;
    cj["n_abelian"] = c.n_abelian;
    cj["a_abelian"] = c.a_abelian;
    cj["n_dim"] = c.n_dim;
    cj["a_dim"] = c.a_dim;
    cj["codim_b"] = c.codim_b;
    cj["skew_directions_dim"] = c.skew_directions_dim;
    json gens = json::array();
    for (const auto& g : c.generators) gens.push_back({{"skew", g.skew}, {"normal", g.normal}, {"traceless", g.traceless}});
    cj["generators"] = std::move(gens);
    cj["consistent"] = c.consistent;
    cj["mean_curvature"] = c.mean_curvature;
    cj["route_deviation"] = c.route_deviation;
    if (c.codim1)
      cj["codim1"] = json{{"r", c.codim1->r},
                          {"trace_r2r2", c.codim1->trace_r2r2},
                          {"trace_test", c.codim1->trace_test},
                          {"r_tilde_signature", signature_json(c.codim1->r_tilde_signature)},
                          {"equivalence_holds", c.codim1->equivalence_holds}};
    else
      cj["codim1"] = nullptr;
  }
  j["classification"] = std::move(cj);

  const auto& l = r.lemmas;
  json lj;
  lj["applicable"] = l.applicable;
  if (l.applicable) {
    lj["der_dim"] = l.der_dim;
    lj["inner_dim"] = l.inner_dim;
    json gens = json::array();
    for (const auto& g : l.generators)
      gens.push_back({{"symmetric_slack", g.symmetric_slack},
                      {"equality_case_consistent", g.equality_case_consistent},
                      {"in_l1", g.in_l1},
                      {"in_l2", g.in_l2},
                      {"in_l3", g.in_l3},
                      {"riccider_value", g.riccider_value},
                      {"riccider_consistent", g.riccider_consistent}});
    lj["generators"] = std::move(gens);
    lj["all_hold"] = l.all_hold;
  }
  j["lemmas"] = std::move(lj);
  return j;
}

AnalysisReport report_from_json(const json& j) {
  try {
    AnalysisReport r;
    r.tool_version = j.at("tool_version").get<std::string>();

    const json& in = j.at("input");
    r.input.source = in.at("source").get<std::string>();
    r.input.value = in.at("value").get<std::string>();
    r.input.seed = optional_from<std::uint64_t>(in, "seed");
    r.input.metric_seed = optional_from<std::uint64_t>(in, "metric_seed");
    r.input.algebra = algebra_file_from_json(in.at("algebra"));

    r.tolerances = tolerances_from_json(j.at("tolerances"));

    const json& s = j.at("structure");
    r.structure.abelian = s.at("abelian").get<bool>();
    r.structure.nilpotent = s.at("nilpotent").get<bool>();
    r.structure.solvable = s.at("solvable").get<bool>();
    r.structure.unimodular = s.at("unimodular").get<bool>();
    r.structure.nilpotency_degree = s.at("nilpotency_degree").get<int>();
    r.structure.derived_dim = s.at("derived_dim").get<Index>();

    const json& ric = j.at("ricci");
    r.ricci.matrix = ric.at("matrix").get<Rows>();
    r.ricci.eigenvalues = ric.at("eigenvalues").get<std::vector<double>>();
    r.ricci.signature = signature_from(ric.at("signature"));
    r.ricci.scalar_curvature = ric.at("scalar_curvature").get<double>();
    r.ricci.zero_tol = ric.at("zero_tol").get<double>();
    r.ricci.zero_band = ric.at("zero_band").get<double>();

    const json& c = j.at("classification");
    auto& rc = r.classification;
    rc.applicable = c.at("applicable").get<bool>();
    if (!rc.applicable) {
      rc.reason = c.at("reason").get<std::string>();
    } else {
      rc.ricci_case = c.at("case").get<std::string>();
      rc.branch = c.at("branch").get<std::string>();
      rc.n_abelian = c.at("n_abelian").get<bool>();
      rc.a_abelian = c.at("a_abelian").get<bool>();
      rc.n_dim = c.at("n_dim").get<Index>();
      rc.a_dim = c.at("a_dim").get<Index>();
      rc.codim_b = c.at("codim_b").get<Index>();
      rc.skew_directions_dim = c.at("skew_directions_dim").get<Index>();
      for (const auto& g : c.at("generators"))
        rc.generators.push_back({g.at("skew").get<bool>(), g.at("normal").get<bool>(), g.at("traceless").get<bool>()});
      rc.consistent = c.at("consistent").get<bool>();
      rc.mean_curvature = c.at("mean_curvature").get<double>();
      rc.route_deviation = c.at("route_deviation").get<double>();
      if (!c.at("codim1").is_null()) {
        const json& k = c.at("codim1");
        rc.codim1 = ReportCodim1{k.at("r").get<double>(), k.at("trace_r2r2").get<double>(),
                                 k.at("trace_test").get<double>(), signature_from(k.at("r_tilde_signature")),
                                 k.at("equivalence_holds").get<bool>()};
      }
    }

    const json& l = j.at("lemmas");
    r.lemmas.applicable = l.at("applicable").get<bool>();
    if (r.lemmas.applicable) {
      r.lemmas.der_dim = l.at("der_dim").get<Index>();
      r.lemmas.inner_dim = l.at("inner_dim").get<Index>();
      for (const auto& g : l.at("generators"))
        r.lemmas.generators.push_back({g.at("symmetric_slack").get<double>(),
                                       g.at("equality_case_consistent").get<bool>(), g.at("in_l1").get<bool>(),
                                       g.at("in_l2").get<bool>(), g.at("in_l3").get<bool>(),
                                       g.at("riccider_value").get<double>(), g.at("riccider_consistent").get<bool>()});
      r.lemmas.all_hold = l.at("all_hold").get<bool>();
    }
    return r;
  } catch (const json::exception& e) {
    throw ParseError(std::string("report: ") + e.what());
  }
}

std::string render_text(const AnalysisReport& r) {
  std::ostringstream out;
  out << std::setprecision(6);
  const auto yes = [](bool b) { return b ? "yes" : "no"; };
  const auto sig = [](const Signature& s) {
    std::ostringstream o;
    o << "(" << s.negative << ", " << s.zero << ", " << s.positive << ")";
    return o.str();
  };

  out << "metlie " << r.tool_version << "\n";
  out << "source      " << r.input.source << " " << r.input.value;
  if (r.input.seed) out << "  seed " << *r.input.seed;
  if (r.input.metric_seed) out << "  metric seed " << *r.input.metric_seed;
  out << "\n";
  out << "dim         " << r.input.algebra.dim << (r.input.algebra.metric ? "  (metric given)" : "  (identity metric)") << "\n";
  out << "tolerances  jacobi " << r.tolerances.jacobi << "  rank " << r.tolerances.rank << "  pd " << r.tolerances.pd
      << "  predicate " << r.tolerances.predicate << "  zero " << r.tolerances.zero << "  derivation "
      << r.tolerances.derivation << "\n\n";

  const auto& s = r.structure;
  out << "abelian " << yes(s.abelian) << "  nilpotent " << yes(s.nilpotent) << "  solvable " << yes(s.solvable)
      << "  unimodular " << yes(s.unimodular) << "  dim [g,g] " << s.derived_dim;
  if (s.nilpotent) out << "  nilpotency degree " << s.nilpotency_degree;
  out << "\n\n";

  out << "Ricci operator (orthonormal frame)\n";
  for (const auto& row : r.ricci.matrix) {
    out << " ";
    for (double x : row) out << " " << std::setw(12) << x;
    out << "\n";
  }
  out << "eigenvalues ";
  for (double x : r.ricci.eigenvalues) out << " " << x;
  out << "\nsignature   " << sig(r.ricci.signature) << "  (zero band " << r.ricci.zero_band << ")\n";
  out << "scalar curvature " << r.ricci.scalar_curvature << "\n\n";

  const auto& c = r.classification;
  if (!c.applicable) {
    out << "classification not applicable: " << c.reason << "\n";
  } else {
    out << "case        " << c.ricci_case << "  (branch " << c.branch << ")\n";
    out << "consistent  " << yes(c.consistent) << "\n";
    out << "dim n " << c.n_dim << "  dim a " << c.a_dim << "  n abelian " << yes(c.n_abelian) << "  a abelian "
        << yes(c.a_abelian) << "  codim b " << c.codim_b << "  skew directions " << c.skew_directions_dim << "\n";
    for (std::size_t j = 0; j < c.generators.size(); ++j)
      out << "  ad(f" << j + 1 << ")|n  skew " << yes(c.generators[j].skew) << "  normal " << yes(c.generators[j].normal)
          << "  traceless " << yes(c.generators[j].traceless) << "\n";
    out << "|H| " << c.mean_curvature << "  route deviation " << c.route_deviation << "\n";
    if (c.codim1)
      out << "codim-1 reduction  r " << c.codim1->r << "  trace(R2R2') " << c.codim1->trace_r2r2 << "  trace test "
          << c.codim1->trace_test << "  reduced signature " << sig(c.codim1->r_tilde_signature) << "  equivalence "
          << yes(c.codim1->equivalence_holds) << "\n";
  }
  if (r.lemmas.applicable) {
    out << "\nderivations of n  dim Der " << r.lemmas.der_dim << "  dim InnDer " << r.lemmas.inner_dim << "\n";
    for (std::size_t j = 0; j < r.lemmas.generators.size(); ++j) {
      const auto& g = r.lemmas.generators[j];
      out << "  ad(f" << j + 1 << ")|n  slack " << g.symmetric_slack << "  L1 " << yes(g.in_l1) << "  L2 "
          << yes(g.in_l2) << "  L3 " << yes(g.in_l3) << "  <Ric,[A,A']> " << g.riccider_value << "\n";
    }
    out << "lemma checks hold " << yes(r.lemmas.all_hold) << "\n";
  }
  return out.str();
}

}  // namespace metlie
