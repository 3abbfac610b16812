#include "report.hpp"

#include <sstream>

#include "curvature.hpp"
#include "json.hpp"
#include "nr.hpp"

namespace nilred {

namespace {

using ordered_json = nlohmann::ordered_json;

// Scalar serialization: exact values as strings, binary64 as numbers.
ordered_json snum(const Rational& x) { return to_string(x); }
ordered_json snum(double x) { return x; }

// Serialization of exact intermediate data under the active mode.
template <class S>
ordered_json rnum(const Rational& x) {
  if constexpr (ScalarOps<S>::exact)
    return to_string(x);
  else
    return to_double(x);
}

template <class S>
ordered_json svec(const Vec<S>& v) {
  ordered_json a = ordered_json::array();
  for (const auto& x : v) a.push_back(snum(x));
  return a;
}

template <class S>
ordered_json smat(const Matrix<S>& m) {
  ordered_json rows = ordered_json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    ordered_json row = ordered_json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(snum(m.at(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class S>
ordered_json rvec(const QVec& v) {
  ordered_json a = ordered_json::array();
  for (const auto& x : v) a.push_back(rnum<S>(x));
  return a;
}

template <class S>
BasicJMap<S> jmap_in(const JMap& j);
template <>
BasicJMap<Rational> jmap_in(const JMap& j) {
  return j;
}
template <>
BasicJMap<double> jmap_in(const JMap& j) {
  return to_float(j);
}

template <class S>
StructureConstants<S> constants_in(const MetricNilpotentAlgebra& alg);
template <>
StructureConstants<Rational> constants_in(const MetricNilpotentAlgebra& alg) {
  return full_structure_constants(alg);
}
template <>
StructureConstants<double> constants_in(const MetricNilpotentAlgebra& alg) {
  return to_float(full_structure_constants(alg));
}

const char* isotypic_status_name(IsotypicStatus s) {
  switch (s) {
    case IsotypicStatus::TriviallyIsotypic: return "trivially_isotypic";
    case IsotypicStatus::Decomposed: return "decomposed";
    case IsotypicStatus::UnsupportedCenterDim: return "unsupported_center_dim";
  }
  return "?";
}

template <class S>
ordered_json tau_json(const TauTensor<S>& tau) {
  ordered_json out = ordered_json::array();
  for (std::size_t c = 0; c < tau.m; ++c) {
    ordered_json slice = ordered_json::array();
    for (std::size_t a = 0; a < tau.m; ++a) {
      ordered_json row = ordered_json::array();
      for (std::size_t b = 0; b < tau.m; ++b) row.push_back(snum(tau.at(c, a, b)));
      slice.push_back(std::move(row));
    }
    out.push_back(std::move(slice));
  }
  return out;
}

template <class S>
ordered_json curvature_json(const CurvatureSummary<S>& sum) {
  ordered_json out;
  out["scalar"] = snum(sum.scalar);
  out["ricci_sq"] = snum(sum.ricci_sq);
  out["riem_sq"] = snum(sum.riem_sq);
  ordered_json poly = ordered_json::array();
  for (const auto& c : sum.ricci_char_poly) poly.push_back(snum(c));
  out["ricci_char_poly"] = std::move(poly);
  ordered_json spec = ordered_json::array();
  for (double ev : sum.ricci_spectrum) spec.push_back(ev);
  out["ricci_spectrum"] = std::move(spec);
  return out;
}

template <class S>
ordered_json nr_json(const NRVerdict<S>& verdict) {
  ordered_json out;
  out["status"] = nr_status_name(verdict.status);
  if (verdict.tau) out["tau"] = tau_json(*verdict.tau);
  if (verdict.closure_witness) {
    ordered_json w;
    w["a"] = verdict.closure_witness->a;
    w["b"] = verdict.closure_witness->b;
    w["residual_sq"] = snum(verdict.closure_witness->residual_sq);
    w["residual"] = verdict.closure_witness->residual();
    out["closure_witness"] = std::move(w);
  }
  if (verdict.skew_witness) {
    ordered_json w;
    w["c"] = verdict.skew_witness->c;
    w["a"] = verdict.skew_witness->a;
    w["b"] = verdict.skew_witness->b;
    out["skew_witness"] = std::move(w);
  }
  return out;
}

template <class S>
ordered_json analyze(const BuiltAlgebra& built, const Options& opts) {
  const double tol = ScalarOps<S>::exact ? 0.0 : opts.tol;
  const BasicJMap<S> j = jmap_in<S>(built.j);

  ordered_json rep;
  rep["name"] = built.name();
  rep["dim_v"] = built.j.dim_v;
  rep["dim_z"] = built.j.dim_z;
  rep["dim_total"] = built.j.dim_v + built.j.dim_z;
  if (built.params) {
    ordered_json src;
    src["kind"] = "constructor";
    src["family"] = family_name(built.params->family);
    src["p"] = built.params->p;
    src["q"] = built.params->q;
    rep["source"] = std::move(src);
  } else {
    rep["source"] = ordered_json{{"kind", "raw"}};
  }

  // Structural certificate; the bracket data is exact in both modes.
  TwoStepCertificate ts = verify_two_step(built.alg);
  rep["two_step"]["pass"] = ts.pass;
  if (!ts.pass) rep["two_step"]["violation"] = ts.violation;

  HTypeCertificate<S> hc = verify_htype(j, tol);
  rep["htype"]["pass"] = hc.pass;
  if (!hc.pass) {
    rep["htype"]["witness"] =
        ordered_json{{"a", hc.a},
                     {"b", hc.b},
                     {"deviation_norm_sq", snum(frobenius_norm_sq(hc.deviation))}};
  }

  auto ker = kernel_of_j(j, tol);
  ordered_json kbasis = ordered_json::array();
  for (const auto& v : ker) kbasis.push_back(svec(v));
  rep["kernel_of_j"] = ordered_json{{"dim", ker.size()}, {"basis", std::move(kbasis)}};

  ReducedAlgebra red = reduce_euclidean_factor(built.alg);
  ordered_json euc;
  euc["rank"] = red.euclidean_rank;
  ordered_json flat = ordered_json::array();
  for (const auto& v : red.euclidean_basis) flat.push_back(rvec<S>(v));
  euc["flat_directions"] = std::move(flat);
  rep["euclidean"] = std::move(euc);

  if (red.euclidean_rank > 0 && red.core_dim_z() + red.core_dim_v > 0) {
    ordered_json core;
    core["dim_v"] = red.core_dim_v;
    core["dim_z"] = red.core_dim_z();
    ordered_json zb = ordered_json::array();
    for (const auto& w : red.core_z_basis) zb.push_back(rvec<S>(w));
    core["z_basis"] = std::move(zb);
    ordered_json norms = ordered_json::array();
    for (const auto& nsq : red.core_z_norms_sq) norms.push_back(rnum<S>(nsq));
    core["z_norms_sq"] = std::move(norms);
    ordered_json slices = ordered_json::array();
    for (const auto& s : red.core_slices) {
      ordered_json m = ordered_json::array();
      for (std::size_t r = 0; r < s.rows(); ++r) {
        ordered_json row = ordered_json::array();
        for (std::size_t c = 0; c < s.cols(); ++c) row.push_back(rnum<S>(s.at(r, c)));
        m.push_back(std::move(row));
      }
      slices.push_back(std::move(m));
    }
    // True orthonormal-frame constants are slices[a] / sqrt(z_norms_sq[a]).
    core["pre_normalization_slices"] = std::move(slices);
    auto exact = red.exact_core();
    core["exact_orthonormal"] = exact.has_value();
    if (opts.classify_core) {
      ordered_json corenr;
      if (ScalarOps<S>::exact && exact) {
        corenr = nr_json(classify_nr<Rational>(j_from_brackets(*exact), 0.0));
        corenr["mode"] = "exact";
      } else {
        auto fc = red.float_core();
        corenr = nr_json(classify_nr<double>(j_from_float_core(fc), opts.tol));
        corenr["mode"] = "float";
      }
      core["nr"] = std::move(corenr);
    }
    rep["reduced_core"] = std::move(core);
  }

  if (hc.pass && built.j.dim_v > 0) {
    IsotypicResult<S> iso = isotypic_decomposition(j, tol);
    ordered_json ij;
    ij["status"] = isotypic_status_name(iso.status);
    ij["isotypic"] = iso.isotypic();
    if (iso.status == IsotypicStatus::Decomposed)
      ij["pair"] = ordered_json::array({iso.mult_high, iso.mult_low});
    if (built.j.dim_z % 4 == 3)
      ij["eigenspace_dims"] = ordered_json::array({iso.dim_plus, iso.dim_minus});
    rep["isotypic"] = std::move(ij);
  } else {
    rep["isotypic"] = ordered_json{{"status", "not_applicable"}};
  }

  NRVerdict<S> verdict = classify_nr(j, tol);
  ordered_json nr = nr_json(verdict);
  if (hc.pass && built.j.dim_v > 0 && built.j.dim_z > 0) {
    NRVerdict<S> cf = classify_nr_htype_closed_form(j, tol);
    nr["closed_form"] =
        ordered_json{{"applicable", true}, {"status", nr_status_name(cf.status)}};
  } else {
    nr["closed_form"] = ordered_json{{"applicable", false}};
  }
  rep["naturally_reductive"] = std::move(nr);

  rep["curvature"] = curvature_json(curvature_summary(constants_in<S>(built.alg)));
  return rep;
}

ordered_json analyze_mode(const BuiltAlgebra& built, const Options& opts) {
  try {
    return opts.mode == Mode::Exact ? analyze<Rational>(built, opts)
                                    : analyze<double>(built, opts);
  } catch (const ValidationError& e) {
    throw ValidationError("algebra '" + built.name() + "': " + e.what());
  } catch (const std::logic_error& e) {
    throw Error("algebra '" + built.name() + "': " + e.what());
  }
}

ordered_json header(const char* command, const Options& opts) {
  ordered_json out;
  out["schema"] = 1;
  out["command"] = command;
  out["mode"] = opts.mode == Mode::Exact ? "exact" : "float";
  if (opts.mode == Mode::Float) out["tolerance"] = opts.tol;
  return out;
}

template <class S>
PairFlags compare_flags_mode(const BuiltAlgebra& a, const BuiltAlgebra& b,
                             const Options& opts) {
  const double tol = ScalarOps<S>::exact ? 0.0 : opts.tol;
  PairFlags flags;
  flags.dims_equal = a.j.dim_v == b.j.dim_v && a.j.dim_z == b.j.dim_z;
  auto sa = curvature_summary(constants_in<S>(a.alg));
  auto sb = curvature_summary(constants_in<S>(b.alg));
  flags.summaries_equal = summaries_equal(sa, sb, opts.tol);
  auto va = classify_nr(jmap_in<S>(a.j), tol);
  auto vb = classify_nr(jmap_in<S>(b.j), tol);
  if (va.status != NRStatus::OutOfScopeEuclideanFactor &&
      vb.status != NRStatus::OutOfScopeEuclideanFactor)
    flags.nr_differs = va.status != vb.status;
  return flags;
}

constexpr const char* kHeadline =
    "spectrally indistinguishable necessary invariants, NR property differs";

std::string val_str(const ordered_json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void render_algebra_text(std::ostringstream& os, const ordered_json& rep) {
  os << "algebra " << rep["name"].get<std::string>();
  const auto& src = rep["source"];
  if (src["kind"] == "constructor") {
    os << "  (constructor: family " << src["family"].get<std::string>() << ", p = "
       << src["p"] << ", q = " << src["q"] << ")";
  } else {
    os << "  (raw j matrices)";
  }
  os << "\n";
  os << "  dimensions           : dim v = " << rep["dim_v"] << ", dim z = "
     << rep["dim_z"] << ", total = " << rep["dim_total"] << "\n";
  os << "  two-step             : " << (rep["two_step"]["pass"].get<bool>() ? "pass" : "FAIL")
     << (rep["two_step"].contains("violation")
             ? "  (" + rep["two_step"]["violation"].get<std::string>() + ")"
             : "")
     << "\n";
  os << "  H-type               : " << (rep["htype"]["pass"].get<bool>() ? "pass" : "no");
  if (rep["htype"].contains("witness"))
    os << "  (identity fails at pair (" << rep["htype"]["witness"]["a"] << ","
       << rep["htype"]["witness"]["b"] << "))";
  os << "\n";
  os << "  ker(j)               : "
     << (rep["kernel_of_j"]["dim"].get<std::size_t>() == 0
             ? "trivial"
             : "dimension " + std::to_string(rep["kernel_of_j"]["dim"].get<std::size_t>()))
     << "\n";
  os << "  Euclidean factor     : ";
  std::size_t rank = rep["euclidean"]["rank"].get<std::size_t>();
  if (rank == 0)
    os << "none\n";
  else
    os << "rank " << rank << "\n";
  if (rep.contains("reduced_core")) {
    const auto& core = rep["reduced_core"];
    os << "  reduced core         : dim v = " << core["dim_v"] << ", dim z = "
       << core["dim_z"]
       << (core["exact_orthonormal"].get<bool>() ? " (exact orthonormal frame)"
                                                 : " (frame normalization irrational)")
       << "\n";
    if (core.contains("nr"))
      os << "  reduced core NR      : " << core["nr"]["status"].get<std::string>()
         << " (" << core["nr"]["mode"].get<std::string>() << " mode)\n";
  }
  const auto& iso = rep["isotypic"];
  os << "  isotypic             : ";
  if (iso["status"] == "not_applicable") {
    os << "not applicable (not H-type)\n";
  } else if (iso["status"] == "trivially_isotypic") {
    os << "yes (dim z not 3 mod 4)\n";
  } else if (iso["status"] == "decomposed") {
    os << (iso["isotypic"].get<bool>() ? "yes" : "no") << "  (multiplicities {"
       << iso["pair"][0] << ", " << iso["pair"][1] << "})\n";
  } else {
    os << "undetermined (center dimension unsupported)\n";
  }
  const auto& nr = rep["naturally_reductive"];
  os << "  naturally reductive  : ";
  std::string status = nr["status"].get<std::string>();
  if (status == "naturally_reductive")
    os << "yes (tau certificate attached)";
  else if (status == "not_naturally_reductive")
    os << "no";
  else
    os << "out of scope (Euclidean factor present)";
  if (nr.contains("closure_witness"))
    os << "  [closure fails at (" << nr["closure_witness"]["a"] << ","
       << nr["closure_witness"]["b"]
       << "), residual^2 = " << val_str(nr["closure_witness"]["residual_sq"]) << "]";
  if (nr.contains("skew_witness"))
    os << "  [tau skewness fails at (c,a,b) = (" << nr["skew_witness"]["c"] << ","
       << nr["skew_witness"]["a"] << "," << nr["skew_witness"]["b"] << ")]";
  os << "\n";
  if (nr["closed_form"]["applicable"].get<bool>())
    os << "  closed-form verdict  : " << nr["closed_form"]["status"].get<std::string>()
       << "\n";
  const auto& curv = rep["curvature"];
  os << "  curvature            : scalar = " << val_str(curv["scalar"])
     << ", |Ric|^2 = " << val_str(curv["ricci_sq"]) << ", |R|^2 = "
     << val_str(curv["riem_sq"]) << "\n";
  os << "  Ricci spectrum       : [";
  for (std::size_t i = 0; i < curv["ricci_spectrum"].size(); ++i)
    os << (i ? ", " : "") << curv["ricci_spectrum"][i];
  os << "]\n";
}

}  // namespace

BuiltAlgebra build_algebra(const AlgebraSpec& spec) {
  BuiltAlgebra built;
  built.spec = spec;
  if (const auto* cs = std::get_if<ConstructorSpec>(&spec.body)) {
    BuiltHType ht = build_j_pq({cs->family, cs->p, cs->q});
    built.j = std::move(ht.j);
    built.alg = std::move(ht.alg);
    built.params = ht.params;
  } else {
    const auto& rs = std::get<RawSpec>(spec.body);
    built.j = JMap{rs.dim_v, rs.dim_z, rs.j_mats};
    built.alg = algebra_from_j(built.j);
  }
  return built;
}

BuiltAlgebra build_constructor(const std::string& name, HTypeParams params) {
  AlgebraSpec spec;
  spec.name = name;
  spec.body = ConstructorSpec{params.family, params.p, params.q};
  return build_algebra(spec);
}

PairFlags compare_flags(const BuiltAlgebra& a, const BuiltAlgebra& b,
                        const Options& opts) {
  return opts.mode == Mode::Exact ? compare_flags_mode<Rational>(a, b, opts)
                                  : compare_flags_mode<double>(a, b, opts);
}

std::string render_classify(const std::vector<BuiltAlgebra>& algs, const Options& opts,
                            bool as_json) {
  ordered_json out = header("classify", opts);
  ordered_json list = ordered_json::array();
  for (const auto& a : algs) list.push_back(analyze_mode(a, opts));
  out["algebras"] = std::move(list);
  if (as_json) return out.dump(2) + "\n";
  std::ostringstream os;
  for (const auto& rep : out["algebras"]) {
    render_algebra_text(os, rep);
    os << "\n";
  }
  return os.str();
}

std::string render_compare(const BuiltAlgebra& a, const BuiltAlgebra& b,
                           const Options& opts, bool as_json) {
  ordered_json out = header("compare", opts);
  ordered_json list = ordered_json::array();
  list.push_back(analyze_mode(a, opts));
  list.push_back(analyze_mode(b, opts));
  out["algebras"] = std::move(list);
  PairFlags flags = compare_flags(a, b, opts);
  ordered_json pair;
  pair["dims-equal"] = flags.dims_equal;
  pair["summaries-equal"] = flags.summaries_equal;
  if (flags.nr_differs)
    pair["nr-differs"] = *flags.nr_differs;
  else
    pair["nr-differs"] = nullptr;
  if (flags.dims_equal && flags.summaries_equal && flags.nr_differs.value_or(false))
    pair["headline"] = kHeadline;
  out["pair"] = std::move(pair);
  if (as_json) return out.dump(2) + "\n";

  std::ostringstream os;
  for (const auto& rep : out["algebras"]) {
    render_algebra_text(os, rep);
    os << "\n";
  }
  os << "pair verdicts\n";
  os << "  dims equal           : " << (flags.dims_equal ? "yes" : "no") << "\n";
  os << "  summaries equal      : " << (flags.summaries_equal ? "yes" : "no") << "\n";
  os << "  NR differs           : "
     << (flags.nr_differs ? (*flags.nr_differs ? "yes" : "no") : "undefined") << "\n";
  if (out["pair"].contains("headline"))
    os << "  headline             : " << kHeadline << "\n";
  return os.str();
}

std::string render_export(const std::vector<BuiltAlgebra>& algs, bool as_json) {
  if (!as_json) {
    std::string out;
    for (const auto& a : algs) {
      if (!out.empty()) out += "\n";
      out += export_spec_dsl(a.spec);
    }
    return out;
  }
  ordered_json out;
  out["schema"] = 1;
  out["command"] = "export";
  ordered_json list = ordered_json::array();
  for (const auto& a : algs) {
    ordered_json e;
    e["name"] = a.name();
    e["dim_v"] = a.j.dim_v;
    e["dim_z"] = a.j.dim_z;
    ordered_json mats = ordered_json::array();
    for (const auto& m : a.j.mats) mats.push_back(smat(m));
    e["j_matrices"] = std::move(mats);
    ordered_json slices = ordered_json::array();
    for (const auto& s : a.alg.slices) slices.push_back(smat(s));
    e["structure_constants"] = std::move(slices);
    list.push_back(std::move(e));
  }
  out["algebras"] = std::move(list);
  return out.dump(2) + "\n";
}

}  // namespace nilred
