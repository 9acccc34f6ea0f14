#include "symred/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <sstream>

#include "symred/catalog.hpp"
#include "symred/connection.hpp"
#include "symred/curvature.hpp"
#include "symred/errors.hpp"
#include "symred/orbit.hpp"
#include "symred/phase_space.hpp"
#include "symred/reduced.hpp"
#include "symred/reduction.hpp"

namespace symred {

using nlohmann::json;

std::map<std::string, double> default_tolerances() {
  return {
      {"connection_torsion", 1e-10},   {"connection_nabla_omega", 1e-10}, {"closed_form", 1e-12},
      {"lemma_rank", 1e-10},           {"lemma_perp_distance", 1e-10},    {"complement_stability", 1e-10},
      {"projector", 1e-10},            {"isotropy", 1e-10},               {"alpha", 1e-10},
      {"correction_equivariance", 1e-8}, {"reduced_torsion", 1e-6},       {"reduced_nabla_form", 1e-6},
      {"reduced_closed", 1e-6},        {"kks", 1e-8},                     {"fiber_independence", 1e-8},
      {"s_tilde_independence", 1e-8},  {"curvature_agreement", 1e-4},     {"curvature_symmetry", 1e-4},
      {"curvature_invariance", 1e-6},
  };
}

namespace {

[[noreturn]] void config_error(const std::string& msg) { throw Error(ErrorKind::ConfigError, msg); }

double positive(const json& j, const char* key) {
  if (!j.is_number()) config_error(std::string(key) + " must be a number");
  const double v = j.get<double>();
  if (!(v > 0.0) || !std::isfinite(v)) config_error(std::string(key) + " must be positive");
  return v;
}

int positive_int(const json& j, const char* key) {
  if (!j.is_number_integer() || j.get<long long>() < 1) config_error(std::string(key) + " must be a positive integer");
  return j.get<int>();
}

Vector number_list(const json& j, const std::string& what) {
  if (!j.is_array()) config_error(what + " must be an array of numbers");
  Vector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) config_error(what + " must contain only numbers");
    v(i) = j[i].get<double>();
  }
  return v;
}

LieAlgebra inline_algebra(const json& g) {
  static const std::set<std::string> allowed = {"name", "dim", "brackets", "realization"};
  for (const auto& [key, _] : g.items())
    if (!allowed.count(key)) config_error("unknown key in group: '" + key + "'");
  if (!g.contains("dim") || !g.contains("brackets")) config_error("inline group needs 'dim' and 'brackets'");
  const int n = positive_int(g["dim"], "group.dim");
  Tensor3 c(n);
  if (!g["brackets"].is_array()) config_error("group.brackets must be an array");
  for (const auto& e : g["brackets"]) {
    if (!e.is_array() || e.size() != 4) config_error("each bracket entry is [i, j, k, coefficient]");
    for (int q = 0; q < 3; ++q)
      if (!e[q].is_number_integer() || e[q].get<int>() < 0 || e[q].get<int>() >= n)
        config_error("bracket index out of range");
    if (!e[3].is_number()) config_error("bracket coefficient must be a number");
    const int i = e[0].get<int>(), jj = e[1].get<int>(), k = e[2].get<int>();
    if (i == jj) config_error("bracket entries need i != j");
    c(i, jj, k) = e[3].get<double>();
    c(jj, i, k) = -e[3].get<double>();
  }
  std::vector<Matrix> realization;
  if (g.contains("realization")) {
    if (!g["realization"].is_array() || g["realization"].size() != std::size_t(n))
      config_error("group.realization must list one matrix per basis element");
    for (const auto& m : g["realization"]) {
      if (!m.is_array() || m.empty()) config_error("realization matrices must be non-empty arrays of rows");
      const auto r = m.size();
      Matrix mat(r, r);
      for (std::size_t i = 0; i < r; ++i) {
        const Vector row = number_list(m[i], "realization row");
        if (std::size_t(row.size()) != r) config_error("realization matrices must be square");
        mat.row(i) = row.transpose();
      }
      if (!realization.empty() && realization.front().rows() != mat.rows())
        config_error("realization matrices must share one size");
      realization.push_back(mat);
    }
  }
  const std::string name = g.value("name", std::string("custom"));
  try {
    if (realization.empty()) {
      // Without an explicit realization fall back on the adjoint representation,
      // which is faithful exactly when the centre is trivial.
      const LieAlgebra bare(c, name);
      Matrix stacked(n * n, n);
      for (int i = 0; i < n; ++i) {
        const Matrix adi = bare.ad(Vector::Unit(n, i));
        stacked.col(i) = Eigen::Map<const Vector>(adi.data(), n * n);
        realization.push_back(adi);
      }
      if (linalg::singular_values(stacked)(n - 1) < 1e-10 * std::max(1.0, linalg::singular_values(stacked)(0)))
        config_error("inline group has a non-trivial centre; supply a faithful 'realization'");
    }
    return LieAlgebra(std::move(c), name, std::move(realization), "");
  } catch (const Error& e) {
    config_error(e.what());
  }
}

json to_json(const Vector& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

json rows_json(const Matrix& m) {
  json out = json::array();
  for (int i = 0; i < m.rows(); ++i) out.push_back(to_json(m.row(i).transpose()));
  return out;
}

json columns_json(const Matrix& m) {
  json out = json::array();
  for (int i = 0; i < m.cols(); ++i) out.push_back(to_json(m.col(i)));
  return out;
}

json tensor_json(const Tensor3& t) {
  json out = json::array();
  for (int a = 0; a < t.dim0(); ++a) {
    json ja = json::array();
    for (int b = 0; b < t.dim1(); ++b) {
      json jb = json::array();
      for (int c = 0; c < t.dim2(); ++c) jb.push_back(t(a, b, c));
      ja.push_back(jb);
    }
    out.push_back(ja);
  }
  return out;
}

json curvature_json(const CurvatureTensor& r) {
  const int k = r.dim();
  json out = json::array();
  for (int a = 0; a < k; ++a) {
    json ja = json::array();
    for (int b = 0; b < k; ++b) {
      json jb = json::array();
      for (int c = 0; c < k; ++c) {
        json jc = json::array();
        for (int d = 0; d < k; ++d) jc.push_back(r(a, b, c, d));
        jb.push_back(jc);
      }
      ja.push_back(jb);
    }
    out.push_back(ja);
  }
  return out;
}

json symmetry_json(const CurvatureSymmetry& s) {
  return {{"antisymmetry", s.antisymmetry}, {"symplectic", s.symplectic}, {"bianchi", s.bianchi}};
}

const std::set<std::string> kVerbs = {"validate", "reduce", "curvature", "verify", "export-connection"};

class Runner {
 public:
  Runner(CaseConfig cfg, std::string verb, json& report)
      : cfg_(std::move(cfg)), verb_(std::move(verb)), report_(report), rng_(cfg_.seed), a_(*cfg_.algebra) {}

  void run() {
    stage("validate", [&] { validate(); });
    if (verb_ == "validate") return;
    stage("connection", [&] { connection(); });
    if (verb_ == "export-connection") {
      stage("export", [&] { export_connection(); });
      return;
    }
    stage("context", [&] { context(); });
    stage("reduce", [&] { reduce(); });
    if (verb_ == "reduce") return;
    stage("curvature", [&] { curvature(); });
  }

  const json& checks() const { return checks_; }
  json& timings() { return timings_; }

 private:
  template <class F>
  void stage(const std::string& name, F&& body) {
    const auto start = std::chrono::steady_clock::now();
    report_["stages"].push_back({{"name", name}, {"status", "running"}});
    body();
    report_["stages"].back()["status"] = "ok";
    timings_[name] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }

  double tol(const std::string& key) const { return cfg_.tol.at(key); }

  void check(const std::string& name, double value, double threshold, bool upper = true) {
    const bool passed = std::isfinite(value) && (upper ? value <= threshold : value >= threshold);
    checks_.push_back({{"name", name},
                       {"value", value},
                       {"threshold", threshold},
                       {"comparison", upper ? "le" : "ge"},
                       {"passed", passed}});
  }

  void note(const std::string& text) { report_["notes"].push_back(text); }

  Vector uniform(int n, double scale) {
    std::uniform_real_distribution<double> u(-scale, scale);
    Vector v(n);
    for (auto& x : v) x = u(rng_);
    return v;
  }

  std::vector<Vector> chart_points(int count) {
    std::vector<Vector> pts{Vector::Zero(model_->dim())};
    for (int i = 1; i < count; ++i) pts.push_back(uniform(model_->dim(), cfg_.chart_radius));
    return pts;
  }

  std::vector<GroupElement> fiber_elements(int count) {
    std::vector<GroupElement> out;
    for (int i = 0; i < count; ++i) out.push_back(exp(a_, g_mu_ * uniform(int(g_mu_.cols()), 2.0)));
    return out;
  }

  void validate() {
    const int n = a_.dim();
    report_["algebra"] = {{"name", a_.name()},
                          {"dim", n},
                          {"jacobi_defect", a_.jacobi_defect()},
                          {"has_realization", a_.has_realization()}};
    g_mu_ = stabilizer_algebra(a_, cfg_.mu);
    report_["stabilizer"] = {{"dim", g_mu_.cols()}, {"basis", columns_json(g_mu_)}, {"reductive", nullptr}};
    const Matrix m = reductive_complement(a_, g_mu_);
    report_["stabilizer"]["reductive"] = true;
    report_["stabilizer"]["complement"] = columns_json(m);
    const double stab = complement_stability_defect(a_, g_mu_, m);
    report_["stabilizer"]["complement_stability_defect"] = stab;
    check("stabilizer.complement_stability", stab, tol("complement_stability"));

    std::vector<PhasePoint> pts;
    for (int i = 0; i < cfg_.samples; ++i)
      pts.push_back({a_.has_realization() ? exp(a_, uniform(n, 1.0)) : GroupElement{}, cfg_.mu});
    const auto reg = regularity_report(a_, cfg_.mu, pts);
    // σ_min / σ_max of the momentum differential and of X ↦ X^r
    const double mom = *std::min_element(reg.momentum_min_singular.begin(), reg.momentum_min_singular.end());
    const double gen = *std::min_element(reg.generator_min_singular.begin(), reg.generator_min_singular.end());
    const auto split = constraint_split(a_, cfg_.mu);
    const double perp = linalg::subspace_distance(omega_complement(a_, cfg_.mu, split.tangent), split.perp);
    const double radical_gap = std::abs(double(split.radical.cols() - g_mu_.cols()));
    report_["lemma"] = {{"momentum_min_singular", mom},
                        {"generator_min_singular", gen},
                        {"regular", reg.regular},
                        {"perp_distance", perp},
                        {"radical_dim", split.radical.cols()},
                        {"stabilizer_dim", g_mu_.cols()}};
    check("lemma.momentum_rank", mom, tol("lemma_rank"), false);
    check("lemma.generator_rank", gen, tol("lemma_rank"), false);
    check("lemma.perp_distance", perp, tol("lemma_perp_distance"));
    check("lemma.radical_dim", radical_gap, 0.0);
  }

  void connection() {
    const int n = a_.dim();
    const auto base = baseline_connection(a_);
    conn_.emplace(cfg_.connection == "baseline" ? base : symplectize(base, a_));
    std::vector<Covector> xs{cfg_.mu};
    for (int i = 0; i < cfg_.samples; ++i) xs.push_back(uniform(n, 1.0));
    double tor = 0.0, nab = 0.0, closed = 0.0;
    for (const auto& xi : xs) {
      tor = std::max(tor, torsion_defect(a_, *conn_, xi));
      nab = std::max(nab, nabla_omega_defect(a_, *conn_, xi));
      const TrivTangent u{uniform(n, 1.0), uniform(n, 1.0)}, v{uniform(n, 1.0), uniform(n, 1.0)},
          w{uniform(n, 1.0), uniform(n, 1.0)};
      closed = std::max(closed, std::abs(nabla_omega(a_, base, xi, u, v, w) -
                                         baseline_nabla_omega_closed_form(a_, xi, u, v, w)));
    }
    report_["connection"] = {{"kind", cfg_.connection},
                             {"torsion_defect", tor},
                             {"nabla_omega_defect", nab},
                             {"baseline_closed_form_defect", closed},
                             {"sample_count", xs.size()}};
    check("connection.torsion", tor, tol("connection_torsion"));
    check("connection.nabla_omega", nab, tol("connection_nabla_omega"));
    check("connection.baseline_closed_form", closed, tol("closed_form"));
  }

  void export_connection() {
    report_["export"] = {{"frame_dim", 2 * a_.dim()},
                         {"kind", cfg_.connection},
                         {"frame", "group directions first, then fiber directions"},
                         {"index_order", "gamma[a][b][c] is the E_c-component of nabla_{E_a} E_b"},
                         {"coefficients_at_mu", tensor_json(conn_->coefficients(cfg_.mu))}};
    ReductionOptions opts;
    opts.s_tilde = cfg_.s_tilde;
    ctx_.emplace(build_context(a_, cfg_.mu, opts));
    if (ctx_->base_dim() == 0) {
      report_["export"]["reduced"] = nullptr;
      report_["export"]["zero_dimensional_base"] = true;
      return;
    }
    model_.emplace(a_, *ctx_, *conn_);
    json samples = json::array();
    for (const auto& t : chart_points(cfg_.samples))
      samples.push_back({{"t", to_json(t)}, {"christoffel", tensor_json(model_->christoffel(t, cfg_.fd_step))}});
    report_["export"]["zero_dimensional_base"] = false;
    report_["export"]["reduced"] = {{"base_dim", model_->dim()},
                                    {"index_order", "gamma[a][b][c] is the d/dt_c-component of nabla_a d/dt_b"},
                                    {"samples", samples}};
  }

  void context() {
    ReductionOptions opts;
    opts.s_tilde = cfg_.s_tilde;
    ctx_.emplace(build_context(a_, cfg_.mu, opts));
    const auto& c = *ctx_;
    const auto d = context_defects(a_, c);
    double equiv = 0.0;
    for (const auto& h : fiber_elements(cfg_.samples))
      equiv = std::max(equiv, correction_equivariance_defect(a_, c, h));
    report_["context"] = {
        {"dims", {{"delta", c.k()}, {"w1", c.W1.cols()}, {"w2", c.W2.cols()}, {"s", c.S.cols()}}},
        {"s_tilde", cfg_.s_tilde.size() ? "custom" : "default"},
        {"decomposition_condition", c.decomposition_condition},
        {"correction_norm", c.L.size() ? linalg::max_abs(c.L) : 0.0},
        {"defects",
         {{"projector", d.projector},
          {"projector_range", d.projector_range},
          {"isotropy", d.isotropy},
          {"alpha_normalization", d.alpha_normalization},
          {"alpha_on_w1", d.alpha_on_w1},
          {"w1_in_tangent", d.w1_in_tangent},
          {"w2_in_perp", d.w2_in_perp},
          {"radical_pairing", d.radical_pairing},
          {"correction_equivariance", equiv}}},
        {"w1_form_min_singular", d.w1_min_singular},
        {"totally_geodesic_defect", totally_geodesic_defect(a_, c, *conn_)}};
    check("context.projector", std::max(d.projector, d.projector_range), tol("projector"));
    check("context.isotropy", d.isotropy, tol("isotropy"));
    check("context.alpha", std::max(d.alpha_normalization, d.alpha_on_w1), tol("alpha"));
    check("context.subspace_placement", std::max({d.w1_in_tangent, d.w2_in_perp, d.radical_pairing}),
          tol("projector"));
    check("context.correction_equivariance", equiv, tol("correction_equivariance"));
  }

  void reduce() {
    if (ctx_->base_dim() == 0) {
      report_["reduced"] = {{"zero_dimensional_base", true}, {"base_dim", 0}};
      note("the reduced space is a single point; reduced-connection and curvature checks do not apply");
      return;
    }
    model_.emplace(a_, *ctx_, *conn_);
    const auto pts = chart_points(cfg_.samples);
    const double h = cfg_.fd_step;
    double tor = 0.0, nab = 0.0, closed = 0.0;
    for (const auto& t : pts) {
      tor = std::max(tor, reduced_torsion_defect(*model_, t, h));
      nab = std::max(nab, reduced_nabla_form_defect(*model_, t, h));
      closed = std::max(closed, reduced_closedness_defect(*model_, t, h));
    }
    const auto kks = compare_with_kks(*model_, pts);
    const double fiber = fiber_independence_defect(*model_, pts, fiber_elements(cfg_.samples), h);
    const Vector t0 = Vector::Zero(model_->dim());
    report_["reduced"] = {{"zero_dimensional_base", false},
                          {"base_dim", model_->dim()},
                          {"sigma", kks.sigma},
                          {"sigma_consistent", kks.sign_consistent},
                          {"kks_relative_error", kks.max_relative_error},
                          {"torsion_defect", tor},
                          {"nabla_form_defect", nab},
                          {"closedness_defect", closed},
                          {"fiber_independence_defect", fiber},
                          {"chart_points", columns_json(linalg::hstack(Matrix(0, 0), Matrix(0, 0)))},
                          {"christoffel_at_origin", tensor_json(model_->christoffel(t0, h))},
                          {"form_at_origin", rows_json(model_->form_matrix(t0))}};
    json jp = json::array();
    for (const auto& t : pts) jp.push_back(to_json(t));
    report_["reduced"]["chart_points"] = jp;
    check("reduced.torsion", tor, tol("reduced_torsion"));
    check("reduced.nabla_form", nab, tol("reduced_nabla_form"));
    check("reduced.closed", closed, tol("reduced_closed"));
    check("reduced.kks", kks.max_relative_error, tol("kks"));
    check("reduced.kks_sign_consistent", kks.sign_consistent ? 1.0 : 0.0, 1.0, false);
    check("reduced.fiber_independence", fiber, tol("fiber_independence"));

    if (verb_ == "verify") {
      std::mt19937_64 sub(rng_());
      const auto ap = autoparallel_check(a_, *ctx_, *conn_, sub, {pts.front()}, h);
      report_["reduced"]["autoparallel_defect"] = ap.defect;
      if (ap.independence) {
        report_["reduced"]["s_tilde_independence"] = *ap.independence;
        check("reduced.s_tilde_independence", *ap.independence, tol("s_tilde_independence"));
      } else {
        report_["reduced"]["s_tilde_independence"] = nullptr;
        note("Σ_μ is not autoparallel for this connection; the S̃-independence comparison is omitted");
      }
    }
  }

  void curvature() {
    if (!model_) {
      report_["curvature"] = nullptr;
      return;
    }
    const CurvatureSteps steps{cfg_.fd_step, cfg_.fd_step2};
    std::vector<Vector> pts{Vector::Zero(model_->dim())};
    for (int i = 1; i < cfg_.curvature_points; ++i) pts.push_back(uniform(model_->dim(), cfg_.chart_radius));
    json samples = json::array();
    double agreement = 0.0;
    CurvatureSymmetry sym;
    for (const auto& t : pts) {
      const auto f = curvature_tensor(*model_, t, CurvaturePath::Formula, steps);
      const auto o = curvature_tensor(*model_, t, CurvaturePath::Oracle, steps);
      const Matrix form = model_->form_matrix(t);
      const auto sf = curvature_symmetry_report(f, form), so = curvature_symmetry_report(o, form);
      const double rel = relative_discrepancy(f, o);
      agreement = std::max(agreement, rel);
      sym.merge(sf);
      sym.merge(so);
      samples.push_back({{"t", to_json(t)},
                         {"formula", curvature_json(f)},
                         {"oracle", curvature_json(o)},
                         {"relative_discrepancy", rel},
                         {"symmetry_formula", symmetry_json(sf)},
                         {"symmetry_oracle", symmetry_json(so)}});
    }
    report_["curvature"] = {
        {"index_order", "r[a][b][c][d] is the d/dt_d-component of R(d/dt_a, d/dt_b) d/dt_c"},
        {"fd_step", steps.h1},
        {"fd_step2", steps.h2},
        {"step_rationale",
         "nested derivatives use the larger outer step fd_step2 so that the cancellation error "
         "eps/(fd_step*fd_step2) stays below the O(fd_step2^2) truncation error"},
        {"samples", samples},
        {"max_relative_discrepancy", agreement},
        {"symmetry", symmetry_json(sym)}};
    check("curvature.agreement", agreement, tol("curvature_agreement"));
    check("curvature.antisymmetry", sym.antisymmetry, tol("curvature_symmetry"));
    check("curvature.symplectic", sym.symplectic, tol("curvature_symmetry"));
    check("curvature.bianchi", sym.bianchi, tol("curvature_symmetry"));

    if (verb_ != "verify") return;
    const auto conv = curvature_convergence(*model_, pts.front(), cfg_.convergence_step, 2, cfg_.fd_step);
    report_["curvature"]["convergence"] = {
        {"steps", conv.steps}, {"discrepancies", conv.discrepancies}, {"factors", conv.factors}};
    if (!cfg_.convergence) {
      note("step-halving convergence check disabled by configuration");
    } else if (conv.discrepancies.back() <= 1e-12) {
      note("formula and oracle agree to rounding at every step (flat case); convergence order not measurable");
    } else {
      check("curvature.convergence_factor_low", conv.factors.front(), 3.0, false);
      check("curvature.convergence_factor_high", conv.factors.front(), 5.0);
    }
    const double inv = curvature_invariance_defect(*model_, pts.front(), exp(a_, uniform(a_.dim(), 0.2)), steps);
    report_["curvature"]["invariance_defect"] = inv;
    check("curvature.invariance", inv, tol("curvature_invariance"));
  }

  CaseConfig cfg_;
  std::string verb_;
  json& report_;
  std::mt19937_64 rng_;
  const LieAlgebra& a_;
  Matrix g_mu_;
  std::optional<FrameConnection> conn_;
  std::optional<ReductionContext> ctx_;
  std::optional<ReducedModel> model_;
  json checks_ = json::array();
  json timings_ = json::object();
};

void format_number(std::ostringstream& os, double v) {
  if (!std::isfinite(v)) {
    os << "null";
    return;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  // keep the value recognizably floating point
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  os << s;
}

void write(std::ostringstream& os, const json& j, int indent, int depth) {
  const std::string pad(std::size_t(indent) * (depth + 1), ' '), close(std::size_t(indent) * depth, ' ');
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{" << nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << "," << nl;
        first = false;
        os << pad << json(it.key()).dump() << (indent > 0 ? ": " : ":");
        write(os, it.value(), indent, depth + 1);
      }
      os << nl << close << "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      // arrays of scalars stay on one line
      const bool flat = std::none_of(j.begin(), j.end(), [](const json& e) { return e.is_structured(); });
      os << "[";
      if (!flat) os << nl;
      bool first = true;
      for (const auto& e : j) {
        if (!first) os << (flat ? ", " : ",") << (flat ? "" : nl);
        first = false;
        if (!flat) os << pad;
        write(os, e, indent, depth + 1);
      }
      if (!flat) os << nl << close;
      os << "]";
      return;
    }
    case json::value_t::number_float:
      format_number(os, j.get<double>());
      return;
    default:
      os << j.dump();
  }
}

}  // namespace

CaseConfig parse_config(const json& j) {
  if (!j.is_object()) config_error("config must be a JSON object");
  static const std::set<std::string> allowed = {
      "schema_version", "group", "mu", "connection", "fd_step", "fd_step2", "tol", "chart_radius", "samples",
      "seed", "s_tilde", "curvature_points", "convergence", "convergence_step"};
  for (const auto& [key, _] : j.items())
    if (!allowed.count(key)) config_error("unknown config key '" + key + "'");
  if (j.contains("schema_version") &&
      (!j["schema_version"].is_number_integer() || j["schema_version"].get<int>() != kSchemaVersion))
    config_error("unsupported schema_version (expected " + std::to_string(kSchemaVersion) + ")");

  CaseConfig cfg;
  cfg.source = j;
  if (!j.contains("group")) config_error("config needs 'group'");
  if (j["group"].is_string()) {
    cfg.group_label = j["group"].get<std::string>();
    cfg.algebra.emplace(catalog::by_name(cfg.group_label));
  } else if (j["group"].is_object()) {
    cfg.algebra.emplace(inline_algebra(j["group"]));
    cfg.group_label = cfg.algebra->name();
  } else {
    config_error("group must be a catalog name or an inline structure-constant object");
  }
  const int n = cfg.algebra->dim();

  if (!j.contains("mu")) config_error("config needs 'mu'");
  cfg.mu = number_list(j["mu"], "mu");
  if (cfg.mu.size() != n) config_error("mu must have " + std::to_string(n) + " components");

  if (j.contains("connection")) {
    if (!j["connection"].is_string()) config_error("connection must be a string");
    cfg.connection = j["connection"].get<std::string>();
    if (cfg.connection != "symplectized" && cfg.connection != "baseline")
      config_error("connection must be 'symplectized' or 'baseline'");
  }
  if (j.contains("fd_step")) cfg.fd_step = positive(j["fd_step"], "fd_step");
  if (j.contains("fd_step2")) cfg.fd_step2 = positive(j["fd_step2"], "fd_step2");
  if (j.contains("chart_radius")) cfg.chart_radius = positive(j["chart_radius"], "chart_radius");
  if (j.contains("convergence_step")) cfg.convergence_step = positive(j["convergence_step"], "convergence_step");
  if (j.contains("samples")) cfg.samples = positive_int(j["samples"], "samples");
  if (j.contains("curvature_points")) cfg.curvature_points = positive_int(j["curvature_points"], "curvature_points");
  if (j.contains("convergence")) {
    if (!j["convergence"].is_boolean()) config_error("convergence must be a boolean");
    cfg.convergence = j["convergence"].get<bool>();
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer() || j["seed"].get<long long>() < 0) config_error("seed must be a non-negative integer");
    cfg.seed = j["seed"].get<std::uint64_t>();
  }

  cfg.tol = default_tolerances();
  if (j.contains("tol")) {
    if (!j["tol"].is_object()) config_error("tol must be an object");
    for (const auto& [key, value] : j["tol"].items()) {
      if (!cfg.tol.count(key)) config_error("unknown tolerance '" + key + "'");
      cfg.tol[key] = positive(value, key.c_str());
    }
  }

  if (j.contains("s_tilde")) {
    const auto& s = j["s_tilde"];
    if (s.is_string()) {
      if (s.get<std::string>() != "default") config_error("s_tilde must be \"default\" or a list of vectors");
    } else if (s.is_array()) {
      Matrix m(2 * n, s.size());
      for (std::size_t c = 0; c < s.size(); ++c) {
        const Vector col = number_list(s[c], "s_tilde vector");
        if (col.size() != 2 * n) config_error("s_tilde vectors need 2n = " + std::to_string(2 * n) + " components");
        m.col(c) = col;
      }
      cfg.s_tilde = m;
    } else {
      config_error("s_tilde must be \"default\" or a list of vectors");
    }
  }
  return cfg;
}

CommandResult run_command(const std::string& verb, const json& config, const Overrides& overrides) {
  CommandResult result;
  json& report = result.report;
  report["schema_version"] = kSchemaVersion;
  report["command"] = verb;
  report["stages"] = json::array();
  report["checks"] = json::array();
  report["notes"] = json::array();
  report["error"] = nullptr;
  report["timings"] = json::object();
  report["config"] = config;
  report["effective"] = nullptr;

  auto fail = [&](const Error& e) {
    report["error"] = {{"kind", to_string(e.kind())}, {"message", e.what()}};
    result.exit_code = exit_code(e.kind());
    report["status"] = "error";
    if (!report["stages"].empty() && report["stages"].back()["status"] == "running")
      report["stages"].back()["status"] = "error";
  };

  std::optional<CaseConfig> cfg;
  try {
    if (!kVerbs.count(verb)) config_error("unknown command '" + verb + "'");
    cfg.emplace(parse_config(config));
    if (overrides.seed) cfg->seed = *overrides.seed;
    if (overrides.fd_step) {
      if (!(*overrides.fd_step > 0.0)) config_error("--fd-step must be positive");
      cfg->fd_step = *overrides.fd_step;
    }
    if (overrides.tol_scale) {
      if (!(*overrides.tol_scale > 0.0)) config_error("--tol-scale must be positive");
      for (auto& [_, v] : cfg->tol) v *= *overrides.tol_scale;
    }
    report["config"] = cfg->source;
    report["effective"] = {{"group", cfg->group_label},
                           {"seed", cfg->seed},
                           {"fd_step", cfg->fd_step},
                           {"fd_step2", cfg->fd_step2},
                           {"connection", cfg->connection},
                           {"chart_radius", cfg->chart_radius},
                           {"samples", cfg->samples},
                           {"tol", cfg->tol}};
  } catch (const Error& e) {
    fail(e);
  } catch (const std::exception& e) {
    fail(Error(ErrorKind::ConfigError, e.what()));
  }

  if (cfg) {
    Runner runner(std::move(*cfg), verb, report);
    try {
      runner.run();
      report["status"] = "ok";
    } catch (const Error& e) {
      fail(e);
    }
    report["checks"] = runner.checks();
    report["timings"] = runner.timings();
  }
  const bool all = std::all_of(report["checks"].begin(), report["checks"].end(),
                               [](const json& c) { return c["passed"].get<bool>(); });
  report["all_checks_passed"] = all;
  if (verb == "verify" && result.exit_code == 0 && !all) {
    report["status"] = "failed";
    result.exit_code = 1;
  }
  report["exit_code"] = result.exit_code;
  return result;
}

std::string dump_json(const json& j, int indent) {
  std::ostringstream os;
  write(os, j, indent, 0);
  if (indent > 0) os << "\n";
  return os.str();
}

}  // namespace symred
