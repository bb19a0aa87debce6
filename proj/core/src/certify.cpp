#include "phibvp/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "phibvp/json_writer.hpp"

namespace phibvp {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSafety = 1.1;
constexpr int kMaxBootstrapRounds = 5;
constexpr int kHQuadratureNodes = 257;

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void fill_ball(SampleRng& rng, std::vector<double>& v, double rho) {
  for (double& c : v) c = rng.symmetric(rho);
}

void perturb(SampleRng& rng, const std::vector<double>& v, std::vector<double>& out,
             double delta) {
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] + rng.symmetric(delta);
}

std::vector<double> diff(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return d;
}

std::vector<double> concat(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

// Log-uniform step size for the local half of the pair samples, so quotient
// suprema attained only in the small-separation limit are still seen.
double local_delta(SampleRng& rng, double rho) {
  return rho * std::pow(10.0, rng.range(-7.0, -1.0));
}

void require_positive_dim(int dim) {
  if (dim < 1) throw std::invalid_argument("estimator: dim must be positive");
}

}  // namespace

std::string to_string(TheoremId id) {
  switch (id) {
    case TheoremId::thm4_1: return "Thm4_1";
    case TheoremId::thm4_2: return "Thm4_2";
    case TheoremId::thm5_2: return "Thm5_2";
    case TheoremId::thm5_3: return "Thm5_3";
    case TheoremId::cor5_4: return "Cor5_4";
    case TheoremId::none: return "none";
  }
  return "none";
}

GronwallBound gronwall_bound(double k, double c0, double c1, double T) {
  if (!(k >= 0.0) || !(c0 >= 0.0) || !(c1 >= 0.0)) {
    throw std::invalid_argument("gronwall_bound: k, c0, c1 must be nonnegative");
  }
  if (!(T > 0.0)) throw std::invalid_argument("gronwall_bound: T must be positive");
  const double beta = k * c0 * T * std::exp(k * c1 * T);
  return {beta, std::max(beta, beta * T)};
}

CondensingResult condensing_check(double k, double k1, CondensingMode mode) {
  if (!(k > 0.0)) throw std::invalid_argument("condensing_check: k must be positive");
  if (!(k1 >= 0.0)) throw std::invalid_argument("condensing_check: k1 must be nonnegative");
  const double factor = (mode == CondensingMode::banach ? 2.0 : 1.0) * k * k1;
  return {factor, factor < 1.0};
}

double estimate_phi_inverse_lipschitz(const PhiMap& phi, int dim, const SamplingPlan& plan,
                                      VectorNormKind norm, ExtremalWitness* witness) {
  plan.validate();
  require_positive_dim(dim);
  SampleRng rng(plan.seed);
  const double rho = plan.radius;

  std::vector<double> v(dim), vp(dim), x(dim), xp(dim);
  double best = 0.0;
  ExtremalWitness w;
  w.quantity = "phi_inverse_lipschitz";
  w.t = kNaN;

  for (int i = 0; i < plan.samples; ++i) {
    fill_ball(rng, v, rho);
    if (i % 2 == 1) {
      perturb(rng, v, vp, local_delta(rng, rho));
    } else {
      fill_ball(rng, vp, rho);
    }
    const auto dv = diff(v, vp);
    const double denom = vector_norm(norm, dv);
    if (denom < 1e-12 * rho) continue;
    phi.inverse(v, x);
    phi.inverse(vp, xp);
    const auto dx = diff(x, xp);
    const double q = vector_norm(norm, dx) / denom;
    if (q > best) {
      best = q;
      w.value = q;
      w.a = v;
      w.b = vp;
    }
  }
  if (witness) *witness = w;
  return kSafety * best;
}

double estimate_f_lipschitz(const RhsFunction& f, int dim, double T, const SamplingPlan& plan,
                            VectorNormKind norm, ExtremalWitness* witness) {
  plan.validate();
  require_positive_dim(dim);
  if (!(T > 0.0)) throw std::invalid_argument("estimate_f_lipschitz: T must be positive");
  SampleRng rng(plan.seed);
  const double rho = plan.radius;

  std::vector<double> x(dim), xp(dim), y(dim, 0.0), yp(dim, 0.0);
  std::vector<double> fx(dim), fxp(dim);
  double best = 0.0;
  ExtremalWitness w;
  w.quantity = "f_lipschitz";
  w.t = kNaN;

  for (int i = 0; i < plan.samples; ++i) {
    const double t = rng.range(0.0, T);
    fill_ball(rng, x, rho);
    if (f.depends_on_y) fill_ball(rng, y, rho);
    if (i % 2 == 1) {
      const double delta = local_delta(rng, rho);
      perturb(rng, x, xp, delta);
      if (f.depends_on_y) perturb(rng, y, yp, delta);
    } else {
      fill_ball(rng, xp, rho);
      if (f.depends_on_y) fill_ball(rng, yp, rho);
    }
    const double dxn = vector_norm(norm, diff(x, xp));
    const double dyn = f.depends_on_y ? vector_norm(norm, diff(y, yp)) : 0.0;
    const double denom = std::max(dxn, dyn);
    if (denom < 1e-12 * rho) continue;
    f.eval(t, x, y, fx);
    f.eval(t, xp, yp, fxp);
    const double q = vector_norm(norm, diff(fx, fxp)) / denom;
    if (q > best) {
      best = q;
      w.value = q;
      w.t = t;
      w.a = f.depends_on_y ? concat(x, y) : x;
      w.b = f.depends_on_y ? concat(xp, yp) : xp;
    }
  }
  if (witness) *witness = w;
  return kSafety * best;
}

GrowthEstimate estimate_growth_constants(const RhsFunction& f, int dim, double T, double k,
                                         const SamplingPlan& plan, VectorNormKind norm) {
  plan.validate();
  require_positive_dim(dim);
  if (!(T > 0.0)) throw std::invalid_argument("estimate_growth_constants: T must be positive");
  if (!(k >= 0.0)) throw std::invalid_argument("estimate_growth_constants: k must be nonnegative");
  SampleRng rng(plan.seed);
  const double rho = plan.radius;

  constexpr int kSlopes = 17;  // c1 in {0, 0.25, ..., 4}
  std::vector<double> sup(kSlopes, -kInf);
  std::vector<ExtremalWitness> wit(kSlopes);

  std::vector<double> x(dim), y(dim), out(dim);
  for (int i = 0; i < plan.samples; ++i) {
    fill_ball(rng, x, rho);
    fill_ball(rng, y, rho);
    for (int ti = 0; ti < plan.t_nodes; ++ti) {
      const double t = T * static_cast<double>(ti) / static_cast<double>(plan.t_nodes - 1);
      f.eval(t, x, y, out);
      const double fn = vector_norm(norm, out);
      const double yn = vector_norm(norm, y);
      for (int j = 0; j < kSlopes; ++j) {
        const double val = fn - 0.25 * static_cast<double>(j) * yn;
        if (val > sup[j]) {
          sup[j] = val;
          wit[j].quantity = "growth_envelope";
          wit[j].value = val;
          wit[j].t = t;
          wit[j].a = x;
          wit[j].b = y;
        }
      }
    }
  }

  GrowthEstimate est;
  double best_beta = kInf;
  for (int j = 0; j < kSlopes; ++j) {
    if (sup[j] < 0.0) continue;  // envelope unnecessary at this slope
    const double c0 = kSafety * sup[j];
    if (c0 > kGrowthC0Cap) continue;
    const double c1 = 0.25 * static_cast<double>(j);
    const double beta = gronwall_bound(k, c0, c1, T).beta;
    if (beta < best_beta) {
      best_beta = beta;
      est.c0 = c0;
      est.c1 = c1;
      est.ok = true;
      est.witness = wit[j];
    }
  }
  if (!est.ok) {
    // Keep the flat-slope intercept for diagnostics.
    est.c0 = kSafety * sup[0];
    est.c1 = 0.0;
    est.witness = wit[0];
  }
  return est;
}

HilbertConditionReport check_hilbert_conditions(const Problem& p, const SamplingPlan& plan) {
  plan.validate();
  if (!p.hilbert_mode()) {
    throw std::invalid_argument(
        "check_hilbert_conditions: problem lacks inner-product data (euclidean norm and h "
        "required)");
  }
  SampleRng rng(plan.seed);
  const double rho = plan.radius;
  const int dim = p.dim();

  HilbertConditionReport rep;
  rep.monotonicity_margin = kInf;
  rep.growth_margin = kInf;
  rep.monotonicity_witness.quantity = "phi_monotonicity";
  rep.monotonicity_witness.t = kNaN;
  rep.growth_witness.quantity = "h_growth_margin";

  std::vector<double> x(dim), y(dim), px(dim), py(dim), fx(dim);
  for (int i = 0; i < plan.samples; ++i) {
    fill_ball(rng, x, rho);
    fill_ball(rng, y, rho);
    const auto dv = diff(x, y);
    if (vector_norm(VectorNormKind::euclidean, dv) < 1e-12 * rho) continue;
    p.phi().forward(x, px);
    p.phi().forward(y, py);
    const double val = dot(diff(px, py), dv);
    if (val < rep.monotonicity_margin) {
      rep.monotonicity_margin = val;
      rep.monotonicity_witness.value = val;
      rep.monotonicity_witness.a = x;
      rep.monotonicity_witness.b = y;
    }
  }

  const auto& h = p.f().hilbert_h;
  for (int i = 0; i < plan.samples; ++i) {
    fill_ball(rng, x, rho);
    fill_ball(rng, y, rho);
    for (int ti = 0; ti < plan.t_nodes; ++ti) {
      const double t = p.T() * static_cast<double>(ti) / static_cast<double>(plan.t_nodes - 1);
      p.f().eval(t, x, y, fx);
      const double val = dot(fx, x) + h(t) - vector_norm(VectorNormKind::euclidean, fx);
      if (val < rep.growth_margin) {
        rep.growth_margin = val;
        rep.growth_witness.value = val;
        rep.growth_witness.t = t;
        rep.growth_witness.a = x;
        rep.growth_witness.b = y;
      }
    }
  }

  rep.pass = rep.monotonicity_margin > 0.0 && rep.growth_margin >= 0.0;
  return rep;
}

HilbertBound hilbert_bound(const Problem& p, double k) {
  if (!p.f().hilbert_h) {
    throw std::invalid_argument("hilbert_bound: problem has no h function");
  }
  if (!(k > 0.0)) throw std::invalid_argument("hilbert_bound: k must be positive");

  const auto& h = p.f().hilbert_h;
  const double T = p.T();
  const int n = kHQuadratureNodes;
  const double step = T / static_cast<double>(n - 1);
  double integral = 0.0;
  double prev = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = T * static_cast<double>(i) / static_cast<double>(n - 1);
    const double hi = h(t);
    if (hi < 0.0) {
      throw std::invalid_argument("hilbert_bound: h must be nonnegative on [0, T]");
    }
    if (i > 0) integral += 0.5 * step * (prev + hi);
    prev = hi;
  }
  const double L = k * integral;
  return {integral, L, std::max(L, L * T)};
}

namespace {

HypothesisCheck flag_check(const std::string& name, bool flag, const std::string& detail) {
  HypothesisCheck c;
  c.name = name;
  c.value = flag ? 1.0 : 0.0;
  c.threshold = kNaN;
  c.satisfied = flag;
  c.detail = detail;
  return c;
}

HypothesisCheck bound_check(const std::string& name, double value, double threshold,
                            bool satisfied, const std::string& detail) {
  HypothesisCheck c;
  c.name = name;
  c.value = value;
  c.threshold = threshold;
  c.satisfied = satisfied;
  c.detail = detail;
  return c;
}

bool all_satisfied(const std::vector<HypothesisCheck>& verdict,
                   const std::vector<std::string>& names) {
  for (const auto& n : names) {
    for (const auto& c : verdict) {
      if (c.name == n && !c.satisfied) return false;
    }
  }
  return true;
}

}  // namespace

Certificate build_certificate(const Problem& p, const SamplingPlan& plan) {
  plan.validate();
  const auto& f = p.f();
  const int dim = p.dim();
  const double T = p.T();
  const bool hilbert = p.hilbert_mode();
  const bool use_hint = f.growth_hint.has_value();

  // Negative h kills the whole Hilbert chain before any bound is formed.
  bool h_ok = hilbert;
  double h_min = kNaN;
  if (hilbert) {
    h_min = kInf;
    for (int i = 0; i < kHQuadratureNodes; ++i) {
      const double t = T * static_cast<double>(i) / static_cast<double>(kHQuadratureNodes - 1);
      h_min = std::min(h_min, f.hilbert_h(t));
    }
    h_ok = h_min >= 0.0;
  }

  // Bootstrap the sampling radius: constants only need to hold on a ball
  // containing every fixed point, and the bounds themselves tell us how big
  // that ball is, so grow the radius until it covers twice the bound.
  double rho = plan.radius;
  int rounds = 0;
  double k = 0.0;
  ExtremalWitness k_witness;
  GrowthEstimate growth;
  double beta = kNaN, R1 = kNaN;
  HilbertBound hb{kNaN, kNaN, kNaN};
  bool have_hb = false;

  for (int round = 1; round <= kMaxBootstrapRounds; ++round) {
    rounds = round;
    SamplingPlan sub = plan;
    sub.radius = rho;

    sub.seed = plan.seed + 0;
    k = estimate_phi_inverse_lipschitz(p.phi(), dim, sub, p.norm(), &k_witness);

    if (use_hint) {
      growth.c0 = f.growth_hint->c0;
      growth.c1 = f.growth_hint->c1;
      growth.ok = true;
    } else {
      sub.seed = plan.seed + 1;
      growth = estimate_growth_constants(f, dim, T, k, sub, p.norm());
    }
    if (growth.ok) {
      const auto gb = gronwall_bound(k, growth.c0, growth.c1, T);
      beta = gb.beta;
      R1 = gb.R1;
    } else {
      beta = kNaN;
      R1 = kNaN;
    }

    if (h_ok && k > 0.0) {
      hb = hilbert_bound(p, k);
      have_hb = true;
    }

    double target = 0.0;
    if (growth.ok) target = std::max(target, 2.0 * R1);
    if (have_hb) target = std::max(target, 2.0 * hb.R);
    if (!std::isfinite(target) || rho >= target) break;
    // Out of rounds: keep rho at the radius the estimates were sampled on,
    // so the stability test below compares like with like.
    if (round == kMaxBootstrapRounds) break;
    rho = target;
  }

  const bool growth_stable = growth.ok && (use_hint || rho >= 2.0 * R1);
  const bool hilbert_stable = have_hb && rho >= 2.0 * hb.R;

  // Remaining estimates at the final radius.
  SamplingPlan sub = plan;
  sub.radius = rho;
  sub.seed = plan.seed + 2;
  ExtremalWitness k1_witness;
  const double k1 = estimate_f_lipschitz(f, dim, T, sub, p.norm(), &k1_witness);

  HilbertConditionReport hc;
  if (hilbert) {
    sub.seed = plan.seed + 3;
    hc = check_hilbert_conditions(p, sub);
  }

  const double banach_factor = 2.0 * k * k1;
  const double hilbert_factor = k * k1;

  Certificate cert;
  cert.label = "numerical evidence";

  auto& verdict = cert.verdict;
  verdict.push_back(flag_check("f.completely_continuous", f.assume_completely_continuous,
                               "assumed by problem declaration"));
  verdict.push_back(bound_check(
      "growth.envelope", growth.c0, kGrowthC0Cap, growth.ok,
      use_hint ? "declared envelope ||f|| <= c0 + c1*||y||"
               : (growth.ok ? "sampled sup of ||f|| - c1*||y||, inflated by 1.1"
                            : "every candidate intercept exceeded the cap")));
  verdict.push_back(bound_check(
      "growth.radius_bootstrap", rho, use_hint ? kNaN : 2.0 * R1, growth_stable,
      use_hint ? "declared envelope holds on every ball"
               : "sampling ball must cover twice the a-priori bound"));
  verdict.push_back(bound_check("condensing.banach_factor", banach_factor, 1.0,
                                banach_factor < 1.0, "2*k*k1 strictly below 1"));

  if (hilbert) {
    verdict.push_back(bound_check("hilbert.h_nonnegative", h_min, 0.0, h_ok,
                                  "h must map into [0, inf)"));
    verdict.push_back(bound_check("hilbert.phi_monotone", hc.monotonicity_margin, 0.0,
                                  hc.monotonicity_margin > 0.0,
                                  "min sampled <phi(x)-phi(y), x-y> strictly positive"));
    verdict.push_back(bound_check("hilbert.h_growth", hc.growth_margin, 0.0,
                                  hc.growth_margin >= 0.0,
                                  "min sampled <f,x> + h(t) - ||f|| nonnegative"));
    verdict.push_back(bound_check("hilbert.radius_bootstrap", rho,
                                  have_hb ? 2.0 * hb.R : kNaN, hilbert_stable,
                                  "sampling ball must cover twice the a-priori bound"));
    verdict.push_back(flag_check("f.state_only", !f.depends_on_y,
                                 "f must not depend on the derivative argument"));
    verdict.push_back(flag_check("f.bounded_image", f.assume_bounded_image,
                                 "assumed by problem declaration"));
    verdict.push_back(flag_check("f.uniformly_continuous", f.assume_uniformly_continuous,
                                 "assumed by problem declaration"));
    verdict.push_back(bound_check("condensing.hilbert_factor", hilbert_factor, 1.0,
                                  hilbert_factor < 1.0, "k*k1 strictly below 1"));
  }

  struct Candidate {
    TheoremId id;
    std::vector<std::string> needs;
  };
  const std::vector<std::string> hilbert_base = {"hilbert.h_nonnegative", "hilbert.phi_monotone",
                                                 "hilbert.h_growth", "hilbert.radius_bootstrap"};
  std::vector<Candidate> order;
  if (hilbert) {
    auto with = [&](std::initializer_list<std::string> extra) {
      std::vector<std::string> v = hilbert_base;
      v.insert(v.end(), extra.begin(), extra.end());
      return v;
    };
    order.push_back({TheoremId::cor5_4,
                     with({"f.state_only", "f.bounded_image", "f.uniformly_continuous",
                           "condensing.hilbert_factor"})});
    order.push_back({TheoremId::thm5_3,
                     with({"f.state_only", "f.bounded_image", "condensing.hilbert_factor"})});
    order.push_back({TheoremId::thm5_2, with({"f.completely_continuous"})});
  }
  order.push_back({TheoremId::thm4_1,
                   {"f.completely_continuous", "growth.envelope", "growth.radius_bootstrap"}});
  order.push_back({TheoremId::thm4_2,
                   {"growth.envelope", "growth.radius_bootstrap", "condensing.banach_factor"}});

  for (const auto& cand : order) {
    if (all_satisfied(verdict, cand.needs)) {
      cert.theorem = cand.id;
      break;
    }
  }

  cert.k = k;
  switch (cert.theorem) {
    case TheoremId::thm4_1:
      cert.c0 = growth.c0;
      cert.c1 = growth.c1;
      cert.beta = beta;
      cert.R1 = R1;
      break;
    case TheoremId::thm4_2:
      cert.c0 = growth.c0;
      cert.c1 = growth.c1;
      cert.k1 = k1;
      cert.beta = beta;
      cert.R1 = R1;
      cert.condensing_factor = banach_factor;
      break;
    case TheoremId::thm5_2:
      cert.L = hb.L;
      cert.R = hb.R;
      break;
    case TheoremId::thm5_3:
    case TheoremId::cor5_4:
      cert.k1 = k1;
      cert.L = hb.L;
      cert.R = hb.R;
      cert.condensing_factor = hilbert_factor;
      break;
    case TheoremId::none:
      // Nothing passed; expose whatever was computed so the failure is
      // inspectable.
      if (growth.ok) {
        cert.c0 = growth.c0;
        cert.c1 = growth.c1;
        cert.beta = beta;
        cert.R1 = R1;
      }
      cert.k1 = k1;
      if (have_hb) {
        cert.L = hb.L;
        cert.R = hb.R;
      }
      break;
  }

  auto& rep = cert.sampling_report;
  rep.radius = rho;
  rep.samples = plan.samples;
  rep.t_nodes = plan.t_nodes;
  rep.rounds = rounds;
  auto push_witness = [&rep](const ExtremalWitness& w) {
    if (!w.quantity.empty()) rep.witnesses.push_back(w);
  };
  push_witness(k_witness);
  if (!use_hint && growth.ok) push_witness(growth.witness);
  push_witness(k1_witness);
  if (hilbert) {
    push_witness(hc.monotonicity_witness);
    push_witness(hc.growth_witness);
  }
  return cert;
}

std::string certificate_json(const Certificate& c) {
  JsonWriter w;
  w.begin_object();
  w.key_value("theorem", to_string(c.theorem));
  w.key_value("label", c.label);
  auto opt = [&w](const char* name, const std::optional<double>& v) {
    w.key(name);
    if (v.has_value()) {
      w.value(*v);
    } else {
      w.null();
    }
  };
  opt("k", c.k);
  opt("c0", c.c0);
  opt("c1", c.c1);
  opt("k1", c.k1);
  opt("beta", c.beta);
  opt("R1", c.R1);
  opt("L", c.L);
  opt("R", c.R);
  opt("condensing_factor", c.condensing_factor);

  w.key("verdict");
  w.begin_array();
  for (const auto& check : c.verdict) {
    w.begin_object();
    w.key_value("name", check.name);
    w.key_value("value", check.value);
    w.key_value("threshold", check.threshold);
    w.key_value("satisfied", check.satisfied);
    w.key_value("detail", check.detail);
    w.end_object();
  }
  w.end_array();

  w.key("sampling_report");
  w.begin_object();
  w.key_value("radius", c.sampling_report.radius);
  w.key_value("samples", c.sampling_report.samples);
  w.key_value("t_nodes", c.sampling_report.t_nodes);
  w.key_value("rounds", c.sampling_report.rounds);
  w.key("witnesses");
  w.begin_array();
  for (const auto& wit : c.sampling_report.witnesses) {
    w.begin_object();
    w.key_value("quantity", wit.quantity);
    w.key_value("value", wit.value);
    w.key_value("t", wit.t);
    w.key_array("a", wit.a);
    w.key_array("b", wit.b);
    w.end_object();
  }
  w.end_array();
  w.end_object();

  w.end_object();
  return w.str();
}

}  // namespace phibvp
