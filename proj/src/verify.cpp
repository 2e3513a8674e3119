#include "hspinor/verify.hpp"

#include <cmath>
#include <string>

#include "hspinor/bessel_repr.hpp"
#include "hspinor/oracle.hpp"

namespace hspinor::verify {

namespace {

using dirac::SolutionType;

std::string hel(int h) { return h > 0 ? "helicity=+" : "helicity=-"; }

struct Collector {
  std::string suite;
  std::vector<Check>& out;

  void add(const ResidualReport& r, std::string name, std::string detail, bool gating = true) {
    Check c;
    c.suite = suite;
    c.name = std::move(name);
    c.detail = std::move(detail);
    c.value = r.max_rel_residual;
    c.tolerance = r.tolerance_used;
    c.argmax_z = r.argmax_z;
    c.gating = gating;
    out.push_back(std::move(c));
  }
  void value(double v, double tol, std::string name, std::string detail, bool must_exceed = false,
             bool gating = true) {
    Check c;
    c.suite = suite;
    c.name = std::move(name);
    c.detail = std::move(detail);
    c.value = v;
    c.tolerance = tol;
    c.must_exceed = must_exceed;
    c.gating = gating;
    out.push_back(std::move(c));
  }
};

// the oracle runs of one system at both helicities
void oracle_runs(Collector& col, SystemId id, const dirac::WaveParams& base) {
  for (int h : {+1, -1}) {
    dirac::WaveParams w = base;
    w.helicity = h;
    const auto r = oracle::closed_form_run(id, w);
    col.value(r.deviation, 1e-6, "oracle_closed_form_run", std::string(to_string(id)) + " " + hel(h));
  }
}

void scalar_suite(const Settings& s, std::vector<Check>& out) {
  Collector col{"scalar", out};
  const auto& p = s.scalar;
  p.validate();
  const double z0 = scalar::critical_point(p);
  const auto grid = linspace(z0 - 6.0, z0 + 2.0, 4096);
  for (auto v : {scalar::Variant::F1, scalar::Variant::F2, scalar::Variant::F5, scalar::Variant::F7}) {
    const std::string d(scalar::to_string(v));
    col.add(scalar::ode_residual(v, p, grid, s.tol), "ode_residual", d);
    col.add(scalar::phi_ode_residual(v, p, grid, s.tol), "phi_ode_residual", d);
  }
  // the connection is checked on y in [0.1, 30]
  const auto ygrid = linspace(std::log(0.1 / (2.0 * p.kperp())), std::log(30.0 / (2.0 * p.kperp())), 400);
  const auto cc = scalar::kummer_connection_check(p, ygrid);
  col.add(cc.f5, "kummer_connection_check", "f5");
  col.add(cc.f7_corrected, "kummer_connection_check", "f7 (principal branch)");
  col.add(cc.f7_printed, "kummer_connection_check", "f7 (as published)", false);
  const auto r = scalar::reflection_coefficient(p.epsilon);
  col.value(std::abs(r.R - 1.0), 1e-8, "reflection_coefficient", "|R - 1|");
  for (SystemId id : {SystemId::ScalarSchrodinger, SystemId::ScalarPhi, SystemId::KummerOde})
    oracle_runs(col, id, s.wave);
}

void dirac_suite(const Settings& s, std::vector<Check>& out) {
  Collector col{"dirac", out};
  for (int h : {+1, -1}) {
    dirac::WaveParams w = s.wave;
    w.helicity = h;
    w.validate();
    const auto grid = dirac::standard_grid(w);
    for (SolutionType t : {SolutionType::I, SolutionType::II}) {
      const std::string d = "type=" + std::string(to_string(t)) + " " + hel(h);
      col.add(dirac::first_order_residual(t, w, grid, s.build, s.tol), "first_order_residual", d);
      col.add(dirac::separated_system_residual(t, w, grid, s.build, s.tol), "separated_system_residual", d);
      col.add(dirac::helicity_residual(t, w, grid, std::nullopt, s.build, s.tol), "helicity_residual", d);
      col.add(dirac::second_order_residual(1, t, w, grid, false, s.tol), "second_order_residual", d + " f1");
      col.add(dirac::second_order_residual(2, t, w, grid, false, s.tol), "second_order_residual", d + " f2");
      col.add(dirac::symmetry_residual(t, w, grid, s.tol), "symmetry_residual", d);
      col.add(dirac::ratio_invariant(t, w, grid), "ratio_invariant", d);
      dirac::BuildOptions printed = s.build;
      printed.factors = dirac::FactorConvention::AsPrinted;
      col.add(dirac::first_order_residual(t, w, grid, printed, s.tol), "first_order_residual",
              d + " published factors", false);
    }
    // past the turning point both solutions grow alike and W cancels; the
    // oscillatory side is where independence is decidable
    const auto ind = dirac::independence(w.p(), w.k1, w.k2, linspace(w.z_turn() - 6.0, w.z_turn(), 400));
    col.value(ind.min_normalized_det, 1e-3, "independence", "normalized Wronskian " + hel(h), true);
    col.value(ind.det_drift, 1e-10, "independence", "Wronskian drift " + hel(h));
    const auto pc = dirac::pauli_reduction_check(100.0, 0.5, 1.0, 1.0, h, linspace(-2.0, 2.0, 401));
    col.add(pc.large_small_system, "pauli_reduction_check", "large/small system " + hel(h));
    col.add(pc.elimination_exact, "pauli_reduction_check", "elimination with E + 2m " + hel(h));
    col.add(pc.elimination_2m, "pauli_reduction_check", "elimination with 2m " + hel(h));
    col.add(pc.second_order_pauli, "pauli_reduction_check", "second-order pair " + hel(h));
    col.add(pc.identity, "pauli_reduction_check", "commutator identity " + hel(h));
  }
  // flat space reference and the flat limit at the built-in study parameters
  dirac::WaveParams fw{5.0, 1.0, 1.0, 3.0, +1};
  for (int b : {+1, -1}) {
    const auto f = dirac::flat_space_solution(fw, b);
    double worst = 0.0;
    for (double z : linspace(-3.0, 3.0, 61)) worst = std::max(worst, dirac::flat_space_residual(fw, f, z));
    col.value(worst, 1e-12, "flat_space_residual", b > 0 ? "branch=+" : "branch=-");
  }
  const auto rows = dirac::flat_limit_study({});
  for (SolutionType t : {SolutionType::I, SolutionType::II}) {
    double prev = INFINITY, last = 0.0;
    bool decreasing = true;
    for (const auto& r : rows) {
      if (r.type != t || r.capped) continue;
      decreasing = decreasing && r.max_dev_p0 < prev;
      prev = last = r.max_dev_p0;
    }
    const std::string d = "type=" + std::string(to_string(t));
    col.value(decreasing ? 0.0 : 1.0, 0.5, "flat_limit_study", d + " error strictly decreasing");
    col.value(last, 1e-2, "flat_limit_study", d + " error at largest R");
  }
  for (SystemId id : {SystemId::DiracFirstOrder, SystemId::DiracSecondOrder}) oracle_runs(col, id, s.wave);
}

void weyl_suite(const Settings& s, std::vector<Check>& out) {
  Collector col{"weyl", out};
  for (int sign : {-1, +1}) {
    weyl::WeylParams p = s.weyl;
    p.sign = sign;
    p.validate();
    const auto grid = weyl::standard_grid(p);
    for (SolutionType t : {SolutionType::I, SolutionType::II}) {
      const std::string d = "type=" + std::string(to_string(t)) + (sign < 0 ? " p=-eps" : " p=+eps");
      col.add(weyl::weyl_system_residual(t, p, grid, s.build, s.tol), "weyl_system_residual", d);
      col.value(weyl::dirac_agreement(t, p, 1e-7, linspace(grid.front(), grid.back(), 512)), 1e-10,
                "dirac_agreement", d + " m=1e-7");
    }
  }
  oracle_runs(col, SystemId::Weyl, s.wave);
}

void bessel_suite(const Settings& s, std::vector<Check>& out) {
  namespace br = bessel_repr;
  Collector col{"bessel", out};
  for (int h : {+1, -1}) {
    dirac::WaveParams w = s.wave;
    w.helicity = h;
    w.validate();
    const auto grid = br::interior_grid(w);
    for (const auto& row : br::all_rows) {
      const std::string d = br::row_name(row) + " " + hel(h);
      col.add(br::phi_system_residual(row, w, grid, br::PairingSigns::Consistent, s.tol), "phi_system_residual", d);
      col.add(br::phi_system_residual(row, w, grid, br::PairingSigns::AsPrinted, s.tol), "phi_system_residual",
              d + " published signs", false);
      col.add(br::bessel_equation_residual(row, w, grid), "bessel_equation_residual", d);
      const auto rc = br::recurrence_pairing_check(row, w, grid);
      col.add(rc.consistent, "recurrence_pairing_check", d);
      const auto cx = br::cross_representation_check(row, w, grid);
      col.value(cx.fit_residual, 1e-8, "cross_representation_check", d + " fit");
      col.value(cx.coefficient_drift, 1e-8, "cross_representation_check", d + " coefficient drift");
    }
    for (SolutionType t : {SolutionType::I, SolutionType::II})
      col.add(br::transformed_dirac_residual(t, w, grid, s.tol), "transformed_dirac_residual",
              "type=" + std::string(to_string(t)) + " " + hel(h));
    col.add(br::hankel_sum_check(w, grid), "hankel_sum_check", hel(h));
    col.add(br::helicity_flip_check(w, grid), "helicity_flip_check", hel(h));
    const auto refl = br::hankel_reflection_check(w, grid);
    col.add(refl.standard, "hankel_reflection_check", "H1_{-nu} = e^{i nu pi} H1_nu " + hel(h));
    col.add(refl.printed, "hankel_reflection_check", "H1_{-nu} = e^{i nu pi} H2_nu " + hel(h), false);
    const auto tab = br::asymptotic_table(w, br::default_z_minus(w), br::default_z_plus(w));
    col.value(tab.all_match() ? 0.0 : 1.0, 0.5, "asymptotic_table", "all rows match " + hel(h));
    col.value(tab.hankel_unique_decay() ? 0.0 : 1.0, 0.5, "asymptotic_table", "Hankel I unique decay " + hel(h));
  }
  for (SystemId id : {SystemId::PhiSystem, SystemId::BesselOde}) oracle_runs(col, id, s.wave);
}

}  // namespace

std::string_view to_string(Suite s) {
  switch (s) {
    case Suite::Scalar: return "scalar";
    case Suite::Dirac: return "dirac";
    case Suite::Weyl: return "weyl";
    case Suite::Bessel: return "bessel";
    case Suite::All: return "all";
  }
  return "?";
}

Suite suite_from_string(std::string_view s) {
  for (Suite x : {Suite::Scalar, Suite::Dirac, Suite::Weyl, Suite::Bessel, Suite::All})
    if (to_string(x) == s) return x;
  throw ParameterError("unknown suite '" + std::string(s) + "' (scalar, dirac, weyl, bessel, all)");
}

std::vector<Check> run(Suite s, const Settings& cfg) {
  if (!(cfg.tol > 0.0)) throw ParameterError("tolerance must be positive");
  std::vector<Check> out;
  if (s == Suite::Scalar || s == Suite::All) scalar_suite(cfg, out);
  if (s == Suite::Dirac || s == Suite::All) dirac_suite(cfg, out);
  if (s == Suite::Weyl || s == Suite::All) weyl_suite(cfg, out);
  if (s == Suite::Bessel || s == Suite::All) bessel_suite(cfg, out);
  return out;
}

std::vector<Check> failures(const std::vector<Check>& checks) {
  std::vector<Check> f;
  for (const auto& c : checks)
    if (c.gating && !c.passed()) f.push_back(c);
  return f;
}

}  // namespace hspinor::verify
