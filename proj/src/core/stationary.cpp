#include "core/stationary.hpp"

#include "core/series_ops.hpp"

namespace conelab {

Series stationary_phase(const std::vector<Series>& amplitude, const std::vector<Series>& phase,
                        const std::string& zvar, int order) {
  if (phase.empty()) throw std::invalid_argument("stationary_phase: missing quadratic coefficient");
  const Series& c2 = phase[0];
  if (c2.is_zero()) throw std::domain_error("stationary_phase: degenerate quadratic term");

  // Common coefficient ring.
  VarTable ring = c2.table();
  for (const auto& s : phase) ring = VarTable::unify(ring, s.table());
  for (const auto& s : amplitude) ring = VarTable::unify(ring, s.table());

  int amp_deg = static_cast<int>(amplitude.size());
  int ycap = 6 * order + 2 * amp_deg + 6;
  // Intermediate powers of the phase tail transiently exceed the caller's
  // coefficient windows before the Gaussian moments bring them back; widen
  // the ring for the computation and restrict at the end.
  int widen = 2 * order + amp_deg + 4;
  std::vector<VariableSpec> wide_vars = ring.vars();
  for (auto& v : wide_vars) {
    if (v.group.empty()) {
      v.lo = v.lo < 0 ? v.lo * widen : v.lo;
      v.hi = v.hi > 0 ? v.hi * widen : v.hi;
    } else {
      v.hi *= widen;
    }
  }
  VarTable wide_ring{wide_vars};
  VarTable tab = wide_ring.with_variable(VariableSpec::aux("_sp_y", ycap, "_sp_y"))
                     .with_variable(VariableSpec::loop(zvar, -(3 * order + amp_deg + 3), order));

  Series y = Series::var(tab, "_sp_y");
  Series zinv = Series::var(tab, zvar, -1);

  // tail(y)/z with tail = c3 y^3 + c4 y^4 + ...
  Series tail = Series::zero(tab);
  for (size_t k = 1; k < phase.size(); ++k) {
    if (phase[k].is_zero()) continue;
    tail = tail + phase[k].aligned_to(tab) * series_pow(y, static_cast<long>(k) + 2);
  }
  Series integrand = series_exp(-(tail * zinv));
  if (!amplitude.empty()) {
    Series a = Series::zero(tab);
    for (size_t j = 0; j < amplitude.size(); ++j) {
      if (amplitude[j].is_zero()) continue;
      a = a + amplitude[j].aligned_to(tab) * series_pow(y, static_cast<long>(j));
    }
    integrand = integrand * a;
  }

  // Replace y^{2m} by (2m-1)!! (z/(2c2))^m, drop odd powers.
  Series c2inv = series_invert(c2.aligned_to(tab));
  Series halfvar = c2inv.scaled(Rat(1, 2)) * Series::var(tab, zvar);  // z/(2 c2)
  std::map<int, Series> halfvar_pow;
  auto hv = [&](int m) -> const Series& {
    auto it = halfvar_pow.find(m);
    if (it != halfvar_pow.end()) return it->second;
    return halfvar_pow.emplace(m, series_pow(halfvar, m)).first->second;
  };

  Series out(tab);
  for (const auto& [ypow, part] : integrand.decompose("_sp_y")) {
    if (ypow % 2 == 1) continue;
    int m = ypow / 2;
    Series contrib = part * hv(m).scaled(double_factorial_odd(m));
    out = out + contrib;
  }
  // The answer is a power series in z; negative powers must have canceled.
  Series neg = out.restricted(zvar, -(3 * order + amp_deg + 3), -1);
  if (!neg.is_zero())
    throw std::domain_error("stationary_phase: internal error, negative z powers survive");
  out = out.restricted(zvar, 0, order).dropped("_sp_y");
  VarTable final_tab = ring.with_variable(VariableSpec::loop(zvar, 0, order));
  Series clean(final_tab);
  for (const auto& [m, blk] : out.terms()) {
    Mono nm;
    nm.e.assign(static_cast<size_t>(final_tab.size()), 0);
    for (int i = 0; i < out.table().size(); ++i)
      nm.e[static_cast<size_t>(final_tab.require(out.table().at(i).name))] = m.e[static_cast<size_t>(i)];
    clean.add_coeff(nm, blk[0]);
  }
  return clean;
}

}  // namespace conelab
