#include "core/series_ops.hpp"

#include <algorithm>

namespace conelab {

int region_nilpotency_bound(const VarTable& tab) {
  long bound = 1;
  std::map<std::string, bool> seen_group;
  for (int i = 0; i < tab.size(); ++i) {
    const auto& v = tab.at(i);
    if (v.group.empty()) {
      bound += static_cast<long>(v.hi) - v.lo + 1;
    } else if (!seen_group[v.group]) {
      seen_group[v.group] = true;
      bound += tab.group_cap(v.group) + 1;
    }
  }
  return static_cast<int>(std::min<long>(bound, 10000));
}

namespace {

// Componentwise minimum of the exponents over all stored monomials.
Mono componentwise_min(const Series& s) {
  Mono m;
  m.e.assign(static_cast<size_t>(s.table().size()), 0);
  bool first = true;
  for (const auto& [mono, blk] : s.terms()) {
    if (first) {
      m = mono;
      first = false;
    } else {
      for (size_t i = 0; i < m.e.size(); ++i) m.e[i] = std::min(m.e[i], mono.e[i]);
    }
  }
  return m;
}

Series shift_mono(const Series& s, const Mono& m, int sign) {
  Series out = s;
  for (int i = 0; i < s.table().size(); ++i) {
    int e = sign * m.e[static_cast<size_t>(i)];
    if (e != 0) out = out.shift_var(s.table().at(i).name, e);
  }
  return out;
}

}  // namespace

namespace {

// (1+N)^{-1} by a terminating geometric sum; N must die within the region.
Series invert_unipotent(const Series& unit) {
  const int n = unit.rows();
  Series nil = unit - Series::identity(unit.table(), n);
  Series acc = Series::identity(unit.table(), n);
  Series powterm = Series::identity(unit.table(), n);
  int bound = region_nilpotency_bound(unit.table());
  for (int k = 1; k <= bound + 1; ++k) {
    powterm = powterm * nil;
    if (powterm.is_zero()) break;
    if (k == bound + 1)
      throw std::domain_error("series_invert: tail not nilpotent within truncation region");
    acc = (k % 2 == 1) ? acc - powterm : acc + powterm;
  }
  return acc;
}

}  // namespace

Series series_invert(const Series& s) {
  if (s.rows() != s.cols()) throw std::invalid_argument("series_invert: non-square shape");
  if (s.is_zero()) throw std::domain_error("series_invert: zero series");
  const int n = s.rows();

  // Invertible block at the zero monomial: s = (1+N) C.
  QMatrix c0 = s.constant_block();
  if (c0.is_invertible()) {
    QMatrix c0i = c0.inverse();
    Series acc = invert_unipotent(s * Series::constant(s.table(), c0i));
    return Series::constant(s.table(), c0i) * acc;
  }

  // Otherwise factor out the componentwise-minimal monomial: s = x^m c (1+N).
  // The shifted computation runs on a transiently widened table so window
  // edges are not clipped, and the result is restricted back at the end.
  Mono lead = componentwise_min(s);
  std::vector<VariableSpec> widened = s.table().vars();
  for (int i = 0; i < s.table().size(); ++i) {
    int li = lead.e[static_cast<size_t>(i)];
    if (li == 0) continue;
    auto& v = widened[static_cast<size_t>(i)];
    if (!v.group.empty())
      throw std::domain_error("series_invert: leading monomial involves a group-truncated variable");
    v.lo -= std::abs(li);
    v.hi += std::abs(li);
  }
  VarTable wide{widened};
  Series sw = s.aligned_to(wide);
  Series shifted = shift_mono(sw, lead, -1);
  QMatrix l0 = shifted.constant_block();
  if (!l0.is_invertible())
    throw std::domain_error("series_invert: leading block not invertible within truncation");
  QMatrix l0i = l0.inverse();
  Series acc = invert_unipotent(shifted * Series::constant(wide, l0i));
  Series inv = Series::constant(wide, l0i) * acc;
  inv = shift_mono(inv, lead, -1);
  return inv.aligned_to(s.table());
}

Series series_pow(const Series& s, long e) {
  if (e == 0) {
    if (s.rows() != s.cols()) throw std::invalid_argument("series_pow: non-square shape");
    return Series::identity(s.table(), s.rows());
  }
  if (e < 0) return series_pow(series_invert(s), -e);
  Series base = s;
  Series acc;
  bool have = false;
  long k = e;
  while (k > 0) {
    if (k & 1) {
      acc = have ? acc * base : base;
      have = true;
    }
    k >>= 1;
    if (k) base = base * base;
  }
  return acc;
}

Series series_exp(const Series& s) {
  if (s.rows() != s.cols()) throw std::invalid_argument("series_exp: non-square shape");
  const int n = s.rows();
  if (n == 1 && !s.constant_block().is_zero())
    throw std::domain_error("series_exp: nonzero constant term");
  Series acc = Series::identity(s.table(), n);
  Series term = Series::identity(s.table(), n);
  int bound = region_nilpotency_bound(s.table());
  for (int k = 1; k <= bound + 1; ++k) {
    term = term * s;
    if (term.is_zero()) break;
    if (k == bound + 1)
      throw std::domain_error("series_exp: argument not nilpotent within truncation region");
    acc = acc + term.scaled(factorial(k).inv());
  }
  return acc;
}

Series series_log(const Series& s) {
  if (s.rows() != s.cols()) throw std::invalid_argument("series_log: non-square shape");
  const int n = s.rows();
  QMatrix c0 = s.constant_block();
  if (!(c0 == QMatrix::identity(n)))
    throw std::domain_error("series_log: constant term must be the identity");
  Series nil = s - Series::identity(s.table(), n);
  Series acc = Series::zero(s.table(), n, n);
  Series term = Series::identity(s.table(), n);
  int bound = region_nilpotency_bound(s.table());
  for (int k = 1; k <= bound + 1; ++k) {
    term = term * nil;
    if (term.is_zero()) break;
    if (k == bound + 1)
      throw std::domain_error("series_log: argument not unipotent within truncation region");
    Rat c = Rat(k).inv();
    if (k % 2 == 0) c = -c;
    acc = acc + term.scaled(c);
  }
  return acc;
}

Series series_subst(const Series& outer, const std::map<std::string, Series>& inner) {
  // Build the output table: outer variables that survive, with windows, plus
  // every inner table.
  std::vector<VariableSpec> kept;
  for (const auto& v : outer.table().vars())
    if (!inner.count(v.name)) kept.push_back(v);
  VarTable out_tab((std::vector<VariableSpec>(kept)));
  for (const auto& [name, s] : inner) {
    if (!s.is_scalar_shape()) throw std::invalid_argument("series_subst: inner series must be scalar");
    if (outer.table().index_of(name) < 0)
      throw std::invalid_argument("series_subst: outer has no variable " + name);
    out_tab = VarTable::unify(out_tab, s.table());
  }

  // Convergence guard: an inner series with a nonzero constant block is only
  // admissible if the outer series is a genuine polynomial in that variable
  // (finitely many stored powers -- always true here) AND the caller opted in
  // by truncation discipline; we reject only the case that can never make
  // sense, an inner constant term substituted into a variable at its cap.
  for (const auto& [name, s] : inner) {
    Series cst = s;
    for (int i = 0; i < s.table().size(); ++i) cst = cst.coeff_of(s.table().at(i).name, 0);
    const auto& v = outer.table().at(outer.table().require(name));
    if (!cst.is_zero() && !v.group.empty()) {
      if (outer.max_exponent(name) >= outer.table().group_cap(v.group))
        throw std::domain_error(
            "series_subst: nonzero constant term substituted into truncated (non-polynomial) "
            "variable " + name);
    }
  }

  // Memoized powers of the inner series (negative powers via inversion).
  std::map<std::string, std::map<int, Series>> powers;
  auto power_of = [&](const std::string& name, int e) -> const Series& {
    auto& slot = powers[name];
    auto it = slot.find(e);
    if (it != slot.end()) return it->second;
    Series base = inner.at(name).aligned_to(out_tab);
    Series val;
    if (e >= 0)
      val = series_pow(base, e);
    else
      val = series_pow(series_invert(base), -e);
    return slot.emplace(e, std::move(val)).first->second;
  };

  Series out(out_tab, outer.rows(), outer.cols());
  const auto& otab = outer.table();
  for (const auto& [m, blk] : outer.terms()) {
    // Split the monomial into the kept part and the substituted part.
    Mono keptm;
    keptm.e.assign(static_cast<size_t>(out_tab.size()), 0);
    Series factor = Series::constant(out_tab, Rat(1));
    bool dead = false;
    for (int i = 0; i < otab.size(); ++i) {
      int e = m.e[static_cast<size_t>(i)];
      if (e == 0) continue;
      const std::string& nm = otab.at(i).name;
      if (inner.count(nm)) {
        factor = factor * power_of(nm, e);
        if (factor.is_zero()) { dead = true; break; }
      } else {
        keptm.e[static_cast<size_t>(out_tab.require(nm))] = e;
      }
    }
    if (dead) continue;
    if (!keptm.is_zero()) factor = factor * Series::monomial(out_tab, keptm, Rat(1));
    if (factor.is_zero()) continue;
    // Multiply by the coefficient block of the outer monomial.
    QMatrix b(outer.rows(), outer.cols());
    for (int i = 0; i < outer.rows(); ++i)
      for (int j = 0; j < outer.cols(); ++j) b(i, j) = blk[static_cast<size_t>(i) * outer.cols() + j];
    for (const auto& [fm, fblk] : factor.terms()) out.add_block(fm, b.scaled(fblk[0]));
  }
  out.prune();
  return out;
}

Series series_reversion(const Series& f, const std::string& var, int order) {
  if (!f.is_scalar_shape()) throw std::invalid_argument("series_reversion: scalar series expected");
  if (f.min_exponent(var) < 1)
    throw std::domain_error("series_reversion: series has terms below degree 1 in " + var);
  Series c1 = f.coeff_of(var, 1);
  if (c1.is_zero()) throw std::domain_error("series_reversion: vanishing linear coefficient");
  Series c1inv = series_invert(c1);

  VarTable tab = f.table();
  Series x = Series::var(tab, var);
  Series g = c1inv.aligned_to(tab) * x;
  for (int n = 2; n <= order; ++n) {
    Series fg = series_subst(f, {{var, g}}).aligned_to(tab);
    Series err = fg.coeff_of(var, n);
    if (err.is_zero()) continue;
    Series corr = (c1inv * err).aligned_to(tab) * Series::var(tab, var, n);
    g = g - corr;
  }
  return g;
}

Series series_scale_var(const Series& s, const std::string& var, const Rat& c) {
  int idx = s.table().require(var);
  Series out(s.table(), s.rows(), s.cols());
  for (const auto& [m, blk] : s.terms()) {
    Rat f = c.pow(m.e[static_cast<size_t>(idx)]);
    auto scaled = blk;
    for (auto& x : scaled) x *= f;
    QMatrix b(s.rows(), s.cols());
    for (int i = 0; i < s.rows(); ++i)
      for (int j = 0; j < s.cols(); ++j) b(i, j) = scaled[static_cast<size_t>(i) * s.cols() + j];
    out.add_block(m, b);
  }
  out.prune();
  return out;
}

Series integrate_gradient(const std::vector<std::string>& vars, const std::vector<Series>& grads) {
  if (vars.empty() || vars.size() != grads.size())
    throw std::invalid_argument("integrate_gradient: bad arguments");
  VarTable tab = grads[0].table();
  for (const auto& g : grads) tab = VarTable::unify(tab, g.table());
  std::vector<int> vidx;
  for (const auto& v : vars) vidx.push_back(tab.require(v));

  Series x(tab, grads[0].rows(), grads[0].cols());
  for (size_t k = 0; k < vars.size(); ++k) {
    Series g = grads[k].aligned_to(tab);
    for (const auto& [m, blk] : g.terms()) {
      int d = 0;
      for (int vi : vidx) d += m.e[static_cast<size_t>(vi)];
      Mono nm = m;
      nm.e[static_cast<size_t>(vidx[k])] += 1;
      if (!tab.in_region(nm)) continue;
      QMatrix b(g.rows(), g.cols());
      for (int i = 0; i < g.rows(); ++i)
        for (int j = 0; j < g.cols(); ++j)
          b(i, j) = blk[static_cast<size_t>(i) * g.cols() + j] * Rat(1, d + 1);
      x.add_block(nm, b);
    }
  }
  x.prune();

  // Re-verify integrability: d/dvar_k X must reproduce the gradient on every
  // monomial whose antiderivative stayed inside the region.
  for (size_t k = 0; k < vars.size(); ++k) {
    Series diff = x.derivative(vars[k]) - grads[k].aligned_to(tab);
    for (const auto& [m, blk] : diff.terms()) {
      Mono up = m;
      up.e[static_cast<size_t>(vidx[k])] += 1;
      if (tab.in_region(up))
        throw std::domain_error("integrate_gradient: gradient is not integrable (mixed partials disagree)");
    }
  }
  return x;
}

}  // namespace conelab
