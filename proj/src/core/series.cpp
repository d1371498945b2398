#include "core/series.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace conelab {

VarTable::VarTable(std::vector<VariableSpec> vars) : vars_(std::move(vars)) {
  for (const auto& v : vars_) {
    if (!v.group.empty()) {
      if (v.lo != 0) throw std::invalid_argument("VarTable: grouped variable must have lo=0");
      if (v.weight < 1) throw std::invalid_argument("VarTable: grouped variable weight must be >=1");
    }
    if (v.lo > v.hi) throw std::invalid_argument("VarTable: empty window for " + v.name);
  }
  // Canonical variable order: tables are equal as sets of specs, and
  // serialization is deterministic.
  std::sort(vars_.begin(), vars_.end(),
            [](const VariableSpec& a, const VariableSpec& b) { return a.name < b.name; });
  rebuild();
}

void VarTable::rebuild() {
  index_.clear();
  group_cap_.clear();
  for (int i = 0; i < size(); ++i) {
    const auto& v = vars_[static_cast<size_t>(i)];
    if (index_.count(v.name)) throw std::invalid_argument("VarTable: duplicate variable " + v.name);
    index_[v.name] = i;
    if (!v.group.empty()) {
      auto it = group_cap_.find(v.group);
      if (it == group_cap_.end())
        group_cap_[v.group] = v.hi;
      else
        it->second = std::min(it->second, v.hi);
    }
  }
}

int VarTable::index_of(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? -1 : it->second;
}

int VarTable::require(const std::string& name) const {
  int i = index_of(name);
  if (i < 0) throw std::invalid_argument("VarTable: unknown variable " + name);
  return i;
}

int VarTable::group_cap(const std::string& group) const {
  auto it = group_cap_.find(group);
  if (it == group_cap_.end()) throw std::invalid_argument("VarTable: unknown group " + group);
  return it->second;
}

int VarTable::group_degree(const Mono& m, const std::string& group) const {
  int d = 0;
  for (int i = 0; i < size(); ++i)
    if (vars_[static_cast<size_t>(i)].group == group) d += vars_[static_cast<size_t>(i)].weight * m.e[static_cast<size_t>(i)];
  return d;
}

bool VarTable::in_region(const Mono& m) const {
  std::map<std::string, int> gdeg;
  for (int i = 0; i < size(); ++i) {
    const auto& v = vars_[static_cast<size_t>(i)];
    int e = m.e[static_cast<size_t>(i)];
    if (v.group.empty()) {
      if (e < v.lo || e > v.hi) return false;
    } else {
      if (e < 0) return false;
      gdeg[v.group] += v.weight * e;
    }
  }
  for (const auto& [g, d] : gdeg)
    if (d > group_cap_.at(g)) return false;
  return true;
}

VarTable VarTable::unify(const VarTable& a, const VarTable& b) {
  std::vector<VariableSpec> out = a.vars_;
  for (const auto& vb : b.vars_) {
    int ia = a.index_of(vb.name);
    if (ia < 0) {
      out.push_back(vb);
      continue;
    }
    auto& va = out[static_cast<size_t>(ia)];
    if (va.kind != vb.kind || va.group != vb.group || va.weight != vb.weight)
      throw std::invalid_argument("VarTable: incompatible specs for variable " + vb.name);
    va.lo = std::max(va.lo, vb.lo);
    va.hi = std::min(va.hi, vb.hi);
    if (va.lo > va.hi) throw std::invalid_argument("VarTable: empty intersected window for " + vb.name);
  }
  return VarTable(std::move(out));
}

std::vector<int> VarTable::remap_from(const VarTable& from) const {
  std::vector<int> r(static_cast<size_t>(from.size()));
  for (int i = 0; i < from.size(); ++i) r[static_cast<size_t>(i)] = require(from.at(i).name);
  return r;
}

VarTable VarTable::with_variable(const VariableSpec& v) const {
  return unify(*this, VarTable({v}));
}

VarTable VarTable::with_window(const std::string& name, int lo, int hi) const {
  std::vector<VariableSpec> out = vars_;
  int i = require(name);
  auto& v = out[static_cast<size_t>(i)];
  v.lo = std::max(v.lo, lo);
  v.hi = std::min(v.hi, hi);
  if (v.lo > v.hi) throw std::invalid_argument("VarTable: empty window for " + name);
  return VarTable(std::move(out));
}

// ---------------------------------------------------------------------------

Series Series::constant(const VarTable& tab, const Rat& c) {
  Series s(tab);
  if (!c.is_zero()) {
    Mono m;
    m.e.assign(static_cast<size_t>(tab.size()), 0);
    s.terms_[m] = {c};
  }
  return s;
}

Series Series::constant(const VarTable& tab, const QMatrix& mat) {
  Series s(tab, mat.rows(), mat.cols());
  Mono m;
  m.e.assign(static_cast<size_t>(tab.size()), 0);
  s.add_block(m, mat);
  return s;
}

Series Series::identity(const VarTable& tab, int n) { return constant(tab, QMatrix::identity(n)); }

Series Series::var(const VarTable& tab, const std::string& name, int power) {
  Series s(tab);
  Mono m;
  m.e.assign(static_cast<size_t>(tab.size()), 0);
  m.e[static_cast<size_t>(tab.require(name))] = power;
  if (tab.in_region(m)) s.terms_[m] = {Rat(1)};
  return s;
}

Series Series::monomial(const VarTable& tab, const Mono& m, const Rat& c) {
  Series s(tab);
  if (!c.is_zero() && tab.in_region(m)) s.terms_[m] = {c};
  return s;
}

Rat Series::coeff(const Mono& m, int i, int j) const {
  auto it = terms_.find(m);
  if (it == terms_.end()) return Rat(0);
  return it->second[static_cast<size_t>(i) * cols_ + j];
}

void Series::set_coeff(const Mono& m, const Rat& c, int i, int j) {
  if (!tab_.in_region(m)) return;
  auto& blk = terms_[m];
  if (blk.empty()) blk.assign(static_cast<size_t>(rows_) * cols_, Rat(0));
  blk[static_cast<size_t>(i) * cols_ + j] = c;
}

void Series::add_coeff(const Mono& m, const Rat& c, int i, int j) {
  if (c.is_zero() || !tab_.in_region(m)) return;
  auto& blk = terms_[m];
  if (blk.empty()) blk.assign(static_cast<size_t>(rows_) * cols_, Rat(0));
  blk[static_cast<size_t>(i) * cols_ + j] += c;
}

void Series::add_block(const Mono& m, const QMatrix& b) {
  if (b.rows() != rows_ || b.cols() != cols_) throw std::invalid_argument("Series: block shape");
  if (!tab_.in_region(m)) return;
  auto& blk = terms_[m];
  if (blk.empty()) blk.assign(static_cast<size_t>(rows_) * cols_, Rat(0));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) blk[static_cast<size_t>(i) * cols_ + j] += b(i, j);
}

QMatrix Series::block(const Mono& m) const {
  QMatrix b(rows_, cols_);
  auto it = terms_.find(m);
  if (it != terms_.end())
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) b(i, j) = it->second[static_cast<size_t>(i) * cols_ + j];
  return b;
}

Series Series::aligned_to(const VarTable& tab) const {
  if (tab == tab_) return *this;
  auto remap = tab.remap_from(tab_);
  Series out(tab, rows_, cols_);
  for (const auto& [m, blk] : terms_) {
    Mono nm;
    nm.e.assign(static_cast<size_t>(tab.size()), 0);
    for (int i = 0; i < tab_.size(); ++i) nm.e[static_cast<size_t>(remap[static_cast<size_t>(i)])] = m.e[static_cast<size_t>(i)];
    if (!tab.in_region(nm)) continue;
    out.terms_[nm] = blk;
  }
  return out;
}

void Series::check_same_shape(const Series& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("Series: shape mismatch");
}

Series Series::operator+(const Series& o) const {
  check_same_shape(o);
  VarTable t = VarTable::unify(tab_, o.tab_);
  Series a = aligned_to(t), b = o.aligned_to(t);
  for (const auto& [m, blk] : b.terms_) {
    auto& dst = a.terms_[m];
    if (dst.empty()) {
      dst = blk;
    } else {
      for (size_t i = 0; i < blk.size(); ++i) dst[i] += blk[i];
    }
  }
  a.prune();
  return a;
}

Series Series::operator-(const Series& o) const { return *this + (-o); }

Series Series::operator-() const {
  Series r = *this;
  for (auto& [m, blk] : r.terms_)
    for (auto& c : blk) c = -c;
  return r;
}

Series Series::scaled(const Rat& c) const {
  Series r(tab_, rows_, cols_);
  if (c.is_zero()) return r;
  r.terms_ = terms_;
  for (auto& [m, blk] : r.terms_)
    for (auto& x : blk) x *= c;
  return r;
}

Series Series::operator*(const Series& o) const {
  VarTable t = VarTable::unify(tab_, o.tab_);
  Series a = aligned_to(t), b = o.aligned_to(t);
  int rr, cc;
  enum class Mode { ScalarLeft, ScalarRight, Matrix } mode;
  if (a.is_scalar_shape()) {
    mode = Mode::ScalarLeft;
    rr = b.rows_;
    cc = b.cols_;
  } else if (b.is_scalar_shape()) {
    mode = Mode::ScalarRight;
    rr = a.rows_;
    cc = a.cols_;
  } else if (a.cols_ == b.rows_) {
    mode = Mode::Matrix;
    rr = a.rows_;
    cc = b.cols_;
  } else {
    throw std::invalid_argument("Series: shape mismatch in product (no declared pairing)");
  }
  Series out(t, rr, cc);
  size_t n = static_cast<size_t>(t.size());
  Mono sum;
  sum.e.resize(n);
  for (const auto& [ma, ba] : a.terms_) {
    for (const auto& [mb, bb] : b.terms_) {
      for (size_t i = 0; i < n; ++i) sum.e[i] = ma.e[i] + mb.e[i];
      if (!t.in_region(sum)) continue;
      auto& dst = out.terms_[sum];
      if (dst.empty()) dst.assign(static_cast<size_t>(rr) * cc, Rat(0));
      switch (mode) {
        case Mode::ScalarLeft: {
          const Rat& s = ba[0];
          for (size_t i = 0; i < bb.size(); ++i) dst[i] += s * bb[i];
          break;
        }
        case Mode::ScalarRight: {
          const Rat& s = bb[0];
          for (size_t i = 0; i < ba.size(); ++i) dst[i] += ba[i] * s;
          break;
        }
        case Mode::Matrix: {
          for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
              const Rat& x = ba[static_cast<size_t>(i) * a.cols_ + k];
              if (x.is_zero()) continue;
              for (int j = 0; j < cc; ++j)
                dst[static_cast<size_t>(i) * cc + j] += x * bb[static_cast<size_t>(k) * cc + j];
            }
          break;
        }
      }
    }
  }
  out.prune();
  return out;
}

bool operator==(const Series& a, const Series& b) {
  if (!(a.tab_ == b.tab_) || a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
  return a.terms_ == b.terms_;
}

Series Series::transpose() const {
  Series r(tab_, cols_, rows_);
  for (const auto& [m, blk] : terms_) {
    auto& dst = r.terms_[m];
    dst.assign(blk.size(), Rat(0));
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) dst[static_cast<size_t>(j) * rows_ + i] = blk[static_cast<size_t>(i) * cols_ + j];
  }
  return r;
}

Series Series::adjoint(const QMatrix& g) const {
  QMatrix gi = g.inverse();
  return map_blocks(cols_, rows_, [&](const QMatrix& b) { return gi * b.transpose() * g; });
}

Series Series::map_blocks(int new_rows, int new_cols,
                          const std::function<QMatrix(const QMatrix&)>& f) const {
  Series r(tab_, new_rows, new_cols);
  for (const auto& [m, blk] : terms_) {
    QMatrix b(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) b(i, j) = blk[static_cast<size_t>(i) * cols_ + j];
    r.add_block(m, f(b));
  }
  r.prune();
  return r;
}

Series Series::entry(int i, int j) const {
  Series r(tab_, 1, 1);
  for (const auto& [m, blk] : terms_) {
    const Rat& c = blk[static_cast<size_t>(i) * cols_ + j];
    if (!c.is_zero()) r.terms_[m] = {c};
  }
  return r;
}

Series Series::from_entries(const VarTable& tab, int rows, int cols,
                            const std::vector<Series>& entries) {
  if (static_cast<int>(entries.size()) != rows * cols)
    throw std::invalid_argument("Series: wrong entry count");
  Series r(tab, rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      Series e = entries[static_cast<size_t>(i) * cols + j].aligned_to(tab);
      for (const auto& [m, blk] : e.terms_) r.add_coeff(m, blk[0], i, j);
    }
  r.prune();
  return r;
}

Series Series::negate_var(const std::string& name) const {
  int idx = tab_.require(name);
  Series r(tab_, rows_, cols_);
  for (const auto& [m, blk] : terms_) {
    if (m.e[static_cast<size_t>(idx)] % 2 == 0) {
      r.terms_[m] = blk;
    } else {
      auto neg = blk;
      for (auto& c : neg) c = -c;
      r.terms_[m] = std::move(neg);
    }
  }
  return r;
}

Series Series::shift_var(const std::string& name, int k) const {
  int idx = tab_.require(name);
  Series r(tab_, rows_, cols_);
  for (const auto& [m, blk] : terms_) {
    Mono nm = m;
    nm.e[static_cast<size_t>(idx)] += k;
    if (tab_.in_region(nm)) r.terms_[nm] = blk;
  }
  return r;
}

Series Series::derivative(const std::string& name) const {
  int idx = tab_.require(name);
  Series r(tab_, rows_, cols_);
  for (const auto& [m, blk] : terms_) {
    int e = m.e[static_cast<size_t>(idx)];
    if (e == 0) continue;
    Mono nm = m;
    nm.e[static_cast<size_t>(idx)] = e - 1;
    if (!tab_.in_region(nm)) continue;
    auto d = blk;
    for (auto& c : d) c *= Rat(e);
    auto& dst = r.terms_[nm];
    if (dst.empty())
      dst = std::move(d);
    else
      for (size_t i = 0; i < d.size(); ++i) dst[i] += d[i];
  }
  r.prune();
  return r;
}

Series Series::coeff_of(const std::string& name, int k) const {
  int idx = tab_.require(name);
  Series r(tab_, rows_, cols_);
  for (const auto& [m, blk] : terms_) {
    if (m.e[static_cast<size_t>(idx)] != k) continue;
    Mono nm = m;
    nm.e[static_cast<size_t>(idx)] = 0;
    r.terms_[nm] = blk;
  }
  return r;
}

std::map<int, Series> Series::decompose(const std::string& name) const {
  int idx = tab_.require(name);
  std::map<int, Series> out;
  for (const auto& [m, blk] : terms_) {
    int k = m.e[static_cast<size_t>(idx)];
    auto it = out.find(k);
    if (it == out.end()) it = out.emplace(k, Series(tab_, rows_, cols_)).first;
    Mono nm = m;
    nm.e[static_cast<size_t>(idx)] = 0;
    it->second.terms_[nm] = blk;
  }
  return out;
}

Series Series::residue(const std::string& name) const {
  int idx = tab_.require(name);
  if (tab_.at(idx).lo >= 0)
    throw std::invalid_argument("Series: residue in non-Laurent variable " + name);
  return coeff_of(name, -1);
}

Series Series::restricted(const std::string& name, int lo, int hi) const {
  int idx = tab_.require(name);
  Series r(tab_, rows_, cols_);
  for (const auto& [m, blk] : terms_) {
    int e = m.e[static_cast<size_t>(idx)];
    if (e < lo || e > hi) continue;
    r.terms_[m] = blk;
  }
  return r;
}

Series Series::truncate_group(const std::string& group, int cap) const {
  Series r(tab_, rows_, cols_);
  for (const auto& [m, blk] : terms_) {
    if (tab_.group_degree(m, group) > cap) continue;
    r.terms_[m] = blk;
  }
  return r;
}

Series Series::at_zero(const std::string& name) const {
  int idx = tab_.require(name);
  Series r(tab_, rows_, cols_);
  for (const auto& [m, blk] : terms_) {
    if (m.e[static_cast<size_t>(idx)] != 0) continue;
    r.terms_[m] = blk;
  }
  return r;
}

Series Series::dropped(const std::string& name) const {
  int idx = tab_.require(name);
  std::vector<VariableSpec> vars;
  for (int i = 0; i < tab_.size(); ++i)
    if (i != idx) vars.push_back(tab_.at(i));
  Series r(VarTable(std::move(vars)), rows_, cols_);
  for (const auto& [m, blk] : terms_) {
    if (m.e[static_cast<size_t>(idx)] != 0)
      throw std::invalid_argument("Series: dropped() with live exponents in " + name);
    Mono nm;
    nm.e.reserve(m.e.size() - 1);
    for (int i = 0; i < tab_.size(); ++i)
      if (i != idx) nm.e.push_back(m.e[static_cast<size_t>(i)]);
    r.terms_[nm] = blk;
  }
  return r;
}

int Series::min_group_degree(const std::string& group) const {
  int best = std::numeric_limits<int>::max();
  for (const auto& [m, blk] : terms_) best = std::min(best, tab_.group_degree(m, group));
  return best;
}

int Series::min_exponent(const std::string& name) const {
  int idx = tab_.require(name);
  int best = std::numeric_limits<int>::max();
  for (const auto& [m, blk] : terms_) best = std::min(best, m.e[static_cast<size_t>(idx)]);
  return best;
}

int Series::max_exponent(const std::string& name) const {
  int idx = tab_.require(name);
  int best = std::numeric_limits<int>::min();
  for (const auto& [m, blk] : terms_) best = std::max(best, m.e[static_cast<size_t>(idx)]);
  return best;
}

void Series::prune() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    bool all_zero = true;
    for (const auto& c : it->second)
      if (!c.is_zero()) { all_zero = false; break; }
    it = all_zero ? terms_.erase(it) : std::next(it);
  }
}

std::string to_string(const Series& s) {
  std::ostringstream os;
  if (s.is_zero()) return "0";
  bool first = true;
  for (const auto& [m, blk] : s.terms()) {
    if (!first) os << " + ";
    first = false;
    if (s.is_scalar_shape()) {
      os << s.coeff(m).str();
    } else {
      os << "[";
      for (int i = 0; i < s.rows(); ++i) {
        if (i) os << "; ";
        for (int j = 0; j < s.cols(); ++j) {
          if (j) os << ",";
          os << s.coeff(m, i, j).str();
        }
      }
      os << "]";
    }
    for (int i = 0; i < s.table().size(); ++i) {
      int e = m.e[static_cast<size_t>(i)];
      if (e == 0) continue;
      os << "*" << s.table().at(i).name;
      if (e != 1) os << "^" << e;
    }
  }
  return os.str();
}

}  // namespace conelab
