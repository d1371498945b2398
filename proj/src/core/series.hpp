#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "core/qmatrix.hpp"
#include "core/rational.hpp"

namespace conelab {

// Variable kinds of the formal series ring.  Jet variables t/tau carry a
// joint total-degree truncation per group; loop variables (z, q, u, w) carry
// a finite Laurent window; Novikov and Planck variables are individually
// windowed (the Novikov window may dip below zero when a formal sqrt(Q)
// symbol is in play); cobordism generators are graded by weight, so their
// group truncation is a weighted total degree.
enum class VarKind { Jet, Loop, Novikov, Planck, Cobordism, Aux };

struct VariableSpec {
  std::string name;
  VarKind kind = VarKind::Aux;
  // Empty group means the variable is truncated individually through
  // [lo, hi].  A nonempty group means exponents are >= 0 and the weighted
  // total degree over the group is capped by the minimum hi of its members.
  std::string group;
  int lo = 0;
  int hi = 0;
  int weight = 1;

  static VariableSpec jet(std::string name, int max_degree, std::string group = "t") {
    return {std::move(name), VarKind::Jet, std::move(group), 0, max_degree, 1};
  }
  static VariableSpec loop(std::string name, int lo, int hi) {
    return {std::move(name), VarKind::Loop, "", lo, hi, 1};
  }
  static VariableSpec novikov(std::string name, int lo, int hi) {
    return {std::move(name), VarKind::Novikov, "", lo, hi, 1};
  }
  static VariableSpec planck(std::string name, int lo, int hi) {
    return {std::move(name), VarKind::Planck, "", lo, hi, 1};
  }
  static VariableSpec cobordism(std::string name, int weight, int cap, std::string group = "s") {
    return {std::move(name), VarKind::Cobordism, std::move(group), 0, cap, weight};
  }
  static VariableSpec aux(std::string name, int max_degree, std::string group = "aux") {
    return {std::move(name), VarKind::Aux, std::move(group), 0, max_degree, 1};
  }

  friend bool operator==(const VariableSpec& a, const VariableSpec& b) {
    return a.name == b.name && a.kind == b.kind && a.group == b.group && a.lo == b.lo &&
           a.hi == b.hi && a.weight == b.weight;
  }
};

// Multi-index aligned with a VarTable's variable order.
struct Mono {
  std::vector<int> e;
  friend bool operator<(const Mono& a, const Mono& b) { return a.e < b.e; }
  friend bool operator==(const Mono& a, const Mono& b) { return a.e == b.e; }
  bool is_zero() const {
    for (int x : e)
      if (x != 0) return false;
    return true;
  }
};

class VarTable {
 public:
  VarTable() = default;
  explicit VarTable(std::vector<VariableSpec> vars);

  int size() const { return static_cast<int>(vars_.size()); }
  const VariableSpec& at(int i) const { return vars_[static_cast<size_t>(i)]; }
  const std::vector<VariableSpec>& vars() const { return vars_; }
  int index_of(const std::string& name) const;          // -1 when absent
  int require(const std::string& name) const;           // throws when absent
  bool has(const std::string& name) const { return index_of(name) >= 0; }

  bool in_region(const Mono& m) const;
  // Weighted degree of m restricted to the given group.
  int group_degree(const Mono& m, const std::string& group) const;
  int group_cap(const std::string& group) const;

  // Union of variables, intersected truncations.  Kind/group/weight of a
  // shared variable must agree.
  static VarTable unify(const VarTable& a, const VarTable& b);
  // Index remap from `from` into this table (every `from` variable must be
  // present here).
  std::vector<int> remap_from(const VarTable& from) const;

  VarTable with_variable(const VariableSpec& v) const;            // add or intersect
  VarTable with_window(const std::string& name, int lo, int hi) const;  // shrink only

  friend bool operator==(const VarTable& a, const VarTable& b) { return a.vars_ == b.vars_; }

 private:
  std::vector<VariableSpec> vars_;
  std::map<std::string, int> index_;
  std::map<std::string, int> group_cap_;
  void rebuild();
};

// Truncated formal series with exact rational coefficients; scalar, vector
// or matrix valued.  Monomials outside the declared truncation region are
// identically zero and are never stored; binary operations unify the
// variable tables and intersect the regions first.
class Series {
 public:
  Series() : rows_(1), cols_(1) {}
  Series(VarTable tab, int rows = 1, int cols = 1)
      : tab_(std::move(tab)), rows_(rows), cols_(cols) {}

  static Series zero(const VarTable& tab, int rows = 1, int cols = 1) {
    return Series(tab, rows, cols);
  }
  static Series constant(const VarTable& tab, const Rat& c);
  static Series constant(const VarTable& tab, const QMatrix& m);
  static Series identity(const VarTable& tab, int n);
  static Series var(const VarTable& tab, const std::string& name, int power = 1);
  static Series monomial(const VarTable& tab, const Mono& m, const Rat& c);

  const VarTable& table() const { return tab_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_scalar_shape() const { return rows_ == 1 && cols_ == 1; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Mono, std::vector<Rat>>& terms() const { return terms_; }

  Rat coeff(const Mono& m, int i = 0, int j = 0) const;
  void set_coeff(const Mono& m, const Rat& c, int i = 0, int j = 0);
  void add_coeff(const Mono& m, const Rat& c, int i = 0, int j = 0);
  void add_block(const Mono& m, const QMatrix& blk);
  QMatrix block(const Mono& m) const;
  QMatrix constant_block() const { Mono m; m.e.assign(static_cast<size_t>(tab_.size()), 0); return block(m); }

  // Re-express on a unified/extended table; drops monomials that left the
  // region (intersection semantics).
  Series aligned_to(const VarTable& tab) const;

  Series operator+(const Series& o) const;
  Series operator-(const Series& o) const;
  Series operator-() const;
  Series operator*(const Series& o) const;  // shape-aware product
  Series scaled(const Rat& c) const;
  friend bool operator==(const Series& a, const Series& b);

  Series transpose() const;
  // Adjoint with respect to a constant metric g:  g^{-1} A^T g.
  Series adjoint(const QMatrix& g) const;
  // Per-monomial linear transformation of coefficient blocks.
  Series map_blocks(int new_rows, int new_cols,
                    const std::function<QMatrix(const QMatrix&)>& f) const;

  Series entry(int i, int j) const;                 // scalar series at (i,j)
  static Series from_entries(const VarTable& tab, int rows, int cols,
                             const std::vector<Series>& entries);  // row-major

  // var ↦ -var  (used for S(-z)).
  Series negate_var(const std::string& name) const;
  // Multiply by var^k (window-truncating shift).
  Series shift_var(const std::string& name, int k) const;
  Series derivative(const std::string& name) const;
  // Coefficient of var^k as a series on the same table (exponent cleared).
  Series coeff_of(const std::string& name, int k) const;
  // Decomposition along one variable.
  std::map<int, Series> decompose(const std::string& name) const;
  // Coefficient of the z^-1 power of a Laurent variable.
  Series residue(const std::string& name) const;
  // Zero out monomials whose exponent of `name` lies outside [lo, hi].
  Series restricted(const std::string& name, int lo, int hi) const;
  // Keep monomials with group degree <= cap.
  Series truncate_group(const std::string& group, int cap) const;
  // Set a variable to zero (drop monomials containing it).
  Series at_zero(const std::string& name) const;
  // Remove a variable from the table; every stored monomial must have
  // exponent zero in it.
  Series dropped(const std::string& name) const;

  int min_group_degree(const std::string& group) const;  // +infinity -> large
  int min_exponent(const std::string& name) const;
  int max_exponent(const std::string& name) const;

  void prune();  // drop explicit zero blocks

 private:
  void check_same_shape(const Series& o) const;
  VarTable tab_;
  int rows_, cols_;
  std::map<Mono, std::vector<Rat>> terms_;
};

// Pretty printer used by tests, reports and the text output format.
std::string to_string(const Series& s);

}  // namespace conelab
