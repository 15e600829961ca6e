#include "flatmod/conjugacy_classes.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include <Eigen/SVD>

namespace flatmod {

std::string family_name(Family f) {
  switch (f) {
    case Family::GL: return "GL";
    case Family::SL: return "SL";
    case Family::SO_even: return "SO_even";
    case Family::SO_odd: return "SO_odd";
    case Family::Sp: return "Sp";
  }
  return "?";
}

Family family_from_name(const std::string& name) {
  if (name == "GL") return Family::GL;
  if (name == "SL") return Family::SL;
  if (name == "SO_even") return Family::SO_even;
  if (name == "SO_odd") return Family::SO_odd;
  if (name == "Sp") return Family::Sp;
  throw Error(ErrorCode::InvalidInput, "unknown group family '" + name + "'");
}

void GroupKind::validate() const {
  if (size < 1) throw Error(ErrorCode::InvalidArgument, "group size must be positive");
  const bool even = size % 2 == 0;
  if ((family == Family::Sp || family == Family::SO_even) && !even) {
    throw Error(ErrorCode::InvalidArgument, family_name(family) + " needs an even size");
  }
  if (family == Family::SO_odd && even) {
    throw Error(ErrorCode::InvalidArgument, "SO_odd needs an odd size");
  }
}

bool GroupKind::is_classical() const {
  return family == Family::SO_even || family == Family::SO_odd || family == Family::Sp;
}

int GroupKind::rank() const { return is_classical() ? size / 2 : size; }

int GroupKind::ambient_dim() const {
  return is_classical() ? group_dim(*this) : size * size;
}

int group_dim(const GroupKind& g) {
  const int m = g.size;
  switch (g.family) {
    case Family::GL: return m * m;
    case Family::SL: return m * m - 1;
    case Family::SO_even:
    case Family::SO_odd: return m * (m - 1) / 2;
    case Family::Sp: return (m / 2) * (m + 1);
  }
  return 0;
}

namespace {

bool is_plus_one(Complex z) { return same_eigenvalue(z, 1.0); }
bool is_minus_one(Complex z) { return same_eigenvalue(z, -1.0); }
bool is_sign(Complex z) { return is_plus_one(z) || is_minus_one(z); }

std::map<int, int> part_counts(const Partition& p) {
  std::map<int, int> counts;
  for (int part : p) ++counts[part];
  return counts;
}

// Index of the entry holding lambda^{-1} with the same partition, or -1.
int partner_of(const ClassSpec& spec, size_t i) {
  const auto& e = spec.eigs[i];
  for (size_t j = 0; j < spec.eigs.size(); ++j) {
    if (j == i) continue;
    if (same_eigenvalue(spec.eigs[j].value, 1.0 / e.value) &&
        spec.eigs[j].partition == e.partition) {
      return static_cast<int>(j);
    }
  }
  return -1;
}

void require_classical(const ClassSpec& spec) {
  if (!spec.group.is_classical()) {
    throw Error(ErrorCode::InvalidArgument, "operation needs an SO or Sp class");
  }
}

void require_linear(const ClassSpec& spec) {
  if (spec.group.is_classical()) {
    throw Error(ErrorCode::InvalidArgument, "operation needs a GL or SL class");
  }
}

int sum_of_min(const Partition& p) {
  int s = 0;
  for (int a : p) {
    for (int b : p) s += std::min(a, b);
  }
  return s;
}

int sum_of_dual_squares(const Partition& p) {
  int s = 0;
  for (int d : dual_partition(p)) s += d * d;
  return s;
}

int odd_parts(const Partition& p) {
  return static_cast<int>(std::count_if(p.begin(), p.end(), [](int x) { return x % 2 == 1; }));
}

}  // namespace

std::vector<Complex> ClassSpec::expanded() const {
  std::vector<Complex> out;
  for (const auto& e : eigs) out.insert(out.end(), e.multiplicity(), e.value);
  return out;
}

bool ClassSpec::is_semisimple() const { return structure().is_semisimple(); }

void ClassSpec::validate(const Tolerance& tol) const {
  try {
    group.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::InvalidClass, e.what());
  }
  if (eigs.empty()) throw Error(ErrorCode::InvalidClass, "class has no eigenvalues");
  int total = 0;
  for (size_t i = 0; i < eigs.size(); ++i) {
    const auto& e = eigs[i];
    if (!std::isfinite(e.value.real()) || !std::isfinite(e.value.imag()) ||
        std::abs(e.value) == 0.0) {
      throw Error(ErrorCode::InvalidClass, "eigenvalues must be finite and nonzero");
    }
    if (e.partition.empty()) throw Error(ErrorCode::InvalidClass, "empty partition");
    for (size_t k = 0; k < e.partition.size(); ++k) {
      if (e.partition[k] < 1 || (k > 0 && e.partition[k] > e.partition[k - 1])) {
        throw Error(ErrorCode::InvalidClass,
                    "partitions must be weakly decreasing positive integers");
      }
    }
    for (size_t j = 0; j < i; ++j) {
      if (same_eigenvalue(eigs[j].value, e.value)) {
        throw Error(ErrorCode::InvalidClass, "eigenvalues must be listed once each");
      }
    }
    total += e.multiplicity();
  }
  if (total != group.size) {
    throw Error(ErrorCode::InvalidClass, "partition parts do not sum to the matrix size");
  }
  if (group.family == Family::SL) {
    Complex prod = 1.0;
    for (auto z : expanded()) prod *= z;
    if (std::abs(prod - 1.0) > tol.unit_eps) {
      throw Error(ErrorCode::InvalidClass, "SL class eigenvalues must multiply to 1",
                  std::abs(prod - 1.0));
    }
  }
  if (!group.is_classical()) return;

  int mult_plus = 0;
  int mult_minus = 0;
  for (size_t i = 0; i < eigs.size(); ++i) {
    const auto& e = eigs[i];
    if (is_sign(e.value)) {
      (is_plus_one(e.value) ? mult_plus : mult_minus) += e.multiplicity();
      // Jordan types that exist in the group: Sp needs odd parts, SO even
      // parts, to come in pairs.
      const int forbidden_parity = group.family == Family::Sp ? 1 : 0;
      for (auto [part, count] : part_counts(e.partition)) {
        if (part % 2 == forbidden_parity && count % 2 != 0) {
          throw Error(ErrorCode::InvalidClass,
                      "Jordan type at +-1 does not occur in " + family_name(group.family));
        }
      }
      continue;
    }
    if (partner_of(*this, i) < 0) {
      throw Error(ErrorCode::InvalidClass,
                  "eigenvalue lacks an inverse partner with the same partition");
    }
  }
  if (group.family == Family::SO_odd && mult_plus % 2 == 0) {
    throw Error(ErrorCode::InvalidClass, "SO_odd class needs odd multiplicity of eigenvalue 1");
  }
  if (group.family != Family::Sp && mult_minus % 2 != 0) {
    throw Error(ErrorCode::InvalidClass, "SO class needs even multiplicity of eigenvalue -1");
  }
}

ClassSpec class_of(const ComplexMatrix& m, GroupKind group, const Tolerance& tol) {
  ClassSpec spec{group, eigen_and_jordan(m, tol).blocks};
  spec.validate(tol);
  return spec;
}

PropertyPVerdict property_p_sl(const ClassSpec& spec, const Tolerance& tol) {
  require_linear(spec);
  const auto values = spec.expanded();
  const int n = static_cast<int>(values.size());
  if (n > kSubsetCap) throw Error(ErrorCode::Capacity, "subset enumeration capped at n = 16");

  PropertyPVerdict out;
  out.min_residual = std::numeric_limits<double>::infinity();
  const unsigned full = (1u << n) - 1u;
  std::vector<Complex> product(static_cast<size_t>(full) + 1u);
  product[0] = 1.0;
  unsigned best = 0;
  for (unsigned mask = 1; mask < full; ++mask) {
    const int low = std::countr_zero(mask);
    product[mask] = product[mask & (mask - 1u)] * values[low];
    const double r = std::abs(product[mask] - 1.0);
    if (r < out.min_residual) {
      out.min_residual = r;
      best = mask;
    }
  }
  out.verdict = !(out.min_residual <= tol.unit_eps);
  if (!out.verdict) {
    std::vector<int> witness;
    for (int i = 0; i < n; ++i) {
      if (best & (1u << i)) witness.push_back(i + 1);
    }
    out.witness = witness;
  }
  return out;
}

std::vector<Complex> paired_eigenvalues(const ClassSpec& spec) {
  require_classical(spec);
  std::vector<Complex> out;
  std::vector<bool> seen(spec.eigs.size(), false);
  bool dropped_forced_one = spec.group.family != Family::SO_odd;
  for (size_t i = 0; i < spec.eigs.size(); ++i) {
    if (seen[i]) continue;
    const auto& e = spec.eigs[i];
    seen[i] = true;
    if (is_sign(e.value)) {
      int count = e.multiplicity();
      if (is_plus_one(e.value) && !dropped_forced_one) {
        --count;
        dropped_forced_one = true;
      }
      out.insert(out.end(), count / 2, e.value);
      continue;
    }
    const int j = partner_of(spec, i);
    if (j < 0) {
      throw Error(ErrorCode::InvalidClass, "eigenvalue lacks an inverse partner");
    }
    seen[j] = true;
    out.insert(out.end(), e.multiplicity(), e.value);
  }
  return out;
}

ClassicalVerdict property_p_classical(const ClassSpec& spec, const Tolerance& tol) {
  require_classical(spec);
  spec.validate(tol);
  ClassicalVerdict out;
  out.paired = paired_eigenvalues(spec);
  const int n = static_cast<int>(out.paired.size());
  if (n > kSignedCap) throw Error(ErrorCode::Capacity, "signed enumeration capped at n = 10");

  long total = 1;
  for (int i = 0; i < n; ++i) total *= 3;
  out.min_residual = std::numeric_limits<double>::infinity();
  long best = 0;
  // Base-3 digits: 0 absent, 1 exponent +1, 2 exponent -1.
  for (long code = 1; code < total; ++code) {
    Complex prod = 1.0;
    long c = code;
    for (int i = 0; i < n; ++i, c /= 3) {
      const long digit = c % 3;
      if (digit == 1) prod *= out.paired[i];
      if (digit == 2) prod /= out.paired[i];
    }
    const double r = std::abs(prod - 1.0);
    if (r < out.min_residual) {
      out.min_residual = r;
      best = code;
    }
  }
  out.verdict = !(out.min_residual <= tol.unit_eps);
  if (!out.verdict) {
    std::vector<SignedFactor> witness;
    long c = best;
    for (int i = 0; i < n; ++i, c /= 3) {
      if (c % 3 != 0) witness.push_back({i + 1, c % 3 == 1 ? 1 : -1});
    }
    out.witness = witness;
  }
  return out;
}

bool has_property_p(const ClassSpec& spec, const Tolerance& tol) {
  return spec.group.is_classical() ? property_p_classical(spec, tol).verdict
                                   : property_p_sl(spec, tol).verdict;
}

ComplexMatrix wedge_power(const ComplexMatrix& m, int degree) {
  const int n = static_cast<int>(m.rows());
  std::vector<std::vector<int>> subsets;
  std::vector<int> current;
  auto build = [&](auto&& self, int start) -> void {
    if (static_cast<int>(current.size()) == degree) {
      subsets.push_back(current);
      return;
    }
    for (int i = start; i < n; ++i) {
      current.push_back(i);
      self(self, i + 1);
      current.pop_back();
    }
  };
  build(build, 0);
  const auto count = static_cast<Eigen::Index>(subsets.size());
  ComplexMatrix out(count, count);
  ComplexMatrix minor(degree, degree);
  for (Eigen::Index r = 0; r < count; ++r) {
    for (Eigen::Index c = 0; c < count; ++c) {
      if (degree == 0) {
        out(r, c) = 1.0;
        continue;
      }
      for (int a = 0; a < degree; ++a) {
        for (int b = 0; b < degree; ++b) minor(a, b) = m(subsets[r][a], subsets[c][b]);
      }
      out(r, c) = minor.determinant();
    }
  }
  return out;
}

bool property_p_via_wedge(const ComplexMatrix& m, const Tolerance& tol) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::InvalidInput, "matrix must be square");
  require_finite(m, "matrix");
  const int n = static_cast<int>(m.rows());
  if (n > kWedgeCap) throw Error(ErrorCode::Capacity, "wedge decider capped at n = 10");
  for (int degree = 1; degree < n; ++degree) {
    const ComplexMatrix w = wedge_power(m, degree);
    const ComplexMatrix shifted = w - ComplexMatrix::Identity(w.rows(), w.cols());
    Eigen::BDCSVD<ComplexMatrix> svd(shifted);
    const auto& sigma = svd.singularValues();
    if (sigma(sigma.size() - 1) <= tol.unit_eps) return false;
  }
  return true;
}

FixedSpaceDims fixed_space_dims(const ClassSpec& spec, const Tolerance& tol) {
  const auto values = spec.expanded();
  const int r = static_cast<int>(values.size());
  if (r > kFixedSpaceCap) throw Error(ErrorCode::Capacity, "fixed-space count capped at 20");
  FixedSpaceDims out;
  const size_t count = size_t{1} << r;
  std::vector<Complex> product(count);
  product[0] = 1.0;
  out.semisimple_fixed = 1;
  for (size_t mask = 1; mask < count; ++mask) {
    const int low = std::countr_zero(mask);
    product[mask] = product[mask & (mask - 1)] * values[low];
    if (std::abs(product[mask] - 1.0) <= tol.unit_eps) ++out.semisimple_fixed;
  }
  // Zero-weight wedge vectors of the maximal torus. GL: only the empty
  // wedge. SL: empty and top degree. SO/Sp weights +-e_i: each pair in or
  // out together; SO_odd adds the zero weight.
  const int rank = spec.group.rank();
  switch (spec.group.family) {
    case Family::GL: out.torus_fixed = 1; break;
    case Family::SL: out.torus_fixed = 2; break;
    case Family::Sp:
    case Family::SO_even: out.torus_fixed = 1L << rank; break;
    case Family::SO_odd: out.torus_fixed = 1L << (rank + 1); break;
  }
  return out;
}

int centralizer_dim(const ClassSpec& spec) {
  int dim = 0;
  if (!spec.group.is_classical()) {
    for (const auto& e : spec.eigs) dim += sum_of_min(e.partition);
    return dim;
  }
  std::vector<bool> seen(spec.eigs.size(), false);
  const bool symplectic = spec.group.family == Family::Sp;
  for (size_t i = 0; i < spec.eigs.size(); ++i) {
    if (seen[i]) continue;
    seen[i] = true;
    const auto& p = spec.eigs[i].partition;
    if (is_sign(spec.eigs[i].value)) {
      const int sq = sum_of_dual_squares(p);
      const int odd = odd_parts(p);
      dim += symplectic ? (sq + odd) / 2 : (sq - odd) / 2;
    } else {
      const int j = partner_of(spec, i);
      if (j >= 0) seen[j] = true;
      dim += sum_of_min(p);
    }
  }
  return dim;
}

int class_dim(const ClassSpec& spec) {
  return spec.group.ambient_dim() - centralizer_dim(spec);
}

std::vector<Partition> partitions_of(int n) {
  std::vector<Partition> out;
  Partition current;
  auto build = [&](auto&& self, int remaining, int cap) -> void {
    if (remaining == 0) {
      out.push_back(current);
      return;
    }
    for (int part = std::min(remaining, cap); part >= 1; --part) {
      current.push_back(part);
      self(self, remaining - part, part);
      current.pop_back();
    }
  };
  build(build, n, n);
  return out;
}

bool dominates(const Partition& a, const Partition& b) {
  const int sa = std::accumulate(a.begin(), a.end(), 0);
  const int sb = std::accumulate(b.begin(), b.end(), 0);
  if (sa != sb) return false;
  int pa = 0;
  int pb = 0;
  const size_t len = std::max(a.size(), b.size());
  for (size_t k = 0; k < len; ++k) {
    pa += k < a.size() ? a[k] : 0;
    pb += k < b.size() ? b[k] : 0;
    if (pa < pb) return false;
  }
  return true;
}

Partition dual_partition(const Partition& p) {
  Partition out;
  if (p.empty()) return out;
  for (int k = 1; k <= p.front(); ++k) {
    out.push_back(static_cast<int>(std::count_if(p.begin(), p.end(), [k](int x) { return x >= k; })));
  }
  return out;
}

std::vector<ClassSpec> boundary_classes(const ClassSpec& spec) {
  require_linear(spec);
  std::vector<std::vector<Partition>> options;
  for (const auto& e : spec.eigs) {
    std::vector<Partition> below;
    for (const auto& q : partitions_of(e.multiplicity())) {
      if (dominates(e.partition, q)) below.push_back(q);
    }
    options.push_back(std::move(below));
  }
  std::vector<ClassSpec> out;
  std::vector<size_t> pick(options.size(), 0);
  while (true) {
    ClassSpec c{spec.group, {}};
    bool changed = false;
    for (size_t i = 0; i < options.size(); ++i) {
      c.eigs.push_back({spec.eigs[i].value, options[i][pick[i]]});
      changed = changed || options[i][pick[i]] != spec.eigs[i].partition;
    }
    if (changed) out.push_back(std::move(c));
    size_t i = 0;
    while (i < pick.size() && ++pick[i] == options[i].size()) pick[i++] = 0;
    if (i == pick.size()) break;
  }
  return out;
}

namespace {

// Regular nilpotent of the classical Lie algebra on a block of size m with
// antidiagonal form: superdiagonal +1 on the first half, -1 after.
ComplexMatrix regular_classical_nilpotent(int m) {
  ComplexMatrix nil = ComplexMatrix::Zero(m, m);
  for (int k = 0; k + 1 < m; ++k) nil(k, k + 1) = (k <= (m - 2) / 2) ? 1.0 : -1.0;
  return nil;
}

ComplexMatrix exp_nilpotent(const ComplexMatrix& nil) {
  const auto m = nil.rows();
  ComplexMatrix out = ComplexMatrix::Identity(m, m);
  ComplexMatrix term = out;
  for (Eigen::Index k = 1; k < m; ++k) {
    term = term * nil / static_cast<double>(k);
    out += term;
  }
  return out;
}

ComplexMatrix antidiagonal_ones(int k) {
  ComplexMatrix s = ComplexMatrix::Zero(k, k);
  for (int i = 0; i < k; ++i) s(i, k - 1 - i) = 1.0;
  return s;
}

ComplexMatrix classical_representative(const ClassSpec& spec) {
  const int m = spec.group.size;
  struct SelfDual {
    Complex sign;
    int size;
  };
  std::vector<EigenBlock> levi;  // Jordan blocks placed on the first half
  std::vector<SelfDual> self_dual;

  std::vector<bool> seen(spec.eigs.size(), false);
  for (size_t i = 0; i < spec.eigs.size(); ++i) {
    if (seen[i]) continue;
    seen[i] = true;
    const auto& e = spec.eigs[i];
    if (!is_sign(e.value)) {
      const int j = partner_of(spec, i);
      if (j >= 0) seen[j] = true;
      levi.push_back(e);
      continue;
    }
    const Complex sign = is_plus_one(e.value) ? 1.0 : -1.0;
    Partition paired;
    for (auto [part, count] : part_counts(e.partition)) {
      paired.insert(paired.end(), count / 2, part);
      if (count % 2 == 1) self_dual.push_back({sign, part});
    }
    std::sort(paired.rbegin(), paired.rend());
    if (!paired.empty()) levi.push_back({sign, paired});
  }

  if (spec.group.family == Family::SO_even && !self_dual.empty()) {
    throw Error(ErrorCode::UnsupportedClass,
                "SO_even class with an unpaired odd Jordan block at +-1 is not constructed");
  }
  if (spec.group.family == Family::SO_odd && self_dual.size() != 1) {
    throw Error(ErrorCode::UnsupportedClass,
                "SO_odd class needs exactly one unpaired odd Jordan block at +-1");
  }

  ComplexMatrix a = ComplexMatrix::Zero(m, m);
  int left = 0;
  int right = m - 1;
  auto place = [&](const ComplexMatrix& local, const std::vector<int>& pos) {
    for (size_t r = 0; r < pos.size(); ++r) {
      for (size_t c = 0; c < pos.size(); ++c) {
        a(pos[r], pos[c]) = local(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
      }
    }
  };

  if (!levi.empty()) {
    const ComplexMatrix x = jordan_matrix({levi});
    const int k = static_cast<int>(x.rows());
    const ComplexMatrix s = antidiagonal_ones(k);
    const ComplexMatrix y = s * inverse(x).transpose() * s;
    std::vector<int> lpos(k);
    std::vector<int> rpos(k);
    for (int i = 0; i < k; ++i) {
      lpos[i] = left + i;
      rpos[i] = right - k + 1 + i;
    }
    place(x, lpos);
    place(y, rpos);
    left += k;
    right -= k;
  }
  for (const auto& block : self_dual) {
    const int h = block.size / 2;
    std::vector<int> pos;
    for (int i = 0; i < h; ++i) pos.push_back(left + i);
    if (block.size % 2 == 1) pos.push_back(m / 2);
    for (int i = 0; i < h; ++i) pos.push_back(right - h + 1 + i);
    place(block.sign * exp_nilpotent(regular_classical_nilpotent(block.size)), pos);
    left += h;
    right -= h;
  }
  return a;
}

}  // namespace

ComplexMatrix representative(const ClassSpec& spec, const Tolerance& tol) {
  spec.validate(tol);
  if (!spec.group.is_classical()) return jordan_matrix(spec.structure());
  return classical_representative(spec);
}

}  // namespace flatmod
