#include "flatmod/matrix_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace flatmod {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "invalid-input";
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::InvalidClass: return "invalid-class";
    case ErrorCode::InvalidTarget: return "invalid-target";
    case ErrorCode::IllConditioned: return "ill-conditioned";
    case ErrorCode::NotSimilar: return "not-similar";
    case ErrorCode::Capacity: return "capacity";
    case ErrorCode::UnsupportedClass: return "unsupported-class";
    case ErrorCode::UnsupportedTarget: return "unsupported-target";
    case ErrorCode::NoConstruction: return "no-construction";
    case ErrorCode::UnsolvableByTheorem: return "unsolvable-by-theorem";
  }
  return "unknown";
}

void Tolerance::validate() const {
  for (double eps : {rank_eps, match_eps, unit_eps}) {
    if (!(eps > 0.0 && eps < 1.0)) {
      throw Error(ErrorCode::InvalidArgument, "tolerances must lie strictly between 0 and 1");
    }
  }
}

int EigenBlock::multiplicity() const {
  return std::accumulate(partition.begin(), partition.end(), 0);
}

int JordanStructure::size() const {
  int n = 0;
  for (const auto& b : blocks) n += b.multiplicity();
  return n;
}

bool JordanStructure::is_semisimple() const {
  for (const auto& b : blocks) {
    for (int part : b.partition) {
      if (part != 1) return false;
    }
  }
  return true;
}

bool same_eigenvalue(Complex a, Complex b) {
  return std::abs(a - b) <= kClusterEps * std::max(1.0, std::abs(a));
}

void require_finite(const ComplexMatrix& m, const char* what) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const Complex z = m(i, j);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw Error(ErrorCode::InvalidInput, std::string(what) + " has non-finite entries");
      }
    }
  }
}

namespace {

struct Svd {
  Eigen::VectorXd sigma;
  ComplexMatrix u;
  ComplexMatrix v;
};

Svd full_svd(const ComplexMatrix& m) {
  Eigen::BDCSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return {svd.singularValues(), svd.matrixU(), svd.matrixV()};
}

Eigen::VectorXd singular_values(const ComplexMatrix& m) {
  if (m.size() == 0) return {};
  Eigen::BDCSVD<ComplexMatrix> svd(m);
  return svd.singularValues();
}

int count_above(const Eigen::VectorXd& sigma, double cutoff) {
  int r = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > cutoff) ++r;
  }
  return r;
}

// Kernel of m at an absolute cutoff.
ComplexMatrix kernel_at(const ComplexMatrix& m, double cutoff) {
  const int cols = static_cast<int>(m.cols());
  if (m.rows() == 0) return ComplexMatrix::Identity(cols, cols);
  const Svd s = full_svd(m);
  const int r = count_above(s.sigma, cutoff);
  return s.v.rightCols(cols - r);
}

// First `count` left singular vectors: an orthonormal basis for a span
// whose dimension is known in advance.
ComplexMatrix leading_basis(const ComplexMatrix& m, int count) {
  if (count == 0 || m.cols() == 0) return ComplexMatrix(m.rows(), 0);
  const Svd s = full_svd(m);
  return s.u.leftCols(count);
}

ComplexMatrix hcat(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows(), a.cols() + b.cols());
  if (a.cols() > 0) out.leftCols(a.cols()) = a;
  if (b.cols() > 0) out.rightCols(b.cols()) = b;
  return out;
}

struct Cluster {
  std::vector<Complex> members;
  Complex center;
  // bases[k] spans ker (M - center)^(k+1)
  std::vector<ComplexMatrix> chain;

  int multiplicity() const { return static_cast<int>(members.size()); }
  int reached() const { return chain.empty() ? 0 : static_cast<int>(chain.back().cols()); }

  double diameter() const {
    double d = 0.0;
    for (auto a : members) {
      for (auto b : members) d = std::max(d, std::abs(a - b));
    }
    return d;
  }
};

Complex mean(const std::vector<Complex>& zs) {
  Complex s = 0.0;
  for (auto z : zs) s += z;
  return s / static_cast<double>(zs.size());
}

// Kernel chain K_1 ⊂ K_2 ⊂ ... of A = M - c I, computed one multiplication at
// a time: K_k = ker((I - P_{k-1}) A) with P_{k-1} the projector onto K_{k-1}.
std::vector<ComplexMatrix> kernel_chain(const ComplexMatrix& m, Complex c, int limit,
                                        double cutoff) {
  const int n = static_cast<int>(m.rows());
  const ComplexMatrix a = m - c * ComplexMatrix::Identity(n, n);
  std::vector<ComplexMatrix> chain;
  ComplexMatrix z(n, 0);
  int previous = 0;
  while (true) {
    const ComplexMatrix proj = ComplexMatrix::Identity(n, n) - z * z.adjoint();
    ComplexMatrix k = kernel_at(proj * a, cutoff);
    const int d = static_cast<int>(k.cols());
    if (d <= previous) break;
    chain.push_back(k);
    z = k;
    previous = d;
    if (d >= limit) break;
  }
  return chain;
}

bool cluster_resolved(const Cluster& c) { return c.reached() == c.multiplicity(); }

std::vector<Cluster> cluster_spectrum(const ComplexMatrix& m, const Tolerance& tol) {
  const int n = static_cast<int>(m.rows());
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(m, false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::IllConditioned, "eigenvalue iteration did not converge");
  }
  const ComplexVector eig = solver.eigenvalues();
  const double cutoff = tol.rank_eps * operator_norm(m);

  // Single-linkage dendrogram over the computed eigenvalues. Leaves are the
  // groups under the plain identification rule; inner nodes join the two
  // closest groups.
  struct Node {
    std::vector<int> members;
    int left = -1;
    int right = -1;
  };
  std::vector<Node> nodes;
  std::vector<int> owner(n);
  std::iota(owner.begin(), owner.end(), 0);
  auto find = [&](int i) {
    while (owner[i] != i) i = owner[i] = owner[owner[i]];
    return i;
  };
  struct Edge {
    double distance;
    int a, b;
  };
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) edges.push_back({std::abs(eig(i) - eig(j)), i, j});
  }
  std::stable_sort(edges.begin(), edges.end(),
                   [](const Edge& x, const Edge& y) { return x.distance < y.distance; });
  for (const auto& e : edges) {
    if (same_eigenvalue(eig(e.a), eig(e.b))) owner[find(e.a)] = find(e.b);
  }
  std::vector<int> node_of(n, -1);
  for (int i = 0; i < n; ++i) {
    const int r = find(i);
    if (node_of[r] < 0) {
      node_of[r] = static_cast<int>(nodes.size());
      nodes.push_back({});
    }
    nodes[node_of[r]].members.push_back(i);
  }
  std::vector<int> top(nodes.size());
  std::iota(top.begin(), top.end(), 0);
  std::vector<int> group(n);
  for (int i = 0; i < n; ++i) group[i] = node_of[find(i)];
  for (const auto& e : edges) {
    const int ga = group[e.a];
    const int gb = group[e.b];
    if (ga == gb) continue;
    Node joined;
    joined.left = ga;
    joined.right = gb;
    joined.members = nodes[ga].members;
    joined.members.insert(joined.members.end(), nodes[gb].members.begin(), nodes[gb].members.end());
    const int id = static_cast<int>(nodes.size());
    for (int i : joined.members) group[i] = id;
    nodes.push_back(std::move(joined));
  }

  // A defective eigenvalue of multiplicity k is smeared over a disc of radius
  // ~ eps^(1/k), but the centroid of the smeared copies stays accurate. From
  // the root down, accept the largest group whose centroid carries a
  // generalized eigenspace of exactly the group's size.
  std::vector<Cluster> clusters;
  auto resolve = [&](auto&& self, int id) -> void {
    const Node& node = nodes[static_cast<size_t>(id)];
    Cluster c;
    for (int i : node.members) c.members.push_back(eig(i));
    c.center = mean(c.members);
    c.chain = kernel_chain(m, c.center, n, cutoff);
    if (cluster_resolved(c)) {
      clusters.push_back(std::move(c));
      return;
    }
    if (node.left < 0) {
      throw Error(ErrorCode::IllConditioned,
                  "eigenvalue cluster cannot be resolved at the given tolerance", c.diameter());
    }
    self(self, node.left);
    self(self, node.right);
  };
  resolve(resolve, static_cast<int>(nodes.size()) - 1);

  std::sort(clusters.begin(), clusters.end(), [](const Cluster& x, const Cluster& y) {
    if (x.center.real() != y.center.real()) return x.center.real() < y.center.real();
    return x.center.imag() < y.center.imag();
  });
  return clusters;
}

Partition partition_from_chain(const Cluster& c) {
  std::vector<int> d{0};
  for (const auto& k : c.chain) d.push_back(static_cast<int>(k.cols()));
  const int s = static_cast<int>(c.chain.size());
  Partition parts;
  for (int k = s; k >= 1; --k) {
    const int at_least_k = d[k] - d[k - 1];
    const int at_least_k1 = k < s ? d[k + 1] - d[k] : 0;
    for (int i = 0; i < at_least_k - at_least_k1; ++i) parts.push_back(k);
  }
  return parts;
}

void check_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorCode::InvalidInput, std::string(what) + " must be a nonempty square matrix");
  }
  require_finite(m, what);
}

}  // namespace

double operator_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  const auto s = singular_values(m);
  return s.size() > 0 ? s(0) : 0.0;
}

RankKernel rank_and_kernel(const ComplexMatrix& m, const Tolerance& tol, double scale_floor) {
  require_finite(m, "matrix");
  const int cols = static_cast<int>(m.cols());
  if (m.rows() == 0) return {0, ComplexMatrix::Identity(cols, cols)};
  const Svd s = full_svd(m);
  const double top = std::max(s.sigma.size() > 0 ? s.sigma(0) : 0.0, scale_floor);
  const int r = count_above(s.sigma, tol.rank_eps * top);
  return {r, s.v.rightCols(cols - r)};
}

int numeric_rank(const ComplexMatrix& m, double cutoff) {
  return count_above(singular_values(m), cutoff);
}

ComplexMatrix column_space(const ComplexMatrix& m, const Tolerance& tol) {
  if (m.cols() == 0) return ComplexMatrix(m.rows(), 0);
  const Svd s = full_svd(m);
  const double top = s.sigma.size() > 0 ? s.sigma(0) : 0.0;
  return s.u.leftCols(count_above(s.sigma, tol.rank_eps * top));
}

bool is_invertible(const ComplexMatrix& m, const Tolerance& tol) {
  if (m.rows() != m.cols() || m.rows() == 0) return false;
  const auto s = singular_values(m);
  return s(s.size() - 1) > tol.rank_eps * s(0);
}

ComplexMatrix inverse(const ComplexMatrix& m) { return m.partialPivLu().inverse(); }

JordanStructure eigen_and_jordan(const ComplexMatrix& m, const Tolerance& tol) {
  return jordan_decomposition(m, tol).structure;
}

JordanDecomposition jordan_decomposition(const ComplexMatrix& m, const Tolerance& tol) {
  check_square(m, "matrix");
  if (m.rows() > kMaxMatrixSize) {
    throw Error(ErrorCode::Capacity, "matrix size exceeds the dense-routine cap");
  }
  const int n = static_cast<int>(m.rows());
  const auto clusters = cluster_spectrum(m, tol);

  JordanDecomposition out;
  out.basis = ComplexMatrix(n, n);
  int column = 0;
  for (const auto& c : clusters) {
    const Partition parts = partition_from_chain(c);
    out.structure.blocks.push_back({c.center, parts});

    const ComplexMatrix a = m - c.center * ComplexMatrix::Identity(n, n);
    const int s = static_cast<int>(c.chain.size());
    std::vector<int> d{0};
    for (const auto& k : c.chain) d.push_back(static_cast<int>(k.cols()));

    struct Chain {
      ComplexVector top;
      int length;
    };
    std::vector<Chain> chains;
    for (int k = s; k >= 1; --k) {
      const int at_least_k = d[k] - d[k - 1];
      const int at_least_k1 = k < s ? d[k + 1] - d[k] : 0;
      const int fresh = at_least_k - at_least_k1;
      if (fresh == 0) continue;
      // Vectors already sitting at level k: images of longer chains.
      ComplexMatrix existing(n, static_cast<Eigen::Index>(chains.size()));
      for (size_t i = 0; i < chains.size(); ++i) {
        ComplexVector v = chains[i].top;
        for (int step = k; step < chains[i].length; ++step) v = a * v;
        existing.col(static_cast<Eigen::Index>(i)) = v;
      }
      const ComplexMatrix below = k > 1 ? c.chain[k - 2] : ComplexMatrix(n, 0);
      const ComplexMatrix occupied = hcat(below, existing);
      const ComplexMatrix t = leading_basis(occupied, static_cast<int>(occupied.cols()));
      const ComplexMatrix complement =
          (ComplexMatrix::Identity(n, n) - t * t.adjoint()) * c.chain[k - 1];
      const ComplexMatrix tops = leading_basis(complement, fresh);
      for (int i = 0; i < fresh; ++i) chains.push_back({tops.col(i), k});
    }
    for (const auto& ch : chains) {
      std::vector<ComplexVector> cols(ch.length);
      ComplexVector v = ch.top;
      for (int i = ch.length - 1; i >= 0; --i) {
        cols[i] = v;
        v = a * v;
      }
      for (const auto& col : cols) out.basis.col(column++) = col;
    }
  }
  return out;
}

ComplexMatrix jordan_matrix(const JordanStructure& structure) {
  const int n = structure.size();
  ComplexMatrix j = ComplexMatrix::Zero(n, n);
  int at = 0;
  for (const auto& b : structure.blocks) {
    for (int part : b.partition) {
      for (int i = 0; i < part; ++i) {
        j(at + i, at + i) = b.value;
        if (i + 1 < part) j(at + i, at + i + 1) = 1.0;
      }
      at += part;
    }
  }
  return j;
}

bool same_structure(const JordanStructure& a, const JordanStructure& b) {
  if (a.blocks.size() != b.blocks.size()) return false;
  std::vector<bool> used(b.blocks.size(), false);
  for (const auto& x : a.blocks) {
    bool found = false;
    for (size_t i = 0; i < b.blocks.size(); ++i) {
      if (!used[i] && same_eigenvalue(x.value, b.blocks[i].value) &&
          x.partition == b.blocks[i].partition) {
        used[i] = found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

ComplexMatrix similarity_conjugator(const ComplexMatrix& a, const ComplexMatrix& b,
                                    const Tolerance& tol) {
  check_square(a, "A");
  check_square(b, "B");
  if (a.rows() != b.rows()) throw Error(ErrorCode::NotSimilar, "matrices differ in size");
  if (!is_invertible(a, tol) || !is_invertible(b, tol)) {
    throw Error(ErrorCode::InvalidInput, "similarity_conjugator expects invertible matrices");
  }
  const auto da = jordan_decomposition(a, tol);
  const auto db = jordan_decomposition(b, tol);
  if (!same_structure(da.structure, db.structure)) {
    throw Error(ErrorCode::NotSimilar, "Jordan structures differ");
  }
  // Column offsets of each eigenvalue block inside the Jordan bases.
  auto offsets = [](const JordanStructure& s) {
    std::vector<int> off{0};
    for (const auto& blk : s.blocks) off.push_back(off.back() + blk.multiplicity());
    return off;
  };
  const auto off_a = offsets(da.structure);
  const auto off_b = offsets(db.structure);
  const int n = static_cast<int>(a.rows());
  ComplexMatrix pa(n, n);
  std::vector<bool> used(da.structure.blocks.size(), false);
  for (size_t i = 0; i < db.structure.blocks.size(); ++i) {
    const auto& target = db.structure.blocks[i];
    for (size_t j = 0; j < da.structure.blocks.size(); ++j) {
      const auto& source = da.structure.blocks[j];
      if (!used[j] && same_eigenvalue(source.value, target.value) &&
          source.partition == target.partition) {
        used[j] = true;
        const int width = target.multiplicity();
        pa.middleCols(off_b[i], width) = da.basis.middleCols(off_a[j], width);
        break;
      }
    }
  }
  const ComplexMatrix q = db.basis * inverse(pa);
  const double residual = (q * a * inverse(q) - b).norm();
  if (residual > tol.match_eps * b.norm()) {
    throw Error(ErrorCode::IllConditioned, "conjugator residual exceeds match tolerance",
                residual);
  }
  return q;
}

bool is_unipotent(const ComplexMatrix& u, const Tolerance& tol) {
  if (u.rows() != u.cols() || u.rows() == 0) return false;
  const int n = static_cast<int>(u.rows());
  const ComplexMatrix nil = u - ComplexMatrix::Identity(n, n);
  ComplexMatrix power = ComplexMatrix::Identity(n, n);
  for (int k = 0; k < n; ++k) power = power * nil;
  const double scale = std::pow(std::max(1.0, nil.norm()), n);
  return power.norm() <= tol.match_eps * scale;
}

ComplexMatrix unipotent_sqrt(const ComplexMatrix& u, const Tolerance& tol) {
  check_square(u, "U");
  if (!is_unipotent(u, tol)) throw Error(ErrorCode::InvalidInput, "matrix is not unipotent");
  const int n = static_cast<int>(u.rows());
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix nil = u - id;

  ComplexMatrix log_u = ComplexMatrix::Zero(n, n);
  ComplexMatrix power = id;
  for (int k = 1; k < n; ++k) {
    power = power * nil;
    log_u += ((k % 2 == 1) ? 1.0 : -1.0) / k * power;
  }
  const ComplexMatrix half = 0.5 * log_u;
  ComplexMatrix w = id;
  ComplexMatrix term = id;
  for (int k = 1; k < n; ++k) {
    term = term * half / static_cast<double>(k);
    w += term;
  }
  const double residual = (w * w - u).norm();
  if (residual > tol.match_eps * u.norm()) {
    throw Error(ErrorCode::IllConditioned, "unipotent square root residual too large", residual);
  }
  return w;
}

ComplexVector vec(const ComplexMatrix& x) {
  return Eigen::Map<const ComplexVector>(x.data(), x.size());
}

ComplexMatrix unvec(const ComplexVector& v, int n) {
  return Eigen::Map<const ComplexMatrix>(v.data(), n, n);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

double normalized_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff() / std::max(1.0, b.cwiseAbs().maxCoeff());
}

}  // namespace flatmod
