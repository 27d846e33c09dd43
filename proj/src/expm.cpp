#include "landau_berry/expm.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <vector>

namespace landau {
namespace {

double one_norm(const CMatrix& A) {
  return A.size() == 0 ? 0.0 : A.cwiseAbs().colwise().sum().maxCoeff();
}

// Pade numerator/denominator U +- V share the even/odd split; the
// denominator is V - U.
CMatrix pade_solve(const CMatrix& U, const CMatrix& V) {
  return (V - U).partialPivLu().solve(V + U);
}

CMatrix pade_low(const CMatrix& A, int m) {
  static constexpr std::array<double, 4> b3{120.0, 60.0, 12.0, 1.0};
  static constexpr std::array<double, 6> b5{30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
  static constexpr std::array<double, 8> b7{17297280.0, 8648640.0, 1995840.0, 277200.0,
                                            25200.0,    1512.0,    56.0,      1.0};
  static constexpr std::array<double, 10> b9{17643225600.0, 8821612800.0, 2075673600.0,
                                             302702400.0,   30270240.0,   2162160.0,
                                             110880.0,      3960.0,       90.0,
                                             1.0};
  const double* b = m == 3 ? b3.data() : m == 5 ? b5.data() : m == 7 ? b7.data() : b9.data();

  const auto n = A.rows();
  const CMatrix I = CMatrix::Identity(n, n);
  const CMatrix A2 = A * A;
  CMatrix even = b[0] * I;
  CMatrix odd = b[1] * I;
  CMatrix power = I;
  for (int k = 1; 2 * k <= m; ++k) {
    power = power * A2;
    even += b[2 * k] * power;
    odd += b[2 * k + 1] * power;
  }
  return pade_solve(A * odd, even);
}

CMatrix pade13(const CMatrix& A) {
  static constexpr std::array<double, 14> b{
      64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
      1187353796428800.0,  129060195264000.0,   10559470521600.0,
      670442572800.0,      33522128640.0,       1323241920.0,
      40840800.0,          960960.0,            16380.0,
      182.0,               1.0};
  const auto n = A.rows();
  const CMatrix I = CMatrix::Identity(n, n);
  const CMatrix A2 = A * A;
  const CMatrix A4 = A2 * A2;
  const CMatrix A6 = A4 * A2;
  const CMatrix U =
      A * (A6 * (b[13] * A6 + b[11] * A4 + b[9] * A2) + b[7] * A6 + b[5] * A4 +
           b[3] * A2 + b[1] * I);
  const CMatrix V = A6 * (b[12] * A6 + b[10] * A4 + b[8] * A2) + b[6] * A6 + b[4] * A4 +
                    b[2] * A2 + b[0] * I;
  return pade_solve(U, V);
}

struct DisjointSet {
  std::vector<int> parent;
  explicit DisjointSet(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

CMatrix expm(const CMatrix& A) {
  const auto n = A.rows();
  if (n == 0) return A;
  if (n == 1) return CMatrix::Constant(1, 1, std::exp(A(0, 0)));

  static constexpr std::array<double, 4> theta{1.495585217958292e-2, 2.539398330063230e-1,
                                               9.504178996162932e-1, 2.097847961257068e0};
  static constexpr std::array<int, 4> order{3, 5, 7, 9};
  constexpr double theta13 = 5.371920351148152;

  const double norm = one_norm(A);
  for (std::size_t i = 0; i < theta.size(); ++i) {
    if (norm <= theta[i]) return pade_low(A, order[i]);
  }
  int s = 0;
  if (norm > theta13) s = std::max(0, int(std::ceil(std::log2(norm / theta13))));
  CMatrix R = pade13(A / std::ldexp(1.0, s));
  for (int k = 0; k < s; ++k) R = R * R;
  return R;
}

CMatrix expm_blocked(const CMatrix& A) {
  const int n = int(A.rows());
  DisjointSet sets(n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (i != j && A(i, j) != Complex(0.0)) sets.unite(i, j);
    }
  }
  std::vector<std::vector<int>> components(n);
  for (int i = 0; i < n; ++i) components[sets.find(i)].push_back(i);

  CMatrix R = CMatrix::Zero(n, n);
  for (const auto& comp : components) {
    if (comp.empty()) continue;
    if (comp.size() == 1) {
      R(comp[0], comp[0]) = std::exp(A(comp[0], comp[0]));
      continue;
    }
    const Eigen::Map<const Eigen::VectorXi> idx(comp.data(), Eigen::Index(comp.size()));
    R(idx, idx) = expm(A(idx, idx));
  }
  return R;
}

}  // namespace landau
