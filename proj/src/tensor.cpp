#include "vtlab/tensor.hpp"

#include <Eigen/Dense>
#include <random>
#include <vector>

namespace vtlab {

Tensor2 zero_tensor2(int n, Basis b) {
    Tensor2 t;
    t.n = n;
    t.basis = b;
    t.c = zero_mat<double>();
    return t;
}

Tensor4 zero_tensor4(int n, Basis b) {
    Tensor4 t;
    t.n = n;
    t.basis = b;
    for (auto& a : t.c) a = zero_arr3<double>();
    return t;
}

int pair_index(int i, int j) {
    // (0,1) (0,2) (0,3) (1,2) (1,3) (2,3)
    static constexpr int table[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
    return table[i][j];
}

int triple_index(int i, int j, int k) {
    // the missing index out of {0,1,2,3}, reversed so (0,1,2) -> 0
    return 3 - (6 - i - j - k);
}

namespace {
// Sign of the permutation sorting three distinct indices.
int perm_sign3(int i, int j, int k) {
    int s = 1;
    if (i > j) s = -s;
    if (i > k) s = -s;
    if (j > k) s = -s;
    return s;
}
}  // namespace

double Form2::operator()(int i, int j) const {
    if (i == j) return 0.0;
    const double v = c[pair_index(i, j)];
    return i < j ? v : -v;
}

void Form2::set(int i, int j, double v) { c[pair_index(i, j)] = i < j ? v : -v; }

Form2 Form2::skew_part(const Mat<double>& m, int n, Basis b) {
    Form2 f;
    f.n = n;
    f.basis = b;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) f.set(i, j, m[i][j] - m[j][i]);
    return f;
}

Mat<double> Form2::matrix() const {
    Mat<double> m = zero_mat<double>();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[i][j] = (*this)(i, j);
    return m;
}

double Form3::operator()(int i, int j, int k) const {
    if (i == j || j == k || i == k) return 0.0;
    return perm_sign3(i, j, k) * c[triple_index(i, j, k)];
}

void Form3::set(int i, int j, int k, double v) {
    c[triple_index(i, j, k)] = perm_sign3(i, j, k) * v;
}

double TorsionTensor::operator()(int i, int j, int k) const {
    if (i == j) return 0.0;
    const double v = c[pair_index(i, j)][k];
    return i < j ? v : -v;
}

void TorsionTensor::set(int i, int j, int k, double v) {
    c[pair_index(i, j)][k] = i < j ? v : -v;
}

Tensor4 kulkarni_nomizu(const Tensor2& a, const Tensor2& b) {
    if (a.basis != b.basis || a.n != b.n) {
        throw Error(ErrorKind::BasisMismatch, "Kulkarni-Nomizu factors in different bases");
    }
    const int n = a.n;
    Tensor4 r = zero_tensor4(n, a.basis);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z)
                for (int w = 0; w < n; ++w) {
                    r.c[x][y][z][w] = a.c[x][z] * b.c[y][w] + a.c[y][w] * b.c[x][z] -
                                      a.c[x][w] * b.c[y][z] - a.c[y][z] * b.c[x][w];
                }
    return r;
}

Tensor2 ricci_contract(const Tensor4& r, const Signature& eps) {
    if (r.basis != Basis::Frame) {
        throw Error(ErrorKind::BasisMismatch, "Ricci contraction needs an orthonormal frame");
    }
    Tensor2 ric = zero_tensor2(r.n, Basis::Frame);
    for (int a = 0; a < r.n; ++a)
        for (int b = 0; b < r.n; ++b) {
            double s = 0.0;
            for (int i = 0; i < r.n; ++i) s += eps[i] * r.c[a][i][i][b];
            ric.c[a][b] = s;
        }
    return ric;
}

double scalar_contract(const Tensor2& ric, const Signature& eps) {
    double s = 0.0;
    for (int a = 0; a < ric.n; ++a) s += eps[a] * ric.c[a][a];
    return s;
}

double pair_symmetry_defect(const Tensor4& r) {
    double d = 0.0;
    const int n = r.n;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                    d = std::max(d, std::abs(r.c[i][j][k][l] - r.c[k][l][i][j]));
    return d;
}

double antisymmetry_defect(const Tensor4& r) {
    double d = 0.0;
    const int n = r.n;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    d = std::max(d, std::abs(r.c[i][j][k][l] + r.c[j][i][k][l]));
                    d = std::max(d, std::abs(r.c[i][j][k][l] + r.c[i][j][l][k]));
                }
    return d;
}

double max_abs(const Tensor4& r) {
    double m = 0.0;
    for (int i = 0; i < r.n; ++i)
        for (int j = 0; j < r.n; ++j)
            for (int k = 0; k < r.n; ++k)
                for (int l = 0; l < r.n; ++l) m = std::max(m, std::abs(r.c[i][j][k][l]));
    return m;
}

double max_abs(const Tensor2& r) {
    double m = 0.0;
    for (int i = 0; i < r.n; ++i)
        for (int j = 0; j < r.n; ++j) m = std::max(m, std::abs(r.c[i][j]));
    return m;
}

double normalized_diff(const Tensor4& a, const Tensor4& b) {
    return max_abs(a - b) / (1.0 + std::max(max_abs(a), max_abs(b)));
}

double normalized_diff(const Tensor2& a, const Tensor2& b) {
    return max_abs(a - b) / (1.0 + std::max(max_abs(a), max_abs(b)));
}

namespace {
template <typename F>
Tensor4 combine(const Tensor4& a, const Tensor4& b, F f) {
    if (a.basis != b.basis || a.n != b.n) {
        throw Error(ErrorKind::BasisMismatch, "tensor arithmetic across bases");
    }
    Tensor4 r = a;
    for (int i = 0; i < kMaxDim; ++i)
        for (int j = 0; j < kMaxDim; ++j)
            for (int k = 0; k < kMaxDim; ++k)
                for (int l = 0; l < kMaxDim; ++l)
                    r.c[i][j][k][l] = f(a.c[i][j][k][l], b.c[i][j][k][l]);
    return r;
}
template <typename F>
Tensor2 combine(const Tensor2& a, const Tensor2& b, F f) {
    if (a.basis != b.basis || a.n != b.n) {
        throw Error(ErrorKind::BasisMismatch, "tensor arithmetic across bases");
    }
    Tensor2 r = a;
    for (int i = 0; i < kMaxDim; ++i)
        for (int j = 0; j < kMaxDim; ++j) r.c[i][j] = f(a.c[i][j], b.c[i][j]);
    return r;
}
}  // namespace

Tensor4 operator+(const Tensor4& a, const Tensor4& b) {
    return combine(a, b, [](double x, double y) { return x + y; });
}
Tensor4 operator-(const Tensor4& a, const Tensor4& b) {
    return combine(a, b, [](double x, double y) { return x - y; });
}
Tensor4 operator*(double s, const Tensor4& a) {
    return combine(a, a, [s](double x, double) { return s * x; });
}
Tensor2 operator+(const Tensor2& a, const Tensor2& b) {
    return combine(a, b, [](double x, double y) { return x + y; });
}
Tensor2 operator-(const Tensor2& a, const Tensor2& b) {
    return combine(a, b, [](double x, double y) { return x - y; });
}
Tensor2 operator*(double s, const Tensor2& a) {
    return combine(a, a, [s](double x, double) { return s * x; });
}

Tensor2 frame_metric(int n, const Signature& eps) {
    Tensor2 g = zero_tensor2(n, Basis::Frame);
    for (int a = 0; a < n; ++a) g.c[a][a] = eps[a];
    return g;
}

TorsionTensor vectorial_torsion(const Vec<double>& v, int n, const Signature& eps) {
    TorsionTensor t;
    t.n = n;
    // lowered components V_a = eps_a V^a
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y)
            for (int z = 0; z < n; ++z) {
                const double gyz = y == z ? eps[y] : 0.0;
                const double gxz = x == z ? eps[x] : 0.0;
                t.set(x, y, z, eps[x] * v[x] * gyz - eps[y] * v[y] * gxz);
            }
    return t;
}

TorsionTensor torsion_from_form(const Form3& w) {
    TorsionTensor t;
    t.n = w.n;
    for (int x = 0; x < w.n; ++x)
        for (int y = x + 1; y < w.n; ++y)
            for (int z = 0; z < w.n; ++z) t.set(x, y, z, w(x, y, z));
    return t;
}

TorsionTensor operator+(const TorsionTensor& a, const TorsionTensor& b) {
    TorsionTensor r = a;
    for (int p = 0; p < 6; ++p)
        for (int k = 0; k < kMaxDim; ++k) r.c[p][k] += b.c[p][k];
    return r;
}

TorsionTensor operator-(const TorsionTensor& a, const TorsionTensor& b) {
    TorsionTensor r = a;
    for (int p = 0; p < 6; ++p)
        for (int k = 0; k < kMaxDim; ++k) r.c[p][k] -= b.c[p][k];
    return r;
}

double torsion_inner(const TorsionTensor& a, const TorsionTensor& b, const Signature& eps) {
    double s = 0.0;
    for (int i = 0; i < a.n; ++i)
        for (int j = 0; j < a.n; ++j)
            for (int k = 0; k < a.n; ++k) s += eps[i] * eps[j] * eps[k] * a(i, j, k) * b(i, j, k);
    return s;
}

double max_abs(const TorsionTensor& t) {
    double m = 0.0;
    for (const auto& row : t.c)
        for (double x : row) m = std::max(m, std::abs(x));
    return m;
}

TorsionParts torsion_decompose(const TorsionTensor& t, const Signature& eps) {
    const int n = t.n;
    TorsionParts p;
    p.s.n = n;
    p.s.basis = Basis::Frame;
    // trace t(Y) = sum_i eps_i T(e_i, Y, e_i) = (1 - n) g(V, Y)
    for (int y = 0; y < n; ++y) {
        double tr = 0.0;
        for (int i = 0; i < n; ++i) tr += eps[i] * t(i, y, i);
        p.v[y] = eps[y] * tr / (1.0 - n);
    }
    p.vectorial = vectorial_torsion(p.v, n, eps);
    if (n >= 3) {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                for (int k = j + 1; k < n; ++k)
                    p.s.set(i, j, k, (t(i, j, k) + t(j, k, i) + t(k, i, j)) / 3.0);
    }
    p.skew = torsion_from_form(p.s);
    p.rest = t - p.vectorial - p.skew;
    return p;
}

TorsionTensor random_torsion(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd(0.0, 1.0);
    TorsionTensor t;
    t.n = n;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = 0; k < n; ++k) t.set(i, j, k, nd(rng));
    return t;
}

namespace {
std::vector<double> flatten(const TorsionTensor& t) {
    std::vector<double> v;
    for (int i = 0; i < t.n; ++i)
        for (int j = i + 1; j < t.n; ++j)
            for (int k = 0; k < t.n; ++k) v.push_back(t(i, j, k));
    return v;
}

int numeric_rank(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) return 0;
    Eigen::MatrixXd m(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
    Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
    lu.setThreshold(1e-9);
    return static_cast<int>(lu.rank());
}
}  // namespace

TorsionAudit audit_torsion_decomposition(int n, const Signature& eps, int samples,
                                         std::uint64_t seed) {
    TorsionAudit audit;
    audit.n = n;
    audit.total = n * n * (n - 1) / 2;
    std::vector<std::vector<double>> rv, rs, rr;
    for (int s = 0; s < samples; ++s) {
        const TorsionTensor t = random_torsion(n, seed + 7919u * s);
        const TorsionParts p = torsion_decompose(t, eps);
        rv.push_back(flatten(p.vectorial));
        rs.push_back(flatten(p.skew));
        rr.push_back(flatten(p.rest));

        const double scale = 1.0 + max_abs(t);
        audit.reconstruction = std::max(
            audit.reconstruction, max_abs(t - (p.vectorial + p.skew + p.rest)) / scale);

        const TorsionTensor* parts[3] = {&p.vectorial, &p.skew, &p.rest};
        for (int a = 0; a < 3; ++a) {
            const TorsionParts q = torsion_decompose(*parts[a], eps);
            const TorsionTensor* again[3] = {&q.vectorial, &q.skew, &q.rest};
            for (int b = 0; b < 3; ++b) {
                const double d = a == b ? max_abs(*again[b] - *parts[a]) : max_abs(*again[b]);
                audit.idempotence = std::max(audit.idempotence, d / scale);
            }
            for (int b = a + 1; b < 3; ++b) {
                audit.orthogonality =
                    std::max(audit.orthogonality,
                             std::abs(torsion_inner(*parts[a], *parts[b], eps)) / (scale * scale));
            }
        }
    }
    audit.rank_vectorial = numeric_rank(rv);
    audit.rank_skew = numeric_rank(rs);
    audit.rank_rest = numeric_rank(rr);
    return audit;
}

}  // namespace vtlab
