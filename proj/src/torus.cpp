#include "vtlab/torus.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "vtlab/catalog.hpp"
#include "vtlab/connection.hpp"
#include "vtlab/matching.hpp"
#include "vtlab/spin.hpp"

namespace vtlab {

using cplx = std::complex<double>;

std::vector<SpinStructure> all_spin_structures() { return {{0, 0}, {1, 0}, {0, 1}, {1, 1}}; }

FourierSpace::FourierSpace(int dim_, int K_, const Vec<double>& shift_)
    : dim(dim_), K(K_), N(dim_ >= 4 ? 4 : 2), shift(shift_) {
    if (dim < 2 || dim > kMaxDim) throw Error(ErrorKind::UnsupportedDimension, "torus dimension");
    if (K < 1) throw Error(ErrorKind::CutoffTooSmall, "mode cutoff must be positive");
}

int FourierSpace::modes() const {
    int m = 1;
    for (int a = 0; a < dim; ++a) m *= 2 * K + 1;
    return m;
}

Mode FourierSpace::mode(int m) const {
    Mode k{};
    for (int a = 0; a < dim; ++a) {
        k[a] = m % (2 * K + 1) - K;
        m /= 2 * K + 1;
    }
    return k;
}

int FourierSpace::index(const Mode& k) const {
    int idx = 0, stride = 1;
    for (int a = 0; a < dim; ++a) {
        if (k[a] < -K || k[a] > K) return -1;
        idx += (k[a] + K) * stride;
        stride *= 2 * K + 1;
    }
    return idx;
}

double FourierSpace::freq(int m, int a) const {
    return 2.0 * kPi * (mode(m)[a] + shift[a]);
}

// ---------------------------------------------------------------- TrigPoly

int TrigPoly::bandwidth() const {
    int b = 0;
    for (const auto& [m, v] : c)
        for (int a = 0; a < dim; ++a) b = std::max(b, std::abs(m[a]));
    return b;
}

cplx TrigPoly::eval(const Point& x) const {
    cplx s = 0.0;
    for (const auto& [m, v] : c) {
        double ph = 0.0;
        for (int a = 0; a < dim; ++a) ph += 2.0 * kPi * m[a] * x[a];
        s += v * cplx(std::cos(ph), std::sin(ph));
    }
    return s;
}

TrigPoly TrigPoly::derivative(int a) const {
    TrigPoly r{dim, {}};
    for (const auto& [m, v] : c)
        if (m[a] != 0) r.c[m] = v * cplx(0.0, 2.0 * kPi * m[a]);
    return r;
}

TrigPoly TrigPoly::operator+(const TrigPoly& o) const {
    TrigPoly r = *this;
    for (const auto& [m, v] : o.c) r.c[m] += v;
    r.prune(0.0);
    return r;
}

TrigPoly TrigPoly::operator*(const TrigPoly& o) const {
    TrigPoly r{dim, {}};
    for (const auto& [m, v] : c)
        for (const auto& [q, w] : o.c) {
            Mode s{};
            for (int a = 0; a < dim; ++a) s[a] = m[a] + q[a];
            r.c[s] += v * w;
        }
    r.prune(0.0);
    return r;
}

TrigPoly TrigPoly::scaled(cplx s) const {
    TrigPoly r = *this;
    for (auto& [m, v] : r.c) v *= s;
    r.prune(0.0);
    return r;
}

void TrigPoly::prune(double tol) {
    for (auto it = c.begin(); it != c.end();) {
        if (std::abs(it->second) <= tol) {
            it = c.erase(it);
        } else {
            ++it;
        }
    }
}

TrigPoly constant_poly(int dim, double value) {
    TrigPoly p{dim, {}};
    if (value != 0.0) p.c[Mode{}] = value;
    return p;
}

TrigPoly trig_poly(const std::function<double(const Point&)>& f, int dim, int L) {
    int total = 1;
    for (int a = 0; a < dim; ++a) total *= L;
    std::vector<cplx> data(total);
    for (int idx = 0; idx < total; ++idx) {
        Point p{};
        int r = idx;
        for (int a = 0; a < dim; ++a) {
            p[a] = double(r % L) / L;
            r /= L;
        }
        data[idx] = f(p);
    }
    // separable DFT, one axis at a time
    int stride = 1;
    std::vector<cplx> tmp(total);
    for (int a = 0; a < dim; ++a) {
        for (int idx = 0; idx < total; ++idx) {
            const int j = (idx / stride) % L;
            const int base = idx - j * stride;
            cplx s = 0.0;
            for (int q = 0; q < L; ++q) {
                const double ph = -2.0 * kPi * double(j) * q / L;
                s += data[base + q * stride] * cplx(std::cos(ph), std::sin(ph));
            }
            tmp[idx] = s / double(L);
        }
        data.swap(tmp);
        stride *= L;
    }
    double scale = 0.0;
    for (const cplx& v : data) scale = std::max(scale, std::abs(v));
    TrigPoly p{dim, {}};
    for (int idx = 0; idx < total; ++idx) {
        if (std::abs(data[idx]) <= 1e-13 * std::max(1.0, scale)) continue;
        Mode m{};
        int r = idx;
        for (int a = 0; a < dim; ++a) {
            int j = r % L;
            r /= L;
            if (2 * j == L) {
                throw Error(ErrorKind::CutoffTooSmall,
                            "function not resolved by the sampling grid");
            }
            m[a] = 2 * j > L ? j - L : j;
        }
        p.c[m] = data[idx];
    }
    return p;
}

std::array<TrigPoly, kMaxDim> vector_poly(const VectorFn& v, int dim, int L) {
    std::array<TrigPoly, kMaxDim> out;
    for (auto& p : out) p = TrigPoly{dim, {}};
    if (!v) return out;
    for (int a = 0; a < dim; ++a)
        out[a] = trig_poly([&](const Point& x) { return primal(v(seed_point(x))[a]); }, dim, L);
    return out;
}

// ---------------------------------------------------------------- operators

namespace {

using Triplet = Eigen::Triplet<cplx>;

// Block convolution: (A psi)_k = sum_q B_q psi_{k - q}, truncated.
SpMat block_conv(const FourierSpace& fs, const std::map<Mode, CMat>& blocks) {
    std::vector<Triplet> trip;
    const int M = fs.modes();
    const int N = fs.N;
    for (int r = 0; r < M; ++r) {
        const Mode k = fs.mode(r);
        for (const auto& [q, b] : blocks) {
            Mode s{};
            for (int a = 0; a < fs.dim; ++a) s[a] = k[a] - q[a];
            const int col = fs.index(s);
            if (col < 0) continue;
            for (int i = 0; i < N; ++i)
                for (int j = 0; j < N; ++j)
                    if (b(i, j) != cplx(0.0)) trip.emplace_back(r * N + i, col * N + j, b(i, j));
        }
    }
    SpMat m(fs.size(), fs.size());
    m.setFromTriplets(trip.begin(), trip.end());
    return m;
}

}  // namespace

TorusOps::TorusOps(const FourierSpace& f) : fs(f), cl(build_clifford(f.dim)) {}

SpMat TorusOps::identity() const {
    SpMat m(fs.size(), fs.size());
    m.setIdentity();
    return m;
}

SpMat TorusOps::partial(int a) const {
    std::vector<Triplet> trip;
    for (int r = 0; r < fs.modes(); ++r)
        for (int i = 0; i < fs.N; ++i) trip.emplace_back(r * fs.N + i, r * fs.N + i, cplx(0.0, fs.freq(r, a)));
    SpMat m(fs.size(), fs.size());
    m.setFromTriplets(trip.begin(), trip.end());
    return m;
}

SpMat TorusOps::clifford(const CMat& c) const { return block_conv(fs, {{Mode{}, c}}); }

SpMat TorusOps::gamma(int a) const { return clifford(cl.gamma[a]); }

SpMat TorusOps::mult(const TrigPoly& f) const {
    std::map<Mode, CMat> blocks;
    for (const auto& [q, v] : f.c) blocks[q] = v * cl.identity();
    return block_conv(fs, blocks);
}

SpMat TorusOps::vector(const std::array<TrigPoly, kMaxDim>& v) const {
    std::map<Mode, CMat> blocks;
    for (int a = 0; a < fs.dim; ++a)
        for (const auto& [q, c] : v[a].c) {
            auto it = blocks.find(q);
            if (it == blocks.end()) it = blocks.emplace(q, CMat::Zero(fs.N, fs.N)).first;
            it->second += c * cl.gamma[a];
        }
    return block_conv(fs, blocks);
}

DiracMatrix build_dirac(const SpinStructure& spin, const std::array<TrigPoly, kMaxDim>& v,
                        double t, int K) {
    DiracMatrix d;
    d.spin = spin;
    d.t = t;
    for (int a = 0; a < 2; ++a) d.bandwidth = std::max(d.bandwidth, v[a].bandwidth());
    if (2 * d.bandwidth > K) {
        throw Error(ErrorKind::CutoffTooSmall, "cutoff K = " + std::to_string(K) +
                                                   " below twice the field bandwidth");
    }
    d.fs = FourierSpace(2, K, {0.5 * spin.e1, 0.5 * spin.e2, 0.0, 0.0});
    const TorusOps ops(d.fs);
    SpMat op = SpMat(ops.gamma(0) * ops.partial(0)) + SpMat(ops.gamma(1) * ops.partial(1));
    bool zero = true;
    for (int a = 0; a < 2; ++a) zero = zero && v[a].c.empty();
    d.self_adjoint = zero || t == 0.0;
    if (!d.self_adjoint) op -= SpMat(cplx(0.5 * t) * ops.vector(v));
    op.makeCompressed();
    d.op = op;
    return d;
}

// ---------------------------------------------------------------- spectra

namespace {

std::vector<std::vector<int>> components(const SpMat& a) {
    const int n = static_cast<int>(a.rows());
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int r = 0; r < n; ++r)
        for (SpMat::InnerIterator it(a, r); it; ++it) {
            const int x = find(r), y = find(static_cast<int>(it.col()));
            if (x != y) parent[std::max(x, y)] = std::min(x, y);
        }
    std::map<int, std::vector<int>> groups;
    for (int r = 0; r < n; ++r) groups[find(r)].push_back(r);
    std::vector<std::vector<int>> out;
    for (auto& [root, members] : groups) out.push_back(std::move(members));
    return out;
}

bool spectral_less(const cplx& a, const cplx& b) {
    const double ma = std::abs(a), mb = std::abs(b);
    if (std::abs(ma - mb) > 1e-12 * std::max(1.0, ma)) return ma < mb;
    return std::arg(a) < std::arg(b);
}

}  // namespace

std::vector<cplx> spectrum_all(const DiracMatrix& d, Exec mode) {
    const auto comps = components(d.op);
    std::vector<std::vector<cplx>> parts(comps.size());
    for_each_index(
        static_cast<int>(comps.size()),
        [&](int c) {
            const auto& idx = comps[c];
            const int m = static_cast<int>(idx.size());
            std::map<int, int> local;
            for (int i = 0; i < m; ++i) local[idx[i]] = i;
            Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(m, m);
            for (int i = 0; i < m; ++i)
                for (SpMat::InnerIterator it(d.op, idx[i]); it; ++it)
                    block(i, local.at(static_cast<int>(it.col()))) = it.value();
            Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(block, false);
            if (es.info() != Eigen::Success) {
                throw Error(ErrorKind::SolverFailure,
                            "eigen solve failed on a block of size " + std::to_string(m));
            }
            parts[c].assign(es.eigenvalues().data(), es.eigenvalues().data() + m);
        },
        mode);
    std::vector<cplx> all;
    for (const auto& p : parts) all.insert(all.end(), p.begin(), p.end());
    std::stable_sort(all.begin(), all.end(), spectral_less);
    return all;
}

std::vector<cplx> spectrum(const DiracMatrix& d, int m, Exec mode) {
    std::vector<cplx> all = spectrum_all(d, mode);
    if (m < static_cast<int>(all.size())) all.resize(m);
    return all;
}

const std::vector<NamedPotential>& torus_potentials() {
    static const std::vector<NamedPotential> all = {
        {"0.2*sin(2*pi*x)", [](const Point& x) { return 0.2 * std::sin(2 * kPi * x[0]); }},
        {"0.1*cos(2*pi*y)", [](const Point& x) { return 0.1 * std::cos(2 * kPi * x[1]); }},
        {"0.15*sin(2*pi*(x+y))",
         [](const Point& x) { return 0.15 * std::sin(2 * kPi * (x[0] + x[1])); }},
    };
    return all;
}

const NamedPotential& find_potential(const std::string& name) {
    for (const auto& p : torus_potentials())
        if (p.name == name) return p;
    throw Error(ErrorKind::UnknownId, "unknown potential '" + name + "'");
}

IsospectralResult compare_isospectral(const SpinStructure& spin, const TrigPoly& f,
                                      const std::string& f_name, int K, int m) {
    std::array<TrigPoly, kMaxDim> v, zero;
    for (int a = 0; a < kMaxDim; ++a) {
        v[a] = a < 2 ? f.derivative(a) : TrigPoly{2, {}};
        zero[a] = TrigPoly{2, {}};
    }
    const std::vector<cplx> a = spectrum(build_dirac(spin, v, 1.0, K), m);
    const std::vector<cplx> all0 = spectrum_all(build_dirac(spin, zero, 1.0, K));
    double r = 0.0;
    for (const cplx& z : a) r = std::max(r, std::abs(z));
    if (m - 1 < static_cast<int>(all0.size())) r = std::max(r, std::abs(all0[m - 1]));
    r = r * (1.0 + 1e-6) + 1e-6;
    std::vector<cplx> pool;
    for (const cplx& z : all0)
        if (std::abs(z) <= r) pool.push_back(z);
    IsospectralResult out;
    out.spin = spin;
    out.f_name = f_name;
    out.compared = static_cast<int>(a.size());
    for (const cplx& z : a) out.max_modulus = std::max(out.max_modulus, std::abs(z));
    const Pairing pr = pair_spectra(a, pool);
    out.max_distance = pr.max_distance;
    out.values = a;
    for (int j : pr.match) out.paired.push_back(pool[j]);
    return out;
}

// ---------------------------------------------------------------- fields

SpinorFn fourier_field(const FourierSpace& fs, const CVecX& coeffs) {
    struct Term {
        Vec<double> w{};
        std::array<cplx, kMaxSpinor> c{};
    };
    std::vector<Term> terms;
    for (int m = 0; m < fs.modes(); ++m) {
        Term t;
        bool any = false;
        for (int i = 0; i < fs.N; ++i) {
            t.c[i] = coeffs[m * fs.N + i];
            any = any || t.c[i] != cplx(0.0);
        }
        if (!any) continue;
        for (int a = 0; a < fs.dim; ++a) t.w[a] = fs.freq(m, a);
        terms.push_back(t);
    }
    const int dim = fs.dim, N = fs.N;
    return [terms, dim, N](const Vec<Dual2>& xs) {
        Spinor<Dual2> s = zero_spinor<Dual2>();
        for (const Term& t : terms) {
            Dual2 ph(0.0);
            for (int a = 0; a < dim; ++a) ph = ph + t.w[a] * xs[a];
            const Dual2 c = cos(ph), sn = sin(ph);
            for (int i = 0; i < N; ++i) {
                // (cr + i ci)(c + i sn)
                s[i].re = s[i].re + t.c[i].real() * c - t.c[i].imag() * sn;
                s[i].im = s[i].im + t.c[i].real() * sn + t.c[i].imag() * c;
            }
        }
        return s;
    };
}

CVecX random_coefficients(const FourierSpace& fs, int kmax, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    CVecX x = CVecX::Zero(fs.size());
    for (int m = 0; m < fs.modes(); ++m) {
        const Mode k = fs.mode(m);
        bool inside = true;
        for (int a = 0; a < fs.dim; ++a) inside = inside && std::abs(k[a]) <= kmax;
        if (!inside) continue;
        for (int i = 0; i < fs.N; ++i) {
            const double re = u(rng);
            x[m * fs.N + i] = cplx(re, u(rng));
        }
    }
    return x;
}

// ---------------------------------------------------------------- parallel spinors

namespace {

bool multiple_of(double x, double step) {
    const double q = x / step;
    return std::abs(q - std::round(q)) < 1e-9;
}

// exp(th w) for w^2 = -1
CMat rotor(const CMat& w, double th) {
    return std::cos(th) * CMat::Identity(w.rows(), w.cols()) + std::sin(th) * w;
}

int nullity(const Eigen::MatrixXcd& a, double tol) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
    const auto& s = svd.singularValues();
    int small = 0;
    for (int i = 0; i < s.size(); ++i) small += s[i] <= tol ? 1 : 0;
    return small + static_cast<int>(a.cols() - s.size());
}

}  // namespace

ParallelDetection parallel_spinor_detect(const SpinStructure& spin, double v1, double v2, int K) {
    ParallelDetection out;
    out.spin = spin;
    out.v1 = v1;
    out.v2 = v2;
    const CliffordRep cl = build_clifford(2);
    const CMat w = cl.gamma[0] * cl.gamma[1];
    const double s1 = spin.e1 ? -1.0 : 1.0, s2 = spin.e2 ? -1.0 : 1.0;

    // transport once around each generator
    Eigen::MatrixXcd stack(4, 2);
    stack.topRows(2) = s1 * rotor(w, -0.5 * v2) - CMat::Identity(2, 2);
    stack.bottomRows(2) = s2 * rotor(w, 0.5 * v1) - CMat::Identity(2, 2);
    out.oracle_dim = nullity(stack, 1e-9);

    // explicit local solutions exp(-(v2 x - v1 y) w / 2) u on the eigenlines of w
    const ChartPtr torus = find_chart("flat_torus_2");
    const VectorFn vconst = [v1, v2](const Vec<Dual2>&) {
        Vec<Dual2> r;
        r.fill(Dual2(0.0));
        r[0] = Dual2(v1);
        r[1] = Dual2(v2);
        return r;
    };
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(w);
    const std::vector<Point> pts = sample_points(*torus, 6, 2024);
    for (int e = 0; e < 2; ++e) {
        const cplx lam = es.eigenvalues()[e];  // +-i
        const Eigen::VectorXcd u = es.eigenvectors().col(e);
        const SpinorFn field = [lam, u, v1, v2](const Vec<Dual2>& xs) {
            // exp(-lam (v2 x - v1 y) / 2) with lam = i sigma
            const Dual2 th = -0.5 * lam.imag() * (v2 * xs[0] - v1 * xs[1]);
            const Dual2 c = cos(th), s = sin(th);
            Spinor<Dual2> r = zero_spinor<Dual2>();
            for (int i = 0; i < 2; ++i) {
                r[i].re = u[i].real() * c - u[i].imag() * s;
                r[i].im = u[i].real() * s + u[i].imag() * c;
            }
            return r;
        };
        double res = 0.0;
        for (const Point& x : pts) {
            const SpinFrame<double> sf = value_part(spin_frame(*torus, x, vconst));
            const Spinor<Dual1> psi = value_part(field(seed_point(x)));
            for (int i = 0; i < 2; ++i) res = std::max(res, max_abs(cov_deriv(sf, cl, psi, i, 1.0)));
        }
        out.parallel_residual = std::max(out.parallel_residual, res);
        double bc = 0.0;
        for (const Point& x : pts) {
            auto eval = [&](double a, double b) {
                Point p{};
                p[0] = a;
                p[1] = b;
                return value_part(value_part(field(seed_point(p))));
            };
            bc = std::max(bc, max_abs(eval(0.0, x[1]) - scale(s1, eval(1.0, x[1]))));
            bc = std::max(bc, max_abs(eval(x[0], 0.0) - scale(s2, eval(x[0], 1.0))));
        }
        if (res <= 1e-10 && bc <= 1e-10) ++out.pointwise_dim;
    }

    // kernel of the truncated operator; constant V keeps it block diagonal
    std::array<TrigPoly, kMaxDim> v;
    for (auto& p : v) p = TrigPoly{2, {}};
    v[0] = constant_poly(2, v1);
    v[1] = constant_poly(2, v2);
    const DiracMatrix d = build_dirac(spin, v, 1.0, K);
    const Eigen::MatrixXcd dense = Eigen::MatrixXcd(d.op);
    for (int m = 0; m < d.fs.modes(); ++m) {
        const Eigen::MatrixXcd blk = dense.block(2 * m, 2 * m, 2, 2);
        out.kernel_dim += nullity(blk, 1e-9 * (1.0 + blk.norm()));
    }

    out.displayed_predicts = multiple_of(v1, 2.0 * kPi) && multiple_of(v2, 2.0 * kPi);
    out.agree = out.oracle_dim == out.pointwise_dim && out.oracle_dim == out.kernel_dim;
    out.displayed_agree = (out.oracle_dim > 0) == out.displayed_predicts;
    return out;
}

std::vector<ParallelDetection> parallel_grid(int g, Exec mode) {
    const auto spins = all_spin_structures();
    const int cells = 4 * g * g;
    return map_indices<ParallelDetection>(
        cells,
        [&](int c) {
            const SpinStructure sp = spins[c / (g * g)];
            const int i = (c / g) % g, j = c % g;
            return parallel_spinor_detect(sp, i * kPi, j * kPi);
        },
        mode);
}

// ---------------------------------------------------------------- Lichnerowicz

SuiteResult check_lichnerowicz(int dim, const std::array<TrigPoly, kMaxDim>& v,
                               const std::string& vname, double t, int K, int fields,
                               std::uint64_t seed, double tol) {
    const int n = dim;
    int b = 0;
    for (int a = 0; a < n; ++a) b = std::max(b, v[a].bandwidth());
    const int kmax = std::min(K / 2, K - 2 * b);
    if (kmax < 1) {
        throw Error(ErrorKind::CutoffTooSmall, "cutoff too small for the Lichnerowicz products");
    }
    const FourierSpace fs(dim, K, Vec<double>{});
    const TorusOps ops(fs);
    std::array<SpMat, kMaxDim> P, G, Vm;
    for (int a = 0; a < n; ++a) {
        P[a] = ops.partial(a);
        G[a] = ops.gamma(a);
        Vm[a] = ops.mult(v[a]);
    }
    const SpMat Vc = ops.vector(v);  // V.
    auto mul = [](const SpMat& a, const SpMat& c) { return SpMat(a * c); };
    auto sc = [](double k, const SpMat& a) { return SpMat(cplx(k) * a); };
    SpMat Dg(fs.size(), fs.size());
    SpMat nablaV(fs.size(), fs.size());
    for (int a = 0; a < n; ++a) {
        Dg += mul(G[a], P[a]);
        nablaV += mul(Vm[a], P[a]);
    }
    SpMat dV(fs.size(), fs.size());
    for (int a = 0; a < n; ++a)
        for (int c = a + 1; c < n; ++c) {
            const TrigPoly dac = v[c].derivative(a) + v[a].derivative(c).scaled(-1.0);
            dV += mul(ops.mult(dac), mul(G[a], G[c]));
        }
    TrigPoly div{dim, {}}, norm2{dim, {}};
    for (int a = 0; a < n; ++a) {
        div = div + v[a].derivative(a);
        norm2 = norm2 + v[a] * v[a];
    }
    const SpMat Div = ops.mult(div), Norm2 = ops.mult(norm2);
    const SpMat Dg2 = mul(Dg, Dg);
    const SpMat VDg = mul(Vc, Dg);

    // (nabla^s)^* nabla^s with nabla^s_a = d_a + s/2 (g_a V. + V_a)
    auto laplacian = [&](double s) {
        SpMat lap(fs.size(), fs.size());
        for (int a = 0; a < n; ++a) {
            const SpMat Na = P[a] + sc(0.5 * s, SpMat(mul(G[a], Vc) + Vm[a]));
            const SpMat NaH = SpMat(Na.adjoint());
            lap += mul(NaH, Na);
        }
        return lap;
    };
    const double nm1 = n - 1;
    const SpMat Dt = Dg - sc(0.5 * t * nm1, Vc);
    const SpMat DtH = SpMat(Dt.adjoint());
    const SpMat DtDt = mul(DtH, Dt);
    const SpMat lap_t = laplacian(t);
    const SpMat lap_rt = laplacian(nm1 * t);
    const SpMat lap_resc = laplacian(nm1);

    // flat torus: s^g = 0 throughout
    const SpMat rhs_L = Dg2 + sc(t, VDg) + sc(t, nablaV) - sc(0.5 * t, dV) +
                        sc(0.25 * t * t * nm1, Norm2);
    const SpMat rhs_Lresc = Dg2 + sc(0.5 * nm1, SpMat(sc(2.0, VDg) + sc(2.0, nablaV) - dV)) +
                            sc(0.25 * nm1 * nm1 * nm1, Norm2);
    const SpMat rhs_DD = lap_rt + sc(0.5 * nm1 * t, Div) +
                         sc(t * t * 0.25 * nm1 * nm1 * (2.0 - n), Norm2);
    const SpMat rhs_prop = lap_t + sc(0.5 * t * nm1, Div) + sc(t * t * nm1 * (n - 2) * 0.25, Norm2) +
                           sc(t * (n - 2), SpMat(VDg + nablaV - sc(0.5, dV)));
    const SpMat adj_formula = Dg + sc(0.5 * t * nm1, Vc);

    SuiteResult res;
    res.suite = "lichnerowicz";
    res.chart = "flat_torus_" + std::to_string(dim);
    res.vfield = vname;
    res.tolerance = tol;
    res.samples = fields;
    res.seed = seed;
    auto diff = [&](const SpMat& a, const SpMat& c, const CVecX& x) {
        const CVecX y = sparse_apply(a, x, Exec::Parallel);
        const CVecX z = sparse_apply(c, x, Exec::Parallel);
        const double s = std::max(y.cwiseAbs().maxCoeff(), z.cwiseAbs().maxCoeff());
        return (y - z).cwiseAbs().maxCoeff() / (1.0 + s);
    };
    for (int f = 0; f < fields; ++f) {
        const CVecX x = random_coefficients(fs, kmax, seed + 31u * f);
        res.add("DD", diff(DtDt, rhs_DD, x), tol);
        res.add("Lresc", diff(lap_resc, rhs_Lresc, x), tol);
        res.add("L", diff(lap_t, rhs_L, x), tol);
        res.add("DtDt_prop", diff(DtDt, rhs_prop, x), tol);
        res.add("adjoint_form", diff(DtH, adj_formula, x), 1e-12);
        if (n == 2) res.add("rescaling_n2", diff(lap_rt, lap_t, x), 1e-10);
    }
    return res;
}

}  // namespace vtlab
