#include "vtlab/catalog.hpp"

#include <random>

#include "vtlab/clifford.hpp"
#include "vtlab/warped.hpp"

namespace vtlab {

namespace {

using X = Vec<Dual2>;

Vec<Dual2> vec(std::initializer_list<Dual2> xs) {
    Vec<Dual2> v;
    v.fill(Dual2(0.0));
    int i = 0;
    for (const auto& x : xs) v[i++] = x;
    return v;
}

Mat<Dual2> identity_metric(int n) {
    Mat<Dual2> g = zero_mat<Dual2>();
    for (int i = 0; i < n; ++i) g[i][i] = Dual2(1.0);
    return g;
}

void set_box(Chart& c, std::initializer_list<std::pair<double, double>> ranges) {
    int i = 0;
    for (const auto& [lo, hi] : ranges) {
        c.domain.lo[i] = lo;
        c.domain.hi[i] = hi;
        ++i;
    }
}

Chart euclidean(int n, const std::string& id) {
    Chart c;
    c.id = id;
    c.dim = n;
    c.description = "Euclidean R^" + std::to_string(n);
    c.metric = [n](const X&) { return identity_metric(n); };
    for (int i = 0; i < n; ++i) {
        c.domain.lo[i] = -1.0;
        c.domain.hi[i] = 1.0;
    }
    c.vfields["zero"] = [](const X&) { return vec({}); };
    c.vfields["radial"] = [n](const X& x) {
        Vec<Dual2> v = vec({});
        for (int i = 0; i < n; ++i) v[i] = x[i];
        return v;
    };
    return c;
}

Chart flat_torus(int n) {
    Chart c = euclidean(n, "flat_torus_" + std::to_string(n));
    c.description = "flat unit torus T^" + std::to_string(n);
    for (int i = 0; i < n; ++i) {
        c.domain.lo[i] = 0.0;
        c.domain.hi[i] = 1.0;
        c.period[i] = 1.0;
    }
    c.vfields.erase("radial");
    c.vfields["siny"] = [](const X& x) { return vec({sin(2.0 * kPi * x[1])}); };
    c.vfields["gradsinx"] = [](const X& x) { return vec({2.0 * kPi * cos(2.0 * kPi * x[0])}); };
    c.vfields["const"] = [n](const X&) {
        Vec<Dual2> v = vec({0.3, -0.2, 0.25, 0.15});
        for (int i = n; i < kMaxDim; ++i) v[i] = Dual2(0.0);
        return v;
    };
    c.scalars["f_sin"] = [](const X& x) { return 0.3 * sin(2.0 * kPi * x[0]); };
    c.scalars["sinx"] = [](const X& x) { return sin(2.0 * kPi * x[0]); };
    return c;
}

Dual2 stereo_factor(const X& x, int m) {
    Dual2 r2(0.0);
    for (int i = 0; i < m; ++i) r2 += x[i] * x[i];
    return 4.0 / ((1.0 + r2) * (1.0 + r2));
}

Chart round_sphere_stereo(int m) {
    Chart c;
    c.id = "s" + std::to_string(m) + "_stereo";
    c.dim = m;
    c.description = "unit S^" + std::to_string(m) + " in stereographic coordinates";
    c.metric = [m](const X& x) {
        const Dual2 f = stereo_factor(x, m);
        Mat<Dual2> g = zero_mat<Dual2>();
        for (int i = 0; i < m; ++i) g[i][i] = f;
        return g;
    };
    for (int i = 0; i < m; ++i) {
        c.domain.lo[i] = -0.8;
        c.domain.hi[i] = 0.8;
    }
    c.vfields["rotation"] = [](const X& x) { return vec({-x[1], x[0]}); };
    c.vfields["radial"] = [m](const X& x) {
        Vec<Dual2> v = vec({});
        for (int i = 0; i < m; ++i) v[i] = x[i];
        return v;
    };
    if (m == 3) {
        // Riemannian volume form, sqrt(det g) = 8 / (1 + r^2)^3
        c.forms["vol"] = [](const X& x) {
            const Dual2 f = stereo_factor(x, 3);
            const Dual2 v = f * sqrt(f);
            Arr3<Dual2> w = zero_arr3<Dual2>();
            w[0][1][2] = v;
            w[1][2][0] = v;
            w[2][0][1] = v;
            w[1][0][2] = -v;
            w[0][2][1] = -v;
            w[2][1][0] = -v;
            return w;
        };
    }
    return c;
}

FormFn scaled_form(FormFn w, double c) {
    return [w, c](const X& x) {
        Arr3<Dual2> r = w(x);
        for (auto& a : r)
            for (auto& b : a)
                for (auto& v : b) v = c * v;
        return r;
    };
}

WarpInfo warp_of(ChartPtr fiber, std::string tag, const std::string& name, int eps, double lo,
                 double hi) {
    WarpInfo w;
    w.fiber = std::move(fiber);
    w.fiber_tag = std::move(tag);
    w.warp_name = name;
    w.eps = eps;
    w.t_lo = lo;
    w.t_hi = hi;
    if (name == "exp") {
        w.warp = [](const Dual2& t) { return exp(t); };
        w.warp_dot = [](const Dual2& t) { return exp(t); };
    } else if (name == "cosh") {
        w.warp = [](const Dual2& t) { return cosh(t); };
        w.warp_dot = [](const Dual2& t) { return sinh(t); };
    } else if (name == "t") {
        w.warp = [](const Dual2& t) { return t; };
        w.warp_dot = [](const Dual2&) { return Dual2(1.0); };
    } else if (name == "one") {
        w.warp = [](const Dual2&) { return Dual2(1.0); };
        w.warp_dot = [](const Dual2&) { return Dual2(0.0); };
    } else {
        throw Error(ErrorKind::UnknownId, "warp " + name);
    }
    return w;
}

ChartPtr add(std::vector<ChartPtr>& cat, Chart c) {
    auto p = std::make_shared<const Chart>(std::move(c));
    cat.push_back(p);
    return p;
}

Chart warped_entry(const WarpInfo& w, const std::string& id = "") {
    Chart c = make_warped(w);
    if (!id.empty()) {
        c.aliases.push_back(c.id);
        c.id = id;
    }
    return c;
}

std::vector<ChartPtr> build_catalog() {
    std::vector<ChartPtr> cat;

    {
        Chart c = euclidean(2, "euclidean_2");
        set_box(c, {{-1.0, 1.0}, {0.5, 2.0}});
        c.vfields["const"] = [](const X&) { return vec({0.7, -0.4}); };
        c.vfields["rotation"] = [](const X& x) { return vec({-x[1], x[0]}); };
        c.vfields["mixed"] = [](const X& x) { return vec({sin(x[0] * x[1]), cos(x[0] + x[1])}); };
        c.scalars["neg_log_y"] = [](const X& x) { return -log(x[1]); };
        c.scalars["gauss"] = [](const X& x) { return 0.3 * exp(-(x[0] * x[0] + x[1] * x[1])); };
        add(cat, std::move(c));
    }
    {
        Chart c = euclidean(3, "euclidean_3");
        c.vfields["const"] = [](const X&) { return vec({0.5, -0.3, 0.2}); };
        c.vfields["swirl"] = [](const X& x) { return vec({sin(x[1]), cos(x[2]), sin(x[0])}); };
        c.scalars["gauss"] = [](const X& x) {
            return 0.3 * exp(-(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]));
        };
        add(cat, std::move(c));
    }
    {
        Chart c = euclidean(4, "euclidean_4");
        c.vfields["const"] = [](const X&) { return vec({0.5, -0.3, 0.2, 0.1}); };
        c.vfields["siny"] = [](const X& x) { return vec({sin(2.0 * kPi * x[1])}); };
        c.vfields["swirl"] = [](const X& x) {
            return vec({sin(x[1]), cos(x[2]), sin(x[3]), x[0] * x[1]});
        };
        add(cat, std::move(c));
    }
    {
        Chart c = euclidean(2, "minkowski_2");
        c.description = "Minkowski plane, time first";
        c.signature = {-1, 1, 1, 1};
        c.metric = [](const X&) {
            Mat<Dual2> g = identity_metric(2);
            g[0][0] = Dual2(-1.0);
            return g;
        };
        c.vfields["const"] = [](const X&) { return vec({0.3, 0.5}); };
        c.vfields["mixed"] = [](const X& x) { return vec({sin(x[1]), x[0] * x[1]}); };
        add(cat, std::move(c));
    }
    {
        Chart c;
        c.id = "polar_plane";
        c.dim = 2;
        c.description = "Euclidean plane in polar coordinates (r, theta)";
        c.metric = [](const X& x) {
            Mat<Dual2> g = identity_metric(2);
            g[1][1] = x[0] * x[0];
            return g;
        };
        set_box(c, {{0.5, 2.0}, {0.0, 2.0 * kPi}});
        c.period[1] = 2.0 * kPi;
        c.vfields["radial"] = [](const X& x) { return vec({x[0]}); };
        c.vfields["ex"] = [](const X& x) { return vec({cos(x[1]), -sin(x[1]) / x[0]}); };
        add(cat, std::move(c));
    }
    {
        Chart c;
        c.id = "s2_graph";
        c.dim = 2;
        c.description = "unit S^2 as the graph of sqrt(1 - x^2 - y^2)";
        c.metric = [](const X& x) {
            const Dual2 w = 1.0 - x[0] * x[0] - x[1] * x[1];
            Mat<Dual2> g = identity_metric(2);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) g[i][j] += x[i] * x[j] / w;
            return g;
        };
        set_box(c, {{-0.5, 0.5}, {-0.5, 0.5}});
        c.vfields["rotation"] = [](const X& x) { return vec({-x[1], x[0]}); };
        c.vfields["vx"] = [](const X&) { return vec({1.0}); };
        add(cat, std::move(c));
    }
    ChartPtr s2_polar;
    {
        Chart c;
        c.id = "s2_polar";
        c.dim = 2;
        c.description = "unit S^2 in polar coordinates (theta, phi)";
        c.metric = [](const X& x) {
            Mat<Dual2> g = identity_metric(2);
            const Dual2 s = sin(x[0]);
            g[1][1] = s * s;
            return g;
        };
        set_box(c, {{0.4, 2.7}, {0.0, 2.0 * kPi}});
        c.period[1] = 2.0 * kPi;
        c.vfields["dphi"] = [](const X&) { return vec({0.0, 1.0}); };
        c.vfields["dtheta"] = [](const X&) { return vec({1.0}); };
        c.scalars["cos_theta"] = [](const X& x) { return 0.5 * cos(x[0]); };
        s2_polar = add(cat, std::move(c));
    }
    const ChartPtr s2 = add(cat, round_sphere_stereo(2));
    ChartPtr s3;
    {
        Chart c = round_sphere_stereo(3);
        // constant making the fiber Ricci of (S^3, c vol) vanish
        const double k = solve_form_constant(c, c.forms.at("vol"), Point{}, 0.5, 5.0);
        c.forms["omega"] = scaled_form(c.forms.at("vol"), k);
        s3 = add(cat, std::move(c));
    }
    ChartPtr torus2;
    {
        Chart c = flat_torus(2);
        c.vfields["divfree"] = [](const X& x) {
            return vec({sin(2.0 * kPi * x[1]), cos(2.0 * kPi * x[0])});
        };
        c.scalars["f_mix"] = [](const X& x) {
            return 0.1 * cos(2.0 * kPi * x[1]) + 0.05 * sin(2.0 * kPi * (x[0] + x[1]));
        };
        c.spinors["constant"] = {[](const X&) {
                                     Spinor<Dual2> s = zero_spinor<Dual2>();
                                     s[0].re = Dual2(1.0);
                                     return s;
                                 },
                                 "zero", "constant spinor, spin structure (0,0)"};
        torus2 = add(cat, std::move(c));
    }
    {
        Chart c = flat_torus(3);
        c.vfields["divfree"] = [](const X& x) {
            return vec({sin(2.0 * kPi * x[1]), sin(2.0 * kPi * x[2]), sin(2.0 * kPi * x[0])});
        };
        add(cat, std::move(c));
    }
    add(cat, flat_torus(4));

    for (int n = 2; n <= 4; ++n) {
        const std::string tag = "flat" + std::to_string(n - 1);
        Chart c = warped_entry(warp_of(flat_fiber(n - 1), tag, "exp", 1, -1.0, 1.0),
                               "hyperbolic_warped_" + std::to_string(n));
        c.description = "hyperbolic space H^" + std::to_string(n) + " as R x_{e^t} R^" +
                        std::to_string(n - 1);
        add(cat, std::move(c));
    }
    {
        Chart c = euclidean(2, "upper_halfplane");
        c.description = "hyperbolic plane, metric y^-2 (dx^2 + dy^2)";
        set_box(c, {{-1.0, 1.0}, {0.5, 2.0}});
        c.metric = [](const X& x) {
            Mat<Dual2> g = identity_metric(2);
            const Dual2 w = 1.0 / (x[1] * x[1]);
            g[0][0] = w;
            g[1][1] = w;
            return g;
        };
        c.vfields["unit_y"] = [](const X& x) { return vec({0.0, x[1]}); };
        c.scalars["log_y"] = [](const X& x) { return log(x[1]); };
        add(cat, std::move(c));
    }
    {
        Chart c = warped_entry(warp_of(s2_polar, "s2polar", "one", 1, -1.0, 1.0), "r_x_s2");
        c.description = "product R x S^2, fiber in polar coordinates";
        // Killing spinor of the fiber lifted to R x S^2, frame (dt, dtheta, dphi / sin theta)
        const CliffordRep cl = build_clifford(3);
        const CMat m1 = cl.gamma[1] * cl.gamma[0];
        const CMat m2 = cl.gamma[1] * cl.gamma[2];
        c.spinors["killing"] = {[m1, m2](const X& x) {
                                    Spinor<Dual2> chi = zero_spinor<Dual2>();
                                    chi[0].re = Dual2(1.0);
                                    const Dual2 cp = cos(0.5 * x[2]), sp = sin(0.5 * x[2]);
                                    const Dual2 ct = cos(0.5 * x[1]), st = sin(0.5 * x[1]);
                                    const Spinor<Dual2> u = scale(cp, chi) - scale(sp, act(m2, chi));
                                    return scale(ct, u) + scale(st, act(m1, u));
                                },
                                "minus_dt", "fiber Killing spinor with Killing number 1/2"};
        add(cat, std::move(c));
    }
    {
        WarpInfo w = warp_of(s3, "s3", "one", 1, -1.0, 1.0);
        w.fiber_form = "omega";
        Chart c = warped_entry(w, "r_x_s3");
        c.description = "product R x S^3 with skew torsion on the fiber";
        add(cat, std::move(c));
    }
    add(cat, warped_entry(warp_of(s2, "s2", "cosh", 1, -1.0, 1.0)));
    {
        WarpInfo w = warp_of(s3, "s3", "t", -1, 0.5, 2.0);
        w.fiber_form = "omega";
        Chart c = warped_entry(w, "warped_s3_lorentz");
        c.description = "Lorentzian -dt^2 + t^2 g_S3 with fiber skew torsion";
        add(cat, std::move(c));
    }
    add(cat, warped_entry(warp_of(flat_fiber(2), "flat2", "t", -1, 0.5, 2.0)));
    {
        Chart c = warped_entry(warp_of(torus2, "t2", "cosh", 1, -1.0, 1.0));
        c.spinors["constant"] = {[](const X&) {
                                     Spinor<Dual2> s = zero_spinor<Dual2>();
                                     s[0].re = Dual2(1.0);
                                     return s;
                                 },
                                 "canonical", "parallel spinor of the flat fiber"};
        add(cat, std::move(c));
    }
    {
        Chart c = euclidean(3, "const_metric_3");
        c.description = "constant non-diagonal metric on R^3";
        c.metric = [](const X&) {
            Mat<Dual2> g = zero_mat<Dual2>();
            const double a[3][3] = {{2.0, 0.3, 0.1}, {0.3, 1.5, -0.2}, {0.1, -0.2, 1.0}};
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) g[i][j] = Dual2(a[i][j]);
            return g;
        };
        c.vfields["swirl"] = [](const X& x) { return vec({sin(x[1]), cos(x[2]), sin(x[0])}); };
        add(cat, std::move(c));
    }
    return cat;
}

}  // namespace

ChartPtr flat_fiber(int k) {
    static const std::array<ChartPtr, 4> fibers = [] {
        std::array<ChartPtr, 4> f{};
        for (int i = 1; i <= 3; ++i) {
            Chart c = euclidean(i, "flat" + std::to_string(i));
            f[i] = std::make_shared<const Chart>(std::move(c));
        }
        return f;
    }();
    if (k < 1 || k > 3) throw Error(ErrorKind::UnsupportedDimension, "flat fiber dimension");
    return fibers[k];
}

const std::vector<ChartPtr>& catalog() {
    static const std::vector<ChartPtr> cat = build_catalog();
    return cat;
}

ChartPtr find_chart(const std::string& id) {
    for (const auto& c : catalog()) {
        if (c->id == id) return c;
        for (const auto& a : c->aliases)
            if (a == id) return c;
    }
    throw Error(ErrorKind::UnknownId, "unknown chart id '" + id + "'");
}

bool glob_match(const std::string& pattern, const std::string& text) {
    // iterative matcher with single-star backtracking
    std::size_t p = 0, t = 0, star = std::string::npos, mark = 0;
    while (t < text.size()) {
        if (p < pattern.size() && (pattern[p] == '?' || pattern[p] == text[t])) {
            ++p;
            ++t;
        } else if (p < pattern.size() && pattern[p] == '*') {
            star = p++;
            mark = t;
        } else if (star != std::string::npos) {
            p = star + 1;
            t = ++mark;
        } else {
            return false;
        }
    }
    while (p < pattern.size() && pattern[p] == '*') ++p;
    return p == pattern.size();
}

std::vector<ChartPtr> select_charts(const std::string& pattern) {
    std::vector<ChartPtr> out;
    for (const auto& c : catalog()) {
        bool hit = glob_match(pattern, c->id);
        for (const auto& a : c->aliases) hit = hit || glob_match(pattern, a);
        if (hit) out.push_back(c);
    }
    if (out.empty()) throw Error(ErrorKind::UnknownId, "no chart matches '" + pattern + "'");
    return out;
}

VectorFn random_vfield(const Chart& chart, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> amp(-0.6, 0.6);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
    std::uniform_real_distribution<double> freq(-1.5, 1.5);
    std::uniform_int_distribution<int> ifreq(-2, 2);
    const int n = chart.dim;
    struct Term {
        double a = 0.0, phi = 0.0;
        Vec<double> w{};
    };
    std::array<std::array<Term, 2>, kMaxDim> terms{};
    Vec<double> c0{};
    for (int i = 0; i < n; ++i) {
        c0[i] = amp(rng);
        for (auto& tm : terms[i]) {
            tm.a = amp(rng);
            tm.phi = phase(rng);
            for (int j = 0; j < n; ++j) {
                tm.w[j] = chart.period[j] > 0.0 ? 2.0 * kPi * ifreq(rng) / chart.period[j]
                                                : freq(rng);
            }
        }
    }
    return [terms, c0, n](const X& x) {
        Vec<Dual2> v = vec({});
        for (int i = 0; i < n; ++i) {
            Dual2 s(c0[i]);
            for (const auto& tm : terms[i]) {
                Dual2 arg(tm.phi);
                for (int j = 0; j < n; ++j) arg += tm.w[j] * x[j];
                s += tm.a * sin(arg);
            }
            v[i] = s;
        }
        return v;
    };
}

}  // namespace vtlab
