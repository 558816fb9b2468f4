#include "ekcore/linalg.hpp"

#include <map>
#include <mutex>

namespace ek {

Mat2c to_complex(const Mat2& m) {
    Mat2c r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r(i, j) = cplx(m(i, j), 0.0);
    return r;
}

std::pair<cplx, cplx> eigenvalues(const Mat2c& m) {
    const cplx tr = m(0, 0) + m(1, 1);
    const cplx det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    const cplx disc = tr * tr - 4.0 * det;
    cplx s = std::sqrt(disc);
    // Pick the sign that avoids cancellation in tr +/- s.
    if (std::real(std::conj(tr) * s) < 0.0) s = -s;
    const cplx big = 0.5 * (tr + s);
    if (std::abs(big) == 0.0) return {big, 0.5 * (tr - s)};
    return {big, det / big};
}

Vec3 sym_eigenvalues(const Mat3& m) {
    // Work on the symmetrized copy.
    double d[3] = {m(0, 0), m(1, 1), m(2, 2)};
    double o01 = 0.5 * (m(0, 1) + m(1, 0));
    double o02 = 0.5 * (m(0, 2) + m(2, 0));
    double o12 = 0.5 * (m(1, 2) + m(2, 1));

    auto rotate = [&](double& app, double& aqq, double& apq, double& apr, double& aqr) {
        if (apq == 0.0) return;
        const double theta = 0.5 * (aqq - app) / apq;
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);
        app -= t * apq;
        aqq += t * apq;
        const double pr = apr, qr = aqr;
        apr = pr - s * (qr + tau * pr);
        aqr = qr + s * (pr - tau * qr);
        apq = 0.0;
    };

    for (int sweep = 0; sweep < 32; ++sweep) {
        const double off = std::abs(o01) + std::abs(o02) + std::abs(o12);
        const double scale = std::abs(d[0]) + std::abs(d[1]) + std::abs(d[2]) + off;
        if (off <= 1e-16 * std::max(scale, 1e-300)) break;
        rotate(d[0], d[1], o01, o02, o12);
        rotate(d[0], d[2], o02, o01, o12);
        rotate(d[1], d[2], o12, o01, o02);
    }

    Vec3 ev{{d[0], d[1], d[2]}};
    if (ev[0] > ev[1]) std::swap(ev.a[0], ev.a[1]);
    if (ev[1] > ev[2]) std::swap(ev.a[1], ev.a[2]);
    if (ev[0] > ev[1]) std::swap(ev.a[0], ev.a[1]);
    return ev;
}

namespace {

Quadrature gauss_legendre_unit(int n) {
    // Nodes/weights on [-1, 1].
    Quadrature q;
    q.points.resize(static_cast<std::size_t>(n));
    q.weights.resize(static_cast<std::size_t>(n));
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        q.points[static_cast<std::size_t>(i)] = -x;
        q.points[static_cast<std::size_t>(n - 1 - i)] = x;
        q.weights[static_cast<std::size_t>(i)] = w;
        q.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    return q;
}

}  // namespace

Quadrature gauss_legendre(int n, double a, double b) {
    static std::map<int, Quadrature> cache;
    static std::mutex mtx;
    Quadrature base;
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find(n);
        if (it == cache.end()) it = cache.emplace(n, gauss_legendre_unit(n)).first;
        base = it->second;
    }
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    for (auto& x : base.points) x = mid + half * x;
    for (auto& w : base.weights) w *= half;
    return base;
}

}  // namespace ek
