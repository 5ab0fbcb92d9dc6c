#include "ytf/quadrature.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace ytf::quad {

const std::vector<std::pair<double, double>>& gauss_rule(int k) {
    static std::map<int, std::vector<std::pair<double, double>>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;
    // Newton on Legendre polynomials.
    std::vector<std::pair<double, double>> rule(k);
    for (int i = 0; i < k; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (k + 0.5));
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1, p1 = x;
            for (int j = 2; j <= k; ++j) {
                double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            double dp = k * (x * p1 - p0) / (x * x - 1);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double p0 = 1, p1 = x;
        for (int j = 2; j <= k; ++j) {
            double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
            p0 = p1;
            p1 = p2;
        }
        double dp = k * (x * p1 - p0) / (x * x - 1);
        rule[k - 1 - i] = {x, 2.0 / ((1 - x * x) * dp * dp)};
    }
    return cache.emplace(k, std::move(rule)).first->second;
}

std::vector<double> radial_panels(double a, double b, double cluster, int per_octave) {
    if (!(b > a)) throw std::invalid_argument("radial_panels: empty interval");
    std::vector<double> pts;
    pts.push_back(a);
    const double ratio = std::pow(2.0, 1.0 / std::max(1, per_octave));
    // below cluster/64 the integrand is a smooth power of r; one panel there
    const double lo = std::max(a, cluster / 64.0);
    if (cluster > lo && cluster < b) {
        // descend from cluster to a, then ascend from cluster to b
        std::vector<double> down;
        for (double r = cluster; r > lo * ratio; r /= ratio) down.push_back(r);
        for (auto rit = down.rbegin(); rit != down.rend(); ++rit)
            if (*rit > a && *rit < b) pts.push_back(*rit);
        for (double r = cluster * ratio; r < b; r *= ratio) pts.push_back(r);
    } else {
        double start = std::max(lo, std::min(cluster, b));
        if (start <= a) start = lo;
        for (double r = start; r < b; r *= ratio)
            if (r > a) pts.push_back(r);
    }
    pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](double p, double q) { return q - p < 1e-14 * (1 + q); }),
              pts.end());
    return pts;
}

double hemisphere_area(int n) {
    return std::exp(0.5 * n * std::log(M_PI) - std::lgamma(0.5 * n));
}
double sphere_area(int n) { return 2.0 * hemisphere_area(n); }

namespace {

// Shared direction-loop driver: for each direction omega computes a value
// F(omega); returns area-scaled mean and standard error. Blocked accumulation
// in fixed-size chunks keeps the reduction order independent of threading.
McResult direction_mc(int n, double area, long samples, uint64_t seed, uint32_t stream,
                      int threads, const std::function<double(const double*)>& F) {
    const long block_size = 256;
    const long nblocks = (samples + block_size - 1) / block_size;
    std::vector<double> block_sum(nblocks, 0.0), block_sum2(nblocks, 0.0);

    auto run_block = [&](long blk) {
        Rng rng(seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1)) ^ (uint64_t(blk) << 20));
        Kahan s, s2;
        const long lo = blk * block_size;
        const long hi = std::min(samples, lo + block_size);
        for (long i = lo; i < hi; ++i) {
            auto w = rng.hemisphere_direction(n);
            double v = F(w.data());
            s.add(v);
            s2.add(v * v);
        }
        block_sum[blk] = s.sum();
        block_sum2[blk] = s2.sum();
    };

    if (threads <= 1) {
        for (long blk = 0; blk < nblocks; ++blk) run_block(blk);
    } else {
        std::vector<std::thread> pool;
        std::atomic<long> next{0};
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (long blk = next.fetch_add(1); blk < nblocks; blk = next.fetch_add(1))
                    run_block(blk);
            });
        for (auto& th : pool) th.join();
    }

    Kahan total, total2;
    for (long blk = 0; blk < nblocks; ++blk) {
        total.add(block_sum[blk]);
        total2.add(block_sum2[blk]);
    }
    const double mean = total.sum() / samples;
    const double var = std::max(0.0, total2.sum() / samples - mean * mean);
    return {area * mean, area * std::sqrt(var / samples)};
}

double radial_profile(int n, const std::vector<double>& panels, int gauss_points,
                      const double* omega, const PointFn& f) {
    Kahan acc;
    const auto& rule = gauss_rule(gauss_points);
    double x[kMaxDim];
    for (size_t p = 0; p + 1 < panels.size(); ++p) {
        const double mid = 0.5 * (panels[p] + panels[p + 1]);
        const double half = 0.5 * (panels[p + 1] - panels[p]);
        for (const auto& [node, wgt] : rule) {
            const double r = mid + half * node;
            for (int i = 0; i < n; ++i) x[i] = r * omega[i];
            acc.add(wgt * half * f(x) * std::pow(r, n - 1));
        }
    }
    return acc.sum();
}

}  // namespace

McResult integrate_shell(int n, double a, double b, double cluster, const PointFn& f,
                         const QuadratureSpec& spec, uint32_t stream) {
    auto panels = radial_panels(a, b, cluster, spec.panels_per_octave);
    return direction_mc(n, hemisphere_area(n), spec.samples, spec.seed, stream, spec.threads,
                        [&](const double* w) {
                            return radial_profile(n, panels, spec.gauss_points, w, f);
                        });
}

McResult integrate_exterior(int n, double a, const PointFn& f, const QuadratureSpec& spec,
                            uint32_t stream) {
    // r = a/t, dr = a/t^2 dt, t in (0,1]; panels cluster near t = 1.
    std::vector<double> tpts;
    tpts.push_back(1.0);
    double t = 1.0;
    for (int i = 0; i < 14 && t > 1e-4; ++i) {
        t *= 0.5;
        tpts.push_back(t);
    }
    tpts.push_back(0.0);
    std::sort(tpts.begin(), tpts.end());
    const auto& rule = gauss_rule(spec.gauss_points);
    return direction_mc(
        n, hemisphere_area(n), spec.samples, spec.seed, stream, spec.threads,
        [&](const double* w) {
            Kahan acc;
            double x[kMaxDim];
            for (size_t p = 0; p + 1 < tpts.size(); ++p) {
                const double mid = 0.5 * (tpts[p] + tpts[p + 1]);
                const double half = 0.5 * (tpts[p + 1] - tpts[p]);
                for (const auto& [node, wgt] : rule) {
                    const double tt = mid + half * node;
                    if (tt <= 0) continue;
                    const double r = a / tt;
                    for (int i = 0; i < n; ++i) x[i] = r * w[i];
                    acc.add(wgt * half * f(x) * std::pow(r, n - 1) * a / (tt * tt));
                }
            }
            return acc.sum();
        });
}

McResult integrate_sphere(int n, double rho, const PointFn& f, const QuadratureSpec& spec,
                          uint32_t stream) {
    const double area = hemisphere_area(n) * std::pow(rho, n - 1);
    return direction_mc(n, area, spec.samples, spec.seed, stream, spec.threads,
                        [&](const double* w) {
                            double x[kMaxDim];
                            for (int i = 0; i < n; ++i) x[i] = rho * w[i];
                            return f(x);
                        });
}

McResult integrate_disk(int n, double rho, double cluster, const PointFn& f,
                        const QuadratureSpec& spec, uint32_t stream) {
    // (n-1)-dimensional ball in the boundary plane.
    const int m = n - 1;
    auto panels = radial_panels(0.0, rho, cluster, spec.panels_per_octave);
    const auto& rule = gauss_rule(spec.gauss_points);
    const double area = sphere_area(m);
    const long block_size = 256;
    const long samples = spec.samples;
    const long nblocks = (samples + block_size - 1) / block_size;
    std::vector<double> bs(nblocks, 0.0), bs2(nblocks, 0.0);
    for (long blk = 0; blk < nblocks; ++blk) {
        Rng rng(spec.seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1)) ^ (uint64_t(blk) << 20));
        Kahan s, s2;
        const long lo = blk * block_size, hi = std::min(samples, lo + block_size);
        for (long i = lo; i < hi; ++i) {
            auto wdir = rng.hemisphere_direction(m);
            if (rng.uniform() < 0.5) wdir[m - 1] = -wdir[m - 1];  // full sphere in the plane
            Kahan acc;
            double x[kMaxDim];
            x[n - 1] = 0.0;
            for (size_t p = 0; p + 1 < panels.size(); ++p) {
                const double mid = 0.5 * (panels[p] + panels[p + 1]);
                const double half = 0.5 * (panels[p + 1] - panels[p]);
                for (const auto& [node, wgt] : rule) {
                    const double r = mid + half * node;
                    for (int t = 0; t < m; ++t) x[t] = r * wdir[t];
                    acc.add(wgt * half * f(x) * std::pow(r, m - 1));
                }
            }
            s.add(acc.sum());
            s2.add(acc.sum() * acc.sum());
        }
        bs[blk] = s.sum();
        bs2[blk] = s2.sum();
    }
    Kahan total, total2;
    for (long blk = 0; blk < nblocks; ++blk) {
        total.add(bs[blk]);
        total2.add(bs2[blk]);
    }
    const double mean = total.sum() / samples;
    const double var = std::max(0.0, total2.sum() / samples - mean * mean);
    return {area * mean, area * std::sqrt(var / samples)};
}

namespace {

// Shared multi-output direction driver.
std::vector<McResult> direction_mc_multi(int n, double area, long samples, uint64_t seed,
                                         uint32_t stream, int threads, int m,
                                         const std::function<void(const double*, double*)>& F) {
    const long block_size = 256;
    const long nblocks = (samples + block_size - 1) / block_size;
    std::vector<std::vector<double>> bsum(nblocks), bsum2(nblocks);

    auto run_block = [&](long blk) {
        Rng rng(seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1)) ^ (uint64_t(blk) << 20));
        std::vector<Kahan> s(m), s2(m);
        std::vector<double> vals(m);
        const long lo = blk * block_size;
        const long hi = std::min(samples, lo + block_size);
        for (long i = lo; i < hi; ++i) {
            auto w = rng.hemisphere_direction(n);
            F(w.data(), vals.data());
            for (int t = 0; t < m; ++t) {
                s[t].add(vals[t]);
                s2[t].add(vals[t] * vals[t]);
            }
        }
        bsum[blk].resize(m);
        bsum2[blk].resize(m);
        for (int t = 0; t < m; ++t) {
            bsum[blk][t] = s[t].sum();
            bsum2[blk][t] = s2[t].sum();
        }
    };

    if (threads <= 1) {
        for (long blk = 0; blk < nblocks; ++blk) run_block(blk);
    } else {
        std::vector<std::thread> pool;
        std::atomic<long> next{0};
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (long blk = next.fetch_add(1); blk < nblocks; blk = next.fetch_add(1))
                    run_block(blk);
            });
        for (auto& th : pool) th.join();
    }

    std::vector<McResult> out(m);
    for (int t = 0; t < m; ++t) {
        Kahan total, total2;
        for (long blk = 0; blk < nblocks; ++blk) {
            total.add(bsum[blk][t]);
            total2.add(bsum2[blk][t]);
        }
        const double mean = total.sum() / samples;
        const double var = std::max(0.0, total2.sum() / samples - mean * mean);
        out[t] = {area * mean, area * std::sqrt(var / samples)};
    }
    return out;
}

}  // namespace

std::vector<McResult> integrate_shell_multi(int n, double a, double b, double cluster, int m,
                                            const MultiPointFn& f, const QuadratureSpec& spec,
                                            uint32_t stream) {
    auto panels = radial_panels(a, b, cluster, spec.panels_per_octave);
    const auto& rule = gauss_rule(spec.gauss_points);
    return direction_mc_multi(
        n, hemisphere_area(n), spec.samples, spec.seed, stream, spec.threads, m,
        [&](const double* w, double* out) {
            std::vector<Kahan> acc(m);
            std::vector<double> vals(m);
            double x[kMaxDim];
            for (size_t p = 0; p + 1 < panels.size(); ++p) {
                const double mid = 0.5 * (panels[p] + panels[p + 1]);
                const double half = 0.5 * (panels[p + 1] - panels[p]);
                for (const auto& [node, wgt] : rule) {
                    const double r = mid + half * node;
                    for (int i = 0; i < n; ++i) x[i] = r * w[i];
                    f(x, vals.data());
                    const double jac = wgt * half * std::pow(r, n - 1);
                    for (int t = 0; t < m; ++t) acc[t].add(jac * vals[t]);
                }
            }
            for (int t = 0; t < m; ++t) out[t] = acc[t].sum();
        });
}

std::vector<McResult> integrate_sphere_multi(int n, double rho, int m, const MultiPointFn& f,
                                             const QuadratureSpec& spec, uint32_t stream) {
    const double area = hemisphere_area(n) * std::pow(rho, n - 1);
    return direction_mc_multi(n, area, spec.samples, spec.seed, stream, spec.threads, m,
                              [&](const double* w, double* out) {
                                  double x[kMaxDim];
                                  for (int i = 0; i < n; ++i) x[i] = rho * w[i];
                                  f(x, out);
                              });
}

std::vector<McResult> integrate_exterior_multi(int n, double a, int m, const MultiPointFn& f,
                                               const QuadratureSpec& spec, uint32_t stream) {
    std::vector<double> tpts{0.0};
    for (int i = 12; i >= 0; --i) tpts.push_back(std::pow(0.5, i));
    const auto& rule = gauss_rule(spec.gauss_points);
    return direction_mc_multi(
        n, hemisphere_area(n), spec.samples, spec.seed, stream, spec.threads, m,
        [&](const double* w, double* out) {
            std::vector<Kahan> acc(m);
            std::vector<double> vals(m);
            double x[kMaxDim];
            for (size_t p = 0; p + 1 < tpts.size(); ++p) {
                const double mid = 0.5 * (tpts[p] + tpts[p + 1]);
                const double half = 0.5 * (tpts[p + 1] - tpts[p]);
                for (const auto& [node, wgt] : rule) {
                    const double tt = mid + half * node;
                    if (tt <= 0) continue;
                    const double r = a / tt;
                    for (int i = 0; i < n; ++i) x[i] = r * w[i];
                    f(x, vals.data());
                    const double jac = wgt * half * std::pow(r, n - 1) * a / (tt * tt);
                    for (int t = 0; t < m; ++t) acc[t].add(jac * vals[t]);
                }
            }
            for (int t = 0; t < m; ++t) out[t] = acc[t].sum();
        });
}

double integrate_radial(double a, double b, double cluster,
                        const std::function<double(double)>& f, int gauss_points,
                        int per_octave) {
    auto panels = radial_panels(a, b, cluster, per_octave);
    const auto& rule = gauss_rule(gauss_points);
    Kahan acc;
    for (size_t p = 0; p + 1 < panels.size(); ++p) {
        const double mid = 0.5 * (panels[p] + panels[p + 1]);
        const double half = 0.5 * (panels[p + 1] - panels[p]);
        for (const auto& [node, wgt] : rule) acc.add(wgt * half * f(mid + half * node));
    }
    return acc.sum();
}

double integrate_radial_exterior(double a, const std::function<double(double)>& f,
                                 int gauss_points, int per_octave) {
    (void)per_octave;
    std::vector<double> tpts{0.0};
    for (int i = 28; i >= 0; --i) tpts.push_back(std::pow(0.5, i));
    const auto& rule = gauss_rule(gauss_points);
    Kahan acc;
    for (size_t p = 0; p + 1 < tpts.size(); ++p) {
        const double mid = 0.5 * (tpts[p] + tpts[p + 1]);
        const double half = 0.5 * (tpts[p + 1] - tpts[p]);
        for (const auto& [node, wgt] : rule) {
            const double t = mid + half * node;
            if (t <= 0) continue;
            acc.add(wgt * half * f(a / t) * a / (t * t));
        }
    }
    return acc.sum();
}

double weight_profile_integral(int n, double eps, double delta, int q) {
    // area(S+) * int_0^delta r^{n-1} (eps+r)^q dr via binomial expansion of
    // r^{n-1} = ((eps+r) - eps)^{n-1}; log term when q + j = -1.
    double total = 0;
    double binom = 1;
    for (int j = 0; j <= n - 1; ++j) {
        if (j > 0) binom = binom * (n - j) / j;
        const double sign = ((n - 1 - j) % 2 == 0) ? 1.0 : -1.0;
        const double cpow = std::pow(eps, n - 1 - j);
        const int e = q + j;
        const double upper = eps + delta;
        double piece;
        if (e == -1)
            piece = std::log(upper / eps);
        else
            piece = (std::pow(upper, e + 1) - std::pow(eps, e + 1)) / (e + 1);
        total += sign * binom * cpow * piece;
    }
    return hemisphere_area(n) * total;
}

}  // namespace ytf::quad
