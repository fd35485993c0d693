#include "wva/montecarlo.hpp"

#include <cmath>
#include <limits>
#include <thread>

#include "wva/rng.hpp"

namespace wva {

namespace {

// Online central moments up to order four (Pebay's single-pass update),
// merged associatively across workers.
struct Moments4 {
    std::uint64_t n = 0;
    double mean = 0, m2 = 0, m3 = 0, m4 = 0;

    void add(double x) {
        const double n1 = static_cast<double>(n);
        ++n;
        const double nn = static_cast<double>(n);
        const double delta = x - mean;
        const double dn = delta / nn;
        const double dn2 = dn * dn;
        const double t1 = delta * dn * n1;
        mean += dn;
        m4 += t1 * dn2 * (nn * nn - 3.0 * nn + 3.0) + 6.0 * dn2 * m2 - 4.0 * dn * m3;
        m3 += t1 * dn * (nn - 2.0) - 3.0 * dn * m2;
        m2 += t1;
    }

    void merge(const Moments4& o) {
        if (o.n == 0) return;
        if (n == 0) {
            *this = o;
            return;
        }
        const double na = static_cast<double>(n), nb = static_cast<double>(o.n);
        const double nt = na + nb;
        const double delta = o.mean - mean;
        const double d2 = delta * delta;
        const double m4t = m4 + o.m4 +
                           d2 * d2 * na * nb * (na * na - na * nb + nb * nb) / (nt * nt * nt) +
                           6.0 * d2 * (na * na * o.m2 + nb * nb * m2) / (nt * nt) +
                           4.0 * delta * (na * o.m3 - nb * m3) / nt;
        const double m3t = m3 + o.m3 + d2 * delta * na * nb * (na - nb) / (nt * nt) +
                           3.0 * delta * (na * o.m2 - nb * m2) / nt;
        const double m2t = m2 + o.m2 + d2 * na * nb / nt;
        mean += delta * nb / nt;
        m2 = m2t;
        m3 = m3t;
        m4 = m4t;
        n += o.n;
    }
};

struct Welford {
    std::uint64_t n = 0;
    double mean = 0, m2 = 0;

    void add(double x) {
        ++n;
        const double delta = x - mean;
        mean += delta / static_cast<double>(n);
        m2 += delta * (x - mean);
    }

    void merge(const Welford& o) {
        if (o.n == 0) return;
        if (n == 0) {
            *this = o;
            return;
        }
        const double na = static_cast<double>(n), nb = static_cast<double>(o.n);
        const double delta = o.mean - mean;
        m2 += o.m2 + delta * delta * na * nb / (na + nb);
        mean += delta * nb / (na + nb);
        n += o.n;
    }
};

struct WorkerAccum {
    std::uint64_t total = 0;
    Moments4 x;      // accepted readouts
    Welford xsq;     // their squares

    void merge(const WorkerAccum& o) {
        total += o.total;
        x.merge(o.x);
        xsq.merge(o.xsq);
    }
};

WorkerAccum simulate_range(const PureState& pre, const PureState& post,
                           const MeterConfig& m, const McConfig& cfg,
                           std::uint64_t trials, std::uint64_t stream_seed) {
    WorkerAccum acc;
    RandomStream rng(stream_seed);
    const auto rho_i = DensityMatrix::from_pure(pre);
    const double r11 = rho_i.r11();
    const double readout_sd_p = 1.0 / (2.0 * m.sigma());

    for (std::uint64_t t = 0; t < trials; ++t) {
        ++acc.total;
        // Noise shift first, then the readout (matching the joint densities).
        double shift = 0.0;
        if (cfg.noise.kind != NoiseKind::None)
            shift = cfg.noise.width * rng.normal();

        double readout;  // what the detector records
        double pacc;
        if (cfg.basis == Basis::X) {
            const double center = rng.uniform() < r11 ? m.d() : -m.d();
            const double y = center + m.sigma() * rng.normal();
            // x0 jitter shifts the record; p0 jitter is a pure phase here.
            readout = cfg.noise.kind == NoiseKind::X0Jitter ? y + shift : y;
            pacc = postselect_probability(bayes_update_x(rho_i, y, m), post);
        } else {
            const double p0 = cfg.noise.kind == NoiseKind::P0Jitter ? shift : 0.0;
            readout = p0 + readout_sd_p * rng.normal();
            pacc = postselect_probability(bayes_update_p(rho_i, readout, m), post);
        }

        const bool accept = !cfg.postselect || rng.uniform() < pacc;
        if (accept) {
            acc.x.add(readout);
            acc.xsq.add(readout * readout);
        }
    }
    return acc;
}

} // namespace

McEstimate run_trials(const PureState& pre, const PureState& post,
                      const MeterConfig& m, const McConfig& cfg,
                      unsigned threads) {
    if (cfg.trials == 0)
        throw std::invalid_argument("run_trials: need at least one trial");
    if (threads == 0) threads = 1;
    if (threads > cfg.trials) threads = static_cast<unsigned>(cfg.trials);

    WorkerAccum acc;
    if (threads == 1) {
        acc = simulate_range(pre, post, m, cfg, cfg.trials, worker_seed(cfg.seed, 0));
    } else {
        std::vector<WorkerAccum> parts(threads);
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned w = 0; w < threads; ++w) {
            const std::uint64_t lo = cfg.trials * w / threads;
            const std::uint64_t hi = cfg.trials * (w + 1) / threads;
            pool.emplace_back([&, w, lo, hi] {
                parts[w] = simulate_range(pre, post, m, cfg, hi - lo,
                                          worker_seed(cfg.seed, w));
            });
        }
        for (auto& th : pool) th.join();
        for (const auto& part : parts) acc.merge(part);  // fixed merge order
    }

    McEstimate est;
    est.n_total = acc.total;
    est.n_accepted = acc.x.n;
    const double n_tot = static_cast<double>(acc.total);
    est.gamma_hat = static_cast<double>(acc.x.n) / n_tot;
    est.gamma_se = std::sqrt(est.gamma_hat * (1.0 - est.gamma_hat) / n_tot);

    if (acc.x.n < 2) {
        est.degenerate = true;
        const double nan = std::numeric_limits<double>::quiet_NaN();
        est.mean_hat = est.mean_se = est.second_moment_hat = est.second_moment_se =
            est.var_hat = est.var_se = nan;
        return est;
    }

    const double n = static_cast<double>(acc.x.n);
    est.mean_hat = acc.x.mean;
    est.mean_se = std::sqrt(acc.x.m2 / (n - 1.0) / n);
    est.second_moment_hat = acc.xsq.mean;
    est.second_moment_se = std::sqrt(acc.xsq.m2 / (n - 1.0) / n);
    est.var_hat = acc.x.m2 / (n - 1.0);
    const double m4 = acc.x.m4 / n;
    const double var_of_var =
        (m4 - (n - 3.0) / (n - 1.0) * est.var_hat * est.var_hat) / n;
    est.var_se = std::sqrt(std::max(var_of_var, 0.0));
    return est;
}

McValidation validate_against_analytics(const PureState& pre, const PureState& post,
                                        const MeterConfig& m, const McConfig& cfg,
                                        unsigned threads, bool corrupt_reference,
                                        const std::string& case_name) {
    double gamma_ref, mean_ref, second_ref;
    if (cfg.basis == Basis::X) {
        gamma_ref = postselection_probability_x(pre, post, m);
        const double j =
            cfg.noise.kind == NoiseKind::X0Jitter ? cfg.noise.width : 0.0;
        const auto mom = x_basis_x0_moments(pre, post, m, j);
        mean_ref = mom.mean;
        second_ref = mom.second_moment;
    } else {
        const auto rep = cfg.noise.kind == NoiseKind::P0Jitter
                             ? p_basis_p0_moments(pre, post, m, cfg.noise.width)
                             : p_basis_x0_moments(pre, post, m);
        gamma_ref = rep.gamma;
        mean_ref = rep.mean_p;
        second_ref = rep.second_moment_p;
    }

    const McEstimate est = run_trials(pre, post, m, cfg, threads);

    McValidation v;
    v.case_name = case_name;
    v.estimate = est;
    auto check = [&](const std::string& name, double ref, double emp, double se) {
        McCheck c;
        c.quantity = name;
        c.analytic = corrupt_reference ? ref + 10.0 * se : ref;
        c.empirical = emp;
        c.std_error = se;
        c.z = se > 0.0 ? (emp - c.analytic) / se : (emp == c.analytic ? 0.0 : std::numeric_limits<double>::infinity());
        c.pass = std::isfinite(c.z) ? std::abs(c.z) <= 4.0 : false;
        if (se == 0.0 && emp == c.analytic) c.pass = true;
        v.checks.push_back(c);
    };
    check("gamma", gamma_ref, est.gamma_hat, est.gamma_se);
    check("mean", mean_ref, est.mean_hat, est.mean_se);
    check("second_moment", second_ref, est.second_moment_hat, est.second_moment_se);
    v.pass = !est.degenerate;
    for (const auto& c : v.checks) v.pass = v.pass && c.pass;
    return v;
}

} // namespace wva
