#include "sievetk/circle_method.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "sievetk/group_fourier.hpp"

namespace sievetk {

namespace {

constexpr std::int64_t kDensityCap = 1 << 21;  // resource guard on 2M+1

// Extremal value of |sum_b e(b/q) u_b| over u_b in [0, 1/q] with given total.
// For q >= 3 this is S(delta, q); the same interval-of-classes argument at
// q = 2 gives min(delta, 1 - delta).
double rou_envelope(double delta, int q) {
    if (q >= 3) return s_delta_m(delta, q);
    return std::min(delta, 1.0 - delta);
}

}  // namespace

double BlockProfile::nu() const { return 1.0 / std::sqrt(static_cast<double>(q0)); }

double IntegerDensity::mean() const {
    return pairwise_sum(values) / static_cast<double>(2 * M + 1);
}

IntegerDensity IntegerDensity::constant(std::int64_t M, double delta, double beta) {
    IntegerDensity h;
    h.M = M;
    h.values.assign(static_cast<std::size_t>(2 * M + 1), 0.0);
    const auto B = static_cast<std::int64_t>(std::floor(beta * static_cast<double>(M)));
    for (std::int64_t k = -B; k <= B; ++k) h.at(k) = delta;
    return h;
}

IntegerDensity IntegerDensity::ap_indicator(std::int64_t M, std::int64_t q, std::int64_t r) {
    IntegerDensity h;
    h.M = M;
    h.values.assign(static_cast<std::size_t>(2 * M + 1), 0.0);
    for (std::int64_t k = -M; k <= M; ++k) {
        const std::int64_t residue = ((k % q) + q) % q;
        if (residue == ((r % q) + q) % q) h.at(k) = 1.0;
    }
    return h;
}

IntegerDensity IntegerDensity::indicator_zero(std::int64_t M) {
    IntegerDensity h;
    h.M = M;
    h.values.assign(static_cast<std::size_t>(2 * M + 1), 0.0);
    h.at(0) = 1.0;
    return h;
}

IntegerDensity IntegerDensity::block_random(std::int64_t M, double delta, double beta, int q0,
                                            double jitter_amplitude, Rng& rng) {
    IntegerDensity h;
    h.M = M;
    h.values.assign(static_cast<std::size_t>(2 * M + 1), 0.0);
    BlockProfile profile{delta, beta, q0};
    const double nu = profile.nu();
    const auto block = static_cast<std::int64_t>(
        std::llround(nu * nu * nu * static_cast<double>(M)));
    const auto B = static_cast<std::int64_t>(std::floor(beta * static_cast<double>(M)));
    for (std::int64_t k = -B; k <= B; ++k) h.at(k) = delta;
    if (block >= 1) {
        // Constant offset per block, clipped so values stay in [0,1].
        for (std::int64_t start = -B; start <= B; start += block) {
            const double jitter = rng.uniform(-jitter_amplitude, jitter_amplitude);
            for (std::int64_t k = start; k < std::min(start + block, B + 1); ++k)
                h.at(k) = std::clamp(delta + jitter, 0.0, 1.0);
        }
    }
    h.profile = profile;
    return h;
}

std::complex<double> int_fourier(const IntegerDensity& h, double theta) {
    // Recurrence for e(k theta) keeps this O(M) with two sin/cos calls.
    const std::complex<double> stepw = unit_phase(theta);
    std::complex<double> w = unit_phase(-static_cast<double>(h.M) * theta);
    std::complex<double> acc{0.0, 0.0};
    for (std::int64_t k = -h.M; k <= h.M; ++k) {
        acc += h.at(k) * w;
        w *= stepw;
    }
    return acc / static_cast<double>(2 * h.M + 1);
}

ArcDecomposition ArcDecomposition::make(int q0, std::int64_t M) {
    if (q0 < 1) throw std::invalid_argument("ArcDecomposition: q0 must be >= 1");
    ArcDecomposition d;
    d.q0 = q0;
    d.Q = static_cast<double>(M) / std::sqrt(static_cast<double>(q0));
    return d;
}

ArcDecomposition::Classified ArcDecomposition::classify(double theta) const {
    double t = theta - std::floor(theta);  // reduce mod 1
    const double dist0 = std::min(t, 1.0 - t);
    if (dist0 <= 1.0 / Q) return {Family::major, 1, 0};
    for (int q = 2; q <= q0; ++q) {
        for (int a = 1; a < q; ++a) {
            if (std::gcd(a, q) != 1) continue;
            if (std::abs(t - static_cast<double>(a) / q) <= 1.0 / (q * Q))
                return {Family::m1, q, a};
        }
    }
    return {Family::m2, 0, 0};
}

double max_block_deviation(const IntegerDensity& h) {
    if (!h.profile) throw std::invalid_argument("max_block_deviation: no block profile");
    const BlockProfile& p = *h.profile;
    const double nu = p.nu();
    const auto block = static_cast<std::int64_t>(
        std::llround(nu * nu * nu * static_cast<double>(h.M)));
    if (block < 1) return 0.0;
    const auto B = static_cast<std::int64_t>(std::floor(p.beta * static_cast<double>(h.M)));
    double worst = 0.0;
    // Full blocks (r nu^3 M, (r+1) nu^3 M] inside the support.
    for (std::int64_t start = -B; start + block <= B + 1; start += block) {
        double avg = 0.0;
        for (std::int64_t k = start; k < start + block; ++k) avg += h.at(k);
        avg /= static_cast<double>(block);
        worst = std::max(worst, std::abs(avg - p.delta) / (nu * nu));
    }
    return worst;
}

double windowed_triple_convolution_direct(const IntegerDensity& h1, const IntegerDensity& h2,
                                          const IntegerDensity& h3, std::int64_t K) {
    if (K < 1) throw std::invalid_argument("windowed_triple_convolution: K must be >= 1");
    const std::int64_t M = std::max({h1.M, h2.M, h3.M});
    if (2 * M + 1 > kDensityCap)
        throw std::length_error("windowed_triple_convolution: density beyond configured cap");
    // conv12(s) = sum_{k2} h1(s - k2) h2(k2), s in [-(M1+M2), M1+M2].
    const std::int64_t S = h1.M + h2.M;
    std::vector<double> conv12(static_cast<std::size_t>(2 * S + 1), 0.0);
    for (std::int64_t k2 = -h2.M; k2 <= h2.M; ++k2) {
        const double v2 = h2.at(k2);
        if (v2 == 0.0) continue;
        for (std::int64_t k1 = -h1.M; k1 <= h1.M; ++k1)
            conv12[static_cast<std::size_t>(k1 + k2 + S)] += h1.at(k1) * v2;
    }
    // Prefix sums of h3 for the window sum over l in [0, K).
    std::vector<long double> pre(static_cast<std::size_t>(2 * h3.M + 2), 0.0L);
    for (std::int64_t k = -h3.M; k <= h3.M; ++k)
        pre[static_cast<std::size_t>(k + h3.M + 1)] =
            pre[static_cast<std::size_t>(k + h3.M)] + static_cast<long double>(h3.at(k));
    auto h3_range = [&](std::int64_t lo, std::int64_t hi) -> long double {
        lo = std::max(lo, -h3.M);
        hi = std::min(hi, h3.M);
        if (lo > hi) return 0.0L;
        return pre[static_cast<std::size_t>(hi + h3.M + 1)] -
               pre[static_cast<std::size_t>(lo + h3.M)];
    };
    long double total = 0.0L;
    for (std::int64_t s = -S; s <= S; ++s) {
        const double c = conv12[static_cast<std::size_t>(s + S)];
        if (c == 0.0) continue;
        total += static_cast<long double>(c) * h3_range(-s, K - 1 - s);
    }
    return static_cast<double>(total);
}

double windowed_triple_convolution_fourier(const IntegerDensity& h1, const IntegerDensity& h2,
                                           const IntegerDensity& h3, std::int64_t K) {
    const std::int64_t M = std::max({h1.M, h2.M, h3.M});
    const std::size_t P = next_pow2(static_cast<std::size_t>(4 * (3 * M + K)));
    auto grid_transform = [&](const IntegerDensity& h) {
        std::vector<std::complex<double>> a(P, {0.0, 0.0});
        for (std::int64_t k = -h.M; k <= h.M; ++k) {
            const std::size_t idx =
                static_cast<std::size_t>(((k % static_cast<std::int64_t>(P)) +
                                          static_cast<std::int64_t>(P)) %
                                         static_cast<std::int64_t>(P));
            a[idx] += h.at(k);
        }
        fft_pow2(a, +1);  // a[t] = sum_k h(k) e(k t / P)
        return a;
    };
    const auto A1 = grid_transform(h1);
    const auto A2 = grid_transform(h2);
    const auto A3 = grid_transform(h3);
    // Window kernel W(t/P) = sum_{l < K} e(-l t / P).
    long double total_re = 0.0L;
    for (std::size_t t = 0; t < P; ++t) {
        std::complex<double> w;
        if (t == 0) {
            w = {static_cast<double>(K), 0.0};
        } else {
            const std::complex<double> z = unit_phase(-static_cast<double>(t) / P);
            w = (1.0 - std::pow(z, static_cast<double>(K))) / (1.0 - z);
        }
        const std::complex<double> prod = A1[t] * A2[t] * A3[t] * w;
        total_re += prod.real();
    }
    return static_cast<double>(total_re / static_cast<long double>(P));
}

double lattice_window_count(std::int64_t M, std::int64_t B, std::int64_t K) {
    long double s = 0.0L;
    for (std::int64_t k = -B; k <= B; ++k)
        s += static_cast<long double>(2 * M - std::llabs(k));
    return static_cast<double>(s * static_cast<long double>(K));
}

std::int64_t factorial_checked(int q0) {
    if (q0 < 1) throw std::invalid_argument("factorial: q0 must be >= 1");
    std::int64_t f = 1;
    for (int i = 2; i <= q0; ++i) {
        if (f > std::numeric_limits<std::int64_t>::max() / i)
            throw std::overflow_error("factorial overflows int64");
        f *= i;
    }
    return f;
}

TripconvBound tripconv_lower_bound(double delta1, double delta2, double delta3, double beta,
                                   std::int64_t M, std::int64_t K, int q0) {
    for (double d : {delta1, delta2, delta3})
        if (!(d > 0.0 && d <= 0.5))
            throw std::invalid_argument("tripconv_lower_bound: delta_j must lie in (0, 1/2]");
    const double err_scale = std::pow(static_cast<double>(q0), -0.25);
    if (!(beta > err_scale && beta <= 1.0))
        throw std::invalid_argument("tripconv_lower_bound: beta must lie in (Q0^{-1/4}, 1]");
    TripconvBound out;
    out.error_scale = err_scale;
    const double cross = std::sin(kPi * delta2) / kPi *
                         std::sqrt((delta1 - delta1 * delta1) * (delta3 - delta3 * delta3));
    out.bracket = delta1 * delta2 * delta3 * (1.0 - beta / 4.0) - cross;
    const double width = static_cast<double>(2 * M + 1);
    out.value = beta * static_cast<double>(K) * width * width * out.bracket;
    return out;
}

CheckReport verify_tripconvZ(const IntegerDensity& h1, const IntegerDensity& h2,
                             const IntegerDensity& h3, std::int64_t K, int q0, double beta,
                             double deviation_budget, std::uint64_t seed) {
    const IntegerDensity* hs[3] = {&h1, &h2, &h3};
    double worst_dev = 0.0;
    double deltas[3];
    for (int j = 0; j < 3; ++j) {
        if (!hs[j]->profile)
            throw std::invalid_argument("verify_tripconvZ: densities need block profiles");
        deltas[j] = hs[j]->profile->delta;
        worst_dev = std::max(worst_dev, max_block_deviation(*hs[j]));
    }
    const double direct = windowed_triple_convolution_direct(h1, h2, h3, K);
    const double fourier = windowed_triple_convolution_fourier(h1, h2, h3, K);
    const double route_rel =
        std::abs(direct - fourier) / std::max(1.0, std::abs(direct));
    const TripconvBound bound =
        tripconv_lower_bound(deltas[0], deltas[1], deltas[2], beta, h1.M, K, q0);

    json inputs{{"M", h1.M}, {"K", K}, {"q0", q0}, {"beta", beta},
                {"delta", {deltas[0], deltas[1], deltas[2]}},
                {"deviation_budget", deviation_budget}};
    json values{{"direct", direct},
                {"fourier_route", fourier},
                {"route_rel_gap", route_rel},
                {"max_block_deviation_nu2", worst_dev}};
    json bounds{{"lower_bound", bound.value},
                {"bracket", bound.bracket},
                {"dropped_error_scale", bound.error_scale}};

    if (worst_dev > deviation_budget)
        return CheckReport::out_of_hypothesis("circle.tripconv", "z-triple-convolution-lower",
                                              inputs, values, seed);
    const double margin = std::min(direct - bound.value, (1e-6 - route_rel) * 1.0);
    return CheckReport::asserted("circle.tripconv", "z-triple-convolution-lower", inputs,
                                 values, bounds, margin, seed);
}

CheckReport fourier_rational_check(const IntegerDensity& h, int a, int q) {
    if (q < 2 || a < 1 || a >= q || std::gcd(a, q) != 1)
        throw std::invalid_argument("fourier_rational_check: need 2 <= q, 1 <= a < q, (a,q)=1");
    const double N = static_cast<double>(h.M);
    const double width = static_cast<double>(2 * h.M + 1);
    // Class masses v_c = E h 1_{k = c (q)}; then hcheck(a/q) = sum_b e(b/q) w_b
    // with w_b = v_{b abar}.
    std::vector<double> v(static_cast<std::size_t>(q), 0.0);
    for (std::int64_t k = -h.M; k <= h.M; ++k) {
        const int c = static_cast<int>(((k % q) + q) % q);
        v[static_cast<std::size_t>(c)] += h.at(k);
    }
    for (double& x : v) x /= width;
    std::complex<double> sum{0.0, 0.0};
    double W = 0.0, delta_hat = 0.0;
    for (int c = 0; c < q; ++c) {
        const int b = static_cast<int>((static_cast<long>(c) * a) % q);
        sum += v[static_cast<std::size_t>(c)] * unit_phase(static_cast<double>(b) / q);
        W = std::max(W, v[static_cast<std::size_t>(c)]);
        delta_hat += v[static_cast<std::size_t>(c)];
    }
    const double value = std::abs(sum);
    json inputs{{"M", h.M}, {"a", a}, {"q", q}, {"delta", delta_hat}};
    if (W <= 0.0) {
        json values{{"abs_fourier", value}};
        return CheckReport::asserted("circle.rational-bound", "minor-arc-roots-of-unity",
                                     inputs, values, json{{"bound", 0.0}}, 0.0 - value);
    }
    const double scale = W * q;  // = 1 + c q / N with the measured max class weight
    const double c_measured = (scale - 1.0) * N / q;
    const double delta_rescaled = std::min(delta_hat / scale, 1.0);
    const double bound = scale * rou_envelope(delta_rescaled, q) + 1e-12;
    json values{{"abs_fourier", value}, {"max_class_weight", W}, {"c", c_measured}};
    json bounds{{"rescaled_bound", bound},
                {"naive_bound", scale * rou_envelope(std::min(delta_hat, 1.0), q)}};
    return CheckReport::asserted("circle.rational-bound", "minor-arc-roots-of-unity", inputs,
                                 values, bounds, bound - value);
}

MinorArcSurvey minor_arc_sup_check(const IntegerDensity& h, int q0, double Q1, double Q2,
                                   int samples, std::uint64_t seed) {
    if (!(static_cast<double>(h.M) >= Q2 && Q2 >= Q1 && Q1 >= 1.0))
        throw std::invalid_argument("minor_arc_sup_check: need M >= Q2 >= Q1 >= 1");
    const ArcDecomposition arcs = ArcDecomposition::make(q0, h.M);
    const double delta = h.mean();
    MinorArcSurvey out;
    out.scale_n_q1q2 = static_cast<double>(h.M) / (Q1 * Q2);
    out.scale_q2_n = Q2 / static_cast<double>(h.M);
    out.scale_1_q1 = 1.0 / Q1;
    for (int i = 0; i < samples; ++i) {
        const double theta = (static_cast<double>(i) + 0.5) / samples;
        if (arcs.classify(theta).family != ArcDecomposition::Family::m2) continue;
        out.sup_abs = std::max(out.sup_abs, std::abs(int_fourier(h, theta)));
    }
    out.excess = out.sup_abs - std::sin(kPi * delta) / kPi;

    // Hard assertion at sampled rationals with denominators in [Q1, Q2].
    Rng rng(splitmix64(seed ^ 0x6d696e6f72ULL));
    double worst_margin = 1.0;
    json rationals = json::array();
    const int q_lo = std::max(2, static_cast<int>(std::ceil(Q1)));
    const int q_hi = static_cast<int>(std::min(Q2, 512.0));
    for (int trial = 0; trial < 32 && q_hi >= q_lo; ++trial) {
        const int q = q_lo + static_cast<int>(rng.below(static_cast<std::uint64_t>(q_hi - q_lo + 1)));
        int a = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(q - 1)));
        while (std::gcd(a, q) != 1) a = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(q - 1)));
        const CheckReport r = fourier_rational_check(h, a, q);
        worst_margin = std::min(worst_margin, r.margin);
        rationals.push_back({{"a", a}, {"q", q}, {"margin", r.margin}});
    }
    json inputs{{"M", h.M}, {"q0", q0}, {"Q1", Q1}, {"Q2", Q2}, {"samples", samples}};
    json values{{"sup_abs", out.sup_abs},
                {"excess_over_sin", out.excess},
                {"scales", {out.scale_n_q1q2, out.scale_q2_n, out.scale_1_q1}},
                {"rationals", rationals}};
    out.report = CheckReport::asserted("circle.minor-arc", "minor-arc-sup-bound", inputs,
                                       values, json::object(), worst_margin, seed);
    return out;
}

double parseval_gap(const IntegerDensity& h, std::int64_t nodes) {
    if (nodes <= 0) nodes = 8 * h.M + 1;
    long double integral = 0.0L;
    for (std::int64_t t = 0; t < nodes; ++t) {
        const double theta = static_cast<double>(t) / static_cast<double>(nodes);
        integral += std::norm(int_fourier(h, theta));
    }
    integral /= static_cast<long double>(nodes);
    long double rhs = 0.0L;
    for (double x : h.values) rhs += static_cast<long double>(x) * x;
    rhs /= static_cast<long double>(2 * h.M + 1);
    return std::abs(static_cast<double>(integral - rhs));
}

bool window_kernel_cancels(std::int64_t K, int q) {
    if (q < 2) return false;
    return K % q == 0;
}

}  // namespace sievetk
