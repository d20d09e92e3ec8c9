#include "sievetk/group_fourier.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace sievetk {

FiniteAbelianGroup FiniteAbelianGroup::make(std::vector<int> moduli) {
    if (moduli.empty()) moduli.push_back(1);
    FiniteAbelianGroup g;
    g.moduli = std::move(moduli);
    g.order = 1;
    for (int n : g.moduli) {
        if (n < 1) throw std::invalid_argument("group modulus must be >= 1");
        if (g.order > 1'000'000 / n)
            throw std::invalid_argument("group order too large");
        g.order *= n;
    }
    g.strides.resize(g.moduli.size());
    int stride = 1;
    for (std::size_t i = g.moduli.size(); i-- > 0;) {
        g.strides[i] = stride;
        stride *= g.moduli[i];
    }
    g.roots.resize(g.moduli.size());
    for (std::size_t i = 0; i < g.moduli.size(); ++i) {
        g.roots[i].resize(g.moduli[i]);
        for (int k = 0; k < g.moduli[i]; ++k)
            g.roots[i][k] = unit_phase(static_cast<double>(k) / g.moduli[i]);
    }
    return g;
}

std::vector<int> FiniteAbelianGroup::tuple_of(int idx) const {
    std::vector<int> t(moduli.size());
    for (std::size_t i = 0; i < moduli.size(); ++i) {
        t[i] = idx / strides[i];
        idx %= strides[i];
    }
    return t;
}

int FiniteAbelianGroup::index_of(std::span<const int> tuple) const {
    int idx = 0;
    for (std::size_t i = 0; i < moduli.size(); ++i) idx += (tuple[i] % moduli[i]) * strides[i];
    return idx;
}

int FiniteAbelianGroup::compose(int a, int b) const {
    int idx = 0;
    for (std::size_t i = 0; i < moduli.size(); ++i) {
        const int ai = a / strides[i] % moduli[i];
        const int bi = b / strides[i] % moduli[i];
        int ci = ai + bi;
        if (ci >= moduli[i]) ci -= moduli[i];
        idx += ci * strides[i];
    }
    return idx;
}

int FiniteAbelianGroup::inverse(int a) const {
    int idx = 0;
    for (std::size_t i = 0; i < moduli.size(); ++i) {
        const int ai = a / strides[i] % moduli[i];
        idx += (ai == 0 ? 0 : moduli[i] - ai) * strides[i];
    }
    return idx;
}

int FiniteAbelianGroup::character_order(int chi) const {
    long ord = 1;
    for (std::size_t i = 0; i < moduli.size(); ++i) {
        const int ci = chi / strides[i] % moduli[i];
        const int oi = moduli[i] / std::gcd(ci, moduli[i]);
        ord = std::lcm(ord, static_cast<long>(oi));
    }
    return static_cast<int>(ord);
}

std::complex<double> FiniteAbelianGroup::character_value(int chi, int b) const {
    std::complex<double> v{1.0, 0.0};
    for (std::size_t i = 0; i < moduli.size(); ++i) {
        const int ci = chi / strides[i] % moduli[i];
        const int bi = b / strides[i] % moduli[i];
        v *= roots[i][static_cast<std::size_t>(static_cast<long>(ci) * bi % moduli[i])];
    }
    return v;
}

GroupDensity GroupDensity::make(FiniteAbelianGroup g, std::vector<double> values) {
    if (static_cast<int>(values.size()) != g.order)
        throw std::invalid_argument("density size must equal the group order");
    for (double v : values)
        if (!(v >= 0.0 && v <= 1.0))
            throw std::invalid_argument("density values must lie in [0,1]");
    GroupDensity d;
    d.group = std::move(g);
    d.values = std::move(values);
    const int n = d.group.order;
    d.mean = pairwise_sum(d.values) / n;
    d.fourier.resize(n);
    for (int chi = 0; chi < n; ++chi) {
        std::complex<double> acc{0.0, 0.0};
        for (int b = 0; b < n; ++b)
            acc += d.values[b] * std::conj(d.group.character_value(chi, b));
        d.fourier[chi] = acc / static_cast<double>(n);
    }
    return d;
}

GroupDensity GroupDensity::constant(FiniteAbelianGroup g, double delta) {
    const int n = g.order;
    return make(std::move(g), std::vector<double>(n, delta));
}

GroupDensity GroupDensity::random(FiniteAbelianGroup g, Rng& rng, double delta_lo,
                                  double delta_hi) {
    const int n = g.order;
    for (;;) {
        std::vector<double> u(n);
        double maxv = 0.0, sum = 0.0;
        for (double& x : u) {
            x = rng.uniform01();
            maxv = std::max(maxv, x);
            sum += x;
        }
        if (sum <= 0.0) continue;
        const double target = rng.uniform(delta_lo, delta_hi);
        const double scale = target * n / sum;
        if (scale * maxv > 1.0) continue;  // rejection keeps values inside [0,1]
        for (double& x : u) x *= scale;
        return make(g, std::move(u));
    }
}

FiniteAbelianGroup random_group(Rng& rng, int max_order, int max_factors) {
    for (;;) {
        const int t = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_factors)));
        std::vector<int> moduli(t);
        long order = 1;
        for (int& m : moduli) {
            m = 1 + static_cast<int>(rng.below(16));
            order *= m;
        }
        if (order <= max_order) return FiniteAbelianGroup::make(std::move(moduli));
    }
}

double orthogonality_defect(const FiniteAbelianGroup& g, int sample_pairs, Rng& rng) {
    double worst = 0.0;
    for (int s = 0; s < sample_pairs; ++s) {
        const int c1 = static_cast<int>(rng.below(static_cast<std::uint64_t>(g.order)));
        const int c2 = static_cast<int>(rng.below(static_cast<std::uint64_t>(g.order)));
        std::complex<double> acc{0.0, 0.0};
        for (int b = 0; b < g.order; ++b)
            acc += g.character_value(c1, b) * std::conj(g.character_value(c2, b));
        acc /= static_cast<double>(g.order);
        const double expect = (c1 == c2) ? 1.0 : 0.0;
        worst = std::max(worst, std::abs(acc - expect));
    }
    return worst;
}

double parseval_defect(const GroupDensity& g) {
    double lhs = 0.0;
    for (const auto& c : g.fourier) lhs += std::norm(c);
    double rhs = 0.0;
    for (double v : g.values) rhs += v * v;
    rhs /= g.group.order;
    return std::abs(lhs - rhs);
}

double s_delta_m(double delta, int m) {
    if (m < 3) throw std::invalid_argument("s_delta_m: m must be >= 3");
    if (!(delta >= 0.0 && delta <= 1.0))
        throw std::invalid_argument("s_delta_m: delta must lie in [0,1]");
    const double md = static_cast<double>(m);
    const double k = std::floor(delta * md);
    const std::complex<double> first{std::sin(kPi * k / md) / (md * std::sin(kPi / md)), 0.0};
    const std::complex<double> second =
        (delta - k / md) * unit_phase((k + 1.0) / (2.0 * md));
    return std::abs(first + second);
}

SdmScan max_s_over_m(double delta, int m_max) {
    if (m_max < 3) throw std::invalid_argument("max_s_over_m: m_max must be >= 3");
    SdmScan scan;
    scan.limit = std::sin(kPi * delta) / kPi;
    for (int m = 3; m <= m_max; ++m) {
        const double v = s_delta_m(delta, m);
        if (v > scan.value) {
            scan.value = v;
            scan.m_star = m;
        }
    }
    return scan;
}

CheckReport roots_of_unity_bound_check(std::span<const double> weights, int m,
                                       std::uint64_t seed) {
    if (static_cast<int>(weights.size()) != m)
        throw std::invalid_argument("roots_of_unity_bound_check: need exactly m weights");
    double delta = 0.0;
    for (int b = 0; b < m; ++b) {
        if (!(weights[b] >= 0.0 && weights[b] <= 1.0 / m + 1e-15))
            throw std::invalid_argument("weights must lie in [0, 1/m]");
        delta += weights[b];
    }
    std::complex<double> sum{0.0, 0.0};
    for (int b = 0; b < m; ++b)
        sum += weights[b] * unit_phase(static_cast<double>(b) / m);
    const double value = std::abs(sum);
    const double bound = s_delta_m(std::min(delta, 1.0), m) + 1e-12;
    json inputs{{"m", m}, {"delta", delta}};
    json values{{"abs_sum", value}};
    json bounds{{"s_delta_m", bound}};
    return CheckReport::asserted("group.roots-of-unity", "roots-of-unity-weight-bound",
                                 inputs, values, bounds, bound - value, seed);
}

double cal_F(double delta, double eta) {
    if (!(delta > 0.0 && delta <= 1.0 && eta >= 0.0 && eta <= delta))
        throw std::invalid_argument("cal_F: need 0 <= eta <= delta <= 1, delta > 0");
    const double quad = 0.25 * std::sqrt(1.0 + (4.0 * delta - 1.0) * (4.0 * delta - 1.0));
    return 1.0 - (1.0 - delta) / (delta * delta) * std::max(quad, delta - eta);
}

std::vector<int> quadratic_characters(const FiniteAbelianGroup& g) {
    // chi^2 = chi0 componentwise: 2 c_i = 0 (mod n_i), i.e. c_i = 0 or n_i/2.
    std::vector<int> chis;
    std::vector<int> tuple(g.moduli.size(), 0);
    for (;;) {
        int idx = 0;
        for (std::size_t i = 0; i < g.moduli.size(); ++i) idx += tuple[i] * g.strides[i];
        if (idx != 0) chis.push_back(idx);
        std::size_t i = 0;
        for (; i < g.moduli.size(); ++i) {
            if (g.moduli[i] % 2 == 0 && tuple[i] == 0) {
                tuple[i] = g.moduli[i] / 2;
                break;
            }
            tuple[i] = 0;
        }
        if (i == g.moduli.size()) break;
    }
    std::sort(chis.begin(), chis.end());
    return chis;
}

double coset_mass(const GroupDensity& g, int a, int psi) {
    // 1_{b in aH} = (1 + psi(a) psi(b)) / 2 for H = ker psi.
    const double psia = g.group.character_value(psi, a).real();
    double acc = 0.0;
    for (int b = 0; b < g.group.order; ++b) {
        const double psib = g.group.character_value(psi, b).real();
        acc += g.values[b] * 0.5 * (1.0 + psia * psib);
    }
    return acc / g.group.order;
}

double triple_convolution_direct(const GroupDensity& g, int a) {
    const int n = g.group.order;
    std::vector<double> partial(n);
    for (int b1 = 0; b1 < n; ++b1) {
        // b3 = a - b1 - b2 in additive notation.
        const int rem = g.group.compose(a, g.group.inverse(b1));
        double acc = 0.0;
        for (int b2 = 0; b2 < n; ++b2)
            acc += g.values[b2] * g.values[g.group.compose(rem, g.group.inverse(b2))];
        partial[b1] = g.values[b1] * acc;
    }
    return pairwise_sum(partial) / (static_cast<double>(n) * n);
}

double triple_convolution_char_sum(const GroupDensity& g, int a) {
    const int n = g.group.order;
    std::complex<double> acc{0.0, 0.0};
    for (int chi = 0; chi < n; ++chi) {
        const std::complex<double> f = g.fourier[chi];
        acc += std::conj(g.group.character_value(chi, a)) * f * f * f;
    }
    return acc.real();
}

namespace {
constexpr int kDirectRouteLimit = 4096;
}

CheckReport verify_fouriersym(const GroupDensity& g, int a, std::uint64_t seed) {
    const double delta = g.mean;
    const std::vector<int> quads = quadratic_characters(g.group);
    double eta = delta;
    for (int psi : quads) eta = std::min(eta, 2.0 * coset_mass(g, a, psi));

    const double char_route = triple_convolution_char_sum(g, a);
    double value = char_route;
    double route_gap = 0.0;
    if (g.group.order <= kDirectRouteLimit) {
        const double direct = triple_convolution_direct(g, a);
        route_gap = std::abs(direct - char_route);
        value = direct;
    }

    json inputs{{"moduli", g.group.moduli}, {"a", a}, {"delta", delta}, {"eta", eta}};
    json values{{"conv_normalized", value},
                {"conv_char_route", char_route},
                {"route_gap", route_gap}};

    if (!(delta >= 0.48 && delta <= 0.5))
        return CheckReport::out_of_hypothesis("group.tripconv", "group-triple-convolution-lower",
                                              inputs, values, seed);

    const double bound = delta * delta * delta * cal_F(delta, eta);
    // Real-character window: psi(a) ghat(psi) must land in [-delta+eta_psi, delta].
    double real_char_margin = 1.0;
    for (int psi : quads) {
        const double eta_psi = 2.0 * coset_mass(g, a, psi);
        const double v = g.group.character_value(psi, a).real() * g.fourier[psi].real();
        real_char_margin = std::min(real_char_margin, v - (-delta + eta_psi) + 1e-12);
        real_char_margin = std::min(real_char_margin, delta - v + 1e-12);
    }
    json bounds{{"lower_bound", bound}, {"route_tol", 1e-9}};
    const double margin =
        std::min({value - bound + 1e-9, 1e-9 - route_gap, real_char_margin});
    return CheckReport::asserted("group.tripconv", "group-triple-convolution-lower",
                                 inputs, values, bounds, margin, seed);
}

CheckReport verify_complexbound(const GroupDensity& g, std::uint64_t seed) {
    const double delta = g.mean;
    double worst = 0.0;
    int worst_chi = -1;
    for (int chi = 0; chi < g.group.order; ++chi) {
        if (g.group.character_order(chi) <= 2) continue;
        const double v = std::abs(g.fourier[chi]);
        if (v > worst) {
            worst = v;
            worst_chi = chi;
        }
    }
    double bound = 0.0;
    for (int m = 3; m <= g.group.order; ++m)
        if (g.group.order % m == 0) bound = std::max(bound, s_delta_m(delta, m));
    json inputs{{"moduli", g.group.moduli}, {"delta", delta}};
    json values{{"max_complex_fourier", worst}, {"argmax_chi", worst_chi}};
    json bounds{{"max_s_delta_m", bound}};
    if (worst_chi < 0) {
        // No complex characters: the bound is vacuous.
        return CheckReport::asserted("group.complexbound", "complex-character-fourier-bound",
                                     inputs, values, bounds, bound + 1e-12, seed);
    }
    return CheckReport::asserted("group.complexbound", "complex-character-fourier-bound",
                                 inputs, values, bounds, bound + 1e-12 - worst, seed);
}

void export_density_csv(const GroupDensity& g, std::ostream& out) {
    out << "# moduli=";
    for (std::size_t i = 0; i < g.group.moduli.size(); ++i) {
        if (i) out << ',';
        out << g.group.moduli[i];
    }
    out << "\n";
    for (int b = 0; b < g.group.order; ++b) {
        const auto t = g.group.tuple_of(b);
        for (int x : t) out << x << ',';
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", g.values[b]);
        out << buf << "\n";
    }
}

GroupDensity import_density_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line.rfind("# moduli=", 0) != 0)
        throw std::runtime_error("density CSV: missing moduli header");
    std::vector<int> moduli;
    {
        std::istringstream ms(line.substr(9));
        std::string tok;
        while (std::getline(ms, tok, ',')) moduli.push_back(std::stoi(tok));
    }
    FiniteAbelianGroup g = FiniteAbelianGroup::make(moduli);
    std::vector<double> values(static_cast<std::size_t>(g.order), 0.0);
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tok;
        std::vector<int> tuple;
        for (std::size_t i = 0; i < moduli.size(); ++i) {
            if (!std::getline(ls, tok, ',')) throw std::runtime_error("density CSV: short row");
            tuple.push_back(std::stoi(tok));
        }
        if (!std::getline(ls, tok)) throw std::runtime_error("density CSV: missing value");
        values[static_cast<std::size_t>(g.index_of(tuple))] = std::stod(tok);
        ++rows;
    }
    if (rows != static_cast<std::size_t>(g.order))
        throw std::runtime_error("density CSV: row count does not match group order");
    return GroupDensity::make(std::move(g), std::move(values));
}

}  // namespace sievetk
