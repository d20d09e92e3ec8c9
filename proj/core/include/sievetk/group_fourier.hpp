#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "sievetk/math_util.hpp"
#include "sievetk/report.hpp"

namespace sievetk {

// Product of cyclic groups Z_{n_1} x ... x Z_{n_t}; elements and characters
// are both indexed in mixed radix by their exponent tuples.  Character
// chi_c(b) = e(sum_i c_i b_i / n_i).
struct FiniteAbelianGroup {
    std::vector<int> moduli;
    int order = 1;
    std::vector<int> strides;
    std::vector<std::vector<std::complex<double>>> roots;  // roots[i][k] = e(k/n_i)

    static FiniteAbelianGroup make(std::vector<int> moduli);

    std::vector<int> tuple_of(int idx) const;
    int index_of(std::span<const int> tuple) const;
    int compose(int a, int b) const;
    int inverse(int a) const;
    int identity() const { return 0; }
    int character_order(int chi) const;
    std::complex<double> character_value(int chi, int b) const;
};

// A function g: G -> [0,1] with its mean and full character transform
// ghat(chi) = E_b g(b) conj(chi(b)) cached at construction.
struct GroupDensity {
    FiniteAbelianGroup group;
    std::vector<double> values;
    double mean = 0.0;
    std::vector<std::complex<double>> fourier;

    static GroupDensity make(FiniteAbelianGroup g, std::vector<double> values);
    static GroupDensity constant(FiniteAbelianGroup g, double delta);
    // i.i.d. uniform values rescaled so the mean lands uniformly in
    // [delta_lo, delta_hi]; scalings that would push a value above 1 are
    // rejected and redrawn.
    static GroupDensity random(FiniteAbelianGroup g, Rng& rng, double delta_lo = 0.48,
                               double delta_hi = 0.5);
};

FiniteAbelianGroup random_group(Rng& rng, int max_order = 256, int max_factors = 4);

// Largest |E_g chi1(g) conj(chi2(g)) - 1_{chi1=chi2}| over sampled pairs.
double orthogonality_defect(const FiniteAbelianGroup& g, int sample_pairs, Rng& rng);
// |sum_chi |ghat|^2 - E_b g(b)^2|.
double parseval_defect(const GroupDensity& g);

// S(delta, m) = |sin(pi floor(delta m)/m) / (m sin(pi/m))
//               + (delta - floor(delta m)/m) e((floor(delta m)+1)/(2m))|.
double s_delta_m(double delta, int m);

struct SdmScan {
    int m_star = 0;
    double value = 0.0;
    double limit = 0.0;  // sin(pi delta)/pi, the m -> infinity value
};
// Scans m in [3, m_max]; ties broken toward smaller m.
SdmScan max_s_over_m(double delta, int m_max);

// Asserts |sum_b e(b/m) w_b| <= S(sum w_b, m) for weights w_b in [0, 1/m].
CheckReport roots_of_unity_bound_check(std::span<const double> weights, int m,
                                       std::uint64_t seed = 0);

// calF(delta, eta) = 1 - ((1-delta)/delta^2) max{ sqrt(1+(4 delta-1)^2)/4, delta-eta }.
// Accepts 0 <= eta <= delta <= 1 (the eta = delta boundary is used when a
// group has no index-2 subgroup).
double cal_F(double delta, double eta);

// All chi with chi^2 = chi0, chi != chi0.
std::vector<int> quadratic_characters(const FiniteAbelianGroup& g);

// E_b g(b) 1_{b in aH} where H = ker psi, i.e. the mass of the coset of a.
double coset_mass(const GroupDensity& g, int a, int psi);

// (g*g*g)(a) / |G|^2, evaluated by a double loop.
double triple_convolution_direct(const GroupDensity& g, int a);
// Same quantity via sum_chi conj(chi(a)) ghat(chi)^3.
double triple_convolution_char_sum(const GroupDensity& g, int a);

// Checks (g*g*g)(a)/|G|^2 >= delta^3 calF(delta, eta) with delta = E g and
// eta computed from g itself (tightest admissible), plus the real-character
// window -delta+eta_psi <= psi(a) ghat(psi) <= delta for every quadratic psi,
// plus dual-route agreement.  delta outside [0.48, 0.5] yields an
// out-of-hypothesis report with no assertion.
CheckReport verify_fouriersym(const GroupDensity& g, int a, std::uint64_t seed = 0);

// Checks max over complex chi of |ghat(chi)| <= max_{m>=3, m | |G|} S(delta, m).
CheckReport verify_complexbound(const GroupDensity& g, std::uint64_t seed = 0);

// CSV: "# moduli=n1,n2,..." header, then "b1,...,bt,value" rows.
void export_density_csv(const GroupDensity& g, std::ostream& out);
GroupDensity import_density_csv(std::istream& in);

}  // namespace sievetk
