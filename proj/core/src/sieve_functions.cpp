#include "sievetk/sieve_functions.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "sievetk/math_util.hpp"

namespace sievetk {

namespace {

constexpr double kF2Left = 3.84;   // left end of the constant segment of s^2 F2
constexpr double kF2Right = 5.84;  // right end of that segment
constexpr double kF2Value = 21.75; // s^2 F2(s) on [3.84, 5.84]
constexpr double kf2Zero = 4.84;   // f2 vanishes up to here

struct GridSpec {
    long n_per_unit;  // 1/step
    double s_min;
    double s_max;
    std::size_t nodes;
};

long units_index(double s, long n_per_unit) {
    return std::lround(s * static_cast<double>(n_per_unit));
}

GridSpec make_grid(SieveKind kind, double s_max, double step) {
    if (!(step > 0.0) || step > 1e-3)
        throw std::invalid_argument("build_sieve_table: step must lie in (0, 1e-3]");
    if (s_max > 50.0)
        throw std::invalid_argument("build_sieve_table: s_max must be <= 50");
    const double n_real = 1.0 / step;
    const long n = std::lround(n_real);
    if (n <= 0 || std::abs(n_real - static_cast<double>(n)) > 1e-6 * n_real || n % 100 != 0)
        throw std::invalid_argument(
            "build_sieve_table: step must equal 1/N with N a multiple of 100");
    double s_min = 0.0;
    double right_end = 0.0;
    switch (kind) {
        case SieveKind::f1: s_min = 0.0; right_end = 4.0; break;
        case SieveKind::F1: s_min = 0.5; right_end = 3.0; break;
        case SieveKind::f2: s_min = 0.0; right_end = kf2Zero; break;
        case SieveKind::F2: s_min = kF2Left; right_end = kF2Right; break;
    }
    if (s_max < right_end)
        throw std::invalid_argument(
            "build_sieve_table: s_max is below the initial segment's right endpoint");
    GridSpec g;
    g.n_per_unit = n;
    g.s_min = s_min;
    g.s_max = s_max;
    g.nodes = static_cast<std::size_t>(units_index(s_max, n) - units_index(s_min, n)) + 1;
    return g;
}

double closed_f1(double s) {
    if (s <= 2.0) return 0.0;
    return (2.0 * kExpGamma / s) * std::log(s - 1.0);
}
double closed_F1(double s) { return 2.0 * kExpGamma / s; }
double closed_F2(double s) { return kF2Value / (s * s); }

// One sweep produces both members of a pair on a common global grid indexed
// by i = round(s / step); the delay term only ever reads values that are
// exactly one unit (N nodes) behind, so a single forward pass suffices.
struct LinearPair {
    long n;           // nodes per unit
    long i_max;       // last global index
    std::vector<double> f1, F1;  // indexed globally, 0..i_max
};

LinearPair sweep_linear(double s_max, long n) {
    LinearPair out;
    out.n = n;
    out.i_max = std::lround(s_max * static_cast<double>(n));
    const double h = 1.0 / static_cast<double>(n);
    out.f1.assign(static_cast<std::size_t>(out.i_max) + 1, 0.0);
    out.F1.assign(static_cast<std::size_t>(out.i_max) + 1, 0.0);
    const long i2 = 2 * n, i3 = 3 * n, i4 = 4 * n;
    // Closed-form segments.  F1 is singular at s = 0; the stored grid for the
    // pair starts the F1 values at the first node (never read below s = 1
    // during the sweep).
    for (long i = 1; i <= std::min(i3, out.i_max); ++i)
        out.F1[static_cast<std::size_t>(i)] = closed_F1(static_cast<double>(i) * h);
    for (long i = i2; i <= std::min(i4, out.i_max); ++i)
        out.f1[static_cast<std::size_t>(i)] = closed_f1(static_cast<double>(i) * h);
    // Trapezoidal sweep on P_F(s) = s F1(s) and P_f(s) = s f1(s).
    for (long i = std::min(i3, out.i_max) + 1; i <= out.i_max; ++i) {
        const double s = static_cast<double>(i) * h;
        const double sp = s - h;
        {
            const double pf_prev = sp * out.F1[static_cast<std::size_t>(i - 1)];
            const double rhs_prev = out.f1[static_cast<std::size_t>(i - 1 - n)];
            const double rhs_here = out.f1[static_cast<std::size_t>(i - n)];
            out.F1[static_cast<std::size_t>(i)] =
                (pf_prev + 0.5 * h * (rhs_prev + rhs_here)) / s;
        }
        if (i > i4) {
            const double pf_prev = sp * out.f1[static_cast<std::size_t>(i - 1)];
            const double rhs_prev = out.F1[static_cast<std::size_t>(i - 1 - n)];
            const double rhs_here = out.F1[static_cast<std::size_t>(i - n)];
            out.f1[static_cast<std::size_t>(i)] =
                (pf_prev + 0.5 * h * (rhs_prev + rhs_here)) / s;
        }
    }
    return out;
}

struct TwoDimPair {
    long n;
    long i_max;
    std::vector<double> f2, F2;  // indexed globally; F2 meaningless below 3.84
};

TwoDimPair sweep_twodim(double s_max, long n) {
    TwoDimPair out;
    out.n = n;
    out.i_max = std::lround(s_max * static_cast<double>(n));
    const double h = 1.0 / static_cast<double>(n);
    out.f2.assign(static_cast<std::size_t>(out.i_max) + 1, 0.0);
    out.F2.assign(static_cast<std::size_t>(out.i_max) + 1, 0.0);
    const long iF2l = units_index(kF2Left, n);
    const long iF2r = std::min(units_index(kF2Right, n), out.i_max);
    const long if2z = units_index(kf2Zero, n);
    for (long i = iF2l; i <= iF2r; ++i)
        out.F2[static_cast<std::size_t>(i)] = closed_F2(static_cast<double>(i) * h);
    for (long i = if2z + 1; i <= out.i_max; ++i) {
        const double s = static_cast<double>(i) * h;
        const double sp = s - h;
        {
            // d/ds (s^2 f2) = 2 s F2(s-1), starting from s^2 f2 = 0 at 4.84.
            const double p_prev = sp * sp * out.f2[static_cast<std::size_t>(i - 1)];
            const double rhs_prev = 2.0 * sp * out.F2[static_cast<std::size_t>(i - 1 - n)];
            const double rhs_here = 2.0 * s * out.F2[static_cast<std::size_t>(i - n)];
            out.f2[static_cast<std::size_t>(i)] =
                (p_prev + 0.5 * h * (rhs_prev + rhs_here)) / (s * s);
        }
        if (i > iF2r) {
            const double p_prev = sp * sp * out.F2[static_cast<std::size_t>(i - 1)];
            const double rhs_prev = 2.0 * sp * out.f2[static_cast<std::size_t>(i - 1 - n)];
            const double rhs_here = 2.0 * s * out.f2[static_cast<std::size_t>(i - n)];
            out.F2[static_cast<std::size_t>(i)] =
                (p_prev + 0.5 * h * (rhs_prev + rhs_here)) / (s * s);
        }
    }
    return out;
}

}  // namespace

std::string to_string(SieveKind k) {
    switch (k) {
        case SieveKind::f1: return "f1";
        case SieveKind::F1: return "F1";
        case SieveKind::f2: return "f2";
        case SieveKind::F2: return "F2";
    }
    return "f1";
}

SieveKind sieve_kind_from_string(const std::string& s) {
    if (s == "f1") return SieveKind::f1;
    if (s == "F1") return SieveKind::F1;
    if (s == "f2") return SieveKind::f2;
    if (s == "F2") return SieveKind::F2;
    throw std::invalid_argument("unknown sieve function kind: " + s);
}

bool SieveFunctionTable::in_closed_form(double s) const {
    switch (kind) {
        case SieveKind::f1: return s >= 0.0 && s <= 4.0;
        case SieveKind::F1: return s > 0.0 && s <= 3.0;
        case SieveKind::f2: return s >= 0.0 && s <= kf2Zero;
        case SieveKind::F2: return s >= kF2Left && s <= kF2Right;
    }
    return false;
}

double SieveFunctionTable::closed_form(double s) const {
    switch (kind) {
        case SieveKind::f1: return closed_f1(s);
        case SieveKind::F1: return closed_F1(s);
        case SieveKind::f2: return 0.0;
        case SieveKind::F2: return closed_F2(s);
    }
    return 0.0;
}

double SieveFunctionTable::eval(double s) const {
    if (in_closed_form(s)) return closed_form(s);
    if (!(s >= s_min && s <= s_max))
        throw std::domain_error("sieve table evaluated outside its range: s=" +
                                std::to_string(s));
    const double t = (s - s_min) / step;
    std::size_t i = static_cast<std::size_t>(t);
    if (i + 1 >= values.size()) i = values.size() - 2;
    const double frac = t - static_cast<double>(i);
    return values[i] * (1.0 - frac) + values[i + 1] * frac;
}

SieveFunctionTable build_sieve_table(SieveKind kind, double s_max, double step) {
    const GridSpec g = make_grid(kind, s_max, step);
    SieveFunctionTable t;
    t.kind = kind;
    t.s_min = g.s_min;
    t.s_max = g.s_max;
    t.step = 1.0 / static_cast<double>(g.n_per_unit);
    t.values.resize(g.nodes);
    const long base = units_index(g.s_min, g.n_per_unit);
    if (kind == SieveKind::f1 || kind == SieveKind::F1) {
        const LinearPair p = sweep_linear(s_max, g.n_per_unit);
        const std::vector<double>& src = (kind == SieveKind::f1) ? p.f1 : p.F1;
        for (std::size_t i = 0; i < g.nodes; ++i)
            t.values[i] = src[static_cast<std::size_t>(base) + i];
    } else {
        const TwoDimPair p = sweep_twodim(s_max, g.n_per_unit);
        const std::vector<double>& src = (kind == SieveKind::f2) ? p.f2 : p.F2;
        for (std::size_t i = 0; i < g.nodes; ++i)
            t.values[i] = src[static_cast<std::size_t>(base) + i];
    }
    return t;
}

double eval_sieve_fn(const SieveFunctionTable& table, double s) { return table.eval(s); }

void export_table_csv(const SieveFunctionTable& table, std::ostream& out) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", table.step);
    out << "# kind=" << to_string(table.kind) << " step=" << buf;
    std::snprintf(buf, sizeof buf, "%.17g", table.s_min);
    out << " s_min=" << buf;
    std::snprintf(buf, sizeof buf, "%.17g", table.s_max);
    out << " s_max=" << buf << "\n";
    out << "s,value\n";
    for (std::size_t i = 0; i < table.values.size(); ++i) {
        char sbuf[64], vbuf[64];
        std::snprintf(sbuf, sizeof sbuf, "%.12g", table.node(i));
        std::snprintf(vbuf, sizeof vbuf, "%.17g", table.values[i]);
        out << sbuf << ',' << vbuf << "\n";
    }
}

SieveFunctionTable import_table_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line.rfind("# kind=", 0) != 0)
        throw std::runtime_error("sieve table CSV: missing header comment line");
    SieveFunctionTable t;
    {
        std::istringstream hs(line.substr(2));
        std::string tok;
        while (hs >> tok) {
            const auto eq = tok.find('=');
            if (eq == std::string::npos) continue;
            const std::string key = tok.substr(0, eq);
            const std::string val = tok.substr(eq + 1);
            if (key == "kind") t.kind = sieve_kind_from_string(val);
            else if (key == "step") t.step = std::stod(val);
            else if (key == "s_min") t.s_min = std::stod(val);
            else if (key == "s_max") t.s_max = std::stod(val);
        }
    }
    if (!(t.step > 0.0)) throw std::runtime_error("sieve table CSV: bad step");
    if (!std::getline(in, line) || line != "s,value")
        throw std::runtime_error("sieve table CSV: missing column header");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::runtime_error("sieve table CSV: malformed row: " + line);
        t.values.push_back(std::stod(line.substr(comma + 1)));
    }
    const auto expected =
        static_cast<std::size_t>(std::lround((t.s_max - t.s_min) / t.step)) + 1;
    if (t.values.size() != expected)
        throw std::runtime_error("sieve table CSV: row count does not match header range");
    return t;
}

void export_table_csv_file(const SieveFunctionTable& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    export_table_csv(table, out);
}

SieveFunctionTable import_table_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    return import_table_csv(in);
}

}  // namespace sievetk
