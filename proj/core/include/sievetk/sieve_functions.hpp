#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sievetk {

// The linear sieve pair (f1, F1) solves
//   d/ds (s F1(s)) = f1(s-1)   (s > 3),   F1(s) = 2 e^gamma / s on (0, 3],
//   d/ds (s f1(s)) = F1(s-1)   (s > 2),   f1(s) = 0 on (0, 2],
// from which f1(s) = (2 e^gamma / s) log(s-1) on [2, 4].
// The two-dimensional pair (f2, F2) solves
//   d/ds (s^2 F2(s)) = 2 s f2(s-1),       s^2 F2(s) = 21.75 on [3.84, 5.84],
//   d/ds (s^2 f2(s)) = 2 s F2(s-1),       f2(s) = 0 for s <= 4.84.
// The 21.75 / 3.84 / 4.84 / 5.84 data is quoted verbatim and treated as exact.
enum class SieveKind { f1, F1, f2, F2 };

std::string to_string(SieveKind k);
SieveKind sieve_kind_from_string(const std::string& s);

struct SieveFunctionTable {
    SieveKind kind = SieveKind::f1;
    double s_min = 0.0;
    double s_max = 0.0;
    double step = 0.0;
    std::vector<double> values;  // node i lives at s_min + i*step

    double node(std::size_t i) const { return s_min + static_cast<double>(i) * step; }

    // Closed form where one applies, linear interpolation elsewhere.
    // Throws std::domain_error outside [closed-form domain] U [grid range].
    double eval(double s) const;
    double operator()(double s) const { return eval(s); }

    // True when the exact initial-segment formula covers s for this kind.
    bool in_closed_form(double s) const;
    double closed_form(double s) const;
};

// Builds the table for one kind by a forward trapezoidal sweep of the
// integral form of the delay relations; the companion function of the pair is
// integrated alongside.  step must be 1/N with N a positive multiple of 100
// (so that s-1 and every segment boundary lands on a grid node).
// Preconditions: s_max <= 50, step in (0, 1e-3], s_max at least the right
// endpoint of the kind's initial segment.
SieveFunctionTable build_sieve_table(SieveKind kind, double s_max, double step);

double eval_sieve_fn(const SieveFunctionTable& table, double s);

// CSV export/import: one "# kind=<k> step=<h> s_min=<a> s_max=<b>" comment
// line, then a "s,value" header and one row per grid node.  Values round-trip
// exactly.
void export_table_csv(const SieveFunctionTable& table, std::ostream& out);
SieveFunctionTable import_table_csv(std::istream& in);
void export_table_csv_file(const SieveFunctionTable& table, const std::string& path);
SieveFunctionTable import_table_csv_file(const std::string& path);

}  // namespace sievetk
