#include "vilenkin/export_intervals.hpp"

#include <fstream>
#include <ostream>
#include <vector>

namespace vilenkin {

namespace {

struct Row {
    Rational lo, hi;
    std::string value;
};

void write_rows(std::vector<Row> rows, std::ostream& out) {
    out << "# lo\thi\tvalue\n";
    std::vector<Row> merged;
    for (Row& r : rows) {
        if (!merged.empty() && merged.back().hi == r.lo && merged.back().value == r.value)
            merged.back().hi = r.hi;
        else
            merged.push_back(std::move(r));
    }
    for (const Row& r : merged)
        out << rational_str(r.lo) << "\t" << rational_str(r.hi) << "\t" << r.value << "\n";
}

} // namespace

void export_intervals(const CylinderSet& s, std::ostream& out) {
    std::vector<Row> rows;
    for (const Cylinder& c : s.cylinders()) rows.push_back({c.lambda_lo(), c.lambda_hi(), "1"});
    write_rows(std::move(rows), out);
}

void export_intervals(const StepTable& t, std::ostream& out) {
    std::vector<Row> rows;
    Rational width = rational_pow(t.p, -t.resolution);
    for (std::size_t c = 0; c < t.cells(); ++c) {
        Rational lo = t.cell_lo(c);
        rows.push_back({lo, lo + width, t.values[c].str()});
    }
    write_rows(std::move(rows), out);
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    return out;
}

} // namespace

void export_intervals_file(const CylinderSet& s, const std::string& path) {
    auto out = open_out(path);
    export_intervals(s, out);
}

void export_intervals_file(const StepTable& t, const std::string& path) {
    auto out = open_out(path);
    export_intervals(t, out);
}

} // namespace vilenkin
