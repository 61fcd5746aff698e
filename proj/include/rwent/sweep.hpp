#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "rwent/params.hpp"

// Parameter-sweep evaluation and serialization backing the CLI: one row per
// grid point, CSV or JSON, numbers at 17 significant digits so a parsed row
// reproduces its entropies bit-for-bit.

namespace rwent {

enum class SweepAxis { K, Mass, Epsilon, Rho };
enum class SweepStats { Fermion, Boson, Both };

const char* to_string(SweepAxis a);
const char* to_string(SweepStats s);

struct SweepRange {
    double lo;
    double hi;
    int count;
    bool log_spacing;
};

struct SweepSpec {
    SweepAxis axis;
    SweepRange range;
    ExpansionParams expansion;  // fixed values; the swept one is ignored
    ModeParams mode;
    SweepStats statistics;
};

struct RunRecord {
    double k;
    double mass;
    double rho;
    double epsilon;
    double log_gamma_sq_fermion;
    double entropy_fermion_bits;
    double log_gamma_sq_boson;
    double entropy_boson_bits;
    bool has_fermion;
    bool has_boson;
};

// Ordered key=value pairs echoed into every output (tool version, effective
// config, optional timestamp).
using Provenance = std::vector<std::pair<std::string, std::string>>;

void validate(const SweepSpec& spec);

// Grid points in ascending axis order.
std::vector<double> sweep_grid(const SweepRange& r);

std::vector<RunRecord> run_sweep(const SweepSpec& spec);

// Shortest representation that round-trips a double (17 significant
// digits).
std::string format_g17(double v);

// Provenance as leading '#' comment lines, then the fixed header row
//   k,mass,rho,epsilon,log_gamma_sq_fermion,entropy_fermion_bits,
//   log_gamma_sq_boson,entropy_boson_bits
// Cells of an absent statistics are empty.
void write_csv(std::ostream& os, const std::vector<RunRecord>& rows,
               const Provenance& prov);

// {"tool":..., "config": {...}, "rows": [...]}; non-finite log values are
// serialized as strings ("-inf").
void write_json(std::ostream& os, const std::vector<RunRecord>& rows,
                const Provenance& prov);

// Parse write_csv output (comment lines skipped). Empty cells mark the
// statistics as absent.
std::vector<RunRecord> parse_csv(std::istream& is);

}
