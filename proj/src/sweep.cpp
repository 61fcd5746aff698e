#include "rwent/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "rwent/entropy.hpp"
#include "rwent/logmath.hpp"

namespace rwent {

const char* to_string(SweepAxis a) {
    switch (a) {
        case SweepAxis::K: return "k";
        case SweepAxis::Mass: return "mass";
        case SweepAxis::Epsilon: return "epsilon";
        case SweepAxis::Rho: return "rho";
    }
    return "?";
}

const char* to_string(SweepStats s) {
    switch (s) {
        case SweepStats::Fermion: return "fermion";
        case SweepStats::Boson: return "boson";
        case SweepStats::Both: return "both";
    }
    return "?";
}

void validate(const SweepSpec& spec) {
    const SweepRange& r = spec.range;
    if (!(std::isfinite(r.lo) && std::isfinite(r.hi) && r.lo < r.hi))
        throw std::invalid_argument("sweep: range must satisfy lo < hi");
    if (r.count < 2) throw std::invalid_argument("sweep: count must be >= 2");
    if (r.log_spacing && !(r.lo > 0.0))
        throw std::invalid_argument("sweep: log spacing requires lo > 0");
    // the swept quantity still has to stay in its own domain
    const bool positive_axis = spec.axis != SweepAxis::Mass;
    if (positive_axis && !(r.lo > 0.0))
        throw std::invalid_argument("sweep: swept axis requires lo > 0");
    if (spec.axis == SweepAxis::Mass && !(r.lo >= 0.0))
        throw std::invalid_argument("sweep: mass axis requires lo >= 0");
    // fixed values: only the ones actually consumed are checked
    ExpansionParams p = spec.expansion;
    ModeParams mp = spec.mode;
    switch (spec.axis) {
        case SweepAxis::K: mp.k = r.lo > 0 ? r.lo : 1.0; break;
        case SweepAxis::Mass: mp.mass = r.lo; break;
        case SweepAxis::Epsilon: p.epsilon = r.lo; break;
        case SweepAxis::Rho: p.rho = r.lo; break;
    }
    validate(p);
    validate(mp);
}

std::vector<double> sweep_grid(const SweepRange& r) {
    std::vector<double> xs(r.count);
    if (r.log_spacing) {
        const double step = std::log(r.hi / r.lo) / (r.count - 1);
        for (int i = 0; i < r.count; ++i) xs[i] = r.lo * std::exp(i * step);
    } else {
        const double step = (r.hi - r.lo) / (r.count - 1);
        for (int i = 0; i < r.count; ++i) xs[i] = r.lo + i * step;
    }
    xs.back() = r.hi;  // pin the endpoint against accumulated rounding
    return xs;
}

std::vector<RunRecord> run_sweep(const SweepSpec& spec) {
    validate(spec);
    const std::vector<double> grid = sweep_grid(spec.range);
    std::vector<RunRecord> rows;
    rows.reserve(grid.size());
    const bool want_f = spec.statistics != SweepStats::Boson;
    const bool want_b = spec.statistics != SweepStats::Fermion;
    for (double x : grid) {
        ExpansionParams p = spec.expansion;
        ModeParams mp = spec.mode;
        switch (spec.axis) {
            case SweepAxis::K: mp.k = x; break;
            case SweepAxis::Mass: mp.mass = x; break;
            case SweepAxis::Epsilon: p.epsilon = x; break;
            case SweepAxis::Rho: p.rho = x; break;
        }
        RunRecord rec{};
        rec.k = mp.k;
        rec.mass = mp.mass;
        rec.rho = p.rho;
        rec.epsilon = p.epsilon;
        rec.log_gamma_sq_fermion = rec.log_gamma_sq_boson =
            std::numeric_limits<double>::quiet_NaN();
        rec.entropy_fermion_bits = rec.entropy_boson_bits =
            std::numeric_limits<double>::quiet_NaN();
        rec.has_fermion = want_f;
        rec.has_boson = want_b;
        if (want_f) {
            const GammaSq g = gamma_sq_fermion(p, mp);
            rec.log_gamma_sq_fermion = g.log_value;
            rec.entropy_fermion_bits = entropy_fermion(g);
        }
        if (want_b) {
            const GammaSq g = gamma_sq_boson(p, mp);
            rec.log_gamma_sq_boson = g.log_value;
            rec.entropy_boson_bits = entropy_boson(g);
        }
        rows.push_back(rec);
    }
    return rows;
}

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

void append_cell(std::string& line, double v, bool present) {
    line += ',';
    if (present) line += format_g17(v);
}

nlohmann::json json_number(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return nullptr;
    return v > 0 ? "inf" : "-inf";
}

}  // namespace

void write_csv(std::ostream& os, const std::vector<RunRecord>& rows,
               const Provenance& prov) {
    for (const auto& [key, value] : prov) os << "# " << key << "=" << value << "\n";
    os << "k,mass,rho,epsilon,log_gamma_sq_fermion,entropy_fermion_bits,"
          "log_gamma_sq_boson,entropy_boson_bits\n";
    for (const RunRecord& r : rows) {
        std::string line = format_g17(r.k);
        line += ',';
        line += format_g17(r.mass);
        line += ',';
        line += format_g17(r.rho);
        line += ',';
        line += format_g17(r.epsilon);
        append_cell(line, r.log_gamma_sq_fermion, r.has_fermion);
        append_cell(line, r.entropy_fermion_bits, r.has_fermion);
        append_cell(line, r.log_gamma_sq_boson, r.has_boson);
        append_cell(line, r.entropy_boson_bits, r.has_boson);
        os << line << "\n";
    }
    if (!os) throw std::runtime_error("write_csv: stream failure");
}

void write_json(std::ostream& os, const std::vector<RunRecord>& rows,
                const Provenance& prov) {
    nlohmann::json j;
    for (const auto& [key, value] : prov) j["config"][key] = value;
    j["rows"] = nlohmann::json::array();
    for (const RunRecord& r : rows) {
        nlohmann::json row;
        row["k"] = r.k;
        row["mass"] = r.mass;
        row["rho"] = r.rho;
        row["epsilon"] = r.epsilon;
        if (r.has_fermion) {
            row["log_gamma_sq_fermion"] = json_number(r.log_gamma_sq_fermion);
            row["entropy_fermion_bits"] = r.entropy_fermion_bits;
        }
        if (r.has_boson) {
            row["log_gamma_sq_boson"] = json_number(r.log_gamma_sq_boson);
            row["entropy_boson_bits"] = r.entropy_boson_bits;
        }
        j["rows"].push_back(std::move(row));
    }
    os << j.dump(2) << "\n";
    if (!os) throw std::runtime_error("write_json: stream failure");
}

std::vector<RunRecord> parse_csv(std::istream& is) {
    std::vector<RunRecord> rows;
    std::string line;
    bool header_seen = false;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {  // header row
            header_seen = true;
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        while (cells.size() < 8) cells.emplace_back();
        const auto num = [](const std::string& s) {
            return s.empty() ? std::numeric_limits<double>::quiet_NaN()
                             : std::strtod(s.c_str(), nullptr);
        };
        RunRecord r{};
        r.k = num(cells[0]);
        r.mass = num(cells[1]);
        r.rho = num(cells[2]);
        r.epsilon = num(cells[3]);
        r.log_gamma_sq_fermion = num(cells[4]);
        r.entropy_fermion_bits = num(cells[5]);
        r.log_gamma_sq_boson = num(cells[6]);
        r.entropy_boson_bits = num(cells[7]);
        r.has_fermion = !cells[4].empty();
        r.has_boson = !cells[6].empty();
        rows.push_back(r);
    }
    return rows;
}

}
